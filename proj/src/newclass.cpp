#include "unimap/newclass.hpp"

#include <cctype>
#include <cmath>

#include "unimap/errors.hpp"
#include "unimap/parse.hpp"
#include "unimap/rng.hpp"

namespace unimap {

namespace {

void check_entry_params_only(const Expr& e, int min_allowed_var, const std::string& where) {
    for (int v = 0; v < min_allowed_var; ++v) {
        if (uses_var(e, v)) {
            throw DependenceViolation(where + " depends on x" + std::to_string(v + 1) +
                                      " but may use only x" + std::to_string(min_allowed_var + 1) + " and beyond");
        }
    }
}

} // namespace

void validate_recipe(const NewClassRecipe& recipe) {
    int n = recipe.dim;
    if (n < 1) throw Error("recipe dimension must be positive");
    if (recipe.level() > n) throw Error("recipe level exceeds dimension");
    if (max_var_index(recipe.base_h1) >= n) throw Error("base expression uses a variable beyond the dimension");
    check_entry_params_only(recipe.base_h1, 1, "base h1");
    int expected = 2;
    for (const auto& stage : recipe.stages) {
        if (stage.level != expected) {
            throw Error("recipe stages must have consecutive levels starting at 2");
        }
        ++expected;
        int i = stage.level;
        if (static_cast<int>(stage.M.size()) != i) throw DimensionMismatch("stage M must be level x level");
        for (int r = 0; r < i; ++r) {
            if (static_cast<int>(stage.M[r].size()) != i) throw DimensionMismatch("stage M must be square");
            for (int c = 0; c < i; ++c) {
                check_entry_params_only(stage.M[r][c], i,
                                        "M[" + std::to_string(r + 1) + "][" + std::to_string(c + 1) +
                                            "] at level " + std::to_string(i));
            }
        }
        if (static_cast<int>(stage.offset.size()) != i) throw DimensionMismatch("stage C must have length = level");
        for (int r = 0; r < i; ++r) {
            check_entry_params_only(stage.offset[r], i,
                                    "C[" + std::to_string(r + 1) + "] at level " + std::to_string(i));
        }
    }
}

Expr expr_det(const std::vector<std::vector<Expr>>& M) {
    size_t k = M.size();
    if (k == 1) return M[0][0];
    std::vector<Expr> terms;
    for (size_t j = 0; j < k; ++j) {
        if (M[0][j].is_zero_literal()) continue;
        std::vector<std::vector<Expr>> minor;
        for (size_t r = 1; r < k; ++r) {
            std::vector<Expr> row;
            for (size_t c = 0; c < k; ++c) {
                if (c != j) row.push_back(M[r][c]);
            }
            minor.push_back(std::move(row));
        }
        Expr term = Expr::prod({M[0][j], expr_det(minor)});
        terms.push_back(j % 2 == 0 ? term : Expr::neg(term));
    }
    return Expr::sum(std::move(terms));
}

std::vector<std::vector<Expr>> classical_adjoint(const std::vector<std::vector<Expr>>& M) {
    size_t k = M.size();
    for (const auto& row : M) {
        if (row.size() != k) throw DimensionMismatch("adjoint of non-square matrix");
    }
    std::vector<std::vector<Expr>> adj(k, std::vector<Expr>(k));
    if (k == 1) {
        adj[0][0] = Expr::integer(1);
        return adj;
    }
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            std::vector<std::vector<Expr>> minor;
            for (size_t r = 0; r < k; ++r) {
                if (r == i) continue;
                std::vector<Expr> row;
                for (size_t c = 0; c < k; ++c) {
                    if (c != j) row.push_back(M[r][c]);
                }
                minor.push_back(std::move(row));
            }
            Expr cof = expr_det(minor);
            adj[j][i] = (i + j) % 2 == 0 ? cof : Expr::neg(cof);
        }
    }
    return adj;
}

namespace {

// coefficient-times-factor with unit constants folded away
Expr scaled(const Expr& coeff, const Expr& factor) {
    if (coeff.kind() == ExprKind::Const) {
        if (coeff.const_value() == 1) return factor;
        if (coeff.const_value() == -1) return Expr::neg(factor);
    }
    return Expr::prod({coeff, factor});
}

} // namespace

std::vector<ExprMap> build_levels(const NewClassRecipe& recipe) {
    validate_recipe(recipe);
    int n = recipe.dim;
    Expr zero = Expr::constant(0);

    ExprMap cur;
    cur.dim = n;
    cur.phi = recipe.phi;
    cur.components.assign(n, zero);
    cur.components[0] = recipe.base_h1;

    std::vector<ExprMap> levels{cur};
    for (const auto& stage : recipe.stages) {
        int i = stage.level;
        // T(v,z) = (M(z)v, z) as a full map
        ExprMap T;
        T.dim = n;
        for (int r = 0; r < n; ++r) {
            if (r < i) {
                std::vector<Expr> terms;
                for (int c = 0; c < i; ++c) {
                    if (stage.M[r][c].is_zero_literal()) continue;
                    terms.push_back(scaled(stage.M[r][c], Expr::variable(c)));
                }
                T.components.push_back(Expr::sum(std::move(terms)));
            } else {
                T.components.push_back(Expr::variable(r));
            }
        }
        ExprMap inner_at_T = compose(cur, T);
        auto Ma = classical_adjoint(stage.M);

        // Live rows: M^a(z) (inner o T) + eta(z); the coefficient entries
        // keep the ambient parameter variables (parameters pass through,
        // they are not routed through the inner map's zero tail).
        ExprMap next;
        next.dim = n;
        next.phi = recipe.phi;
        for (int r = 0; r < n; ++r) {
            if (r >= i) {
                next.components.push_back(zero);
                continue;
            }
            std::vector<Expr> terms;
            for (int c = 0; c < i; ++c) {
                if (Ma[r][c].is_zero_literal() || inner_at_T.components[c].is_zero_literal()) continue;
                terms.push_back(scaled(Ma[r][c], inner_at_T.components[c]));
            }
            if (!stage.offset[r].is_zero_literal()) terms.push_back(stage.offset[r]);
            next.components.push_back(Expr::sum(std::move(terms)));
        }
        cur = next;
        levels.push_back(cur);
    }
    return levels;
}

ExprMap build(const NewClassRecipe& recipe) { return build_levels(recipe).back(); }

NewClassRecipe scale(const NewClassRecipe& recipe, const Rational& r) {
    NewClassRecipe out = recipe;
    Expr factor = Expr::constant(r);
    out.base_h1 = Expr::prod({factor, recipe.base_h1});
    for (auto& stage : out.stages) {
        for (auto& e : stage.offset) e = Expr::prod({factor, e});
    }
    return out;
}

NewClassRecipe lift_to_level(const NewClassRecipe& recipe, int target_level) {
    if (target_level < recipe.level() || target_level > recipe.dim) {
        throw Error("invalid lift target level");
    }
    NewClassRecipe out = recipe;
    for (int i = recipe.level() + 1; i <= target_level; ++i) {
        RecipeStage stage;
        stage.level = i;
        stage.M.assign(i, std::vector<Expr>(i, Expr::constant(0)));
        for (int d = 0; d < i; ++d) stage.M[d][d] = Expr::integer(1);
        stage.offset.assign(i, Expr::constant(0));
        out.stages.push_back(std::move(stage));
    }
    return out;
}

NewClassRecipe offset(const NewClassRecipe& recipe, const RatVec& C) {
    int n = recipe.dim;
    if (static_cast<int>(C.size()) != n) throw DimensionMismatch("offset vector length mismatch");
    NewClassRecipe out = lift_to_level(recipe, n);
    if (out.stages.empty()) {
        // n == 1: level-1 base stays independent of x1 under constant shift
        out.base_h1 = out.base_h1 + Expr::constant(C[0]);
        return out;
    }
    auto& top = out.stages.back();
    for (int r = 0; r < n; ++r) {
        if (C[r] != 0) top.offset[r] = top.offset[r] + Expr::constant(C[r]);
    }
    return out;
}

NewClassRecipe conjugate(const NewClassRecipe& recipe, const RatMatrix& T) {
    int n = recipe.dim;
    if (T.rows() != n || T.cols() != n) throw DimensionMismatch("conjugation matrix must be n x n");
    if (n == 1) return recipe; // adj(T) = [1] and h1 is independent of x1
    NewClassRecipe out = lift_to_level(recipe, n);
    auto& top = out.stages.back();
    // h -> T^a o h o T: M' = M T, eta' = T^a eta
    RatMatrix Ta = T.adjugate();
    std::vector<std::vector<Expr>> Mp(n, std::vector<Expr>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) {
                if (top.M[r][k].is_zero_literal() || T.at(k, c) == 0) continue;
                terms.push_back(Expr::prod({top.M[r][k], Expr::constant(T.at(k, c))}));
            }
            Mp[r][c] = Expr::sum(std::move(terms));
        }
    }
    std::vector<Expr> etap(n);
    for (int r = 0; r < n; ++r) {
        std::vector<Expr> terms;
        for (int k = 0; k < n; ++k) {
            if (Ta.at(r, k) == 0 || top.offset[k].is_zero_literal()) continue;
            terms.push_back(Expr::prod({Expr::constant(Ta.at(r, k)), top.offset[k]}));
        }
        etap[r] = Expr::sum(std::move(terms));
    }
    top.M = std::move(Mp);
    top.offset = std::move(etap);
    return out;
}

namespace {

bool recipe_is_polynomial(const NewClassRecipe& recipe, const ExprMap& built) {
    if (built.phi && !is_polynomial_shape(*built.phi)) return false;
    for (const auto& c : built.components) {
        if (!is_polynomial_shape(c)) return false;
    }
    (void)recipe;
    return true;
}

bool submatrix_nilpotent(const PolyMap& h, int k) {
    PolyMatrix J = jacobian(h);
    PolyMatrix sub = J.leading_principal_submatrix(k);
    for (const auto& c : char_poly_coeffs(sub)) {
        if (!c.is_zero()) return false;
    }
    return true;
}

} // namespace

ClaimsReport verify_claims(const NewClassRecipe& recipe) {
    auto levels = build_levels(recipe);
    const ExprMap& h = levels.back();
    int n = recipe.dim;

    ClaimsReport report;
    report.polynomial = recipe_is_polynomial(recipe, h);

    if (report.polynomial) {
        PolyMap P = to_poly_map(h);
        auto verdict = is_nilpotent_exact(P);
        report.jacobian_nilpotent = verdict.status == NilpotenceStatus::ProvenNilpotent;
        if (!report.jacobian_nilpotent) {
            throw VerificationFailure("J(h) not nilpotent for a built instance: " + verdict.detail +
                                      (verdict.witness ? " at " + to_string(*verdict.witness) : ""));
        }
        // per-level lemma: the i-th leading principal submatrix of the
        // level-i perturbation is nilpotent; the final map also satisfies it
        // for every i >= level (levels are nested upward)
        report.submatrices_nilpotent = true;
        for (size_t k = 0; k < levels.size(); ++k) {
            int lvl = static_cast<int>(k) + 1;
            if (!submatrix_nilpotent(to_poly_map(levels[k]), lvl)) {
                throw VerificationFailure("leading principal submatrix lemma failed at level " + std::to_string(lvl));
            }
            report.checked_submatrix_levels.push_back(lvl);
        }
        for (int i = recipe.level(); i <= n; ++i) {
            if (!submatrix_nilpotent(P, i)) {
                throw VerificationFailure("leading principal submatrix lemma failed on the final map at i=" +
                                          std::to_string(i));
            }
        }
        PolyMap power = compose_power(P, n);
        report.power_constant = power.is_constant();
        if (!report.power_constant) {
            throw VerificationFailure("h^(o n) is not constant for a built instance");
        }
        RatVec value;
        for (const auto& c : power.components) value.push_back(c.constant_term());
        report.power_value = value;
        report.all_pass = true;
        report.detail = "exact verification";
        return report;
    }

    // transcendental path: sampled constancy of h^(o n)
    report.sampled_points = 100;
    report.sampled_tol = 1e-8;
    Rng rng(42);
    std::vector<double> reference;
    double max_dev = 0;
    for (int s = 0; s < report.sampled_points; ++s) {
        std::vector<double> x = rng.point(n, -1.0, 1.0);
        for (int k = 0; k < n; ++k) x = h.eval(x);
        if (s == 0) {
            reference = x;
        } else {
            for (int i = 0; i < n; ++i) max_dev = std::max(max_dev, std::abs(x[i] - reference[i]));
        }
    }
    report.sampled_power_constant = max_dev < report.sampled_tol;
    if (!report.sampled_power_constant) {
        throw VerificationFailure("sampled h^(o n) deviates by " + std::to_string(max_dev));
    }
    auto sampled = is_nilpotent_sampled(h, 100, 1e-8, -1.0, 1.0, 42);
    report.jacobian_nilpotent = sampled.status == NilpotenceStatus::ProbablyNilpotent;
    report.all_pass = report.sampled_power_constant && report.jacobian_nilpotent;
    report.detail = "numeric verification (transcendental recipe)";
    return report;
}

RatVec invert(const NewClassRecipe& recipe, const RatVec& y) {
    ExprMap h = build(recipe);
    int n = recipe.dim;
    if (static_cast<int>(y.size()) != n) throw DimensionMismatch("point dimension mismatch");
    RatVec x = y;
    for (int k = 0; k < n; ++k) {
        RatVec hx = h.eval(x);
        for (int i = 0; i < n; ++i) x[i] = y[i] - hx[i];
    }
    RatVec fx = h.eval(x);
    for (int i = 0; i < n; ++i) {
        if (x[i] + fx[i] != y[i]) {
            throw VerificationFailure("inverse verification failed: f(x) != y");
        }
    }
    return x;
}

std::vector<double> invert(const NewClassRecipe& recipe, const std::vector<double>& y, double tol) {
    ExprMap h = build(recipe);
    int n = recipe.dim;
    std::vector<double> x = y;
    for (int k = 0; k < n; ++k) {
        std::vector<double> hx = h.eval(x);
        for (int i = 0; i < n; ++i) x[i] = y[i] - hx[i];
    }
    std::vector<double> hx = h.eval(x);
    for (int i = 0; i < n; ++i) {
        if (std::abs(x[i] + hx[i] - y[i]) > tol) {
            throw VerificationFailure("inverse verification failed: |f(x) - y| > tol");
        }
    }
    return x;
}

// ---------------------------------------------------------------------------
// recipe text format

namespace {

struct RScanner {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) bump();
    }
    void bump() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    void expect_char(char c) {
        skip_ws();
        if (pos >= src.size() || src[pos] != c) {
            throw ParseError(line, col, std::string("expected '") + c + "'");
        }
        bump();
    }
    std::string ident() {
        skip_ws();
        std::string s;
        while (pos < src.size() && std::isalnum(static_cast<unsigned char>(src[pos]))) {
            s += src[pos];
            bump();
        }
        if (s.empty()) throw ParseError(line, col, "expected identifier");
        return s;
    }
    int integer() {
        skip_ws();
        std::string s;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            s += src[pos];
            bump();
        }
        if (s.empty()) throw ParseError(line, col, "expected integer");
        return std::stoi(s);
    }
    // expression text up to the next top-level delimiter (',' ';' ']' '}')
    std::string expr_text() {
        skip_ws();
        std::string s;
        int depth = 0;
        while (pos < src.size()) {
            char c = src[pos];
            if (depth == 0 && (c == ',' || c == ';' || c == ']' || c == '}')) break;
            if (c == '(') ++depth;
            if (c == ')') --depth;
            s += c;
            bump();
        }
        if (s.empty()) throw ParseError(line, col, "expected expression");
        return s;
    }
};

} // namespace

NewClassRecipe parse_recipe(const std::string& text) {
    RScanner sc{text};
    NewClassRecipe recipe;
    if (sc.ident() != "dim") throw ParseError(sc.line, sc.col, "recipe must start with 'dim'");
    recipe.dim = sc.integer();
    sc.expect_char(';');

    sc.skip_ws();
    bool have_base = false;
    while (!sc.eof()) {
        std::string kw = sc.ident();
        if (kw == "phi") {
            sc.expect_char('=');
            recipe.phi = parse_expr(sc.expr_text(), 1, /*allow_t=*/true);
            sc.expect_char(';');
        } else if (kw == "base") {
            recipe.base_h1 = parse_expr(sc.expr_text(), recipe.dim);
            sc.expect_char(';');
            have_base = true;
        } else if (kw == "level") {
            if (!have_base) throw ParseError(sc.line, sc.col, "stage before base expression");
            RecipeStage stage;
            stage.level = sc.integer();
            sc.expect_char('{');
            if (sc.ident() != "M") throw ParseError(sc.line, sc.col, "expected 'M'");
            sc.expect_char('=');
            sc.expect_char('[');
            while (true) {
                std::vector<Expr> row;
                while (true) {
                    row.push_back(parse_expr(sc.expr_text(), recipe.dim));
                    if (sc.peek() == ',') {
                        sc.expect_char(',');
                        continue;
                    }
                    break;
                }
                stage.M.push_back(std::move(row));
                if (sc.peek() == ';') {
                    sc.expect_char(';');
                    continue;
                }
                break;
            }
            sc.expect_char(']');
            sc.expect_char(';');
            if (sc.ident() != "C") throw ParseError(sc.line, sc.col, "expected 'C'");
            sc.expect_char('=');
            sc.expect_char('[');
            while (true) {
                stage.offset.push_back(parse_expr(sc.expr_text(), recipe.dim));
                if (sc.peek() == ',') {
                    sc.expect_char(',');
                    continue;
                }
                break;
            }
            sc.expect_char(']');
            sc.expect_char(';');
            sc.expect_char('}');
            recipe.stages.push_back(std::move(stage));
        } else {
            throw ParseError(sc.line, sc.col, "unexpected keyword '" + kw + "'");
        }
        sc.skip_ws();
    }
    if (!have_base) throw ParseError(sc.line, sc.col, "recipe is missing its base expression");
    validate_recipe(recipe);
    return recipe;
}

std::string render_recipe(const NewClassRecipe& recipe) {
    std::vector<std::string> names;
    for (int i = 0; i < recipe.dim; ++i) names.push_back("x" + std::to_string(i + 1));
    std::string s = "dim " + std::to_string(recipe.dim) + ";\n";
    if (recipe.phi) s += "phi = " + render(*recipe.phi, {"t"}) + ";\n";
    s += "base " + render(recipe.base_h1, names) + ";\n";
    for (const auto& stage : recipe.stages) {
        s += "level " + std::to_string(stage.level) + " {\n  M = [ ";
        for (size_t r = 0; r < stage.M.size(); ++r) {
            if (r) s += " ; ";
            for (size_t c = 0; c < stage.M[r].size(); ++c) {
                if (c) s += ", ";
                s += render(stage.M[r][c], names);
            }
        }
        s += " ];\n  C = [ ";
        for (size_t r = 0; r < stage.offset.size(); ++r) {
            if (r) s += ", ";
            s += render(stage.offset[r], names);
        }
        s += " ];\n}\n";
    }
    return s;
}

} // namespace unimap

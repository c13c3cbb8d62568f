#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "unimap/dynamics.hpp"
#include "unimap/errors.hpp"
#include "unimap/examples.hpp"
#include "unimap/infinity.hpp"
#include "unimap/inversion.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/newclass.hpp"
#include "unimap/parse.hpp"
#include "unimap/planar.hpp"
#include "unimap/rng.hpp"
#include "unimap/triangular.hpp"

using json = nlohmann::json;
using namespace unimap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExprMap load_map(const std::string& path) { return parse_map(slurp(path)); }

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
    return p;
}

RatVec parse_rational_point(const std::string& text) {
    RatVec p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(rational_from_string(item));
    return p;
}

bool point_is_rational(const std::string& text) {
    return text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
           text.find('E') == std::string::npos;
}

struct Output {
    bool as_json = false;
    json data;

    void set(const std::string& key, json value) { data[key] = std::move(value); }

    void emit_text_line(const std::string& line) {
        if (!as_json) std::cout << line << "\n";
    }

    void finish() {
        if (as_json) std::cout << data.dump(2) << "\n";
    }
};

json verdict_json(const NilpotenceVerdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["detail"] = v.detail;
    if (v.witness) {
        json w = json::array();
        for (const auto& c : *v.witness) w.push_back(to_string(c));
        j["witness"] = w;
        j["witness_value"] = to_string(*v.witness_value);
    }
    if (v.float_witness) j["float_witness"] = *v.float_witness;
    if (v.samples) {
        j["samples"] = v.samples;
        j["tol"] = v.tol;
    }
    return j;
}

json matrix_json(const RatMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

// mode: 0 auto (exact when polynomial), 1 exact, 2 sampled
int cmd_check_unipotent(const std::string& file, int mode, int samples, double tol,
                        std::uint64_t seed, Output& out) {
    ExprMap f = load_map(file);
    bool sampled = mode == 2;
    if (mode == 0) {
        bool poly = !f.phi || is_polynomial_shape(*f.phi);
        for (const auto& c : f.components) poly = poly && is_polynomial_shape(c);
        sampled = !poly;
    }
    NilpotenceVerdict v;
    if (!sampled) {
        v = is_unipotent(to_poly_map(f));
    } else {
        v = is_nilpotent_sampled(perturbation(f), samples, tol, -10.0, 10.0, seed);
        out.set("seed", seed);
        out.emit_text_line("seed " + std::to_string(seed));
    }
    out.set("verdict", verdict_json(v));
    out.emit_text_line("verdict: " + to_string(v.status));
    if (v.witness) {
        out.emit_text_line("witness: " + to_string(*v.witness) + " (coefficient value " +
                           to_string(*v.witness_value) + ")");
    }
    out.emit_text_line(v.detail);
    bool positive = v.status == NilpotenceStatus::ProvenNilpotent ||
                    v.status == NilpotenceStatus::ProbablyNilpotent;
    return positive ? kExitOk : kExitNegative;
}

int cmd_check_strong(const std::string& file, bool use_sampled, int tuples, std::uint64_t seed, Output& out) {
    ExprMap f = load_map(file);
    ExprMap h = perturbation(f);
    if (!use_sampled) {
        auto cert = strongly_nilpotent_generic(to_poly_map(h));
        out.set("strongly_nilpotent", cert.strongly_nilpotent);
        out.set("detail", cert.detail);
        out.emit_text_line(cert.strongly_nilpotent ? "strongly nilpotent (generic-point product vanishes)"
                                                   : "NOT strongly nilpotent");
        if (cert.witness_points) {
            json pts = json::array();
            for (const auto& p : *cert.witness_points) {
                out.emit_text_line("witness point: " + to_string(p));
                json q = json::array();
                for (const auto& c : p) q.push_back(to_string(c));
                pts.push_back(q);
            }
            out.set("witness_points", pts);
        }
        return cert.strongly_nilpotent ? kExitOk : kExitNegative;
    }
    auto v = strongly_nilpotent_sampled(h, tuples, 1e-8, -2.0, 2.0, seed);
    out.set("seed", seed);
    out.emit_text_line("seed " + std::to_string(seed));
    out.set("tuples", v.tuples);
    out.set("max_abs_entry", v.max_abs_entry);
    bool positive = v.status == SampledStrength::ProbablyStronglyNilpotent;
    out.set("status", positive ? "probably-strongly-nilpotent" : "not-strongly-nilpotent");
    out.emit_text_line(positive ? "probably strongly nilpotent (" + std::to_string(v.tuples) + " tuples)"
                                : "NOT strongly nilpotent (witness tuple found)");
    return positive ? kExitOk : kExitNegative;
}

int cmd_triangularize(const std::string& file, Output& out) {
    PolyMap f = to_poly_map(load_map(file));
    try {
        TriangularizedMap tm = triangularize_map(f);
        out.set("S", matrix_json(tm.S));
        out.set("triangular_form", render_map(tm.triangular_form));
        out.emit_text_line("S =");
        out.emit_text_line(tm.S.to_string());
        out.emit_text_line("triangular form:");
        out.emit_text_line(render_map(tm.triangular_form));
        return kExitOk;
    } catch (const NotStronglyNilpotent& e) {
        out.set("error", e.what());
        out.emit_text_line(e.what());
        return kExitNegative;
    }
}

int cmd_build_newclass(const std::string& file, Output& out) {
    NewClassRecipe recipe = parse_recipe(slurp(file));
    ExprMap h = build(recipe);
    ClaimsReport report = verify_claims(recipe);
    out.set("map", render_map(h));
    json claims;
    claims["polynomial"] = report.polynomial;
    claims["jacobian_nilpotent"] = report.jacobian_nilpotent;
    claims["power_constant"] = report.polynomial ? report.power_constant : report.sampled_power_constant;
    claims["detail"] = report.detail;
    if (report.power_value) {
        json v = json::array();
        for (const auto& c : *report.power_value) v.push_back(to_string(c));
        claims["power_value"] = v;
    }
    out.set("claims", claims);
    out.emit_text_line(render_map(h));
    out.emit_text_line("claims: " + report.detail + (report.all_pass ? " (all pass)" : " (INCOMPLETE)"));
    if (report.power_value) out.emit_text_line("h^(o n) = " + to_string(*report.power_value));
    return report.all_pass ? kExitOk : kExitNegative;
}

int cmd_invert(const std::string& file, const std::string& point, int power, bool auto_power,
               Output& out) {
    ExprMap f = load_map(file);
    int n = f.dim;

    int m = power;
    if (auto_power) {
        PowerConstancy pc = symbolic_power_constancy(perturbation(to_poly_map(f)));
        if (!pc.power) {
            out.set("error", "no constant composition power within cap");
            out.emit_text_line("no constant composition power within cap " + std::to_string(pc.cap));
            return kExitNegative;
        }
        m = *pc.power;
        out.set("auto_power", m);
        out.emit_text_line("constancy reached at power m = " + std::to_string(m));
    }
    if (m < 1) throw Error("power must be >= 1 (use --power or --auto)");

    bool exact_ok = point_is_rational(point);
    if (exact_ok) {
        RatVec y = parse_rational_point(point);
        if (static_cast<int>(y.size()) != n) throw Error("point dimension mismatch");
        try {
            InversionResult res = invert_by_power_exact(f, y, m);
            if (res.status == InversionStatus::Ok) {
                out.set("preimage", to_string(*res.exact_point));
                out.set("residual", "0 (exact)");
                out.emit_text_line("preimage: " + to_string(*res.exact_point) + " (exact, residual 0)");
                return kExitOk;
            }
            out.set("error", res.status == InversionStatus::ConstancyNotReached ? "ConstancyNotReached"
                                                                                : "NotAnInverse");
            out.emit_text_line(res.status == InversionStatus::ConstancyNotReached
                                   ? "constancy not reached at m = " + std::to_string(m)
                                   : "result does not invert the map");
            return kExitNegative;
        } catch (const InexactRequired&) {
            // transcendental map: fall through to the float path
        }
    }
    std::vector<double> y = parse_point(point);
    if (static_cast<int>(y.size()) != n) throw Error("point dimension mismatch");
    InversionResult res = invert_by_power(f, y, m, 1e-9);
    if (res.status != InversionStatus::Ok) {
        out.set("error", res.status == InversionStatus::ConstancyNotReached ? "ConstancyNotReached"
                                                                            : "NotAnInverse");
        out.emit_text_line(res.status == InversionStatus::ConstancyNotReached
                               ? "constancy not reached at m = " + std::to_string(m)
                               : "result does not invert the map");
        return kExitNegative;
    }
    out.set("preimage", res.point);
    out.set("residual", res.residual);
    std::string line = "preimage: (";
    for (size_t i = 0; i < res.point.size(); ++i) {
        if (i) line += ", ";
        line += std::to_string(res.point[i]);
    }
    out.emit_text_line(line + "), residual " + std::to_string(res.residual));
    return kExitOk;
}

int cmd_fixed_points(const std::string& file, int starts, double lo, double hi, std::uint64_t seed,
                     Output& out) {
    ExprMap h = load_map(file);
    Rng rng(seed);
    out.set("seed", seed);
    std::vector<std::vector<double>> found;
    int converged = 0;
    for (int s = 0; s < starts; ++s) {
        FixedPointReport rep = fixed_point_iterate(h, rng.point(h.dim, lo, hi), 2000, 1e-10);
        if (!rep.converged) continue;
        ++converged;
        bool fresh = true;
        for (const auto& p : found) {
            double d = 0;
            for (size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - rep.point[i]));
            if (d < 1e-6) {
                fresh = false;
                break;
            }
        }
        if (fresh) found.push_back(rep.point);
    }
    out.set("starts", starts);
    out.set("converged", converged);
    out.set("fixed_points", found);
    out.emit_text_line("seed " + std::to_string(seed) + ": " + std::to_string(converged) + "/" +
                       std::to_string(starts) + " starts converged; " + std::to_string(found.size()) +
                       " distinct fixed point(s)");
    for (const auto& p : found) {
        std::string line = "  (";
        for (size_t i = 0; i < p.size(); ++i) {
            if (i) line += ", ";
            line += std::to_string(p[i]);
        }
        out.emit_text_line(line + ")");
    }
    return kExitOk;
}

int cmd_planar_extract(const std::string& file, Output& out) {
    PolyMap f = to_poly_map(load_map(file));
    PlanarExtraction ex = extract_normal_form(f);
    if (!ex.ok) {
        out.set("error", ex.failure);
        out.emit_text_line(ex.failure);
        return kExitNegative;
    }
    out.set("a", to_string(ex.form.a));
    out.set("b", to_string(ex.form.b));
    out.set("c", to_string(ex.form.c));
    out.set("d", to_string(ex.form.d));
    out.set("phi", render(ex.form.phi, {"t"}));
    out.emit_text_line("(a, b, c, d) = (" + to_string(ex.form.a) + ", " + to_string(ex.form.b) + ", " +
                       to_string(ex.form.c) + ", " + to_string(ex.form.d) + ")");
    out.emit_text_line("phi(t) = " + render(ex.form.phi, {"t"}));
    return kExitOk;
}

json direction_json(const DirectionCertificate& cert) {
    json j;
    j["verdict"] = to_string(cert.verdict);
    j["exact"] = cert.exact;
    j["detail"] = cert.detail;
    if (cert.direction) {
        json d = json::array();
        for (const auto& c : *cert.direction) d.push_back(to_string(c));
        j["direction"] = d;
    }
    if (cert.float_direction) j["float_direction"] = *cert.float_direction;
    return j;
}

int cmd_infinity_check(const std::string& file, Output& out) {
    PolyMap f = to_poly_map(load_map(file));
    LeadingFormSet L = leading_forms(f);
    out.set("algebraic_degree", L.algebraic_degree);
    json degrees = json::array();
    for (int d : L.degrees) degrees.push_back(d);
    out.set("component_degrees", degrees);
    json forms = json::array();
    for (const auto& p : L.leading) forms.push_back(p.to_string());
    out.set("leading_forms", forms);
    DirectionCertificate cert = no_zeros_at_infinity(f);
    out.set("zeros_at_infinity", direction_json(cert));
    out.emit_text_line("algebraic degree d = " + std::to_string(L.algebraic_degree));
    for (int i = 0; i < L.n; ++i) {
        out.emit_text_line("  leading form f" + std::to_string(i + 1) + " (deg " +
                           std::to_string(L.degrees[i]) + "): " + L.leading[i].to_string());
    }
    out.emit_text_line("zeros at infinity: " + to_string(cert.verdict) + " — " + cert.detail);
    bool holds = cert.verdict == ZeroVerdict::ProvenHolds || cert.verdict == ZeroVerdict::ProbablyHolds;
    return holds ? kExitOk : kExitNegative;
}

int cmd_unique_fixed_point(const std::string& file, std::uint64_t seed, Output& out) {
    PolyMap f = to_poly_map(load_map(file));
    UniqueFixedPointCertificate cert = unique_fixed_point_via_randall(f, seed);
    out.set("seed", seed);
    out.emit_text_line("seed " + std::to_string(seed));
    out.set("certified", cert.certified);
    if (cert.certified) {
        out.set("route", cert.route);
        out.set("heuristic", cert.heuristic);
        out.set("newton_distinct", cert.newton.distinct_roots.size());
        out.set("newton_converged", cert.newton.converged);
        out.emit_text_line(std::string("certificate: unique fixed point (") + cert.route +
                           (cert.heuristic ? "; heuristic zero check)" : "; exact)"));
        out.emit_text_line("newton corroboration: " + std::to_string(cert.newton.distinct_roots.size()) +
                           " distinct fixed point(s) across " + std::to_string(cert.newton.starts) +
                           " starts");
        return kExitOk;
    }
    // fall back to the proper-map certificate for g = id - f
    DiffeoCertificate diffeo = randall_diffeo_certificate(identity_poly_map(f.dim) - f);
    out.set("failing_hypothesis", cert.failing_hypothesis);
    out.set("diffeo_fallback_certified", diffeo.certified);
    out.set("diffeo_fallback_reason", diffeo.reason);
    out.emit_text_line("NotApplicable: " + cert.failing_hypothesis);
    out.emit_text_line(std::string("g = id - f diffeomorphism check: ") +
                       (diffeo.certified ? "certified — f has a unique fixed point (" : "not certified (") +
                       diffeo.reason + ")");
    return diffeo.certified ? kExitOk : kExitNegative;
}

int cmd_orbit(const std::string& file, bool flow, const std::string& start, double t0, double t1,
              int steps, int iterations, Output& out) {
    ExprMap f = load_map(file);
    std::vector<double> p0 = parse_point(start);
    Orbit orbit = flow ? integrate_flow(f, p0, t0, t1, steps) : iterate_map(f, p0, iterations);
    // plot-ready CSV
    std::cout << "t";
    for (int i = 0; i < f.dim; ++i) std::cout << ",x" << (i + 1);
    std::cout << ",norm\n";
    for (size_t k = 0; k < orbit.points.size(); ++k) {
        std::cout << (orbit.mode == OrbitMode::Continuous ? orbit.times[k] : static_cast<double>(k));
        for (double c : orbit.points[k]) std::cout << "," << c;
        std::cout << "," << orbit.norms[k] << "\n";
    }
    if (!flow) {
        auto period = detect_period(orbit, 1e-8);
        if (period) std::cerr << "# detected period: " << *period << "\n";
    }
    if (orbit.diverged) std::cerr << "# orbit diverged (norm exceeded 1e12)\n";
    (void)out;
    return kExitOk;
}

int cmd_spectral(const std::string& file, int samples, double lo, double hi, std::uint64_t seed,
                 Output& out) {
    ExprMap f = load_map(file);
    SpectralReport rep = spectral_report(f, samples, lo, hi, std::nullopt, seed);
    out.set("seed", seed);
    out.set("samples", rep.samples);
    out.set("failures", rep.failures);
    out.set("min_real_part", rep.min_real_part);
    out.set("max_modulus", rep.max_modulus);
    out.emit_text_line("seed " + std::to_string(seed) + ", " + std::to_string(rep.samples) + " samples (" +
                       std::to_string(rep.failures) + " failures)");
    out.emit_text_line("min real part: " + std::to_string(rep.min_real_part));
    out.emit_text_line("max modulus:   " + std::to_string(rep.max_modulus));
    return kExitOk;
}

int cmd_verify_example(int k, std::uint64_t seed, Output& out) {
    examples::VerifyReport report = examples::verify_example(k, seed);
    out.emit_text_line("seed " + std::to_string(seed));
    json checks = json::array();
    for (const auto& c : report.checks) {
        json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
        out.emit_text_line(std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name +
                           (c.detail.empty() ? "" : " [" + c.detail + "]"));
    }
    out.set("seed", seed);
    out.set("example", k);
    out.set("checks", checks);
    out.set("all_pass", report.all_pass());
    return report.all_pass() ? kExitOk : kExitNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unimap: exact tools for unipotent-Jacobian self-maps of R^n"};
    app.require_subcommand(1);
    app.fallthrough(); // global --seed/--format may follow the subcommand

    std::string format = "text";
    std::uint64_t seed = 42;
    app.add_option("--format", format, "output format: text|json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", seed, "seed for randomized subcommands (default 42)");

    std::string file, point = "", start = "0", box = "-10,10";
    int samples = 500, tuples = 200, power = -1, steps = 1000, iterations = 100, example_k = 1, starts = 20;
    double tol = 1e-9, t0 = 0.0, t1 = 1.0;
    int unipotent_mode = 0;
    bool generic = true, auto_power = false, flow = false, iterate = false;

    auto* cu = app.add_subcommand("check-unipotent", "certify unipotence of J(f) for a map file");
    cu->add_option("mapfile", file)->required();
    cu->add_flag("--exact{1},--sampled{2}", unipotent_mode,
                 "exact (polynomial) or sampled verdict; default picks by map type");
    cu->add_option("--samples", samples, "sample count for --sampled");
    cu->add_option("--tol", tol, "tolerance for --sampled");

    auto* cs = app.add_subcommand("check-strong-nilpotence", "strong nilpotence of J(h), h = f - id");
    cs->add_option("mapfile", file)->required();
    cs->add_flag("--generic{true},--sampled{false}", generic, "generic-point exact test or sampled test");
    cs->add_option("--tuples", tuples, "tuple count for --sampled");

    auto* tr = app.add_subcommand("triangularize", "simultaneous strict-upper triangularization");
    tr->add_option("mapfile", file)->required();

    auto* bn = app.add_subcommand("build-newclass", "build a recursive perturbation from a recipe file");
    bn->add_option("recipefile", file)->required();

    auto* iv = app.add_subcommand("invert", "invert via constant composition powers");
    iv->add_option("mapfile", file)->required();
    iv->add_option("--point", point, "target point p1,...,pn")->required();
    iv->add_option("--power", power, "composition power m");
    iv->add_flag("--auto", auto_power, "find the smallest constant power symbolically");

    auto* fp = app.add_subcommand("fixed-points", "multi-start fixed point iteration");
    fp->add_option("mapfile", file)->required();
    fp->add_option("--starts", starts, "number of starts");
    fp->add_option("--box", box, "sampling box lo,hi");

    auto* pe = app.add_subcommand("planar-extract", "recover (a,b,c,d,phi) of a planar unipotent map");
    pe->add_option("mapfile", file)->required();

    auto* ic = app.add_subcommand("infinity-check", "leading forms and zeros at infinity");
    ic->add_option("mapfile", file)->required();

    auto* uf = app.add_subcommand("unique-fixed-point", "fixed-point uniqueness certificate");
    uf->add_option("mapfile", file)->required();

    auto* ob = app.add_subcommand("orbit", "flow or iteration orbit as CSV (t,x1,...,xn,norm)");
    ob->add_option("mapfile", file)->required();
    ob->add_flag("--flow", flow, "integrate dp/dt = -f(p) with RK4");
    ob->add_flag("--iterate", iterate, "iterate x <- f(x)");
    ob->add_option("--start", start, "initial point p1,...,pn")->required();
    ob->add_option("--t0", t0, "flow start time");
    ob->add_option("--t1", t1, "flow end time");
    ob->add_option("--steps", steps, "RK4 step count");
    ob->add_option("--k", iterations, "iteration count");

    auto* sp = app.add_subcommand("spectral", "sampled eigenvalue statistics of J(f)");
    sp->add_option("mapfile", file)->required();
    sp->add_option("--samples", samples, "sample count");
    sp->add_option("--box", box, "sampling box lo,hi");

    auto* ve = app.add_subcommand("verify-example", "run the fixture suite for example k (1..5)");
    ve->add_option("k", example_k, "example number")->required()->check(CLI::Range(1, 5));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    Output out;
    out.as_json = format == "json";

    int code = kExitUsage;
    try {
        if (cu->parsed()) {
            code = cmd_check_unipotent(file, unipotent_mode, samples, tol, seed, out);
        } else if (cs->parsed()) {
            code = cmd_check_strong(file, !generic, tuples, seed, out);
        } else if (tr->parsed()) {
            code = cmd_triangularize(file, out);
        } else if (bn->parsed()) {
            code = cmd_build_newclass(file, out);
        } else if (iv->parsed()) {
            code = cmd_invert(file, point, power, auto_power, out);
        } else if (fp->parsed()) {
            auto b = parse_point(box);
            code = cmd_fixed_points(file, starts, b.at(0), b.at(1), seed, out);
        } else if (pe->parsed()) {
            code = cmd_planar_extract(file, out);
        } else if (ic->parsed()) {
            code = cmd_infinity_check(file, out);
        } else if (uf->parsed()) {
            code = cmd_unique_fixed_point(file, seed, out);
        } else if (ob->parsed()) {
            if (flow == iterate) throw Error("choose exactly one of --flow / --iterate");
            code = cmd_orbit(file, flow, start, t0, t1, steps, iterations, out);
        } else if (sp->parsed()) {
            auto b = parse_point(box);
            code = cmd_spectral(file, samples, b.at(0), b.at(1), seed, out);
        } else if (ve->parsed()) {
            code = cmd_verify_example(example_k, seed, out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    out.set("exit_code", code);
    out.finish();
    return code;
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unimap/dynamics.hpp"
#include "unimap/errors.hpp"
#include "unimap/examples.hpp"
#include "unimap/infinity.hpp"
#include "unimap/inversion.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/newclass.hpp"
#include "unimap/parse.hpp"
#include "unimap/planar.hpp"
#include "unimap/triangular.hpp"

namespace py = pybind11;
using namespace unimap;

namespace {

RatVec to_ratvec(const std::vector<std::string>& v) {
    RatVec out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(rational_from_string(s));
    return out;
}

std::vector<std::string> from_ratvec(const RatVec& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(to_string(c));
    return out;
}

py::dict verdict_dict(const NilpotenceVerdict& v) {
    py::dict d;
    d["status"] = to_string(v.status);
    d["detail"] = v.detail;
    if (v.witness) d["witness"] = from_ratvec(*v.witness);
    if (v.float_witness) d["float_witness"] = *v.float_witness;
    return d;
}

} // namespace

PYBIND11_MODULE(_unimap, m) {
    m.doc() = "Exact symbolic-numeric tools for self-maps of R^n with unipotent Jacobian structure";

    py::register_exception<Error>(m, "UnimapError");

    py::class_<ExprMap>(m, "Map")
        .def_static("parse", &parse_map, py::arg("text"),
                    "Parse a map from the dim/phi/f_i text format")
        .def_property_readonly("dim", [](const ExprMap& f) { return f.dim; })
        .def("__call__", [](const ExprMap& f, const std::vector<double>& p) { return f.eval(p); })
        .def("eval_exact",
             [](const ExprMap& f, const std::vector<std::string>& p) {
                 return from_ratvec(f.eval(to_ratvec(p)));
             })
        .def("render", [](const ExprMap& f) { return render_map(f); })
        .def("compose", [](const ExprMap& f, const ExprMap& g) { return compose(f, g); })
        .def("perturbation", [](const ExprMap& f) { return perturbation(f); })
        .def("jacobian_at",
             [](const ExprMap& f, const std::vector<double>& p) {
                 ExprMatrix J = jacobian(f);
                 std::vector<double> flat = J.eval(p);
                 std::vector<std::vector<double>> rows(f.dim, std::vector<double>(f.dim));
                 for (int i = 0; i < f.dim; ++i) {
                     for (int j = 0; j < f.dim; ++j) rows[i][j] = flat[static_cast<size_t>(i) * f.dim + j];
                 }
                 return rows;
             })
        .def("__repr__", [](const ExprMap& f) { return "<unimap.Map dim=" + std::to_string(f.dim) + ">"; });

    m.def("parse_map", &parse_map, py::arg("text"));

    m.def("is_unipotent_exact",
          [](const ExprMap& f) { return verdict_dict(is_unipotent(to_poly_map(f))); },
          py::arg("map"), "Exact unipotence certificate for a polynomial map");

    m.def("is_nilpotent_exact",
          [](const ExprMap& h) { return verdict_dict(is_nilpotent_exact(to_poly_map(h))); }, py::arg("map"));

    m.def(
        "is_unipotent_sampled",
        [](const ExprMap& f, int samples, double tol, std::uint64_t seed) {
            return verdict_dict(is_nilpotent_sampled(perturbation(f), samples, tol, -10.0, 10.0, seed));
        },
        py::arg("map"), py::arg("samples") = 500, py::arg("tol") = 1e-9, py::arg("seed") = 42);

    m.def(
        "strongly_nilpotent",
        [](const ExprMap& f) {
            auto cert = strongly_nilpotent_generic(perturbation(to_poly_map(f)));
            py::dict d;
            d["strongly_nilpotent"] = cert.strongly_nilpotent;
            d["detail"] = cert.detail;
            if (cert.witness_points) {
                std::vector<std::vector<std::string>> pts;
                for (const auto& p : *cert.witness_points) pts.push_back(from_ratvec(p));
                d["witness_points"] = pts;
            }
            return d;
        },
        py::arg("map"), "Generic-point strong nilpotence of J(f - id), decided exactly");

    m.def(
        "triangularize",
        [](const ExprMap& f) {
            TriangularizedMap tm = triangularize_map(to_poly_map(f));
            py::dict d;
            std::vector<std::vector<std::string>> S(tm.S.rows(), std::vector<std::string>(tm.S.cols()));
            for (int i = 0; i < tm.S.rows(); ++i) {
                for (int j = 0; j < tm.S.cols(); ++j) S[i][j] = to_string(tm.S.at(i, j));
            }
            d["S"] = S;
            d["triangular_form"] = render_map(tm.triangular_form);
            return d;
        },
        py::arg("map"));

    m.def(
        "build_newclass",
        [](const std::string& recipe_text) {
            NewClassRecipe recipe = parse_recipe(recipe_text);
            ExprMap h = build(recipe);
            ClaimsReport rep = verify_claims(recipe);
            py::dict d;
            d["map"] = render_map(h);
            d["polynomial"] = rep.polynomial;
            d["all_claims_pass"] = rep.all_pass;
            if (rep.power_value) d["power_value"] = from_ratvec(*rep.power_value);
            return d;
        },
        py::arg("recipe"), "Build a recursive perturbation from recipe text and verify its claims");

    m.def(
        "newclass_invert",
        [](const std::string& recipe_text, const std::vector<std::string>& y) {
            return from_ratvec(invert(parse_recipe(recipe_text), to_ratvec(y)));
        },
        py::arg("recipe"), py::arg("y"));

    m.def(
        "invert_by_power",
        [](const ExprMap& f, const std::vector<double>& y, int power, double tol) {
            InversionResult r = invert_by_power(f, y, power, tol);
            py::dict d;
            d["ok"] = r.status == InversionStatus::Ok;
            d["point"] = r.point;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("map"), py::arg("y"), py::arg("power"), py::arg("tol") = 1e-9);

    m.def(
        "symbolic_power_constancy",
        [](const ExprMap& f) {
            PowerConstancy pc = symbolic_power_constancy(perturbation(to_poly_map(f)));
            py::dict d;
            d["power"] = pc.power ? py::object(py::int_(*pc.power)) : py::object(py::none());
            d["capped"] = pc.capped;
            if (pc.formula) d["formula"] = render_map(*pc.formula);
            return d;
        },
        py::arg("map"));

    m.def(
        "planar_extract",
        [](const ExprMap& f) {
            PlanarExtraction ex = extract_normal_form(to_poly_map(f));
            py::dict d;
            d["ok"] = ex.ok;
            if (ex.ok) {
                d["a"] = to_string(ex.form.a);
                d["b"] = to_string(ex.form.b);
                d["c"] = to_string(ex.form.c);
                d["d"] = to_string(ex.form.d);
                d["phi"] = render(ex.form.phi, {"t"});
            } else {
                d["failure"] = ex.failure;
            }
            return d;
        },
        py::arg("map"));

    m.def(
        "make_planar",
        [](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
           const std::string& phi) {
            PlanarNormalForm nf{rational_from_string(a), rational_from_string(b), rational_from_string(c),
                                rational_from_string(d), parse_expr(phi, 1, /*allow_t=*/true)};
            return make_planar(nf);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("phi"));

    m.def(
        "infinity_check",
        [](const ExprMap& f) {
            PolyMap p = to_poly_map(f);
            LeadingFormSet L = leading_forms(p);
            DirectionCertificate cert = no_zeros_at_infinity(p);
            py::dict d;
            d["algebraic_degree"] = L.algebraic_degree;
            d["component_degrees"] = L.degrees;
            d["verdict"] = to_string(cert.verdict);
            d["detail"] = cert.detail;
            if (cert.direction) d["direction"] = from_ratvec(*cert.direction);
            if (cert.float_direction) d["float_direction"] = *cert.float_direction;
            return d;
        },
        py::arg("map"));

    m.def(
        "unique_fixed_point",
        [](const ExprMap& f, std::uint64_t seed) {
            UniqueFixedPointCertificate cert = unique_fixed_point_via_randall(to_poly_map(f), seed);
            py::dict d;
            d["certified"] = cert.certified;
            d["route"] = cert.route;
            d["heuristic"] = cert.heuristic;
            d["failing_hypothesis"] = cert.failing_hypothesis;
            d["newton_distinct"] = cert.newton.distinct_roots;
            return d;
        },
        py::arg("map"), py::arg("seed") = 42);

    m.def(
        "integrate_flow",
        [](const ExprMap& f, const std::vector<double>& p0, double t0, double t1, int steps) {
            Orbit o = integrate_flow(f, p0, t0, t1, steps);
            py::dict d;
            d["times"] = o.times;
            d["points"] = o.points;
            d["norms"] = o.norms;
            d["diverged"] = o.diverged;
            return d;
        },
        py::arg("map"), py::arg("p0"), py::arg("t0"), py::arg("t1"), py::arg("steps"));

    m.def(
        "iterate_map",
        [](const ExprMap& h, const std::vector<double>& p0, int k, double period_tol) {
            Orbit o = iterate_map(h, p0, k);
            auto period = detect_period(o, period_tol);
            py::dict d;
            d["points"] = o.points;
            d["norms"] = o.norms;
            d["diverged"] = o.diverged;
            d["period"] = period ? py::object(py::int_(*period)) : py::object(py::none());
            return d;
        },
        py::arg("map"), py::arg("p0"), py::arg("k"), py::arg("period_tol") = 1e-8);

    m.def(
        "spectral_report",
        [](const ExprMap& f, int samples, double lo, double hi, std::uint64_t seed) {
            SpectralReport r = spectral_report(f, samples, lo, hi, std::nullopt, seed);
            py::dict d;
            d["samples"] = r.samples;
            d["failures"] = r.failures;
            d["min_real_part"] = r.min_real_part;
            d["max_modulus"] = r.max_modulus;
            return d;
        },
        py::arg("map"), py::arg("samples") = 200, py::arg("lo") = -10.0, py::arg("hi") = 10.0,
        py::arg("seed") = 42);

    m.def(
        "verify_example",
        [](int k, std::uint64_t seed) {
            auto rep = examples::verify_example(k, seed);
            std::vector<py::dict> checks;
            for (const auto& c : rep.checks) {
                py::dict d;
                d["name"] = c.name;
                d["pass"] = c.pass;
                d["detail"] = c.detail;
                checks.push_back(d);
            }
            return checks;
        },
        py::arg("k"), py::arg("seed") = 42);

    m.def("example_map", [](int k) {
        switch (k) {
            case 1: return examples::example1();
            case 2: return to_expr_map(examples::example2());
            case 3: return examples::example3();
            case 4: return examples::example4();
            case 5: return examples::example5_h();
            default: throw Error("examples are numbered 1..5");
        }
    });
}

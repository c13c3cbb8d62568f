"""Smoke tests for the python bindings.

The CMake test harness points UNIMAP_MODULE_DIR at the build directory of
the extension; an installed wheel works without it.
"""

import os
import sys

import pytest

_dir = os.environ.get("UNIMAP_MODULE_DIR")
if _dir:
    sys.path.insert(0, _dir)

um = pytest.importorskip("_unimap")


def test_parse_eval_roundtrip():
    f = um.Map.parse("dim 2; f1 = x1 + x2^3; f2 = x2 - x1^3;")
    assert f.dim == 2
    assert f([1.0, 2.0]) == [9.0, 1.0]
    g = um.Map.parse(f.render())
    assert g([0.5, -0.25]) == f([0.5, -0.25])


def test_exact_evaluation():
    f = um.Map.parse("dim 1; f1 = x1 + x1^3;")
    assert f.eval_exact(["1/2"]) == ["5/8"]


def test_unipotence_certificates():
    f = um.Map.parse("dim 2; f1 = x1 + (x1 + x2)^2; f2 = x2 - (x1 + x2)^2;")
    assert um.is_unipotent_exact(f)["status"] == "ProvenNilpotent"
    double = um.Map.parse("dim 1; f1 = 2*x1;")
    assert um.is_unipotent_exact(double)["status"] == "ProvenNot"


def test_sampled_unipotence_of_cos_map():
    f = um.example_map(1)
    verdict = um.is_unipotent_sampled(f, samples=100, tol=1e-9, seed=7)
    assert verdict["status"] == "ProbablyNilpotent"


def test_triangularize_and_strong_nilpotence():
    f = um.Map.parse("dim 2; f1 = x1 + x2^2; f2 = x2;")
    assert um.strongly_nilpotent(f)["strongly_nilpotent"] is True
    S = um.triangularize(f)["S"]
    assert S == [["1", "0"], ["0", "1"]]


def test_newclass_build_and_invert():
    recipe = "dim 3; phi = -t^2; base phi(x2); level 2 { M = [ 1, 0 ; 1, x3 ]; C = [ 0, 0 ]; }"
    built = um.build_newclass(recipe)
    assert built["all_claims_pass"] is True
    assert built["power_value"] == ["0", "0", "0"]
    x = um.newclass_invert(recipe, ["3", "-2", "5"])
    f = um.Map.parse("dim 3; phi = -t^2;"
                     "f1 = x1 + x3*phi(x1 + x3*x2);"
                     "f2 = x2 - phi(x1 + x3*x2); f3 = x3;")
    assert f.eval_exact(x) == ["3", "-2", "5"]


def test_planar_extraction_roundtrip():
    f = um.make_planar("3", "5", "0", "0", "t^2")
    form = um.planar_extract(f)
    assert form["ok"] and form["a"] == "3" and form["b"] == "5"


def test_infinity_and_unique_fixed_point():
    f = um.Map.parse("dim 2; f1 = x1 + x2^3; f2 = x2 - x1^3;")
    assert um.infinity_check(f)["verdict"] == "ProvenHolds"
    g = um.Map.parse("dim 2; f1 = -x2^3; f2 = x1^3;")
    cert = um.unique_fixed_point(g)
    assert not cert["certified"]  # det(J - I) is nonconstant: NotApplicable


def test_orbit_period():
    h = um.example_map(5)
    orbit = um.iterate_map(h, [-1.0, 1.0, -1.0], 30)
    assert orbit["period"] == 3


def test_verify_examples_pass():
    for k in (2, 4, 5):
        assert all(c["pass"] for c in um.verify_example(k))

"""Surface loading/validation, pencils, jacobian counts, Zeuthen-Segre."""

import copy

import pytest

from oracles import exhaustive_jacobian_roots
from picard_forms.errors import (
    InvariantViolation,
    ReductionError,
    UnsupportedDoubleCurve,
)
from picard_forms.fields import Field
from picard_forms.fixtures import SURFACE_DOCUMENTS, bundled_surface, surface_names
from picard_forms.poly import dehomogenize, parse_polynomial
from picard_forms.surface import (
    jacobian_count,
    load_surface,
    pencil_data,
    randomized_variant,
    reduce_mod_p,
    zeuthen_segre_formula,
)

QQ = Field.rationals()


def test_fermat_quartic_loads(surfaces):
    S = surfaces["fermat_quartic"]
    assert S.d == 4 and S.ordinary and S.gamma_empty
    assert S.f == dehomogenize(S.F)


def test_steiner_loads_with_axis_samples(surfaces):
    S = surfaces["steiner_roman"]
    assert S.d == 4
    assert len(S.double_curve_generators) == 3
    # the partials-vanish check ran at load; re-check one point by hand
    pt = (0, 0, 1, 2)
    for i in range(4):
        assert S.F.diff(i).evaluate(pt) == 0


def test_sample_off_curve_rejected():
    doc = copy.deepcopy(SURFACE_DOCUMENTS["steiner_roman"])
    doc["double_curve"]["samples"].append([1, 1, 1, 1])
    with pytest.raises(InvariantViolation):
        load_surface(doc)


def test_nonhomogeneous_equation_rejected():
    doc = {
        "name": "bad",
        "field": "rationals",
        "F": "x^2 + y",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": True,
    }
    with pytest.raises(InvariantViolation):
        load_surface(doc)


def test_every_bundled_fixture_validates():
    for name in surface_names():
        S = bundled_surface(name)
        for pt in S.double_curve_samples:
            assert S.F.evaluate(pt) == S.field.zero()


# -- pencils ------------------------------------------------------------------------


def test_pencil_axis_1_drops_fx(surfaces):
    S = surfaces["fermat_quartic"]
    data = pencil_data(S, 1)
    f = S.f
    assert data.jacobian_generators == (f, f.diff(1), f.diff(2))
    assert data.polar == S.F.diff(0)


def test_pencil_axes_cycle(surfaces):
    S = surfaces["fermat_quartic"]
    f = S.f
    assert pencil_data(S, 2).jacobian_generators == (f, f.diff(2), f.diff(0))
    assert pencil_data(S, 3).jacobian_generators == (f, f.diff(0), f.diff(1))


def test_pencil_on_quadric():
    S = load_surface(
        {
            "name": "quadric",
            "field": "rationals",
            "F": "x^2 + y^2 + z^2 + w^2",
            "double_curve": {"generators": [], "samples": []},
            "ordinary": True,
        }
    )
    gens = pencil_data(S, 1).jacobian_generators
    assert gens[1] == parse_polynomial("2*y", QQ, 3)
    assert gens[2] == parse_polynomial("2*z", QQ, 3)


# -- jacobian counts -------------------------------------------------------------------


def test_zeuthen_segre_formula_values():
    assert zeuthen_segre_formula(9, 1, 3) == 12
    assert zeuthen_segre_formula(4, 0, 2) == 2
    assert zeuthen_segre_formula(0, 1, 0) == 0


@pytest.mark.parametrize(
    "name, expected",
    [("smooth_quadric_randomized", 2), ("smooth_cubic_randomized", 12), ("fermat_quartic_randomized", 36)],
)
def test_jacobian_count_randomized(surfaces, name, expected):
    S = surfaces[name]
    count = jacobian_count(S, 1)
    assert count == expected
    assert count == S.d * (S.d - 1) ** 2
    assert count == zeuthen_segre_formula(
        S.expected["euler"], S.expected["sectional_genus"], S.d
    )


def test_jacobian_count_axis_symmetry(surfaces):
    S = surfaces["smooth_cubic_randomized"]
    assert jacobian_count(S, 1) == jacobian_count(S, 2) == jacobian_count(S, 3) == 12


def test_jacobian_count_invariant_under_independent_seeds(surfaces):
    base = surfaces["smooth_cubic"]
    a = randomized_variant(base, 101)
    b = randomized_variant(base, 202)
    assert jacobian_count(a, 1) == jacobian_count(b, 1) == 12


def test_jacobian_count_refuses_double_curve(surfaces):
    with pytest.raises(UnsupportedDoubleCurve):
        jacobian_count(surfaces["steiner_roman"], 1)


def _split_surface(F_text, p):
    return load_surface(
        {
            "name": "split",
            "field": f"prime:{p}",
            "F": F_text,
            "double_curve": {"generators": [], "samples": []},
            "ordinary": False,
        }
    )


def test_quadric_count_matches_hand_solution():
    # f = x^2 + y^2 + z^2 - 3: f_y, f_z are linear, so y = z = 0 and
    # x^2 = 3; over GF(11), 3 = 5^2, giving exactly the two simple points
    S = _split_surface("x^2 + y^2 + z^2 - 3*w^2", 11)
    assert jacobian_count(S, 1) == 2
    assert exhaustive_jacobian_roots(S.f, 11) == 2


def test_cubic_count_matches_exhaustive_search():
    # split form x^3 + (y^3 - 3y) + (z^3 - 3z) + e over GF(37) with e chosen
    # so all twelve roots are rational and simple (pinned by the search below)
    p = 37
    cubes = {pow(v, 3, p) for v in range(1, p)}
    e = next(
        e for e in range(p) if all(c % p in cubes for c in (4 - e, -e, -4 - e))
    )
    assert e == 10
    S = _split_surface(f"x^3 + y^3 - 3*y*w^2 + z^3 - 3*z*w^2 + {e}*w^3", p)
    assert exhaustive_jacobian_roots(S.f, p) == 12
    assert jacobian_count(S, 1) == 12


def test_quartic_count_matches_exhaustive_search():
    # x^4 + (y^4 - 12y^2) + (z^4 - 12z^2) + 13 over GF(29): f_y, f_z split
    # with simple roots {0, 8, 21} and each x^4 = c lands on a nonzero fourth
    # power, so all 36 roots are rational and simple
    S = _split_surface("x^4 + y^4 - 12*y^2*w^2 + z^4 - 12*z^2*w^2 + 13*w^4", 29)
    assert exhaustive_jacobian_roots(S.f, 29) == 36
    assert jacobian_count(S, 1) == 36


# -- randomized variants and reduction ---------------------------------------------------


def test_randomized_variant_preserves_incidences(surfaces):
    S = randomized_variant(surfaces["steiner_roman"], 787)
    assert S.generic_coordinates
    for pt in S.double_curve_samples:
        assert S.F.evaluate(pt) == 0
        for g in S.double_curve_generators:
            assert g.evaluate(pt) == 0
    for coords in S.parametrizations:
        for t in range(5):
            pt = tuple(c.evaluate((t, 0, 0)) for c in coords)
            assert S.F.evaluate(pt) == 0


def test_reduce_mod_p(surfaces):
    S = reduce_mod_p(surfaces["fermat_quartic"], 101)
    assert S.field == Field.prime(101)
    assert S.F.degree() == 4
    with pytest.raises(ReductionError):
        reduce_mod_p(S, 7)  # already a prime field


def test_reduce_mod_p_refuses_bad_denominator():
    doc = {
        "name": "half",
        "field": "rationals",
        "F": "x^2 + 1/5*y^2 + z^2 + w^2",
        "double_curve": {"generators": [], "samples": []},
        "ordinary": True,
    }
    S = load_surface(doc)
    with pytest.raises(ReductionError):
        reduce_mod_p(S, 5)
    assert reduce_mod_p(S, 7).field == Field.prime(7)


def test_document_round_trip(surfaces):
    S = surfaces["steiner_roman_randomized"]
    doc = S.to_document()
    reloaded = load_surface(doc)
    assert reloaded.F == S.F
    assert reloaded.double_curve_generators == S.double_curve_generators
    assert reloaded.double_curve_samples == S.double_curve_samples

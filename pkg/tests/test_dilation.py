import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavetrap.circle_map import lift_eval
from wavetrap.dilation import (
    INFINITY,
    Mobius,
    ae_rationality_experiment,
    closed_leaf_exists,
    conjugacy_witness,
    fundamental_domain,
    g_lift,
    mobius,
    mobius_apply,
    reduce_direction,
    surface_params,
    veech_generators,
)
from wavetrap.errors import DegenerateM, NegativeS, NotReducedError, ParameterError
from wavetrap.geometry import trapezoid_params
from wavetrap.rotation import rho_certify, rho_value
from wavetrap.scalar import exact, to_float


def reference_params():
    return trapezoid_params(exact(1), exact(1), exact(4))


def test_surface_params_reference_point():
    sp = surface_params(reference_params())
    assert sp.m == exact(5, 8)
    assert sp.s == exact(1, 8)
    assert sp.beta == exact(64, 15)


def test_surface_params_rejects_negative_s():
    p = trapezoid_params(exact(1, 2), exact(3), exact(9), require_extra=False)
    assert p.s == exact(-2, 9)
    with pytest.raises(NegativeS):
        surface_params(p)


def test_g_lift_anchor_and_breaks():
    G = g_lift(exact(5, 8), exact(1, 8))
    assert G.breaks == (exact(0), exact(3, 8))
    assert lift_eval(G, exact(0)) == exact(1, 2)
    assert lift_eval(G, exact(3, 8)) == exact(9, 8)
    assert lift_eval(G, exact(1)) == exact(3, 2)
    assert G.slopes == (exact(5, 3), exact(3, 5))


def test_g_lift_half_is_translation():
    G = g_lift(exact(1, 2), exact(1, 3))
    assert G.slopes == (exact(1),)
    assert lift_eval(G, exact(0)) == exact(1, 3) + exact(1, 2)


def test_g_lift_domain_guard():
    with pytest.raises(DegenerateM):
        g_lift(exact(1), exact(0))
    with pytest.raises(DegenerateM):
        g_lift(exact(1, 3), exact(0))


def test_conjugacy_is_exact_on_exact_input():
    c, residual = conjugacy_witness(reference_params(), samples=48, seed=3)
    assert c == exact(-1, 4)
    assert residual == 0


def test_conjugate_maps_share_rho():
    p = reference_params()
    sp = surface_params(p)
    from wavetrap.circle_map import trapezoid_lift

    rf = rho_certify(trapezoid_lift(p), q_max=60)
    rg = rho_certify(g_lift(sp.m, sp.s), q_max=60)
    assert rf.interval() == rg.interval()


def test_veech_generators():
    gens = veech_generators(exact(5, 8))
    A, B, negI = gens["A"], gens["B"], gens["negI"]
    assert (A.a, A.b, A.c, A.d) == (1, 1, 0, 1)
    assert (B.a, B.b, B.c, B.d) == (1, 0, exact(64, 15), 1)
    assert A.det == B.det == 1
    # -I normalizes to the identity in PSL(2, R)
    assert negI == mobius(exact(1), exact(0), exact(0), exact(1))


def test_fundamental_domain_values():
    assert fundamental_domain(exact(5, 8)) == (exact(15, 34), exact(1, 2))
    assert fundamental_domain(exact(2, 3)) == (exact(2, 5), exact(1, 2))
    with pytest.raises(DegenerateM):
        fundamental_domain(exact(1, 2))


def test_fundamental_domain_sits_inside_break_gap():
    for num in range(52, 99):
        m = exact(num, 100)
        j_lo, j_hi = fundamental_domain(m)
        assert 1 - m <= j_lo < j_hi <= m


def test_mobius_normalization_and_inverse():
    M = mobius(exact(-2), exact(4), exact(0), exact(-2))
    assert (M.a, M.b, M.c, M.d) == (2, -4, 0, 2)
    I = M * M.inv()
    assert (I.a, I.b, I.c, I.d) == (1, 0, 0, 1)
    with pytest.raises(ParameterError):
        mobius(exact(1), exact(2), exact(2), exact(4))


def test_mobius_apply_handles_infinity():
    M = mobius(exact(2), exact(1), exact(1), exact(1))
    assert mobius_apply(M, INFINITY) == exact(2)
    T = mobius(exact(1), exact(5), exact(0), exact(1))
    assert mobius_apply(T, INFINITY) is INFINITY
    down = mobius(exact(0), exact(1), exact(1), exact(0))
    assert mobius_apply(down, exact(0)) is INFINITY


small_entries = st.integers(min_value=-9, max_value=9)


@settings(max_examples=80, deadline=None)
@given(small_entries, small_entries, small_entries, small_entries,
       small_entries, small_entries, small_entries, small_entries,
       st.fractions(min_value="-4", max_value=4, max_denominator=40))
def test_mobius_composition_property(a, b, c, d, e, f, g, h, x):
    if a * d - b * c == 0 or e * h - f * g == 0:
        return
    M = mobius(exact(a), exact(b), exact(c), exact(d))
    N = mobius(exact(e), exact(f), exact(g), exact(h))
    s = exact(x.numerator, x.denominator)
    lhs = mobius_apply(M * N, s)
    rhs = mobius_apply(M, mobius_apply(N, s))
    if lhs is INFINITY or rhs is INFINITY:
        assert lhs is rhs
    else:
        assert lhs == rhs


def test_reduce_inside_domain_is_trivial():
    red = reduce_direction(exact(5, 8), exact(29, 64))
    assert red.status == "reduced"
    assert red.word == ()
    assert red.s_out == exact(29, 64)


def test_reduce_translates_first():
    red = reduce_direction(exact(5, 8), exact(157, 64))
    assert red.status == "reduced"
    assert red.word == (("A", -2),)
    assert red.s_out == exact(29, 64)
    assert mobius_apply(red.matrix, red.s_in) == red.s_out


def test_reduce_uses_parabolic_batch():
    red = reduce_direction(exact(5, 8), exact(13, 64))
    assert red.status == "reduced"
    j_lo, j_hi = fundamental_domain(exact(5, 8))
    assert j_lo <= red.s_out <= j_hi
    assert mobius_apply(red.matrix, red.s_in) == red.s_out
    assert any(gen == "B" for gen, _ in red.word)


def test_reduce_detects_cusp_orbit():
    red = reduce_direction(exact(5, 8), exact(-1, 8))
    assert red.status == "not_reduced"
    assert red.reason
    with pytest.raises(NotReducedError):
        reduce_direction(exact(5, 8), exact(-1, 8), raise_on_failure=True)


def test_reduce_accepts_floats_via_exact_conversion():
    red = reduce_direction(0.625, 0.203125)
    assert red.status == "reduced"
    assert mobius_apply(red.matrix, red.s_in) == red.s_out


def test_closed_leaf_fixed_point_branch():
    report = closed_leaf_exists(exact(5, 8), exact(15, 32))
    assert report["periodic"] is True
    assert (report["p"], report["q"]) == (1, 1)
    assert report["method"] == "fixed-point"
    assert report["atoms"]


def test_closed_leaf_certified_branch():
    report = closed_leaf_exists(exact(5, 8), exact(7, 3), q_max=500)
    assert report["method"] in ("certified", "enclosure")
    if report["method"] == "certified":
        assert report["periodic"] is True
        assert report["q"] > 1


def test_closed_leaf_translation_limit():
    report = closed_leaf_exists(exact(1, 2), exact(1, 5), q_max=50)
    assert report["periodic"] is True
    assert (report["p"], report["q"]) == (7, 10)


def test_experiment_is_deterministic_and_consistent():
    kw = dict(n_samples=12, q_max=200, seed=7, s_range=(exact(0), exact(4)))
    rep1 = ae_rationality_experiment(exact(5, 8), **kw)
    rep2 = ae_rationality_experiment(exact(5, 8), **kw)
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)
    assert rep1["n_samples"] == 12
    assert rep1["agreement"]["disagree"] == 0
    assert rep1["reduced"] + rep1["not_reduced"] == 12
    assert len(rep1["samples"]) == 12


def test_experiment_parallel_matches_serial():
    kw = dict(n_samples=8, q_max=100, seed=11, s_range=(exact(0), exact(2)))
    serial = ae_rationality_experiment(exact(5, 8), workers=1, **kw)
    parallel = ae_rationality_experiment(exact(5, 8), workers=2, **kw)
    assert json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True)

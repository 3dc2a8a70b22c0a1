import math

import pytest

from wavetrap.errors import InvalidFamily
from wavetrap.families import (
    FAMILY_NAMES,
    FamilyAlphaTheta,
    FamilyEll,
    FamilyMaasTau,
    FamilyNegTheta,
    family_from_name,
)
from wavetrap.rotation import rho_certify, rho_value
from wavetrap.scalar import exact, to_float


def test_factory_round_trip():
    fam = family_from_name("maas-tau", d=exact(1, 4))
    assert isinstance(fam, FamilyMaasTau)
    assert fam.config() == {"family": "maas-tau", "d": "1/4"}
    assert isinstance(family_from_name("ell", tan_alpha=exact(1), tan_theta=exact(4)), FamilyEll)
    assert isinstance(family_from_name("neg-theta", ell=exact(1), tan_alpha=exact(1)), FamilyNegTheta)
    assert isinstance(family_from_name("alpha-theta", ell=exact(1), kappa=3.0), FamilyAlphaTheta)


def test_factory_rejects_bad_input():
    with pytest.raises(InvalidFamily):
        family_from_name("spiral")
    with pytest.raises(InvalidFamily):
        family_from_name("maas-tau")
    with pytest.raises(InvalidFamily):
        family_from_name("alpha-theta", ell=exact(1), kappa=0.5)
    assert "maas-tau" in FAMILY_NAMES


def _rho_at(fam, u):
    return rho_certify(fam.build(u).lift, q_max=60).interval()


def _check_orientation(fam, u_small, u_large):
    lo_s, hi_s = _rho_at(fam, u_small)
    lo_l, hi_l = _rho_at(fam, u_large)
    if fam.increasing:
        assert hi_s < lo_l or (lo_s, hi_s) != (lo_l, hi_l) and hi_s <= hi_l
    else:
        assert hi_l < lo_s or (lo_l, hi_l) != (lo_s, hi_s) and hi_l <= hi_s


def test_declared_orientations_hold():
    _check_orientation(family_from_name("ell", tan_alpha=exact(1), tan_theta=exact(4)),
                       exact(1, 2), exact(3))
    _check_orientation(family_from_name("neg-theta", ell=exact(1), tan_alpha=exact(1)),
                       exact(-12), exact(-3))
    _check_orientation(family_from_name("maas-tau", d=exact(0)), exact(2), exact(5))
    _check_orientation(family_from_name("alpha-theta", ell=exact(1), kappa=4.0),
                       0.1, 0.3)


def test_probe_window_brackets_small_and_large_rho():
    fam = family_from_name("maas-tau", d=exact(0))
    lo, hi = fam.probe_window()
    rho_lo = rho_certify(fam.build(hi).lift, q_max=50)
    assert to_float(rho_lo.interval()[1]) < 0.05
    rho_hi = rho_certify(fam.build(lo).lift, q_max=5)
    assert to_float(rho_hi.interval()[0]) >= 1


def test_alpha_theta_domain_guard():
    fam = FamilyAlphaTheta(exact(1), 4.0)
    with pytest.raises(InvalidFamily):
        fam.build(math.pi / 2)
    point = fam.build(0.2)
    assert point.params.tan_alpha == pytest.approx(math.tan(0.2))
    assert point.params.tan_theta == pytest.approx(math.tan(0.8))
    assert not point.lift.exact_mode


def test_maas_family_resonance():
    fam = family_from_name("maas-tau", d=exact(-1, 2))
    r = rho_certify(fam.build(exact(9, 2)).lift, q_max=10)
    assert rho_value(r) == exact(1, 4)

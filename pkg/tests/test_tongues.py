import xml.etree.ElementTree as ET

import pytest

from wavetrap.errors import BracketInvalid, UnsupportedPair
from wavetrap.families import family_from_name
from wavetrap.scalar import exact, to_float
from wavetrap.tongues import (
    closed_form_oracle,
    render_phase_diagram,
    scan,
    tongue_interval,
)


def test_oracle_values_on_the_symmetric_slice():
    lo, hi = closed_form_oracle(2, 3, 0)
    assert lo == pytest.approx(2.2807764064044151, abs=1e-12)
    assert hi == pytest.approx(2.4142135623730951, abs=1e-12)
    t_lo, t_hi = closed_form_oracle(1, 4, 0)
    assert t_lo == t_hi == pytest.approx(3 + 2 * 2**0.5, abs=1e-12)


def test_oracle_rejects_other_pairs():
    with pytest.raises(UnsupportedPair):
        closed_form_oracle(1, 3, 0)


def test_tongue_interval_matches_oracle():
    fam = family_from_name("maas-tau", d=exact(0))
    lo, hi = tongue_interval(2, 3, fam, bracket=(exact(2), exact(3)), tol=1e-12)
    o_lo, o_hi = closed_form_oracle(2, 3, 0)
    assert to_float(lo) == pytest.approx(o_lo, abs=1e-10)
    assert to_float(hi) == pytest.approx(o_hi, abs=1e-10)


def test_even_tongue_degenerates_to_a_point():
    fam = family_from_name("maas-tau", d=exact(0))
    lo, hi = tongue_interval(1, 4, fam, bracket=(exact(5), exact(7)), tol=1e-12)
    assert to_float(hi - lo) < 1e-8
    assert to_float(lo) == pytest.approx(3 + 2 * 2**0.5, abs=1e-8)


def test_bracket_must_straddle():
    fam = family_from_name("maas-tau", d=exact(0))
    with pytest.raises(BracketInvalid):
        tongue_interval(2, 3, fam, bracket=(exact(3), exact(4)))
    with pytest.raises(BracketInvalid):
        tongue_interval(2, 3, fam, bracket=(exact(47, 20), exact(3)))


def test_auto_bracket_finds_the_window():
    fam = family_from_name("maas-tau", d=exact(0))
    lo, hi = tongue_interval(2, 3, fam, tol=1e-10)
    o_lo, o_hi = closed_form_oracle(2, 3, 0)
    assert to_float(lo) == pytest.approx(o_lo, abs=1e-8)
    assert to_float(hi) == pytest.approx(o_hi, abs=1e-8)


def test_scan_grid_and_labels():
    records = scan((exact(-9, 10), exact(9, 10)), (exact(1, 2), exact(8)), 12, q_max=20)
    assert len(records) == 144
    labels = {(r.p, r.q) for r in records if r.certified}
    assert (0, 1) in labels and (1, 3) in labels
    for r in records:
        assert r.rho_kind in ("certified", "numeric", "enclosure", "error")
        if r.rho_kind == "certified":
            assert 0 <= r.p < r.q or (r.p, r.q) == (0, 1)


def test_scan_certified_cells_sit_inside_the_oracle_curves():
    records = scan((exact(-1, 10), exact(1, 10)), (exact(2), exact(3)), (2, 40), q_max=30)
    hits = [r for r in records if r.certified and (r.p, r.q) == (2, 3)]
    assert hits
    for r in hits:
        lo, hi = closed_form_oracle(2, 3, to_float(r.d))
        assert lo - 1e-9 <= to_float(r.tau) <= hi + 1e-9


def test_render_phase_diagram_is_valid_svg(tmp_path):
    records = scan((exact(-1, 2), exact(1, 2)), (exact(1), exact(4)), 8, q_max=20)
    svg = render_phase_diagram(records)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert len(list(root.iter())) > 64
    out = tmp_path / "scan.svg"
    out.write_text(svg)
    assert out.stat().st_size > 1000

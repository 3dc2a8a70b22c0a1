import csv
import json

from wavetrap.families import family_from_name
from wavetrap.reports import config_comment, write_json, write_scan_csv, write_staircase_csv
from wavetrap.rotation import staircase
from wavetrap.scalar import exact
from wavetrap.tongues import scan


def test_staircase_csv_schema(tmp_path):
    fam = family_from_name("maas-tau", d=exact(0))
    recs = staircase(fam, exact(2), exact(5, 2), samples=6, q_max=60)
    path = tmp_path / "stairs.csv"
    cfg = {"family": "maas-tau", "d": "0", "samples": 6}
    write_staircase_csv(recs, str(path), cfg)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    assert json.loads(lines[0][len("# config: "):]) == cfg
    rows = list(csv.reader(lines[1:]))
    assert rows[0] == ["u", "rho_kind", "p", "q", "lo", "hi", "q_max"]
    assert len(rows) == 7
    kinds = {row[1] for row in rows[1:]}
    assert kinds <= {"certified", "numeric", "enclosure", "error"}
    certified = [row for row in rows[1:] if row[1] == "certified"]
    assert certified and all(row[2] and row[3] for row in certified)


def test_scan_csv_schema(tmp_path):
    records = scan((exact(-1, 2), exact(1, 2)), (exact(2), exact(3)), 4, q_max=20)
    path = tmp_path / "scan.csv"
    write_scan_csv(records, str(path), {"grid": 4})
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    rows = list(csv.reader(lines[1:]))
    assert rows[0] == ["d", "tau", "p", "q", "certified", "q_max"]
    assert len(rows) == 17
    for row in rows[1:]:
        assert row[4] in ("true", "false")
        assert row[5] == "20"


def test_write_json_embeds_config(tmp_path):
    path = tmp_path / "out.json"
    text = write_json({"value": 1}, str(path), {"cmd": "demo"})
    obj = json.loads(text)
    assert obj["config"] == {"cmd": "demo"}
    assert obj["result"] == {"value": 1}
    assert json.loads(path.read_text()) == obj


def test_reruns_are_byte_identical(tmp_path):
    fam = family_from_name("maas-tau", d=exact(0))
    recs = staircase(fam, exact(2), exact(5, 2), samples=5, q_max=40)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg = {"samples": 5}
    write_staircase_csv(recs, str(a), cfg)
    write_staircase_csv(recs, str(b), cfg)
    assert a.read_bytes() == b.read_bytes()
    t1 = write_json({"x": [1, 2]}, None, cfg)
    t2 = write_json({"x": [1, 2]}, None, cfg)
    assert t1 == t2


def test_config_comment_is_sorted():
    assert config_comment({"b": 1, "a": 2}) == '# config: {"a": 2, "b": 1}'

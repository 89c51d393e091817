import json
import math
import os
from pathlib import Path

import pytest

import isoprofile as ip

DATA = Path(os.environ.get("ISOPROFILE_DATA", Path(__file__).resolve().parents[2] / "data"))


def square(side=2.0):
    return ip.Region([(0, 0), (side, 0), (side, side), (0, side)])


def test_region_basics():
    r = square()
    assert r.area == 4.0
    assert r.perimeter == 8.0
    assert len(r) == 4
    assert r.wkt().startswith("POLYGON")
    cw = ip.Region([(0, 0), (0, 1), (1, 1), (1, 0)])
    v = cw.vertices()
    twice_area = sum(v[i - 1][0] * v[i][1] - v[i][0] * v[i - 1][1] for i in range(len(v)))
    assert twice_area > 0


def test_diagnostics():
    with pytest.raises(ip.StructuralError, match="not simple"):
        ip.Region([(0, 0), (1, 1), (1, 0), (0, 1)])
    with pytest.raises(ip.StructuralError, match="holes unsupported"):
        ip.load_polygon(DATA / "square_with_hole.wkt")
    with pytest.raises(ValueError):
        ip.parse_polygon("POLYGON ((0 0", "wkt")


def test_analyze_square():
    a = ip.analyze(square(), opening=False)
    rep = ip.report(a)
    assert rep["r_n"] is None
    assert rep["tight_everywhere"] is True
    prof = a.profile
    assert prof[0][2] == "analytic_prefix"
    assert all(b[0] > a_[0] and b[1] >= a_[1] for a_, b in zip(prof, prof[1:]))


def test_params_and_necks():
    p = ip.Params()
    p.d_x = 0.05
    p.n_open = 10
    db = ip.load_polygon(DATA / "dumbbell.wkt")
    a = ip.analyze(db, p)
    assert a.params["d_x"] == 0.05
    assert a.params["n_open"] == 10
    ns = ip.necks(db)
    assert len(ns["necks"]) == 1
    assert abs(ns["r_n"] - 0.2) < 1e-3
    bad = ip.Params()
    bad.r_l = 10.0
    with pytest.raises(ValueError):
        ip.analyze(db, bad)


def test_tv():
    disk = ip.load_polygon(DATA / "disk64.csv")
    est = ip.tv_perimeter(disk, 100, "smooth3")
    assert abs(est - disk.perimeter) / disk.perimeter < 0.05
    rows = ip.tv_study(disk, [50, 100])
    assert [r[1] for r in rows[:3]] == ["tv1", "smooth3", "smooth5"]


def test_run_writes_artifacts(tmp_path):
    ip.run(DATA / "dumbbell.wkt", tmp_path, plot=True)
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["thick_neck"] is False
    assert 0 < rep["t_low_tight"] < rep["t_high_tight"] < rep["area"]
    assert (tmp_path / "profile.csv").read_text().startswith("t,p,source\n")
    assert (tmp_path / "plot.svg").read_text().count('class="event"') == 4
    norm = ip.load_polygon(DATA / "l_shape.csv", normalize_area=True)
    assert math.isclose(norm.area, 1.0, rel_tol=1e-12)

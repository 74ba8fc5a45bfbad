import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import vxr

SCHEMAS = Path(os.environ.get("VXR_SCHEMA_DIR", Path(__file__).resolve().parents[2] / "schemas"))


def validate(doc, name):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema).validate(doc)


def test_grid_and_numpy_round_trip():
    g = vxr.GridSpec(2, [6, 4], 0.5, [0.0, 0.0])
    occ = np.zeros((6, 4), dtype=bool)
    occ[1:3, 2] = True
    vs = vxr.VoxelSet(g, occ)
    assert vs.count() == 2
    assert vs.measure() == 0.5
    assert np.array_equal(vs.to_numpy(), occ)
    assert vs.boundary_face_count() == 6


def test_shape_parse_and_rasterize():
    s = vxr.Shape.parse('{"op": "ball", "center": [0, 0], "radius": 1}')
    assert s.contains([0.5, 0.5]) and not s.contains([1.0, 1.0])
    g = vxr.GridSpec.centered(2, 1.5, 1 / 64)
    vs = vxr.rasterize(s, g)
    assert abs(vs.measure() - math.pi) < 0.01
    with pytest.raises(vxr.InputError):
        vxr.Shape.parse('{"op": "ball", "center": [0, 0], "radius": }')


def test_lens_value_on_the_grid():
    d = vxr.disk([0, 0], 1.0, 1.5, 1 / 128)
    exact = vxr.exact_ball_ball_volume(2, 1.0, 0.5, 1.0)
    assert abs(exact - 0.3508) < 1e-4
    assert abs(vxr.vol_invariant_at(d, 0.5, [1.0, 0.0]) - exact) < 0.01 * exact


def test_field_matches_point_values():
    d = vxr.disk([0.1, 0], 0.5, 1.0, 1 / 16)
    f = vxr.vol_invariant_field(d, 0.2)
    g = d.grid
    assert f.shape == tuple(g.extent)
    for i, j in [(0, 0), (10, 14), (16, 16), (31, 5)]:
        x = [g.origin[0] + (i + 0.5) * g.spacing, g.origin[1] + (j + 0.5) * g.spacing]
        assert f[i, j] == vxr.vol_invariant_at(d, 0.2, x)


def test_partition_identity():
    rng = np.random.default_rng(3)
    g = vxr.GridSpec(2, [24, 24], 1 / 16, [0.0, 0.0])
    vs = vxr.VoxelSet(g, rng.random((24, 24)) < 0.4)
    r = 3 / 16
    lhs = vxr.nonlocal_perimeter(vs, r) + vxr.riesz_indicator(vs, r)
    assert lhs == vxr.kernel_count(r, g) * g.spacing**2 * vs.measure()


def test_steiner_and_moving_planes():
    d = vxr.disk([0.3, 0], 1.0, 1.5, 1 / 64)
    st = vxr.steiner_symmetrize(d, 0)
    assert st.count() == d.count()
    assert vxr.steiner_symmetrize(st, 0) == st
    res = vxr.moving_planes(d, 0, "+")
    assert abs(res["T"] - 0.3) <= 1 / 64
    assert res["contact"] in ("away", "away_and_close")
    assert res["sym"].count() + res["nonsym"].count() == d.count()


def test_rigidity():
    d = vxr.disk([0, 0], 1.0, 1.5, 1 / 64)
    fit = vxr.fit_ball(d)
    assert abs(fit["radius"] - 1.0) < 2 / 64
    assert len(vxr.detect_symmetry_planes(d)) == 2
    rep = vxr.rigidity_verdict(d, 0.5, tol_criticality=0.1)
    assert rep["verdict"] == "THEOREM-CONSISTENT"
    g = vxr.GridSpec.centered(2, 1.5, 1 / 64)
    sq = vxr.rasterize(vxr.Shape.box([-1, -1], [1, 1]), g)
    assert vxr.rigidity_verdict(sq, 0.5)["verdict"] == "HYPOTHESIS-NOT-MET"
    with pytest.raises(vxr.PreconditionError):
        vxr.fit_ball(vxr.VoxelSet(g, np.zeros((192, 192), dtype=bool)))


def test_cli_reports_match_schemas(tmp_path):
    shape = tmp_path / "two.json"
    shape.write_text(json.dumps({
        "grid": {"dim": 2, "extent": [176, 80], "spacing": 0.03125, "origin": [-1.25, -1.25]},
        "shape": {"op": "union", "children": [
            {"op": "ball", "center": [0, 0], "radius": 1},
            {"op": "ball", "center": [3, 0], "radius": 1}]},
    }))
    out = tmp_path / "out"
    common = ["--input", str(shape), "--out", str(out)]
    assert vxr.cli(["rasterize", *common]) == 0
    assert vxr.cli(["invariant", *common, "--radius", "0.5"]) == 0
    assert vxr.cli(["analyze", *common, "--radius", "0.5", "--eps", "0.1", "--budget", "2000"]) == 0
    assert vxr.cli(["planes", *common, "--axis", "1"]) == 0
    assert vxr.cli(["decompose", *common, "--radius", "0.5", "--tol-criticality", "0.1", "--budget", "2000"]) == 0
    for name, schema in [("rasterize.json", "rasterize"), ("criticality.json", "criticality"),
                         ("analyze.json", "analyze"), ("planes.json", "planes"), ("decompose.json", "decompose")]:
        validate(json.loads((out / name).read_text()), schema)
    dec = json.loads((out / "decompose.json").read_text())
    assert dec["verdict"] == "THEOREM-CONSISTENT"
    assert dec["decomposition"]["ball_count"] == 2
    ball = vxr.load_grid(str(out / dec["decomposition"]["balls"][0]["mask"]))
    assert ball.count() > 0
    assert vxr.cli(["decompose", "--input", str(tmp_path / "nope.json"), "--radius", "1"]) == 4

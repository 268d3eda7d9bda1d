"""Smoke tests for the python module."""

import sys

import gradua


def test_morphism():
    ok = gradua.check_morphism({"rank": [1, 1]}, {"components": {"y": "y", "z": "z + y^2"}})
    assert ok["pass"] and ok["pointwise_pass"]
    bad = gradua.check_morphism({"rank": [1, 1]}, {"components": {"y": "y", "z": "z + y"}})
    assert not bad["pass"] and not bad["pointwise_pass"]


def test_dualize_and_roundtrip():
    dual = gradua.dualize_space({"rank": [1, 1]}, order=2)
    assert dual["dims_by_weight"][:3] == [1, 1, 2]
    assert dual["k_dual"]["dims"] == [1, 1, 2]
    rt = gradua.roundtrip({"rank": [2, 1]}, order=3)
    assert rt["pass"] and rt["rank"] == [2, 1]


def test_check_free():
    model = gradua.dualize_space({"rank": [1, 1]}, order=2)["k_dual"]
    rep = gradua.check_free(model, order=2)
    assert rep["free"] and rep["rank"] == [1, 1]
    stub = {"kind": "algebra", "order": 2, "dims": [1, 1, 0], "mu": []}
    rep2 = gradua.check_free(stub, order=2)
    assert not rep2["free"]
    assert rep2["witness"] == "y^2"


def test_comultiply():
    terms = gradua.comultiply({"rank": [2]}, "Y[y1,y2]", max_weight=4)
    pairs = {(t["left"], t["right"]): t["coeff"] for t in terms}
    assert pairs[("y1", "y2")] == "1"
    assert pairs[("y2", "y1")] == "1"
    assert len(terms) == 4
    # repeated index: transpose-of-multiplication coefficient is 1
    sq = gradua.comultiply({"rank": [1]}, "Y[y,y]", max_weight=4)
    mid = {(t["left"], t["right"]): t["coeff"] for t in sq}
    assert mid[("y", "y")] == "1"


def test_characterize():
    model = gradua.dualize_space({"rank": [1, 1]}, order=2)["k_dual"]
    data = {
        "kind": "symalg",
        "order": 2,
        "dims": [1, 2],
        "m": [{"i": 1, "j": 1, "tensor": model["mu"][0]["tensor"]}],
    }
    rep = gradua.characterize(data, order=2)
    assert rep["accepted"] and rep["verdicts_agree"]
    stub = {"kind": "symalg", "order": 2, "dims": [1, 0], "m": []}
    rep2 = gradua.characterize(stub, order=2)
    assert not rep2["accepted"] and rep2["verdicts_agree"]
    assert rep2["witness"] == "y^2"


def test_dvb_and_n2():
    dvb = gradua.characterize_dvb({"kind": "dvb", "dims": [1, 1, 2], "map": [["1"], ["0"]]})
    assert dvb["accepted"] and dvb["core_dim"] == 1
    n2 = gradua.check_n2({"kind": "ndeg2", "odd_dim": 2, "even_dim": 1, "m": [["1"]]})
    assert n2["accepted"] and n2["verdicts_agree"]


def test_bundle():
    atlas = {
        "kind": "atlas",
        "charts": [
            {"id": "U", "base": [{"name": "x", "weight": [0]}]},
            {"id": "V", "base": [{"name": "x", "weight": [0]}]},
        ],
        "fiber": [{"name": "y", "weight": [1]}, {"name": "z", "weight": [2]}],
        "transitions": [
            {"from": "V", "to": "U", "components": {"x": "x", "y": "y", "z": "z + x*y^2"}},
            {"from": "U", "to": "V", "components": {"x": "x", "y": "y", "z": "z - x*y^2"}},
        ],
    }
    assert gradua.bundle_check(atlas)["pass"]
    atlas["transitions"][0]["components"]["z"] = "z + x*y^2 + y^2"
    assert not gradua.bundle_check(atlas)["pass"]


def test_helpers():
    assert gradua.poly_product({"rank": [1, 1]}, "y + z", "y") == "y^2 + y*z"
    assert gradua.poly_degree({"rank": [1, 1]}, "y*z") == 3
    assert gradua.poly_degree({"rank": [1, 1]}, "y + z") is None
    assert gradua.component_dimension([2, 1], 2) == 4


def test_selftest_runs():
    results = gradua.selftest(seed=7)
    assert len(results) == 12
    assert all(r["pass"] for r in results)


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())

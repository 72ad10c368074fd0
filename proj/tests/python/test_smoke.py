import math

import pytest

import gifs

GOLDEN = (math.sqrt(5) - 1) / 2


def test_fixed_point_of_affine_map():
    res = gifs.fixed_point(gifs.Map.affine1d(0.5, 1.5), 0.5, tol=1e-10)
    assert abs(res["point"][0] - 3.0) <= 1e-10


def test_fixed_point_with_python_callable():
    f = gifs.Map.custom(lambda x: 1.0 / (x + 1.0), 0.5)
    res = gifs.fixed_point(f, 0.5, tol=1e-12, start=1.0)
    assert abs(res["point"][0] - GOLDEN) <= res["error_bound"] + 1e-15


def test_continued_fractions():
    assert gifs.evaluate_cf([2]) == 0.5
    assert gifs.evaluate_cf_exact([1, 1, 1]) == (2, 3)
    with pytest.raises(gifs.ArgumentError):
        gifs.evaluate_cf([1, 0])


def test_tree_enumeration():
    assert len(gifs.prefixes(gifs.Tree.full([0, 1]), 3)) == 8
    tree = gifs.Tree.sum_bounded("1.5")
    assert gifs.prefixes(tree, 3) == [[1, 1, 1], [1, 1, 2]]
    assert gifs.Tree.sum_bounded("2.5").subtree([2]).children() == [1, 2]
    assert gifs.variability(gifs.Tree.full([0, 1]), 3) == (1, True)
    assert not gifs.one_variable_check(gifs.Tree.sum_bounded("2.5"), 2)
    with pytest.raises(gifs.PrefixError):
        tree.children([2])


def test_projection_presets():
    cantor = gifs.System.preset("cantor")
    assert cantor.certify()["status"] == "certified"
    assert abs(cantor.project([], [0, 1])["point"] - 0.25) <= 1e-9
    cf = gifs.System.preset("contfrac", "2.5")
    p = cf.project([], [1])
    assert abs(p["point"][0] - GOLDEN) <= 1e-9
    assert cf.equivariance_residual([2], [], [1])["residual"] <= 1e-7


def test_render_and_hausdorff():
    cantor = gifs.System.preset("cantor")
    coarse = cantor.render(10)
    fine = cantor.render(14)
    assert len(coarse["points"]) == 1024
    assert gifs.hausdorff_distance(coarse["points"], fine["points"]) <= coarse["error_bound"]
    assert gifs.hausdorff_distance([0.0, 1.0], [0.4]) == pytest.approx(0.6)


def test_divergent_preset_reports_level_one():
    report = gifs.System.preset("1dimex").certify()
    assert report["status"] == "diverged"
    assert report["first_violation"] == 1
    with pytest.raises(gifs.CertificationError):
        gifs.System.preset("1dimex").render(3)


def test_compatible_sequence():
    xs = gifs.System.preset("unboundedex").compatible_sequence(1, 5, 1e-8)
    for x in xs:
        assert abs(x["point"] - (x["index"] + 1)) <= x["error_bound"]


def test_dimension_estimate():
    grid = [(i + 0.5) / 4096 for i in range(4096)]
    assert abs(gifs.box_dimension_estimate(grid)["slope"] - 1.0) <= 0.05
    cloud = gifs.limit_set_alpha("2.5", 1, seeds=[0.0])
    assert cloud["points"] == [1.0, 0.5]


def test_spec_round_trip_and_errors():
    for name in gifs.preset_names():
        text = gifs.parse_spec(gifs.preset(name))
        assert gifs.parse_spec(text) == text
    bad = gifs.preset("cantor").replace('"name": "cantor",', '"name": "cantor", "extra": 1,')
    with pytest.raises(gifs.SpecError, match="/extra"):
        gifs.parse_spec(bad)

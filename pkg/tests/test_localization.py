from fractions import Fraction as F

import pytest

from circleweights.core import WeightSystem
from circleweights.fixtures import FIXTURES, cp, grassmannian, s2xs2, v5, v22
from circleweights.graphs import integral_multigraphs
from circleweights.localization import (
    DegenerateWeights,
    ShapePrecondition,
    abbv_sum,
    c1n_upper_bound,
    chern_battery,
    chi_y_coefficients,
    complete_graph_c1n,
    expected_c1cn1,
    minimal_chern_constants,
    zero_multidegrees,
)

ALL_FIXTURES = [
    cp((2, 1, 0)),
    cp((3, 2, 1, 0)),
    cp((4, 3, 2, 1, 0)),
    grassmannian((2, 1)),
    v5(),
    v22(),
    s2xs2(2, 3),
    s2xs2(3, 4),
    s2xs2(4, 5),
    s2xs2(2, 5),
    s2xs2(3, 5),
]


def test_degree_zero_vanishes():
    for ws in ALL_FIXTURES:
        assert abbv_sum(ws, ()) == 0


def test_all_low_multidegrees_vanish():
    for ws in ALL_FIXTURES:
        for md in zero_multidegrees(ws.n):
            assert abbv_sum(ws, md) == 0, (ws.points, md)


def test_c1cn1_values():
    assert abbv_sum(s2xs2(2, 3), (1, 1)) == 8
    assert abbv_sum(v5(), (1, 2)) == 24
    assert abbv_sum(cp((4, 3, 2, 1, 0)), (1, 3)) == 50
    for ws in ALL_FIXTURES:
        assert abbv_sum(ws, (1, ws.n - 1)) == expected_c1cn1(ws)


def test_cn_counts_fixed_points():
    for ws in ALL_FIXTURES:
        md = (ws.n,)
        assert abbv_sum(ws, md) == ws.num_points


def test_chi_y_palindromic():
    for ws in ALL_FIXTURES:
        coeffs = chi_y_coefficients(ws)
        assert coeffs == tuple(reversed(coeffs))
        assert sum(coeffs) == ws.num_points


def test_chern_battery_fixtures_pass():
    for ws in ALL_FIXTURES:
        report = chern_battery(ws)
        assert report.ok, (ws.points, report)


def test_chern_constants_v5_v22_cp4():
    c = minimal_chern_constants(v5())
    assert c[1] == 2 and c[2] == 20
    assert c[2] / c[1] ** 2 == 5
    c = minimal_chern_constants(v22())
    assert c[1] == 1 and c[2] == 22
    c = minimal_chern_constants(cp((4, 3, 2, 1, 0)))
    assert c[1] == 5


def test_reversed_constants_match():
    for ws in [v5(), v22(), grassmannian((2, 1)), cp((3, 2, 1, 0))]:
        report = chern_battery(ws)
        assert report.chern_constants == report.reversed_constants


def test_perturbed_v5_breaks_identities():
    # flip the sign of the single positive weight 1 at the index-2 point:
    # {-4,-1,1} becomes {-4,-1,-1,...}; realized as the documented {-1,1,3}
    # perturbation at the index-1 point instead
    ws = WeightSystem(3, ((1, 2, 3), (-1, 1, 3), (-4, -1, 1), (-3, -2, -1)))
    val = abbv_sum(ws, ())
    assert val == F(-1, 12)


def test_single_weight_perturbations_of_v5_all_fail():
    base = [list(p) for p in v5().points]
    for i in range(len(base)):
        for k in range(3):
            for delta in (-1, 1):
                pts = [list(p) for p in base]
                pts[i][k] += delta
                if pts[i][k] == 0:
                    continue
                ws = WeightSystem(3, tuple(tuple(p) for p in pts))
                broken = any(abbv_sum(ws, md) != 0 for md in zero_multidegrees(3))
                broken = broken or abbv_sum(ws, (1, 2)) != 24
                broken = broken or abbv_sum(ws, (3,)) != 4
                assert broken, (i, k, delta)


def test_degenerate_weights_guard():
    ws = WeightSystem.__new__(WeightSystem)
    object.__setattr__(ws, "n", 2)
    object.__setattr__(ws, "points", ((0, 1), (-1, 1), (0, -1)))
    with pytest.raises(DegenerateWeights):
        abbv_sum(ws, (1, 1))


def test_complete_graph_c1n():
    ws = cp((2, 1, 0))
    g = integral_multigraphs(ws)[0]
    assert complete_graph_c1n(ws, g) == 9
    ws4 = cp((4, 3, 2, 1, 0))
    g4 = integral_multigraphs(ws4)[0]
    assert complete_graph_c1n(ws4, g4) == 625
    assert complete_graph_c1n(ws4, g4) <= c1n_upper_bound(4)


def test_complete_graph_c1n_needs_full_vertex():
    ws = s2xs2(3, 4)
    g = integral_multigraphs(ws)[0]
    with pytest.raises(ShapePrecondition):
        complete_graph_c1n(ws, g)


def test_fixture_registry():
    assert set(FIXTURES) == {"cp", "grassmannian", "v5", "v22", "s2xs2"}
    assert FIXTURES["v5"]().points == ((1, 2, 3), (-1, 1, 4), (-4, -1, 1), (-3, -2, -1))
    assert FIXTURES["v22"]().points == ((1, 2, 3), (-1, 1, 5), (-5, -1, 1), (-3, -2, -1))
    assert FIXTURES["grassmannian"]((2, 1)).points == (
        (1, 2, 3),
        (-1, 1, 3),
        (-3, -1, 1),
        (-3, -2, -1),
    )
    assert FIXTURES["s2xs2"](2, 3).points == ((2, 3), (-3, 2), (-2, 3), (-3, -2))


def test_ineffective_fixture_parameters_rejected():
    from circleweights.fixtures import IneffectiveParameters

    with pytest.raises(IneffectiveParameters):
        s2xs2(2, 4)

import itertools
from fractions import Fraction as F

import pytest

from circleweights.core import FixedPointProfile, minimal_profile
from circleweights.fixtures import cp, s2xs2, v5
from circleweights.graphs import (
    Multigraph,
    PairingMismatch,
    enumerate_multigraphs,
    enumerate_pairings,
    graph_from_pairing,
    has_congruent_endpoints,
    integral_multigraphs,
    magnitudes_from_weights,
)

S2XS2 = FixedPointProfile(2, (0, 1, 1, 2))


def test_counts_dim4():
    graphs = enumerate_multigraphs(minimal_profile(2), mode="nonneg", dedup="reversal")
    assert len(graphs) == 2
    edge_sets = sorted(g.edges for g in graphs)
    assert ((0, 1), (0, 2), (1, 2)) in edge_sets
    assert ((0, 2), (0, 2), (1, 1)) in edge_sets


def test_counts_dim6():
    raw = enumerate_multigraphs(minimal_profile(3), mode="nonneg", dedup="none")
    dedup = enumerate_multigraphs(minimal_profile(3), mode="nonneg", dedup="reversal")
    assert len(raw) == 9
    assert len(dedup) == 7


def test_counts_dim8():
    graphs = enumerate_multigraphs(minimal_profile(4), mode="nonneg", dedup="reversal")
    assert len(graphs) == 75


def _brute_force_graphs(profile, mode):
    """Independent enumerator: all directed edge multisets with out-degree
    n - lambda_i and in-degree lambda_i, filtered by the index rule."""
    n, lams = profile.n, profile.lambdas
    npts = len(lams)
    slots = []
    for i, lam in enumerate(lams):
        slots.extend([i] * (n - lam))  # out-slots
    found = set()
    targets = list(range(npts))

    def ok(i, j):
        if mode == "nonneg":
            return lams[i] <= lams[j]
        if mode == "positive":
            return lams[i] < lams[j]
        return True

    for choice in itertools.product(targets, repeat=len(slots)):
        edges = tuple(sorted(zip(slots, choice)))
        if edges in found:
            continue
        indeg = [0] * npts
        good = True
        for i, j in edges:
            if not ok(i, j):
                good = False
                break
            indeg[j] += 1
        if good and all(indeg[j] == lams[j] for j in range(npts)):
            found.add(edges)
    return found


@pytest.mark.parametrize("n", [2, 3])
def test_enumeration_matches_brute_force(n):
    prof = minimal_profile(n)
    brute = _brute_force_graphs(prof, "nonneg")
    got = {g.edges for g in enumerate_multigraphs(prof, mode="nonneg", dedup="none")}
    assert got == brute


def test_s2xs2_profile_enumeration_matches_brute_force():
    brute = _brute_force_graphs(S2XS2, "all")
    got = {g.edges for g in enumerate_multigraphs(S2XS2, mode="all", dedup="none")}
    assert got == brute


def test_reversal_involution_and_canonical():
    for g in enumerate_multigraphs(minimal_profile(3), mode="nonneg", dedup="none"):
        assert g.reversed().reversed().edges == g.edges
        assert g.canonical_key() == g.reversed().canonical_key()


def test_components():
    g = Multigraph(2, (0, 1, 1, 2), ((0, 3), (0, 3), (1, 2), (1, 2)))
    comps = g.components()
    assert len(comps) == 2
    k5 = Multigraph(4, (0, 1, 2, 3, 4), tuple((i, j) for i in range(5) for j in range(i + 1, 5)))
    assert len(k5.components()) == 1
    assert k5.cycles() == ()


def test_s2xs2_pairings_and_magnitudes():
    ws = s2xs2(2, 3)
    pairings = enumerate_pairings(ws, mode="all")
    assert len(pairings) == 4
    mags = sorted(tuple(map(str, magnitudes_from_weights(ws, g))) for g in pairings)
    # the four pairings of the S2xS2-type system at (a,b) = (2,3)
    assert ("2", "2", "2", "2") in [tuple(m) for m in mags]
    for g in pairings:
        assert sum(magnitudes_from_weights(ws, g)) == 8


def test_s2xs2_symbolic_magnitudes_f2_shape():
    # pairing sending both P0 weights to P3: m = (2(a+b)/a, 2(a+b)/b, ...)
    a, b = 4, 5
    ws = s2xs2(a, b)
    expected = sorted([F(2 * (a + b), a), F(2 * (a + b), b), F(2 * (a - b), a), F(2 * (b - a), b)])
    all_mags = [sorted(magnitudes_from_weights(ws, g)) for g in enumerate_pairings(ws, mode="all")]
    assert expected in all_mags


def test_cp2_pairing_magnitudes():
    ws = cp((2, 1, 0))
    pairings = enumerate_pairings(ws, mode="all")
    assert len(pairings) == 2  # the duplicate weight 1 can pair two ways
    for g in pairings:
        assert sorted(magnitudes_from_weights(ws, g)) in ([3, 3, 3], [0, 3, 6])


def test_graph_from_pairing_roundtrip():
    ws = v5()
    for g in enumerate_pairings(ws, mode="all"):
        assert g.weight_system() == ws


def test_graph_from_pairing_mismatch():
    ws = cp((2, 1, 0))
    with pytest.raises(PairingMismatch):
        graph_from_pairing(ws, ((0, 1, 1), (0, 2, 1), (1, 2, 2)))


@pytest.mark.parametrize("ab", [(3, 4), (3, 5), (4, 5)])
def test_s2xs2_unique_integral_pairing(ab):
    # coprime a, b >= 3 with neither dividing 2(a+b): only the pairing
    # matching each factor's weights across the diagonal is integral
    a, b = ab
    assert 2 * (a + b) % a != 0 and 2 * (a + b) % b != 0
    survivors = integral_multigraphs(s2xs2(a, b))
    assert len(survivors) == 1
    g = survivors[0]
    assert sorted(magnitudes_from_weights(s2xs2(a, b), g)) == [2, 2, 2, 2]


def test_cp2_integral_pairings_both_survive():
    assert len(integral_multigraphs(cp((2, 1, 0)))) == 2


def test_all_ones_weights_all_pairings_integral():
    from circleweights.core import WeightSystem

    ws = WeightSystem(2, ((1, 1), (-1, 1), (-1, -1)))
    pairings = enumerate_pairings(ws, mode="all")
    assert len(integral_multigraphs(ws)) == len(pairings)


def test_congruent_endpoints_filter():
    ws = s2xs2(3, 4)
    for g in enumerate_pairings(ws, mode="all"):
        mags = magnitudes_from_weights(ws, g)
        if all(m == int(m) for m in mags):
            assert has_congruent_endpoints(ws, g) == (sorted(mags) == [2, 2, 2, 2])

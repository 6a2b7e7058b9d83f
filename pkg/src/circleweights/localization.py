"""Exact localization identities for fixed-point weight data.

For an action with isolated fixed points, every equivariant Chern-monomial
integral reduces to a sum over fixed points of elementary symmetric
polynomials of the weights; monomials of total degree < n must integrate to
zero, degree-n ones give the Chern numbers.  These identities are necessary
conditions on a weight system and are the main engine used to reject
candidates produced by the combinatorial search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .core import WeightSystem
from .graphs import WeightedMultigraph, magnitudes_from_weights


class DegenerateWeights(ValueError):
    """A fixed point carries a zero weight, so localization denominators vanish."""


class ShapePrecondition(ValueError):
    """The multigraph does not have the shape required by the formula."""


def elementary_symmetric(values: Sequence[int], k: int) -> int:
    """sigma_k of a sequence of integers, exactly."""
    coeffs = [1] + [0] * k
    for v in values:
        for i in range(min(k, len(coeffs) - 1), 0, -1):
            coeffs[i] += v * coeffs[i - 1]
    return coeffs[k]


def abbv_sum(ws: WeightSystem, multidegree: Sequence[int]) -> Fraction:
    """The localization sum  sum_i  prod_k sigma_{j_k}(W_i) / sigma_n(W_i)
    for a multidegree (j_1, ..., j_r); the empty multidegree gives
    sum_i 1/sigma_n(W_i)."""
    total = Fraction(0)
    for p in ws.points:
        if any(w == 0 for w in p):
            raise DegenerateWeights("zero weight at a fixed point")
        denom = 1
        for w in p:
            denom *= w
        num = 1
        for j in multidegree:
            num *= elementary_symmetric(p, j)
        total += Fraction(num, denom)
    return total


def zero_multidegrees(n: int) -> List[Tuple[int, ...]]:
    """All multidegrees (j_1 <= ... <= j_r, j_k >= 1) of total degree < n,
    including the empty one."""
    out: List[Tuple[int, ...]] = [()]
    for r in range(1, n):
        for combo in combinations_with_replacement(range(1, n), r):
            if sum(combo) < n:
                out.append(combo)
    return sorted(set(out), key=lambda c: (len(c), c))


def expected_c1cn1(ws_or_profile) -> Fraction:
    """The value of the c_1 c_{n-1} Chern number forced by the index counts:
    sum_p N_p * (6 p (p - 1) + (5 n - 3 n^2) / 2)."""
    profile = ws_or_profile.profile if isinstance(ws_or_profile, WeightSystem) else ws_or_profile
    n = profile.n
    counts = profile.counts
    return sum(
        (Fraction(counts[p]) * (6 * p * (p - 1) + Fraction(5 * n - 3 * n * n, 2))
         for p in range(n + 1)),
        Fraction(0),
    )


def chi_y_coefficients(ws: WeightSystem) -> Tuple[int, ...]:
    """Coefficients (N_0, ..., N_n) of the Hirzebruch chi_y genus
    sum_p N_p (-y)^p."""
    return ws.profile.counts


@dataclass
class ChernReport:
    """Outcome of the full localization battery on one weight system."""

    n: int
    zero_failures: List[Tuple[Tuple[int, ...], Fraction]]
    c_n: Fraction
    c1_cn1: Fraction
    expected_c1_cn1: Fraction
    chi_y: Tuple[int, ...]
    chern_constants: Optional[List[Fraction]] = None      # C_i, minimal case
    reversed_constants: Optional[List[Fraction]] = None   # C'_i, minimal case

    @property
    def ok(self) -> bool:
        if self.zero_failures or self.c1_cn1 != self.expected_c1_cn1:
            return False
        if self.c_n != sum(self.chi_y):
            return False
        if self.chern_constants is not None:
            cs = self.chern_constants
            if any(c.denominator != 1 or c <= 0 for c in cs):
                return False
            if self.reversed_constants != cs:
                return False
        return True


def minimal_chern_constants(ws: WeightSystem) -> List[Fraction]:
    """The constants C_i = prod_{j<i} (s_i - s_j) / Lambda_i^- of a minimal
    weight system (s_i = weight sum, Lambda_i^- = product of the negative
    weights at P_i); C_0 = 1.  For geometric data each C_i is a positive
    integer and C_1 divides n(n+1)^2/2."""
    sums = ws.weight_sums()
    out = [Fraction(1)]
    for i in range(1, ws.num_points):
        num = 1
        for j in range(i):
            num *= sums[i] - sums[j]
        lam_minus = 1
        for w in ws.points[i]:
            if w < 0:
                lam_minus *= w
        out.append(Fraction(num, lam_minus))
    return out


def chern_battery(ws: WeightSystem) -> ChernReport:
    """Run every localization identity available for ``ws`` and report."""
    n = ws.n
    failures = []
    for md in zero_multidegrees(n):
        val = abbv_sum(ws, md)
        if val != 0:
            failures.append((md, val))
    c_n = abbv_sum(ws, (n,))
    c1_cn1 = abbv_sum(ws, (1, n - 1)) if n >= 2 else c_n
    report = ChernReport(
        n=n,
        zero_failures=failures,
        c_n=c_n,
        c1_cn1=c1_cn1,
        expected_c1_cn1=expected_c1cn1(ws),
        chi_y=chi_y_coefficients(ws),
    )
    if ws.profile.is_minimal and list(ws.profile.lambdas) == list(range(n + 1)):
        report.chern_constants = minimal_chern_constants(ws)
        report.reversed_constants = minimal_chern_constants(ws.reversed())
    return report


def complete_graph_c1n(ws: WeightSystem, g: WeightedMultigraph) -> Fraction:
    """c_1^n via edge magnitudes: if some vertex of ``g`` meets n distinct
    non-cycle edges (one to every other vertex), the integral equals the
    product of their magnitudes.  Cross-checked against the localization
    evaluation sum_i s_i^n / sigma_n(W_i)."""
    mags = magnitudes_from_weights(ws, g)
    by_vertex: Dict[int, List[int]] = {}
    for k, (i, j, _) in enumerate(g.wedges):
        if i != j:
            by_vertex.setdefault(i, []).append(k)
            by_vertex.setdefault(j, []).append(k)
    pivot = None
    for v, ks in sorted(by_vertex.items()):
        others = {g.wedges[k][0] if g.wedges[k][1] == v else g.wedges[k][1] for k in ks}
        if len(ks) == ws.n and len(others) == ws.n:
            pivot = v
            break
    if pivot is None:
        raise ShapePrecondition("no vertex meets n distinct non-cycle edges")
    prod = Fraction(1)
    for k in by_vertex[pivot]:
        prod *= mags[k]
    sums = ws.weight_sums()
    direct = Fraction(0)
    for i, p in enumerate(ws.points):
        denom = 1
        for w in p:
            denom *= w
        direct += Fraction(sums[i] ** ws.n, denom)
    if direct != prod:
        raise ShapePrecondition(
            "magnitude product %s disagrees with localization value %s" % (prod, direct)
        )
    return prod


def c1n_upper_bound(n: int) -> Fraction:
    """((n^2 + n + 2) / 2)^n, the bound accompanying complete_graph_c1n."""
    return Fraction(n * n + n + 2, 2) ** n

"""Rigidity constraints from the equivariant index of line bundles.

For a circle action whose fixed-point weight sums satisfy
``s_i = k0 * a_i + d`` with pairwise distinct integers ``a_i`` (the *levels*),
the index of a suitable line bundle power produces, for each fixed point,

    phi_i(t) = prod_{j != i} (1 - t^(a_i - a_j)) / prod_k (1 - t^(w_ik)),

which must be a genuine Laurent polynomial, and a decomposition
phi_i(t) = sum_s r_s(t) t^(s a_i) with universal Laurent polynomials

    r_s(t) = (-1)^s sum_i [ sum_{j_1<...<j_s, j_nu != i}
                  t^(-(a_{j_1}+...+a_{j_s})) ] / prod_k (1 - t^(w_ik)).

These r_s carry strong integrality information: r_0(1) is the Todd genus (1
for our manifolds), the values r_s(1) are symmetric under s -> l0 - s, vanish
for s > l0, and their sum computes the symplectic volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .core import WeightSystem
from .laurent import LaurentPolynomial, NotLaurent, one_minus_t


class ConsistencyFailure(ArithmeticError):
    """The r_s decomposition failed to reproduce the phi_i."""


def as_index(terms: Sequence[Tuple[LaurentPolynomial, Sequence[int]]]) -> LaurentPolynomial:
    """Evaluate  sum_i value_i / prod_k (1 - t^(-w_ik))  exactly.

    Each entry of ``terms`` is (value at the fixed point, weights there).
    The result must lie in Z[t, 1/t] for genuine index data; a nonzero
    remainder raises :class:`NotLaurent`.
    """
    denoms = []
    for _, weights in terms:
        d = LaurentPolynomial.one()
        for w in weights:
            d = d * one_minus_t(-int(w))
        denoms.append(d)
    total_den = LaurentPolynomial.one()
    for d in denoms:
        total_den = total_den * d
    num = LaurentPolynomial.zero()
    for i, (value, _) in enumerate(terms):
        if isinstance(value, int):
            value = LaurentPolynomial.term(value, 0)
        part = value
        for j, d in enumerate(denoms):
            if j != i:
                part = part * d
        num = num + part
    return num.divexact(total_den)


@dataclass(frozen=True)
class LevelData:
    """Arithmetic progression structure of the weight sums: s_i = k0 a_i + d."""

    k0: int
    d: int
    a: Tuple[int, ...]


def derive_levels(ws: WeightSystem, k0: int) -> Optional[LevelData]:
    """Levels for a given k0, or None when the weight sums are not congruent
    mod k0 or the resulting a_i are not pairwise distinct.

    Normalization: d is the common residue of the weight sums in [0, k0).
    """
    if k0 < 1:
        raise ValueError("k0 must be positive")
    sums = ws.weight_sums()
    d = sums[0] % k0
    if any(s % k0 != d for s in sums):
        return None
    a = tuple((s - d) // k0 for s in sums)
    if len(set(a)) != len(a):
        return None
    return LevelData(k0=k0, d=d, a=a)


def available_levels(ws: WeightSystem, k0_max: Optional[int] = None) -> List[LevelData]:
    """All level structures with k0 from the number of fixed points down to 1."""
    if k0_max is None:
        k0_max = ws.num_points
    out = []
    for k0 in range(k0_max, 0, -1):
        lv = derive_levels(ws, k0)
        if lv is not None:
            out.append(lv)
    return out


def phi(ws: WeightSystem, levels: LevelData, i: int) -> LaurentPolynomial:
    """phi_i(t) = prod_{j != i} (1 - t^(a_i - a_j)) / prod_k (1 - t^(w_ik))."""
    num = LaurentPolynomial.one()
    for j in range(ws.num_points):
        if j != i:
            num = num * one_minus_t(levels.a[i] - levels.a[j])
    den = LaurentPolynomial.one()
    for w in ws.points[i]:
        den = den * one_minus_t(int(w))
    return num.divexact(den)


def r_sequence(ws: WeightSystem, levels: LevelData) -> List[LaurentPolynomial]:
    """The Laurent polynomials r_0, ..., r_N (N + 1 = number of fixed points),
    verified against the identity phi_i = sum_s r_s t^(s a_i)."""
    npts = ws.num_points
    a = levels.a
    denoms = []
    for p in ws.points:
        d = LaurentPolynomial.one()
        for w in p:
            d = d * one_minus_t(int(w))
        denoms.append(d)
    total_den = LaurentPolynomial.one()
    for d in denoms:
        total_den = total_den * d
    others = []  # prod of denoms except i
    for i in range(npts):
        part = LaurentPolynomial.one()
        for j in range(npts):
            if j != i:
                part = part * denoms[j]
        others.append(part)
    rs: List[LaurentPolynomial] = []
    for s in range(npts):
        num = LaurentPolynomial.zero()
        for i in range(npts):
            inner = LaurentPolynomial.zero()
            for subset in combinations([j for j in range(npts) if j != i], s):
                inner = inner + LaurentPolynomial.term(1, -sum(a[j] for j in subset))
            num = num + inner * others[i]
        if s % 2:
            num = -num
        rs.append(num.divexact(total_den))
    for i in range(npts):
        recon = LaurentPolynomial.zero()
        for s, r in enumerate(rs):
            recon = recon + r.shift(s * a[i])
        if recon != phi(ws, levels, i):
            raise ConsistencyFailure("r_s decomposition does not reproduce phi_%d" % i)
    return rs


def r_values_at_one(ws: WeightSystem, levels: LevelData) -> List[Fraction]:
    return [r.eval_one() for r in r_sequence(ws, levels)]


def cp_check(ws: WeightSystem, levels: LevelData) -> bool:
    """When k0 = n + 1, the weight multiset at each point must coincide with
    the level differences { a_i - a_j : j != i } for projective-space data."""
    for i in range(ws.num_points):
        diffs = sorted(levels.a[i] - levels.a[j] for j in range(ws.num_points) if j != i)
        if list(ws.points[i]) != diffs:
            return False
    return True


# ---------------------------------------------------------------------------
# Dimension-8 Diophantine consequences (n = 4, five fixed points)
# ---------------------------------------------------------------------------

def todd_quartic(c1: int, l: int, m: Fraction) -> Fraction:
    """l^2 (-C1^4 + 4 C1^2 m + 3 m^2) - 675, which must vanish for genuine
    8-dimensional data with first Chern constant C1 and volume l^2."""
    c1 = Fraction(c1)
    return Fraction(l) ** 2 * (-c1 ** 4 + 4 * c1 ** 2 * m + 3 * m ** 2) - 675


def exp_r_values(c1: int, l: int, m: Fraction) -> List[Fraction]:
    """Closed forms of r_1(1), ..., r_4(1) in dimension 8 as functions of the
    first Chern constant C1, the volume root l and the Chern parameter m."""
    c1f, l2, m = Fraction(c1), Fraction(l) ** 2, Fraction(m)
    return [
        -4 + l2 / 24 * (c1f * m + c1f ** 2 + m + 2 * c1f + 1),
        6 + l2 / 24 * (-3 * c1f * m - c1f ** 2 - m + 6 * c1f + 11),
        -4 + l2 / 24 * (3 * c1f * m - c1f ** 2 - m - 6 * c1f + 11),
        1 + l2 / 24 * (-c1f * m + c1f ** 2 + m - 2 * c1f + 1),
    ]


def _sqrt_fraction(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    from math import isqrt

    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def dim8_solver(c1: int, lmax: int = 100) -> List[Tuple[int, Fraction]]:
    """Rational solutions (l, m) with l in [1, lmax], m > 0, of the quartic
    constraint for the given first Chern constant.

    C1 must divide 50 and lie in [1, 5], so C1 in {1, 2, 5}; C1 = 2 has no
    rational solutions at all.
    """
    if not (1 <= c1 <= 5 and 50 % c1 == 0):
        return []
    if c1 == 2:
        # combined with the vanishing identities the quartic forces
        # m = (97 +- sqrt(97)) / 48, never rational
        return []
    # for c1 = 5 the volume identity pins the symplectic volume to 1, so l = 1
    l_range = [1] if c1 == 5 else range(1, lmax + 1)
    out: List[Tuple[int, Fraction]] = []
    for l in l_range:
        # solve 3 m^2 + 4 C1^2 m - (C1^4 + 675 / l^2) = 0 ... rearranged from
        # the quartic: 3 m^2 + 4 C1^2 m = C1^4 + 675 / l^2
        rhs = Fraction(c1) ** 4 + Fraction(675, l * l)
        disc = Fraction(4 * c1 ** 2) ** 2 + 12 * rhs
        root = _sqrt_fraction(disc)
        if root is None:
            continue
        for sign in (1, -1):
            m = (-Fraction(4 * c1 ** 2) + sign * root) / 6
            if m > 0:
                out.append((l, m))
    return out

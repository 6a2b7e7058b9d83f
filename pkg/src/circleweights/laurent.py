"""Exact Laurent polynomial arithmetic in one variable t.

Coefficients are Fractions; exponents arbitrary (possibly negative) integers.
Division is exact: dividing by a polynomial that does not divide the numerator
in Q[t, 1/t] raises :class:`NotLaurent`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple


class NotLaurent(ArithmeticError):
    """An expression expected to be a Laurent polynomial is not one."""


class LaurentPolynomial:
    """Sparse Laurent polynomial sum c_e t^e with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Fraction] = None):
        self.coeffs: Dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    self.coeffs[int(e)] = c

    @classmethod
    def term(cls, coeff, exp: int = 0) -> "LaurentPolynomial":
        return cls({int(exp): Fraction(coeff)})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls.term(1, 0)

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.term(other, 0)
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other, 0)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other, 0)
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.term(other, 0)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative power")
        out = LaurentPolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, e: int) -> "LaurentPolynomial":
        """Multiply by t^e."""
        return LaurentPolynomial({k + e: c for k, c in self.coeffs.items()})

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def eval_one(self) -> Fraction:
        """Value at t = 1 (sum of coefficients)."""
        return sum(self.coeffs.values(), Fraction(0))

    def divexact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact quotient self / other in Q[t, 1/t]; raises NotLaurent if the
        division leaves a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero()
        # normalize both to ordinary polynomials with nonzero constant term
        num = self.shift(-self.min_exp())
        den = other.shift(-other.min_exp())
        shift_back = self.min_exp() - other.min_exp()
        # long division by descending degree
        rem = dict(num.coeffs)
        quot: Dict[int, Fraction] = {}
        dmax = den.max_exp()
        dlead = den.coeffs[dmax]
        while rem:
            rmax = max(rem)
            if rmax < dmax:
                raise NotLaurent("nonzero remainder in exact division")
            q = rem[rmax] / dlead
            e = rmax - dmax
            quot[e] = q
            for de, dc in den.coeffs.items():
                k = de + e
                v = rem.get(k, Fraction(0)) - q * dc
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return LaurentPolynomial(quot).shift(shift_back)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("%s*t" % c)
            else:
                parts.append("%s*t^%d" % (c, e))
        return " + ".join(parts)


def one_minus_t(exp: int) -> LaurentPolynomial:
    """The factor 1 - t^exp (exp must be nonzero)."""
    if exp == 0:
        raise ValueError("1 - t^0 is identically zero")
    return LaurentPolynomial({0: Fraction(1), exp: Fraction(-1)})

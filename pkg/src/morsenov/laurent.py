"""Exact integer Laurent polynomials in one variable t.

Coefficients are Python ints, exponents may be negative.  Equality "up to
units +-t^k" is decided by :func:`LaurentPoly.normalize`, which shifts the
minimum exponent to 0 and makes the lowest coefficient positive; the zero
polynomial is its own normal form.  Determinants of small matrices over
this ring are computed by fraction-free (Bareiss) elimination, whose
interior divisions are exact in the ring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class InexactDivisionError(ArithmeticError):
    """A division that was promised to be exact left a remainder."""


@dataclass(frozen=True)
class LaurentPoly:
    """Finite-support map exponent -> integer coefficient, stored sorted."""

    terms: tuple[tuple[int, int], ...]  # (exponent, coefficient), coefficient != 0

    @staticmethod
    def from_dict(coeffs: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly(((0, c),) if c else ())

    @staticmethod
    def t_power(e: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly(((e, c),) if c else ())

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no minimum exponent")
        return self.terms[0][0]

    def max_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no maximum exponent")
        return self.terms[-1][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(acc)

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(())
        return LaurentPoly(tuple((e, c * k) for e, k in self.terms))

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by t^d."""
        return LaurentPoly(tuple((e + d, c) for e, c in self.terms))

    def reverse(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.terms)))

    def normalize(self) -> "LaurentPoly":
        """Canonical representative up to units +-t^k."""
        if self.is_zero:
            return self
        shifted = self.shift(-self.min_exp())
        if shifted.terms[0][1] < 0:
            shifted = -shifted
        return shifted

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; raises if the division fails."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        # Clear minimum exponents, then do ordinary polynomial long division.
        num = dict(self.shift(-self.min_exp()).terms)
        den = divisor.shift(-divisor.min_exp())
        dd = den.max_exp()
        dlead = dict(den.terms)[dd]
        quot: dict[int, int] = {}
        while num:
            nd = max(num)
            if nd < dd:
                raise InexactDivisionError("remainder of lower degree left over")
            lead = num[nd]
            if lead % dlead != 0:
                raise InexactDivisionError("leading coefficient not divisible")
            q = lead // dlead
            quot[nd - dd] = q
            for e, c in den.terms:
                k = e + nd - dd
                num[k] = num.get(k, 0) - q * c
                if num[k] == 0:
                    del num[k]
        shift_back = self.min_exp() - divisor.min_exp()
        return LaurentPoly.from_dict(quot).shift(shift_back)

    def __call__(self, x: complex) -> complex:
        return sum(c * x**e for e, c in self.terms)

    def to_text(self) -> str:
        """Render like ``t^-1 - 3 + 2*t^2`` (explicit exponents, ascending)."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e, c in self.terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"t^{e}"
            else:
                body = f"{mag}*t^{e}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> str:
        return json.dumps({"poly": {str(e): c for e, c in self.terms}})

    @staticmethod
    def from_json(text: str) -> "LaurentPoly":
        data = json.loads(text)
        return LaurentPoly.from_dict({int(e): int(c) for e, c in data["poly"].items()})


ZERO = LaurentPoly(())
ONE = LaurentPoly.const(1)
T = LaurentPoly.t_power(1)


def identity_matrix(m: int) -> list[list[LaurentPoly]]:
    return [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]


def matmul(a: list[list[LaurentPoly]], b: list[list[LaurentPoly]]) -> list[list[LaurentPoly]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik.is_zero:
                continue
            for j in range(cols):
                if not b[k][j].is_zero:
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def determinant(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Bareiss fraction-free determinant over the integer Laurent ring."""
    m = len(matrix)
    if m == 0:
        return ONE
    a = [row[:] for row in matrix]
    sign = 1
    prev = ONE
    for p in range(m - 1):
        pivot_row = next((q for q in range(p, m) if not a[q][p].is_zero), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != p:
            a[p], a[pivot_row] = a[pivot_row], a[p]
            sign = -sign
        pivot = a[p][p]
        for i in range(p + 1, m):
            for j in range(p + 1, m):
                a[i][j] = (pivot * a[i][j] - a[i][p] * a[p][j]).divide_exact(prev)
            a[i][p] = ZERO
        prev = pivot
    return a[m - 1][m - 1].scale(sign)

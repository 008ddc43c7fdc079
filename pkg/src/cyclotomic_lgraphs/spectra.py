"""Characteristic polynomials, the exact cyclotomicity decision, Mahler measure.

Everything here except :func:`mahler_measure` is exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .lgraph import LGraph
from .ring import Ring


class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]) -> None:
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def compose_linear(self, scale: int, shift: int) -> "IntPolynomial":
        """Return q(x) = p(scale*x + shift)."""
        out = IntPolynomial([])
        lin = IntPolynomial([shift, scale])
        for c in reversed(self.coeffs):
            out = out * lin + IntPolynomial([c])
        return out

    def divmod_linear(self, r: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by (x - r)."""
        if not self.coeffs:
            return IntPolynomial([]), 0
        q = [0] * (len(self.coeffs) - 1)
        acc = 0
        for i in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * r + self.coeffs[i]
            if i:
                q[i - 1] = acc
        return IntPolynomial(q), acc

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _pair_ops(ring: Ring):
    d = ring.d
    if ring.half_basis:
        q = (d - 1) // 4
        nq = (1 - d) // 4

        def mul(x, y):
            a, b = x
            c, e = y
            be = b * e
            return (a * c + be * q, a * e + b * c + be)

        def div(x, y):
            # exact division x / y inside the ring
            c, e = y
            yc = (c + e, -e)
            nrm = c * c + c * e + e * e * nq
            a, b = mul(x, yc)
            qa, ra = divmod(a, nrm)
            qb, rb = divmod(b, nrm)
            if ra or rb:
                raise ArithmeticError("inexact ring division in Bareiss elimination")
            return (qa, qb)
    else:
        def mul(x, y):
            a, b = x
            c, e = y
            return (a * c + d * b * e, a * e + b * c)

        def div(x, y):
            c, e = y
            nrm = c * c - d * e * e
            a, b = mul(x, (c, -e))
            qa, ra = divmod(a, nrm)
            qb, rb = divmod(b, nrm)
            if ra or rb:
                raise ArithmeticError("inexact ring division in Bareiss elimination")
            return (qa, qb)

    return mul, div


def bareiss_det(rows: list[list[tuple[int, int]]], ring: Ring) -> tuple[int, int]:
    """Fraction-free determinant over the ring; ``rows`` is consumed."""
    mul, div = _pair_ops(ring)
    n = len(rows)
    if n == 0:
        return (1, 0)
    m = rows
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if m[k][k] == (0, 0):
            for r in range(k + 1, n):
                if m[r][k] != (0, 0):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                a1, b1 = mul(rowi[j], pk)
                if aik != (0, 0):
                    a2, b2 = mul(aik, rowk[j])
                    a1 -= a2
                    b1 -= b2
                rowi[j] = div((a1, b1), prev) if prev != (1, 0) else (a1, b1)
        prev = pk
    a, b = m[n - 1][n - 1]
    return (sign * a, sign * b)


def _interpolate_integer_points(values: Sequence[int]) -> IntPolynomial:
    """Polynomial of degree < len(values) through (k, values[k]), k = 0.."""
    n = len(values)
    diffs = list(values)
    newton = []
    for k in range(n):
        newton.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    # p(x) = sum_k newton[k] * C(x, k)
    coeffs = [Fraction(0)] * n
    falling = [Fraction(1)]  # coefficients of x(x-1)...(x-k+1)
    fact = 1
    for k in range(n):
        if k:
            fact *= k
            nxt = [Fraction(0)] * (len(falling) + 1)
            for i, c in enumerate(falling):
                nxt[i + 1] += c
                nxt[i] -= (k - 1) * c
            falling = nxt
        if newton[k]:
            scale = Fraction(newton[k], fact)
            for i, c in enumerate(falling):
                coeffs[i] += scale * c
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial has a non-integral coefficient")
        out.append(c.numerator)
    return IntPolynomial(out)


def char_poly_of_pairs(dense: Sequence[Sequence[tuple[int, int]]], ring: Ring) -> IntPolynomial:
    """det(xI - M) for a Hermitian matrix of coordinate pairs."""
    n = len(dense)
    values = []
    for k in range(n + 1):
        rows = [[(-a, -b) for (a, b) in row] for row in dense]
        for i in range(n):
            a, b = rows[i][i]
            rows[i][i] = (a + k, b)
        a, b = bareiss_det(rows, ring)
        if b != 0:
            raise ArithmeticError("determinant of a Hermitian matrix is not rational")
        values.append(a)
    p = _interpolate_integer_points(values)
    assert p.degree == n and p.leading == 1, "characteristic polynomial must be monic of degree n"
    return p


def char_poly(g: LGraph) -> IntPolynomial:
    cached = g.__dict__.get("_char_poly")
    if cached is None:
        cached = char_poly_of_pairs(g.dense, g.ring)
        g.__dict__["_char_poly"] = cached
    return cached


def _all_roots_nonnegative(p: IntPolynomial) -> bool:
    # valid for real-rooted monic p: roots >= 0 iff coefficients alternate in sign
    n = p.degree
    for i, c in enumerate(p.coeffs):
        k = n - i
        if c != 0 and (c > 0) != (k % 2 == 0):
            return False
    return True


def spectrum_within(p: IntPolynomial, lo: int, hi: int) -> bool:
    """True iff every root of the real-rooted monic ``p`` lies in [lo, hi]."""
    n = p.degree
    above = p.compose_linear(1, lo)  # roots shifted to lambda - lo
    below = p.compose_linear(-1, hi)  # roots hi - lambda, leading sign (-1)^n
    if n % 2:
        below = -below
    return _all_roots_nonnegative(above) and _all_roots_nonnegative(below)


def is_cyclotomic(g: LGraph) -> bool:
    """Exact test that every eigenvalue of the graph's matrix lies in [-2, 2]."""
    return spectrum_within(char_poly(g), -2, 2)


def pm2_multiplicities(p: IntPolynomial) -> tuple[int, int] | None:
    """(a, b) with p = (x-2)^a (x+2)^b, or None."""
    mult = {}
    for r in (2, -2):
        m = 0
        while p.degree > 0:
            q, rem = p.divmod_linear(r)
            if rem:
                break
            p, m = q, m + 1
        mult[r] = m
    if p.coeffs == (1,):
        return mult[2], mult[-2]
    return None


def eigenvalues_all_pm2(g: LGraph) -> bool:
    return pm2_multiplicities(char_poly(g)) is not None


def reciprocal_poly(p: IntPolynomial) -> IntPolynomial:
    """z^n p(z + 1/z) for p of degree n."""
    n = p.degree
    out = [0] * (2 * n + 1)
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        # z^(n-k) (z^2 + 1)^k
        for i in range(k + 1):
            out[n - k + 2 * i] += c * comb(k, i)
    return IntPolynomial(out)


def squarefree_factors(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun decomposition p = c * prod f_i^i with f_i squarefree and coprime."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(p.coeffs)), x, domain="ZZ")
    _, factors = poly.sqf_list()
    return [(IntPolynomial(reversed([int(c) for c in f.all_coeffs()])), m) for f, m in factors]


def mahler_measure(p: IntPolynomial) -> float:
    """Product of max(1, |root|) times |leading coefficient|, in double precision.

    Repeated roots are split off exactly first so that clustered roots of
    high multiplicity do not smear away from the unit circle.
    """
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    measure = float(abs(p.leading))
    for f, mult in squarefree_factors(p):
        if f.degree < 1:
            continue
        roots = np.roots(list(reversed(f.coeffs)))
        m = 1.0
        for r in roots:
            m *= max(1.0, abs(r))
        # leading coefficients are already accounted for in p.leading
        measure *= m**mult
    return measure


def float_eigenvalues(g: LGraph) -> np.ndarray:
    return np.linalg.eigvalsh(g.complex_matrix)

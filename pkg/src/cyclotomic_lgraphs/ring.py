"""Exact arithmetic in the imaginary quadratic rings O_Q(sqrt d), d in {-2,-7,-11,-15}.

Elements are stored as integer pairs (a, b) meaning a + b*w over the integral
basis {1, w}, with w = sqrt(-2) for d = -2 and w = (1 + sqrt d)/2 otherwise.
No rationals ever appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterator

SUPPORTED_D = (-2, -7, -11, -15)


class RingError(ValueError):
    """Unsupported ring or mixed-ring operands."""


@dataclass(frozen=True)
class Ring:
    d: int

    def __post_init__(self) -> None:
        if self.d not in SUPPORTED_D:
            raise RingError(f"unsupported ring d={self.d}; expected one of {SUPPORTED_D}")

    @property
    def half_basis(self) -> bool:
        # d = 1 (mod 4) uses w = (1 + sqrt d)/2
        return self.d % 4 == 1

    @property
    def legend(self) -> str:
        if self.half_basis:
            return f"w=(1+sqrt({self.d}))/2"
        return f"w=sqrt({self.d})"

    # raw pair arithmetic; these are the hot paths used by spectra and grow

    def pmul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        a, b = x
        c, e = y
        if self.half_basis:
            # w^2 = w + (d-1)/4
            q = (self.d - 1) // 4
            return (a * c + b * e * q, a * e + b * c + b * e)
        return (a * c + self.d * b * e, a * e + b * c)

    def pconj(self, x: tuple[int, int]) -> tuple[int, int]:
        a, b = x
        if self.half_basis:
            return (a + b, -b)
        return (a, -b)

    def pnorm(self, x: tuple[int, int]) -> int:
        a, b = x
        if self.half_basis:
            return a * a + a * b + b * b * ((1 - self.d) // 4)
        return a * a - self.d * b * b

    def to_complex(self, x: tuple[int, int]) -> complex:
        a, b = x
        if self.half_basis:
            return complex(a + b / 2, b * math.sqrt(-self.d) / 2)
        return complex(a, b * math.sqrt(-self.d))

    def element(self, a: int, b: int = 0) -> "RingElement":
        return RingElement(self.d, a, b)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self.d, 0, 0)

    @property
    def one(self) -> "RingElement":
        return RingElement(self.d, 1, 0)

    @property
    def omega(self) -> "RingElement":
        """The basis element w."""
        return RingElement(self.d, 0, 1)

    def __repr__(self) -> str:
        return f"Ring({self.d})"


@lru_cache(maxsize=None)
def get_ring(d: int) -> Ring:
    return Ring(d)


@total_ordering
class RingElement:
    """Immutable element a + b*w of a supported ring.

    Ordered lexicographically by (norm, a, b); elements of different rings
    never compare or combine.
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: int, b: int = 0) -> None:
        if d not in SUPPORTED_D:
            raise RingError(f"unsupported ring d={d}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @property
    def ring(self) -> Ring:
        return get_ring(self.d)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def _check(self, other: object) -> "RingElement":
        if isinstance(other, int):
            return RingElement(self.d, other, 0)
        if not isinstance(other, RingElement):
            return NotImplemented  # type: ignore[return-value]
        if other.d != self.d:
            raise RingError(f"mixed-ring operands: d={self.d} and d={other.d}")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> "RingElement":
        return RingElement(self.d, -self.a, -self.b)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return RingElement(self.d, *self.ring.pmul(self.pair, o.pair))

    __rmul__ = __mul__

    def conj(self) -> "RingElement":
        return RingElement(self.d, *self.ring.pconj(self.pair))

    def norm(self) -> int:
        return self.ring.pnorm(self.pair)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.a, self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __lt__(self, other: "RingElement") -> bool:
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self.sort_key() < o.sort_key()

    def __hash__(self) -> int:
        return hash((self.d, self.a, self.b))

    def __complex__(self) -> complex:
        return self.ring.to_complex(self.pair)

    def __repr__(self) -> str:
        return f"RingElement(d={self.d}, a={self.a}, b={self.b})"

    def __str__(self) -> str:
        return render(self.pair)


def render(x: tuple[int, int]) -> str:
    """Render a coordinate pair as compact "a+b*w" text."""
    a, b = x
    if b == 0:
        return str(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{b}*w"
    if a == 0:
        return wpart
    return f"{a}{wpart}" if wpart.startswith("-") else f"{a}+{wpart}"


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def mul(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def neg(x: RingElement) -> RingElement:
    return -x


def conj(x: RingElement) -> RingElement:
    return x.conj()


def norm(x: RingElement) -> int:
    return x.norm()


def _elements_of_norm_at_most(ring: Ring, bound: int) -> Iterator[tuple[int, int]]:
    # For both bases norm >= c*b^2 with c = -d (d=-2) or (-d)/4, so |b| is bounded;
    # |a| is bounded once b is fixed.
    bmax = math.isqrt(4 * bound // (-ring.d)) + 1
    amax = math.isqrt(bound) + bmax + 1
    for b in range(-bmax, bmax + 1):
        for a in range(-amax, amax + 1):
            n = ring.pnorm((a, b))
            if n <= bound:
                yield (a, b)


@dataclass(frozen=True)
class LabelSet:
    ring: Ring
    elements_by_norm: dict[int, tuple[RingElement, ...]]

    def of_norm(self, n: int) -> tuple[RingElement, ...]:
        return self.elements_by_norm.get(n, ())

    def nonzero(self) -> tuple[RingElement, ...]:
        return tuple(x for n in (1, 2, 3, 4) for x in self.elements_by_norm[n])

    def all(self) -> tuple[RingElement, ...]:
        return self.elements_by_norm[0] + self.nonzero()

    def __contains__(self, x: object) -> bool:
        if isinstance(x, RingElement):
            return x.d == self.ring.d and x.norm() <= 4
        return False


@lru_cache(maxsize=None)
def label_set(ring: Ring | int) -> LabelSet:
    """All elements of norm 0..4, each list sorted by the ring element order."""
    if isinstance(ring, int):
        ring = get_ring(ring)
    by_norm: dict[int, list[RingElement]] = {n: [] for n in range(5)}
    for p in _elements_of_norm_at_most(ring, 4):
        by_norm[ring.pnorm(p)].append(RingElement(ring.d, *p))
    return LabelSet(ring, {n: tuple(sorted(v)) for n, v in by_norm.items()})

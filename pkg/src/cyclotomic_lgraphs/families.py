"""Generators for the maximal connected cyclotomic L-graphs and their families.

Vertex numbering follows the printed figures (1-based there, 0-based here).
A label printed on the edge between vertices i < j is the matrix entry M_ij.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .lgraph import FormPattern, LGraph, NEUTRAL
from .ring import Ring, get_ring

Pair = tuple[int, int]


class FamilyError(ValueError):
    pass


def _d(ring: Ring | int) -> int:
    return ring.d if isinstance(ring, Ring) else get_ring(ring).d


def _neg(p: Pair) -> Pair:
    return (-p[0], -p[1])


def _build(d: int, charges: Iterable[int], edges: Iterable[tuple[int, int, object]]) -> LGraph:
    """Graph from 1-based (i, j, M_ij) triples."""
    return LGraph(d, list(charges), [(i - 1, j - 1, lab) for i, j, lab in edges])


def _weight2(d: int) -> Pair:
    if d not in (-2, -7):
        raise FamilyError(f"no weight-2 labels for d={d}")
    return (0, 1)  # sqrt(-2), or (1+sqrt(-7))/2


def _weight3(d: int) -> Pair:
    if d == -2:
        return (1, 1)  # 1+sqrt(-2)
    if d == -11:
        return (0, 1)  # (1+sqrt(-11))/2
    raise FamilyError(f"no weight-3 labels for d={d}")


# which rings carry each sporadic graph
SPORADIC_RINGS: dict[str, tuple[int, ...]] = {
    "S_2": (-2, -7, -11, -15),
    "S_2*": (-7, -15),
    "S_2'": (-2, -11),
    "S_4'": (-2, -11),
    "S_4": (-2, -7),
    "S_4*": (-2,),
    "S_6†": (-7,),
    "S_8*": (-2, -7),
}

_ALIASES = {"S_6dag": "S_6†", "S_6+": "S_6†"}


def sporadic_names(ring: Ring | int) -> list[str]:
    d = _d(ring)
    return [name for name, ds in SPORADIC_RINGS.items() if d in ds]


def sporadic(name: str, ring: Ring | int) -> LGraph:
    d = _d(ring)
    name = _ALIASES.get(name, name)
    if name not in SPORADIC_RINGS:
        raise FamilyError(f"unknown sporadic graph {name!r}")
    if d not in SPORADIC_RINGS[name]:
        raise FamilyError(f"{name} is not defined over d={d}")
    if name == "S_2":
        return _build(d, [0, 0], [(1, 2, 2)])
    if name == "S_2*":
        lab = (1, 1) if d == -7 else (0, 1)  # 3/2+sqrt(-7)/2, 1/2+sqrt(-15)/2
        return _build(d, [0, 0], [(1, 2, lab)])
    if name == "S_2'":
        return _build(d, [1, -1], [(1, 2, _weight3(d))])
    if name == "S_4'":
        a = _weight3(d)
        return _build(d, [0] * 4, [(1, 2, a), (3, 4, _neg(a)), (1, 3, 1), (2, 4, 1)])
    if name == "S_4":
        w = _weight2(d)
        return _build(d, [1, -1, -1, 1], [(1, 2, w), (3, 4, _neg(w)), (1, 3, 1), (2, 4, 1)])
    if name == "S_4*":
        w = _weight2(d)
        return _build(
            d, [0] * 4,
            [(1, 2, w), (3, 4, _neg(w)), (1, 3, 1), (2, 4, 1), (1, 4, 1), (2, 3, -1)],
        )
    if name == "S_6†":
        w = _weight2(d)
        wb = get_ring(d).pconj(w)
        return _build(
            d, [0] * 6,
            [
                (1, 2, 1), (3, 4, 1), (5, 6, 1), (3, 6, 1),
                (2, 5, -1), (1, 4, -1),
                (1, 6, wb), (4, 5, _neg(w)), (2, 3, w),
            ],
        )
    # S_8*
    w = _weight2(d)
    return _build(
        d, [0] * 8,
        [
            (7, 8, -1), (5, 6, -1),
            (4, 8, 1), (3, 7, 1), (1, 5, 1), (2, 6, 1), (3, 4, 1), (1, 2, 1),
            (5, 8, _neg(w)), (6, 7, w), (2, 3, _neg(w)), (1, 4, w),
        ],
    )


def _double_rail(top: list[int], bottom: list[int]) -> list[tuple[int, int, int]]:
    """Rails and crosses of a toral strip: top rail +1, bottom rail -1."""
    edges = []
    m = len(top)
    for i in range(m - 1):
        edges.append((top[i], top[i + 1], 1))
        edges.append((bottom[i], bottom[i + 1], -1))
        edges.append((top[i], bottom[i + 1], 1))
        edges.append((bottom[i], top[i + 1], -1))
    return edges


def t2k4(k: int, ring: Ring | int, primed: bool = False) -> LGraph:
    """The 2k-vertex toral graph T_2k^4, or its primed twin for d = -7."""
    d = _d(ring)
    if k < 2:
        raise FamilyError("T_2k^4 needs k >= 2")
    if primed and d != -7:
        raise FamilyError("the primed family exists only for d=-7")
    w = _weight2(d)
    right = get_ring(d).pconj(w) if primed else w
    L = k - 1
    top = list(range(1, L + 1))
    bottom = list(range(L + 1, 2 * L + 1))
    lcap, rcap = 2 * L + 1, 2 * L + 2
    edges: list = _double_rail(top, bottom)
    edges += [(1, lcap, w), (L + 1, lcap, w), (L, rcap, right), (2 * L, rcap, _neg(right))]
    return _build(d, [0] * (2 * k), edges)


def c2k2plus(k: int, ring: Ring | int) -> LGraph:
    """The (2k+1)-vertex graph C_2k^{2+} with charges on vertices 1 and k+1."""
    d = _d(ring)
    if k < 1:
        raise FamilyError("C_2k^{2+} needs k >= 1")
    if d not in (-2, -7):
        raise FamilyError(f"C_2k^{{2+}} is not defined over d={d}")
    w = _weight2(d)
    top = list(range(1, k + 1))
    bottom = list(range(k + 1, 2 * k + 1))
    cap = 2 * k + 1
    charges = [0] * (2 * k + 1)
    charges[0] = charges[k] = 1
    edges: list = _double_rail(top, bottom)
    edges += [(1, k + 1, 1), (k, cap, w), (2 * k, cap, _neg(w))]
    return _build(d, charges, edges)


def chain(k: int, ring: Ring | int) -> LGraph:
    """Chain of length k: a cylinder of length k+1 with one weight-2 cap.

    Vertices: top a_k..a_0 (1..k+1), bottom b_k..b_0 (k+2..2k+2), cap 2k+3.
    """
    d = _d(ring)
    if k < 1:
        raise FamilyError("chains have length k >= 1")
    w = _weight2(d)
    m = k + 1
    top = list(range(1, m + 1))
    bottom = list(range(m + 1, 2 * m + 1))
    cap = 2 * m + 1
    edges: list = _double_rail(top, bottom)
    edges += [(m, cap, w), (2 * m, cap, _neg(w))]
    return _build(d, [0] * (2 * m + 1), edges)


def cylinder(m: int) -> FormPattern:
    """Form of a cylinder of length m: an uncharged double rail of weight-1 edges."""
    if m < 1:
        raise FamilyError("cylinders have length m >= 1")
    edges = {}
    for i in range(m - 1):
        for a, b in ((i, i + 1), (m + i, m + i + 1), (i, m + i + 1), (m + i, i + 1)):
            edges[(a, b)] = 1
    return FormPattern.build(2 * m, [NEUTRAL] * (2 * m), edges, name=f"cylinder({m})")


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    d: int
    graph: LGraph
    k: int | None = None
    expected: dict = field(default_factory=lambda: {"cyclotomic": True, "maximal": True, "all_pm2": True})

    @property
    def label(self) -> str:
        if self.k is None:
            return self.name
        return self.name.replace("2k", str(2 * self.k))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "label": self.label,
            "k": self.k,
            "expected": dict(self.expected),
            "graph": self.graph.to_dict(),
        }


def catalogue(ring: Ring | int, kmax: int = 8) -> list[CatalogueEntry]:
    """Every sporadic graph valid for the ring plus family members with k <= kmax."""
    d = _d(ring)
    out = [CatalogueEntry(name, d, sporadic(name, d)) for name in sporadic_names(d)]
    if d in (-2, -7):
        for k in range(2, kmax + 1):
            out.append(CatalogueEntry("T_2k^4", d, t2k4(k, d), k))
        if d == -7:
            for k in range(2, kmax + 1):
                out.append(CatalogueEntry("T_2k^4'", d, t2k4(k, d, primed=True), k))
        for k in range(1, kmax + 1):
            out.append(CatalogueEntry("C_2k^2+", d, c2k2plus(k, d), k))
    return out


def catalogue_json(ring: Ring | int, kmax: int = 8) -> str:
    d = _d(ring)
    return json.dumps({"d": d, "kmax": kmax, "entries": [e.to_dict() for e in catalogue(d, kmax)]}, indent=1)


def entry_filename(entry: CatalogueEntry) -> str:
    safe = entry.label.replace("*", "star").replace("'", "prime").replace("†", "dag").replace("+", "plus")
    safe = safe.replace("^", "").replace("-", "m")
    return f"d{-entry.d}_{safe}"

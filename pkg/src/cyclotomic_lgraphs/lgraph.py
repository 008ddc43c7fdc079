"""Charged L-graphs: Hermitian L-matrices with charges on the diagonal.

Vertex identity is positional. Edge labels are kept as coordinate pairs
internally; ``label(i, j)`` returns the matrix entry M_ij as a RingElement,
so ``label(j, i)`` is the conjugate of ``label(i, j)``.
"""

from __future__ import annotations

import json
from functools import cached_property
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .ring import Ring, RingElement, get_ring, render

Pair = tuple[int, int]


class LGraphError(ValueError):
    pass


def _as_pair(d: int, x) -> Pair:
    if isinstance(x, RingElement):
        if x.d != d:
            raise LGraphError(f"label from ring d={x.d} used in graph over d={d}")
        return x.pair
    if isinstance(x, int):
        return (x, 0)
    a, b = x
    return (int(a), int(b))


class LGraph:
    """Immutable charged L-graph over one of the supported rings."""

    __slots__ = ("d", "n", "charges", "_edges", "__dict__")

    def __init__(self, d: int, charges: Sequence[int], edges: Mapping | Iterable = ()) -> None:
        ring = get_ring(d)
        charges = tuple(int(c) for c in charges)
        n = len(charges)
        if n < 1:
            raise LGraphError("an L-graph needs at least one vertex")
        for c in charges:
            if c not in (-1, 0, 1):
                raise LGraphError(f"charge {c} outside {{-1, 0, 1}}")
        if isinstance(edges, Mapping):
            items = edges.items()
        else:
            items = (((i, j), lab) for i, j, lab in edges)
        store: dict[Pair, Pair] = {}
        for (i, j), lab in items:
            i, j = int(i), int(j)
            p = _as_pair(d, lab)
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise LGraphError(f"bad edge ({i}, {j}) for n={n}")
            if i > j:
                i, j, p = j, i, ring.pconj(p)
            if p == (0, 0):
                continue
            nm = ring.pnorm(p)
            if nm > 4:
                raise LGraphError(f"label {render(p)} has norm {nm} > 4")
            if (i, j) in store:
                raise LGraphError(f"duplicate edge ({i}, {j})")
            store[(i, j)] = p
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "_edges", dict(sorted(store.items())))

    @classmethod
    def _trusted(cls, d: int, charges: tuple[int, ...], edges: dict[Pair, Pair]) -> "LGraph":
        # no validation: callers guarantee i<j keys, nonzero norm<=4 labels
        g = object.__new__(cls)
        object.__setattr__(g, "d", d)
        object.__setattr__(g, "n", len(charges))
        object.__setattr__(g, "charges", charges)
        object.__setattr__(g, "_edges", edges)
        return g

    def __setattr__(self, name, value):
        if name in ("d", "n", "charges", "_edges"):
            raise AttributeError("LGraph is immutable")
        object.__setattr__(self, name, value)

    @property
    def ring(self) -> Ring:
        return get_ring(self.d)

    @property
    def edge_pairs(self) -> dict[Pair, Pair]:
        """Upper-triangular edges as coordinate pairs (read-only view by convention)."""
        return self._edges

    @property
    def edges(self) -> dict[tuple[int, int], RingElement]:
        return {k: RingElement(self.d, *v) for k, v in self._edges.items()}

    def entry(self, i: int, j: int) -> Pair:
        """Matrix entry M_ij as a pair; zero off the edge set."""
        if i == j:
            return (self.charges[i], 0)
        if i < j:
            return self._edges.get((i, j), (0, 0))
        p = self._edges.get((j, i))
        return (0, 0) if p is None else self.ring.pconj(p)

    def label(self, i: int, j: int) -> RingElement:
        return RingElement(self.d, *self.entry(i, j))

    @cached_property
    def dense(self) -> tuple[tuple[Pair, ...], ...]:
        return tuple(tuple(self.entry(i, j) for j in range(self.n)) for i in range(self.n))

    def matrix(self) -> list[list[RingElement]]:
        return [[RingElement(self.d, *p) for p in row] for row in self.dense]

    @cached_property
    def complex_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=complex)
        to_c = self.ring.to_complex
        for i, c in enumerate(self.charges):
            m[i, i] = c
        for (i, j), p in self._edges.items():
            z = to_c(p)
            m[i, j] = z
            m[j, i] = z.conjugate()
        return m

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self._edges:
            nb[i].append(j)
            nb[j].append(i)
        return tuple(tuple(sorted(x)) for x in nb)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edge_weight(self, i: int, j: int) -> int:
        return self.ring.pnorm(self.entry(i, j)) if i != j else 0

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [1 if c else 0 for c in self.charges]
        pnorm = self.ring.pnorm
        for (i, j), p in self._edges.items():
            w = pnorm(p)
            deg[i] += w
            deg[j] += w
        return tuple(deg)

    def weighted_degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.degrees[v]

    @cached_property
    def _components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self._components) == 1

    def component_vertices(self) -> tuple[tuple[int, ...], ...]:
        return self._components

    def components(self) -> list["LGraph"]:
        return [self.induced(c) for c in self._components]

    def induced(self, vertices: Sequence[int]) -> "LGraph":
        """Induced subgraph; vertex k of the result is ``vertices[k]``."""
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise LGraphError("repeated vertex in induced subgraph")
        charges = tuple(self.charges[v] for v in vertices)
        edges = {}
        for a in range(len(vertices)):
            for b in range(a + 1, len(vertices)):
                p = self.entry(vertices[a], vertices[b])
                if p != (0, 0):
                    edges[(a, b)] = p
        return LGraph._trusted(self.d, charges, edges)

    def delete_vertex(self, v: int) -> "LGraph":
        if self.n == 1:
            raise LGraphError("cannot delete the only vertex")
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.induced([u for u in range(self.n) if u != v])

    def add_vertex(self, charge: int, column: Sequence) -> "LGraph":
        """Append a vertex; ``column[i]`` is the entry M_{i,new}."""
        if len(column) != self.n:
            raise LGraphError("column length must equal n")
        edges = dict(self._edges)
        for i, x in enumerate(column):
            p = _as_pair(self.d, x)
            if p != (0, 0):
                edges[(i, self.n)] = p
        return LGraph(self.d, self.charges + (charge,), edges)

    def __reduce__(self):
        return (LGraph._trusted, (self.d, self.charges, dict(self._edges)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LGraph):
            return NotImplemented
        return self.d == other.d and self.charges == other.charges and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.d, self.charges, tuple(self._edges.items())))

    def __repr__(self) -> str:
        es = ", ".join(f"({i},{j}):{render(p)}" for (i, j), p in self._edges.items())
        return f"LGraph(d={self.d}, charges={list(self.charges)}, edges={{{es}}})"

    # serialization

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "charges": list(self.charges),
            "edges": [[i, j, [a, b]] for (i, j), (a, b) in self._edges.items()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: Mapping) -> "LGraph":
        try:
            d = int(data["d"])
            charges = data["charges"]
            n = int(data.get("n", len(charges)))
            edges = {}
            for i, j, lab in data.get("edges", []):
                if not i < j:
                    raise LGraphError(f"edge [{i}, {j}] must have i < j")
                edges[(int(i), int(j))] = (int(lab[0]), int(lab[1]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, LGraphError):
                raise
            raise LGraphError(f"malformed L-graph JSON: {exc}") from exc
        if n != len(charges):
            raise LGraphError(f"n={n} but {len(charges)} charges given")
        return cls(d, charges, edges)

    @classmethod
    def from_json(cls, text: str) -> "LGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        """Graphviz rendering using the usual drawing key.

        Edge style encodes weight (1 solid, 2 double, 3 triple, 4 bold dashed);
        negative rational labels are dotted; charges appear as +, - or a dot.
        """
        safe = "".join(ch if ch.isalnum() else "_" for ch in name) or "G"
        lines = [f"graph {safe} {{", f'  label="{name}  ({self.ring.legend})";', "  node [shape=circle];"]
        for v, c in enumerate(self.charges):
            mark = {1: "+", -1: "-", 0: "●"}[c]
            style = "filled" if c == 0 else "solid"
            lines.append(f'  v{v} [label="{mark}", xlabel="{v + 1}", style={style}];')
        for (i, j), p in self._edges.items():
            w = self.ring.pnorm(p)
            attrs = []
            if w == 1:
                attrs.append("style=dotted" if p[0] < 0 else "style=solid")
            elif w == 2:
                attrs.append('color="black:invis:black"')
            elif w == 3:
                attrs.append('color="black:invis:black:invis:black"')
            else:
                attrs.append("style=\"bold,dashed\"")
            if w > 1 or p[1] != 0:
                attrs.append(f'label="{render(p)}"')
            lines.append(f"  v{i} -- v{j} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def weighted_degree(g: LGraph, v: int) -> int:
    return g.weighted_degree(v)


def is_connected(g: LGraph) -> bool:
    return g.is_connected()


def components(g: LGraph) -> list[LGraph]:
    return g.components()


def delete_vertex(g: LGraph, v: int) -> LGraph:
    return g.delete_vertex(v)


def disjoint_union(*graphs: LGraph) -> LGraph:
    if not graphs:
        raise LGraphError("need at least one graph")
    d = graphs[0].d
    charges: list[int] = []
    edges: dict[Pair, Pair] = {}
    for g in graphs:
        if g.d != d:
            raise LGraphError("disjoint union of graphs over different rings")
        off = len(charges)
        charges.extend(g.charges)
        for (i, j), p in g.edge_pairs.items():
            edges[(i + off, j + off)] = p
    return LGraph._trusted(d, tuple(charges), edges)


def single_vertex(d: int, charge: int = 0) -> LGraph:
    return LGraph(d, [charge])


# forms

NEUTRAL = frozenset({0})
CHARGED = frozenset({-1, 1})
ANY_CHARGE = frozenset({-1, 0, 1})
ABSENT = frozenset({0})
UNSPECIFIED = frozenset({0, 1, 2, 3, 4})


def weight(*ks: int) -> frozenset[int]:
    """Edge pattern admitting exactly the given weights (0 meaning absent)."""
    for k in ks:
        if k not in (0, 1, 2, 3, 4):
            raise LGraphError(f"edge weight {k} outside 0..4")
    return frozenset(ks)


def specific(c: int) -> frozenset[int]:
    if c not in (-1, 0, 1):
        raise LGraphError(f"charge {c} outside {{-1, 0, 1}}")
    return frozenset({c})


@dataclass(frozen=True)
class FormPattern:
    """A graph known only up to edge weights and charge classes.

    ``charges[v]`` is the set of admissible charges at v and ``edges[(i, j)]``
    the set of admissible weights on the pair (0 meaning absent). Pairs not
    listed are absent.
    """

    n: int
    charges: tuple[frozenset[int], ...]
    edges: Mapping[tuple[int, int], frozenset[int]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.charges) != self.n:
            raise LGraphError("one charge pattern per vertex required")
        norm = {}
        for (i, j), ws in self.edges.items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise LGraphError(f"bad pattern pair ({i}, {j})")
            key = (min(i, j), max(i, j))
            if key in norm:
                raise LGraphError(f"duplicate pattern pair {key}")
            ws = frozenset(ws)
            if not ws or not ws <= UNSPECIFIED:
                raise LGraphError(f"bad weight set {sorted(ws)} on {key}")
            norm[key] = ws
        for c in self.charges:
            if not c or not c <= ANY_CHARGE:
                raise LGraphError("bad charge pattern")
        object.__setattr__(self, "edges", norm)

    @classmethod
    def build(cls, n: int, charges=None, edges: Mapping | None = None, name: str = "") -> "FormPattern":
        """Convenience constructor; charges default to neutral, ints become sets."""
        cs = []
        for c in charges if charges is not None else [NEUTRAL] * n:
            cs.append(frozenset({c}) if isinstance(c, int) else frozenset(c))
        es = {}
        for k, w in (edges or {}).items():
            es[k] = frozenset({w}) if isinstance(w, int) else frozenset(w)
        return cls(n, tuple(cs), es, name)

    def allowed_weights(self, i: int, j: int) -> frozenset[int]:
        return self.edges.get((min(i, j), max(i, j)), ABSENT)


def matches_form(g: LGraph, p: FormPattern, embedding: Sequence[int]) -> bool:
    """True iff the vertices ``embedding[0..p.n-1]`` of g induce the form p."""
    if len(embedding) != p.n or len(set(embedding)) != p.n:
        return False
    for a, v in enumerate(embedding):
        if g.charges[v] not in p.charges[a]:
            return False
    for a in range(p.n):
        for b in range(a + 1, p.n):
            if g.edge_weight(embedding[a], embedding[b]) not in p.allowed_weights(a, b):
                return False
    return True


def iter_induced_forms(g: LGraph, p: FormPattern) -> Iterator[tuple[int, ...]]:
    if p.n > g.n:
        return
    emb: list[int] = []
    used = [False] * g.n

    def rec(a: int):
        if a == p.n:
            yield tuple(emb)
            return
        for v in range(g.n):
            if used[v] or g.charges[v] not in p.charges[a]:
                continue
            if any(g.edge_weight(emb[b], v) not in p.allowed_weights(b, a) for b in range(a)):
                continue
            used[v] = True
            emb.append(v)
            yield from rec(a + 1)
            emb.pop()
            used[v] = False

    yield from rec(0)


def find_induced_form(g: LGraph, p: FormPattern) -> list[tuple[int, ...]]:
    """All embeddings of p as an induced subgraph of g (backtracking)."""
    return list(iter_induced_forms(g, p))

"""Equivalence of L-graphs: switching, permutation, negation, conjugation.

The canonical form of a connected graph is the lexicographically least
column-by-column serialization over all connected vertex orderings, all
switchings and the four global variants A, -A, conj(A), -conj(A). Column k
holds a vertex invariant, the charge, and the labels joining the k-th vertex
to the earlier ones. Because every column after the first contains a nonzero
label, the switching sign of each newly placed vertex is forced by making its
first nonzero label minimal, so only orderings are searched. The search keeps,
level by level, exactly the partial orderings whose prefix is minimal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .lgraph import LGraph
from .ring import get_ring, label_set

Pair = tuple[int, int]

DEFAULT_MAX_N = 14


class CanonicalSizeError(ValueError):
    """Graph component too large for canonicalization."""


def switch(g: LGraph, v: int) -> LGraph:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    edges = {}
    for (i, j), (a, b) in g.edge_pairs.items():
        edges[(i, j)] = (-a, -b) if v in (i, j) else (a, b)
    return LGraph._trusted(g.d, g.charges, edges)


def switch_many(g: LGraph, signs: Sequence[int]) -> LGraph:
    edges = {}
    for (i, j), (a, b) in g.edge_pairs.items():
        s = signs[i] * signs[j]
        edges[(i, j)] = (a * s, b * s)
    return LGraph._trusted(g.d, g.charges, edges)


def negate(g: LGraph) -> LGraph:
    return LGraph._trusted(
        g.d,
        tuple(-c for c in g.charges),
        {k: (-a, -b) for k, (a, b) in g.edge_pairs.items()},
    )


def conjugate(g: LGraph) -> LGraph:
    pconj = g.ring.pconj
    return LGraph._trusted(g.d, g.charges, {k: pconj(p) for k, p in g.edge_pairs.items()})


def permute(g: LGraph, sigma: Sequence[int]) -> LGraph:
    """Relabel so that old vertex v becomes new vertex ``sigma[v]``."""
    if sorted(sigma) != list(range(g.n)):
        raise ValueError("sigma must be a permutation of range(n)")
    inv = [0] * g.n
    for v, t in enumerate(sigma):
        inv[t] = v
    return g.induced(inv)


@lru_cache(maxsize=None)
def _rank_table(d: int) -> dict[Pair, int]:
    ls = label_set(d)
    return {x.pair: r for r, x in enumerate(ls.all())}


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    graph: LGraph

    @property
    def hex(self) -> str:
        return self.key.hex()


def _vertex_invariants(g: LGraph) -> list[tuple[int, ...]]:
    pnorm = g.ring.pnorm
    counts = [[0, 0, 0, 0] for _ in range(g.n)]
    for (i, j), p in g.edge_pairs.items():
        w = pnorm(p)
        counts[i][w - 1] += 1
        counts[j][w - 1] += 1
    return [(g.degrees[v], *counts[v]) for v in range(g.n)]


def _canonical_connected(g: LGraph, weights_only: bool = False) -> tuple[tuple[int, ...], LGraph]:
    """Canonical serialization and representative of a connected graph.

    With ``weights_only`` labels are replaced by their weights and charges by
    their absolute values, which canonicalizes the form of g.
    """
    n = g.n
    ring = g.ring
    ranks = _rank_table(g.d)
    invs = _vertex_invariants(g)
    adj = g.adjacency
    dense = g.dense

    # per variant: charge list, and rank tables for +x and -x at every ordered pair
    variants = []
    if weights_only:
        wt = [[ring.pnorm(dense[u][v]) if v in adj[u] else 0 for v in range(n)] for u in range(n)]
        variants.append(([abs(c) for c in g.charges], wt, wt, [list(r) for r in dense]))
    for neg in (False, True) if not weights_only else ():
        for cj in (False, True):
            charges = [(-c if neg else c) for c in g.charges]
            rpos = [[0] * n for _ in range(n)]
            rneg = [[0] * n for _ in range(n)]
            ent = [[(0, 0)] * n for _ in range(n)]
            for u in range(n):
                for v in adj[u]:
                    p = dense[u][v]
                    if cj:
                        p = ring.pconj(p)
                    if neg:
                        p = (-p[0], -p[1])
                    ent[u][v] = p
                    rpos[u][v] = ranks[p]
                    rneg[u][v] = ranks[(-p[0], -p[1])]
            variants.append((charges, rpos, rneg, ent))

    # level 0
    best_col = None
    states = []
    for vi, (charges, _, _, _) in enumerate(variants):
        for v in range(n):
            col = (*invs[v], charges[v] + 1)
            if best_col is None or col < best_col:
                best_col = col
                states = [(vi, (v,), (1,))]
            elif col == best_col:
                states.append((vi, (v,), (1,)))
    serial = list(best_col)

    for k in range(1, n):
        best_col = None
        nxt = []
        for vi, order, signs in states:
            charges, rpos, rneg, _ = variants[vi]
            placed = set(order)
            cands = set()
            for u in order:
                for w in adj[u]:
                    if w not in placed:
                        cands.add(w)
            for v in cands:
                # first nonzero label fixes the switching sign of v
                sv = 1
                for j, u in enumerate(order):
                    if rpos[u][v]:
                        a = rpos[u][v] if signs[j] == 1 else rneg[u][v]
                        b = rneg[u][v] if signs[j] == 1 else rpos[u][v]
                        sv = 1 if a <= b else -1
                        break
                col = [*invs[v], charges[v] + 1]
                for j, u in enumerate(order):
                    col.append(rpos[u][v] if signs[j] * sv == 1 else rneg[u][v])
                col = tuple(col)
                if best_col is None or col < best_col:
                    best_col = col
                    nxt = [(vi, order + (v,), signs + (sv,))]
                elif col == best_col:
                    nxt.append((vi, order + (v,), signs + (sv,)))
        serial.extend(best_col)
        states = nxt

    vi, order, signs = states[0]
    charges, _, _, ent = variants[vi]
    edges = {}
    for a in range(n):
        for b in range(a + 1, n):
            p = ent[order[a]][order[b]]
            if p != (0, 0):
                s = signs[a] * signs[b]
                edges[(a, b)] = (s * p[0], s * p[1])
    rep = LGraph._trusted(g.d, tuple(charges[v] for v in order), edges)
    return tuple(serial), rep


def form_serial(g: LGraph, max_n: int = DEFAULT_MAX_N) -> bytes:
    """Key shared exactly by graphs with the same weights and charge pattern up to permutation."""
    parts = []
    for comp in g.component_vertices():
        if len(comp) > max_n:
            raise CanonicalSizeError(f"component of {len(comp)} vertices exceeds canonicalization bound {max_n}")
        sub = g if len(comp) == g.n else g.induced(comp)
        serial, _ = _canonical_connected(sub, weights_only=True)
        parts.append(bytes([len(comp)]) + bytes(serial))
    return bytes([-g.d, g.n]) + b"\xff".join(sorted(parts))


def canonical_form(g: LGraph, max_n: int = DEFAULT_MAX_N) -> CanonicalForm:
    """Minimal representative of the equivalence class together with its key."""
    cached = g.__dict__.get("_canonical")
    if cached is not None:
        return cached
    parts = []
    for comp in g.component_vertices():
        if len(comp) > max_n:
            raise CanonicalSizeError(f"component of {len(comp)} vertices exceeds canonicalization bound {max_n}")
        sub = g if len(comp) == g.n else g.induced(comp)
        serial, rep = _canonical_connected(sub)
        body = bytes([len(comp)]) + bytes(serial)
        parts.append((body, rep))
    parts.sort(key=lambda t: t[0])
    key = bytes([-g.d, g.n]) + b"\xff".join(b for b, _ in parts)
    if len(parts) == 1:
        rep = parts[0][1]
    else:
        from .lgraph import disjoint_union

        rep = disjoint_union(*(r for _, r in parts))
    cf = CanonicalForm(key, rep)
    g.__dict__["_canonical"] = cf
    rep.__dict__.setdefault("_canonical", cf)
    return cf


def canonical_key(g: LGraph, max_n: int = DEFAULT_MAX_N) -> bytes:
    return canonical_form(g, max_n).key


def are_equivalent(g1: LGraph, g2: LGraph, max_n: int = DEFAULT_MAX_N) -> bool:
    if g1.d != g2.d or g1.n != g2.n:
        return False
    if sorted(g1.degrees) != sorted(g2.degrees):
        return False
    return canonical_key(g1, max_n) == canonical_key(g2, max_n)


def random_equivalent(g: LGraph, rng: random.Random) -> LGraph:
    """Apply a random element of the equivalence group."""
    h = permute(g, rng.sample(range(g.n), g.n))
    h = switch_many(h, [rng.choice((1, -1)) for _ in range(g.n)])
    if rng.random() < 0.5:
        h = negate(h)
    if rng.random() < 0.5:
        h = conjugate(h)
    return h


def key_hex(key: bytes) -> str:
    return key.hex()


__all__ = [
    "switch",
    "switch_many",
    "negate",
    "conjugate",
    "permute",
    "canonical_form",
    "canonical_key",
    "are_equivalent",
    "random_equivalent",
    "CanonicalForm",
    "CanonicalSizeError",
    "get_ring",
]

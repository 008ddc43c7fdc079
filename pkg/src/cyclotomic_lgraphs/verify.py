"""Desk-scale check of the classification theorems.

Every connected cyclotomic graph with an edge of weight at least 2 and at
most ``max_n`` vertices is enumerated by growing from the 2-vertex seeds with
such an edge. Maximal ones must be equivalent to a catalogue entry; the rest
must extend, one vertex at a time, to a catalogue entry.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .equiv import canonical_form
from .families import catalogue
from .grow import GrowConfig, extensions, grow_closure, heavy_seeds
from .lgraph import LGraph

MAX_EXTENSION_VERTICES = 17


class VerifyBudgetError(RuntimeError):
    pass


@dataclass
class TheoremReport:
    d: int
    max_n: int
    class_count: int = 0
    counts_by_n: dict[int, int] = field(default_factory=dict)
    maximal_found: list[str] = field(default_factory=list)
    unknown_maximal: list[LGraph] = field(default_factory=list)
    unreachable: list[LGraph] = field(default_factory=list)
    incomplete: bool = False
    digest: str = ""

    @property
    def passed(self) -> bool:
        return not self.incomplete and not self.unknown_maximal and not self.unreachable

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "max_n": self.max_n,
            "status": "incomplete" if self.incomplete else ("pass" if self.passed else "fail"),
            "class_count": self.class_count,
            "counts_by_n": {str(k): v for k, v in sorted(self.counts_by_n.items())},
            "maximal_found": list(self.maximal_found),
            "unknown_maximal": [g.to_dict() for g in self.unknown_maximal],
            "unreachable": [g.to_dict() for g in self.unreachable],
            "digest": self.digest,
        }


def _catalogue_keys(d: int, n_limit: int) -> dict[bytes, str]:
    kmax = max(2, n_limit // 2 + 1)
    out = {}
    for e in catalogue(d, kmax):
        if e.graph.n <= n_limit:
            out[canonical_form(e.graph, n_limit).key] = e.label
    return out


class _Reacher:
    """Decides whether a graph extends to a catalogue entry.

    Greedy first (take the extension with the largest total weighted degree),
    then a bounded breadth-first search. Results are memoized by class.
    """

    def __init__(self, d: int, cat: dict[bytes, str], node_budget: int) -> None:
        self.d = d
        self.cat = cat
        self.cfg = GrowConfig.full(d, max_vertices=MAX_EXTENSION_VERTICES)
        self.memo: dict[bytes, bool] = {}
        self.node_budget = node_budget
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise VerifyBudgetError(f"extension search exceeded {self.node_budget} nodes")

    def _kids(self, g: LGraph) -> list[LGraph]:
        self._tick()
        if g.n >= MAX_EXTENSION_VERTICES:
            return []
        return extensions(g, self.cfg)

    def reaches(self, g: LGraph) -> bool:
        key = canonical_form(g, MAX_EXTENSION_VERTICES).key
        if key in self.memo:
            return self.memo[key]
        ok = self._greedy(g) or self._bfs(g)
        self.memo[key] = ok
        return ok

    def _greedy(self, g: LGraph) -> bool:
        path = []
        while True:
            key = canonical_form(g, MAX_EXTENSION_VERTICES).key
            if self.memo.get(key):
                break
            path.append(key)
            kids = self._kids(g)
            if not kids:
                if key not in self.cat:
                    return False
                break
            g = max(kids, key=lambda h: (sum(h.degrees), canonical_form(h, MAX_EXTENSION_VERTICES).key))
        for k in path:
            self.memo[k] = True
        return True

    def _bfs(self, g: LGraph) -> bool:
        level = {canonical_form(g, MAX_EXTENSION_VERTICES).key: g}
        seen = set(level)
        while level:
            nxt = {}
            for key, h in sorted(level.items()):
                if self.memo.get(key):
                    return True
                kids = self._kids(h)
                if not kids and key in self.cat:
                    return True
                for c in kids:
                    ck = canonical_form(c, MAX_EXTENSION_VERTICES).key
                    if ck not in seen:
                        seen.add(ck)
                        nxt[ck] = c
            level = nxt
        return False


def verify_theorem(d: int, max_n: int, jobs: int = 1, node_budget: int = 200_000, progress=None) -> TheoremReport:
    if not 2 <= max_n <= 16:
        raise ValueError("max_n must lie in 2..16")
    rep = TheoremReport(d, max_n)
    cfg = GrowConfig.full(d, max_vertices=max_n, max_rounds=max_n, jobs=jobs)
    closure = grow_closure(heavy_seeds(d), cfg, progress=progress)
    cat = _catalogue_keys(d, MAX_EXTENSION_VERTICES)
    rep.class_count = len(closure.classes)
    for g in closure.classes.values():
        rep.counts_by_n[g.n] = rep.counts_by_n.get(g.n, 0) + 1
    if closure.rounds_executed >= cfg.max_rounds and not closure.terminated and not closure.truncated_at_vertices:
        rep.incomplete = True
    maximal = set(closure.maximal_keys)
    for k in closure.maximal_keys:
        g = closure.classes[k]
        if k in cat:
            rep.maximal_found.append(cat[k])
        else:
            rep.unknown_maximal.append(g)
    rep.maximal_found.sort()

    # graphs below the size cap reach a catalogue entry through some child in the pool
    ok: dict[bytes, bool] = {k: (k in cat) for k in maximal}
    reacher = _Reacher(d, cat, node_budget)
    try:
        for k in sorted(closure.classes, key=lambda k: -closure.classes[k].n):
            if k in ok:
                continue
            g = closure.classes[k]
            kids = closure.children.get(k, ())
            if g.n < max_n and any(ok.get(c, False) for c in kids):
                ok[k] = True
            else:
                ok[k] = reacher.reaches(g)
            if not ok[k]:
                rep.unreachable.append(g)
    except VerifyBudgetError:
        rep.incomplete = True
    h = hashlib.sha256()
    for k in sorted(closure.classes):
        h.update(k + (b"M" if k in maximal else b"-"))
    rep.digest = h.hexdigest()
    return rep

"""Seed-and-grow enumeration of cyclotomic L-graphs.

A connected cyclotomic graph can be rebuilt from any connected induced
subgraph by putting back one vertex at a time, and by interlacing every
intermediate graph is cyclotomic. Growing therefore only ever needs the
one-vertex step implemented by :func:`extensions`.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .equiv import canonical_form, canonical_key, form_serial
from .lgraph import LGraph, FormPattern
from .ring import get_ring, label_set
from .spectra import is_cyclotomic

Pair = tuple[int, int]

# float screen tolerance; only used to reject
_SCREEN_TOL = 1e-6


class GrowBudgetError(RuntimeError):
    """A combinatorial search exceeded its configured budget."""


@dataclass(frozen=True)
class GrowConfig:
    d: int
    allowed_edge_norms: frozenset[int] = frozenset({1, 2, 3, 4})
    allowed_charges: frozenset[int] = frozenset({-1, 0, 1})
    max_rounds: int = 16
    max_vertices: int = 16
    reduce_mod_equivalence: bool = True
    jobs: int = 1

    def __post_init__(self) -> None:
        get_ring(self.d)
        norms = frozenset(self.allowed_edge_norms)
        charges = frozenset(self.allowed_charges)
        if not norms or not norms <= {1, 2, 3, 4}:
            raise ValueError(f"allowed edge norms must be a nonempty subset of 1..4, got {sorted(norms)}")
        if not charges or not charges <= {-1, 0, 1}:
            raise ValueError(f"allowed charges must be a nonempty subset of {{-1,0,1}}, got {sorted(charges)}")
        if self.max_rounds < 0 or self.max_vertices < 1 or self.jobs < 1:
            raise ValueError("max_rounds >= 0, max_vertices >= 1 and jobs >= 1 required")
        object.__setattr__(self, "allowed_edge_norms", norms)
        object.__setattr__(self, "allowed_charges", charges)

    @classmethod
    def full(cls, d: int, **kw) -> "GrowConfig":
        """The whole alphabet: every nonzero label and every charge."""
        return cls(d, **kw)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "allowed_edge_norms": sorted(self.allowed_edge_norms),
            "allowed_charges": sorted(self.allowed_charges),
            "max_rounds": self.max_rounds,
            "max_vertices": self.max_vertices,
            "reduce_mod_equivalence": self.reduce_mod_equivalence,
        }


def _labels(cfg: GrowConfig) -> list[tuple[Pair, int]]:
    ls = label_set(cfg.d)
    return [(x.pair, k) for k in sorted(cfg.allowed_edge_norms) for x in ls.of_norm(k)]


def _candidate_columns(g: LGraph, cfg: GrowConfig, charge: int) -> Iterator[tuple[Pair, ...]]:
    """Columns M_{i,new} within the weighted-degree budgets.

    The first nonzero entry is restricted to one label of each pair {x, -x}:
    switching the new vertex exchanges the two.
    """
    labels = _labels(cfg)
    gauge = [(p, k) for p, k in labels if p > (-p[0], -p[1])]
    n = g.n
    room = [4 - dg for dg in g.degrees]
    col: list[Pair] = [(0, 0)] * n
    zero = (0, 0)

    def rec(i: int, budget: int, started: bool):
        if i == n:
            if started:
                yield tuple(col)
            return
        col[i] = zero
        yield from rec(i + 1, budget, started)
        cap = min(budget, room[i])
        for p, k in gauge if not started else labels:
            if k > cap:
                continue
            col[i] = p
            yield from rec(i + 1, budget - k, True)
        col[i] = zero

    yield from rec(0, 4 - (1 if charge else 0), False)


def _screen(g: LGraph, charge: int, cols: list[tuple[Pair, ...]]) -> list[bool]:
    """Float screen: False means certainly not cyclotomic."""
    if not cols:
        return []
    n = g.n
    to_c = g.ring.to_complex
    base = np.zeros((n + 1, n + 1), dtype=complex)
    base[:n, :n] = g.complex_matrix
    base[n, n] = charge
    stack = np.repeat(base[None, :, :], len(cols), axis=0)
    cache: dict[Pair, complex] = {}
    for t, col in enumerate(cols):
        for i, p in enumerate(col):
            if p != (0, 0):
                z = cache.get(p)
                if z is None:
                    z = cache[p] = to_c(p)
                stack[t, i, n] = z
                stack[t, n, i] = z.conjugate()
    ev = np.linalg.eigvalsh(stack)
    worst = np.max(np.abs(ev), axis=1)
    return list(worst <= 2 + _SCREEN_TOL)


def iter_extensions(g: LGraph, cfg: GrowConfig) -> Iterator[LGraph]:
    """Every connected cyclotomic one-vertex extension (no deduplication)."""
    if g.d != cfg.d:
        raise ValueError(f"graph over d={g.d} but config for d={cfg.d}")
    n = g.n
    for charge in sorted(cfg.allowed_charges):
        cols = list(_candidate_columns(g, cfg, charge))
        for start in range(0, len(cols), 4096):
            chunk = cols[start:start + 4096]
            for col, ok in zip(chunk, _screen(g, charge, chunk)):
                if not ok:
                    continue
                edges = dict(g.edge_pairs)
                for i, p in enumerate(col):
                    if p != (0, 0):
                        edges[(i, n)] = p
                h = LGraph._trusted(g.d, g.charges + (charge,), edges)
                if is_cyclotomic(h):
                    yield h


def extensions(g: LGraph, cfg: GrowConfig) -> list[LGraph]:
    """Connected cyclotomic one-vertex extensions of g.

    Each result has g as its induced subgraph on the first n vertices. With
    ``reduce_mod_equivalence`` one extension per equivalence class is kept.
    """
    out = list(iter_extensions(g, cfg))
    if not cfg.reduce_mod_equivalence:
        return out
    seen: dict[bytes, LGraph] = {}
    for h in out:
        seen.setdefault(canonical_key(h, max(cfg.max_vertices, h.n)), h)
    return [seen[k] for k in sorted(seen)]


def is_maximal(g: LGraph) -> bool:
    """True iff no connected cyclotomic graph strictly contains g."""
    cfg = GrowConfig.full(g.d)
    return next(iter_extensions(g, cfg), None) is None


@dataclass
class GrowReport:
    config: GrowConfig
    rounds_executed: int = 0
    new_per_round: list[int] = field(default_factory=list)
    terminated: bool = False
    truncated_at_vertices: bool = False
    classes: dict[bytes, LGraph] = field(default_factory=dict)
    children: dict[bytes, tuple[bytes, ...]] = field(default_factory=dict)
    maximal_keys: list[bytes] = field(default_factory=list)

    @property
    def maximal_representatives(self) -> list[LGraph]:
        return [self.classes[k] for k in self.maximal_keys]

    def digest(self) -> str:
        h = hashlib.sha256()
        for k in sorted(self.classes):
            h.update(k)
            h.update(b"|")
        h.update(b"#")
        for k in self.maximal_keys:
            h.update(k)
            h.update(b"|")
        return h.hexdigest()

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "rounds_executed": self.rounds_executed,
            "new_per_round": list(self.new_per_round),
            "terminated": self.terminated,
            "truncated_at_vertices": self.truncated_at_vertices,
            "class_count": len(self.classes),
            "class_keys": [k.hex() for k in sorted(self.classes)],
            "maximal": [{"key": k.hex(), "graph": self.classes[k].to_dict()} for k in self.maximal_keys],
            "digest": self.digest(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _child_forms(args: tuple[LGraph, GrowConfig]) -> list[tuple[bytes, LGraph]]:
    g, cfg = args
    out: dict[bytes, LGraph] = {}
    bound = max(cfg.max_vertices + 1, g.n + 1)
    for h in iter_extensions(g, cfg):
        cf = canonical_form(h, bound)
        out.setdefault(cf.key, cf.graph)
    return sorted(out.items())


def grow_closure(seeds: Iterable[LGraph], cfg: GrowConfig, progress=None) -> GrowReport:
    """Breadth-first closure of the seeds under one-vertex extension.

    Graphs with ``max_vertices`` vertices are tested for extensions (so their
    maximality is known) but their extensions are not kept.
    """
    report = GrowReport(cfg)
    bound = max(cfg.max_vertices + 1, 2)
    frontier: dict[bytes, LGraph] = {}
    for s in seeds:
        if s.d != cfg.d:
            raise ValueError("seed over a different ring")
        if not s.is_connected():
            raise ValueError("seeds must be connected")
        if not is_cyclotomic(s):
            raise ValueError(f"seed is not cyclotomic: {s!r}")
        cf = canonical_form(s, bound)
        frontier.setdefault(cf.key, cf.graph)
    report.classes.update(frontier)
    pool = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 else None
    try:
        while frontier:
            if report.rounds_executed >= cfg.max_rounds:
                break
            report.rounds_executed += 1
            keys = sorted(frontier)
            work = [(frontier[k], cfg) for k in keys]
            if pool is not None:
                results = list(pool.map(_child_forms, work, chunksize=max(1, len(work) // (4 * cfg.jobs))))
            else:
                results = [_child_forms(w) for w in work]
            nxt: dict[bytes, LGraph] = {}
            for k, kids in zip(keys, results):
                report.children[k] = tuple(ck for ck, _ in kids)
                if not kids:
                    report.maximal_keys.append(k)
                    continue
                if frontier[k].n >= cfg.max_vertices:
                    report.truncated_at_vertices = True
                    continue
                for ck, h in kids:
                    if ck not in report.classes:
                        nxt.setdefault(ck, h)
            report.classes.update(nxt)
            report.new_per_round.append(len(nxt))
            if progress is not None:
                progress(report.rounds_executed, len(nxt), len(report.classes))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    report.terminated = not frontier and not report.truncated_at_vertices
    report.maximal_keys.sort()
    return report


# exhaustive instantiation of forms


def iter_form_instances(p: FormPattern, d: int) -> Iterator[LGraph]:
    """All L-graphs over d realizing the form, up to switching.

    Edges that are certainly present and lie on a spanning forest have their
    sign fixed, since switching preserves everything of interest here.
    """
    ls = label_set(d)
    pairs = sorted((i, j) for i in range(p.n) for j in range(i + 1, p.n) if p.allowed_weights(i, j) != {0})
    parent = list(range(p.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fixed = set()
    for i, j in pairs:
        if 0 not in p.allowed_weights(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                fixed.add((i, j))
    choices = []
    for i, j in pairs:
        opts = []
        for w in sorted(p.allowed_weights(i, j)):
            if w == 0:
                opts.append((0, 0))
                continue
            for x in ls.of_norm(w):
                q = x.pair
                if (i, j) in fixed and q < (-q[0], -q[1]):
                    continue
                opts.append(q)
        if not opts:
            return
        choices.append(opts)
    charge_opts = [sorted(c) for c in p.charges]
    for labs in product(*choices):
        edges = {pr: q for pr, q in zip(pairs, labs) if q != (0, 0)}
        for cs in product(*charge_opts):
            yield LGraph._trusted(d, tuple(cs), dict(edges))


def cyclotomic_instances_of_form(p: FormPattern, d: int, limit: int | None = None) -> list[LGraph]:
    out = []
    for g in iter_form_instances(p, d):
        if is_cyclotomic(g):
            out.append(g)
            if limit is not None and len(out) >= limit:
                break
    return out


def verify_no_cyclotomic_of_form(p: FormPattern, d: int) -> bool:
    """True iff no labelling consistent with the form is cyclotomic."""
    return not cyclotomic_instances_of_form(p, d, limit=1)


# saturating extensions


def _state_key(h: LGraph, n0: int) -> tuple:
    # added vertices sorted by (charge, entries to originals); ties keep both orders
    added = sorted(range(n0, h.n), key=lambda v: (h.charges[v], tuple(h.entry(u, v) for u in range(n0))))
    order = list(range(n0)) + added
    return h.induced(order).dense


def saturating_extensions(g: LGraph, cfg: GrowConfig | None = None, max_states: int = 200_000) -> list[LGraph]:
    """Minimal saturating extensions of g, one per equivalence class.

    Vertices are added one at a time, each joined to some unsaturated original
    vertex, until every original vertex has weighted degree 4. Each added
    vertex then contributes to some original's degree, which is exactly the
    minimality condition.
    """
    cfg = cfg or GrowConfig.full(g.d)
    n0 = g.n
    if all(x == 4 for x in g.degrees):
        return [g]
    deficit = sum(4 - x for x in g.degrees)
    found: dict[bytes, LGraph] = {}
    level = {_state_key(g, n0): g}
    states = 0
    for _ in range(deficit):
        nxt = {}
        for h in level.values():
            for e in iter_extensions(h, cfg):
                if not any(e.entry(u, h.n) != (0, 0) for u in range(n0) if h.degrees[u] < 4):
                    continue
                states += 1
                if states > max_states:
                    raise GrowBudgetError(f"saturating search exceeded {max_states} states")
                if all(e.degrees[u] == 4 for u in range(n0)):
                    cf = canonical_form(e, max(cfg.max_vertices, e.n))
                    found.setdefault(cf.key, cf.graph)
                else:
                    nxt.setdefault(_state_key(e, n0), e)
        level = nxt
        if not level:
            break
    return [found[k] for k in sorted(found)]


# form recognition


def form_key(g: LGraph) -> bytes:
    """Key shared exactly by graphs of the same form.

    Two graphs have the same form iff they agree up to permutation once labels
    are replaced by their weights and charges by their absolute values.
    """
    return form_serial(g, max(g.n, 14))


def same_form(g: LGraph, template: LGraph) -> bool:
    return g.d == template.d and g.n == template.n and form_key(g) == form_key(template)


def is_t2k4_form(g: LGraph) -> bool:
    from .families import t2k4

    return g.n >= 4 and g.n % 2 == 0 and g.d in (-2, -7) and same_form(g, t2k4(g.n // 2, g.d))


def is_c2k_form(g: LGraph) -> bool:
    """Form of C_2k^{2+} or C_2k^{2-}."""
    from .families import c2k2plus

    return g.n >= 3 and g.n % 2 == 1 and g.d in (-2, -7) and same_form(g, c2k2plus((g.n - 1) // 2, g.d))


def is_chain_form(g: LGraph) -> bool:
    from .families import chain

    return g.n >= 5 and g.n % 2 == 1 and g.d in (-2, -7) and same_form(g, chain((g.n - 3) // 2, g.d))


def heavy_seeds(d: int) -> list[LGraph]:
    """All cyclotomic 2-vertex graphs whose edge has weight at least 2."""
    ls = label_set(d)
    out = {}
    for k in (2, 3, 4):
        for x in ls.of_norm(k):
            for c1, c2 in product((-1, 0, 1), repeat=2):
                g = LGraph(d, [c1, c2], {(0, 1): x})
                if is_cyclotomic(g):
                    cf = canonical_form(g)
                    out.setdefault(cf.key, cf.graph)
    return [out[k] for k in sorted(out)]


def seed_pairs(d: int, norms: Sequence[int], charges: Sequence[int] = (-1, 0, 1)) -> list[LGraph]:
    """Cyclotomic 2-vertex seeds with an edge of one of the given weights."""
    ls = label_set(d)
    out = {}
    for k in norms:
        for x in ls.of_norm(k):
            for c1, c2 in product(charges, repeat=2):
                g = LGraph(d, [c1, c2], {(0, 1): x})
                if is_cyclotomic(g):
                    cf = canonical_form(g)
                    out.setdefault(cf.key, cf.graph)
    return [out[k] for k in sorted(out)]

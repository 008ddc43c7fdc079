"""Gram-vector extensions without vectors.

For a cyclotomic M both A = M + 2I and B = -M + 2I are positive semidefinite,
so they are Gram matrices of vector sets W and W'. A new vector
x = sum_j c_j w_j has <x, w_i> = sum_j c_j A_ji and <x, x> = c^H A c, and the
same holds on the primed side with B. Every condition for adding x as a new
vertex is therefore a linear or quadratic form in A and B, evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .lgraph import ANY_CHARGE, CHARGED, NEUTRAL, FormPattern, LGraph, iter_induced_forms
from .ring import RingElement
from .spectra import is_cyclotomic

Pair = tuple[int, int]


@dataclass(frozen=True)
class CombinationSpec:
    """Coefficients of x = sum c_i w_i, and optionally of x' = sum c'_i w'_i."""

    coefficients: Mapping[int, Pair]
    primed: Mapping[int, Pair] | None = None

    def __post_init__(self) -> None:
        norm = {int(v): _pair(c) for v, c in self.coefficients.items()}
        norm = {v: c for v, c in norm.items() if c != (0, 0)}
        if not norm:
            raise ValueError("a combination needs at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", norm)
        if self.primed is not None:
            object.__setattr__(self, "primed", {int(v): _pair(c) for v, c in self.primed.items()})


def _pair(x) -> Pair:
    if isinstance(x, RingElement):
        return x.pair
    if isinstance(x, int):
        return (x, 0)
    return (int(x[0]), int(x[1]))


def _forms(g: LGraph, c: Mapping[int, Pair], sign: int) -> tuple[list[Pair], int]:
    """Row <x, w_i> and <x, x> for the Gram matrix 2I + sign*M."""
    ring = g.ring
    mul, conj = ring.pmul, ring.pconj
    n = g.n

    def entry(j: int, i: int) -> Pair:
        if i == j:
            return (2 + sign * g.charges[i], 0)
        a, b = g.entry(j, i)
        return (sign * a, sign * b)

    row = []
    for i in range(n):
        sa = sb = 0
        for j, cj in c.items():
            e = entry(j, i)
            if e != (0, 0):
                a, b = mul(cj, e)
                sa += a
                sb += b
        row.append((sa, sb))
    # <x, x> = sum_i <x, w_i> conj(c_i)
    ta = tb = 0
    for i, ci in c.items():
        a, b = mul(row[i], conj(ci))
        ta += a
        tb += b
    if tb != 0:
        raise ArithmeticError("<x, x> is not rational; the matrix is not Hermitian")
    return row, ta


def combination_inner_products(g: LGraph, c: CombinationSpec) -> tuple[dict[int, RingElement], int]:
    """(<x, w_i> for every vertex i, <x, x>) with A = M + 2I."""
    row, self_norm = _forms(g, c.coefficients, 1)
    return {i: RingElement(g.d, *p) for i, p in enumerate(row)}, self_norm


@dataclass(frozen=True)
class GramRejection:
    reason: str

    def __bool__(self) -> bool:
        return False


def _primed_ok(g: LGraph, row: list[Pair], self_norm: int, cp: Mapping[int, Pair]) -> str | None:
    prow, pnorm = _forms(g, cp, -1)
    if pnorm != 4 - self_norm:
        return f"<x', x'> = {pnorm}, expected {4 - self_norm}"
    for i, (p, q) in enumerate(zip(prow, row)):
        if p != (-q[0], -q[1]):
            return f"<x', w'_{i}> != -<x, w_{i}>"
    return None


def _sign_patterns(c: Mapping[int, Pair]):
    keys = sorted(c)
    for signs in product((1, -1), repeat=len(keys)):
        yield {v: (s * c[v][0], s * c[v][1]) for v, s in zip(keys, signs)}


def try_gram_extension(g: LGraph, c: CombinationSpec) -> LGraph | GramRejection:
    """The one-vertex extension defined by x, or the first failed condition.

    Without explicit primed coefficients every sign pattern of c on its
    support is tried for x'.
    """
    ring = g.ring
    row, self_norm = _forms(g, c.coefficients, 1)
    if self_norm not in (1, 2, 3):
        return GramRejection(f"<x, x> = {self_norm} is not in {{1, 2, 3}}")
    for i, p in enumerate(row):
        if ring.pnorm(p) > 4:
            return GramRejection(f"<x, w_{i}> has norm {ring.pnorm(p)} > 4")
    if all(p == (0, 0) for p in row):
        return GramRejection("<x, w_i> = 0 for every i")
    if c.primed is not None:
        why = _primed_ok(g, row, self_norm, c.primed)
        if why is not None:
            return GramRejection(why)
    elif all(_primed_ok(g, row, self_norm, cp) is not None for cp in _sign_patterns(c.coefficients)):
        return GramRejection("no sign pattern of the coefficients satisfies the primed conditions")
    n = g.n
    edges = dict(g.edge_pairs)
    for i, p in enumerate(row):
        if p != (0, 0):
            edges[(i, n)] = ring.pconj(p)  # M*_{i,new} = <w_i, x>
    out = LGraph._trusted(g.d, g.charges + (self_norm - 2,), edges)
    # the construction guarantees this; keep the guarantee checked
    if not is_cyclotomic(out):
        raise AssertionError("Gram extension produced a non-cyclotomic graph")
    return out


# lemma templates: pattern, centre index, degree requirements, coefficient rule


@dataclass(frozen=True)
class GramTemplate:
    name: str
    pattern: FormPattern
    centre: int
    degrees: Mapping[int, int] = field(default_factory=dict)
    closed: tuple[int, ...] = ()  # vertices whose whole neighbourhood lies in the pattern
    coefficient_centre: int = 2
    leaf_weight: int | None = None  # only neighbours joined by this weight, if set

    def leaves(self, emb: tuple[int, ...]) -> set[int]:
        out = set()
        for a, v in enumerate(emb):
            if a == self.centre:
                continue
            ws = self.pattern.allowed_weights(self.centre, a)
            if 0 in ws:
                continue
            if self.leaf_weight is None or ws == {self.leaf_weight}:
                out.add(v)
        return out


def _templates() -> list[GramTemplate]:
    build = FormPattern.build
    return [
        GramTemplate(
            "gram1",
            build(3, [NEUTRAL, NEUTRAL, NEUTRAL], {(0, 1): 2, (0, 2): 1}),
            centre=0, degrees={0: 3}, closed=(0,),
        ),
        GramTemplate(
            "gram2",
            build(4, [NEUTRAL, CHARGED, NEUTRAL, NEUTRAL], {(0, 1): 1, (0, 2): 1, (0, 3): 1}),
            centre=0, degrees={0: 3}, closed=(0,),
        ),
        GramTemplate(
            "gram3",
            build(4, [NEUTRAL] * 4, {(0, 1): 1, (0, 2): 1, (0, 3): 1}),
            centre=0, degrees={0: 3}, closed=(0,),
        ),
        GramTemplate(
            "gram4",
            build(4, [ANY_CHARGE, NEUTRAL, NEUTRAL, NEUTRAL], {(0, 1): 2, (1, 2): 1, (1, 3): 1}),
            centre=1, degrees={0: 2, 1: 4}, closed=(1,), coefficient_centre=1, leaf_weight=1,
        ),
    ]


TEMPLATES = _templates()


def template_combinations(g: LGraph, template: GramTemplate):
    """(embedding, CombinationSpec) for each match of the template in g."""
    p = template.pattern
    for emb in iter_induced_forms(g, p):
        if any(g.degrees[emb[a]] != k for a, k in template.degrees.items()):
            continue
        image = set(emb)
        if any(not set(g.adjacency[emb[a]]) <= image for a in template.closed):
            continue
        v = emb[template.centre]
        # c_v as printed, c_u = -M_vu on the neighbours the lemma combines
        coeffs = {v: (template.coefficient_centre, 0)}
        for u in g.adjacency[v]:
            if u in template.leaves(emb):
                a, b = g.entry(v, u)
                coeffs[u] = (-a, -b)
        yield emb, CombinationSpec(coeffs)


def gram_supergraph(g: LGraph) -> tuple[str, LGraph] | None:
    for t in TEMPLATES:
        for _, spec in template_combinations(g, t):
            out = try_gram_extension(g, spec)
            if isinstance(out, LGraph):
                return t.name, out
    return None


def prove_nonmaximal_by_gram(g: LGraph, fallback: bool = True) -> bool:
    """True iff a strictly larger connected cyclotomic graph containing g is found.

    The lemma templates are tried first; with ``fallback`` a plain one-vertex
    extension search follows.
    """
    if gram_supergraph(g) is not None:
        return True
    if fallback:
        from .grow import is_maximal

        return not is_maximal(g)
    return False

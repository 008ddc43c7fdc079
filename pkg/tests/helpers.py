"""Random graph generators shared by the test modules."""

from __future__ import annotations

import random

import numpy as np

from cyclotomic_lgraphs.lgraph import LGraph
from cyclotomic_lgraphs.ring import label_set
from cyclotomic_lgraphs.spectra import is_cyclotomic

RINGS = (-2, -7, -11, -15)


def random_graph(rng: random.Random, d: int, n: int, density: float = 0.4) -> LGraph:
    """Arbitrary L-graph: random charges, labels drawn uniformly from L."""
    labels = [x.pair for x in label_set(d).nonzero()]
    charges = [rng.choice((-1, 0, 0, 1)) for _ in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                edges[(i, j)] = rng.choice(labels)
    return LGraph(d, charges, edges)


def random_cyclotomic(rng: random.Random, d: int, n_max: int = 6, tries: int = 40) -> LGraph:
    """Connected cyclotomic graph grown one random vertex at a time."""
    ls = label_set(d)
    g = LGraph(d, [rng.choice((-1, 0, 1))])
    target = rng.randint(1, n_max)
    while g.n < target:
        for _ in range(tries):
            charge = rng.choice((-1, 0, 0, 1))
            budget = 4 - abs(charge)
            col = [(0, 0)] * g.n
            order = list(range(g.n))
            rng.shuffle(order)
            for i in order[: rng.randint(1, g.n)]:
                room = min(budget, 4 - g.degrees[i])
                opts = [x.pair for k in range(1, room + 1) for x in ls.of_norm(k)]
                if opts:
                    p = rng.choice(opts)
                    col[i] = p
                    budget -= g.ring.pnorm(p)
            if all(p == (0, 0) for p in col):
                continue
            h = g.add_vertex(charge, col)
            if is_cyclotomic(h):
                g = h
                break
        else:
            break
    return g


def float_spectral_radius(g: LGraph) -> float:
    return float(np.max(np.abs(np.linalg.eigvalsh(g.complex_matrix))))


def gram_configs(d: int) -> dict:
    """The four lemma configurations with their printed coefficients.

    Vertex orders: gram1 (v, a, b); gram2 and gram3 (v, a, b, c); gram4 (v, w, a, b).
    """
    w = (0, 1)  # sqrt(-2), or (1+sqrt(-7))/2
    neg_w = (0, -1)
    return {
        "gram1": (LGraph(d, [0, 0, 0], {(0, 1): w, (0, 2): 1}), {0: 2, 1: neg_w, 2: -1}),
        "gram2": (LGraph(d, [0, 1, 0, 0], {(0, 1): 1, (0, 2): 1, (0, 3): 1}), {0: 2, 1: -1, 2: -1, 3: -1}),
        "gram3": (LGraph(d, [0, 0, 0, 0], {(0, 1): 1, (0, 2): 1, (0, 3): 1}), {0: 2, 1: -1, 2: -1, 3: -1}),
        "gram4": (LGraph(d, [0, 0, 0, 0], {(0, 1): w, (1, 2): 1, (1, 3): 1}), {1: 1, 2: -1, 3: -1}),
    }

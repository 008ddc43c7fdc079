import random

import numpy as np
import pytest

from cyclotomic_lgraphs.families import catalogue, chain, sporadic, t2k4
from cyclotomic_lgraphs.gram import (
    TEMPLATES, CombinationSpec, GramRejection, combination_inner_products,
    gram_supergraph, prove_nonmaximal_by_gram, template_combinations, try_gram_extension,
)
from cyclotomic_lgraphs.ring import get_ring, label_set
from cyclotomic_lgraphs.spectra import is_cyclotomic

from helpers import gram_configs


def _numeric(g, c, sign=1):
    """Oracle: the same forms with a complex Gram matrix, linear in the first slot."""
    a = 2 * np.eye(g.n) + sign * g.complex_matrix
    vec = np.zeros(g.n, dtype=complex)
    for v, p in c.items():
        vec[v] = g.ring.to_complex(p if isinstance(p, tuple) else (p, 0))
    return vec @ a, (vec @ a @ vec.conj()).real


@pytest.mark.parametrize("d", (-2, -7))
@pytest.mark.parametrize("name", ["gram1", "gram2", "gram3", "gram4"])
def test_inner_products_match_numeric(d, name):
    g, c = gram_configs(d)[name]
    row, self_norm = combination_inner_products(g, CombinationSpec(c))
    nrow, nnorm = _numeric(g, c)
    assert np.allclose([complex(row[i]) for i in range(g.n)], nrow)
    assert self_norm == pytest.approx(nnorm)


@pytest.mark.parametrize("d", (-2, -7))
def test_printed_values(d):
    ring = get_ring(d)
    wbar = ring.pconj((0, 1))
    printed = {
        "gram1": ([(1, 0), (0, 0), (0, 0)], 2),
        "gram2": ([(1, 0), (-1, 0), (0, 0), (0, 0)], 3),
        "gram3": ([(1, 0), (0, 0), (0, 0), (0, 0)], 2),
        "gram4": ([wbar, (0, 0), (-1, 0), (-1, 0)], 2),
    }
    for name, (g, c) in gram_configs(d).items():
        row, self_norm = combination_inner_products(g, CombinationSpec(c))
        assert [row[i].pair for i in range(g.n)] == printed[name][0]
        assert self_norm == printed[name][1]
        out = try_gram_extension(g, CombinationSpec(c))
        assert not isinstance(out, GramRejection) and is_cyclotomic(out)


def test_gram1_extension_shape():
    g, c = gram_configs(-2)["gram1"]
    out = try_gram_extension(g, CombinationSpec(c))
    assert out.n == 4 and out.charges[3] == 0
    assert out.neighbours(3) == (0,) and out.edge_weight(0, 3) == 1


def test_indicator_combination():
    g = sporadic("S_4", -7)
    for i in range(g.n):
        row, self_norm = combination_inner_products(g, CombinationSpec({i: 1}))
        assert self_norm == 2 + g.charges[i]
        for j in range(g.n):
            expect = g.entry(i, j) if j != i else (2 + g.charges[i], 0)
            assert row[j].pair == expect


def test_rejections():
    g, _ = gram_configs(-2)["gram1"]
    out = try_gram_extension(g, CombinationSpec({0: 1, 2: 1}))  # <x,x> = 2+2+2 = 6
    assert isinstance(out, GramRejection) and not out
    with pytest.raises(ValueError):
        CombinationSpec({0: 0})


def test_soundness_on_random_combinations():
    # every accepted combination yields a cyclotomic graph, with zero exceptions
    rng = random.Random(17)
    for d in (-2, -7):
        coeffs = [x.pair for n in (1, 2) for x in label_set(d).of_norm(n)] + [(2, 0), (-2, 0)]
        accepted = 0
        for e in catalogue(d, 3):
            for _ in range(60):
                k = rng.randint(2, min(5, e.graph.n))
                verts = rng.sample(range(e.graph.n), k)
                sub = e.graph.induced(sorted(verts))
                c = {v: rng.choice(coeffs) for v in rng.sample(range(k), rng.randint(1, k))}
                out = try_gram_extension(sub, CombinationSpec(c))
                if not isinstance(out, GramRejection):
                    accepted += 1
                    assert is_cyclotomic(out)
        assert accepted > 0


def test_templates_match_their_configurations():
    for d in (-2, -7):
        for t in TEMPLATES:
            g, c = gram_configs(d)[t.name]
            specs = [s for _, s in template_combinations(g, t)]
            assert specs, t.name
            assert any(try_gram_extension(g, s) for s in specs)


def test_prove_nonmaximal_examples():
    g, _ = gram_configs(-2)["gram1"]
    assert gram_supergraph(g) is not None
    assert prove_nonmaximal_by_gram(g)
    assert not prove_nonmaximal_by_gram(t2k4(3, -2))
    assert prove_nonmaximal_by_gram(chain(1, -2))

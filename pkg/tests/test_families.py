import json

import pytest

from cyclotomic_lgraphs.families import (
    SPORADIC_RINGS, FamilyError, c2k2plus, catalogue, catalogue_json, chain,
    cylinder, entry_filename, sporadic, sporadic_names, t2k4,
)
from cyclotomic_lgraphs.grow import is_maximal
from cyclotomic_lgraphs.lgraph import LGraph, find_induced_form
from cyclotomic_lgraphs.spectra import char_poly, eigenvalues_all_pm2, is_cyclotomic

from helpers import RINGS


def test_sporadic_examples():
    assert sporadic("S_2*", -7).entry(0, 1) == (1, 1)
    s4p = sporadic("S_4'", -11)
    assert sorted(s4p.ring.pnorm(p) for p in s4p.edge_pairs.values()) == [1, 1, 3, 3]
    assert sporadic("S_6†", -7).n == 6
    assert sporadic("S_6dag", -7) == sporadic("S_6†", -7)
    assert char_poly(sporadic("S_2", -2)).to_list() == [-4, 0, 1]


def test_sporadic_errors():
    with pytest.raises(FamilyError):
        sporadic("S_6†", -2)
    with pytest.raises(FamilyError):
        sporadic("S_99", -2)
    assert set(sporadic_names(-15)) == {"S_2", "S_2*"}


def test_t2k4():
    g = t2k4(2, -2)
    assert g.n == 4 and set(g.degrees) == {4}
    assert char_poly(g).to_list() == [16, 0, -8, 0, 1]
    h = t2k4(5, -7, primed=True)
    assert is_cyclotomic(h) and eigenvalues_all_pm2(h)
    with pytest.raises(FamilyError):
        t2k4(1, -2)
    with pytest.raises(FamilyError):
        t2k4(3, -2, primed=True)


def test_c2k2plus():
    g = c2k2plus(1, -2)
    expect = LGraph(-2, [1, 1, 0], {(0, 1): 1, (0, 2): (0, 1), (1, 2): (0, -1)})
    assert g == expect
    for d in (-2, -7):
        for k in range(1, 7):
            assert set(c2k2plus(k, d).degrees) == {4}
    with pytest.raises(FamilyError):
        c2k2plus(2, -11)
    assert is_maximal(c2k2plus(2, -7))
    assert eigenvalues_all_pm2(c2k2plus(1, -7))


def test_cap_deletion_gives_charged_cylinder():
    k = 3
    g = c2k2plus(k, -2).delete_vertex(2 * k)
    assert all(p in ((1, 0), (-1, 0)) for p in g.edge_pairs.values())
    assert sorted(g.charges) == [0] * (2 * k - 2) + [1, 1]


@pytest.mark.parametrize("d", (-2, -7))
def test_chain(d):
    for k in range(1, 4):
        g = chain(k, d)
        assert g.n == 2 * k + 3
        assert is_cyclotomic(g) and not is_maximal(g)


def test_cylinder_pattern():
    p = cylinder(3)
    assert p.n == 6 and len(p.edges) == 8
    assert find_induced_form(t2k4(4, -7), p)
    with pytest.raises(FamilyError):
        cylinder(0)


def test_catalogue_counts_and_labels():
    assert len(catalogue(-15)) == 2
    assert len(catalogue(-11)) == 3
    labels = [e.label for e in catalogue(-7, 3)]
    assert "T_6^4" in labels and "T_6^4'" in labels and "C_2^2+" in labels
    for d in RINGS:
        names = [e.name for e in catalogue(d, 2) if e.k is None]
        assert names == [n for n, ds in SPORADIC_RINGS.items() if d in ds]


def test_catalogue_json_round_trip():
    data = json.loads(catalogue_json(-7, 3))
    cat = catalogue(-7, 3)
    assert [LGraph.from_dict(e["graph"]) for e in data["entries"]] == [e.graph for e in cat]
    names = {entry_filename(e) for e in cat}
    assert len(names) == len(cat)
    assert all(n.replace("_", "").isalnum() for n in names)

import cmath

import pytest
from hypothesis import given, strategies as st

from cyclotomic_lgraphs.ring import (
    RingElement, RingError, add, conj, get_ring, label_set, mul, neg, norm, render,
)

from helpers import RINGS

coord = st.integers(-30, 30)
elements = st.builds(lambda d, a, b: RingElement(d, a, b), st.sampled_from(RINGS), coord, coord)


def _pairs(draw_d):
    return st.tuples(coord, coord, coord, coord).map(lambda t: (RingElement(draw_d, t[0], t[1]), RingElement(draw_d, t[2], t[3])))


same_ring_pairs = st.sampled_from(RINGS).flatmap(_pairs)


def test_unsupported_ring_rejected():
    for d in (-1, -3, -5, 2, 0):
        with pytest.raises(RingError):
            get_ring(d)


def test_mixed_rings_rejected():
    with pytest.raises(RingError):
        RingElement(-2, 1, 1) + RingElement(-7, 1, 1)


@given(same_ring_pairs)
def test_arithmetic_matches_complex(xy):
    x, y = xy
    assert complex(add(x, y)) == pytest.approx(complex(x) + complex(y))
    assert complex(mul(x, y)) == pytest.approx(complex(x) * complex(y), abs=1e-6)
    assert complex(neg(x)) == pytest.approx(-complex(x))
    assert complex(conj(x)) == pytest.approx(complex(x).conjugate())


@given(elements)
def test_norm_is_squared_modulus(x):
    assert norm(x) >= 0
    assert norm(x) == pytest.approx(abs(complex(x)) ** 2, abs=1e-6)
    assert conj(conj(x)) == x


@given(same_ring_pairs)
def test_norm_multiplicative(xy):
    x, y = xy
    assert norm(x * y) == norm(x) * norm(y)


def test_omega_value():
    assert complex(get_ring(-2).omega) == pytest.approx(cmath.sqrt(-2))
    for d in (-7, -11, -15):
        assert complex(get_ring(d).omega) == pytest.approx((1 + cmath.sqrt(d)) / 2)


def _brute_labels(d):
    """Oracle: scan a generous box of coordinates with complex norms."""
    ring = get_ring(d)
    out = {n: set() for n in range(5)}
    for a in range(-8, 9):
        for b in range(-8, 9):
            z = complex(ring.element(a, b))
            n = round(abs(z) ** 2)
            if abs(abs(z) ** 2 - n) < 1e-9 and n <= 4:
                out[n].add((a, b))
    return out


@pytest.mark.parametrize("d", RINGS)
def test_label_sets_match_brute_force(d):
    ls = label_set(d)
    brute = _brute_labels(d)
    for n in range(5):
        assert {x.pair for x in ls.of_norm(n)} == brute[n]


@pytest.mark.parametrize("d", RINGS)
def test_label_sets_closed(d):
    ls = label_set(d)
    for n in range(1, 5):
        xs = set(ls.of_norm(n))
        assert {-x for x in xs} == xs
        assert {x.conj() for x in xs} == xs
    assert {x.pair for x in ls.of_norm(1)} == {(1, 0), (-1, 0)}
    assert [x.pair for x in ls.of_norm(0)] == [(0, 0)]


def test_render():
    assert render((0, 0)) == "0"
    assert render((1, 0)) == "1"
    assert "w" in render((1, -1))

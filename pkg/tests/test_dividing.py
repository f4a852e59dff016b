from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactcat.dividing import (
    ZERO,
    DividingSet,
    NilTLMonomial,
    ZeroObject,
    catalan,
    dual,
    enumerate_matchings,
    euler_number,
    faces,
    gamma_of_monomial,
    mirror,
    multiply,
    normalize,
    ordered_gamma,
    reduced_monomials,
    rotate,
)
from oracles import brute_noncrossing, euler_by_separation

NESTED = DividingSet.from_pairs(3, [(1, 6), (2, 5), (3, 4)])
FLAT = DividingSet.from_pairs(3, [(1, 2), (3, 4), (5, 6)])


def matchings(max_n: int = 5):
    return st.integers(1, max_n).flatmap(lambda n: st.sampled_from(enumerate_matchings(n)))


def mono(n, *word):
    return NilTLMonomial(n, word)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    got = {m.pairs for m in enumerate_matchings(n)}
    assert got == brute_noncrossing(n)
    assert len(got) == [1, 2, 5, 14, 42][n - 1]


def test_catalan_values():
    assert [catalan(n) for n in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]


def test_crossing_rejected():
    with pytest.raises(ValueError):
        DividingSet.from_pairs(2, [(1, 3), (2, 4)])


def test_face_examples():
    t = faces(DividingSet.from_pairs(1, [(1, 2)]))
    assert t.size == 2 and sorted(t.signs) == ["+", "-"]
    t = faces(NESTED)
    assert t.signs == ("+", "-", "+", "-")
    assert [(f, g) for f, g, _ in t.edges] == [(0, 1), (1, 2), (2, 3)]
    t = faces(FLAT)
    assert t.signs == ("+", "-", "-", "-")
    assert all(f == 0 for f, _, _ in t.edges)


def test_faces_of_circles_raise():
    with pytest.raises(ZeroObject):
        faces(DividingSet.from_pairs(1, [(1, 2)], circles=1))


def test_euler_examples():
    assert euler_number(DividingSet.from_pairs(1, [(1, 2)])) == 0
    assert euler_number(NESTED) == 0
    assert euler_number(FLAT) == -2
    assert dual(FLAT).sign == "-" and euler_number(dual(FLAT)) == 2


@given(matchings(6), st.sampled_from("+-"))
def test_euler_matches_separation_oracle(d, sign):
    d = d.with_sign(sign)
    assert euler_number(d) == euler_by_separation(d.pairs, d.n, sign)
    t = faces(d)
    assert t.size == d.n + 1 and len(t.edges) == d.n
    for f, g, _ in t.edges:
        assert t.signs[f] != t.signs[g]


@given(matchings())
def test_dual_and_mirror_involutions(d):
    assert dual(dual(d)) == d
    assert euler_number(dual(d)) == -euler_number(d)
    assert mirror(mirror(d)) == d
    assert euler_number(mirror(d)) == euler_by_separation(mirror(d).pairs, d.n, d.sign)


def test_mirror_reverses_words():
    # gamma(e1) is a palindrome, so the mirror fixes it
    assert mirror(FLAT) == FLAT == gamma_of_monomial(mono(3, 1))
    for n in range(2, 6):
        for w in reduced_monomials(n):
            assert mirror(gamma_of_monomial(w)) == gamma_of_monomial(NilTLMonomial(n, w.word[::-1]))


@given(matchings())
def test_rotation_cycle(d):
    r = d
    for k in range(2 * d.n):
        r = rotate(r)
        assert r.sign == ("-" if k % 2 == 0 else "+")
    assert r == d


def test_rotation_example():
    r = rotate(DividingSet.from_pairs(2, [(1, 2), (3, 4)]))
    assert r.pairs == ((1, 4), (2, 3)) and r.sign == "-"


def test_normalize():
    assert normalize(DividingSet.from_pairs(1, [(1, 2)], circles=1)) is ZERO
    assert normalize(NESTED) is NESTED


def test_nil_tl_relations():
    assert multiply(mono(3, 1), mono(3, 1)) is ZERO
    assert multiply(mono(3, 1, 2), mono(3, 1)) == mono(3, 1)
    assert multiply(mono(3, 2, 1), mono(3, 2)) == mono(3, 2)
    assert multiply(mono(4, 1), mono(4, 3)) == multiply(mono(4, 3), mono(4, 1))
    with pytest.raises(ValueError):
        multiply(mono(3, 1), mono(4, 1))


def test_gamma_examples():
    assert gamma_of_monomial(mono(3)) == NESTED
    assert gamma_of_monomial(mono(3, 1, 2)).pairs == ((1, 2), (3, 6), (4, 5))
    assert gamma_of_monomial(mono(3, 2, 1)).pairs == ((1, 4), (2, 3), (5, 6))
    assert gamma_of_monomial(mono(3, 1, 1)).circles == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gamma_is_a_bijection_onto_matchings(n):
    images = [gamma_of_monomial(w) for w in reduced_monomials(n)]
    assert len(set(images)) == len(images) == catalan(n)
    assert set(images) == set(enumerate_matchings(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ordered_monomials_distinct(n):
    from itertools import combinations

    got = {ordered_gamma(n, s) for r in range(n) for s in combinations(range(1, n), r)}
    assert len(got) == 2 ** (n - 1)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), *[st.integers(1, n - 1)] * 3)))
def test_multiply_associative(t):
    n, a, b, c = t
    x, y, z = mono(n, a), mono(n, b), mono(n, c)
    xy, yz = multiply(x, y), multiply(y, z)
    left = ZERO if xy is ZERO else multiply(xy, z)
    right = ZERO if yz is ZERO else multiply(x, yz)
    assert left == right

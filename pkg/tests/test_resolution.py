from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactcat.arcdiagram import elementary_euler, zigzag
from contactcat.dividing import (
    DividingSet,
    NilTLMonomial,
    dual,
    enumerate_matchings,
    euler_number,
    gamma_of_monomial,
    ordered_gamma,
)
from contactcat.quiver import Vertex
from contactcat.resolution import (
    Cocore,
    boundary_labels,
    cocore_intersections,
    cocores,
    elementary_dividing_set,
    is_elementary,
    k0_class,
    k0_from_log,
    mu_inverse,
    mu_object,
    resolve,
)
from contactcat.twisted import (
    cone,
    gaussian_eliminate,
    homology_classes,
    homology_dim,
    is_homotopy_equivalence,
    make,
    single,
)
from oracles import separating


def subsets(n):
    return [frozenset(s) for r in range(n) for s in combinations(range(1, n), r)]


def matchings(lo: int = 2, hi: int = 6):
    return st.integers(lo, hi).flatmap(lambda n: st.sampled_from(enumerate_matchings(n)))


def test_cocore_calibration():
    assert cocores(3) == (Cocore(1, (0, 2)), Cocore(2, (2, 4)))
    assert [c.gap_pair for c in cocores(5)] == [(0, 2), (2, 8), (4, 8), (4, 6)]
    labels = boundary_labels(3)
    # segments get consecutive labels in boundary order, starting at Z1
    assert sorted(labels.values()) == list(range(1, 7))
    assert labels[("s", 0)] == 1 and labels[("t", 0)] == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_each_cocore_meets_its_elementary_generators(n):
    # the cocore of h meets z_C twice exactly when h is in C
    for c in subsets(n):
        z = elementary_dividing_set(n, c)
        hits = cocore_intersections(z)
        for coc, k in zip(cocores(n), hits):
            assert k == separating(z.pairs, *coc.gap_pair)
            assert k == (2 if coc.p in c else 0) or k in (1, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_elementary_sets_are_sign_duals_of_ordered_monomials(n):
    odd = frozenset(range(1, n, 2))
    for c in subsets(n):
        z = elementary_dividing_set(n, c)
        assert z == dual(ordered_gamma(n, c ^ odd))
        assert euler_number(z) == elementary_euler(zigzag(n), c) == (n - 1) - 2 * len(c)
        assert mu_object(n, c) == Vertex(n, c ^ odd)
        assert mu_inverse(mu_object(n, c)) == c


def test_is_elementary():
    assert is_elementary(ordered_gamma(4, (1, 3))) == frozenset({1, 3})
    assert is_elementary(gamma_of_monomial(NilTLMonomial(3, (2, 1)))) is None
    assert is_elementary(DividingSet.from_pairs(2, [(1, 2), (3, 4)], circles=1)) is None


def test_resolution_anchor():
    d = gamma_of_monomial(NilTLMonomial(3, (2, 1)))
    r = resolve(d)
    m = gaussian_eliminate(r.complex)
    assert str(m) == "([{}, {1,2}], p: 0->1)"
    assert r.to_json()["objects"] == [[], [1, 2]]
    assert k0_class(r) == k0_from_log(r) == {(): 1, (1, 2): 1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_elementary_inputs_resolve_to_themselves(n):
    for s in subsets(n):
        r = resolve(ordered_gamma(n, s))
        assert r.complex == single(Vertex(n, s)) and r.log == ()


def test_circles_give_zero():
    r = resolve(DividingSet.from_pairs(2, [(1, 2), (3, 4)], circles=1))
    assert r.complex.is_zero_object()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_matching_resolves(n):
    for d in enumerate_matchings(n):
        x = resolve(d).complex
        assert make(x.objects, x.p) == x


@settings(max_examples=60, deadline=None)
@given(matchings())
def test_k0_bookkeeping_agrees(d):
    r = resolve(d)
    assert k0_class(r) == k0_from_log(r)


@settings(max_examples=40, deadline=None)
@given(matchings(2, 5), st.integers(0, 1000))
def test_strategies_give_equivalent_complexes(d, seed):
    a = resolve(d).complex
    b = resolve(d, "random", seed).complex
    c = resolve(d, "last").complex
    for other in (b, c):
        nonzero = [f for f in homology_classes(a, other, 8) if f.f]
        assert len(nonzero) == 1 and is_homotopy_equivalence(nonzero[0])


@settings(max_examples=40, deadline=None)
@given(matchings(2, 5))
def test_resolution_is_indecomposable(d):
    assert homology_dim(resolve(d).complex, resolve(d).complex) == 1


@settings(max_examples=30, deadline=None)
@given(matchings(3, 5))
def test_log_triangles_are_cones(d):
    # each logged split d = cone(R(A) -> R(B)) is recorded with simpler terms
    r = resolve(d)
    for entry in r.log:
        a, b = resolve(entry.gamma1).complex, resolve(entry.gamma2).complex
        lifted = [f for f in homology_classes(a, b, 8) if f.f]
        assert len(lifted) == 1
        assert cone(lifted[0]).size == a.size + b.size
        assert sum(cocore_intersections(entry.gamma1)) < sum(cocore_intersections(entry.matching))
        assert sum(cocore_intersections(entry.gamma2)) < sum(cocore_intersections(entry.matching))

from __future__ import annotations

import pytest

from contactcat.arcdiagram import (
    ArcDiagramError,
    Degenerate,
    UnsupportedFamily,
    elementary_euler,
    elementary_subsets,
    family,
    genus_surface,
    parse,
    presentation,
    punctured_sphere,
    reeb_chords,
    surface_invariants,
    trace,
    zigzag,
)


def test_parse_round_trip():
    text = "Z1: a1 b1 a1' ; Z2: b1'\nmatch a1 a1'; match b1 b1'"
    z = parse(text)
    assert z.lines == (("a1", "b1", "a1'"), ("b1'",))
    assert parse(z.to_text()) == z
    assert z.lines == punctured_sphere(2).lines and z.matching == punctured_sphere(2).matching


@pytest.mark.parametrize(
    "text",
    ["Z2: a\nmatch a b", "Z1: a b\nmatch a", "Z1: a a\nmatch a a", "Z1: a b\nmatch a c", "junk"],
)
def test_parse_errors(text):
    with pytest.raises(ArcDiagramError):
        parse(text)


def test_degenerate_diagram():
    with pytest.raises(Degenerate):
        surface_invariants(parse("Z1: a a'\nmatch a a'"))


@pytest.mark.parametrize("n", range(1, 9))
def test_zigzag_is_a_disk(n):
    s = surface_invariants(zigzag(n))
    assert (s.genus, s.boundary_components, s.marked_points, s.euler_char) == (0, 1, 2 * n, 1)
    assert len(trace(zigzag(n))) == 1


@pytest.mark.parametrize("g", range(1, 7))
def test_genus_surface(g):
    s = surface_invariants(genus_surface(g))
    assert (s.genus, s.boundary_components) == (g, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_punctured_sphere(n):
    s = surface_invariants(punctured_sphere(n))
    assert (s.genus, s.boundary_components) == (0, n)


def test_zigzag_shape():
    assert zigzag(3).to_text() == "Z1: a1 ; Z2: a2' a1' ; Z3: a2\nmatch a1 a1'; match a2 a2'"
    # every Reeb chord joins consecutive handles and runs from odd to even
    for n in range(2, 9):
        for i, j in reeb_chords(zigzag(n)):
            assert abs(i - j) == 1 and i % 2 == 1 and j % 2 == 0


def test_elementary_euler_formula():
    for g in range(1, 5):
        z = genus_surface(g)
        for c, e in elementary_subsets(z):
            assert e == 2 * g - 2 * len(c)
    for n in range(2, 7):
        z = zigzag(n)
        assert elementary_euler(z, ()) == n - 1
        assert len(elementary_subsets(z)) == 2 ** (n - 1)


def test_family_dispatch():
    assert family("genus", 2) == genus_surface(2)
    with pytest.raises(ArcDiagramError):
        family("torus", 1)


def test_presentations_exist_only_for_families():
    with pytest.raises(UnsupportedFamily):
        presentation(parse("Z1: a b a' b'\nmatch a a'; match b b'"))
    with pytest.raises(UnsupportedFamily):
        presentation(punctured_sphere(1))


def test_zigzag3_presentation():
    p = presentation(zigzag(3))
    assert p.objects == ("0", "h1", "h2", "h1h2")
    assert p.arrows == (("rho1,2@h1", "h1", "h2"),)
    assert p.relations == ()


def test_sphere_presentation_shape():
    p = presentation(punctured_sphere(4))
    names = [a[0] for a in p.arrows]
    assert names.count("nu1,2") == 1 and "nu2,3" in names
    assert (("nu1,2", "nu2,3"), None) in p.relations
    assert (("gamma2", "alpha2"), None) in p.relations


def test_genus_presentation_shape():
    p = presentation(genus_surface(2))
    assert ("eta1,2", "J1", "I2") in p.arrows
    zeros = {lhs for lhs, rhs in p.relations if rhs is None}
    assert zeros == {
        ("gamma1", "alpha1"),
        ("beta1", "gamma1"),
        ("gamma2", "alpha2"),
        ("beta2", "gamma2"),
        ("alpha1", "eta1,2"),
        ("eta1,2", "beta2"),
    }
    assert '"J1" -> "I2" [label="eta1,2"]' in p.to_dot()

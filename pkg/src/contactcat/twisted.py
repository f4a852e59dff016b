"""One-sided twisted complexes over the disk category, ungraded and in characteristic 2.

The base category has zero differential and every hom space is at most one
dimensional, so a matrix entry is a single bit: entry ``(i, j)`` is either
zero or the basis morphism ``objects[i] -> objects[j]``. Composites of basis
morphisms are again basis morphisms, which makes every matrix product a
parity count.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import BitMatrix, BitVector, kernel_basis, rank, solve, span_rank
from .quiver import Vertex, hom_dim


class TwistedComplexError(ValueError):
    pass


class NotOneSided(TwistedComplexError):
    pass


class MaurerCartanViolation(TwistedComplexError):
    pass


class IllegalEntry(TwistedComplexError):
    pass


class NotClosed(TwistedComplexError):
    pass


Entries = frozenset  # of (i, j)


def _product(left: Iterable[tuple[int, int]], right: Iterable[tuple[int, int]]) -> frozenset:
    """Entries of ``right`` after ``left`` (``left`` applied first), mod 2."""
    by_source: dict[int, list[int]] = {}
    for j, k in right:
        by_source.setdefault(j, []).append(k)
    out: set[tuple[int, int]] = set()
    for i, j in left:
        for k in by_source.get(j, ()):
            out ^= {(i, k)}
    return frozenset(out)


@dataclass(frozen=True)
class TwistedComplex:
    objects: tuple[Vertex, ...]
    p: frozenset = frozenset()

    @property
    def size(self) -> int:
        return len(self.objects)

    @property
    def n(self) -> int | None:
        return self.objects[0].n if self.objects else None

    def is_zero_object(self) -> bool:
        return not self.objects

    def to_json(self) -> dict:
        return {
            "objects": [list(v.key) for v in self.objects],
            "p": [{"i": i, "j": j} for i, j in sorted(self.p)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        objs = ", ".join(str(v) for v in self.objects)
        ent = " ".join(f"{i}->{j}" for i, j in sorted(self.p))
        return f"([{objs}], p: {ent or '0'})"


def make(objects: Sequence[Vertex], p: Iterable[tuple[int, int]] = ()) -> TwistedComplex:
    objects = tuple(objects)
    if len({v.n for v in objects}) > 1:
        raise IllegalEntry("objects come from different disks")
    entries = frozenset(p)
    for i, j in entries:
        if not (0 <= i < len(objects) and 0 <= j < len(objects)):
            raise IllegalEntry(f"entry ({i},{j}) out of range")
        if j <= i:
            raise NotOneSided(f"entry ({i},{j}) is not strictly upper triangular")
        if not hom_dim(objects[i], objects[j]):
            raise IllegalEntry(f"no morphism {objects[i]} -> {objects[j]} for entry ({i},{j})")
    square = _product(entries, entries)
    if square:
        raise MaurerCartanViolation(f"p^2 != 0 at entries {sorted(square)}")
    return TwistedComplex(objects, entries)


def from_json(obj: dict, n: int) -> TwistedComplex:
    return make([Vertex.of(n, s) for s in obj["objects"]], [(e["i"], e["j"]) for e in obj["p"]])


def single(v: Vertex) -> TwistedComplex:
    return TwistedComplex((v,), frozenset())


def direct_sum(x: TwistedComplex, y: TwistedComplex) -> TwistedComplex:
    shift = x.size
    return TwistedComplex(x.objects + y.objects, x.p | {(i + shift, j + shift) for i, j in y.p})


@dataclass(frozen=True)
class TCMorphism:
    """Matrix ``f`` with entry ``(i, j)`` a map ``source[i] -> target[j]``."""

    source: TwistedComplex
    target: TwistedComplex
    f: frozenset = frozenset()

    def __post_init__(self) -> None:
        for i, j in self.f:
            if not (0 <= i < self.source.size and 0 <= j < self.target.size):
                raise IllegalEntry(f"entry ({i},{j}) out of range")
            if not hom_dim(self.source.objects[i], self.target.objects[j]):
                raise IllegalEntry(f"no morphism {self.source.objects[i]} -> {self.target.objects[j]}")

    def differential(self) -> frozenset:
        return _product(self.f, self.target.p) ^ _product(self.source.p, self.f)

    def is_closed(self) -> bool:
        return not self.differential()

    def then(self, other: "TCMorphism") -> "TCMorphism":
        """``other`` after ``self``."""
        if self.target != other.source:
            raise TwistedComplexError("morphisms are not composable")
        return TCMorphism(self.source, other.target, _product(self.f, other.f))

    def __add__(self, other: "TCMorphism") -> "TCMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise TwistedComplexError("cannot add morphisms with different endpoints")
        return TCMorphism(self.source, self.target, self.f ^ other.f)


def identity(x: TwistedComplex) -> TCMorphism:
    return TCMorphism(x, x, frozenset((i, i) for i in range(x.size)))


def zero_map(x: TwistedComplex, y: TwistedComplex) -> TCMorphism:
    return TCMorphism(x, y, frozenset())


def hom_basis(x: TwistedComplex, y: TwistedComplex) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(x.size)
        for j in range(y.size)
        if hom_dim(x.objects[i], y.objects[j])
    ]


def hom_complex(x: TwistedComplex, y: TwistedComplex) -> tuple[list[tuple[int, int]], BitMatrix]:
    """Basis of ``Hom(x, y)`` and the matrix of ``f -> p_y f + f p_x``.

    Column ``c`` of the matrix is the image of basis element ``c``.
    """
    if x.n is not None and y.n is not None and x.n != y.n:
        raise TwistedComplexError("complexes over different disks")
    basis = hom_basis(x, y)
    index = {e: k for k, e in enumerate(basis)}
    cols = []
    for e in basis:
        image = TCMorphism(x, y, frozenset([e])).differential()
        bits = 0
        for entry in image:
            bits |= 1 << index[entry]
        cols.append(bits)
    m = BitMatrix(len(basis), len(basis), tuple(cols)).transpose() if basis else BitMatrix.zeros(0, 0)
    return basis, m


def homology_dim(x: TwistedComplex, y: TwistedComplex) -> int:
    _, d = hom_complex(x, y)
    r = rank(d)
    return d.cols - 2 * r


def _as_vector(basis: list[tuple[int, int]], entries: Iterable[tuple[int, int]]) -> BitVector:
    index = {e: k for k, e in enumerate(basis)}
    bits = 0
    for e in entries:
        bits ^= 1 << index[e]
    return BitVector(len(basis), bits)


def is_boundary(f: TCMorphism) -> bool:
    """Whether ``f = d(h)`` for some ``h`` in the hom complex."""
    basis, d = hom_complex(f.source, f.target)
    return solve(d, _as_vector(basis, f.f)) is not None


def cone(f: TCMorphism) -> TwistedComplex:
    if not f.is_closed():
        raise NotClosed("cone of a non-closed morphism")
    x, y = f.source, f.target
    shift = x.size
    p = set(x.p) | {(i + shift, j + shift) for i, j in y.p} | {(i, j + shift) for i, j in f.f}
    return TwistedComplex(x.objects + y.objects, frozenset(p))


def cone_inclusion(f: TCMorphism) -> TCMorphism:
    """Canonical map ``y -> cone(f)``."""
    c = cone(f)
    shift = f.source.size
    return TCMorphism(f.target, c, frozenset((j, j + shift) for j in range(f.target.size)))


def cone_projection(f: TCMorphism) -> TCMorphism:
    """Canonical map ``cone(f) -> x``."""
    c = cone(f)
    return TCMorphism(c, f.source, frozenset((i, i) for i in range(f.source.size)))


def is_contractible(x: TwistedComplex) -> bool:
    """Whether the identity of ``x`` is a boundary in ``End(x)``."""
    if x.is_zero_object():
        return True
    return is_boundary(identity(x))


def is_homotopy_equivalence(f: TCMorphism) -> bool:
    return is_contractible(cone(f))


def homology_classes(x: TwistedComplex, y: TwistedComplex, limit: int) -> list[TCMorphism]:
    """Representatives of every class in ``H(Hom(x, y))``.

    Raises if the homology is larger than ``2**limit`` elements.
    """
    basis, d = hom_complex(x, y)
    cycles = kernel_basis(d)
    boundary_rows = [d.transpose().data[k] for k in range(d.cols)] if basis else []
    # choose cycles independent modulo boundaries, greedily in kernel order
    chosen: list[int] = []
    span = [r for r in boundary_rows if r]
    current = span_rank(span, len(basis))
    for z in cycles:
        trial = span + [z.bits]
        r = span_rank(trial, len(basis))
        if r > current:
            chosen.append(z.bits)
            span = trial
            current = r
    if len(chosen) > limit:
        raise TwistedComplexError(f"homology of dimension {len(chosen)} too large to enumerate")
    reps = []
    for mask in range(1 << len(chosen)):
        bits = 0
        for k, z in enumerate(chosen):
            if (mask >> k) & 1:
                bits ^= z
        reps.append(TCMorphism(x, y, frozenset(basis[k] for k in range(len(basis)) if (bits >> k) & 1)))
    return reps


def extend_over_cone(f: TCMorphism, g: TCMorphism) -> list[TCMorphism]:
    """All extensions of ``g: y -> z`` to ``cone(f) -> z``, one per homotopy class.

    An extension is ``(a, g)`` with ``d(a) = g f``; the choices differ by
    closed maps ``x -> z``. Empty when ``g f`` is not null-homotopic.
    """
    if not (f.is_closed() and g.is_closed()):
        raise NotClosed("extension needs closed maps")
    x, y, z = f.source, f.target, g.target
    gf = f.then(g)
    basis, d = hom_complex(x, z)
    a0 = solve(d, _as_vector(basis, gf.f))
    if a0 is None:
        return []
    a0_entries = frozenset(basis[k] for k in a0.support())
    c = cone(f)
    shift = x.size
    out = []
    for cls in homology_classes(x, z, limit=10):
        a = a0_entries ^ cls.f
        entries = set(a) | {(j + shift, k) for j, k in g.f}
        ext = TCMorphism(c, z, frozenset(entries))
        assert ext.is_closed()
        out.append(ext)
    return out


def is_distinguished(
    x: TwistedComplex,
    y: TwistedComplex,
    z: TwistedComplex,
    f: TCMorphism,
    g: TCMorphism,
    h: TCMorphism,
) -> bool:
    """Whether ``x -f-> y -g-> z -h-> x`` is isomorphic to the cone triangle of ``f``.

    Searches the extensions ``g~: cone(f) -> z`` of ``g`` for one whose cone
    is contractible and which intertwines ``h`` with the projection to ``x``.
    """
    for m, (s, t) in ((f, (x, y)), (g, (y, z)), (h, (z, x))):
        if (m.source, m.target) != (s, t):
            raise TwistedComplexError("maps do not form a triangle on x, y, z")
        if not m.is_closed():
            raise NotClosed("triangle maps must be closed")
    proj = cone_projection(f)
    for ext in extend_over_cone(f, g):
        if not is_contractible(cone(ext)):
            continue
        if is_boundary(ext.then(h) + proj):
            return True
    return False


def _topological_order(size: int, p: Iterable[tuple[int, int]]) -> list[int]:
    succ: dict[int, set[int]] = {i: set() for i in range(size)}
    indeg = [0] * size
    for i, j in p:
        if j not in succ[i]:
            succ[i].add(j)
            indeg[j] += 1
    ready = sorted(i for i in range(size) if indeg[i] == 0)
    order = []
    while ready:
        i = ready.pop(0)
        order.append(i)
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
                ready.sort()
    if len(order) != size:
        raise NotOneSided("differential has a cycle; cannot order objects")
    return order


def cancel(x: TwistedComplex, i: int, j: int) -> TwistedComplex:
    """Cancel an identity component ``p[i, j]`` (``objects[i] == objects[j]``).

    The remaining differential picks up the zig-zag terms
    ``k -> j <- i -> l``.
    """
    if (i, j) not in x.p or x.objects[i] != x.objects[j]:
        raise TwistedComplexError(f"entry ({i},{j}) is not an identity component")
    into_j = [k for k, t in x.p if t == j and k != i]
    out_of_i = [l for s, l in x.p if s == i and l != j]
    p = {e for e in x.p if i not in e and j not in e}
    for k in into_j:
        for l in out_of_i:
            p ^= {(k, l)}
    keep = [k for k in range(x.size) if k not in (i, j)]
    relabel = {old: new for new, old in enumerate(keep)}
    objects = [x.objects[k] for k in keep]
    entries = [(relabel[a], relabel[b]) for a, b in p]
    order = _topological_order(len(objects), entries)
    position = {old: new for new, old in enumerate(order)}
    return make([objects[k] for k in order], [(position[a], position[b]) for a, b in entries])


def gaussian_eliminate(x: TwistedComplex) -> TwistedComplex:
    """Cancel identity components until none remain, lowest entry first."""
    while True:
        ids = sorted((i, j) for i, j in x.p if x.objects[i] == x.objects[j])
        if not ids:
            return x
        x = cancel(x, *ids[0])


def k0_vector(x: TwistedComplex) -> dict[tuple[int, ...], int]:
    """Class in the Grothendieck group: object multiplicities mod 2."""
    out: dict[tuple[int, ...], int] = {}
    for v in x.objects:
        out[v.key] = out.get(v.key, 0) ^ 1
    return {k: 1 for k, b in sorted(out.items()) if b}


def all_closed_maps(x: TwistedComplex, y: TwistedComplex) -> list[TCMorphism]:
    """Every closed morphism ``x -> y`` (exponential; for small complexes)."""
    basis, d = hom_complex(x, y)
    cycles = kernel_basis(d)
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(cycles)):
        bits = 0
        for c, z in zip(coeffs, cycles):
            if c:
                bits ^= z.bits
        out.append(TCMorphism(x, y, frozenset(basis[k] for k in range(len(basis)) if (bits >> k) & 1)))
    return out

"""Bypass attaching arcs on disk dividing sets and the bypass surgery.

An equator is recorded as a walk ``f0 -c1- f1 -c2- f2 -c3- f3`` in the face
tree. Each crossing cuts its chord into a left and a right half (relative to
the direction of travel). Surgery regludes the six half-chords by one of
three planar patterns:

* ``C``: ``L1R1, L2R2, L3R3`` (no change),
* ``A``: ``L1L2, L3R1, R2R3`` (the bypass move),
* ``B``: ``L2L3, R1R2, L1R3`` (the move applied twice).

The tracing machinery also carries extra marked crossing points through a
surgery, which is how a second, disjoint equator is transported.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dividing import ZERO, DividingSet, FaceTree, ZeroObject, faces

Chord = tuple[int, int]

PATTERNS: dict[str, tuple[tuple[str, str], ...]] = {
    "C": (("L1", "R1"), ("L2", "R2"), ("L3", "R3")),
    "A": (("L1", "L2"), ("L3", "R1"), ("R2", "R3")),
    "B": (("L2", "L3"), ("R1", "R2"), ("L1", "R3")),
}


class InvalidEquator(ValueError):
    pass


class NotTransportable(ValueError):
    pass


class Capping(enum.Enum):
    ESSENTIAL = "Essential"
    IDENTITY_CAPPED = "IdentityCapped"
    ZERO_CAPPED = "ZeroCapped"


@dataclass(frozen=True)
class Equator:
    """A length-3 face walk; ``turn`` places the two crossings of a backtrack."""

    faces: tuple[int, int, int, int]
    chords: tuple[Chord, Chord, Chord]
    turn: str | None = None

    @property
    def walk(self) -> tuple:
        f, c = self.faces, self.chords
        return (f[0], c[0], f[1], c[1], f[2], c[2], f[3])

    def is_essential(self) -> bool:
        return len(set(self.faces)) == 4

    def reversed(self) -> "Equator":
        turn = None if self.turn is None else {"left": "right", "right": "left"}[self.turn]
        return Equator(tuple(reversed(self.faces)), tuple(reversed(self.chords)), turn)

    def to_json(self) -> dict:
        out = {"faces": list(self.faces), "chords": [list(c) for c in self.chords]}
        if self.turn is not None:
            out["turn"] = self.turn
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Equator":
        return cls(tuple(obj["faces"]), tuple(tuple(c) for c in obj["chords"]), obj.get("turn"))


# ---------------------------------------------------------------------------
# Crossing points and tracing


@dataclass(frozen=True)
class Crossing:
    """A point on chord ``(a, b)`` at parameter ``t`` (0 at ``a``, 1 at ``b``).

    ``left`` names the chord end (``"a"`` or ``"b"``) on the left of the arc.
    """

    chord: Chord
    t: float
    left: str

    def side(self, label: str) -> str:
        if label == "L":
            return self.left
        return "b" if self.left == "a" else "a"


def _left_end(tree: FaceTree, chord: Chord, source_face: int) -> str:
    # Left of an arc entering the inside of (a, b) is the a end. This
    # orientation is fixed by requiring the move on the nested matching of
    # six points to produce the ordered monomial e1 e2.
    inside, outside = tree.chord_faces(chord)
    if source_face == outside:
        return "a"
    if source_face == inside:
        return "b"
    raise InvalidEquator(f"face {source_face} is not adjacent to chord {chord}")


def _validate_walk(tree: FaceTree, e: Equator) -> None:
    for k, chord in enumerate(e.chords):
        ends = set(tree.chord_faces(chord)) if chord in {c for _, _, c in tree.edges} else set()
        if ends != {e.faces[k], e.faces[k + 1]}:
            raise InvalidEquator(f"step {k + 1} does not cross chord {chord} between faces {e.faces[k]} and {e.faces[k + 1]}")
    if e.is_essential():
        if e.turn is not None:
            raise InvalidEquator("turn is only meaningful for a backtracking walk")
        return
    backtracks = [k for k in range(2) if e.chords[k] == e.chords[k + 1]]
    if len(backtracks) != 1 or len(set(e.chords)) != 2:
        raise InvalidEquator("walk must be injective or backtrack exactly once")
    if e.turn not in ("left", "right"):
        raise InvalidEquator("a backtracking walk needs turn 'left' or 'right'")


def equator_crossings(d: DividingSet, e: Equator) -> list[Crossing]:
    """The three crossing points of ``e`` on ``d``, in walk order."""
    tree = faces(d)
    _validate_walk(tree, e)
    out: list[Crossing] = []
    for k, chord in enumerate(e.chords):
        left = _left_end(tree, chord, e.faces[k])
        out.append(Crossing(chord, 0.5, left))
    if not e.is_essential():
        k = 0 if e.chords[0] == e.chords[1] else 1
        first, second = out[k], out[k + 1]
        # turning right puts the second crossing on the right half of the first
        toward = first.side("R" if e.turn == "right" else "L")
        t1, t2 = (1 / 3, 2 / 3) if toward == "b" else (2 / 3, 1 / 3)
        out[k] = Crossing(first.chord, t1, first.left)
        out[k + 1] = Crossing(second.chord, t2, second.left)
    return out


@dataclass
class _Traced:
    matching: DividingSet
    # for each carried crossing: (new chord, position rank key, new left end)
    carried: list[Crossing]


def _trace(
    d: DividingSet,
    surgeries: Sequence[tuple[Sequence[Crossing], str]],
    carried: Sequence[Crossing] = (),
) -> _Traced:
    """Reglue at every surgery site and trace the resulting curves.

    ``carried`` crossings are passed through untouched and re-expressed on
    the new chords.
    """
    points: list[Crossing] = []
    site: dict[int, tuple[int, int]] = {}  # point index -> (surgery index, slot 1..3)
    for s, (crossings, _) in enumerate(surgeries):
        for slot, x in enumerate(crossings, start=1):
            site[len(points)] = (s, slot)
            points.append(x)
    first_carried = len(points)
    points.extend(carried)

    chords = set(d.pairs)
    for x in points:
        if x.chord not in chords:
            raise InvalidEquator(f"crossing on {x.chord}, which is not a chord")
    # piece links: node is ("pt", boundary point) or ("x", index, end)
    link: dict = {}

    def join(u, v) -> None:
        link.setdefault(u, []).append(v)
        link.setdefault(v, []).append(u)

    for a, b in d.pairs:
        on = sorted((x.t, i) for i, x in enumerate(points) if x.chord == (a, b))
        if len({t for t, _ in on}) != len(on):
            raise InvalidEquator(f"two crossings coincide on chord {(a, b)}")
        prev = ("pt", a)
        for _, i in on:
            join(prev, ("x", i, "a"))
            prev = ("x", i, "b")
        join(prev, ("pt", b))
    # local joins at crossing points
    for i, x in enumerate(points):
        if i not in site:
            join(("x", i, "a"), ("x", i, "b"))
    for s, (crossings, pattern) in enumerate(surgeries):
        base = [i for i, (t, _) in site.items() if t == s]
        base.sort(key=lambda i: site[i][1])
        for u, v in PATTERNS[pattern]:
            iu, iv = base[int(u[1]) - 1], base[int(v[1]) - 1]
            join(("x", iu, points[iu].side(u[0])), ("x", iv, points[iv].side(v[0])))

    def step(prev, node):
        # every node has exactly two links: one piece and one local join
        nbrs = link[node]
        return nbrs[1] if nbrs[0] == prev else nbrs[0]

    m = 2 * d.n
    partner = [0] * m
    seen: set = set()
    passed: dict[int, tuple[Chord, int, str]] = {}
    for start in range(1, m + 1):
        if partner[start - 1]:
            continue
        path = []
        prev, node = ("pt", start), link[("pt", start)][0]
        seen.add(prev)
        while node[0] != "pt":
            seen.add(node)
            path.append(node)
            prev, node = node, step(prev, node)
        end = node[1]
        seen.add(node)
        partner[start - 1], partner[end - 1] = end, start
        chord = (min(start, end), max(start, end))
        walk = path if start < end else list(reversed(path))
        rank = 0
        for k in range(0, len(walk) - 1):
            u, v = walk[k], walk[k + 1]
            if u[0] == "x" and v[0] == "x" and u[1] == v[1] and u[1] >= first_carried:
                # traversing carried point u[1] from its end u[2] to v[2];
                # u[2] points back toward the new a end
                old = points[u[1]]
                left = "a" if old.left == u[2] else "b"
                passed[u[1]] = (chord, rank, left)
                rank += 1
    loops = 0
    for node in link:
        if node in seen:
            continue
        loops += 1
        prev, cur = None, node
        while cur not in seen:
            seen.add(cur)
            nxt = link[cur][0] if link[cur][0] != prev else link[cur][1]
            prev, cur = cur, nxt
    matching = DividingSet(d.n, tuple(partner), d.circles + loops, d.sign)
    out = []
    for i in range(first_carried, len(points)):
        if i not in passed:
            raise NotTransportable("carried crossing ended up on a closed component")
        chord, rank, left = passed[i]
        out.append(Crossing(chord, (rank + 1) / (len(points) + 1), left))
    return _Traced(matching, out)


# ---------------------------------------------------------------------------
# Public operations


def enumerate_equators(d: DividingSet) -> list[Equator]:
    """Injective length-3 paths in the face tree, one per unordered path."""
    if d.circles:
        raise ZeroObject("dividing set contains a closed component")
    tree = faces(d)
    out = []

    def extend(path_faces: list[int], path_chords: list[Chord]) -> None:
        if len(path_chords) == 3:
            if path_faces[0] < path_faces[-1]:
                out.append(Equator(tuple(path_faces), tuple(path_chords)))
            return
        for g, chord in tree.neighbours(path_faces[-1]):
            if g not in path_faces:
                extend(path_faces + [g], path_chords + [chord])

    for f in range(tree.size):
        extend([f], [])
    out.sort(key=lambda e: (e.faces, e.chords))
    return out


def enumerate_walks(d: DividingSet) -> list[Equator]:
    """Every length-3 walk with at most one backtrack, with turns for backtracks."""
    tree = faces(d)
    out = []

    def extend(path_faces: list[int], path_chords: list[Chord]) -> None:
        if len(path_chords) == 3:
            e = Equator(tuple(path_faces), tuple(path_chords))
            if e.is_essential():
                out.append(e)
            elif len(set(path_chords)) == 2 and (path_chords[0] == path_chords[1] or path_chords[1] == path_chords[2]):
                out.extend(Equator(e.faces, e.chords, t) for t in ("left", "right"))
            return
        for g, chord in tree.neighbours(path_faces[-1]):
            extend(path_faces + [g], path_chords + [chord])

    for f in range(tree.size):
        extend([f], [])
    return out


def surgery(d: DividingSet, e: Equator, pattern: str = "A") -> DividingSet:
    """Reglue ``d`` along ``e`` by the given pattern; circles are counted."""
    if d.circles:
        raise ZeroObject("dividing set contains a closed component")
    return _trace(d, [(equator_crossings(d, e), pattern)]).matching


def apply_bypass(d: DividingSet, e: Equator):
    """The bypass move along ``e``; ``ZERO`` if the result has a circle."""
    out = surgery(d, e, "A")
    return ZERO if out.circles else out


@dataclass(frozen=True)
class BypassTriangle:
    gamma0: DividingSet
    gamma1: DividingSet
    gamma2: DividingSet
    equator: Equator

    @property
    def objects(self) -> tuple[DividingSet, DividingSet, DividingSet]:
        return (self.gamma0, self.gamma1, self.gamma2)

    @property
    def maps(self) -> tuple[tuple[str, int, int], ...]:
        return (("theta_A", 0, 1), ("theta_B", 1, 2), ("theta_C", 2, 0))

    def to_json(self) -> dict:
        return {
            "equator": self.equator.to_json(),
            "objects": [g.to_json() for g in self.objects],
            "maps": [{"name": n, "src": s, "tgt": t} for n, s, t in self.maps],
        }


def bypass_triangle(d: DividingSet, e: Equator) -> BypassTriangle:
    if not e.is_essential():
        raise InvalidEquator("triangle needs an essential equator")
    crossings = equator_crossings(d, e)
    g = [_trace(d, [(crossings, p)]).matching for p in ("C", "A", "B")]
    return BypassTriangle(g[0], g[1], g[2], e)


def classify(d: DividingSet, e: Equator) -> Capping:
    if e.is_essential():
        return Capping.ESSENTIAL
    out = surgery(d, e, "A")
    if out.circles:
        return Capping.ZERO_CAPPED
    if out == d:
        return Capping.IDENTITY_CAPPED
    raise InvalidEquator(f"backtracking walk changed {d} into {out}")


# ---------------------------------------------------------------------------
# Disjointness and commutation


def _face_boundary_key(d: DividingSet, tree: FaceTree, face: int) -> dict[Chord, tuple[int, bool]]:
    """For each chord side of ``face``: its index in ccw order and whether it is run a->b."""
    m = 2 * d.n
    start = min(tree.gaps_of(face))
    out: dict[Chord, tuple[int, bool]] = {}
    g = start
    k = 0
    while True:
        p = g % m + 1
        q = d.partner[p - 1]
        chord = (min(p, q), max(p, q))
        out[chord] = (k, p == chord[0])
        k += 1
        g = q % m
        if g == start:
            break
    return out


def _segments(e: Equator, xs: Sequence[Crossing]) -> list[tuple[int, Crossing, Crossing]]:
    return [(e.faces[k + 1], xs[k], xs[k + 1]) for k in range(2)]


def _crosses(d: DividingSet, tree: FaceTree, face: int, s1, s2) -> bool:
    order = _face_boundary_key(d, tree, face)

    def coord(x: Crossing) -> tuple[int, float]:
        k, forward = order[x.chord]
        return (k, x.t if forward else 1 - x.t)

    p, q = sorted((coord(s1[0]), coord(s1[1])))
    r, s = coord(s2[0]), coord(s2[1])
    inside_r = p < r < q
    inside_s = p < s < q
    return inside_r != inside_s


def _realize_pair(d: DividingSet, e1: Equator, e2: Equator) -> tuple[list[Crossing], list[Crossing]] | None:
    """Crossing positions making ``e1`` and ``e2`` disjoint, if any exist."""
    tree = faces(d)
    x1 = equator_crossings(d, e1)
    x2 = equator_crossings(d, e2)
    shared = sorted({x.chord for x in x1} & {x.chord for x in x2})
    for choice in itertools.product((0, 1), repeat=len(shared)):
        a = list(x1)
        b = list(x2)
        for chord, c in zip(shared, choice):
            # squeeze one equator's points toward a, the other's toward b
            lo, hi = (a, b) if c == 0 else (b, a)
            for seq, lift in ((lo, 0.0), (hi, 0.5)):
                for k, x in enumerate(seq):
                    if x.chord == chord:
                        seq[k] = Crossing(x.chord, lift + x.t / 2, x.left)
        clash = False
        for f1, u1, v1 in _segments(e1, a):
            for f2, u2, v2 in _segments(e2, b):
                if f1 == f2 and _crosses(d, tree, f1, (u1, v1), (u2, v2)):
                    clash = True
        if not clash:
            return a, b
    return None


def are_disjoint(d: DividingSet, e1: Equator, e2: Equator) -> bool:
    """Whether the two equators can be drawn without meeting."""
    if {e1, e1.reversed()} & {e2}:
        return False
    return _realize_pair(d, e1, e2) is not None


def _transport(d: DividingSet, first: list[Crossing], second: list[Crossing]) -> tuple[DividingSet, list[Crossing]]:
    traced = _trace(d, [(first, "A")], carried=second)
    return traced.matching, traced.carried


def commute_check(d: DividingSet, e1: Equator, e2: Equator) -> bool:
    """Apply the two moves in both orders and compare the results."""
    realized = _realize_pair(d, e1, e2)
    if realized is None or {e1, e1.reversed()} & {e2}:
        raise NotTransportable("equators are not disjoint")
    x1, x2 = realized
    mid1, moved2 = _transport(d, x1, x2)
    mid2, moved1 = _transport(d, x2, x1)
    one = _trace(mid1, [(moved2, "A")]).matching
    two = _trace(mid2, [(moved1, "A")]).matching
    both = _trace(d, [(x1, "A"), (x2, "A")]).matching
    return one == two == both


def after_both(d: DividingSet, e1: Equator, e2: Equator) -> DividingSet:
    """Result of two disjoint moves (applied simultaneously)."""
    realized = _realize_pair(d, e1, e2)
    if realized is None:
        raise NotTransportable("equators are not disjoint")
    return _trace(d, [(realized[0], "A"), (realized[1], "A")]).matching


def dumps_equators(es: Iterable[Equator]) -> str:
    return json.dumps([e.to_json() for e in es], sort_keys=True)

"""Resolving disk dividing sets into twisted complexes of elementary generators.

The elementary generators come from the zig-zag diagram: labelling its
boundary trace ``1, 2, ...`` starting from segment ``Z_1`` puts the segments
on the odd gaps and the handle bands on the even gaps. The cocore of handle
``h`` joins the two even gaps crossed by its band; its intersection with a
matching is the number of chords separating those gaps, which is the length
of the corresponding path in the face tree.

A non-elementary matching ``d`` sits in a bypass triangle
``d -> A -> B -> d`` with ``A`` and ``B`` strictly simpler, so that
``d = cone(A -> B)``. Both are resolved recursively and the bypass map is
lifted to the unique nonzero homotopy class ``R(A) -> R(B)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .arcdiagram import trace, zigzag
from .bypass import BypassTriangle, Equator, bypass_triangle, enumerate_equators
from .dividing import DividingSet, FaceTree, ZeroObject, faces, ordered_gamma
from .quiver import Vertex
from .twisted import (
    TCMorphism,
    TwistedComplex,
    TwistedComplexError,
    cone,
    gaussian_eliminate,
    homology_classes,
    single,
)


class NonTermination(RuntimeError):
    pass


class AmbiguousLift(TwistedComplexError):
    pass


@dataclass(frozen=True)
class Cocore:
    p: int
    gap_pair: tuple[int, int]


def odd_handles(n: int) -> frozenset[int]:
    return frozenset(range(1, n, 2))


@lru_cache(maxsize=None)
def _zigzag_boundary(n: int) -> tuple[dict, tuple[Cocore, ...]]:
    z = zigzag(n)
    (comp,) = trace(z)
    labels: dict[tuple[str, int], int] = {}
    for k, line in enumerate(comp.lines):
        labels[("s", line)] = 2 * k + 1
        labels[("t", line)] = 2 * k + 2
    gaps: dict[int, list[int]] = {}
    for k, path in enumerate(comp.top_paths):
        gap = (2 * k + 2) % (2 * n)
        for h, _ in path:
            gaps.setdefault(h, []).append(gap)
    cocores = tuple(Cocore(h, tuple(sorted(gaps[h]))) for h in sorted(gaps))
    return labels, cocores


def cocores(n: int) -> tuple[Cocore, ...]:
    if n < 2:
        return ()
    return _zigzag_boundary(n)[1]


def boundary_labels(n: int) -> dict[tuple[str, int], int]:
    """Disk label of the start (``"s"``) and end (``"t"``) of each zig-zag segment."""
    return dict(_zigzag_boundary(n)[0])


def elementary_dividing_set(n: int, handles: Iterable[int]) -> DividingSet:
    """Boundary of the segments thickened together with the chosen handle cores.

    Segments lie in the positive region; the basepoint gap is not on a
    segment, so the basepoint region is negative.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    labels = boundary_labels(n)
    pairs = []
    circles = 0
    for comp in trace(zigzag(n), handles):
        if comp.is_closed_loop:
            circles += 1
            continue
        lines = comp.lines
        for k, i in enumerate(lines):
            nxt = lines[(k + 1) % len(lines)]
            pairs.append((labels[("t", i)], labels[("s", nxt)]))
    return DividingSet.from_pairs(n, pairs, circles, "-")


def mu_object(n: int, handles: Iterable[int]) -> Vertex:
    """Vertex of the quiver matching a handle subset: ``S = H xor odd handles``."""
    h = frozenset(handles)
    if not all(1 <= i < n for i in h):
        raise ValueError(f"handle outside 1..{n - 1}")
    return Vertex(n, h ^ odd_handles(n))


def mu_inverse(v: Vertex) -> frozenset[int]:
    return v.S ^ odd_handles(v.n)


@lru_cache(maxsize=None)
def _elementary_table(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    out = {}
    for r in range(n):
        for s in combinations(range(1, n), r):
            out[ordered_gamma(n, s).partner] = s
    return out


def is_elementary(d: DividingSet) -> frozenset[int] | None:
    """The subset ``S`` with ``d`` equal to the ordered-monomial matching ``e_S``."""
    if d.circles:
        return None
    s = _elementary_table(d.n).get(d.partner)
    return None if s is None else frozenset(s)


def _separates(d: DividingSet, g1: int, g2: int) -> int:
    return sum(1 for a, b in d.pairs if (a <= g1 < b) != (a <= g2 < b))


def cocore_intersections(d: DividingSet) -> list[int]:
    if d.circles:
        raise ZeroObject("dividing set contains a closed component")
    return [_separates(d, *c.gap_pair) for c in cocores(d.n)]


def _measure(d: DividingSet) -> int:
    return sum(cocore_intersections(d))


def _tree_path(tree: FaceTree, f: int, g: int) -> list[tuple[int, tuple[int, int], int]]:
    back: dict[int, tuple[int, tuple[int, int]] | None] = {f: None}
    queue = [f]
    while queue:
        x = queue.pop(0)
        for y, c in tree.neighbours(x):
            if y not in back:
                back[y] = (x, c)
                queue.append(y)
    steps = []
    x = g
    while back[x] is not None:
        prev, chord = back[x]
        steps.append((prev, chord, x))
        x = prev
    return steps[::-1]


def parallel_equators(d: DividingSet, c: Cocore) -> list[Equator]:
    """Equators running alongside the cocore: length-3 windows of its face path."""
    tree = faces(d)
    steps = _tree_path(tree, tree.face_of_gap[c.gap_pair[0]], tree.face_of_gap[c.gap_pair[1]])
    out = []
    for s in range(len(steps) - 2):
        window = steps[s : s + 3]
        fs = (window[0][0], window[0][2], window[1][2], window[2][2])
        out.append(Equator(fs, tuple(w[1] for w in window)))
    return out


@dataclass(frozen=True)
class LogEntry:
    matching: DividingSet
    equator: Equator
    phase: int
    gamma1: DividingSet
    gamma2: DividingSet

    def to_json(self) -> dict:
        return {
            "matching": self.matching.to_json(),
            "equator": self.equator.to_json(),
            "phase": self.phase,
            "terms": [self.gamma1.to_json(), self.gamma2.to_json()],
        }


@dataclass(frozen=True)
class Resolution:
    input: DividingSet
    complex: TwistedComplex
    log: tuple[LogEntry, ...] = field(default=())

    def minimal(self) -> TwistedComplex:
        return gaussian_eliminate(self.complex)

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["input"] = self.input.to_json()
        out["log"] = [e.to_json() for e in self.log]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _legal(d: DividingSet, e: Equator, bound: int, c: Cocore | None = None) -> BypassTriangle | None:
    t = bypass_triangle(d, e)
    for g in (t.gamma1, t.gamma2):
        if g.circles or _measure(g) >= bound:
            return None
        if c is not None and _separates(g, *c.gap_pair) >= _separates(d, *c.gap_pair):
            return None
    return t


def choose_triangle(d: DividingSet, strategy: str = "canonical", rng: random.Random | None = None) -> tuple[BypassTriangle, int]:
    """Pick the triangle used to split ``d``; returns it with its phase (1 or 2).

    ``canonical``: the first legal equator parallel to the lowest cocore
    meeting ``d`` more than twice, otherwise the first legal equator.
    ``last`` and ``random`` pick other legal equators; they exist to show the
    result does not depend on the choice.
    """
    bound = _measure(d)
    counts = cocore_intersections(d)
    heavy = [c for c, k in zip(cocores(d.n), counts) if k > 2]
    if heavy:
        phase = 1
        c = heavy[0]
        candidates = [t for e in parallel_equators(d, c) if (t := _legal(d, e, bound, c)) is not None]
    else:
        phase = 2
        candidates = [t for e in enumerate_equators(d) if (t := _legal(d, e, bound)) is not None]
    if not candidates:
        raise NonTermination(f"no simplifying bypass triangle for {d}")
    if strategy == "canonical":
        return candidates[0], phase
    if strategy == "last":
        return candidates[-1], phase
    if strategy == "random":
        return (rng or random.Random(0)).choice(candidates), phase
    raise ValueError(f"unknown strategy {strategy!r}")


def lift(x: TwistedComplex, y: TwistedComplex) -> TCMorphism:
    """The unique nonzero homotopy class ``x -> y``, as its canonical representative."""
    classes = [c for c in homology_classes(x, y, limit=8) if c.f]
    if len(classes) != 1:
        raise AmbiguousLift(f"{len(classes)} nonzero classes available for a bypass lift")
    return classes[0]


def resolve(d: DividingSet, strategy: str = "canonical", seed: int = 0) -> Resolution:
    if d.circles:
        return Resolution(d, TwistedComplex((), frozenset()))
    rng = random.Random(seed)
    log: list[LogEntry] = []
    memo: dict[DividingSet, TwistedComplex] = {}

    def go(g: DividingSet) -> TwistedComplex:
        if g in memo:
            return memo[g]
        s = is_elementary(g)
        if s is not None:
            out = single(Vertex(g.n, s))
        else:
            t, phase = choose_triangle(g, strategy, rng)
            log.append(LogEntry(g, t.equator, phase, t.gamma1, t.gamma2))
            out = cone(lift(go(t.gamma1), go(t.gamma2)))
        memo[g] = out
        return out

    return Resolution(d, go(d.with_sign("+")), tuple(log))


def k0_class(r: Resolution | TwistedComplex) -> dict[tuple[int, ...], int]:
    """Object multiplicities mod 2, keyed by sorted subset."""
    x = r.complex if isinstance(r, Resolution) else r
    out: dict[tuple[int, ...], int] = {}
    for v in x.objects:
        out[v.key] = out.get(v.key, 0) ^ 1
    return {k: 1 for k in sorted(out) if out[k]}


def k0_from_log(r: Resolution) -> dict[tuple[int, ...], int]:
    """Independent bookkeeping: ``[d] = [A] + [B]`` along the triangle log."""
    split = {e.matching: (e.gamma1, e.gamma2) for e in r.log}

    def cls(g: DividingSet) -> dict[tuple[int, ...], int]:
        if g.circles:
            return {}
        s = is_elementary(g)
        if s is not None:
            return {tuple(sorted(s)): 1}
        a, b = split[g]
        out = dict(cls(a))
        for k, v in cls(b).items():
            out[k] = out.get(k, 0) ^ v
        return {k: 1 for k in sorted(out) if out[k]}

    return cls(r.input.with_sign("+"))

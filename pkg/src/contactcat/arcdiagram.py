"""Arc diagrams, the surfaces they describe, and quiver presentations.

A diagram is a list of oriented line segments carrying points, plus a
matching that pairs the points into 1-handles. The surface is built by
thickening each segment to a rectangle (the segment itself on the boundary)
and attaching an untwisted band along the opposite edge for every handle.

Boundary tracing: after running along a segment, the boundary climbs the
right end of its rectangle and runs leftwards along the top edge. Reaching a
handle foot it crosses the band and continues leftwards from the mate point;
reaching the left end it drops onto the next segment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class ArcDiagramError(ValueError):
    pass


class Degenerate(ArcDiagramError):
    def __init__(self, handles: Sequence[int]) -> None:
        super().__init__(f"surgery leaves a closed component through handles {sorted(set(handles))}")
        self.handles = tuple(sorted(set(handles)))


class UnsupportedFamily(ArcDiagramError):
    pass


@dataclass(frozen=True)
class ArcDiagram:
    """Segments as point-name tuples in orientation order; ``matching[h-1]`` is handle ``h``."""

    lines: tuple[tuple[str, ...], ...]
    matching: tuple[tuple[str, str], ...]
    family: str = ""
    param: int = 0
    _where: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _handle: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        where = {}
        for i, line in enumerate(self.lines):
            for j, p in enumerate(line):
                if p in where:
                    raise ArcDiagramError(f"point {p} appears twice")
                where[p] = (i, j)
        handle = {}
        for h, (p, q) in enumerate(self.matching, start=1):
            for x in (p, q):
                if x not in where:
                    raise ArcDiagramError(f"matched point {x} is not on any segment")
                if x in handle:
                    raise ArcDiagramError(f"point {x} matched twice")
                handle[x] = h
            if p == q:
                raise ArcDiagramError(f"point {p} matched with itself")
        missing = set(where) - set(handle)
        if missing:
            raise ArcDiagramError(f"unmatched points {sorted(missing)}")
        self._where.update(where)
        self._handle.update(handle)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @property
    def num_handles(self) -> int:
        return len(self.matching)

    @property
    def points(self) -> list[str]:
        """All points in the total order (segment order, then position)."""
        return [p for line in self.lines for p in line]

    def position(self, p: str) -> tuple[int, int]:
        return self._where[p]

    def handle_of(self, p: str) -> int:
        return self._handle[p]

    def mate(self, p: str) -> str:
        a, b = self.matching[self._handle[p] - 1]
        return b if p == a else a

    # text format -------------------------------------------------------

    def to_text(self) -> str:
        segs = " ; ".join(f"Z{i + 1}: " + " ".join(line) for i, line in enumerate(self.lines))
        matches = "; ".join(f"match {p} {q}" for p, q in self.matching)
        return segs + "\n" + matches

    def to_json(self) -> dict:
        return {
            "lines": [list(line) for line in self.lines],
            "matching": [list(m) for m in self.matching],
            "family": self.family,
            "param": self.param,
        }


def parse(text: str) -> ArcDiagram:
    """Read ``"Z1: a1 b1 a1' ; Z2: b1'"`` plus ``"match a1 a1'; match b1 b1'"``."""
    lines: list[tuple[str, ...]] = []
    matching: list[tuple[str, str]] = []
    for chunk in re.split(r"[;\n]", text):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.startswith("match"):
            toks = chunk.split()[1:]
            if len(toks) != 2:
                raise ArcDiagramError(f"bad match clause {chunk!r}")
            matching.append((toks[0], toks[1]))
            continue
        m = re.fullmatch(r"Z(\d+)\s*:\s*(.*)", chunk)
        if not m:
            raise ArcDiagramError(f"cannot parse {chunk!r}")
        if int(m.group(1)) != len(lines) + 1:
            raise ArcDiagramError(f"segments must be numbered in order, got Z{m.group(1)}")
        lines.append(tuple(m.group(2).split()))
    return ArcDiagram(tuple(lines), tuple(matching))


# ---------------------------------------------------------------------------
# Boundary tracing


@dataclass(frozen=True)
class BoundaryComponent:
    """Lines met in boundary order, and per top path the handle crossings made."""

    lines: tuple[int, ...]
    top_paths: tuple[tuple[tuple[int, str], ...], ...]  # after lines[k]: (handle, foot point) list

    @property
    def is_closed_loop(self) -> bool:
        return not self.lines


def trace(z: ArcDiagram, handles: Iterable[int] | None = None) -> list[BoundaryComponent]:
    """Boundary of the thickened segments with the chosen handles attached.

    Components that meet no segment are closed loops (degenerate surgery or,
    for partial handle sets, closed dividing curves).
    """
    active = set(range(1, z.num_handles + 1)) if handles is None else set(handles)
    # interval (i, j): top edge of segment i between point j-1 and point j (j = 0..len)
    seen: set[tuple[int, int]] = set()
    comps: list[BoundaryComponent] = []

    def run_from(i: int, j: int) -> tuple[list, int | None]:
        """Walk leftwards starting in interval (i, j) until a left end; return crossings and that segment."""
        crossings = []
        while True:
            if (i, j) in seen:
                return crossings, None
            seen.add((i, j))
            if j == 0:
                return crossings, i
            p = z.lines[i][j - 1]
            h = z.handle_of(p)
            if h in active:
                crossings.append((h, p))
                i, jj = z.position(z.mate(p))
                j = jj
            else:
                j -= 1

    for start in range(z.num_lines):
        if (start, len(z.lines[start])) in seen:
            continue
        lines_met: list[int] = []
        paths = []
        i = start
        while True:
            lines_met.append(i)
            crossings, landed = run_from(i, len(z.lines[i]))
            paths.append(tuple(crossings))
            if landed is None:
                raise ArcDiagramError("inconsistent boundary trace")
            if landed == start:
                break
            i = landed
        comps.append(BoundaryComponent(tuple(lines_met), tuple(paths)))
    for i, line in enumerate(z.lines):
        for j in range(len(line) + 1):
            if (i, j) in seen:
                continue
            crossings, landed = run_from(i, j)
            comps.append(BoundaryComponent((), (tuple(crossings),)))
    return comps


def validate(z: ArcDiagram) -> None:
    """Raise :class:`Degenerate` if full surgery leaves a closed component."""
    for comp in trace(z):
        if comp.is_closed_loop:
            raise Degenerate([h for h, _ in comp.top_paths[0]])


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_char: int
    boundary_components: int
    genus: int
    marked_points: int

    def to_json(self) -> dict:
        return {
            "euler_char": self.euler_char,
            "boundary_components": self.boundary_components,
            "genus": self.genus,
            "marked_points": self.marked_points,
        }


def surface_invariants(z: ArcDiagram) -> SurfaceInvariants:
    validate(z)
    chi = z.num_lines - z.num_handles
    b = len(trace(z))
    twice_genus = 2 - chi - b
    if twice_genus < 0 or twice_genus % 2:
        raise ArcDiagramError(f"inconsistent invariants chi={chi}, b={b}")
    return SurfaceInvariants(chi, b, twice_genus // 2, 2 * z.num_lines)


# ---------------------------------------------------------------------------
# Families


def zigzag(n: int) -> ArcDiagram:
    """The zig-zag diagram for the disk with ``2n`` marked points.

    Handle ``h_k`` matches ``a_k`` with ``a_k'``.
    """
    if n < 1:
        raise ArcDiagramError("zigzag needs n >= 1")
    if n == 1:
        return ArcDiagram(((),), (), "zigzag", 1)
    lines: list[list[str]] = [["a1"], ["a1'"]]
    for m in range(3, n + 1):
        k = m - 1
        if m % 2:
            lines.append([f"a{k}"])
            line = lines[m - 2]
            line.insert(line.index(f"a{k - 1}'"), f"a{k}'")
        else:
            lines.append([f"a{k}'"])
            line = lines[m - 2]
            line.insert(line.index(f"a{k - 1}") + 1, f"a{k}")
    matching = tuple((f"a{k}", f"a{k}'") for k in range(1, n))
    return ArcDiagram(tuple(tuple(l) for l in lines), matching, "zigzag", n)


def punctured_sphere(n: int) -> ArcDiagram:
    """Genus zero with ``n`` boundary circles; handles ``2k-1`` (a) and ``2k`` (b)."""
    if n < 1:
        raise ArcDiagramError("punctured_sphere needs n >= 1")
    first = []
    for k in range(1, n):
        first += [f"a{k}", f"b{k}", f"a{k}'"]
    lines = [tuple(first)] + [(f"b{k}'",) for k in range(1, n)]
    matching = []
    for k in range(1, n):
        matching += [(f"a{k}", f"a{k}'"), (f"b{k}", f"b{k}'")]
    return ArcDiagram(tuple(lines), tuple(matching), "sphere", n)


def genus_surface(g: int) -> ArcDiagram:
    """Genus ``g`` with one boundary circle; handles ``2k-1`` (a) and ``2k`` (b)."""
    if g < 1:
        raise ArcDiagramError("genus_surface needs g >= 1")
    word = []
    matching = []
    for k in range(1, g + 1):
        word += [f"a{k}", f"b{k}", f"a{k}'", f"b{k}'"]
        matching += [(f"a{k}", f"a{k}'"), (f"b{k}", f"b{k}'")]
    return ArcDiagram((tuple(word),), tuple(matching), "genus", g)


def family(name: str, value: int) -> ArcDiagram:
    builders = {"zigzag": zigzag, "sphere": punctured_sphere, "genus": genus_surface}
    if name not in builders:
        raise UnsupportedFamily(f"unknown family {name!r}")
    return builders[name](value)


# ---------------------------------------------------------------------------
# Elementary dividing sets


def elementary_euler(z: ArcDiagram, subset: Iterable[int]) -> int:
    """Euler number of the elementary dividing set on a handle subset.

    The positive region (segments plus chosen handle cores) has Euler
    characteristic ``l - |C|``; the dividing set has ``l`` arcs, so the
    negative region has ``chi(F) - (l - |C|) + l``.
    """
    c = len(set(subset))
    chi_plus = z.num_lines - c
    chi_minus = (z.num_lines - z.num_handles) - chi_plus + z.num_lines
    return chi_plus - chi_minus


def elementary_subsets(z: ArcDiagram) -> list[tuple[tuple[int, ...], int]]:
    """Every handle subset with its Euler number, by size then lexicographically."""
    handles = range(1, z.num_handles + 1)
    return [(c, elementary_euler(z, c)) for r in range(z.num_handles + 1) for c in combinations(handles, r)]


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class QuiverPresentation:
    """Objects, named arrows and relations.

    A relation is ``(lhs, rhs)`` where each side is a path given as a tuple
    of arrow names in order of application; ``rhs`` is ``None`` for a zero
    relation.
    """

    objects: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[tuple[str, ...], tuple[str, ...] | None], ...]

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def check(self) -> None:
        names = {a[0]: a for a in self.arrows}
        objs = set(self.objects)
        for name, src, tgt in self.arrows:
            if src not in objs or tgt not in objs:
                raise ArcDiagramError(f"arrow {name} has unknown endpoint")
        for lhs, rhs in self.relations:
            ends = []
            for path in (lhs, rhs):
                if path is None:
                    continue
                for a, b in zip(path, path[1:]):
                    if names[a][2] != names[b][1]:
                        raise ArcDiagramError(f"relation path {path} does not compose")
                ends.append((names[path[0]][1], names[path[-1]][2]))
            if len(set(ends)) > 1:
                raise ArcDiagramError(f"relation sides {lhs} and {rhs} have different endpoints")

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "arrows": [{"name": n, "src": s, "tgt": t} for n, s, t in self.arrows],
            "relations": [
                {"lhs": list(l), "rhs": None if r is None else list(r)} for l, r in self.relations
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph presentation {"]
        for o in self.objects:
            lines.append(f'  "{o}";')
        for n, s, t in self.arrows:
            lines.append(f'  "{s}" -> "{t}" [label="{n}"];')
        lines.append("}")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def handle_set_name(subset: Iterable[int]) -> str:
    s = sorted(subset)
    return "".join(f"h{k}" for k in s) or "0"


def reeb_chords(z: ArcDiagram) -> list[tuple[int, int]]:
    """Basic chords ``(i, j)``: on a segment carrying exactly two points,
    one from the handle of the later point to the handle of the earlier one."""
    out = []
    for line in z.lines:
        if len(line) == 2:
            earlier, later = line
            out.append((z.handle_of(later), z.handle_of(earlier)))
    return sorted(out)


def _zigzag_presentation(z: ArcDiagram) -> QuiverPresentation:
    k = z.num_handles
    subsets = [frozenset(c) for r in range(k + 1) for c in combinations(range(1, k + 1), r)]
    objects = tuple(handle_set_name(s) for s in subsets)
    chords = reeb_chords(z)
    arrows = []
    moves: dict[tuple[frozenset, tuple[int, int]], frozenset] = {}
    for s in subsets:
        for i, j in chords:
            if i in s and j not in s:
                t = (s - {i}) | {j}
                moves[(s, (i, j))] = t
                arrows.append((f"rho{i},{j}@{handle_set_name(s)}", handle_set_name(s), handle_set_name(t)))
    relations = []
    for s in subsets:
        for c1, c2 in combinations(chords, 2):
            if (s, c1) in moves and (s, c2) in moves:
                u, v = moves[(s, c1)], moves[(s, c2)]
                if (u, c2) in moves and (v, c1) in moves and moves[(u, c2)] == moves[(v, c1)]:
                    name = lambda src, c: f"rho{c[0]},{c[1]}@{handle_set_name(src)}"
                    relations.append(((name(s, c1), name(u, c2)), (name(s, c2), name(v, c1))))
    return QuiverPresentation(objects, tuple(arrows), tuple(relations))


def _sphere_presentation(n: int) -> QuiverPresentation:
    objects = []
    arrows = []
    relations: list = []
    for k in range(1, n):
        objects += [f"I{k}", f"J{k}"]
        arrows += [(f"alpha{k}", f"I{k}", f"J{k}"), (f"gamma{k}", f"J{k}", f"I{k}")]
        # alpha after gamma vanishes on J_k
        relations.append(((f"gamma{k}", f"alpha{k}"), None))
    for k in range(1, n - 1):
        arrows.append((f"nu{k},{k + 1}", f"I{k}", f"I{k + 1}"))
    for k in range(1, n - 2):
        relations.append(((f"nu{k},{k + 1}", f"nu{k + 1},{k + 2}"), None))
    return QuiverPresentation(tuple(objects), tuple(arrows), tuple(relations))


def _genus_presentation(g: int) -> QuiverPresentation:
    objects = []
    arrows = []
    relations: list = []
    for k in range(1, g + 1):
        objects += [f"I{k}", f"J{k}"]
        arrows += [
            (f"alpha{k}", f"I{k}", f"J{k}"),
            (f"beta{k}", f"I{k}", f"J{k}"),
            (f"gamma{k}", f"J{k}", f"I{k}"),
        ]
        relations.append(((f"gamma{k}", f"alpha{k}"), None))
        relations.append(((f"beta{k}", f"gamma{k}"), None))
    for k in range(1, g):
        # typed J_k -> I_{k+1} so that the stated composites are well formed
        arrows.append((f"eta{k},{k + 1}", f"J{k}", f"I{k + 1}"))
        relations.append(((f"alpha{k}", f"eta{k},{k + 1}"), None))
        relations.append(((f"eta{k},{k + 1}", f"beta{k + 1}"), None))
    return QuiverPresentation(tuple(objects), tuple(arrows), tuple(relations))


def presentation(z: ArcDiagram) -> QuiverPresentation:
    if z.family == "zigzag" and z == zigzag(z.param):
        pres = _zigzag_presentation(z)
    elif z.family == "sphere" and z.param >= 2 and z == punctured_sphere(z.param):
        pres = _sphere_presentation(z.param)
    elif z.family == "genus" and z == genus_surface(z.param):
        pres = _genus_presentation(z.param)
    else:
        raise UnsupportedFamily("presentations exist only for the zigzag, sphere and genus families")
    pres.check()
    return pres

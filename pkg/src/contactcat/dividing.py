"""Dividing sets on the marked disk and the nil-Temperley-Lieb calculus.

Boundary points are labelled ``1..2n`` counterclockwise with the basepoint in
the gap between ``2n`` and ``1``. Gap ``g`` (``0 <= g < 2n``) is the boundary
interval between points ``g`` and ``g + 1``; gap 0 holds the basepoint.

A dividing set with no closed components is a non-crossing perfect matching
of the boundary points. Closed components carry no position data: on the disk
any circle makes the object contractible, so only their number is kept.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence


class ZeroObject(ValueError):
    """Raised when an operation needs a circle-free dividing set."""


class _Zero:
    """The zero object / zero monomial."""

    _instance: "_Zero | None" = None

    def __new__(cls) -> "_Zero":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __bool__(self) -> bool:
        return False


ZERO = _Zero()


def _flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


@dataclass(frozen=True)
class DividingSet:
    """Non-crossing matching on ``2n`` boundary points plus a circle count.

    ``partner[i - 1]`` is the point matched with point ``i``. ``sign`` is the
    sign of the region containing the basepoint.
    """

    n: int
    partner: tuple[int, ...]
    circles: int = 0
    sign: str = "+"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need n >= 1")
        if len(self.partner) != 2 * self.n:
            raise ValueError("partner table must have 2n entries")
        if self.sign not in ("+", "-"):
            raise ValueError(f"bad sign {self.sign!r}")
        if self.circles < 0:
            raise ValueError("negative circle count")
        for i, j in enumerate(self.partner, start=1):
            if not 1 <= j <= 2 * self.n or j == i or self.partner[j - 1] != i:
                raise ValueError(f"not a fixed-point-free involution at {i}")
        for a, b in self.pairs:
            for c, d in self.pairs:
                if a < c < b < d:
                    raise ValueError(f"chords ({a},{b}) and ({c},{d}) cross")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]], circles: int = 0, sign: str = "+") -> "DividingSet":
        partner = [0] * (2 * n)
        for a, b in pairs:
            for x in (a, b):
                if not 1 <= x <= 2 * n:
                    raise ValueError(f"point {x} out of range for n={n}")
                if partner[x - 1]:
                    raise ValueError(f"point {x} used twice")
            partner[a - 1] = b
            partner[b - 1] = a
        if 0 in partner:
            raise ValueError("matching does not cover every point")
        return cls(n, tuple(partner), circles, sign)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Chords as ``(a, b)`` with ``a < b``, sorted by ``a``."""
        return tuple((i, j) for i, j in enumerate(self.partner, start=1) if i < j)

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs], "circles": self.circles, "sign": self.sign}

    @classmethod
    def from_json(cls, obj: dict) -> "DividingSet":
        return cls.from_pairs(obj["n"], obj["pairs"], obj.get("circles", 0), obj.get("sign", "+"))

    def with_sign(self, sign: str) -> "DividingSet":
        return DividingSet(self.n, self.partner, self.circles, sign)

    def __str__(self) -> str:
        body = " ".join(f"{a},{b}" for a, b in self.pairs)
        extra = f" +{self.circles}O" if self.circles else ""
        return f"[{self.sign}] {body}{extra}"


def enumerate_matchings(n: int) -> list[DividingSet]:
    """All circle-free non-crossing matchings on ``2n`` points, sign ``+``."""
    if n < 1:
        raise ValueError("need n >= 1")

    @lru_cache(maxsize=None)
    def build(lo: int, hi: int) -> tuple[tuple[tuple[int, int], ...], ...]:
        # matchings of the points lo..hi inclusive
        if lo > hi:
            return ((),)
        out = []
        for mate in range(lo + 1, hi + 1, 2):
            for inner in build(lo + 1, mate - 1):
                for outer in build(mate + 1, hi):
                    out.append(((lo, mate),) + inner + outer)
        return tuple(out)

    result = [DividingSet.from_pairs(n, pairs) for pairs in build(1, 2 * n)]
    result.sort(key=lambda d: d.pairs)
    return result


# ---------------------------------------------------------------------------
# Faces


@dataclass(frozen=True)
class FaceTree:
    """Regions of a disk cut along the chords of a matching.

    Face 0 contains the basepoint. Faces are numbered by the smallest gap they
    contain. ``edges`` lists ``(f, g, chord)`` with ``f < g``.
    """

    n: int
    face_of_gap: tuple[int, ...]
    signs: tuple[str, ...]
    edges: tuple[tuple[int, int, tuple[int, int]], ...]
    basepoint_face: int = 0
    adjacency: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def size(self) -> int:
        return len(self.signs)

    def neighbours(self, f: int) -> list[tuple[int, tuple[int, int]]]:
        return self.adjacency[f]

    def chord_faces(self, chord: tuple[int, int]) -> tuple[int, int]:
        """``(inside, outside)`` faces of a chord ``(a, b)``, ``a < b``."""
        a, b = chord
        return self.face_of_gap[a], self.face_of_gap[a - 1]

    def gaps_of(self, f: int) -> list[int]:
        return [g for g, h in enumerate(self.face_of_gap) if h == f]

    def to_dot(self) -> str:
        lines = ["graph faces {"]
        for f, s in enumerate(self.signs):
            lines.append(f'  f{f} [label="f{f} {s}"];')
        for f, g, (a, b) in self.edges:
            lines.append(f'  f{f} -- f{g} [label="{a},{b}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "faces": [{"id": f, "sign": s, "gaps": self.gaps_of(f)} for f, s in enumerate(self.signs)],
            "edges": [{"faces": [f, g], "chord": list(c)} for f, g, c in self.edges],
            "basepoint_face": self.basepoint_face,
        }


def faces(d: DividingSet) -> FaceTree:
    if d.circles:
        raise ZeroObject("dividing set contains a closed component")
    m = 2 * d.n
    # gap g continues, past point g + 1 and its chord, into the gap after the partner
    raw = [-1] * m
    count = 0
    for start in range(m):
        if raw[start] >= 0:
            continue
        g = start
        while raw[g] < 0:
            raw[g] = count
            g = d.partner[g] % m  # partner of point g + 1
        count += 1
    face_of_gap = tuple(raw)
    edges = []
    adjacency: dict[int, list] = {f: [] for f in range(count)}
    for a, b in d.pairs:
        inside, outside = face_of_gap[a], face_of_gap[a - 1]
        f, g = sorted((inside, outside))
        edges.append((f, g, (a, b)))
        adjacency[inside].append((outside, (a, b)))
        adjacency[outside].append((inside, (a, b)))
    for f in adjacency:
        adjacency[f].sort()
    signs = [""] * count
    signs[0] = d.sign
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g, _ in adjacency[f]:
            if not signs[g]:
                signs[g] = _flip(signs[f])
                queue.append(g)
    return FaceTree(d.n, face_of_gap, tuple(signs), tuple(sorted(edges)), 0, adjacency)


def euler_number(d: DividingSet) -> int:
    """Euler characteristic of the positive region minus that of the negative one.

    Every region of a disk cut along disjoint chords is a disk, so this is
    the number of positive faces minus the number of negative faces.
    """
    tree = faces(d)
    return sum(1 if s == "+" else -1 for s in tree.signs)


def dual(d: DividingSet) -> DividingSet:
    return d.with_sign(_flip(d.sign))


def mirror(d: DividingSet) -> DividingSet:
    """Orientation reversal fixing the basepoint: ``i -> 2n + 1 - i``."""
    m = 2 * d.n
    partner = [0] * m
    for i, j in enumerate(d.partner, start=1):
        partner[m - i] = m + 1 - j
    return DividingSet(d.n, tuple(partner), d.circles, d.sign)


def rotate(d: DividingSet) -> DividingSet:
    """Move the basepoint across point 1: ``i -> i - 1`` cyclically.

    The basepoint enters the neighbouring region, so its sign flips.
    """
    m = 2 * d.n
    partner = [0] * m
    for i, j in enumerate(d.partner, start=1):
        partner[(i - 2) % m] = (j - 2) % m + 1
    return DividingSet(d.n, tuple(partner), d.circles, _flip(d.sign))


def normalize(d: DividingSet) -> DividingSet | _Zero:
    return ZERO if d.circles else d


# ---------------------------------------------------------------------------
# nil-Temperley-Lieb monomials
#
# A diagram on the strip has left endpoints l_1..l_n (ids 0..n-1) and right
# endpoints r_1..r_n (ids n..2n-1). In a word w_1 w_2 ... w_k the letter w_1
# sits next to the left side.


Diagram = tuple[int, ...]  # involution on 0..2n-1


def _identity_diagram(n: int) -> Diagram:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _generator_diagram(n: int, i: int) -> Diagram:
    if not 1 <= i < n:
        raise ValueError(f"generator e_{i} out of range for n={n}")
    p = list(_identity_diagram(n))
    a, b = i - 1, i
    p[a], p[b] = b, a
    p[n + a], p[n + b] = n + b, n + a
    return tuple(p)


def _compose(n: int, left: Diagram, right: Diagram) -> tuple[Diagram, int]:
    """Stack ``left`` then ``right``; return the diagram and the loop count."""
    # ids: left diagram points 0..2n-1, right diagram points 2n..4n-1;
    # left's right side (n..2n-1) is glued to right's left side (2n..3n-1).
    def across(x: int) -> int:
        # glued middle point: jump to the other diagram's copy
        if n <= x < 2 * n:
            return x + n
        return x - n

    def inside(x: int) -> int:
        if x < 2 * n:
            return left[x]
        return right[x - 2 * n] + 2 * n

    def is_outer(x: int) -> bool:
        return x < n or x >= 3 * n

    result = [0] * (2 * n)
    seen_mid = set()
    outer = list(range(n)) + list(range(3 * n, 4 * n))
    for start in outer:
        x = inside(start)
        while not is_outer(x):
            seen_mid.add(x)
            y = across(x)
            seen_mid.add(y)
            x = inside(y)
        s = start if start < n else start - 2 * n
        t = x if x < n else x - 2 * n
        result[s] = t
    loops = 0
    for start in range(n, 3 * n):
        if start in seen_mid:
            continue
        loops += 1
        x = start
        while True:
            seen_mid.add(x)
            y = inside(x)
            seen_mid.add(y)
            x = across(y)
            if x == start:
                break
    return tuple(result), loops


def word_diagram(n: int, word: Sequence[int]) -> tuple[Diagram, int]:
    """Diagram of a word and the number of closed loops produced."""
    diag = _identity_diagram(n)
    loops = 0
    for i in word:
        diag, extra = _compose(n, diag, _generator_diagram(n, i))
        loops += extra
    return diag, loops


@lru_cache(maxsize=None)
def _normal_forms(n: int) -> dict[Diagram, tuple[int, ...]]:
    """Lexicographically least shortest loop-free word for every diagram."""
    start = _identity_diagram(n)
    forms: dict[Diagram, tuple[int, ...]] = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for diag in frontier:
            word = forms[diag]
            for i in range(1, n):
                new, loops = _compose(n, diag, _generator_diagram(n, i))
                if loops or new in forms:
                    continue
                forms[new] = word + (i,)
                nxt.append(new)
        nxt.sort(key=lambda dg: forms[dg])
        frontier = nxt
    return forms


@dataclass(frozen=True)
class NilTLMonomial:
    """Monomial ``e_{w_1} ... e_{w_k}``; the empty word is the unit."""

    n: int
    word: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for i in self.word:
            if not 1 <= i < self.n:
                raise ValueError(f"generator e_{i} out of range for n={self.n}")

    @classmethod
    def ordered(cls, n: int, subset: Iterable[int]) -> "NilTLMonomial":
        """The ordered monomial ``e_S`` (increasing indices)."""
        return cls(n, tuple(sorted(subset)))

    def diagram(self) -> tuple[Diagram, int]:
        return word_diagram(self.n, self.word)

    def reduced(self) -> "NilTLMonomial | _Zero":
        diag, loops = self.diagram()
        if loops:
            return ZERO
        return NilTLMonomial(self.n, _normal_forms(self.n)[diag])

    def __str__(self) -> str:
        return "".join(f"e{i}" for i in self.word) or "1"


def multiply(a: NilTLMonomial, b: NilTLMonomial) -> NilTLMonomial | _Zero:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return NilTLMonomial(a.n, a.word + b.word).reduced()


def reduced_monomials(n: int) -> list[NilTLMonomial]:
    """One normal-form monomial per nonzero basis element, by word order."""
    words = sorted(_normal_forms(n).values(), key=lambda w: (len(w), w))
    return [NilTLMonomial(n, w) for w in words]


def _strip_label(n: int, x: int) -> int:
    # l_j -> j, r_j -> 2n + 1 - j
    return x + 1 if x < n else 2 * n - (x - n)


def gamma_of_monomial(w: NilTLMonomial) -> DividingSet:
    """The multicurve of a monomial, as a positive dividing set on the disk.

    Loops formed while stacking are recorded in ``circles``.
    """
    diag, loops = w.diagram()
    n = w.n
    partner = [0] * (2 * n)
    for x, y in enumerate(diag):
        partner[_strip_label(n, x) - 1] = _strip_label(n, y)
    return DividingSet(n, tuple(partner), loops, "+")


def ordered_gamma(n: int, subset: Iterable[int]) -> DividingSet:
    """``gamma(e_S)`` for the ordered monomial on ``subset``."""
    return gamma_of_monomial(NilTLMonomial.ordered(n, subset))


def catalan(n: int) -> int:
    """Catalan numbers by the convolution recurrence."""
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[n]

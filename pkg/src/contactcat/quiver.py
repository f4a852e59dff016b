"""Tian's quiver on ordered monomials and the disk category it presents.

Vertices are subsets ``S`` of ``{1, ..., n-1}`` (the ordered monomial
``e_S``); an arrow ``theta_p: e_S -> e_T`` adjoins a disjoint pair
``{p, p+1}``. Modulo commuting squares every hom space has dimension at most
one, so a morphism is just its endpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable


class NotComposable(ValueError):
    pass


def _fmt(subset: Iterable[int]) -> str:
    s = sorted(subset)
    return "{" + ",".join(map(str, s)) + "}"


@dataclass(frozen=True, order=True)
class Vertex:
    n: int
    S: frozenset[int]

    def __post_init__(self) -> None:
        if not all(1 <= i < self.n for i in self.S):
            raise ValueError(f"subset {_fmt(self.S)} not inside 1..{self.n - 1}")

    @classmethod
    def of(cls, n: int, subset: Iterable[int] = ()) -> "Vertex":
        return cls(n, frozenset(subset))

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.S))

    def monomial(self) -> str:
        return "".join(f"e{i}" for i in self.key) or "1"

    def __str__(self) -> str:
        return _fmt(self.S)


@dataclass(frozen=True)
class Arrow:
    p: int
    source: Vertex
    target: Vertex

    def __post_init__(self) -> None:
        pair = {self.p, self.p + 1}
        if pair & self.source.S or self.target.S != self.source.S | pair:
            raise ValueError(f"theta_{self.p}: {self.source} -> {self.target} is not an arrow")

    def __str__(self) -> str:
        return f"theta{self.p}: {self.source} -> {self.target}"


def runs(values: Iterable[int]) -> list[list[int]]:
    """Maximal runs of consecutive integers, in increasing order."""
    out: list[list[int]] = []
    for v in sorted(values):
        if out and out[-1][-1] == v - 1:
            out[-1].append(v)
        else:
            out.append([v])
    return out


def hom_dim(src: Vertex, tgt: Vertex) -> int:
    """Dimension of ``Hom(e_S, e_T)`` in the disk category (0 or 1)."""
    if src.n != tgt.n:
        raise ValueError("vertices from different quivers")
    if not src.S <= tgt.S:
        return 0
    return int(all(len(r) % 2 == 0 for r in runs(tgt.S - src.S)))


@dataclass(frozen=True)
class MorphismClass:
    """The basis element of a one-dimensional hom space."""

    source: Vertex
    target: Vertex

    def __post_init__(self) -> None:
        if not hom_dim(self.source, self.target):
            raise ValueError(f"no morphism {self.source} -> {self.target}")

    @classmethod
    def identity(cls, v: Vertex) -> "MorphismClass":
        return cls(v, v)

    @classmethod
    def of_arrow(cls, a: Arrow) -> "MorphismClass":
        return cls(a.source, a.target)

    def is_identity(self) -> bool:
        return self.source == self.target

    def factorization(self) -> list[int]:
        """Arrow labels of one path representing this class (ascending ``p``)."""
        return [r[k] for r in runs(self.target.S - self.source.S) for k in range(0, len(r), 2)]


def compose(f: MorphismClass, g: MorphismClass) -> MorphismClass:
    """``g`` after ``f``."""
    if f.target != g.source:
        raise NotComposable(f"{f.target} != {g.source}")
    return MorphismClass(f.source, g.target)


def all_vertices(n: int) -> list[Vertex]:
    items = range(1, n)
    out = [Vertex.of(n, c) for k in range(n) for c in combinations(items, k)]
    return sorted(out, key=lambda v: (len(v.S), v.key))


@dataclass(frozen=True)
class Quiver:
    n: int
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [list(v.key) for v in self.vertices],
            "arrows": [{"p": a.p, "src": list(a.source.key), "tgt": list(a.target.key)} for a in self.arrows],
        }

    def to_dot(self) -> str:
        lines = [f"digraph Q{self.n} {{"]
        for v in self.vertices:
            lines.append(f'  "{v.monomial()}";')
        for a in self.arrows:
            lines.append(f'  "{a.source.monomial()}" -> "{a.target.monomial()}" [label="theta{a.p}"];')
        lines.append("}")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_quiver(n: int) -> Quiver:
    if n < 2:
        raise ValueError("quiver needs n >= 2")
    verts = all_vertices(n)
    arrows = []
    for v in verts:
        for p in range(1, n - 1):
            if p not in v.S and p + 1 not in v.S:
                arrows.append(Arrow(p, v, Vertex(n, v.S | {p, p + 1})))
    arrows.sort(key=lambda a: (len(a.source.S), a.source.key, a.p))
    return Quiver(n, tuple(verts), tuple(arrows))


def tian_dual(x):
    """Complement within ``{1..n-1}``; arrows are reversed.

    ``theta_p: e_S -> e_T`` goes to ``theta_p: e_{T^c} -> e_{S^c}``.
    """
    if isinstance(x, Vertex):
        return Vertex(x.n, frozenset(range(1, x.n)) - x.S)
    if isinstance(x, Arrow):
        return Arrow(x.p, tian_dual(x.target), tian_dual(x.source))
    if isinstance(x, MorphismClass):
        return MorphismClass(tian_dual(x.target), tian_dual(x.source))
    raise TypeError(f"cannot dualize {type(x).__name__}")

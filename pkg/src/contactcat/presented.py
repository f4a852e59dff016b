"""Finitely presented linear categories over GF(2), with optional differential.

A path is a word of generator names in order of application; the identity
of an object is the empty word at that object. Elements are finite sums of
paths with coefficients in GF(2), stored as frozensets of :class:`Term`.
Since the setting is ungraded and of characteristic 2 the Leibniz rule has no
signs: ``d(ab) = d(a) b + a d(b)``.

Two computations are offered:

* :func:`hom_dims` for homogeneous monomial and binomial relations, by
  enumerating paths and merging the classes the relations identify;
* :func:`verify_differential`, which checks that ``d`` respects endpoints,
  that ``d^2 = 0`` on every generator, and that ``d`` maps each relation into
  the relation ideal (tested by rewriting leading terms).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .gf2 import span_rank


class PresentationError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """A nonzero path reached the length cap, so the enumeration may be incomplete."""


@dataclass(frozen=True, order=True)
class Term:
    src: str
    tgt: str
    word: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "*".join(self.word) if self.word else f"1_{self.src}"


Element = frozenset  # of Term


def add(*xs: Iterable[Term]) -> frozenset[Term]:
    out: set[Term] = set()
    for x in xs:
        for t in x:
            out ^= {t}
    return frozenset(out)


def show(x: Iterable[Term]) -> str:
    terms = sorted(x, key=lambda t: (len(t.word), t.word, t.src))
    return " + ".join(map(str, terms)) or "0"


@dataclass(frozen=True)
class Generator:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class FailureWitness:
    """The first identity that fails: ``lhs`` should equal ``rhs`` but does not."""

    generator: str
    check: str
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"generator": self.generator, "check": self.check, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class PresentedCategory:
    objects: tuple[str, ...]
    generators: tuple[Generator, ...]
    relations: tuple[frozenset[Term], ...] = ()
    differential: dict[str, frozenset[Term]] | None = None
    window: int | None = None  # generators longer than this are not checked
    lengths: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._gen = {g.name: g for g in self.generators}
        if len(self._gen) != len(self.generators):
            raise PresentationError("duplicate generator names")
        self._rank = {g.name: k for k, g in enumerate(self.generators)}
        objs = set(self.objects)
        for g in self.generators:
            if g.src not in objs or g.tgt not in objs:
                raise PresentationError(f"generator {g.name} has an unknown endpoint")
        for r in self.relations:
            ends = {(t.src, t.tgt) for t in r}
            if len(ends) > 1:
                raise PresentationError(f"relation {show(r)} mixes endpoints")
            for t in r:
                self._check_term(t)

    # -- paths -------------------------------------------------------------

    def generator(self, name: str) -> Generator:
        return self._gen[name]

    def _check_term(self, t: Term) -> None:
        at = t.src
        for a in t.word:
            g = self._gen.get(a)
            if g is None:
                raise PresentationError(f"unknown generator {a}")
            if g.src != at:
                raise PresentationError(f"path {t} does not compose at {a}")
            at = g.tgt
        if at != t.tgt:
            raise PresentationError(f"path {t} does not end at {t.tgt}")

    def path(self, *names: str) -> frozenset[Term]:
        if not names:
            raise PresentationError("use unit() for identities")
        t = Term(self._gen[names[0]].src, self._gen[names[-1]].tgt, tuple(names))
        self._check_term(t)
        return frozenset({t})

    def unit(self, obj: str) -> frozenset[Term]:
        return frozenset({Term(obj, obj)})

    def then(self, x: Iterable[Term], y: Iterable[Term]) -> frozenset[Term]:
        """Apply ``x`` first, then ``y``; composites that do not meet are dropped."""
        out: set[Term] = set()
        for a in x:
            for b in y:
                if a.tgt == b.src:
                    out ^= {Term(a.src, b.tgt, a.word + b.word)}
        return frozenset(out)

    def order_key(self, t: Term) -> tuple:
        return (len(t.word), tuple(self._rank[a] for a in t.word), t.src)

    # -- differential ------------------------------------------------------

    def d(self, x: Iterable[Term]) -> frozenset[Term]:
        if self.differential is None:
            return frozenset()
        out: set[Term] = set()
        for t in x:
            for k, a in enumerate(t.word):
                da = self.differential.get(a, frozenset())
                for s in da:
                    out ^= {Term(t.src, t.tgt, t.word[:k] + s.word + t.word[k + 1 :])}
        return frozenset(out)

    # -- relation ideal ----------------------------------------------------

    def _rules(self) -> list[tuple[Term, frozenset[Term]]]:
        rules = []
        for r in self.relations:
            lead = max(r, key=self.order_key)
            if not lead.word:
                raise PresentationError(f"relation {show(r)} identifies an identity")
            rules.append((lead, r - {lead}))
        return rules

    def reduce(self, x: Iterable[Term]) -> frozenset[Term]:
        """Rewrite leading relation terms until none occurs as a subword."""
        rules = self._rules()
        todo = set(x)
        done: set[Term] = set()
        while todo:
            t = max(todo, key=self.order_key)
            todo.discard(t)
            hit = None
            for lead, rest in rules:
                m = len(lead.word)
                for k in range(len(t.word) - m + 1):
                    if t.word[k : k + m] == lead.word:
                        hit = (k, m, rest)
                        break
                if hit:
                    break
            if hit is None:
                done ^= {t}
                continue
            k, m, rest = hit
            for s in rest:
                new = Term(t.src, t.tgt, t.word[:k] + s.word + t.word[k + m :])
                if new in todo:
                    todo.discard(new)
                else:
                    todo.add(new)
        return frozenset(done)

    # -- export ------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "objects": list(self.objects),
            "generators": [{"name": g.name, "src": g.src, "tgt": g.tgt} for g in self.generators],
            "relations": [show(r) for r in self.relations],
        }
        if self.differential is not None:
            out["differential"] = {g.name: show(self.differential.get(g.name, ())) for g in self.generators}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def zero_relation(c: PresentedCategory, *names: str) -> frozenset[Term]:
    return c.path(*names)


def _paths_by_length(c: PresentedCategory, cap: int) -> list[list[Term]]:
    out_of = defaultdict(list)
    for g in c.generators:
        out_of[g.src].append(g)
    layers = [[Term(o, o) for o in c.objects]]
    for _ in range(cap):
        nxt = [Term(t.src, g.tgt, t.word + (g.name,)) for t in layers[-1] for g in out_of[t.tgt]]
        layers.append(nxt)
    return layers


def _homogeneous_rules(c: PresentedCategory) -> tuple[list[tuple[str, ...]], list[tuple[tuple[str, ...], tuple[str, ...]]]]:
    zeros, swaps = [], []
    for r in c.relations:
        terms = sorted(r, key=c.order_key)
        if any(not t.word for t in terms):
            raise PresentationError("hom_dims needs relations among non-identity paths")
        if len(terms) == 1:
            zeros.append(terms[0].word)
        elif len(terms) == 2 and len(terms[0].word) == len(terms[1].word):
            swaps.append((terms[0].word, terms[1].word))
        else:
            raise PresentationError(f"hom_dims handles monomial and commuting relations only, got {show(r)}")
    return zeros, swaps


def _occurs(sub: tuple[str, ...], word: tuple[str, ...]) -> list[int]:
    m = len(sub)
    return [k for k in range(len(word) - m + 1) if word[k : k + m] == sub]


def path_classes(c: PresentedCategory, cap: int = 8) -> dict[tuple[str, ...] | Term, list[Term]]:
    """Nonzero path classes of length at most ``cap``, keyed by lex-least member.

    The quotient of the path algebra by monomial and binomial relations has
    a basis of classes under the congruence the binomials generate, minus
    the classes containing a path with a zero subword.
    """
    zeros, swaps = _homogeneous_rules(c)
    out: dict = {}
    for layer in _paths_by_length(c, cap):
        parent = {t: t for t in layer}

        def find(t: Term) -> Term:
            while parent[t] != t:
                parent[t] = parent[parent[t]]
                t = parent[t]
            return t

        for t in layer:
            for u, v in swaps:
                for a, b in ((u, v), (v, u)):
                    for k in _occurs(a, t.word):
                        s = Term(t.src, t.tgt, t.word[:k] + b + t.word[k + len(a) :])
                        ra, rb = find(t), find(s)
                        if ra != rb:
                            parent[ra] = rb
        groups: dict[Term, list[Term]] = defaultdict(list)
        for t in layer:
            groups[find(t)].append(t)
        for members in groups.values():
            if any(_occurs(z, t.word) for z in zeros for t in members):
                continue
            members.sort(key=c.order_key)
            out[members[0]] = members
    return out


def hom_dims(c: PresentedCategory, cap: int = 8) -> dict[tuple[str, str], int]:
    """Dimension of every hom space, indexed ``(source, target)``.

    Raises :class:`CapExceeded` if some path of length ``cap`` survives, since
    longer nonzero paths might then exist.
    """
    classes = path_classes(c, cap)
    table = {(a, b): 0 for a in c.objects for b in c.objects}
    for rep in classes:
        if len(rep.word) == cap:
            raise CapExceeded(f"nonzero path {rep} has length {cap}")
        table[(rep.src, rep.tgt)] += 1
    return table


def total_dim(table: Mapping[tuple[str, str], int]) -> int:
    return sum(table.values())


def verify_differential(c: PresentedCategory) -> FailureWitness | None:
    """``None`` when the differential is sound, otherwise the first failure."""
    if c.differential is None:
        raise PresentationError("category carries no differential")
    for g in c.generators:
        if c.window is not None and c.lengths.get(g.name, 0) > c.window:
            continue
        dg = c.differential.get(g.name, frozenset())
        for t in dg:
            if (t.src, t.tgt) != (g.src, g.tgt):
                return FailureWitness(g.name, "endpoints", f"d({g.name}) contains {t}", f"{g.src} -> {g.tgt}")
            c._check_term(t)
        dd = c.reduce(c.d(dg))
        if dd:
            return FailureWitness(g.name, "d^2", f"d(d({g.name})) = d({show(dg)}) = {show(dd)}", "0")
    for r in c.relations:
        dr = c.reduce(c.d(r))
        if dr:
            return FailureWitness(show(r), "relation ideal", f"d({show(r)}) = {show(dr)}", "0 modulo relations")
    return None


# ---------------------------------------------------------------------------
# Gadget categories


def _gens(entries: Sequence[tuple[str, str, str]]) -> tuple[Generator, ...]:
    return tuple(Generator(*s) for s in entries)


def i_tilde(corrupt: bool = False) -> PresentedCategory:
    """Drinfeld's cofibrant interval: ``f, g`` inverse up to ``h11, h22, h12``.

    With ``corrupt=True`` the unit is dropped from ``d h11``, which breaks
    ``d^2 = 0`` on ``h12``.
    """
    c = PresentedCategory(
        ("1", "2"),
        _gens([("f", "1", "2"), ("g", "2", "1"), ("h11", "1", "1"), ("h22", "2", "2"), ("h12", "1", "2")]),
    )
    dh11 = c.path("f", "g") if corrupt else add(c.path("f", "g"), c.unit("1"))
    c.differential = {
        "h11": dh11,
        "h22": add(c.path("g", "f"), c.unit("2")),
        "h12": add(c.path("f", "h22"), c.path("h11", "f")),
    }
    return c


def d_bar() -> PresentedCategory:
    """The triangle category: three cycles, three homotopies, three unit relations."""
    gens = _gens(
        [
            ("theta12", "1", "2"),
            ("theta23", "2", "3"),
            ("theta31", "3", "1"),
            ("h21", "2", "1"),
            ("h32", "3", "2"),
            ("h13", "1", "3"),
        ]
    )
    c = PresentedCategory(("1", "2", "3"), gens)
    c.differential = {
        "h21": c.path("theta23", "theta31"),
        "h32": c.path("theta31", "theta12"),
        "h13": c.path("theta12", "theta23"),
    }
    c.relations = (
        add(c.path("h32", "theta23"), c.path("theta31", "h13"), c.unit("3")),
        add(c.path("h21", "theta12"), c.path("theta23", "h32"), c.unit("2")),
        add(c.path("h13", "theta31"), c.path("theta12", "h21"), c.unit("1")),
    )
    c.__post_init__()
    return c


def _succ(i: int, steps: int = 1) -> int:
    return (i - 1 + steps) % 3 + 1


def tilde_name(i: int, length: int) -> str:
    """Generator of the cofibrant triangle category: the path of given length from ``i``."""
    return f"theta{i},{_succ(i, length)}[{length}]"


def d_tilde_truncated(L: int) -> PresentedCategory:
    """Paths of length ``1..L`` in the oriented triangle ``1 -> 2 -> 3 -> 1``.

    ``d`` of a path is the sum of its splittings into two nonempty pieces,
    each composite written first piece first; the paths winding exactly once
    also carry the unit. Every splitting is shorter than the path, so the
    truncation never needs a discarded generator and the whole window is
    checked.
    """
    if L < 2:
        raise ValueError("truncation length must be at least 2")
    gens, lengths = [], {}
    for length in range(1, L + 1):
        for i in (1, 2, 3):
            name = tilde_name(i, length)
            gens.append(Generator(name, str(i), str(_succ(i, length))))
            lengths[name] = length
    c = PresentedCategory(("1", "2", "3"), tuple(gens), window=L, lengths=lengths)
    diff: dict[str, frozenset[Term]] = {}
    for length in range(2, L + 1):
        for i in (1, 2, 3):
            terms = [c.path(tilde_name(i, a), tilde_name(_succ(i, a), length - a)) for a in range(1, length)]
            if length == 3:
                terms.append(c.unit(str(i)))
            diff[tilde_name(i, length)] = add(*terms)
    c.differential = diff
    return c


def projection_to_d_bar(x: Iterable[Term]) -> frozenset[Term]:
    """Length-one paths go to the cycles, length-two paths to the homotopies, longer ones to 0."""
    bar = d_bar()
    image = {}
    for i in (1, 2, 3):
        j, k = _succ(i), _succ(i, 2)
        image[tilde_name(i, 1)] = bar.path(f"theta{i}{j}")
        image[tilde_name(i, 2)] = bar.path(f"h{i}{k}")
    out: frozenset[Term] = frozenset()
    for t in x:
        piece: frozenset[Term] = bar.unit(t.src)
        for a in t.word:
            if a not in image:
                piece = frozenset()
                break
            piece = bar.then(piece, image[a])
        out = add(out, piece)
    return out


def projection_respects_relations(max_length: int = 3) -> FailureWitness | None:
    """Check ``p(d x) = d(p x)`` modulo the unit relations for paths up to ``max_length``.

    At length three this is exactly the statement that the unit relations of
    the triangle category are the images of ``d`` on the once-winding paths.
    """
    tilde = d_tilde_truncated(max(max_length, 2))
    bar = d_bar()
    for g in tilde.generators:
        if tilde.lengths[g.name] > max_length:
            continue
        x = tilde.path(g.name)
        lhs = bar.reduce(projection_to_d_bar(tilde.d(x)))
        rhs = bar.reduce(bar.d(projection_to_d_bar(x)))
        if lhs != rhs:
            return FailureWitness(g.name, "projection", show(lhs), show(rhs))
    return None


# ---------------------------------------------------------------------------
# Conversions


def from_quiver_presentation(qp) -> PresentedCategory:
    """Build from an arc-diagram :class:`QuiverPresentation`."""
    c = PresentedCategory(tuple(qp.objects), _gens(qp.arrows))
    rels = []
    for lhs, rhs in qp.relations:
        rels.append(c.path(*lhs) if rhs is None else add(c.path(*lhs), c.path(*rhs)))
    c.relations = tuple(rels)
    c.__post_init__()
    return c


def from_quiver(q) -> PresentedCategory:
    """The disk category: the quiver modulo commuting squares of disjoint arrows."""
    name = lambda v: v.monomial()
    arrows = {(a.source, a.p): a for a in q.arrows}
    gens = [Generator(f"theta{a.p}@{name(a.source)}", name(a.source), name(a.target)) for a in q.arrows]
    c = PresentedCategory(tuple(name(v) for v in q.vertices), tuple(gens))
    rels = []
    for (v, p), a in arrows.items():
        for (w, r), b in arrows.items():
            if w != v or r <= p + 1:
                continue
            a2, b2 = arrows.get((a.target, r)), arrows.get((b.target, p))
            if a2 is not None and b2 is not None:
                rels.append(
                    add(
                        c.path(f"theta{p}@{name(v)}", f"theta{r}@{name(a.target)}"),
                        c.path(f"theta{r}@{name(v)}", f"theta{p}@{name(b.target)}"),
                    )
                )
    c.relations = tuple(rels)
    c.__post_init__()
    return c


# ---------------------------------------------------------------------------
# Grothendieck groups


@dataclass(frozen=True)
class K0Presentation:
    """Free GF(2)-module on ``generators`` modulo relation vectors."""

    generators: tuple[Hashable, ...]
    relations: tuple[int, ...]  # packed over the generator order
    grading: tuple[int, ...] | None = None

    @property
    def relation_rank(self) -> int:
        return span_rank(self.relations, len(self.generators))

    @property
    def dim(self) -> int:
        return len(self.generators) - self.relation_rank

    def graded(self) -> list[tuple[int, int]]:
        """``(degree, dimension)`` pairs in decreasing degree."""
        if self.grading is None:
            raise PresentationError("no grading supplied")
        degrees = sorted(set(self.grading), reverse=True)
        out = []
        for e in degrees:
            mask = sum(1 << k for k, x in enumerate(self.grading) if x == e)
            rels = []
            for r in self.relations:
                if r & mask and r & ~mask:
                    raise PresentationError("relation mixes degrees")
                if r & mask:
                    rels.append(r)
            out.append((e, bin(mask).count("1") - span_rank(rels, len(self.generators))))
        return out

    def to_json(self) -> dict:
        out: dict = {"dim": self.dim}
        if self.grading is not None:
            out["graded"] = [k for _, k in self.graded()]
        return out


def k0(
    generators: Sequence[Hashable],
    triangles: Iterable[Sequence[Hashable]],
    grading: Mapping[Hashable, int] | None = None,
) -> K0Presentation:
    """Quotient by ``[a] + [b] + [c] = 0`` for each triangle; zero objects may be given as ``None``."""
    index = {g: k for k, g in enumerate(generators)}
    if len(index) != len(generators):
        raise PresentationError("repeated generator")
    rels = []
    for tri in triangles:
        v = 0
        for x in tri:
            if x is None:
                continue
            if x not in index:
                raise PresentationError(f"triangle object {x!r} is not a generator")
            v ^= 1 << index[x]
        if v:
            rels.append(v)
    grades = None if grading is None else tuple(grading[g] for g in generators)
    return K0Presentation(tuple(generators), tuple(rels), grades)


def genus_k0(g: int) -> K0Presentation:
    """Elementary generators of the genus-``g`` surface, graded by Euler number.

    For the symplectic parameterization no bypass triangle has all three
    vertices elementary, so there are no relations.
    """
    from .arcdiagram import elementary_subsets, genus_surface

    subsets = elementary_subsets(genus_surface(g))
    return k0([s for s, _ in subsets], (), {s: e for s, e in subsets})


def disk_k0(n: int) -> K0Presentation:
    """All circle-free matchings modulo every bypass triangle."""
    from .bypass import bypass_triangle, enumerate_equators
    from .dividing import enumerate_matchings

    gens = enumerate_matchings(n)
    tris = []
    for d in gens:
        for e in enumerate_equators(d):
            t = bypass_triangle(d, e)
            tris.append(tuple(None if x.circles else x.with_sign("+") for x in t.objects))
    return k0(gens, tris)

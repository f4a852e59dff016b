"""Independent reference computations used by the tests.

These deliberately avoid the package's own algorithms: dense list-of-lists
elimination, brute-force involution enumeration, separation counting for
faces, and explicit ideal spans for path-algebra quotients.
"""

from __future__ import annotations

from itertools import product


def dense_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % 2), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] % 2:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[r])]
        r += 1
    return r


def all_perfect_matchings(points: list[int]):
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        b = points[k]
        rest = points[1:k] + points[k + 1 :]
        for m in all_perfect_matchings(rest):
            yield [(a, b)] + m


def brute_noncrossing(n: int) -> set[tuple[tuple[int, int], ...]]:
    out = set()
    for m in all_perfect_matchings(list(range(1, 2 * n + 1))):
        if not any(a < c < b < d for a, b in m for c, d in m):
            out.add(tuple(sorted(m)))
    return out


def separating(pairs, g1: int, g2: int) -> int:
    """Chords separating boundary gaps ``g1`` and ``g2`` (gap g sits after point g)."""
    return sum(1 for a, b in pairs if (a <= g1 < b) != (a <= g2 < b))


def euler_by_separation(pairs, n: int, sign: str) -> int:
    """Faces are classes of gaps with no separating chord; signs flip with separation parity."""
    seen: dict[int, int] = {}
    total = 0
    for g in range(2 * n):
        if any(separating(pairs, g, h) == 0 for h in seen):
            continue
        seen[g] = 1
        flip = separating(pairs, 0, g) % 2
        positive = (sign == "+") != bool(flip)
        total += 1 if positive else -1
    return total


def quotient_dims(objects, arrows, zero_paths, square_pairs, max_len: int) -> dict[tuple[str, str], int]:
    """Hom dimensions of a path algebra modulo an ideal, by explicit GF(2) spans.

    ``arrows`` are ``(name, src, tgt)``; paths are words in application order.
    The ideal is spanned by ``u r v`` for each relation ``r`` (a zero path or
    the sum of a commuting pair) and paths ``u``, ``v``.
    """
    src = {a: s for a, s, _ in arrows}
    tgt = {a: t for a, _, t in arrows}
    paths = {(o,): (o, o) for o in objects}  # identity keyed by the object name
    layer = [((a,), (s, t)) for a, s, t in arrows]
    for _ in range(max_len):
        nxt = []
        for w, (s, t) in layer:
            paths[w] = (s, t)
            nxt.extend((w + (a,), (s, tgt[a])) for a, s2, _ in arrows if s2 == t)
        layer = nxt
    words = [w for w in paths if w[0] not in objects]

    def ideal_vectors(rel_words):
        for rel in rel_words:
            r_src, r_tgt = src[rel[0][0]], tgt[rel[0][-1]]
            befores = [()] + [w for w in words if paths[w][1] == r_src]
            afters = [()] + [w for w in words if paths[w][0] == r_tgt]
            for u, v in product(befores, afters):
                terms = [u + r + v for r in rel]
                if all(t in paths for t in terms):
                    yield terms

    rels = [[z] for z in zero_paths] + [[a, b] for a, b in square_pairs]
    grouped: dict[tuple[str, str], list[list[tuple[str, ...]]]] = {}
    for terms in ideal_vectors(rels):
        grouped.setdefault(paths[terms[0]], []).append(terms)
    out = {}
    for s in objects:
        for t in objects:
            basis = [w for w in words if paths[w] == (s, t)]
            index = {w: k for k, w in enumerate(basis)}
            rows = []
            for terms in grouped.get((s, t), []):
                row = [0] * len(basis)
                for w in terms:
                    row[index[w]] ^= 1
                rows.append(row)
            out[(s, t)] = len(basis) - dense_rank(rows) + (1 if s == t else 0)
    return out

"""Command-line interface: ``contactcat <verb> [options]``.

Output is compact JSON with sorted keys unless ``--dot`` or ``--table`` is
given. Exit status is 0 on success, 1 on a domain error and 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import acceptance
from .arcdiagram import (
    ArcDiagramError,
    elementary_subsets,
    family,
    parse,
    presentation,
    surface_invariants,
)
from .bypass import apply_bypass, bypass_triangle, classify, enumerate_equators, enumerate_walks
from .dividing import DividingSet, enumerate_matchings, euler_number, faces
from .presented import CapExceeded, disk_k0, from_quiver_presentation, genus_k0, hom_dims, total_dim
from .quiver import all_vertices, build_quiver, hom_dim
from .resolution import resolve


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.split():
        try:
            a, b = (int(x) for x in tok.split(","))
        except ValueError:
            raise UsageError(f"--pairs: cannot read {tok!r}; expected a,b tokens") from None
        out.append((a, b))
    return out


def _dividing_set(args) -> DividingSet:
    if args.pairs is None:
        raise UsageError("--pairs is required for this verb")
    pairs = _pairs(args.pairs)
    n = args.n if args.n is not None else len(pairs)
    return DividingSet.from_pairs(n, pairs, 0, args.sign)


def _need(args, flag: str) -> int:
    value = getattr(args, flag)
    if value is None:
        raise UsageError(f"--{flag} is required for this verb")
    return value


def _family(args):
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            return parse(fh.read())
    if args.family is None:
        raise UsageError("--family (or --file) is required for this verb")
    value = args.g if args.family == "genus" else args.n
    if value is None:
        raise UsageError("--g is required for the genus family" if args.family == "genus" else "--n is required")
    return family(args.family, value)


def _no_dot(args, verb: str) -> None:
    if args.dot:
        raise UsageError(f"--dot is not available for {verb}")


def _no_table(args, verb: str) -> None:
    if args.table:
        raise UsageError(f"--table is not available for {verb}")


# ---------------------------------------------------------------------------
# verbs


def cmd_enumerate(args) -> str:
    _no_dot(args, "enumerate")
    ms = enumerate_matchings(_need(args, "n"))
    if args.table:
        return "\n".join(" ".join(f"{a},{b}" for a, b in m.pairs) for m in ms)
    return dumps({"count": len(ms), "matchings": [m.to_json() for m in ms]})


def cmd_euler(args) -> str:
    d = _dividing_set(args)
    tree = faces(d)
    if args.dot:
        return tree.to_dot()
    if args.table:
        return f"euler {euler_number(d)}\n" + "\n".join(
            f"f{f} {s} gaps {tree.gaps_of(f)}" for f, s in enumerate(tree.signs)
        )
    return dumps({"euler": euler_number(d), "faces": tree.to_json()})


def cmd_bypass(args) -> str:
    _no_dot(args, "bypass")
    _no_table(args, "bypass")
    d = _dividing_set(args)
    out = []
    for e in enumerate_walks(d):
        result = apply_bypass(d, e)
        out.append(
            {
                "equator": e.to_json(),
                "class": classify(d, e).value,
                "result": result.to_json() if result else None,
            }
        )
    return dumps({"input": d.to_json(), "walks": out})


def cmd_triangle(args) -> str:
    _no_dot(args, "triangle")
    _no_table(args, "triangle")
    d = _dividing_set(args)
    return dumps({"input": d.to_json(), "triangles": [bypass_triangle(d, e).to_json() for e in enumerate_equators(d)]})


def cmd_resolve(args) -> str:
    _no_dot(args, "resolve")
    d = _dividing_set(args)
    r = resolve(d) if args.seed is None else resolve(d, "random", args.seed)
    m = r.minimal()
    if args.table:
        return f"complex {r.complex}\nminimal {m}"
    out = r.to_json()
    out["minimal"] = m.to_json()
    return dumps(out)


def cmd_hom(args) -> str:
    _no_dot(args, "hom")
    n = _need(args, "n")
    vs = all_vertices(n)
    if args.table:
        width = max(len(v.monomial()) for v in vs)
        head = " " * width + " " + " ".join(v.monomial().rjust(width) for v in vs)
        rows = [v.monomial().rjust(width) + " " + " ".join(str(hom_dim(v, w)).rjust(width) for w in vs) for v in vs]
        return "\n".join([head] + rows)
    nonzero = [{"src": list(v.key), "tgt": list(w.key)} for v in vs for w in vs if hom_dim(v, w)]
    return dumps({"n": n, "nonzero": nonzero})


def cmd_quiver(args) -> str:
    _no_table(args, "quiver")
    q = build_quiver(_need(args, "n"))
    return q.to_dot() if args.dot else dumps(q.to_json())


def cmd_arc(args) -> str:
    _no_dot(args, "arc")
    z = _family(args)
    inv = surface_invariants(z)
    if args.table:
        return z.to_text() + "\n" + " ".join(f"{k}={v}" for k, v in inv.to_json().items())
    return dumps(
        {
            "diagram": z.to_json(),
            "invariants": inv.to_json(),
            "elementary": [{"handles": list(c), "euler": e} for c, e in elementary_subsets(z)],
        }
    )


def cmd_present(args) -> str:
    z = _family(args)
    pres = presentation(z)
    if args.dot:
        return pres.to_dot()
    table = hom_dims(from_quiver_presentation(pres), args.cap)
    if args.table:
        return "\n".join(f"{a} -> {b}: {k}" for (a, b), k in sorted(table.items()) if k)
    out = pres.to_json()
    out["hom_dims"] = [{"src": a, "tgt": b, "dim": k} for (a, b), k in sorted(table.items()) if k]
    out["total_dim"] = total_dim(table)
    return dumps(out)


def cmd_k0(args) -> str:
    _no_dot(args, "k0")
    if args.family == "genus":
        k = genus_k0(_need(args, "g"))
    elif args.family == "zigzag":
        k = disk_k0(_need(args, "n"))
    else:
        raise UsageError("--family must be genus or zigzag for k0")
    if args.table:
        if k.grading is None:
            return f"dim {k.dim}"
        return f"dim {k.dim}\n" + "\n".join(f"euler {e:+d}: {m}" for e, m in k.graded())
    return dumps(k.to_json())


def cmd_selftest(args) -> str:
    _no_dot(args, "selftest")
    _no_table(args, "selftest")
    import io

    buf = io.StringIO()
    ok = acceptance.run(buf, seed=0 if args.seed is None else args.seed)
    args._status = 0 if ok else 1
    return buf.getvalue().rstrip("\n")


VERBS: dict[str, Callable] = {
    "enumerate": cmd_enumerate,
    "euler": cmd_euler,
    "bypass": cmd_bypass,
    "triangle": cmd_triangle,
    "resolve": cmd_resolve,
    "hom": cmd_hom,
    "quiver": cmd_quiver,
    "arc": cmd_arc,
    "present": cmd_present,
    "k0": cmd_k0,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contactcat", description="Computations in the contact category of the marked disk.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--n", type=int, help="half the number of marked points, or number of boundary circles")
    p.add_argument("--g", type=int, help="genus for the genus family")
    p.add_argument("--family", choices=["zigzag", "sphere", "genus"])
    p.add_argument("--file", help="arc diagram in text format (arc, present)")
    p.add_argument("--pairs", help='chords as "a,b a,b ..."')
    p.add_argument("--sign", choices=["+", "-"], default="+", help="sign of the basepoint region")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--dot", action="store_true", help="Graphviz output")
    out.add_argument("--table", action="store_true", help="human-readable output")
    p.add_argument("--cap", type=int, default=8, help="path length cap for hom dimensions")
    p.add_argument("--seed", type=int, help="seed for sampled choices")
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._status = 0
    try:
        text = VERBS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"contactcat: error: {exc}", file=stderr)
        return 2
    except (ValueError, ArcDiagramError, CapExceeded, RuntimeError) as exc:
        print(f"contactcat: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    print(text, file=stdout)
    return args._status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

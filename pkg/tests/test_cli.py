from __future__ import annotations

import io
import json

import pytest

from contactcat.cli import run


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate():
    code, out, _ = call("enumerate", "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["count"] == 5 and len(data["matchings"]) == 5
    assert call("enumerate", "--n", "3", "--table")[1].count("\n") == 5


def test_resolve_anchor():
    code, out, _ = call("resolve", "--n", "3", "--pairs", "2,3 1,4 5,6")
    data = json.loads(out)
    assert code == 0
    assert data["objects"] == [[], [1, 2]]
    assert data["p"] == [{"i": 0, "j": 1}]


def test_resolve_with_seed_reports_minimal_form():
    code, out, _ = call("resolve", "--n", "4", "--pairs", "1,8 2,3 4,7 5,6", "--seed", "3")
    assert code == 0 and "minimal" in json.loads(out)


def test_k0_genus():
    code, out, _ = call("k0", "--family", "genus", "--g", "2")
    assert (code, out) == (0, '{"dim":16,"graded":[1,4,6,4,1]}\n')
    assert json.loads(call("k0", "--family", "zigzag", "--n", "4")[1]) == {"dim": 8}


def test_present_and_dot():
    code, out, _ = call("present", "--family", "sphere", "--n", "2")
    assert code == 0 and json.loads(out)["total_dim"] == 5
    code, out, _ = call("quiver", "--n", "3", "--dot")
    assert code == 0 and out.startswith("digraph")


@pytest.mark.parametrize(
    "argv",
    [
        ("euler", "--n", "2", "--pairs", "1,2 3,4"),
        ("bypass", "--n", "3", "--pairs", "1,6 2,5 3,4"),
        ("triangle", "--n", "3", "--pairs", "1,6 2,5 3,4"),
        ("hom", "--n", "3"),
        ("arc", "--family", "zigzag", "--n", "2"),
        ("present", "--family", "genus", "--g", "1", "--table"),
        ("euler", "--n", "3", "--pairs", "1,6 2,5 3,4", "--dot"),
    ],
)
def test_verbs_succeed_and_are_stable(argv):
    first = call(*argv)
    assert first[0] == 0 and first[1]
    assert call(*argv) == first


@pytest.mark.parametrize(
    "argv, flag",
    [
        (("enumerate",), "--n"),
        (("k0", "--family", "sphere", "--n", "3"), "--family"),
        (("euler", "--n", "2"), "--pairs"),
        (("enumerate", "--n", "3", "--dot"), "--dot"),
    ],
)
def test_usage_errors_name_the_flag(argv, flag):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and flag in err


def test_argparse_errors_are_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("enumerate", "--n", "x")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("euler", "--n", "2", "--pairs", "1,3 2,4"),
        ("present", "--family", "sphere", "--n", "1"),
        ("present", "--family", "sphere", "--n", "5", "--cap", "4"),
    ],
)
def test_domain_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err

"""The twelve acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line; run with ``-s`` to see
them, or use ``python -m contactcat selftest``.
"""

from __future__ import annotations

import subprocess
import sys
import time

import pytest

from contactcat import acceptance


def report(k: int, name: str, ok: bool, detail: str) -> None:
    print()
    print(acceptance.render([(k, name, ok, detail)]), end="")


@pytest.mark.parametrize("k, name, check", acceptance.CRITERIA, ids=[f"c{k:02d}" for k, _, _ in acceptance.CRITERIA])
def test_criterion(k, name, check):
    ok, detail = check()
    report(k, name, ok, detail)
    assert ok, detail


def test_c12_selftest_is_deterministic_and_fast():
    cmd = [sys.executable, "-m", "contactcat", "selftest"]
    start = time.monotonic()
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    elapsed = time.monotonic() - start
    ok = first.returncode == second.returncode == 0 and first.stdout == second.stdout and elapsed < 120
    report(12, "determinism", ok, "two selftest runs byte-identical" if ok else "selftest runs differ or fail")
    assert first.stdout == second.stdout
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert first.stdout.decode().count("[PASS]") == 12
    assert elapsed < 120

"""Independent brute-force oracles shared by the test modules.

These deliberately use explicit loops over digits instead of the reshaping
and einsum tricks used by the package.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

import numpy as np
import pytest


def kron_loop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def digits(index: int, n: int, d: int) -> tuple[int, ...]:
    return tuple((index // d ** (n - 1 - k)) % d for k in range(n))


def partial_trace_loop(m: np.ndarray, n: int, d: int, keep: list[int]) -> np.ndarray:
    keep = sorted(keep)
    size = d ** len(keep)
    out = np.zeros((size, size), dtype=complex)
    for r in range(d**n):
        dr = digits(r, n, d)
        for c in range(d**n):
            dc = digits(c, n, d)
            if any(dr[x] != dc[x] for x in range(n) if x not in keep):
                continue
            rr = sum(dr[x] * d ** (len(keep) - 1 - i) for i, x in enumerate(keep))
            cc = sum(dc[x] * d ** (len(keep) - 1 - i) for i, x in enumerate(keep))
            out[rr, cc] += m[r, c]
    return out


def shannon_sum(table: dict[tuple[int, ...], float], keep: list[int], base: float = 2) -> float:
    marg = defaultdict(float)
    for outcome, p in table.items():
        marg[tuple(outcome[i] for i in keep)] += p
    return -sum(p * math.log(p, base) for p in marg.values() if p > 0)


def cmi_sum(table: dict[tuple[int, ...], float], a: int, b: int, cond: list[int], base: float = 2) -> float:
    h = lambda keep: shannon_sum(table, keep, base)  # noqa: E731
    return h([a, *cond]) + h([b, *cond]) - h(list(cond)) - h([a, b, *cond])


def table_from_probs(p: np.ndarray, n: int, d: int) -> dict[tuple[int, ...], float]:
    return {digits(i, n, d): float(v) for i, v in enumerate(p)}


def entropy_from_eigs(m: np.ndarray, base: float) -> float:
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return float(-sum(v * math.log(v, base) for v in vals if v > 1e-14))


def all_subsets(n: int):
    for size in range(1, n):
        yield from itertools.combinations(range(n), size)


@pytest.fixture
def gen():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

"""Multipartite dependence D_N.

D_N is the smallest conditional mutual information ``I(i : j | rest)`` over
all pairs of parties. For a density operator it reduces to

    D_N = min_{i<j} S(Tr_i rho) + S(Tr_j rho) - S(Tr_ij rho) - S(rho)

and for a pure state to the smallest two-party mutual information.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .info import ProbTensor, matrix_entropy, subsystem_entropy
from .qmat import DensityOperator, ValidationError, reduce_matrix

TIE_TOL = 1e-12


@dataclass(frozen=True)
class DependenceReport:
    """Every pairwise conditional mutual information plus the minimum.

    ``pair_values`` holds ``(i, j, cmi)`` with ``i < j`` in lexicographic
    order. For :func:`k_dependence` the indices refer to the original
    register and ``subset`` names the worst k-party subsystem.
    """

    num_parties: int
    local_dim: int
    pair_values: tuple[tuple[int, int, float], ...]
    min_pair: tuple[int, int]
    value: float
    subset: tuple[int, ...] | None = field(default=None)

    def cmi(self, i: int, j: int) -> float:
        i, j = sorted((i, j))
        for a, b, v in self.pair_values:
            if (a, b) == (i, j):
                return v
        raise KeyError((i, j))

    def to_dict(self) -> dict:
        out = {
            "N": self.num_parties,
            "d": self.local_dim,
            "pairs": [{"i": i, "j": j, "cmi": v} for i, j, v in self.pair_values],
            "min_pair": list(self.min_pair),
            "D": self.value,
        }
        if self.subset is not None:
            out["subset"] = list(self.subset)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DependenceReport":
        subset = data.get("subset")
        return cls(
            num_parties=int(data["N"]),
            local_dim=int(data["d"]),
            pair_values=tuple((int(p["i"]), int(p["j"]), float(p["cmi"])) for p in data["pairs"]),
            min_pair=tuple(int(x) for x in data["min_pair"]),
            value=float(data["D"]),
            subset=None if subset is None else tuple(int(x) for x in subset),
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "cmi"])
        for i, j, v in self.pair_values:
            writer.writerow([i, j, repr(v)])
        return buf.getvalue()


def _report(n: int, d: int, values: dict[tuple[int, int], float]) -> DependenceReport:
    pairs = tuple((i, j, float(values[i, j])) for i, j in combinations(range(n), 2))
    best = min(v for _, _, v in pairs)
    min_pair = next((i, j) for i, j, v in pairs if v <= best + TIE_TOL)
    return DependenceReport(n, d, pairs, min_pair, best)


def _require_parties(n: int) -> None:
    if n < 3:
        raise ValueError(f"dependence needs at least 3 parties, got {n}")


def dependence(state) -> DependenceReport:
    """D_N of a density operator (or, dispatching, of a :class:`ProbTensor`)."""
    if isinstance(state, ProbTensor):
        return dependence_classical(state)
    n = state.num_parties
    _require_parties(n)
    d = state.local_dim
    m, dims = state.matrix, state.dims
    everyone = range(n)
    s_all = matrix_entropy(m, d)
    s_without = [matrix_entropy(reduce_matrix(m, dims, [x for x in everyone if x != i]), d) for i in everyone]
    values = {}
    for i, j in combinations(everyone, 2):
        rest = [x for x in everyone if x not in (i, j)]
        s_rest = matrix_entropy(reduce_matrix(m, dims, rest), d)
        values[i, j] = s_without[i] + s_without[j] - s_rest - s_all
    return _report(n, d, values)


def dependence_classical(p: ProbTensor) -> DependenceReport:
    """D_N of a classical joint distribution, from Shannon entropies."""
    n = p.num_vars
    _require_parties(n)
    everyone = frozenset(range(n))
    s_all = subsystem_entropy(p, everyone)
    s_without = [subsystem_entropy(p, everyone - {i}) for i in range(n)]
    values = {}
    for i, j in combinations(range(n), 2):
        values[i, j] = s_without[i] + s_without[j] - subsystem_entropy(p, everyone - {i, j}) - s_all
    return _report(n, p.local_dim, values)


def dependence_pure(psi, local_dim: int = 2) -> DependenceReport:
    """D_N of a pure state: the smallest mutual information ``S_i + S_j - S_ij``."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(f"state vector is not normalized (norm={norm:.12g})")
    d = local_dim
    n = round(math.log(v.size, d)) if v.size > 1 else 0
    if d**n != v.size:
        raise ValueError(f"vector length {v.size} is not a power of {d}")
    _require_parties(n)
    t = v.reshape((d,) * n)
    s_one = []
    values = {}
    pair_marginals = {}
    for i, j in combinations(range(n), 2):
        rest = [x for x in range(n) if x not in (i, j)]
        block = t.transpose([i, j] + rest).reshape(d * d, -1)
        pair_marginals[i, j] = block @ block.conj().T
    for i in range(n):
        rest = [x for x in range(n) if x != i]
        block = t.transpose([i] + rest).reshape(d, -1)
        s_one.append(matrix_entropy(block @ block.conj().T, d))
    for (i, j), rho_ij in pair_marginals.items():
        values[i, j] = s_one[i] + s_one[j] - matrix_entropy(rho_ij, d)
    return _report(n, d, values)


def _sub_state(state, keep: Sequence[int]):
    if isinstance(state, ProbTensor):
        return ProbTensor(state.marginal(keep), state.local_dim, check=False)
    m = reduce_matrix(state.matrix, state.dims, keep)
    return DensityOperator(m, dims=[state.dims[i] for i in keep], check=False)


def k_dependence(state, k: int) -> DependenceReport:
    """Worst D_k over all k-party subsystems (exhaustive enumeration).

    The returned report belongs to the minimizing subset, with its pair
    indices translated back to the full register.
    """
    n = state.num_parties
    if not 3 <= k <= n:
        raise ValueError(f"k must satisfy 3 <= k <= {n}, got {k}")
    best: DependenceReport | None = None
    for subset in combinations(range(n), k):
        sub = dependence(_sub_state(state, subset))
        if best is None or sub.value < best.value - TIE_TOL:
            pairs = tuple((subset[i], subset[j], v) for i, j, v in sub.pair_values)
            mp = (subset[sub.min_pair[0]], subset[sub.min_pair[1]])
            best = DependenceReport(k, sub.local_dim, pairs, mp, sub.value, subset)
    return best


def _log_binom(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _xlogy_ratio(log_ratio: float) -> float:
    """``r * log(r)`` for ``r = exp(log_ratio)``, zero when ``r == 0``."""
    if log_ratio == -math.inf:
        return 0.0
    return math.exp(log_ratio) * log_ratio


def dicke_dependence_analytic(n: int, e: int) -> float:
    """Closed-form D_N (in bits) of the N-qubit Dicke state with ``e`` excitations.

    Binomials enter only through log-ratios, so the expression stays finite
    for N in the tens of thousands.
    """
    if n < 3:
        raise ValueError(f"need N >= 3, got {n}")
    if not 1 <= e <= n - 1:
        raise ValueError(f"excitation number must be in [1, {n - 1}], got {e}")
    total = _log_binom(n, e)
    single_excited = math.exp(_log_binom(n - 1, e - 1) - total)  # == e/N
    single_ground = math.exp(_log_binom(n - 1, e) - total)  # == (N-e)/N
    acc = -2.0 * single_excited * math.log(e / n)
    acc -= 2.0 * single_ground * math.log(1.0 - e / n)
    acc += _xlogy_ratio(_log_binom(n - 2, e - 2) - total)
    mixed = _log_binom(n - 2, e - 1) - total
    acc += 2.0 * math.exp(mixed) * (math.log(2.0) + mixed)
    acc += _xlogy_ratio(_log_binom(n - 2, e) - total)
    return acc / math.log(2.0)

"""Classical conditional mutual information reachable with local qubit measurements.

Each party measures in the projective basis
``{cos(t/2)|0> + e^{i p} sin(t/2)|1>, orthogonal complement}``; the outcome
statistics form a classical distribution whose conditional mutual information
is maximized by multi-start Nelder-Mead over the angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .dependence import dependence
from .info import ProbTensor, classical_cmi
from .qmat import DensityOperator, kron_all, rng

SIMPLEX_TOL = 1e-6
MAX_EVALS = 2000
INITIAL_STEP = 0.5
_NM_OPTIONS = {"xatol": SIMPLEX_TOL, "fatol": math.inf, "maxfev": MAX_EVALS, "adaptive": False}


def _canonical(theta: float, phi: float) -> tuple[float, float]:
    # theta -> 2pi - theta is the same basis up to phase with phi shifted by pi
    t = theta % (2 * math.pi)
    if t > math.pi:
        t = 2 * math.pi - t
        phi = phi + math.pi
    return t, phi % (2 * math.pi)


@dataclass(frozen=True)
class MeasurementSetting:
    """One ``(theta, phi)`` pair per party, ``theta in [0, pi]``, ``phi in [0, 2 pi)``."""

    angles: tuple[tuple[float, float], ...]

    def __post_init__(self):
        for theta, phi in self.angles:
            if not (0.0 <= theta <= math.pi and 0.0 <= phi < 2 * math.pi):
                raise ValueError(f"angles ({theta}, {phi}) out of range")

    @classmethod
    def from_params(cls, params: Sequence[float]) -> "MeasurementSetting":
        """Fold an unconstrained flat ``[t0, p0, t1, p1, ...]`` vector into range."""
        p = list(params)
        return cls(tuple(_canonical(p[2 * k], p[2 * k + 1]) for k in range(len(p) // 2)))

    @classmethod
    def uniform(cls, n: int, theta: float, phi: float = 0.0) -> "MeasurementSetting":
        return cls(((theta, phi),) * n)

    def basis(self, party: int) -> np.ndarray:
        """Columns are the two measurement vectors of ``party``."""
        return _basis_from_params(*self.angles[party])


def _basis_from_params(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[c, -s * e.conjugate()], [e * s, c]], dtype=complex)


def _outcome_probs(matrix: np.ndarray, bases: Sequence[np.ndarray]) -> np.ndarray:
    b = kron_all(*bases)
    p = np.einsum("ki,kl,li->i", b.conj(), matrix, b).real
    return np.clip(p, 0.0, None)


def induced_distribution(rho: DensityOperator, settings: MeasurementSetting) -> ProbTensor:
    """Joint outcome distribution of local projective measurements on a qubit register."""
    if rho.local_dim != 2:
        raise ValueError("local measurements are implemented for qubits only")
    n = rho.num_parties
    if len(settings.angles) != n:
        raise ValueError(f"need {n} settings, got {len(settings.angles)}")
    p = _outcome_probs(rho.matrix, [settings.basis(k) for k in range(n)])
    return ProbTensor(p / p.sum(), 2)


def induced_cmi(rho: DensityOperator, settings: MeasurementSetting, a: int, b: int, cond: Sequence[int]) -> float:
    return classical_cmi(induced_distribution(rho, settings), a, b, cond)


@dataclass(frozen=True)
class OptResult:
    best_value: float
    best_setting: MeasurementSetting
    evaluations: int
    converged: bool


def optimize_classical_cmi(
    rho: DensityOperator,
    a: int,
    b: int,
    cond: Sequence[int] | None = None,
    restarts: int = 8,
    seed: int = 0,
) -> OptResult:
    """Maximize the measured ``I(a : b | cond)`` over local projective measurements.

    ``cond`` defaults to every other party. Parties outside ``a, b, cond``
    are traced out anyway and keep the computational basis. Ties between
    restarts go to the lowest restart index.
    """
    n = rho.num_parties
    if rho.local_dim != 2:
        raise ValueError("local measurements are implemented for qubits only")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if cond is None:
        cond = [x for x in range(n) if x not in (a, b)]
    active = sorted({a, b, *cond})
    m = rho.matrix
    fixed = np.eye(2, dtype=complex)

    def full_params(x: np.ndarray) -> list[float]:
        params = [0.0] * (2 * n)
        for slot, party in enumerate(active):
            params[2 * party] = x[2 * slot]
            params[2 * party + 1] = x[2 * slot + 1]
        return params

    def objective(x: np.ndarray) -> float:
        bases = [fixed] * n
        for slot, party in enumerate(active):
            bases[party] = _basis_from_params(x[2 * slot], x[2 * slot + 1])
        p = _outcome_probs(m, bases)
        return -classical_cmi(ProbTensor(p / p.sum(), 2, check=False), a, b, cond)

    gen = rng(seed)
    dim = 2 * len(active)
    starts = np.column_stack(
        [gen.uniform(0, math.pi, (restarts, len(active))), gen.uniform(0, 2 * math.pi, (restarts, len(active)))]
    )
    # interleave into [t0, p0, t1, p1, ...]
    order = [k // 2 + (len(active) if k % 2 else 0) for k in range(dim)]
    starts = starts[:, order]

    best = None
    total = 0
    for x0 in starts:
        simplex = np.vstack([x0, x0 + INITIAL_STEP * np.eye(dim)])
        res = minimize(objective, x0, method="Nelder-Mead", options={**_NM_OPTIONS, "initial_simplex": simplex})
        total += res.nfev
        value = -res.fun
        if best is None or value > best[0]:
            best = (value, res.x, res.nfev < MAX_EVALS)
    setting = MeasurementSetting.from_params(full_params(best[1]))
    value = induced_cmi(rho, setting, a, b, cond)
    return OptResult(value, setting, total, best[2])


@dataclass(frozen=True)
class MeasurementGap:
    """Quantum D_N versus the best measured conditional mutual information.

    ``gap`` uses the pair that minimizes the quantum D_N. With
    ``all_pairs=True`` the per-pair optima and their minimum are filled in.
    """

    quantum_value: float
    pair: tuple[int, int]
    classical_value: float
    gap: float
    pair_optima: dict[tuple[int, int], float] | None = None
    min_pair_optimum: float | None = None


def measurement_gap(rho: DensityOperator, restarts: int = 32, seed: int = 0, all_pairs: bool = False) -> MeasurementGap:
    q = dependence(rho)
    n = rho.num_parties

    def best_for(i: int, j: int) -> float:
        rest = [x for x in range(n) if x not in (i, j)]
        return optimize_classical_cmi(rho, i, j, rest, restarts=restarts, seed=seed).best_value

    a, b = q.min_pair
    classical = best_for(a, b)
    optima = None
    lowest = None
    if all_pairs:
        optima = {(i, j): (classical if (i, j) == (a, b) else best_for(i, j)) for i, j in combinations(range(n), 2)}
        lowest = min(optima.values())
    return MeasurementGap(q.value, (a, b), classical, q.value - classical, optima, lowest)

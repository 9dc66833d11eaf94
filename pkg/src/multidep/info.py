"""Shannon and von Neumann entropies, mutual and conditional mutual information.

All logarithms are taken in base ``d`` (the local dimension), so quantities
come out in dits: the largest classical mutual information between two
parties is 1, the largest quantum one is 2.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

import numpy as np

from .qmat import PSD_TOL, DensityOperator, ValidationError, reduce_matrix

PROB_TOL = 1e-12


class ProbTensor:
    """Joint distribution of ``N`` variables taking ``d`` values each.

    ``probs`` is flat with the same digit ordering as :class:`DensityOperator`
    (variable 0 is the most significant digit).
    """

    __slots__ = ("_probs", "_num_vars", "_local_dim")

    def __init__(self, probs, local_dim: int = 2, *, check: bool = True):
        p = np.array(probs, dtype=float).ravel()
        if local_dim < 2:
            raise ValueError(f"local dimension must be >= 2, got {local_dim}")
        n = round(math.log(p.size, local_dim)) if p.size > 1 else 0
        if n < 1 or local_dim**n != p.size:
            raise ValueError(f"length {p.size} is not a positive power of {local_dim}")
        if check:
            if p.min() < -PROB_TOL:
                raise ValidationError(f"negative probability {p.min():.3g}")
            if abs(p.sum() - 1.0) > PROB_TOL:
                raise ValidationError(f"probabilities sum to {p.sum():.15g}, expected 1")
        np.clip(p, 0.0, None, out=p)
        p.setflags(write=False)
        self._probs = p
        self._num_vars = n
        self._local_dim = int(local_dim)

    @classmethod
    def from_dict(cls, table: dict[str, float], num_vars: int, local_dim: int = 2) -> "ProbTensor":
        """Build from ``{"011": 0.25, ...}``; missing outcomes have probability 0."""
        p = np.zeros(local_dim**num_vars)
        for outcome, value in table.items():
            if len(outcome) != num_vars:
                raise ValueError(f"outcome {outcome!r} does not have {num_vars} digits")
            p[int(outcome, local_dim)] += value
        return cls(p, local_dim)

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def num_vars(self) -> int:
        return self._num_vars

    # parties and variables are interchangeable in the dependence code
    num_parties = num_vars

    @property
    def local_dim(self) -> int:
        return self._local_dim

    def marginal(self, keep: Iterable[int]) -> np.ndarray:
        """Marginal probabilities of the variables in ``keep`` (ascending order)."""
        keep = sorted(set(keep))
        n = self._num_vars
        if not keep:
            return np.ones(1)
        t = self._probs.reshape((self._local_dim,) * n)
        drop = tuple(i for i in range(n) if i not in keep)
        return t.sum(axis=drop).ravel()

    def to_density(self) -> DensityOperator:
        """Embed as a diagonal density operator."""
        return DensityOperator(np.diag(self._probs.astype(complex)), self._local_dim, check=False)

    def __repr__(self) -> str:
        return f"ProbTensor(num_vars={self._num_vars}, local_dim={self._local_dim})"


State = Union[DensityOperator, ProbTensor]


def shannon_entropy(p, base: float | None = None) -> float:
    """``-sum p log_base p`` with ``0 log 0 = 0``.

    ``base`` defaults to the local dimension for a :class:`ProbTensor` and to
    2 for a bare array of probabilities.
    """
    if isinstance(p, ProbTensor):
        base = base or p.local_dim
        p = p.probs
    base = base or 2
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    h = -float(np.sum(nz * np.log(nz))) / math.log(base)
    return max(h, 0.0)


def spectrum(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix with numerical negatives clipped to zero."""
    m = np.asarray(matrix)
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if w[0] < -PSD_TOL:
        raise ValidationError(f"eigenvalue {w[0]:.3g} is below -{PSD_TOL:g}")
    return np.clip(w, 0.0, None)


def matrix_entropy(matrix: np.ndarray, base: float) -> float:
    return shannon_entropy(spectrum(matrix), base)


def von_neumann_entropy(rho: DensityOperator) -> float:
    return matrix_entropy(rho.matrix, rho.local_dim)


def subsystem_entropy(state: State, parties: Iterable[int]) -> float:
    """Entropy of the marginal on ``parties``; the empty set has entropy 0."""
    parties = sorted(set(parties))
    if not parties:
        return 0.0
    n = state.num_parties
    if parties[0] < 0 or parties[-1] >= n:
        raise IndexError(f"party indices {parties} out of range for {n} parties")
    if isinstance(state, ProbTensor):
        return shannon_entropy(state.marginal(parties), state.local_dim)
    d = state.local_dim
    return matrix_entropy(reduce_matrix(state.matrix, state.dims, parties), d)


def _as_group(x) -> frozenset[int]:
    if isinstance(x, (int, np.integer)):
        return frozenset([int(x)])
    return frozenset(int(i) for i in x)


def _disjoint(*groups: frozenset[int]) -> None:
    seen: set[int] = set()
    for g in groups:
        if seen & g:
            raise ValueError(f"party groups overlap on {sorted(seen & g)}")
        seen |= g


def grouped_cmi(state: State, a, b, cond=()) -> float:
    """``I(A : B | C) = S(AC) + S(BC) - S(C) - S(ABC)`` for groups of parties."""
    A, B, C = _as_group(a), _as_group(b), _as_group(cond)
    if not A or not B:
        raise ValueError("both sides of the mutual information need at least one party")
    _disjoint(A, B, C)
    return (
        subsystem_entropy(state, A | C)
        + subsystem_entropy(state, B | C)
        - subsystem_entropy(state, C)
        - subsystem_entropy(state, A | B | C)
    )


def mutual_information(state: State, group_a, group_b) -> float:
    """``I(A : B) = S(A) + S(B) - S(AB)``; parties outside ``A | B`` are traced out."""
    return grouped_cmi(state, group_a, group_b, ())


def conditional_mutual_information(state: State, a: int, b: int, cond=()) -> float:
    """``I(a : b | cond)`` between two single parties."""
    if int(a) == int(b):
        raise ValueError("a and b must be different parties")
    return grouped_cmi(state, [a], [b], cond)


def classical_cmi(p: ProbTensor, a: int, b: int, cond=()) -> float:
    """Classical ``I(a : b | cond)`` computed straight from marginal sums."""
    if not isinstance(p, ProbTensor):
        raise TypeError("classical_cmi expects a ProbTensor")
    return conditional_mutual_information(p, a, b, cond)

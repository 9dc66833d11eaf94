"""Quantum secret sharing of one qubit with Smolin-type encodings.

The encoder spreads a qubit secret over ``N`` (even) qubit shares so that
every proper subset of shares sees the maximally mixed state; the decoder
reads the secret back from the expectation values of ``sigma_j^{(x)N}``.

Caveat: the encoder is Hermiticity and trace preserving and the decoder
inverts it exactly, but its output is positive only for part of the Bloch
ball (for ``sum_j |s_j| <= 1`` it always is). :func:`encoding_is_positive`
checks a given secret. Encoders built from a genuine Choi state with
:func:`choi_encoder` are completely positive.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .channels import ChoiChannel, channel_from_choi, choi
from .dependence import dependence
from .info import matrix_entropy, subsystem_entropy
from .qmat import DensityOperator, kron_all, reduce_matrix
from .states import PAULI

MAX_AUDIT_PARTIES = 8


def _secret_matrix(rho) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"secret must be a single qubit, got shape {m.shape}")
    return m


def _check_even(n: int) -> None:
    if n < 4 or n % 2:
        raise ValueError(f"number of shares must be even and >= 4, got {n}")


def _sign(n: int) -> int:
    return (-1) ** (n // 2)


def _strings(n: int) -> dict[str, np.ndarray]:
    return {p: kron_all(*([PAULI[p]] * n)) for p in "XYZ"}


def ss_encode(rho_secret, n: int) -> DensityOperator:
    """``2^-N (I Tr rho + (-1)^{N/2} sum_j sigma_j^{(x)N} Tr(sigma_j^T rho))``."""
    _check_even(n)
    m = _secret_matrix(rho_secret)
    out = np.trace(m) * np.eye(2**n, dtype=complex)
    for p, big in _strings(n).items():
        out += _sign(n) * np.trace(PAULI[p].T @ m) * big
    out /= 2**n
    return DensityOperator((out + out.conj().T) / 2, 2, check=False)


def _pauli_readout(shares: np.ndarray, n: int, sign: int) -> np.ndarray:
    acc = PAULI["I"].copy()
    for p, big in _strings(n).items():
        acc += sign * np.trace(big @ shares) * PAULI[p]
    return (acc / 2).T


def ss_decode(rho_shares) -> np.ndarray:
    """``1/2 (I + (-1)^{N/2} sum_j Tr(sigma_j^{(x)N} rho_N) sigma_j)^T``."""
    m = rho_shares.matrix if isinstance(rho_shares, DensityOperator) else np.asarray(rho_shares, dtype=complex)
    n = int(round(np.log2(m.shape[0])))
    _check_even(n)
    return _pauli_readout(m, n, _sign(n))


def encoding_is_positive(rho_secret, n: int, tol: float = 1e-10) -> bool:
    return bool(np.linalg.eigvalsh(ss_encode(rho_secret, n).matrix)[0] >= -tol)


def leakage_audit(rho_shares: DensityOperator) -> float:
    """Largest trace distance ``||rho_S - I/d^|S| ||_1 / 2`` over non-empty proper subsets ``S``."""
    n = rho_shares.num_parties
    if n > MAX_AUDIT_PARTIES:
        raise ValueError(f"leakage audit enumerates 2^N subsets; N={n} exceeds {MAX_AUDIT_PARTIES}")
    worst = 0.0
    for size in range(1, n):
        for subset in combinations(range(n), size):
            m = reduce_matrix(rho_shares.matrix, rho_shares.dims, subset)
            diff = m - np.eye(m.shape[0]) / m.shape[0]
            dist = 0.5 * float(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)).sum())
            worst = max(worst, dist)
    return worst


@dataclass(frozen=True)
class SecretSharingScheme:
    num_shares: int

    def __post_init__(self):
        _check_even(self.num_shares)

    def encode(self, rho_secret) -> DensityOperator:
        return ss_encode(rho_secret, self.num_shares)

    def decode(self, rho_shares) -> np.ndarray:
        return ss_decode(rho_shares)

    def choi(self) -> DensityOperator:
        """Choi state of the encoder on reference (x) shares (not positive; see module notes)."""
        return choi(lambda e: self.encode(e).matrix, d_in=2, check=False)


def choi_encoder(rho_c: DensityOperator) -> ChoiChannel:
    """Encoder ``A -> X^{(x)N}`` whose Choi state is ``rho_c`` (party 0 is the reference)."""
    return channel_from_choi(rho_c, rho_c.dims[0])


@dataclass(frozen=True)
class RateBoundReport:
    """Computable points of the lower-bound chain on the sharing rate (dits).

    ``coherent_info = -S(A | X_1...X_N)`` at the Choi state; the chain gives
    ``coherent_info = cmi_term - cond_entropy_term >= cmi_term - 1 >= dependence_value - 1``.
    """

    dependence_value: float
    coherent_info: float
    cmi_term: float
    cond_entropy_term: float
    lower_bound: float
    marginals_maximally_mixed: bool


def rate_bound(rho_c: DensityOperator, tol: float = 1e-8) -> RateBoundReport:
    """Evaluate the bound chain with party 0 of ``rho_c`` as the reference ``A``."""
    n = rho_c.num_parties
    d = rho_c.local_dim
    mixed = True
    for i in range(n):
        m = reduce_matrix(rho_c.matrix, rho_c.dims, [i])
        if np.abs(m - np.eye(d) / d).max() > tol:
            mixed = False
    if not mixed:
        warnings.warn("single-party marginals of the Choi state are not maximally mixed", stacklevel=2)
    everyone = range(n)
    shares = [i for i in everyone if i != 0]
    s_all = matrix_entropy(rho_c.matrix, d)
    coherent = subsystem_entropy(rho_c, shares) - s_all
    rest = [i for i in everyone if i not in (0, 1)]
    cond = subsystem_entropy(rho_c, [0] + rest) - subsystem_entropy(rho_c, rest)
    cmi_term = coherent + cond
    dep = dependence(rho_c).value
    return RateBoundReport(dep, coherent, cmi_term, cond, dep - 1.0, mixed)

"""Dense density operators over registers of identical local dimension.

Index convention: party 0 is the most significant base-d digit of a row or
column index, so ``|x0 x1 ... x_{N-1}>`` maps to ``sum_k x_k d**(N-1-k)``.
Parties are numbered from 0 throughout the package.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


class ValidationError(ValueError):
    """Raised when a matrix or distribution violates a state invariant."""


class EigDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, sorted descending
    eigenvectors: np.ndarray  # columns, unitary


def _infer_num_parties(size: int, local_dim: int) -> int:
    if local_dim < 2:
        raise ValueError(f"local dimension must be >= 2, got {local_dim}")
    n = round(math.log(size, local_dim)) if size > 1 else 0
    if n < 1 or local_dim**n != size:
        raise ValueError(f"size {size} is not a positive power of {local_dim}")
    return n


class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix on a multipartite register.

    The register normally has a uniform local dimension ``d``; ``dims`` may
    describe a mixed register (needed only as the input of
    :func:`split_subsystem`), but entropy-based functions reject those.

    Instances are immutable: the stored matrix is a read-only copy.
    """

    __slots__ = ("_matrix", "_dims")

    def __init__(
        self,
        matrix,
        local_dim: int = 2,
        *,
        dims: Sequence[int] | None = None,
        check: bool = True,
    ):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if dims is None:
            n = _infer_num_parties(m.shape[0], int(local_dim))
            dims = (int(local_dim),) * n
        else:
            dims = tuple(int(x) for x in dims)
            if any(x < 2 for x in dims) or math.prod(dims) != m.shape[0]:
                raise ValueError(f"dims {dims} do not match matrix size {m.shape[0]}")
        m.setflags(write=False)
        self._matrix = m
        self._dims = dims
        if check:
            self.validate()

    @classmethod
    def from_vector(cls, psi, local_dim: int = 2, *, dims=None) -> "DensityOperator":
        """Projector onto a normalized state vector."""
        v = np.asarray(psi, dtype=complex).ravel()
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-8:
            raise ValidationError(f"state vector is not normalized (norm={norm:.12g})")
        return cls(np.outer(v, v.conj()), local_dim, dims=dims, check=False)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    @property
    def num_parties(self) -> int:
        return len(self._dims)

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def is_uniform(self) -> bool:
        return len(set(self._dims)) == 1

    @property
    def local_dim(self) -> int:
        if not self.is_uniform:
            raise ValidationError(f"register has mixed local dimensions {self._dims}")
        return self._dims[0]

    def validate(self) -> "DensityOperator":
        m = self._matrix
        herm = np.abs(m - m.conj().T).max()
        if herm > HERMITIAN_TOL:
            raise ValidationError(f"matrix is not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr.real:.12g}, expected 1")
        lowest = np.linalg.eigvalsh(m)[0]
        if lowest < -PSD_TOL:
            raise ValidationError(f"matrix is not positive semidefinite (eigenvalue {lowest:.3g})")
        return self

    def __repr__(self) -> str:
        return f"DensityOperator(dims={self._dims})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensityOperator):
            return NotImplemented
        return self._dims == other._dims and np.array_equal(self._matrix, other._matrix)

    __hash__ = None


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``out[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*ops) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def tensor(*states: DensityOperator) -> DensityOperator:
    """Tensor product of density operators, concatenating their registers."""
    dims: tuple[int, ...] = ()
    for s in states:
        dims += s.dims
    return DensityOperator(kron_all(*(s.matrix for s in states)), dims=dims, check=False)


def append_product_party(rho: DensityOperator, extra: DensityOperator, position: int | None = None) -> DensityOperator:
    """Insert the single-party state ``extra`` as a product factor at ``position`` (default: last)."""
    if extra.num_parties != 1:
        raise ValueError("extra must be a single-party state")
    n = rho.num_parties
    position = n if position is None else position
    if not 0 <= position <= n:
        raise IndexError(f"position {position} out of range for {n} parties")
    joined = tensor(rho, extra)
    order = list(range(n))
    order.insert(position, n)
    return permute_parties(joined, order)


def reduce_matrix(matrix: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace keeping the parties in ``keep`` (in ascending order)."""
    n = len(dims)
    keep = sorted(keep)
    if len(keep) == n:
        return np.asarray(matrix)
    t = np.asarray(matrix).reshape(tuple(dims) * 2)
    rows = list(_LETTERS[:n])
    cols = list(_LETTERS[n : 2 * n])
    kept = set(keep)
    for i in range(n):
        if i not in kept:
            cols[i] = rows[i]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    size = math.prod(dims[i] for i in keep)
    return np.einsum("".join(rows) + "".join(cols) + "->" + out, t).reshape(size, size)


def _check_parties(parties: Iterable[int], n: int) -> set[int]:
    out = set()
    for p in parties:
        p = int(p)
        if not 0 <= p < n:
            raise IndexError(f"party index {p} out of range for {n} parties")
        out.add(p)
    return out


def partial_trace(rho: DensityOperator, discard: Iterable[int]) -> DensityOperator:
    """Trace out the parties in ``discard``; the remaining parties keep their order."""
    n = rho.num_parties
    gone = _check_parties(discard, n)
    if len(gone) == n:
        raise ValueError("cannot trace out every party")
    keep = [i for i in range(n) if i not in gone]
    m = reduce_matrix(rho.matrix, rho.dims, keep)
    return DensityOperator(m, dims=[rho.dims[i] for i in keep], check=False)


def marginal(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    keep = _check_parties(keep, rho.num_parties)
    if not keep:
        raise ValueError("marginal needs at least one party")
    return partial_trace(rho, set(range(rho.num_parties)) - keep)


def permute_parties(rho: DensityOperator, order: Sequence[int]) -> DensityOperator:
    """Reorder parties so that new party ``k`` is old party ``order[k]``."""
    n = rho.num_parties
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of range({n})")
    t = rho.matrix.reshape(rho.dims * 2)
    axes = list(order) + [n + i for i in order]
    dims = [rho.dims[i] for i in order]
    m = t.transpose(axes).reshape(rho.dim, rho.dim)
    return DensityOperator(m, dims=dims, check=False)


def split_subsystem(rho: DensityOperator, party: int, d1: int, d2: int) -> DensityOperator:
    """Reinterpret one party of dimension ``d1*d2`` as two adjacent parties.

    Only the index bookkeeping changes; the matrix is untouched. The result
    must have a uniform local dimension.
    """
    (party,) = _check_parties([party], rho.num_parties)
    if rho.dims[party] != d1 * d2:
        raise ValueError(f"party {party} has dimension {rho.dims[party]}, not {d1}*{d2}")
    dims = rho.dims[:party] + (d1, d2) + rho.dims[party + 1 :]
    if len(set(dims)) != 1:
        raise ValueError(f"split would leave a mixed register {dims}")
    return DensityOperator(rho.matrix, dims=dims, check=False)


def merge_subsystems(rho: DensityOperator, party: int) -> DensityOperator:
    """Inverse of :func:`split_subsystem`: fuse ``party`` and ``party + 1``."""
    _check_parties([party, party + 1], rho.num_parties)
    dims = rho.dims[:party] + (rho.dims[party] * rho.dims[party + 1],) + rho.dims[party + 2 :]
    return DensityOperator(rho.matrix, dims=dims, check=False)


def hermitian_eig(m) -> EigDecomposition:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max() if m.size else 0.0
    if dev > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    # symmetrize so LAPACK sees an exactly Hermitian input
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return EigDecomposition(w[::-1].copy(), v[:, ::-1].copy())


def rng(seed: int | None) -> np.random.Generator:
    """The package-wide PRNG: NumPy's PCG64 seeded with a 64-bit integer."""
    return np.random.Generator(np.random.PCG64(seed))


def random_density(num_parties: int, d: int = 2, rank: int | None = None, seed: int | None = None) -> DensityOperator:
    """Random state ``G G^dag / Tr(G G^dag)`` from a complex Gaussian ``d^N x rank`` matrix."""
    dim = d**num_parties
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be in [1, {dim}], got {rank}")
    gen = rng(seed)
    g = gen.standard_normal((dim, rank)) + 1j * gen.standard_normal((dim, rank))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityOperator(m / np.trace(m).real, d, check=False)


def random_pure_vector(num_parties: int, d: int = 2, seed: int | None = None) -> np.ndarray:
    gen = rng(seed)
    dim = d**num_parties
    v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
    return v / np.linalg.norm(v)


def maximally_mixed(num_parties: int, d: int = 2) -> DensityOperator:
    dim = d**num_parties
    return DensityOperator(np.eye(dim) / dim, d, check=False)

"""Local CPTP maps in Kraus form, Choi states, and the monotonicity experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .dependence import dependence
from .info import conditional_mutual_information, grouped_cmi
from .qmat import DensityOperator, ValidationError, rng

TP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausChannel:
    d_in: int
    d_out: int
    kraus_ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=complex) for k in self.kraus_ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (self.d_out, self.d_in):
                raise ValueError(f"Kraus operator of shape {k.shape}, expected {(self.d_out, self.d_in)}")
            k.setflags(write=False)
        object.__setattr__(self, "kraus_ops", ops)
        dev = np.abs(sum(k.conj().T @ k for k in ops) - np.eye(self.d_in)).max()
        if dev > TP_TOL:
            raise ValidationError(f"Kraus operators are not trace preserving (deviation {dev:.3g})")

    @classmethod
    def from_ops(cls, ops) -> "KrausChannel":
        ops = [np.asarray(k, dtype=complex) for k in ops]
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        d_out, d_in = ops[0].shape
        return cls(d_in, d_out, tuple(ops))

    def __call__(self, matrix) -> np.ndarray:
        m = np.asarray(matrix, dtype=complex)
        return sum(k @ m @ k.conj().T for k in self.kraus_ops)

    def __len__(self) -> int:
        return len(self.kraus_ops)


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel(d, d, (np.eye(d),))


def depolarizing_channel(d: int = 2) -> KrausChannel:
    """Completely depolarizing map ``rho -> Tr(rho) I / d``."""
    ops = []
    for i in range(d):
        for j in range(d):
            k = np.zeros((d, d))
            k[i, j] = 1 / math.sqrt(d)
            ops.append(k)
    return KrausChannel(d, d, tuple(ops))


def amplitude_damping_half() -> KrausChannel:
    s = 1 / math.sqrt(2)
    k0 = np.array([[0, s], [0, 0]])
    k1 = np.array([[1, 0], [0, s]])
    return KrausChannel(2, 2, (k0, k1))


def apply_channel(rho: DensityOperator, ch: KrausChannel, party: int) -> DensityOperator:
    """Apply ``ch`` to one party, acting as the identity elsewhere."""
    n = rho.num_parties
    if not 0 <= party < n:
        raise IndexError(f"party {party} out of range for {n} parties")
    d = rho.dims[party]
    if ch.d_in != d or ch.d_out != d:
        raise ValueError(f"channel maps {ch.d_in} -> {ch.d_out}, party {party} has dimension {d}")
    left = math.prod(rho.dims[:party])
    right = math.prod(rho.dims[party + 1 :])
    t = rho.matrix.reshape(left, d, right, left, d, right)
    out = np.zeros_like(t)
    for k in ch.kraus_ops:
        out += np.einsum("ab,ibjkcl,dc->iajkdl", k, t, k.conj())
    m = out.reshape(rho.dim, rho.dim)
    return DensityOperator((m + m.conj().T) / 2, dims=rho.dims, check=False)


def apply_local(rho: DensityOperator, channels: Mapping[int, KrausChannel]) -> DensityOperator:
    """Apply one channel per listed party (local channels commute)."""
    for party in sorted(channels):
        rho = apply_channel(rho, channels[party], party)
    return rho


def choi(
    ch: KrausChannel | Callable[[np.ndarray], np.ndarray],
    d_in: int | None = None,
    d_out: int | None = None,
    *,
    check: bool = True,
) -> DensityOperator:
    """Choi state ``(id (x) ch)(|Phi><Phi|)`` with unit trace, reference first.

    Arbitrary maps (any callable on matrices) are accepted when ``d_in`` is
    given; the output register is split into parties of dimension ``d_in``.
    """
    if isinstance(ch, KrausChannel):
        d_in, d_out = ch.d_in, ch.d_out
    elif d_in is None:
        raise ValueError("d_in is required for a non-Kraus map")
    blocks = {}
    for i in range(d_in):
        for j in range(d_in):
            e = np.zeros((d_in, d_in), dtype=complex)
            e[i, j] = 1
            blocks[i, j] = np.asarray(ch(e), dtype=complex)
    if d_out is None:
        d_out = blocks[0, 0].shape[0]
    n_out = round(math.log(d_out, d_in))
    if d_in**n_out != d_out:
        raise ValueError(f"output dimension {d_out} is not a power of {d_in}")
    m = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for (i, j), b in blocks.items():
        m[i * d_out : (i + 1) * d_out, j * d_out : (j + 1) * d_out] = b / d_in
    return DensityOperator(m, d_in, check=check)


class ChoiChannel:
    """Channel recovered from a normalized Choi state: ``d_in Tr_ref[(rho^T (x) I) C]``."""

    def __init__(self, c: DensityOperator | np.ndarray, d_in: int, *, tol: float = 1e-8):
        m = c.matrix if isinstance(c, DensityOperator) else np.asarray(c, dtype=complex)
        if m.shape[0] % d_in:
            raise ValueError(f"Choi matrix of size {m.shape[0]} has no {d_in}-dimensional reference")
        d_out = m.shape[0] // d_in
        t = m.reshape(d_in, d_out, d_in, d_out)
        ref = np.einsum("axbx->ab", t)
        dev = np.abs(ref - np.eye(d_in) / d_in).max()
        if dev > tol:
            raise ValidationError(f"Choi state violates the trace-preservation marginal (deviation {dev:.3g})")
        self.d_in = d_in
        self.d_out = d_out
        self._t = t

    def __call__(self, rho) -> np.ndarray:
        m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
        return self.d_in * np.einsum("ba,bxay->xy", m, self._t)


def channel_from_choi(c: DensityOperator | np.ndarray, d_in: int | None = None) -> ChoiChannel:
    if d_in is None:
        if not isinstance(c, DensityOperator):
            raise ValueError("d_in is required for a bare matrix")
        d_in = c.dims[0]
    return ChoiChannel(c, d_in)


def random_channel(d: int, kraus_rank: int, seed: int | None = None) -> KrausChannel:
    """Kraus operators cut from a random isometry ``C^d -> C^d (x) C^r`` (Stinespring)."""
    if not 1 <= kraus_rank <= d * d:
        raise ValueError(f"Kraus rank must be in [1, {d * d}], got {kraus_rank}")
    gen = rng(seed)
    shape = (d * kraus_rank, d)
    g = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    q, r = np.linalg.qr(g)
    # fix column phases so the isometry is Haar distributed
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    ops = tuple(q[k * d : (k + 1) * d, :] for k in range(kraus_rank))
    return KrausChannel(d, d, ops)


@dataclass(frozen=True)
class MonotonicityRecord:
    """Both sides of the local-operation bound on conditional mutual information.

    ``cmi_after <= cmi_before + info_before - info_after`` is the bound;
    ``bound_slack`` is right side minus left side.
    """

    pair: tuple[int, int]
    cmi_before: float
    cmi_after: float
    info_before: float
    info_after: float
    bound_slack: float = field(init=False)

    def __post_init__(self):
        slack = (self.cmi_before + self.info_before - self.info_after) - self.cmi_after
        object.__setattr__(self, "bound_slack", slack)


def monotonicity_gap(
    rho: DensityOperator,
    channels: Mapping[int, KrausChannel],
    a: int | None = None,
    b: int | None = None,
) -> MonotonicityRecord:
    """Evaluate the bound for local channels on any parties.

    With ``a`` and ``b`` given, tracks ``I(a : b | rest)`` before and after.
    Without them, uses the pair minimizing D_N before the channels and
    compares D_N with the post-channel D_N (the dependence form of the bound).
    The information terms are ``I(ab : rest)`` before, and after the
    channels on ``rest`` only.
    """
    n = rho.num_parties
    after = apply_local(rho, channels)
    if a is None and b is None:
        before_report = dependence(rho)
        a, b = before_report.min_pair
        cmi_before = before_report.value
        cmi_after = dependence(after).value
    elif a is None or b is None:
        raise ValueError("give both a and b, or neither")
    else:
        if a == b:
            raise ValueError("a and b must differ")
        rest = [x for x in range(n) if x not in (a, b)]
        cmi_before = conditional_mutual_information(rho, a, b, rest)
        cmi_after = conditional_mutual_information(after, a, b, rest)
    rest = [x for x in range(n) if x not in (a, b)]
    rest_only = apply_local(rho, {p: ch for p, ch in channels.items() if p in rest})
    info_before = grouped_cmi(rho, [a, b], rest)
    info_after = grouped_cmi(rest_only, [a, b], rest)
    return MonotonicityRecord((a, b), cmi_before, cmi_after, info_before, info_after)

"""Reference states and distributions: GHZ, Dicke, graph and stabilizer states,
Weyl-Heisenberg (N-1)-uniform mixed states, Smolin states and friends."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .info import ProbTensor
from .qmat import DensityOperator, ValidationError, kron_all

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASES = {"+": 1, "-": -1, "+i": 1j, "-i": -1j, "i": 1j}


@dataclass(frozen=True)
class PauliString:
    """Signed tensor word over ``{I, X, Y, Z}``, e.g. ``PauliString.parse("-XZZXI")``."""

    phase: complex
    letters: str

    def __post_init__(self):
        if self.phase not in (1, -1, 1j, -1j):
            raise ValueError(f"phase must be one of +1, -1, +i, -i, got {self.phase}")
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"invalid Pauli word {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        text = text.strip()
        i = 0
        while i < len(text) and text[i] in "+-i":
            i += 1
        prefix, word = text[:i], text[i:]
        if prefix == "":
            prefix = "+"
        if prefix not in _PHASES:
            raise ValueError(f"cannot parse phase {prefix!r} in {text!r}")
        return cls(_PHASES[prefix], word.upper())

    def __str__(self) -> str:
        sign = {1: "+", -1: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return sign + self.letters

    @property
    def num_qubits(self) -> int:
        return len(self.letters)

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (1, -1)

    def symplectic(self) -> np.ndarray:
        """Binary ``(x | z)`` vector of length ``2N``."""
        x = [c in "XY" for c in self.letters]
        z = [c in "ZY" for c in self.letters]
        return np.array(x + z, dtype=np.uint8)

    def commutes_with(self, other: "PauliString") -> bool:
        a, b = self.symplectic(), other.symplectic()
        n = self.num_qubits
        return int(a[:n] @ b[n:] + a[n:] @ b[:n]) % 2 == 0

    def to_matrix(self) -> np.ndarray:
        return self.phase * kron_all(*(PAULI[c] for c in self.letters))


def _gf2_rank(rows: np.ndarray) -> int:
    m = rows.copy() % 2
    rank = 0
    for col in range(m.shape[1]):
        pivot = next((r for r in range(rank, m.shape[0]) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(m.shape[0]):
            if r != rank and m[r, col]:
                m[r] ^= m[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class GraphSpec:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Sequence[int]]) -> "GraphSpec":
        return cls(num_vertices, tuple((int(u), int(v)) for u, v in edges))

    @classmethod
    def path(cls, n: int) -> "GraphSpec":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "GraphSpec":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))

    def neighbours(self, v: int) -> list[int]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)


def basis_digits(n: int, d: int = 2) -> np.ndarray:
    """``(d**n, n)`` array of base-d digits, most significant first."""
    idx = np.arange(d**n)
    return np.stack([(idx // d ** (n - 1 - k)) % d for k in range(n)], axis=1)


def ghz(n: int, d: int = 2) -> np.ndarray:
    """``(|0...0> + |1...1> + ... + |d-1...d-1>) / sqrt(d)``."""
    if n < 2 or d < 2:
        raise ValueError(f"GHZ needs n >= 2 and d >= 2, got n={n}, d={d}")
    v = np.zeros(d**n, dtype=complex)
    step = sum(d**k for k in range(n))
    v[np.arange(d) * step] = 1 / math.sqrt(d)
    return v


def dicke(n: int, e: int) -> np.ndarray:
    """Equal superposition of all n-qubit basis states with ``e`` ones."""
    if not 0 < e < n:
        raise ValueError(f"excitation number must satisfy 0 < e < {n}, got {e}")
    weights = basis_digits(n).sum(axis=1)
    v = (weights == e).astype(complex)
    return v / math.sqrt(math.comb(n, e))


def w_state(n: int) -> np.ndarray:
    return dicke(n, 1)


def graph_state(g: GraphSpec) -> np.ndarray:
    """``prod_{(u,v)} CZ_uv |+>^N`` for qubits."""
    n = g.num_vertices
    if n < 2:
        raise ValueError("graph state needs at least 2 vertices")
    bits = basis_digits(n)
    parity = np.zeros(2**n, dtype=int)
    for u, v in g.edges:
        parity += bits[:, u] * bits[:, v]
    return ((-1.0) ** parity).astype(complex) / 2 ** (n / 2)


def graph_stabilizers(g: GraphSpec) -> list[PauliString]:
    """Generators ``X_v prod_{w ~ v} Z_w``, one per vertex."""
    gens = []
    for v in range(g.num_vertices):
        word = ["I"] * g.num_vertices
        word[v] = "X"
        for w in g.neighbours(v):
            word[w] = "Z"
        gens.append(PauliString(1, "".join(word)))
    return gens


def stabilizer_state(generators: Sequence[PauliString], num_qubits: int | None = None) -> DensityOperator:
    """Normalized projector onto the joint +1 eigenspace of the generators."""
    gens = [PauliString.parse(g) if isinstance(g, str) else g for g in generators]
    if num_qubits is None:
        if not gens:
            raise ValueError("num_qubits is required when there are no generators")
        num_qubits = gens[0].num_qubits
    n = num_qubits
    for g in gens:
        if g.num_qubits != n:
            raise ValueError(f"generator {g} does not act on {n} qubits")
        if not g.is_hermitian:
            raise ValueError(f"generator {g} has a non-real phase")
    if len(gens) > n:
        raise ValueError(f"{len(gens)} generators exceed the register size {n}")
    for a, b in combinations(gens, 2):
        if not a.commutes_with(b):
            raise ValueError(f"generators {a} and {b} do not commute")
    if gens and _gf2_rank(np.array([g.symplectic() for g in gens])) < len(gens):
        raise ValueError("generators are not independent")
    dim = 2**n
    proj = np.eye(dim, dtype=complex)
    for g in gens:
        proj = proj @ ((np.eye(dim) + g.to_matrix()) / 2)
    proj /= 2 ** (n - len(gens))
    return DensityOperator((proj + proj.conj().T) / 2, 2, check=False)


# five-qubit code stabilizers plus logical Z
_AME_5 = ("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ", "+ZZZZZ")
# five-qubit code with one half of a Bell pair: code stabilizers (x) I plus X_L X, Z_L Z
_AME_6 = ("+XZZXII", "+IXZZXI", "+XIXZZI", "+ZXIXZI", "+XXXXXX", "+ZZZZZZ")


def ame_generators(n: int, d: int = 2) -> list[PauliString]:
    if d != 2 or n not in (5, 6):
        raise ValueError(f"no AME({n},{d}) preset; available: AME(5,2), AME(6,2)")
    return [PauliString.parse(s) for s in (_AME_5 if n == 5 else _AME_6)]


def ame_state(n: int, d: int = 2) -> DensityOperator:
    return stabilizer_state(ame_generators(n, d))


def weyl_heisenberg(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift ``X = sum_j |j><j+1|`` and clock ``Z = sum_j w^j |j><j|``, ``w = exp(2 pi i / d)``."""
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[j, (j + 1) % d] = 1
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


def kuniform_mixed(n: int, d: int = 2) -> DensityOperator:
    """``(1/d^N) sum_{i,j} G1^i G2^j`` with ``G1 = X^{(x)N}``, ``G2 = Z^{(x)N}``."""
    if n < 3 or n % d:
        raise ValueError(f"N must be a multiple of d and at least 3, got N={n}, d={d}")
    x, z = weyl_heisenberg(d)
    m = np.zeros((d**n, d**n), dtype=complex)
    for i in range(d):
        xi = np.linalg.matrix_power(x, i)
        for j in range(d):
            local = xi @ np.linalg.matrix_power(z, j)
            m += kron_all(*([local] * n))
    m /= d**n
    return DensityOperator((m + m.conj().T) / 2, d, check=False)


def smolin(n: int) -> DensityOperator:
    """``2^-N (I + (-1)^{N/2} sum_j sigma_j^{(x)N})`` for even ``N >= 4``."""
    if n < 4 or n % 2:
        raise ValueError(f"Smolin state needs an even N >= 4, got {n}")
    sign = (-1) ** (n // 2)
    m = kron_all(*([PAULI["I"]] * n))
    for p in "XYZ":
        m = m + sign * kron_all(*([PAULI[p]] * n))
    return DensityOperator(m / 2**n, 2, check=False)


def nc_state(n: int) -> DensityOperator:
    """Equal mixture of the Dicke states with 1 and N-1 excitations."""
    if n < 3:
        raise ValueError(f"need N >= 3, got {n}")
    a, b = dicke(n, 1), dicke(n, n - 1)
    m = 0.5 * np.outer(a, a.conj()) + 0.5 * np.outer(b, b.conj())
    return DensityOperator(m, 2, check=False)


CLASSICAL_PRESETS: dict[str, dict[str, Fraction]] = {
    "P_same": {"000": Fraction(1, 2), "111": Fraction(1, 2)},
    "P_even": {s: Fraction(1, 4) for s in ("000", "110", "101", "011")},
    "AD_example": {"000": Fraction(1, 2), "101": Fraction(1, 8), "110": Fraction(1, 8), "111": Fraction(1, 4)},
}


def classical_presets(name: str) -> ProbTensor:
    try:
        table = CLASSICAL_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(CLASSICAL_PRESETS)}") from None
    if sum(table.values()) != 1:
        raise ValidationError(f"preset {name} does not sum to 1")
    return ProbTensor.from_dict({k: float(v) for k, v in table.items()}, 3, 2)


def product_state(*vectors) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for v in vectors:
        out = np.kron(out, np.asarray(v, dtype=complex))
    return out

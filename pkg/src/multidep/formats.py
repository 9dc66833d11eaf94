"""Plain-text file formats: DMAT v1, PDIST v1, KRAUS v1, Pauli lists and edge lists.

Lines starting with ``#`` and blank lines are ignored everywhere except
inside a DMAT or KRAUS matrix body, where blank lines are still skipped.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

import numpy as np

from .channels import KrausChannel
from .info import ProbTensor
from .qmat import DensityOperator
from .states import GraphSpec, PauliString


class FormatError(ValueError):
    """Malformed input file."""


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header(line: str, magic: str, keys: Iterable[str]) -> dict[str, int]:
    parts = line.split()
    if parts[:2] != [magic, "v1"]:
        raise FormatError(f"expected a '{magic} v1' header, got {line!r}")
    fields = {}
    for token in parts[2:]:
        m = re.fullmatch(r"(\w+)=(\d+)", token)
        if not m:
            raise FormatError(f"bad header field {token!r}")
        fields[m.group(1)] = int(m.group(2))
    missing = set(keys) - set(fields)
    if missing:
        raise FormatError(f"header is missing {sorted(missing)}")
    return fields


def _complex(token: str) -> complex:
    try:
        re_part, im_part = token.split(",")
        return complex(float(re_part), float(im_part))
    except ValueError:
        raise FormatError(f"cannot parse entry {token!r}; expected 're,im'") from None


def _matrix_rows(lines: list[str], rows: int, cols: int) -> np.ndarray:
    if len(lines) != rows:
        raise FormatError(f"expected {rows} matrix rows, got {len(lines)}")
    out = np.zeros((rows, cols), dtype=complex)
    for r, line in enumerate(lines):
        tokens = line.split()
        if len(tokens) != cols:
            raise FormatError(f"row {r} has {len(tokens)} entries, expected {cols}")
        out[r] = [_complex(t) for t in tokens]
    return out


def _format_matrix(m: np.ndarray) -> list[str]:
    return [" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row) for row in m]


def loads_dmat(text: str, validate: bool = True) -> DensityOperator:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty DMAT file")
    h = _header(lines[0], "DMAT", ("N", "d"))
    dim = h["d"] ** h["N"]
    m = _matrix_rows(lines[1:], dim, dim)
    return DensityOperator(m, h["d"], check=validate)


def dumps_dmat(rho: DensityOperator) -> str:
    head = f"DMAT v1 N={rho.num_parties} d={rho.local_dim}"
    return "\n".join([head, *_format_matrix(rho.matrix)]) + "\n"


def loads_pdist(text: str, validate: bool = True) -> ProbTensor:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty PDIST file")
    h = _header(lines[0], "PDIST", ("N", "d"))
    n, d = h["N"], h["d"]
    p = np.zeros(d**n)
    for line in lines[1:]:
        try:
            outcome, value = line.split(",")
            digits = [int(c, d) for c in outcome.strip()]
            prob = float(value)
        except ValueError:
            raise FormatError(f"cannot parse PDIST line {line!r}") from None
        if len(digits) != n:
            raise FormatError(f"outcome {outcome!r} does not have {n} digits")
        idx = 0
        for digit in digits:
            idx = idx * d + digit
        p[idx] += prob
    return ProbTensor(p, d, check=validate)


def dumps_pdist(p: ProbTensor) -> str:
    n, d = p.num_vars, p.local_dim
    out = [f"PDIST v1 N={n} d={d}"]
    for idx, value in enumerate(p.probs):
        if value > 0:
            digits = "".join(str((idx // d ** (n - 1 - k)) % d) for k in range(n))
            out.append(f"{digits},{float(value)!r}")
    return "\n".join(out) + "\n"


def loads_kraus(text: str) -> KrausChannel:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty KRAUS file")
    h = _header(lines[0], "KRAUS", ("d_in", "d_out", "k"))
    d_in, d_out, k = h["d_in"], h["d_out"], h["k"]
    body = lines[1:]
    if len(body) != k * d_out:
        raise FormatError(f"expected {k * d_out} rows for {k} Kraus operators, got {len(body)}")
    ops = tuple(_matrix_rows(body[i * d_out : (i + 1) * d_out], d_out, d_in) for i in range(k))
    return KrausChannel(d_in, d_out, ops)


def dumps_kraus(ch: KrausChannel) -> str:
    out = [f"KRAUS v1 d_in={ch.d_in} d_out={ch.d_out} k={len(ch.kraus_ops)}"]
    for op in ch.kraus_ops:
        out.extend(_format_matrix(op))
    return "\n".join(out) + "\n"


def loads_paulis(text: str) -> list[PauliString]:
    try:
        return [PauliString.parse(line) for line in _lines(text)]
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_paulis(gens: Iterable[PauliString]) -> str:
    return "".join(f"{g}\n" for g in gens)


def loads_edges(text: str) -> GraphSpec:
    """Edge list: optional ``N=<n>`` line, then ``u v`` pairs of 0-based vertices."""
    n = None
    edges = []
    for line in _lines(text):
        m = re.fullmatch(r"N\s*=\s*(\d+)", line)
        if m:
            n = int(m.group(1))
            continue
        tokens = line.replace(",", " ").split()
        if len(tokens) != 2:
            raise FormatError(f"cannot parse edge {line!r}")
        try:
            edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise FormatError(f"cannot parse edge {line!r}") from None
    if n is None:
        if not edges:
            raise FormatError("edge list is empty and has no N= line")
        n = max(max(e) for e in edges) + 1
    try:
        return GraphSpec.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dumps_edges(g: GraphSpec) -> str:
    return f"N={g.num_vertices}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


def read_text(path: str | Path) -> str:
    return Path(path).read_text()

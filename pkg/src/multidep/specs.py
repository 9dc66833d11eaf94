"""State-spec mini-language used on the command line.

Examples::

    ghz:N=4,d=2     dicke:N=6,e=3     w:N=3          cluster:linear,N=4
    cluster:ring,N=5                  graph:@g.edges smolin:N=4
    kuniform:N=3,d=3                  nc:N=5         stab:@s.paulis
    ame:5,2         pdist:P_even      pdist:@p.pdist dmat:@rho.dmat

``@path`` arguments are resolved relative to ``base_dir`` when given.
"""

from __future__ import annotations

from pathlib import Path

from . import formats, states
from .info import ProbTensor
from .qmat import DensityOperator


class SpecError(ValueError):
    """The spec string itself cannot be parsed."""


def _split(spec: str) -> tuple[str, list[str], dict[str, str]]:
    if ":" not in spec:
        raise SpecError(f"state spec {spec!r} has no 'kind:' prefix")
    kind, _, rest = spec.partition(":")
    positional, named = [], {}
    for token in filter(None, (t.strip() for t in rest.split(","))):
        if "=" in token:
            key, _, value = token.partition("=")
            named[key.strip()] = value.strip()
        else:
            positional.append(token)
    return kind.strip().lower(), positional, named


def _int(named: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in named:
        if default is None:
            raise SpecError(f"missing parameter {key}=")
        return default
    try:
        return int(named[key])
    except ValueError:
        raise SpecError(f"parameter {key}={named[key]!r} is not an integer") from None


def _file(positional: list[str], base_dir: Path | None) -> str:
    refs = [p for p in positional if p.startswith("@")]
    if len(refs) != 1:
        raise SpecError("expected exactly one @file argument")
    path = Path(refs[0][1:])
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    try:
        return path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None


def _pure(v) -> DensityOperator:
    return DensityOperator.from_vector(v)


def parse_state_spec(
    spec: str, base_dir: str | Path | None = None, validate: bool = True
) -> DensityOperator | ProbTensor:
    kind, pos, named = _split(spec)
    base = Path(base_dir) if base_dir is not None else None
    if kind == "ghz":
        d = _int(named, "d", 2)
        return DensityOperator.from_vector(states.ghz(_int(named, "N"), d), d)
    if kind == "dicke":
        return _pure(states.dicke(_int(named, "N"), _int(named, "e")))
    if kind == "w":
        return _pure(states.w_state(_int(named, "N")))
    if kind == "cluster":
        shapes = {"linear": states.GraphSpec.path, "ring": states.GraphSpec.cycle}
        if len(pos) != 1 or pos[0] not in shapes:
            raise SpecError("cluster needs one of 'linear' or 'ring'")
        return _pure(states.graph_state(shapes[pos[0]](_int(named, "N"))))
    if kind == "graph":
        return _pure(states.graph_state(formats.loads_edges(_file(pos, base))))
    if kind == "smolin":
        return states.smolin(_int(named, "N"))
    if kind == "kuniform":
        return states.kuniform_mixed(_int(named, "N"), _int(named, "d", 2))
    if kind == "nc":
        return states.nc_state(_int(named, "N"))
    if kind == "stab":
        return states.stabilizer_state(formats.loads_paulis(_file(pos, base)))
    if kind == "ame":
        if len(pos) == 2:
            named = {"n": pos[0], "d": pos[1], **named}
        return states.ame_state(_int(named, "n"), _int(named, "d", 2))
    if kind == "pdist":
        if len(pos) == 1 and not pos[0].startswith("@"):
            return states.classical_presets(pos[0])
        return formats.loads_pdist(_file(pos, base), validate=validate)
    if kind == "dmat":
        return formats.loads_dmat(_file(pos, base), validate=validate)
    raise SpecError(f"unknown state kind {kind!r}")

"""W / GHZ states, their two-qubit reductions and the GHZ-W mixture."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import qmat
from .errors import (
    DensityParseError,
    DimensionError,
    DomainError,
    NotPositiveError,
    TraceError,
)


@dataclass(frozen=True)
class PureState:
    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_qubits,):
            raise DimensionError(f"expected {1 << self.n_qubits} amplitudes, got {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > qmat.TAU_EIG:
            raise DomainError(f"state is not normalized: sum |a|^2 = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class TwoQubitDensity:
    """A validated 4x4 density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = qmat.as_matrix(self.matrix).copy()
        if m.shape != (4, 4):
            raise DimensionError(f"two-qubit density must be 4x4, got {m.shape[0]}x{m.shape[1]}")
        qmat.check_hermitian(m)
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > qmat.TAU_EIG:
            raise TraceError(f"trace must be 1, got {tr.real!r}")
        lowest = qmat.hermitian_eigenvalues(m)[0]
        if lowest < -qmat.TAU_EIG:
            raise NotPositiveError(f"density has negative eigenvalue {lowest!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class MixtureSpec:
    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"mixture needs an integer n >= 3, got {self.n}")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"mixing probability must lie in [0, 1], got {self.p}")


def build_w_state(n: int) -> PureState:
    if n < 2:
        raise DomainError(f"W state needs n >= 2, got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    for k in range(n):
        amps[1 << (n - 1 - k)] = 1.0 / math.sqrt(n)
    return PureState(n, amps)


def build_ghz_state(n: int) -> PureState:
    if n < 2:
        raise DomainError(f"GHZ state needs n >= 2, got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return PureState(n, amps)


def _w_pair_matrix(n: int) -> np.ndarray:
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = (n - 2) / n
    m[1, 1] = m[2, 2] = m[1, 2] = m[2, 1] = 1.0 / n
    return m


def _ghz_pair_matrix() -> np.ndarray:
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(np.complex128)


def reduced_w_pair(n: int) -> TwoQubitDensity:
    """Closed-form reduction of |W_n> to any two of its qubits."""
    if n < 3:
        raise DomainError(f"two-qubit W reduction needs n >= 3, got {n}")
    return TwoQubitDensity(_w_pair_matrix(n))


def reduced_ghz_pair(n: int) -> TwoQubitDensity:
    if n < 3:
        raise DomainError(f"two-qubit GHZ reduction needs n >= 3, got {n}")
    return TwoQubitDensity(_ghz_pair_matrix())


def mixture_ghz_w(spec: MixtureSpec) -> TwoQubitDensity:
    """p * (W pair) + (1 - p) * (GHZ pair), formed entrywise."""
    p = float(spec.p)
    return TwoQubitDensity(p * _w_pair_matrix(spec.n) + (1.0 - p) * _ghz_pair_matrix())


def mixture(n: int, p: float) -> TwoQubitDensity:
    return mixture_ghz_w(MixtureSpec(n, p))


def singlet() -> TwoQubitDensity:
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    return TwoQubitDensity(np.outer(psi, psi))


def _grid(value, name: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DensityParseError(f"field {name!r} is not a numeric grid: {exc}") from None
    if arr.ndim != 2:
        raise DimensionError(f"field {name!r} must be a 2-D grid, got {arr.ndim} dimension(s)")
    if not np.all(np.isfinite(arr)):
        raise DensityParseError(f"field {name!r} contains non-finite numbers")
    return arr


def load_density(text: str) -> TwoQubitDensity:
    """Parse a JSON document ``{"dim": 4, "re": [[...]], "im": [[...]]}``.

    ``im`` may be omitted for a real matrix.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DensityParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DensityParseError("density document must be a JSON object")
    if "dim" not in doc or "re" not in doc:
        raise DensityParseError("density document needs fields 'dim' and 're'")
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, (int, float)) or not math.isfinite(dim) or int(dim) != dim:
        raise DensityParseError(f"field 'dim' must be an integer, got {dim!r}")
    if dim != 4:
        raise DimensionError(f"dim must be 4, got {int(dim)}")
    re = _grid(doc["re"], "re")
    im = _grid(doc["im"], "im") if doc.get("im") is not None else np.zeros_like(re)
    for name, g in (("re", re), ("im", im)):
        if g.shape != (4, 4):
            raise DimensionError(f"field {name!r} must be 4x4, got {g.shape[0]}x{g.shape[1]}")
    return TwoQubitDensity(re + 1j * im)


def dump_density(rho: TwoQubitDensity) -> str:
    m = rho.matrix
    doc = {"dim": 4, "re": m.real.tolist(), "im": m.imag.tolist()}
    return json.dumps(doc, indent=2) + "\n"

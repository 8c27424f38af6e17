"""Entanglement, Bell-CHSH and teleportation diagnostics for two-qubit states.

The closed-form diagnostics (PPT determinants and spectrum, the Horodecki
quantity M and the standard-scheme fidelity F_max) work on any valid
:class:`~wghz.states.TwoQubitDensity`. Two numerical oracles, a CHSH maximizer
and a fully-entangled-fraction search, check them independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmat
from ._search import multistart
from .states import TwoQubitDensity

TAU_SIGN = 1e-10
CLASSICAL_FIDELITY = 2.0 / 3.0

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_PAULI_PAIRS = [[qmat.kron(si, sj) for sj in PAULIS] for si in PAULIS]


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, TwoQubitDensity) else TwoQubitDensity(rho).matrix


def _real(z: complex) -> float:
    if abs(z.imag) > qmat.TAU_EIG:
        raise ArithmeticError(f"expected a real value, imaginary residue {z.imag:.3e}")
    return float(z.real)


def w3_w4(rho) -> tuple[float, float]:
    """Leading 3x3 minor and full determinant of the partial transpose."""
    pt = qmat.partial_transpose_2(_matrix(rho))
    return _real(qmat.determinant(pt[:3, :3])), _real(qmat.determinant(pt))


def ppt_spectrum(rho) -> np.ndarray:
    return qmat.hermitian_eigenvalues(qmat.partial_transpose_2(_matrix(rho)))


def correlation_matrix(rho) -> np.ndarray:
    """3x3 real matrix C[i, j] = Tr[rho (sigma_i x sigma_j)], order x, y, z."""
    m = _matrix(rho)
    c = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            c[i, j] = _real(complex(np.trace(m @ _PAULI_PAIRS[i][j])))
    if np.max(np.abs(c)) > 1.0 + qmat.TAU_EIG:
        raise ArithmeticError("correlation entry exceeds 1 in magnitude")
    return c


def u_values(rho) -> np.ndarray:
    """Eigenvalues of U = C^T C, descending."""
    c = correlation_matrix(rho)
    return qmat.hermitian_eigenvalues(c.T @ c)[::-1].copy()


def m_value(rho) -> float:
    u = u_values(rho)
    return float(u[0] + u[1])


def f_max(rho) -> float:
    """Standard-scheme fidelity 1/2 (1 + (sqrt u1 + sqrt u2 + sqrt u3) / 3)."""
    u = u_values(rho)
    return 0.5 * (1.0 + sum(math.sqrt(max(v, 0.0)) for v in u) / 3.0)


def _unit(theta: float, phi: float) -> tuple[float, float, float]:
    st = math.sin(theta)
    return (st * math.cos(phi), st * math.sin(phi), math.cos(theta))


def chsh_value(c: np.ndarray, a, a2, b, b2) -> float:
    """<a.s x b.s> + <a.s x b'.s> + <a'.s x b.s> - <a'.s x b'.s> given C."""
    c = np.asarray(c, dtype=float)
    a, a2, b, b2 = (np.asarray(v, dtype=float) for v in (a, a2, b, b2))
    return float(a @ c @ (b + b2) + a2 @ c @ (b - b2))


def chsh_maximize(rho, restarts: int = 32, iters: int = 200, seed: int = 0) -> float:
    """Largest CHSH expectation found over unit measurement directions.

    Each of the four directions is given by spherical angles; the result is a
    lower bound on (and at convergence equal to) 2 sqrt(M).
    """
    c = correlation_matrix(rho).tolist()

    def objective(x):
        a = _unit(x[0], x[1])
        a2 = _unit(x[2], x[3])
        b = _unit(x[4], x[5])
        b2 = _unit(x[6], x[7])
        bp = (b[0] + b2[0], b[1] + b2[1], b[2] + b2[2])
        bm = (b[0] - b2[0], b[1] - b2[1], b[2] - b2[2])
        total = 0.0
        for i in range(3):
            row = c[i]
            total += a[i] * (row[0] * bp[0] + row[1] * bp[1] + row[2] * bp[2])
            total += a2[i] * (row[0] * bm[0] + row[1] * bm[1] + row[2] * bm[2])
        return total

    best, _ = multistart(objective, 8, restarts, iters, seed)
    return best


def _su2(alpha: float, beta: float, gamma: float) -> tuple[complex, complex, complex, complex]:
    """Entries (00, 01, 10, 11) of Rz(alpha) Ry(beta) Rz(gamma)."""
    cb, sb = math.cos(beta / 2), math.sin(beta / 2)
    ep = complex(math.cos((alpha + gamma) / 2), math.sin((alpha + gamma) / 2))
    em = complex(math.cos((alpha - gamma) / 2), math.sin((alpha - gamma) / 2))
    return (cb * ep.conjugate(), -sb * em.conjugate(), sb * em, cb * ep)


# Euler angles (u, v) that turn |Phi+> into the four Bell states up to phase
_BELL_SEEDS = (
    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    (math.pi, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.0, math.pi, math.pi, 0.0, 0.0, 0.0),
    (0.0, math.pi, 0.0, 0.0, 0.0, 0.0),
)
_SQRT_HALF = math.sqrt(0.5)


def _me_amplitudes(x) -> list[complex]:
    # (u x v)|Phi+> has amplitude (u v^T)[i, j] / sqrt(2) on |ij>
    u00, u01, u10, u11 = _su2(x[0], x[1], x[2])
    v00, v01, v10, v11 = _su2(x[3], x[4], x[5])
    return [
        (u00 * v00 + u01 * v01) * _SQRT_HALF,
        (u00 * v10 + u01 * v11) * _SQRT_HALF,
        (u10 * v00 + u11 * v01) * _SQRT_HALF,
        (u10 * v10 + u11 * v11) * _SQRT_HALF,
    ]


def maximally_entangled(angles) -> np.ndarray:
    """(u x v)|Phi+> for single-qubit unitaries u, v given by six Euler angles."""
    return np.array(_me_amplitudes(angles))


def fully_entangled_fraction(rho, restarts: int = 32, iters: int = 200, seed: int = 0) -> float:
    """Max overlap <phi|rho|phi> over maximally entangled |phi>, by local search.

    The four Bell states are always tried as starting points in addition to
    the random restarts.
    """
    m = _matrix(rho).tolist()

    def objective(x):
        phi = _me_amplitudes(x)
        total = 0.0
        for i in range(4):
            row = m[i]
            acc = row[0] * phi[0] + row[1] * phi[1] + row[2] * phi[2] + row[3] * phi[3]
            total += (phi[i].conjugate() * acc).real
        return total

    best, _ = multistart(objective, 6, restarts, iters, seed, seeds=_BELL_SEEDS)
    return best


def fef_fidelity(fraction: float) -> float:
    """Teleportation fidelity (2f + 1) / 3 reachable from fully entangled fraction f."""
    return (2.0 * fraction + 1.0) / 3.0


def verdict(value: float, threshold: float, above: bool = True) -> str:
    """'true', 'false' or 'boundary' for ``value`` compared with ``threshold``."""
    diff = value - threshold if above else threshold - value
    if abs(diff) <= TAU_SIGN:
        return "boundary"
    return "true" if diff > 0 else "false"


@dataclass(frozen=True)
class DiagnosticsReport:
    w3: float
    w4: float
    ppt_spectrum: tuple[float, float, float, float]
    u: tuple[float, float, float]
    m_value: float
    f_max: float
    entangled: bool
    bell_violating: bool
    teleport_useful: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def ppt_min(self) -> float:
        return self.ppt_spectrum[0]

    def verdicts(self) -> dict[str, str]:
        return {
            "entangled": verdict(self.ppt_min, 0.0, above=False),
            "bell_violating": verdict(self.m_value, 1.0),
            "teleport_useful": verdict(self.f_max, CLASSICAL_FIDELITY),
        }

    def with_notes(self, *notes: str) -> "DiagnosticsReport":
        return DiagnosticsReport(**{**self.__dict__, "notes": self.notes + tuple(notes)})


def full_report(rho) -> DiagnosticsReport:
    rho = rho if isinstance(rho, TwoQubitDensity) else TwoQubitDensity(rho)
    w3, w4 = w3_w4(rho)
    spec = ppt_spectrum(rho)
    u = u_values(rho)
    m = float(u[0] + u[1])
    f = 0.5 * (1.0 + sum(math.sqrt(max(v, 0.0)) for v in u) / 3.0)
    return DiagnosticsReport(
        w3=w3,
        w4=w4,
        ppt_spectrum=tuple(float(v) for v in spec),
        u=tuple(float(v) for v in u),
        m_value=m,
        f_max=f,
        entangled=bool(spec[0] < -TAU_SIGN),
        bell_violating=bool(m > 1.0 + TAU_SIGN),
        teleport_useful=bool(f > CLASSICAL_FIDELITY + TAU_SIGN),
    )

import itertools
from fractions import Fraction

import numpy as np
import pytest

from wghz import states


def random_density(seed: int, rank: int = 4) -> np.ndarray:
    """Ginibre-distributed two-qubit density matrix."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim: int = 2) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def brute_partial_trace(rho: np.ndarray, n: int, keep) -> np.ndarray:
    """Sum over basis labels of the traced qubits, one entry at a time."""
    k0, k1 = keep
    others = [q for q in range(n) if q not in keep]
    out = np.zeros((4, 4), dtype=complex)

    def index(bits):
        return int("".join(str(b) for b in bits), 2)

    for a0, a1, b0, b1 in itertools.product((0, 1), repeat=4):
        total = 0j
        for rest in itertools.product((0, 1), repeat=len(others)):
            row, col = [0] * n, [0] * n
            row[k0], row[k1], col[k0], col[k1] = a0, a1, b0, b1
            for q, v in zip(others, rest):
                row[q] = col[q] = v
            total += rho[index(row), index(col)]
        out[2 * a0 + a1, 2 * b0 + b1] = total
    return out


def leibniz_det(m):
    """Exact determinant over Fractions by the permutation expansion."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def exact_mixture_pt(n: int, p: Fraction):
    """Partial transpose of the mixture, built entry by entry in exact arithmetic."""
    a = p * Fraction(n - 2, n) + (1 - p) / 2
    b = p / n
    d = (1 - p) / 2
    return [[a, 0, 0, b], [0, b, 0, 0], [0, 0, b, 0], [b, 0, 0, d]]


@pytest.fixture
def w3():
    return states.reduced_w_pair(3)


@pytest.fixture
def singlet():
    return states.singlet()


@pytest.fixture
def product00():
    return states.TwoQubitDensity(np.diag([1.0, 0, 0, 0]))


# Collected by tests/test_acceptance.py, printed in the terminal summary.
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split()[1]), k)):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")

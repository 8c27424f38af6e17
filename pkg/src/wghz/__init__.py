"""Entanglement, Bell-CHSH and teleportation diagnostics for two-qubit
reductions of W and GHZ states and their classical mixtures."""

__version__ = "0.1.0"

# -*- coding: utf-8 -*-
"""
Operators on the 2^n basis shared by the simulators and their oracles.

Energies are in the units of the coefficients passed in (GHz for the annealing
Hamiltonian, dimensionless for H_IBMQ).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import sparse

from dynamics.ising import IsingModel
from dynamics.state import z_pattern
from lattice.base import HeavyHexLattice


def zz_diagonal(n_qubits: int, couplings: Sequence[tuple[int, int, float]]) -> np.ndarray:
    """Σ J_ij z_i z_j for every basis index."""
    diag = np.zeros((2,) * n_qubits)
    for i, j, jij in couplings:
        diag += jij * (z_pattern(i, n_qubits, np.float64) * z_pattern(j, n_qubits, np.float64))
    return diag.reshape(-1)


def z_diagonal(n_qubits: int, fields: Sequence[float] | np.ndarray) -> np.ndarray:
    """Σ h_i z_i for every basis index."""
    diag = np.zeros((2,) * n_qubits)
    for k, hk in enumerate(fields):
        if hk:
            diag += hk * z_pattern(k, n_qubits, np.float64)
    return diag.reshape(-1)


def x_sum(n_qubits: int) -> sparse.csr_matrix:
    """Σ X_k as a real sparse matrix."""
    dim = 2 ** n_qubits
    idx = np.arange(dim, dtype=np.int64)
    rows = np.tile(idx, n_qubits)
    cols = np.concatenate([idx ^ (1 << k) for k in range(n_qubits)]) if n_qubits else idx[:0]
    data = np.ones(rows.size)
    return sparse.csr_matrix((data, (rows, cols)), shape=(dim, dim))


def ibmq_hamiltonian(lattice: HeavyHexLattice, theta_h: float) -> sparse.csr_matrix:
    """H_IBMQ = −π/4 Σ Z_iZ_j + θ_h/2 Σ X_i over the lattice edges."""
    n = lattice.n_nodes
    q = {node: k for k, node in enumerate(lattice.nodes)}
    diag = zz_diagonal(n, [(q[u], q[v], 1.0) for u, v in lattice.edges])
    return (sparse.diags(-math.pi / 4 * diag, format="csr") + (theta_h / 2) * x_sum(n)).tocsr()


class AnnealOperator:
    """
    Builds B/2·(g Σh Z + Σ J ZZ) − sign·A/2·Σ X for one model.

    The diagonals and ΣX are cached; each call is a cheap sparse combination.
    """

    __slots__ = ("n_qubits", "hz", "jzz", "xsum", "sign")

    def __init__(self, model: IsingModel, transverse_sign: int = 1) -> None:
        if transverse_sign not in (1, -1):
            raise ValueError(f"transverse_sign must be ±1, got {transverse_sign}")
        self.n_qubits = model.n
        self.hz = z_diagonal(model.n, model.h_vector())
        self.jzz = zz_diagonal(model.n, model.couplings())
        self.xsum = x_sum(model.n)
        self.sign = transverse_sign

    def diagonal(self, b_ghz: float, g: float = 1.0) -> np.ndarray:
        return b_ghz / 2 * (g * self.hz + self.jzz)

    def __call__(self, a_ghz: float, b_ghz: float, g: float = 1.0) -> sparse.csr_matrix:
        h = sparse.diags(self.diagonal(b_ghz, g), format="csr")
        if a_ghz:
            h = h - (self.sign * a_ghz / 2) * self.xsum
        return h.tocsr()


def anneal_hamiltonian(
    model: IsingModel, a_ghz: float, b_ghz: float, g: float = 1.0, transverse_sign: int = 1
) -> sparse.csr_matrix:
    return AnnealOperator(model, transverse_sign)(a_ghz, b_ghz, g)

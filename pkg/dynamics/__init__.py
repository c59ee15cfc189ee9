# -*- coding: utf-8 -*-
from dynamics.anneal import EvolutionConfig, anneal_evolve, breakpoints, ground_state
from dynamics.gauge import (
    GaugeError,
    gauge_mask,
    gauge_state,
    gauge_transform,
    identity_gauge,
    random_gauges,
    ungauge,
    ungauge_expectations,
)
from dynamics.hamiltonians import AnnealOperator, anneal_hamiltonian, ibmq_hamiltonian, x_sum, z_diagonal, zz_diagonal
from dynamics.ising import IsingModel
from dynamics.sampling import SampleSet, sample_z
from dynamics.state import CapacityError, SimulationError, StateVector, spins_of_indices
from dynamics.trotter import TrotterConfig, apply_rx_layer, trotter_evolve, trotter_steps, trotter_z_checkpoints

__all__ = [
    "AnnealOperator",
    "CapacityError",
    "EvolutionConfig",
    "GaugeError",
    "IsingModel",
    "SampleSet",
    "SimulationError",
    "StateVector",
    "TrotterConfig",
    "anneal_evolve",
    "anneal_hamiltonian",
    "apply_rx_layer",
    "breakpoints",
    "gauge_mask",
    "gauge_state",
    "gauge_transform",
    "ground_state",
    "ibmq_hamiltonian",
    "identity_gauge",
    "random_gauges",
    "sample_z",
    "spins_of_indices",
    "trotter_evolve",
    "trotter_steps",
    "trotter_z_checkpoints",
    "ungauge",
    "ungauge_expectations",
    "x_sum",
    "z_diagonal",
    "zz_diagonal",
]

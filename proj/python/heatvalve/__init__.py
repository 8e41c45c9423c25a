"""Steady-state heat transport through a flux-tunable superconducting
resonator-qubit-resonator chain.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from heatvalve._core import (
    bath_rate,
    bose_occupancy,
    run_point,
    run_sweep,
    spectral_density,
    system_hamiltonian,
    transmon_frequency,
)

__all__ = [
    "bath_rate",
    "bose_occupancy",
    "run_point",
    "run_sweep",
    "spectral_density",
    "system_hamiltonian",
    "transmon_frequency",
]

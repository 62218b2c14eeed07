"""Central spins in an XY bath: exact reduced dynamics, a quantum Fisher
information entanglement witness, and dense-matrix validation oracles."""

from .__about__ import __version__
from .params import CavityParams, CentralParams, ChainParams
from .reduced_state import reduced_density, reduced_density_series
from .qfi import (EntanglementReport, entanglement_depth, entanglement_report,
                  gamma_matrix, max_qfi, producibility_bounds, time_average)
from .dicke import CollectiveOps, coherent_coeffs, collective_ops, \
    map_cavity_to_central

__all__ = [
    "CavityParams", "CentralParams", "ChainParams",
    "reduced_density", "reduced_density_series",
    "EntanglementReport", "entanglement_depth", "entanglement_report",
    "gamma_matrix", "max_qfi", "producibility_bounds", "time_average",
    "CollectiveOps", "coherent_coeffs", "collective_ops",
    "map_cavity_to_central",
    "__version__",
]

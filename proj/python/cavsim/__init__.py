"""Cavity-assisted single-photon gate simulator (C++ core bindings)."""

from ._core import (
    AtomLabel,
    AtomPhotonGateResult,
    CavityParams,
    Envelope,
    GateMode,
    GateReport,
    LossModel,
    ReflectionResult,
    TimeGrid,
    atom_photon_gate_fidelity,
    default_reflection_grid,
    inner_product,
    make_gaussian_pulse,
    qnd_parity,
    qnd_photon_number,
    qnd_total_number,
    reflect,
    reflect_spectral,
    reflection_coefficient,
    shape_overlap,
    squared_norm,
    two_photon_gate,
)

__all__ = [
    "AtomLabel",
    "AtomPhotonGateResult",
    "CavityParams",
    "Envelope",
    "GateMode",
    "GateReport",
    "LossModel",
    "ReflectionResult",
    "TimeGrid",
    "atom_photon_gate_fidelity",
    "default_reflection_grid",
    "inner_product",
    "make_gaussian_pulse",
    "qnd_parity",
    "qnd_photon_number",
    "qnd_total_number",
    "reflect",
    "reflect_spectral",
    "reflection_coefficient",
    "shape_overlap",
    "squared_norm",
    "two_photon_gate",
]

"""cooperlight: polarization-entangled photon pairs from Cooper-pair
recombination in a noncentrosymmetric superconducting quantum well.

Tight-binding square lattice with tunable Rashba/Dresselhaus spin-orbit
coupling, a parity-mixed singlet/triplet gap, and the resulting two-photon
polarization density matrix and purity.
"""

from ._kernels import BACKEND
from .bands import (
    BandParams,
    DosCurve,
    FermiContour,
    FermiSurface,
    dos,
    fermi_surface,
    filling,
    helical_dispersion,
    kinetic_energy,
    soc_vector,
    solve_mu,
)
from .config import ConfigError, RunConfig, config_from_mapping, parse_config
from .emission import (
    EmissionResult,
    PhotonPair,
    QuasiparticleState,
    bogoliubov_energy,
    bracket_terms,
    fermi_function,
    gaussian_delta,
    quasiparticle_state,
    recombination_weight,
    two_photon_density_matrix,
)
from .entanglement import (
    PolarizationAxis,
    TwoPhotonMatrix,
    UndefinedAngleError,
    emission_matrix,
    mixing_angle,
    purity,
)
from .lattice import (
    KGrid,
    KPoint,
    SymmetryPath,
    c4v_images,
    high_symmetry_path,
    make_grid,
)
from .pairing import (
    GapSpec,
    PairingFractions,
    SingletChannel,
    pairing_fractions,
    parse_channel,
    projected_gap,
    singlet_gap,
    structure_factor,
    triplet_dvector,
)
from .sweeps import SweepSpec, SweepTable, emit_figure_data, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BandParams",
    "ConfigError",
    "DosCurve",
    "EmissionResult",
    "FermiContour",
    "FermiSurface",
    "GapSpec",
    "KGrid",
    "KPoint",
    "PairingFractions",
    "PhotonPair",
    "PolarizationAxis",
    "QuasiparticleState",
    "RunConfig",
    "SingletChannel",
    "SweepSpec",
    "SweepTable",
    "SymmetryPath",
    "TwoPhotonMatrix",
    "UndefinedAngleError",
    "bogoliubov_energy",
    "bracket_terms",
    "c4v_images",
    "config_from_mapping",
    "dos",
    "emission_matrix",
    "emit_figure_data",
    "fermi_function",
    "fermi_surface",
    "filling",
    "gaussian_delta",
    "helical_dispersion",
    "high_symmetry_path",
    "kinetic_energy",
    "make_grid",
    "mixing_angle",
    "pairing_fractions",
    "parse_channel",
    "parse_config",
    "projected_gap",
    "purity",
    "quasiparticle_state",
    "recombination_weight",
    "run_sweep",
    "singlet_gap",
    "soc_vector",
    "solve_mu",
    "structure_factor",
    "triplet_dvector",
    "two_photon_density_matrix",
    "__version__",
]

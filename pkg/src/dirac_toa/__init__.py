"""Relativistic free-motion time-of-arrival toolkit for 1D Dirac particles.

Natural units (hbar = c = 1), momentum along x.  The library covers the
closed-form spinor constructions, the quantized arrival-time operator on
momentum grids and in the energy representation, its eigenfunction families,
arrival-time distributions of wave packets with a flux-at-origin oracle, and
the nonrelativistic / massless limits together with the time-energy duality
and deficiency-index diagnostics.
"""
from .algebra import (
    DiracBasis,
    EventPoint,
    KinematicPoint,
    clifford_max_residual,
    dirac_basis,
    energy_spinor,
    energy_spinor_derivative,
    energy_spinor_values,
    event_spinor,
    event_spinor_values,
    hamiltonian_matrix,
    helicity_spinor,
    nr_limit_spinor,
    pauli_matrices,
    u_spinor_values,
    uw_spinors,
    w_spinor_values,
)
from .arrival import (
    ArrivalDistribution,
    PacketSpec,
    arrival_distribution,
    arrival_distribution_nonrel,
    build_packet,
    evolve,
    flux_at_origin,
    l1_distance,
    peak_location,
    position_profile,
)
from .config import DEFAULT_CONFIG, ConfigError, RunConfig, config_from_dict, load_config
from .eigenfunctions import (
    ToaEigenfunction,
    event_eigenfunction,
    overlap_matrix,
    position_eigenfunction,
    resynthesize_time_family,
    time_eigenfunction,
    weight_factor,
)
from .grids import (
    EnergyGridFunction,
    GridSpinorField,
    MomentumGrid,
    apply_hamiltonian,
    apply_toa,
    apply_toa_energy,
    apply_toa_nonrel,
    build_grid,
    commutator_residual,
    energy_function_on_branch,
    energy_inner_product,
    energy_measure_identity,
    field_from_callable,
    inner_product,
    symmetry_defect,
    to_energy_rep,
)
from .limits import (
    DeficiencyReport,
    DualSolution,
    LimitReport,
    deficiency_diagnostic,
    dual_residual,
    dual_solution,
    duality_map_max_residual,
    nr_eigen_limit_check,
    nr_eigenfunction_limit,
    nr_eigenfunction_limit_scan,
    nr_spinor_errors,
    nr_spinor_limit_scan,
)

__version__ = "0.1.0"

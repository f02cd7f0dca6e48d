"""
物理计算模块

按关注点拆分：chain 为模型基础，susceptibility 与 overlap 为静态保真度，
elliptic 与 scaling 为热力学标度，quench 与 fits 为淬火动力学。
"""
from .chain import (
    GapResult,
    MomentumGrid,
    ModeAngle,
    ParitySector,
    Phase,
    bogoliubov_angle,
    classify_phase,
    correlation_length,
    dispersion,
    ground_state_parity,
    momentum_grid,
    parity_gap,
    sector_ground_energy,
)
from .susceptibility import (
    ChiResult,
    ChiVariant,
    chi_asymptote,
    chi_exact,
    chi_max_location,
    chi_minus,
    chi_mode_sum,
    chi_plus,
)
from .overlap import (
    FidelityResult,
    cat_state_overlap,
    chi_finite_difference,
    fidelity,
    sudden_quench_probability,
)
from .elliptic import EllipticValue, elliptic_E, elliptic_K, elliptic_quadrature, elliptic_self_test
from .scaling import (
    A_CRITICAL,
    ScalingPoint,
    ThermoOnset,
    ln_fidelity_far,
    ln_fidelity_per_site,
    scaling_A,
    scaling_A_far,
    scaling_A_quadrature,
    sum_minus_integral,
    thermo_onset,
)
from .fits import FitResult, linear_fit
from .quench import (
    CriticalExponents,
    ModeState,
    QuenchProtocol,
    QuenchRegime,
    QuenchResult,
    adiabatic_finite_size,
    adiabatic_impulse_p_gs,
    classify_regime,
    evolve_mode,
    finite_size_negligible,
    ghat,
    kz_const_from_fit,
    kz_scaling,
    mode_hamiltonian,
    run_quench,
    size_sweep,
    tau_sweep,
)

__all__ = [
    "GapResult", "MomentumGrid", "ModeAngle", "ParitySector", "Phase",
    "bogoliubov_angle", "classify_phase", "correlation_length", "dispersion",
    "ground_state_parity", "momentum_grid", "parity_gap", "sector_ground_energy",
    "ChiResult", "ChiVariant", "chi_asymptote", "chi_exact", "chi_max_location",
    "chi_minus", "chi_mode_sum", "chi_plus",
    "FidelityResult", "cat_state_overlap", "chi_finite_difference", "fidelity",
    "sudden_quench_probability",
    "EllipticValue", "elliptic_E", "elliptic_K", "elliptic_quadrature", "elliptic_self_test",
    "A_CRITICAL", "ScalingPoint", "ThermoOnset", "ln_fidelity_far", "ln_fidelity_per_site",
    "scaling_A", "scaling_A_far", "scaling_A_quadrature", "sum_minus_integral", "thermo_onset",
    "FitResult", "linear_fit",
    "CriticalExponents", "ModeState", "QuenchProtocol", "QuenchRegime", "QuenchResult",
    "adiabatic_finite_size", "adiabatic_impulse_p_gs", "classify_regime", "evolve_mode",
    "finite_size_negligible", "ghat", "kz_const_from_fit", "kz_scaling", "mode_hamiltonian",
    "run_quench", "size_sweep", "tau_sweep",
]

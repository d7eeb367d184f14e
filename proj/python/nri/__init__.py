"""Chiral negative-index atomic medium: linear response, local fields and sweeps.

Angular frequencies are in rad/s, densities in cm^-3, polarizabilities in cm^3.
"""

from ._nri import (  # noqa: F401
    HBAR,
    LIGHT_SPEED,
    NriError,
    RunConfig,
    SystemParams,
    dark_state,
    default_paper_params,
    evaluate,
    exact_quartet,
    figure_of_merit,
    fresnel_reflection,
    impedance_find,
    index_vs_angle,
    inverse_impedance,
    kramers_kronig_residual,
    parse_config,
    quartet,
    refractive_index,
    resonance_check,
    superlens_tolerance,
    sweep,
    wigner_weisskopf_dipole,
)

__all__ = [name for name in dir() if not name.startswith("_")]

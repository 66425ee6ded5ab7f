"""Coexistence (joint measurability) of effects in two-projection algebras."""
from ._backend import BACKEND, COMPILED
from .coexistence import (
    CoexistenceVerdict,
    FeasibilityResult,
    Interval,
    Method,
    check_coexistence,
    coexistent_in_algebra,
    copies_bound,
    feasibility_oracle,
    ginf_equals_coexistence_check,
    rank1_scaled_check,
    scaled_central_check,
)
from .effects import Effect, comparable, commute, complement, gen_inf, ginf_condition, validate_effect
from .errors import *  # noqa: F401,F403
from .halmos import (
    BlockFunction,
    TwoProjectionDecomposition,
    block_of,
    central_element,
    commutation_kernel,
    decompose,
    in_algebra,
    reconstruct,
)
from .matrix_core import abs_op, apply_spectral, eig_hermitian, is_psd, set_tolerances, tolerances
from .qubit import BlochEffect, Decision, bracket, c_function, from_bloch, qubit_coexistent, to_bloch

__version__ = "0.1.0"

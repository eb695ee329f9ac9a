"""Operator-weighted shifts with an eps-hypercyclicity threshold."""

from ._core import (
    BracketError,
    DomainError,
    FormatError,
    NormSpec,
    Operator,
    Plan,
    RangeError,
    __version__,
    apply_T_pow,
    build_witness,
    choose_K,
    closed_form_omega,
    constants,
    forward_product,
    inverse_product,
    l1_interval_report,
    lower_bound_check,
    min_over_y,
    norm_x,
    norm_z,
    plan_blocks,
    run_cli,
    solve_omega,
    weight,
)


def basis(n, block=0, value=1.0):
    """Vector dict with a single coefficient `value` on e_n of the given block."""
    return {"blocks": [{"n": block, "coeffs": [{"i": n, "re": float(value.real if isinstance(value, complex) else value),
                                                "im": float(value.imag if isinstance(value, complex) else 0.0)}]}]}

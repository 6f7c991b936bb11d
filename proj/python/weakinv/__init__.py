"""Open-system dynamics, weak invariants and the auxiliary-operator action."""

import json as _json

from ._weakinv import (
    ConfigError,
    Error,
    IntegrationError,
    Model,
    Scenario,
    TimeGrid,
    amplitude_damping_qubit,
    analyze,
    apply_adjoint,
    apply_liouvillian,
    conservation_series,
    damped_oscillator,
    dephasing_qubit,
    evaluate_action,
    gauge_shift_check,
    hermitian_eigenvalues,
    integrate_invariant,
    integrate_state,
    liouvillian_matrix,
    make_scenario,
    run_verification,
    scenario_names,
    stationarity_check,
)

__version__ = "0.1.0"


def model_from_dict(config):
    """Build a model from the same structure the CLI accepts under "model"."""
    return Model.from_json(_json.dumps(config))


def matrix_literal(array):
    """Row-major [re, im] pairs, the matrix format used in config files."""
    return [[float(z.real), float(z.imag)] for z in array.reshape(-1)]


__all__ = [name for name in dir() if not name.startswith("_")]

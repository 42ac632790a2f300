"""Reductive quantum phase estimation: circuit synthesis, simulation and analysis.

Phases are given in units of pi, as ints, "p/q" strings or fractions.Fraction.
Exact results come back as fractions.Fraction.
"""

from ._rqpe import (
    Circuit,
    InputError,
    IoError,
    VerificationError,
    cfi_closed_form,
    cfi_numeric,
    circuit_from_bit_values,
    circuit_from_json,
    crb_variance,
    distance,
    distribution,
    estimate,
    gate_matrix,
    reduce,
    repeated_range,
    resource_comparison,
    run_experiment,
    sample,
    statevector_distribution,
    synthesize,
    unitary_count,
    verify,
)

__all__ = [
    "Circuit",
    "InputError",
    "IoError",
    "VerificationError",
    "cfi_closed_form",
    "cfi_numeric",
    "circuit_from_bit_values",
    "circuit_from_json",
    "crb_variance",
    "distance",
    "distribution",
    "estimate",
    "gate_matrix",
    "reduce",
    "repeated_range",
    "resource_comparison",
    "run_experiment",
    "sample",
    "statevector_distribution",
    "synthesize",
    "unitary_count",
    "verify",
]

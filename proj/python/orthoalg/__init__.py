"""Orthoalgebra of finite-dimensional Hermitian observables.

Observables are Hermitian matrices. Two observables are orthogonal when
their ranges are; orthogonal observables add (the partial sum), which
induces a partial order, and every pair has a meet while joins exist
exactly when distinct spectral values see orthogonal eigenspaces. An
exact integer oracle on diagonal matrices cross-checks everything.
"""

from ._orthoalg import (
    AxiomFailure,
    AxiomReport,
    AxiomResult,
    Error,
    HeisenbergPairSample,
    HeisenbergReport,
    JoinOutcome,
    JoinPrecondition,
    Observable,
    OrderReport,
    OrthogonalityReport,
    Rng,
    SpectrumStyle,
    Tolerances,
    axiom_suite,
    check_loewner_consequence,
    check_principal,
    common_abelian_witness,
    heisenberg_demo,
    is_orthogonal,
    join,
    join_family,
    join_precondition,
    leq,
    loewner_leq,
    match_nonzero_atoms,
    meet,
    meet_family,
    oplus,
    oracle,
    random_unitary,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomFailure",
    "AxiomReport",
    "AxiomResult",
    "Error",
    "HeisenbergPairSample",
    "HeisenbergReport",
    "JoinOutcome",
    "JoinPrecondition",
    "Observable",
    "OrderReport",
    "OrthogonalityReport",
    "Rng",
    "SpectrumStyle",
    "Tolerances",
    "axiom_suite",
    "check_loewner_consequence",
    "check_principal",
    "common_abelian_witness",
    "heisenberg_demo",
    "is_orthogonal",
    "join",
    "join_family",
    "join_precondition",
    "leq",
    "loewner_leq",
    "match_nonzero_atoms",
    "meet",
    "meet_family",
    "oplus",
    "oracle",
    "random_unitary",
]

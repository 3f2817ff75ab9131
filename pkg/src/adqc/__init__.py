"""Averaged-distance quantum correlation of bipartite states.

The central quantity is the supremum, over local von Neumann measurements on
subsystem A, of the probability-weighted squared Hilbert-Schmidt distance
between the B marginal and the post-measurement B conditionals.  The package
computes it numerically (the ground truth), provides the known closed forms
in printed and corrected variants, generates the standard state families, and
audits the printed constants in a discrepancy report.
"""

from .formulas import (
    discord_isotropic,
    discord_werner,
    eof_isotropic,
    eof_pure,
    eof_werner,
    min_pure,
    q_bell_diagonal,
    q_isotropic,
    q_pure_corrected,
    q_pure_printed,
    q_werner,
)
from .measure import MeasurementOutcome, VNMeasurement, apply, objective, objective_os
from .qopt import GammaTriple, OptimizerConfig, QResult, gamma_direct, gamma_printed, q_numeric
from .states import (
    BipartiteState,
    NotAState,
    OperatorSchmidtForm,
    SchmidtForm,
    TwoQubitCanonical,
    TwoQubitFano,
    bell_diagonal,
    canonicalize_two_qubit,
    fano,
    from_pure,
    is_product,
    isotropic,
    load_state,
    operator_schmidt,
    save_state,
    schmidt,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "GammaTriple",
    "MeasurementOutcome",
    "NotAState",
    "OperatorSchmidtForm",
    "OptimizerConfig",
    "QResult",
    "SchmidtForm",
    "TwoQubitCanonical",
    "TwoQubitFano",
    "VNMeasurement",
    "apply",
    "bell_diagonal",
    "canonicalize_two_qubit",
    "discord_isotropic",
    "discord_werner",
    "eof_isotropic",
    "eof_pure",
    "eof_werner",
    "fano",
    "from_pure",
    "gamma_direct",
    "gamma_printed",
    "is_product",
    "isotropic",
    "load_state",
    "min_pure",
    "objective",
    "objective_os",
    "operator_schmidt",
    "q_bell_diagonal",
    "q_isotropic",
    "q_numeric",
    "q_pure_corrected",
    "q_pure_printed",
    "q_werner",
    "save_state",
    "schmidt",
    "werner",
]

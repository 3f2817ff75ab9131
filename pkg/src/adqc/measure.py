"""Local von Neumann measurements on subsystem A and the averaged-distance objective.

The objective at a fixed measurement basis is the probability-weighted squared
Hilbert-Schmidt distance between the B marginal and the post-measurement B
conditionals.  It is evaluated both directly from the density matrix and
through the operator Schmidt route; the two must agree and the direct path is
the canonical one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DimensionMismatch
from .states import BipartiteState, OperatorSchmidtForm

#: Outcomes with probability at or below this contribute nothing.
PROB_FLOOR = 1e-12

UNITARITY_TOL = 1e-9

# Orthonormal eigenbases of sigma_1, sigma_2, sigma_3 as column matrices.
_PAULI_BASES = (
    np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0),
    np.array([[1, 1], [1j, -1j]], dtype=complex) / np.sqrt(2.0),
    np.eye(2, dtype=complex),
)


class NotAMeasurement(ValueError):
    """Raised when a candidate basis matrix is not unitary within tolerance."""


@dataclass(frozen=True)
class VNMeasurement:
    """Rank-1 projective measurement, stored as the columns of a unitary."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise NotAMeasurement(f"basis must be square, got shape {b.shape}")
        err = linalg.max_abs_diff(b.conj().T @ b, np.eye(b.shape[0]))
        if err > UNITARITY_TOL:
            raise NotAMeasurement(f"basis is not unitary (max deviation {err:.3e})")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def computational(cls, m: int) -> "VNMeasurement":
        return cls(np.eye(m, dtype=complex))

    @classmethod
    def pauli_eigenbasis(cls, axis: int) -> "VNMeasurement":
        """Eigenbasis of sigma_axis (axis in {1, 2, 3}) on a qubit."""
        if axis not in (1, 2, 3):
            raise ValueError("axis must be 1, 2 or 3")
        return cls(_PAULI_BASES[axis - 1])

    @classmethod
    def haar_random(cls, m: int, seed) -> "VNMeasurement":
        return cls(linalg.haar_unitary(m, seed))


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    conditional_b: np.ndarray
    degenerate: bool = False  # probability at the floor; conditional is zero


class ObjectiveEvaluator:
    """Precomputed data for repeated objective evaluations on one state.

    Stores the realigned matrix M[(i,j),(a,b)] = rho[(i,a),(j,b)], so the
    unnormalized conditionals for a basis U are one small matrix product:
    B_k = sum_ij conj(U[i,k]) U[j,k] M[(i,j),:].
    """

    def __init__(self, state: BipartiteState):
        m, n = state.dim_a, state.dim_b
        self.dim_a = m
        self.dim_b = n
        rho4 = state.rho.reshape(m, n, m, n)
        self._realigned = np.ascontiguousarray(
            rho4.transpose(0, 2, 1, 3).reshape(m * m, n * n)
        )
        self._rho_b_flat = np.trace(rho4, axis1=0, axis2=2).ravel()

    def conditionals(self, basis: np.ndarray):
        """Unnormalized conditionals as flattened rows, plus probabilities."""
        m, n = self.dim_a, self.dim_b
        w = (basis.conj()[:, None, :] * basis[None, :, :]).reshape(m * m, m)
        b = w.T @ self._realigned                       # (m, n*n)
        p = b[:, :: n + 1].sum(axis=1).real
        return b, p

    def value(self, basis: np.ndarray) -> float:
        b, p = self.conditionals(basis)
        mask = p > PROB_FLOOR
        if not np.any(mask):
            return 0.0
        pk = p[mask]
        diff = self._rho_b_flat[None, :] - b[mask] / pk[:, None]
        return float(np.sum(pk * np.sum(diff.real**2 + diff.imag**2, axis=1)))


def apply(state: BipartiteState, pi: VNMeasurement) -> list[MeasurementOutcome]:
    """Outcome probabilities and conditional B states for each projector."""
    if pi.dim != state.dim_a:
        raise DimensionMismatch(
            f"measurement dimension {pi.dim} != dim_a {state.dim_a}"
        )
    n = state.dim_b
    b, p = ObjectiveEvaluator(state).conditionals(pi.basis)
    outcomes = []
    for k in range(pi.dim):
        if p[k] > PROB_FLOOR:
            outcomes.append(MeasurementOutcome(float(p[k]), b[k].reshape(n, n) / p[k]))
        else:
            outcomes.append(
                MeasurementOutcome(
                    float(max(p[k], 0.0)),
                    np.zeros((n, n), dtype=complex),
                    degenerate=True,
                )
            )
    return outcomes


def objective(state: BipartiteState, pi: VNMeasurement) -> float:
    """sum_k p_k ||rho_b - rho_b^(k)||_2^2 at a fixed measurement basis.

    Zero-probability outcomes contribute 0 (their conditionals are bounded, so
    the limit vanishes).
    """
    if pi.dim != state.dim_a:
        raise DimensionMismatch(
            f"measurement dimension {pi.dim} != dim_a {state.dim_a}"
        )
    return ObjectiveEvaluator(state).value(pi.basis)


def objective_os(osf: OperatorSchmidtForm, pi: VNMeasurement) -> float:
    """The same objective evaluated from operator Schmidt data.

    With alpha_ki = <e_k|E_i|e_k>, p_k = sum_i delta_i alpha_ki Tr(F_i) and
    the value is sum_i delta_i^2 (sum_k |alpha_ki|^2 / p_k - |Tr E_i|^2).
    Complex moduli are used throughout; this reproduces :func:`objective`.
    """
    m = osf.ops_a[0].shape[0]
    if pi.dim != m:
        raise DimensionMismatch(f"measurement dimension {pi.dim} != dim_a {m}")
    e_stack = np.stack(osf.ops_a)                     # (r, m, m)
    alpha = np.einsum(
        "ik,rij,jk->kr", pi.basis.conj(), e_stack, pi.basis, optimize=True
    )                                                 # alpha[k, i]
    p = (alpha @ (osf.deltas * osf.traces_b)).real
    mask = p > PROB_FLOOR
    quad = np.zeros(len(osf.deltas))
    if np.any(mask):
        quad = np.sum(np.abs(alpha[mask]) ** 2 / p[mask, None], axis=0)
    terms = osf.deltas**2 * (quad - np.abs(osf.traces_a) ** 2)
    return float(np.sum(terms))

"""Dense complex matrix kernels for small bipartite quantum systems.

Everything operates on plain ``numpy`` arrays of ``complex128``.  Dimensions
stay desk-scale (<= ~64), so no attention is paid to sparsity, blocking or
large-dimension performance.  All functions are pure; randomness enters only
through explicit seeds or generators.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Max-abs tolerance below which a matrix counts as Hermitian.
HERMITICITY_TOL = 1e-9


class NotHermitianError(ValueError):
    """Raised when an operation requiring a Hermitian input gets a non-Hermitian one."""


class DimensionMismatch(ValueError):
    """Raised when matrix/vector dimensions are inconsistent."""


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def max_abs_diff(a, b) -> float:
    """Entrywise max-abs difference, the equality metric used throughout."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; output dimensions are the products of the inputs'."""
    return np.kron(np.asarray(a), np.asarray(b))


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dag B)."""
    return complex(np.sum(np.conj(a) * np.asarray(b)))


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm: sum of |a_ij|^2 = Tr(A^dag A)."""
    return float(np.sum(np.abs(np.asarray(a)) ** 2))


@dataclass(frozen=True)
class HermitianCheck:
    is_hermitian: bool
    max_asymmetry: float


def hermitian_check(a: np.ndarray, tol: float = HERMITICITY_TOL) -> HermitianCheck:
    asym = max_abs_diff(a, dagger(a))
    return HermitianCheck(is_hermitian=asym <= tol, max_asymmetry=asym)


def eigh(h: np.ndarray, tol: float = HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvectors as the columns of a unitary, so ``h = V diag(w) V^dag``.
    Inputs within ``tol`` of Hermitian are symmetrized first; anything worse
    raises :class:`NotHermitianError`.
    """
    h = np.asarray(h, dtype=complex)
    chk = hermitian_check(h, tol)
    if not chk.is_hermitian:
        raise NotHermitianError(
            f"matrix is not Hermitian (max asymmetry {chk.max_asymmetry:.3e} > {tol:.1e})"
        )
    h = 0.5 * (h + dagger(h))
    w, v = np.linalg.eigh(h)
    return w, v


def svd(a: np.ndarray):
    """Singular value decomposition ``a = u @ diag(s) @ vh``.

    Singular values come out descending; ``u`` and ``vh.conj().T`` have
    orthonormal columns.
    """
    u, s, vh = np.linalg.svd(np.asarray(a, dtype=complex))
    return u, s, vh


def partial_trace(rho: np.ndarray, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on an (dim_a*dim_b)-dim space.

    ``keep`` selects the surviving subsystem: ``"a"`` or ``"b"``.
    """
    rho = np.asarray(rho, dtype=complex)
    d = dim_a * dim_b
    if rho.shape != (d, d):
        raise DimensionMismatch(
            f"expected a {d}x{d} matrix for dims ({dim_a},{dim_b}), got {rho.shape}"
        )
    r4 = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "a":
        return np.trace(r4, axis1=1, axis2=3)
    if keep == "b":
        return np.trace(r4, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


def haar_unitary(m: int, seed) -> np.ndarray:
    """Haar-distributed m x m unitary, deterministic for a given seed.

    QR factorization of a complex Ginibre matrix with the diagonal of R
    rephased to be real positive, which makes the factorization unique and
    the Q factor Haar.  ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    if m < 1:
        raise ValueError("dimension must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    ph = d / np.abs(d)
    return q * ph

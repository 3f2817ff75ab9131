"""Bipartite states: construction, validation, named families, decompositions.

Covers validated density matrices on H_a (x) H_b, pure-state Schmidt and
operator-Schmidt (realignment) decompositions, the rank-1 product test, the
Werner / isotropic / Bell-diagonal families, and the two-qubit Bloch (Fano)
form with its canonical diagonalization by local unitaries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from . import linalg
from .linalg import DimensionMismatch, dagger, kron, partial_trace

#: Validation tolerances for density matrices.
STATE_TOL = 1e-9
#: Relative cutoff below which Schmidt-type coefficients count as zero.
RANK_CUTOFF = 1e-9

# Pauli matrices sigma_1, sigma_2, sigma_3.
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class NotAState(ValueError):
    """Raised when a matrix fails density-matrix validation.

    ``invariant`` names the violated invariant: "shape", "hermiticity",
    "trace" or "positivity".
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(message)
        self.invariant = invariant


@dataclass(frozen=True)
class BipartiteState:
    """Validated density matrix on a bipartite space with explicit dims.

    ``rho`` is (dim_a*dim_b) x (dim_a*dim_b), Hermitian, unit trace, PSD
    (all within ``STATE_TOL``).  Index convention: row index i*dim_b + k
    corresponds to |i>|k>.
    """

    dim_a: int
    dim_b: int
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        d = self.dim_a * self.dim_b
        if self.dim_a < 1 or self.dim_b < 1:
            raise NotAState("shape", "subsystem dimensions must be positive")
        if rho.shape != (d, d):
            raise NotAState(
                "shape", f"expected a {d}x{d} matrix for dims "
                f"({self.dim_a},{self.dim_b}), got {rho.shape}"
            )
        chk = linalg.hermitian_check(rho, STATE_TOL)
        if not chk.is_hermitian:
            raise NotAState(
                "hermiticity",
                f"matrix is not Hermitian (max asymmetry {chk.max_asymmetry:.3e})",
            )
        rho = 0.5 * (rho + dagger(rho))
        tr = np.trace(rho).real
        if abs(tr - 1.0) > STATE_TOL:
            raise NotAState("trace", f"trace is {tr!r}, expected 1 within {STATE_TOL}")
        wmin = float(np.linalg.eigvalsh(rho)[0])
        if wmin < -STATE_TOL:
            raise NotAState(
                "positivity", f"minimum eigenvalue {wmin:.3e} < -{STATE_TOL}"
            )
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def rho_a(self) -> np.ndarray:
        return partial_trace(self.rho, self.dim_a, self.dim_b, "a")

    @property
    def rho_b(self) -> np.ndarray:
        return partial_trace(self.rho, self.dim_a, self.dim_b, "b")

    def purity(self) -> float:
        return linalg.hs_norm_sq(self.rho)


@dataclass(frozen=True)
class SchmidtForm:
    """Pure-state Schmidt data: |psi> = sum_k lam_k |a_k>|b_k>."""

    coefficients: np.ndarray          # descending, sum of squares = 1
    basis_a: np.ndarray               # dim_a x r, orthonormal columns
    basis_b: np.ndarray               # dim_b x r, orthonormal columns
    rank: int


@dataclass(frozen=True)
class OperatorSchmidtForm:
    """Operator Schmidt data: rho = sum_i delta_i E_i (x) F_i."""

    deltas: np.ndarray                # descending, nonnegative
    ops_a: list = field(repr=False)   # HS-orthonormal dim_a x dim_a operators E_i
    ops_b: list = field(repr=False)   # HS-orthonormal dim_b x dim_b operators F_i
    traces_a: np.ndarray = None       # beta_i = Tr(E_i)
    traces_b: np.ndarray = None       # gamma_i = Tr(F_i)
    rank: int = 0


@dataclass(frozen=True)
class TwoQubitFano:
    """Bloch expansion coefficients of a two-qubit state.

    rho = (I(x)I + u.sigma(x)I + I(x)v.sigma + sum_kl w_kl sigma_k(x)sigma_l)/4
    """

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray


@dataclass(frozen=True)
class TwoQubitCanonical:
    """Local-unitary canonical form with diagonal correlation matrix.

    (u_a (x) u_b) rho (u_a (x) u_b)^dag has Bloch data (a, b, diag(c)) and
    |c_1| >= |c_2| >= |c_3|.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    u_a: np.ndarray
    u_b: np.ndarray


# ---------------------------------------------------------------------------
# Constructors


def from_pure(amplitudes, dim_a: int, dim_b: int) -> BipartiteState:
    """Density matrix of a pure state; input amplitudes are normalized."""
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    if psi.size != dim_a * dim_b:
        raise DimensionMismatch(
            f"amplitude vector has length {psi.size}, expected {dim_a * dim_b}"
        )
    nrm = np.linalg.norm(psi)
    if nrm < 1e-14:
        raise ValueError("amplitude vector is (numerically) zero")
    psi = psi / nrm
    return BipartiteState(dim_a, dim_b, np.outer(psi, psi.conj()))


def max_entangled(m: int) -> np.ndarray:
    """Amplitudes of (1/sqrt(m)) sum_i |ii> on C^m (x) C^m."""
    psi = np.zeros(m * m, dtype=complex)
    psi[:: m + 1] = 1.0 / np.sqrt(m)
    return psi


def swap_operator(m: int) -> np.ndarray:
    """The swap F = sum_ij |i><j| (x) |j><i| on C^m (x) C^m."""
    f = np.zeros((m * m, m * m))
    for i in range(m):
        for j in range(m):
            f[i * m + j, j * m + i] = 1.0
    return f.astype(complex)


def werner(m: int, x: float) -> BipartiteState:
    """Werner state: mixture of the symmetric and antisymmetric projectors.

    omega = 2(1-x)/(m(m+1)) Pi+  +  2x/(m(m-1)) Pi-,  x in [0, 1].
    """
    if m < 2:
        raise ValueError("werner requires m >= 2")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"werner parameter x={x} outside [0, 1]")
    f = swap_operator(m)
    eye = np.eye(m * m)
    pi_plus = 0.5 * (eye + f)
    pi_minus = 0.5 * (eye - f)
    rho = (2.0 * (1.0 - x) / (m * (m + 1))) * pi_plus + (
        2.0 * x / (m * (m - 1))
    ) * pi_minus
    return BipartiteState(m, m, rho)


def isotropic(m: int, y: float) -> BipartiteState:
    """Isotropic state: (1-y)/(m^2-1) I(x)I + (m^2 y - 1)/(m^2-1) |psi+><psi+|."""
    if m < 2:
        raise ValueError("isotropic requires m >= 2")
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"isotropic parameter y={y} outside [0, 1]")
    psi = max_entangled(m)
    proj = np.outer(psi, psi.conj())
    rho = ((1.0 - y) / (m * m - 1)) * np.eye(m * m) + (
        (m * m * y - 1.0) / (m * m - 1)
    ) * proj
    return BipartiteState(m, m, rho)


def bell_diagonal(c) -> BipartiteState:
    """Two-qubit Bell-diagonal state (I(x)I + sum_i c_i sigma_i(x)sigma_i)/4.

    The four Bell-basis weights must be nonnegative; otherwise the parameters
    do not describe a state and :class:`NotAState` is raised.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise ValueError("bell_diagonal expects a real 3-vector")
    weights = (
        (1 + c[0] - c[1] + c[2]) / 4,
        (1 - c[0] + c[1] + c[2]) / 4,
        (1 + c[0] + c[1] - c[2]) / 4,
        (1 - c[0] - c[1] - c[2]) / 4,
    )
    if min(weights) < -STATE_TOL:
        raise NotAState(
            "positivity",
            f"Bell-basis weight {min(weights):.4g} < 0; c={tuple(c)} is not a state",
        )
    rho = np.eye(4, dtype=complex)
    for ci, sigma in zip(c, PAULI):
        rho += ci * kron(sigma, sigma)
    return BipartiteState(2, 2, rho / 4.0)


# ---------------------------------------------------------------------------
# Decompositions


def schmidt(amplitudes, dim_a: int, dim_b: int) -> SchmidtForm:
    """Schmidt decomposition of a pure state via SVD of its amplitude matrix."""
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    if psi.size != dim_a * dim_b:
        raise DimensionMismatch(
            f"amplitude vector has length {psi.size}, expected {dim_a * dim_b}"
        )
    nrm = np.linalg.norm(psi)
    if nrm < 1e-14:
        raise ValueError("amplitude vector is (numerically) zero")
    mat = (psi / nrm).reshape(dim_a, dim_b)
    u, s, vh = np.linalg.svd(mat)
    r = int(np.sum(s > RANK_CUTOFF * s[0])) if s[0] > 0 else 0
    k = min(dim_a, dim_b)
    # |psi> = sum_k s_k (U column k) (x) (Vh row k)
    return SchmidtForm(
        coefficients=s[:k],
        basis_a=u[:, :k],
        basis_b=vh[:k, :].T,
        rank=r,
    )


def realign(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Realignment: the m^2 x n^2 matrix R[(i,j),(k,l)] = rho[(i,k),(j,l)]."""
    rho = np.asarray(rho, dtype=complex)
    r4 = rho.reshape(dim_a, dim_b, dim_a, dim_b)
    return r4.transpose(0, 2, 1, 3).reshape(dim_a * dim_a, dim_b * dim_b)


def operator_schmidt(state: BipartiteState) -> OperatorSchmidtForm:
    """Operator Schmidt decomposition via SVD of the realignment of rho."""
    m, n = state.dim_a, state.dim_b
    u, s, vh = np.linalg.svd(realign(state.rho, m, n))
    k = min(m * m, n * n)
    ops_a = [u[:, i].reshape(m, m) for i in range(k)]
    ops_b = [vh[i, :].reshape(n, n) for i in range(k)]
    r = int(np.sum(s > RANK_CUTOFF * s[0])) if s[0] > 0 else 0
    return OperatorSchmidtForm(
        deltas=s[:k],
        ops_a=ops_a,
        ops_b=ops_b,
        traces_a=np.array([np.trace(e) for e in ops_a]),
        traces_b=np.array([np.trace(f) for f in ops_b]),
        rank=r,
    )


def is_product(state: BipartiteState, tol: float = 1e-9) -> bool:
    """True iff the operator Schmidt rank is <= 1 (second coefficient <= tol)."""
    osf = operator_schmidt(state)
    if len(osf.deltas) < 2:
        return True
    return float(osf.deltas[1]) <= tol


# ---------------------------------------------------------------------------
# Two-qubit Bloch machinery


def fano(state: BipartiteState) -> TwoQubitFano:
    """Bloch coefficients u_i, v_i, w_kl of a two-qubit state."""
    if state.dim_a != 2 or state.dim_b != 2:
        raise DimensionMismatch("fano form requires a two-qubit state")
    rho = state.rho
    eye = np.eye(2)
    u = np.empty(3)
    v = np.empty(3)
    w = np.empty((3, 3))
    for i, si in enumerate(PAULI):
        tu = np.trace(rho @ kron(si, eye))
        tv = np.trace(rho @ kron(eye, si))
        if abs(tu.imag) > 1e-10 or abs(tv.imag) > 1e-10:
            raise NotAState("hermiticity", "Bloch coefficients came out complex")
        u[i] = tu.real
        v[i] = tv.real
        for j, sj in enumerate(PAULI):
            tw = np.trace(rho @ kron(si, sj))
            if abs(tw.imag) > 1e-10:
                raise NotAState("hermiticity", "Bloch coefficients came out complex")
            w[i, j] = tw.real
    return TwoQubitFano(u=u, v=v, w=w)


def fano_to_matrix(u, v, w) -> np.ndarray:
    """Inverse of :func:`fano`: assemble the 4x4 matrix from Bloch data."""
    rho = np.eye(4, dtype=complex)
    eye = np.eye(2)
    for i, si in enumerate(PAULI):
        rho += u[i] * kron(si, eye) + v[i] * kron(eye, si)
        for j, sj in enumerate(PAULI):
            rho += w[i][j] * kron(si, sj)
    return rho / 4.0


def rotation_from_unitary(u2: np.ndarray) -> np.ndarray:
    """SO(3) rotation R with U sigma_i U^dag = sum_j R[j,i] sigma_j."""
    r = np.empty((3, 3))
    for i, si in enumerate(PAULI):
        m = u2 @ si @ dagger(u2)
        for j, sj in enumerate(PAULI):
            r[j, i] = 0.5 * np.trace(sj @ m).real
    return r


def unitary_from_rotation(r: np.ndarray) -> np.ndarray:
    """SU(2) lift of an SO(3) rotation (inverse of rotation_from_unitary).

    Uses the axis-angle form: U = cos(t/2) I - i sin(t/2) n.sigma rotates
    Bloch vectors by angle t about axis n.
    """
    rotvec = Rotation.from_matrix(np.asarray(r, dtype=float)).as_rotvec()
    angle = np.linalg.norm(rotvec)
    if angle < 1e-15:
        return np.eye(2, dtype=complex)
    n = rotvec / angle
    nsigma = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    return np.cos(angle / 2) * np.eye(2, dtype=complex) - 1j * np.sin(angle / 2) * nsigma


def canonicalize_two_qubit(state: BipartiteState) -> TwoQubitCanonical:
    """Diagonalize the correlation matrix of a two-qubit state by local unitaries.

    The real SVD of w is restricted to special-orthogonal factors (a sign flip
    is absorbed into the smallest singular value), so both rotations lift to
    SU(2).  Output ordering: |c_1| >= |c_2| >= |c_3|.
    """
    f = fano(state)
    o1, s, o2t = np.linalg.svd(f.w)
    o2 = o2t.T
    c = s.copy()
    if np.linalg.det(o1) < 0:
        o1 = o1.copy()
        o1[:, 2] *= -1
        c[2] *= -1
    if np.linalg.det(o2) < 0:
        o2 = o2.copy()
        o2[:, 2] *= -1
        c[2] *= -1
    r_a = o1.T
    r_b = o2.T
    u_a = unitary_from_rotation(r_a)
    u_b = unitary_from_rotation(r_b)
    return TwoQubitCanonical(a=r_a @ f.u, b=r_b @ f.v, c=c, u_a=u_a, u_b=u_b)


def apply_local_unitaries(state: BipartiteState, u_a: np.ndarray, u_b: np.ndarray) -> BipartiteState:
    """(u_a (x) u_b) rho (u_a (x) u_b)^dag as a new validated state."""
    u = kron(u_a, u_b)
    return BipartiteState(state.dim_a, state.dim_b, u @ state.rho @ dagger(u))


# ---------------------------------------------------------------------------
# Random sampling (testing and verification helpers)


def random_pure_state(dim_a: int, dim_b: int, seed) -> np.ndarray:
    """Haar-random pure-state amplitudes on C^dim_a (x) C^dim_b."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    d = dim_a * dim_b
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_state(dim_a: int, dim_b: int, seed, rank: int | None = None) -> BipartiteState:
    """Random full-rank (or given-rank) mixed state from a Ginibre matrix."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    d = dim_a * dim_b
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    return BipartiteState(dim_a, dim_b, rho / np.trace(rho).real)


def random_product_state(dim_a: int, dim_b: int, seed) -> BipartiteState:
    """Random product state rho_a (x) rho_b."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    def _factor(d):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = g @ g.conj().T
        return rho / np.trace(rho).real

    return BipartiteState(dim_a, dim_b, kron(_factor(dim_a), _factor(dim_b)))


# ---------------------------------------------------------------------------
# State file I/O (JSON; shared with the CLI)


def save_state(state: BipartiteState, path) -> None:
    """Write a state file: dims plus the row-major matrix as [re, im] pairs.

    Floats are emitted with shortest round-trip representation, which carries
    at least 17 significant digits of information.
    """
    flat = state.rho.ravel()
    doc = {
        "dim_a": state.dim_a,
        "dim_b": state.dim_b,
        "matrix": [[z.real, z.imag] for z in flat],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_state(path) -> BipartiteState:
    """Read and validate a state file written by :func:`save_state`."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        dim_a = int(doc["dim_a"])
        dim_b = int(doc["dim_b"])
        entries = doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise NotAState("shape", f"state file missing field: {exc}") from exc
    d = dim_a * dim_b
    if len(entries) != d * d:
        raise NotAState(
            "shape", f"matrix has {len(entries)} entries, expected {d * d}"
        )
    flat = np.array([complex(re, im) for re, im in entries])
    return BipartiteState(dim_a, dim_b, flat.reshape(d, d))

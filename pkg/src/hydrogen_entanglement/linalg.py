"""Dense complex matrix algebra and a deterministic Hermitian eigensolver.

Matrices are plain ``numpy`` complex128 arrays. Every public function
validates its inputs (two-dimensional, finite entries, compatible shapes) and
raises :class:`~hydrogen_entanglement.utils.errors.ValidationError` naming the
violated invariant.

The eigensolver is a cyclic Jacobi method for complex Hermitian matrices. Each
sweep visits every off-diagonal pair once in round-robin (tournament) order:
n - 1 rounds of disjoint (p, q) pairs, each round applied as one vectorized
update. Output is canonicalized so that identical input gives bit-identical
output:

- eigenvalues sorted descending;
- each eigenvector scaled so its largest-magnitude component is real and
  positive (ties within 1e-10 resolved to the lowest index);
- inside a degenerate cluster (gap below ``degeneracy_gap``) vectors are
  ordered by the index of their first significant component. Only the spanned
  subspace of a degenerate cluster is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Any, Literal

import numpy as np
import numpy.typing as npt
import structlog

from hydrogen_entanglement.utils.errors import NumericalFailure, ValidationError

if TYPE_CHECKING:
    from hydrogen_entanglement.config import EigenSolverConfig

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]
EigenMethod = Literal["jacobi", "lapack", "auto"]

# Above this dimension method="auto" hands the matrix to LAPACK.
JACOBI_MAX_DIM = 256

# A sweep that no longer halves the off-diagonal norm has hit round-off.
ROUNDOFF_FLOOR = 1e-12
# |a_pq| <= eps * sqrt(|a_pp a_qq|) is treated as already zero.
PAIR_NEGLIGIBLE = float(np.finfo(np.float64).eps)
PHASE_TIE_REL = 1e-10
SIGNIFICANT_COMPONENT = 1e-8

logger = structlog.get_logger()


def as_complex_matrix(a: npt.ArrayLike, *, name: str = "matrix") -> ComplexMatrix:
    """Convert array-like input to a validated 2-D complex128 array.

    Args:
        a: Anything numpy can turn into a 2-D array
        name: Argument name used in error messages

    Returns:
        A new complex128 array

    Raises:
        ValidationError: If the input is not 2-D or has NaN/Inf entries
    """
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValidationError(
            f"{name} must be two-dimensional, got shape {arr.shape}",
            invariant="two_dimensional",
            details={"argument": name, "shape": list(arr.shape)},
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError(
            f"{name} has non-finite entries",
            invariant="finite_entries",
            details={"argument": name},
        )
    return arr


def _require_square(a: ComplexMatrix, name: str) -> None:
    if a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValidationError(
            f"{name} must be square and non-empty, got shape {a.shape}",
            invariant="square",
            details={"argument": name, "shape": list(a.shape)},
        )


def matmul(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Matrix product a @ b with shape validation."""
    left = as_complex_matrix(a, name="a")
    right = as_complex_matrix(b, name="b")
    if left.shape[1] != right.shape[0]:
        raise ValidationError(
            f"Inner dimensions differ: a is {left.shape}, b is {right.shape}",
            invariant="inner_dimensions",
            details={"a_shape": list(left.shape), "b_shape": list(right.shape)},
        )
    return left @ right


def adjoint(a: npt.ArrayLike) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_complex_matrix(a).conj().T.copy()


def trace(a: npt.ArrayLike) -> complex:
    """Sum of the diagonal of a square matrix."""
    arr = as_complex_matrix(a)
    _require_square(arr, "matrix")
    return complex(np.trace(arr))


def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Tensor product a ⊗ b in row-major (|u_i>|v_j> -> i * dim_v + j) order."""
    return np.kron(as_complex_matrix(a, name="a"), as_complex_matrix(b, name="b"))


def hermiticity_defect(a: ComplexMatrix) -> float:
    """Largest entry of |a - a^dagger|."""
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


@dataclass(frozen=True, eq=False)
class HermitianEigenDecomposition:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: RealVector
    eigenvectors: ComplexMatrix
    sweeps: int = 0

    def __post_init__(self) -> None:
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    def reconstruct(self) -> ComplexMatrix:
        """Return U diag(lambda) U^dagger."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


@lru_cache(maxsize=64)
def _round_robin_schedule(n: int) -> tuple[tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]], ...]:
    """Tournament pairing: n - 1 rounds (n even) covering every pair once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        p_idx: list[int] = []
        q_idx: list[int] = []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a >= 0 and b >= 0:
                p_idx.append(min(a, b))
                q_idx.append(max(a, b))
        rounds.append((np.array(p_idx, dtype=np.intp), np.array(q_idx, dtype=np.intp)))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(rounds)


def _offdiag_norm(a: ComplexMatrix) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate_round(
    work: ComplexMatrix,
    vectors: ComplexMatrix,
    p: npt.NDArray[np.intp],
    q: npt.NDArray[np.intp],
    floor: float,
) -> int:
    """Apply one round of disjoint complex Jacobi rotations in place.

    For each pair, a_pq = r e^{i theta}. The rotation G = diag(1, e^{-i theta}) R
    with R the real Jacobi rotation of [[a_pp, r], [r, a_qq]] annihilates a_pq
    in G^dagger A G. Pairs with negligible |a_pq|, or |a_pq| <= floor, are left
    untouched. Returns the number of rotations applied.
    """
    app = work[p, p].real
    aqq = work[q, q].real
    apq = work[p, q]
    r = np.abs(apq)
    active = (r > PAIR_NEGLIGIBLE * np.sqrt(np.abs(app * aqq))) & (r > floor)
    if not np.any(active):
        return 0
    p, q = p[active], q[active]
    app, aqq, apq, r = app[active], aqq[active], apq[active], r[active]
    phase = np.conj(apq) / r
    phase /= np.abs(phase)

    tau = (aqq - app) / (2.0 * r)
    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c

    col_p = work[:, p].copy()
    col_q = work[:, q].copy()
    work[:, p] = col_p * c - col_q * (s * phase)
    work[:, q] = col_p * s + col_q * (c * phase)

    row_p = work[p, :].copy()
    row_q = work[q, :].copy()
    work[p, :] = c[:, None] * row_p - (s * np.conj(phase))[:, None] * row_q
    work[q, :] = s[:, None] * row_p + (c * np.conj(phase))[:, None] * row_q

    work[p, q] = 0.0
    work[q, p] = 0.0
    work[p, p] = app - t * r
    work[q, q] = aqq + t * r

    vec_p = vectors[:, p].copy()
    vec_q = vectors[:, q].copy()
    vectors[:, p] = vec_p * c - vec_q * (s * phase)
    vectors[:, q] = vec_p * s + vec_q * (c * phase)
    return int(p.size)


def _jacobi(
    a: ComplexMatrix, *, max_sweeps: int, offdiag_rel_tol: float
) -> tuple[RealVector, ComplexMatrix, int]:
    n = a.shape[0]
    work = a.copy()
    vectors = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(work))
    threshold = offdiag_rel_tol * scale
    floor = PAIR_NEGLIGIBLE**2 * scale
    schedule = _round_robin_schedule(n)

    off = _offdiag_norm(work)
    for sweep in range(max_sweeps):
        if off <= threshold:
            return np.diagonal(work).real.copy(), vectors, sweep
        rotations = 0
        for p, q in schedule:
            if p.size:
                rotations += _rotate_round(work, vectors, p, q, floor)
        if rotations == 0:
            return np.diagonal(work).real.copy(), vectors, sweep + 1
        new_off = _offdiag_norm(work)
        if new_off > 0.5 * off and new_off <= ROUNDOFF_FLOOR * scale:
            logger.debug(
                "Jacobi stopped at round-off floor",
                sweeps=sweep + 1,
                offdiag=new_off,
                scale=scale,
            )
            return np.diagonal(work).real.copy(), vectors, sweep + 1
        off = new_off

    if off <= threshold:
        return np.diagonal(work).real.copy(), vectors, max_sweeps
    raise NumericalFailure(
        f"Jacobi eigensolver did not converge within {max_sweeps} sweeps",
        invariant="eigensolver_convergence",
        details={"offdiag_norm": off, "threshold": threshold, "dimension": n},
    )


def _canonicalize(
    eigenvalues: RealVector, vectors: ComplexMatrix, degeneracy_gap: float
) -> tuple[RealVector, ComplexMatrix]:
    """Apply the phase convention and the deterministic ordering."""
    n = vectors.shape[1]
    cols = np.arange(n)
    mags = np.abs(vectors)
    peak = mags.max(axis=0)
    pivot_rows = np.argmax(mags >= peak * (1.0 - PHASE_TIE_REL), axis=0)
    pivots = vectors[pivot_rows, cols]
    vectors = vectors * (np.conj(pivots) / np.abs(pivots))
    vectors[pivot_rows, cols] = np.abs(pivots)

    order = np.argsort(-eigenvalues, kind="stable")
    first_significant = np.argmax(mags > SIGNIFICANT_COMPONENT, axis=0)

    ordered: list[int] = []
    cluster = [int(order[0])]
    for idx in order[1:]:
        if eigenvalues[cluster[-1]] - eigenvalues[idx] < degeneracy_gap:
            cluster.append(int(idx))
            continue
        ordered.extend(sorted(cluster, key=lambda j: first_significant[j]))
        cluster = [int(idx)]
    ordered.extend(sorted(cluster, key=lambda j: first_significant[j]))

    perm = np.array(ordered, dtype=np.intp)
    return eigenvalues[perm].copy(), vectors[:, perm].copy()


def hermitian_eig(
    a: npt.ArrayLike,
    tol: float = 1e-10,
    *,
    method: EigenMethod = "auto",
    max_sweeps: int = 100,
    offdiag_rel_tol: float = 1e-14,
    degeneracy_gap: float = 1e-10,
) -> HermitianEigenDecomposition:
    """Diagonalize a Hermitian matrix deterministically.

    Args:
        a: Square complex matrix with max|a - a^dagger| <= tol
        tol: Hermiticity tolerance
        method: "jacobi" (cyclic Jacobi), "lapack" (numpy.linalg.eigh) or
            "auto" (Jacobi up to JACOBI_MAX_DIM, LAPACK above)
        max_sweeps: Jacobi iteration cap
        offdiag_rel_tol: Jacobi convergence threshold relative to ||a||_F
        degeneracy_gap: Eigenvalue gap below which vectors form a cluster

    Returns:
        HermitianEigenDecomposition with descending eigenvalues

    Raises:
        ValidationError: If a is not square or not Hermitian within tol
        NumericalFailure: If Jacobi does not converge within max_sweeps
    """
    arr = as_complex_matrix(a)
    _require_square(arr, "matrix")
    defect = hermiticity_defect(arr)
    if defect > tol:
        raise ValidationError(
            f"Matrix is not Hermitian: max|a - a^dagger| = {defect:.3e} > {tol:.1e}",
            invariant="hermitian",
            details={"defect": defect, "tolerance": tol},
        )
    arr = 0.5 * (arr + arr.conj().T)
    n = arr.shape[0]

    use_lapack = method == "lapack" or (method == "auto" and n > JACOBI_MAX_DIM)
    if use_lapack:
        values, vectors = np.linalg.eigh(arr)
        sweeps = 0
    else:
        values, vectors, sweeps = _jacobi(
            arr, max_sweeps=max_sweeps, offdiag_rel_tol=offdiag_rel_tol
        )

    values, vectors = _canonicalize(values, vectors, degeneracy_gap)
    return HermitianEigenDecomposition(eigenvalues=values, eigenvectors=vectors, sweeps=sweeps)


def complete_basis(columns: ComplexMatrix, dim: int) -> ComplexMatrix:
    """Extend orthonormal columns to a full orthonormal basis of C^dim.

    Gram-Schmidt against the accepted columns, seeded from standard basis
    vectors in index order. A seed is accepted when its residual norm exceeds
    0.5/sqrt(dim), which always leaves enough seeds to finish.
    """
    basis = [columns[:, j] for j in range(columns.shape[1])]
    threshold = 0.5 / np.sqrt(dim)
    for seed in range(dim):
        if len(basis) >= dim:
            break
        candidate = np.zeros(dim, dtype=np.complex128)
        candidate[seed] = 1.0
        for _ in range(2):
            for vec in basis:
                candidate -= vec * np.vdot(vec, candidate)
        norm = np.linalg.norm(candidate)
        if norm > threshold:
            basis.append(candidate / norm)
    if len(basis) < dim:
        raise NumericalFailure(
            "Basis completion ran out of seed vectors",
            invariant="basis_completion",
            details={"dimension": dim, "found": len(basis)},
        )
    if not basis:
        return np.zeros((dim, 0), dtype=np.complex128)
    return np.column_stack(basis)


def gram_partner_basis(
    d: ComplexMatrix,
    u: ComplexMatrix,
    eigenvalues: RealVector,
    tol: float,
) -> tuple[ComplexMatrix, RealVector]:
    """Build the paired basis V_{jl} = sum_k conj(d_kj) U_kl.

    Every column is d^dagger u_l normalized by its own norm, which equals
    sqrt(lambda_l). Columns with lambda <= tol are first orthogonalized against
    the earlier columns; once one of them has no direction left (zero norm, or
    less than half its length survives the projection) it and all later columns
    are completed by Gram-Schmidt. U diag(c) V^dagger reproduces d to round-off,
    sub-tolerance tails included.

    Returns:
        (V, coefficients) with V unitary (cols x cols) and coefficients of
        length min(rows, cols), coefficient l = ||d^dagger u_l||
    """
    rows, cols = d.shape
    rank_cap = min(rows, cols)
    raw = d.conj().T @ u[:, :rank_cap]
    coefficients = np.linalg.norm(raw, axis=0)
    accepted: list[ComplexVector] = []
    for col in range(rank_cap):
        if coefficients[col] == 0.0:
            break
        candidate = raw[:, col] / coefficients[col]
        if eigenvalues[col] <= tol:
            for _ in range(2):
                for vec in accepted:
                    candidate = candidate - vec * np.vdot(vec, candidate)
            norm = float(np.linalg.norm(candidate))
            if norm <= 0.5:
                break
            candidate = candidate / norm
        accepted.append(candidate)
    if accepted:
        columns = np.column_stack(accepted)
    else:
        columns = np.zeros((cols, 0), dtype=np.complex128)
    return complete_basis(columns, cols), coefficients


def svd_via_gram(
    d: npt.ArrayLike,
    tol: float = 1e-12,
    *,
    method: EigenMethod = "auto",
) -> tuple[ComplexMatrix, RealVector, ComplexMatrix]:
    """Singular value decomposition from the eigendecomposition of d d^dagger.

    Args:
        d: Coefficient matrix (rows x cols)
        tol: V columns whose eigenvalue of d d^dagger is at or below tol are
            orthogonalized against the earlier columns, or completed

    Returns:
        (U, sigma, V) with d = U[:, :r] diag(sigma) V[:, :r]^dagger,
        r = min(rows, cols), sigma descending, U and V unitary

    Raises:
        NumericalFailure: Propagated from hermitian_eig
    """
    arr = as_complex_matrix(d, name="d")
    gram = arr @ arr.conj().T
    decomposition = hermitian_eig(gram, method=method)
    v, sigma = gram_partner_basis(arr, decomposition.eigenvectors, decomposition.eigenvalues, tol)
    return decomposition.eigenvectors.copy(), sigma, v


def eig_options(config: EigenSolverConfig | None) -> dict[str, Any]:
    """Keyword arguments for hermitian_eig taken from an EigenSolverConfig."""
    if config is None:
        return {}
    return {
        "method": config.method,
        "max_sweeps": config.max_sweeps,
        "offdiag_rel_tol": config.offdiag_rel_tol,
        "degeneracy_gap": config.degeneracy_gap,
    }

"""Pure bipartite states, partial traces and the Schmidt decomposition.

A pure state on H_u ⊗ H_v is stored as its coefficient matrix d with
|Psi> = sum_ij d_ij |u_i>|v_j>. The reduced densities are

    rho_u[i, k] = sum_j d_ij conj(d_kj)          (d d^dagger)
    rho_v[l, j] = sum_i conj(d_il) d_ij          (d^dagger d)

rho_v is written in the representation where the paired Schmidt vectors
V_jl = sum_k conj(d_kj) U_kl are its eigenvectors. Both reduced densities share
their non-zero spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
import structlog

from hydrogen_entanglement.linalg import (
    ComplexMatrix,
    HermitianEigenDecomposition,
    RealVector,
    as_complex_matrix,
    eig_options,
    gram_partner_basis,
    hermitian_eig,
    hermiticity_defect,
    kron,
)
from hydrogen_entanglement.utils.errors import NumericalFailure, ValidationError

if TYPE_CHECKING:
    from hydrogen_entanglement.config import EigenSolverConfig

logger = structlog.get_logger()

NORM_TOL = 1e-10
DENSITY_TOL = 1e-10
CLAMP_TOL = 1e-12
RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureBipartiteState:
    """Unit-norm coefficient matrix d of shape (dim_u, dim_v)."""

    d: ComplexMatrix
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        arr = as_complex_matrix(self.d, name="d")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(
                f"State is not normalized: ||d||_F = {norm:.12g}",
                invariant="unit_norm",
                details={"norm": norm, "tolerance": NORM_TOL},
            )
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)

    @classmethod
    def from_matrix(
        cls, d: npt.ArrayLike, *, renormalize_tol: float | None = None
    ) -> PureBipartiteState:
        """Build a state, optionally rescaling a nearly normalized matrix.

        Args:
            d: Coefficient matrix
            renormalize_tol: If given, a matrix whose norm is within this
                distance of 1 is rescaled to unit norm and a warning recorded

        Raises:
            ValidationError: If the norm is off by more than the tolerance
        """
        arr = as_complex_matrix(d, name="d")
        if renormalize_tol is None:
            return cls(arr)

        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > renormalize_tol:
            raise ValidationError(
                f"State norm {norm:.12g} is farther than {renormalize_tol:g} from 1",
                invariant="unit_norm",
                details={"norm": norm, "tolerance": renormalize_tol},
            )
        if norm == 1.0:
            return cls(arr)
        message = f"input state renormalized (norm was {norm:.12g})"
        logger.warning("Renormalized input state", norm=norm)
        return cls(arr / norm, warnings=(message,))

    @classmethod
    def product(cls, u: npt.ArrayLike, v: npt.ArrayLike) -> PureBipartiteState:
        """Product state |u>|v> from two (not necessarily normalized) vectors."""
        uu = np.asarray(u, dtype=np.complex128).ravel()
        vv = np.asarray(v, dtype=np.complex128).ravel()
        if not (np.linalg.norm(uu) > 0 and np.linalg.norm(vv) > 0):
            raise ValidationError("Product factors must be non-zero", invariant="unit_norm")
        uu = uu / np.linalg.norm(uu)
        vv = vv / np.linalg.norm(vv)
        return cls(np.outer(uu, vv))

    @property
    def dim_u(self) -> int:
        return int(self.d.shape[0])

    @property
    def dim_v(self) -> int:
        return int(self.d.shape[1])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.d))

    def full_vector(self) -> npt.NDArray[np.complex128]:
        """|Psi> in H_u ⊗ H_v, index i * dim_v + j."""
        return self.d.reshape(-1).copy()

    def density(self) -> DensityOperator:
        """Full-system projector |Psi><Psi|."""
        psi = self.full_vector()
        return DensityOperator(np.outer(psi, psi.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, non-negative, unit-trace matrix.

    The eigendecomposition computed during validation is cached and reused by
    ``eigenvalues()`` and by the Schmidt construction.
    """

    matrix: ComplexMatrix
    eigensolver: EigenSolverConfig | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        arr = as_complex_matrix(self.matrix, name="rho")
        if arr.shape[0] != arr.shape[1]:
            raise ValidationError(
                f"Density operator must be square, got {arr.shape}",
                invariant="square",
            )
        defect = hermiticity_defect(arr)
        if defect > DENSITY_TOL:
            raise ValidationError(
                f"Density operator is not Hermitian (defect {defect:.3e})",
                invariant="hermitian",
                details={"defect": defect},
            )
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > DENSITY_TOL:
            raise ValidationError(
                f"Density operator trace is {tr.real:.12g}{tr.imag:+.3e}j, expected 1",
                invariant="unit_trace",
                details={"trace_real": tr.real, "trace_imag": tr.imag},
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

        smallest = float(self.decomposition.eigenvalues[-1])
        if smallest < -DENSITY_TOL:
            raise ValidationError(
                f"Density operator has negative eigenvalue {smallest:.3e}",
                invariant="non_negative",
                details={"smallest_eigenvalue": smallest},
            )

    @cached_property
    def decomposition(self) -> HermitianEigenDecomposition:
        return hermitian_eig(self.matrix, DENSITY_TOL, **eig_options(self.eigensolver))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def eigenvalues(self) -> RealVector:
        """Spectrum, descending."""
        return self.decomposition.eigenvalues

    def purity(self) -> float:
        """Tr(rho^2)."""
        return float(np.real(np.sum(self.matrix * self.matrix.T)))

    def is_idempotent(self, tol: float = 1e-9) -> bool:
        """True when ||rho^2 - rho||_F <= tol."""
        return bool(np.linalg.norm(self.matrix @ self.matrix - self.matrix) <= tol)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Schmidt spectrum with paired orthonormal bases.

    ``lambdas`` and ``coefficients`` have length min(dim_u, dim_v); column l of
    ``u_basis`` pairs with column l of ``v_basis``. Under degenerate lambdas only
    the spanned subspaces are meaningful.
    """

    lambdas: RealVector
    coefficients: RealVector
    u_basis: ComplexMatrix
    v_basis: ComplexMatrix
    rank: int

    def __post_init__(self) -> None:
        total = float(np.sum(self.lambdas))
        if abs(total - 1.0) > DENSITY_TOL:
            raise ValidationError(
                f"Schmidt spectrum sums to {total:.12g}, expected 1",
                invariant="unit_trace",
                details={"sum": total},
            )
        if np.any(self.lambdas < 0.0):
            raise ValidationError(
                "Schmidt spectrum has negative entries", invariant="non_negative"
            )
        for arr in (self.lambdas, self.coefficients, self.u_basis, self.v_basis):
            arr.setflags(write=False)

    def reassemble(self) -> ComplexMatrix:
        """d_ij = sum_l c_l U_il conj(V_jl)."""
        r = self.coefficients.shape[0]
        return (self.u_basis[:, :r] * self.coefficients) @ self.v_basis[:, :r].conj().T


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    """Basis-independent summary of a Schmidt spectrum."""

    schmidt_rank: int
    purity: float
    entropy: float
    participation_number: float
    max_lambda: float
    effective_rank: float

    def to_dict(self) -> dict[str, float | int]:
        return {
            "schmidt_rank": self.schmidt_rank,
            "purity": self.purity,
            "entropy": self.entropy,
            "participation_number": self.participation_number,
            "max_lambda": self.max_lambda,
            "effective_rank": self.effective_rank,
        }


def reduce_u(
    state: PureBipartiteState, *, eigensolver: EigenSolverConfig | None = None
) -> DensityOperator:
    """Trace out the v factor: rho_u = d d^dagger."""
    d = state.d
    return DensityOperator(d @ d.conj().T, eigensolver=eigensolver)


def reduce_v(
    state: PureBipartiteState, *, eigensolver: EigenSolverConfig | None = None
) -> DensityOperator:
    """Trace out the u factor: rho_v = d^dagger d."""
    d = state.d
    return DensityOperator(d.conj().T @ d, eigensolver=eigensolver)


def expectation(rho: DensityOperator, a: npt.ArrayLike) -> complex:
    """Tr(a rho).

    Raises:
        ValidationError: If a does not match the dimension of rho
    """
    op = as_complex_matrix(a, name="a")
    if op.shape != rho.matrix.shape:
        raise ValidationError(
            f"Operator shape {op.shape} does not match density shape {rho.matrix.shape}",
            invariant="matching_dimensions",
            details={"operator_shape": list(op.shape), "density_shape": list(rho.matrix.shape)},
        )
    return complex(np.sum(op * rho.matrix.T))


def full_expectation(state: PureBipartiteState, a_u: npt.ArrayLike) -> complex:
    """<Psi| A ⊗ I |Psi> evaluated on the full product space."""
    op = as_complex_matrix(a_u, name="a_u")
    if op.shape != (state.dim_u, state.dim_u):
        raise ValidationError(
            f"Operator shape {op.shape} does not match dim_u = {state.dim_u}",
            invariant="matching_dimensions",
        )
    psi = state.full_vector()
    full_op = kron(op, np.eye(state.dim_v))
    return complex(np.vdot(psi, full_op @ psi))


def _clamp_spectrum(values: RealVector, clamp_tol: float) -> RealVector:
    smallest = float(values.min())
    if smallest < -clamp_tol:
        raise NumericalFailure(
            f"Reduced density has eigenvalue {smallest:.3e} below -{clamp_tol:g}",
            invariant="non_negative_spectrum",
            details={"smallest_eigenvalue": smallest, "clamp_tolerance": clamp_tol},
        )
    return np.where(values < 0.0, 0.0, values)


def schmidt(
    state: PureBipartiteState,
    tol: float = RANK_TOL,
    *,
    clamp_tol: float = CLAMP_TOL,
    reduced: DensityOperator | None = None,
    eigensolver: EigenSolverConfig | None = None,
) -> SchmidtDecomposition:
    """Schmidt decomposition built from the eigenvectors of rho_u.

    The v basis is V_jl = sum_k conj(d_kj) U_kl, normalized; directions with
    lambda <= tol are completed by Gram-Schmidt.

    Args:
        state: Pure bipartite state
        tol: Rank threshold on lambda
        clamp_tol: Eigenvalues in [-clamp_tol, 0) are reported as 0
        reduced: Precomputed reduce_u(state), reused to avoid a second eigensolve
        eigensolver: Optional solver settings

    Raises:
        ValidationError: If tol is negative
        NumericalFailure: If the spectrum is negative beyond clamp_tol or the
            eigensolver fails
    """
    if tol < 0:
        raise ValidationError(f"Rank tolerance must be >= 0, got {tol}", invariant="tolerance")
    rho_u = reduced if reduced is not None else reduce_u(state, eigensolver=eigensolver)
    decomposition = rho_u.decomposition

    r = min(state.dim_u, state.dim_v)
    lambdas = _clamp_spectrum(decomposition.eigenvalues[:r], clamp_tol)
    v_basis, coefficients = gram_partner_basis(
        state.d, np.asarray(decomposition.eigenvectors), lambdas, tol
    )
    rank = int(np.count_nonzero(lambdas > tol))

    logger.debug(
        "Schmidt decomposition",
        dim_u=state.dim_u,
        dim_v=state.dim_v,
        rank=rank,
        sweeps=decomposition.sweeps,
    )
    return SchmidtDecomposition(
        lambdas=lambdas.copy(),
        coefficients=coefficients,
        u_basis=np.array(decomposition.eigenvectors),
        v_basis=v_basis,
        rank=rank,
    )


def is_product(state: PureBipartiteState, tol: float = RANK_TOL) -> bool:
    """True iff the Schmidt rank at tolerance tol is 1."""
    return schmidt(state, tol).rank == 1


def entanglement_report(s: SchmidtDecomposition) -> EntanglementReport:
    """Purity, von Neumann entropy (natural log) and participation number."""
    lambdas = np.asarray(s.lambdas)
    purity = float(np.sum(lambdas**2))
    positive = lambdas[lambdas > 0.0]
    entropy = float(-np.sum(positive * np.log(positive)))
    entropy = max(entropy, 0.0)
    return EntanglementReport(
        schmidt_rank=s.rank,
        purity=purity,
        entropy=entropy,
        participation_number=1.0 / purity,
        max_lambda=float(lambdas.max()),
        effective_rank=float(np.exp(entropy)),
    )


def random_state(dim_u: int, dim_v: int, seed: int) -> PureBipartiteState:
    """Normalized complex Gaussian coefficients from a seeded generator."""
    if dim_u < 1 or dim_v < 1:
        raise ValidationError(
            f"Dimensions must be >= 1, got ({dim_u}, {dim_v})", invariant="dimensions"
        )
    rng = np.random.default_rng(seed)
    d = rng.standard_normal((dim_u, dim_v)) + 1j * rng.standard_normal((dim_u, dim_v))
    return PureBipartiteState(d / np.linalg.norm(d))

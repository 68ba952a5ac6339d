"""Basis changes, refactorizations, and screen insertion or removal.

A basis transformation is a unitary matrix read against the fixed flattening
of a source and a target configuration. The two configurations may factorize
the same total dimension differently; only the product has to agree. Entry
transformation is matrix conjugation under that flattening:

    transformed = matrix @ alpha @ matrix^dagger

Two verifiers exercise the calculus end to end: one checks that a unitary
change of description preserves spectra and projector valuations, the other
that adjoining an uncorrelated screen and then removing it is lossless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tolerances
from .arrangement import ExperimentalArrangement, require_valid
from .errors import DimensionError, NumericError, ValidationError
from .rand import make_rng, random_projector, random_state_vector, random_unitary
from .screens import ScreenConfiguration
from .tensor import DenseOperatorTensor, _frozen_complex_matrix, partial_trace, tensor_product


@dataclass(frozen=True, eq=False)
class BasisTransformation:
    """Unitary coefficients mapping source description to target description."""

    source_shape: ScreenConfiguration
    target_shape: ScreenConfiguration
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.source_shape.dimension != self.target_shape.dimension:
            raise DimensionError(
                f"source dimension {self.source_shape.dimension} differs from "
                f"target dimension {self.target_shape.dimension}"
            )
        mat = _frozen_complex_matrix(np.asarray(self.matrix, dtype=np.complex128))
        n = self.source_shape.dimension
        if mat.shape != (n, n):
            raise DimensionError(f"matrix has shape {mat.shape}, expected ({n}, {n})")
        dev = float(np.max(np.abs(mat @ mat.conj().T - np.eye(n))))
        if dev > tolerances.UNITARITY_TOL:
            raise NumericError(f"transformation matrix is not unitary: max deviation {dev:.3e}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(
        cls, shape: ScreenConfiguration, target_shape: ScreenConfiguration | None = None
    ) -> "BasisTransformation":
        return cls(shape, target_shape or shape, np.eye(shape.dimension, dtype=np.complex128))

    @classmethod
    def random(
        cls,
        shape: ScreenConfiguration,
        seed: int | np.random.Generator,
        target_shape: ScreenConfiguration | None = None,
    ) -> "BasisTransformation":
        return cls(shape, target_shape or shape, random_unitary(shape.dimension, seed))

    @classmethod
    def screen_permutation(
        cls, shape: ScreenConfiguration, order: Sequence[int]
    ) -> "BasisTransformation":
        """Reorder screens. `order` lists source screen positions (1-based)
        in their new left-to-right order; target screen j is source screen
        order[j-1]."""
        n = shape.num_screens
        perm = tuple(int(p) for p in order)
        if sorted(perm) != list(range(1, n + 1)):
            raise DimensionError(f"order {perm} is not a permutation of 1..{n}")
        target = ScreenConfiguration(tuple(shape.detector_counts[p - 1] for p in perm))
        dim = shape.dimension
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for flat in range(dim):
            src = shape.multi_index(flat)
            dst = tuple(src[p - 1] for p in perm)
            mat[target.flat_index(dst), flat] = 1.0
        return cls(shape, target, mat)

    def inverse(self) -> "BasisTransformation":
        return BasisTransformation(self.target_shape, self.source_shape, self.matrix.conj().T)


def change_basis(ea: ExperimentalArrangement, bt: BasisTransformation) -> ExperimentalArrangement:
    """Re-express the arrangement in the target description."""
    if ea.shape != bt.source_shape:
        raise DimensionError(
            f"arrangement configuration {ea.shape} does not match transformation source {bt.source_shape}"
        )
    moved = bt.matrix @ ea.alpha.entries @ bt.matrix.conj().T
    return require_valid(
        ExperimentalArrangement(DenseOperatorTensor(bt.target_shape, moved), ea.label)
    )


def refactorize(ea: ExperimentalArrangement, new_shape: ScreenConfiguration) -> ExperimentalArrangement:
    """Reread the same flat entries under a different factorization.

    The entry array is reused as-is, so the result is bit-identical.
    """
    if new_shape.dimension != ea.dimension:
        raise DimensionError(
            f"cannot refactor dimension {ea.dimension} as {new_shape} "
            f"(product {new_shape.dimension})"
        )
    return ExperimentalArrangement(DenseOperatorTensor(new_shape, ea.alpha.entries), ea.label)


def remove_screen(ea: ExperimentalArrangement, screen: int) -> ExperimentalArrangement:
    """Drop one screen (1-based position) by tracing out its detector index."""
    if ea.shape.num_screens < 2:
        raise DimensionError("cannot remove the only screen")
    reduced = partial_trace(ea.alpha, [screen])
    return require_valid(ExperimentalArrangement(reduced, ea.label))


def remove_screens(ea: ExperimentalArrangement, screens: Sequence[int]) -> ExperimentalArrangement:
    """Drop several screens at once; at least one must survive."""
    positions = sorted({int(s) for s in screens})
    if len(positions) >= ea.shape.num_screens:
        raise DimensionError("cannot remove every screen")
    reduced = partial_trace(ea.alpha, positions)
    return require_valid(ExperimentalArrangement(reduced, ea.label))


def extend_arrangement(
    ea: ExperimentalArrangement,
    ancilla_dim: int,
    ancilla_state: Sequence[complex] | np.ndarray | None = None,
) -> ExperimentalArrangement:
    """Adjoin an uncorrelated screen in a pure state as the new last screen.

    Default ancilla is the first basis state. The ancilla must be normalized.
    """
    if ancilla_dim < 1:
        raise DimensionError(f"ancilla dimension must be at least 1, got {ancilla_dim}")
    if ancilla_state is None:
        phi = np.zeros(ancilla_dim, dtype=np.complex128)
        phi[0] = 1.0
    else:
        phi = np.asarray(ancilla_state, dtype=np.complex128).reshape(-1)
        if phi.size != ancilla_dim:
            raise DimensionError(
                f"ancilla state has length {phi.size}, expected {ancilla_dim}"
            )
        if not np.all(np.isfinite(phi)):
            raise NumericError("ancilla amplitudes must be finite")
        norm = float(np.linalg.norm(phi))
        if abs(norm - 1.0) > tolerances.STATE_NORM_TOL:
            raise ValidationError(f"ancilla state norm is {norm!r}, expected 1")
    ancilla = DenseOperatorTensor(ScreenConfiguration((ancilla_dim,)), np.outer(phi, phi.conj()))
    joint = tensor_product(ea.alpha, ancilla)
    return require_valid(ExperimentalArrangement(joint, ea.label))


@dataclass(frozen=True)
class BasisInvarianceReport:
    degree: int
    num_projectors: int
    spectrum_residual: float
    valuation_residual: float
    passed: bool


def verify_basis_invariance(
    ea: ExperimentalArrangement,
    bt: BasisTransformation,
    extra_projectors: int = 3,
    seed: int | np.random.Generator = 0,
) -> BasisInvarianceReport:
    """Check that a unitary change of description is observationally silent.

    Compares the sorted spectra of the original and transformed arrangements,
    and the valuation of every basis power, the identity, and a few random
    projectors against the valuation of their transformed images.
    """
    moved = change_basis(ea, bt)
    n = ea.dimension
    a, b, lam = ea.alpha.entries, moved.alpha.entries, bt.matrix

    spec_a = np.linalg.eigvalsh(a)
    spec_b = np.linalg.eigvalsh(b)
    spectrum_residual = float(np.max(np.abs(spec_a - spec_b)))

    # Basis powers all at once: valuations on the source are diag(a); their
    # images have valuation diag(lam^dagger b lam).
    pulled = lam.conj().T @ b @ lam
    valuation_residual = float(np.max(np.abs(a.diagonal().real - pulled.diagonal().real)))
    # Identity maps to itself.
    valuation_residual = max(valuation_residual, abs(float(np.trace(a).real) - float(np.trace(b).real)))

    rng = make_rng(seed)
    for _ in range(extra_projectors):
        rank = int(rng.integers(1, n)) if n > 1 else 1
        p = random_projector(n, rank, rng)
        before = complex(np.einsum("ij,ji->", a, p)).real
        after = complex(np.einsum("ij,ji->", b, lam @ p @ lam.conj().T)).real
        valuation_residual = max(valuation_residual, abs(before - after))

    passed = (
        spectrum_residual <= tolerances.SPECTRUM_TOL
        and valuation_residual <= tolerances.VALUATION_TOL
    )
    return BasisInvarianceReport(
        degree=n,
        num_projectors=n + 1 + extra_projectors,
        spectrum_residual=spectrum_residual,
        valuation_residual=valuation_residual,
        passed=passed,
    )


@dataclass(frozen=True)
class FactorizationInvarianceReport:
    ancilla_dim: int
    trials: int
    max_roundtrip_residual: float
    max_marginal_residual: float
    passed: bool


def verify_factorization_invariance(
    ea: ExperimentalArrangement,
    ancilla_dim: int,
    trials: int = 1,
    seed: int | np.random.Generator = 0,
) -> FactorizationInvarianceReport:
    """Extend with an uncorrelated screen, remove it, and compare.

    Trial 1 uses the default basis ancilla; later trials draw random pure
    ancilla states. Also checks that every potentia query on the original is
    answered identically by marginalizing the extended arrangement.
    """
    if trials < 1:
        raise DimensionError(f"need at least one trial, got {trials}")
    rng = make_rng(seed)
    last = ea.shape.num_screens + 1
    diag = ea.potentia_table()
    roundtrip = 0.0
    marginal = 0.0
    for t in range(trials):
        phi = None if t == 0 else random_state_vector(ancilla_dim, rng)
        extended = extend_arrangement(ea, ancilla_dim, phi)
        back = remove_screen(extended, last)
        roundtrip = max(
            roundtrip, float(np.max(np.abs(back.alpha.entries - ea.alpha.entries)))
        )
        joint = extended.potentia_table().reshape(ea.dimension, ancilla_dim)
        marginal = max(marginal, float(np.max(np.abs(joint.sum(axis=1) - diag))))
    passed = roundtrip <= tolerances.ROUNDTRIP_TOL and marginal <= tolerances.MARGINAL_TOL
    return FactorizationInvarianceReport(
        ancilla_dim=ancilla_dim,
        trials=trials,
        max_roundtrip_residual=roundtrip,
        max_marginal_residual=marginal,
        passed=passed,
    )

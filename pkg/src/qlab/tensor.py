"""Dense operator tensors over factorized detector spaces.

A tensor holds one complex entry per (bra multi-index, ket multi-index) pair
and is stored as an (N, N) array under the shared row-major flattening, so
matrix algebra and multi-index access describe the same object. Entries are
immutable after construction; every operation returns a new tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import tolerances
from .errors import DimensionError, NumericError
from .screens import ScreenConfiguration


def _frozen_complex_matrix(entries: object) -> np.ndarray:
    arr = np.asarray(entries, dtype=np.complex128)
    if arr.flags.writeable:
        if arr is entries or arr.base is not None:
            arr = arr.copy()
        arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DenseOperatorTensor:
    """Immutable (N, N) complex array tied to a screen configuration."""

    shape: ScreenConfiguration
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_complex_matrix(self.entries)
        n = self.shape.dimension
        if arr.ndim != 2 or arr.shape != (n, n):
            raise DimensionError(
                f"entry array has shape {arr.shape}, expected ({n}, {n}) for configuration {self.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise NumericError("tensor entries must be finite (no NaN or Inf)")
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.shape.dimension

    def entry(self, bra: Sequence[int], ket: Sequence[int]) -> complex:
        """Entry at a (bra, ket) pair of 1-based multi-indices."""
        return complex(self.entries[self.shape.flat_index(bra), self.shape.flat_index(ket)])

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal()


def zeros(shape: ScreenConfiguration) -> DenseOperatorTensor:
    n = shape.dimension
    return DenseOperatorTensor(shape, np.zeros((n, n), dtype=np.complex128))


def identity_tensor(shape: ScreenConfiguration) -> DenseOperatorTensor:
    return DenseOperatorTensor(shape, np.eye(shape.dimension, dtype=np.complex128))


def tensor_product(a: DenseOperatorTensor, b: DenseOperatorTensor) -> DenseOperatorTensor:
    """Joint tensor on the concatenated screen list.

    The flat layout of the result is exactly the Kronecker product, because
    both use leftmost-most-significant ordering. Raises DimensionError when
    the combined dimension would exceed the configured cap.
    """
    counts = a.shape.detector_counts + b.shape.detector_counts
    combined = a.dimension * b.dimension
    if combined > tolerances.DIMENSION_CAP:
        raise DimensionError(
            f"capacity overflow: {a.dimension} x {b.dimension} = {combined} "
            f"exceeds the configured cap {tolerances.DIMENSION_CAP}"
        )
    shape = ScreenConfiguration(counts)
    return DenseOperatorTensor(shape, np.kron(a.entries, b.entries))


def conjugate_transpose(t: DenseOperatorTensor) -> DenseOperatorTensor:
    return DenseOperatorTensor(t.shape, t.entries.conj().T)


def trace(t: DenseOperatorTensor) -> complex:
    return complex(np.trace(t.entries))


def partial_trace(t: DenseOperatorTensor, screens: Iterable[int]) -> DenseOperatorTensor:
    """Trace out the given screens (1-based positions).

    Tracing every screen leaves the single-screen, single-detector
    configuration holding the full trace as its only entry.
    """
    n = t.shape.num_screens
    positions = sorted({int(s) for s in screens})
    if not positions:
        return t
    for s in positions:
        if not 1 <= s <= n:
            raise DimensionError(f"screen position {s} out of range 1..{n}")

    counts = t.shape.detector_counts
    arr = t.entries.reshape(counts + counts)
    remaining = n
    for s in reversed(positions):
        # bra axis of screen s sits at s-1, its ket partner `remaining` later
        arr = np.trace(arr, axis1=s - 1, axis2=remaining + s - 1)
        remaining -= 1

    kept = [c for j, c in enumerate(counts, start=1) if j not in positions]
    if not kept:
        new_shape = ScreenConfiguration((1,))
        return DenseOperatorTensor(new_shape, np.asarray(arr, dtype=np.complex128).reshape(1, 1))
    new_shape = ScreenConfiguration(tuple(kept))
    m = new_shape.dimension
    return DenseOperatorTensor(new_shape, np.ascontiguousarray(arr).reshape(m, m))


def hermitian_eigendecomposition(t: DenseOperatorTensor) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, ties keep ascending-order first occurrence)
    and matching orthonormal eigenvector columns.

    Raises NumericError when the tensor is not Hermitian within tolerance.
    """
    a = t.entries
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tolerances.HERMITICITY_TOL:
        raise NumericError(f"tensor is not Hermitian: max deviation {dev:.3e}")
    vals, vecs = np.linalg.eigh(a)
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def singular_value_decomposition(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD (u, s, vh) with s descending and m = u @ diag(s) @ vh."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of rank {arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise NumericError("matrix entries must be finite")
    return np.linalg.svd(arr, full_matrices=False)


def apply_unitary(t: DenseOperatorTensor, u: np.ndarray) -> DenseOperatorTensor:
    """Conjugate the tensor by a unitary: u @ t @ u^dagger."""
    mat = np.asarray(u, dtype=np.complex128)
    n = t.dimension
    if mat.shape != (n, n):
        raise DimensionError(f"unitary has shape {mat.shape}, expected ({n}, {n})")
    dev = np.max(np.abs(mat @ mat.conj().T - np.eye(n)))
    if dev > tolerances.UNITARITY_TOL:
        raise NumericError(f"matrix is not unitary: max deviation {dev:.3e}")
    return DenseOperatorTensor(t.shape, mat @ t.entries @ mat.conj().T)

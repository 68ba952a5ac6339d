"""Correlation structure across screen bipartitions.

For a pure joint state, reshaping the amplitude vector into a matrix along a
cut and taking its SVD yields the Schmidt form: orthonormal vectors on each
side paired by nonnegative coefficients. Rank one across a cut means the two
sides are uncorrelated; rank one across every sequential cut means the state
is a product of single-screen factors. For arrangements (pure or mixed) a
direct marginal comparison tests product structure across a cut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tolerances
from .arrangement import ExperimentalArrangement
from .errors import DimensionError, ValidationError
from .screens import ScreenConfiguration
from .tensor import singular_value_decomposition
from .transforms import BasisTransformation, change_basis, remove_screens

MAX_PROFILE_SCREENS = 12


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint groups of 1-based screen positions covering all screens."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        left = tuple(sorted(int(p) for p in self.left))
        right = tuple(sorted(int(p) for p in self.right))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if not left or not right:
            raise DimensionError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise DimensionError(f"bipartition sides overlap: {left} | {right}")
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise DimensionError("bipartition sides must not repeat screens")

    @classmethod
    def split(cls, left: Sequence[int], num_screens: int) -> "Bipartition":
        """Build from the left side; the right side is the complement."""
        chosen = set(int(p) for p in left)
        right = tuple(p for p in range(1, num_screens + 1) if p not in chosen)
        return cls(tuple(chosen), right)

    def check_against(self, shape: ScreenConfiguration) -> None:
        n = shape.num_screens
        if sorted(self.left + self.right) != list(range(1, n + 1)):
            raise DimensionError(
                f"bipartition {self.left} | {self.right} does not cover screens 1..{n}"
            )

    def __str__(self) -> str:
        return ",".join(map(str, self.left)) + "|" + ",".join(map(str, self.right))


@dataclass(frozen=True, eq=False)
class SchmidtResult:
    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int


def _as_state(state: Sequence[complex] | np.ndarray, shape: ScreenConfiguration) -> np.ndarray:
    v = np.asarray(state, dtype=np.complex128).reshape(-1)
    if v.size != shape.dimension:
        raise DimensionError(
            f"state has length {v.size}, expected {shape.dimension} for {shape}"
        )
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tolerances.STATE_NORM_TOL:
        raise ValidationError(f"state norm is {norm!r}, expected 1")
    return v


def schmidt_decompose(
    state: Sequence[complex] | np.ndarray,
    shape: ScreenConfiguration,
    cut: Bipartition,
) -> SchmidtResult:
    """Schmidt form of a normalized state across a cut.

    Returns coefficients (descending), left and right orthonormal vectors as
    matrix columns, and the rank (coefficients above tolerance). The state is
    the coefficient-weighted sum of left (x) right vector pairs after screens
    are permuted to (left..., right...) order.
    """
    v = _as_state(state, shape)
    cut.check_against(shape)
    counts = shape.detector_counts
    order = cut.left + cut.right
    tensorized = v.reshape(counts)
    permuted = np.transpose(tensorized, [p - 1 for p in order])
    n_left = int(np.prod([counts[p - 1] for p in cut.left]))
    n_right = int(np.prod([counts[p - 1] for p in cut.right]))
    matrix = permuted.reshape(n_left, n_right)
    u, s, vh = singular_value_decomposition(matrix)
    rank = int(np.sum(s > tolerances.SCHMIDT_RANK_TOL))
    return SchmidtResult(s, u, vh.T, rank)


def schmidt_rank_profile(
    state: Sequence[complex] | np.ndarray, shape: ScreenConfiguration
) -> dict[Bipartition, int]:
    """Schmidt rank across every bipartition, keyed with screen 1 on the left.

    The number of cuts doubles with each screen, so configurations beyond
    MAX_PROFILE_SCREENS screens are refused. A single screen has no cuts.
    """
    n = shape.num_screens
    if n > MAX_PROFILE_SCREENS:
        raise DimensionError(
            f"{n} screens would need {2 ** (n - 1) - 1} cuts; cap is {MAX_PROFILE_SCREENS} screens"
        )
    v = _as_state(state, shape)
    profile: dict[Bipartition, int] = {}
    if n == 1:
        return profile
    rest = list(range(2, n + 1))
    for r in range(0, n - 1):
        for extra in itertools.combinations(rest, r):
            cut = Bipartition.split((1,) + extra, n)
            profile[cut] = schmidt_decompose(v, shape, cut).rank
    return profile


def is_fully_separable_pure(
    state: Sequence[complex] | np.ndarray, shape: ScreenConfiguration
) -> tuple[bool, list[np.ndarray] | None]:
    """Peel single screens left to right; separable iff every peel has rank one.

    On success returns one normalized factor per screen whose chained tensor
    product reconstructs the state.
    """
    v = _as_state(state, shape)
    counts = shape.detector_counts
    if len(counts) == 1:
        return True, [v]
    factors: list[np.ndarray] = []
    current = v
    remaining = counts
    while len(remaining) > 1:
        sub_shape = ScreenConfiguration(remaining)
        cut = Bipartition.split((1,), len(remaining))
        result = schmidt_decompose(current, sub_shape, cut)
        if result.rank != 1:
            return False, None
        factors.append(result.left_vectors[:, 0])
        current = result.right_vectors[:, 0]
        remaining = remaining[1:]
    factors.append(current)
    return True, factors


def is_product_across(ea: ExperimentalArrangement, cut: Bipartition) -> tuple[bool, float]:
    """Marginal product test for any valid arrangement.

    Reorders screens to (left..., right...), forms both marginals, and
    reports the largest entrywise gap between the arrangement and the tensor
    product of its marginals.
    """
    cut.check_against(ea.shape)
    order = cut.left + cut.right
    if order == tuple(range(1, ea.shape.num_screens + 1)):
        arranged = ea
    else:
        arranged = change_basis(ea, BasisTransformation.screen_permutation(ea.shape, order))
    k = len(cut.left)
    n = arranged.shape.num_screens
    left_marginal = remove_screens(arranged, range(k + 1, n + 1))
    right_marginal = remove_screens(arranged, range(1, k + 1))
    product = np.kron(left_marginal.alpha.entries, right_marginal.alpha.entries)
    residual = float(np.max(np.abs(arranged.alpha.entries - product)))
    return residual <= tolerances.PRODUCT_TOL, residual

"""Experimental arrangements and the intensive valuation they induce.

An arrangement assigns one complex entry to every (bra, ket) pair of joint
detector outcomes. A valid arrangement is Hermitian with unit trace and no
negative eigenvalues, so its diagonal is a table of potentia: real weights in
[0, 1] summing to 1, one per joint outcome (power). The valuation extends that
table to arbitrary projectors by trace(alpha . P) and is additive over
pairwise orthogonal families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import tolerances
from .errors import DimensionError, NumericError, ValidationError
from .screens import ScreenConfiguration
from .tensor import DenseOperatorTensor, _frozen_complex_matrix

SAMPLER_ALGORITHM = "numpy-pcg64-multinomial"


@dataclass(frozen=True)
class Power:
    """One joint outcome: a 1-based detector choice on every screen."""

    shape: ScreenConfiguration
    index: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", self.shape.check_index(self.index))

    @property
    def flat(self) -> int:
        return self.shape.flat_index(self.index)

    def projector_matrix(self) -> np.ndarray:
        n = self.shape.dimension
        m = np.zeros((n, n), dtype=np.complex128)
        m[self.flat, self.flat] = 1.0
        return m

    def projector(self) -> "GeneralProjector":
        return GeneralProjector(DenseOperatorTensor(self.shape, self.projector_matrix()))


@dataclass(frozen=True, eq=False)
class ExperimentalArrangement:
    """An operator tensor together with an optional label.

    Construction is structural only; run validate_isa (or use a builder,
    every builder validates) to check Hermiticity, trace and positivity.
    """

    alpha: DenseOperatorTensor
    label: str | None = None

    @property
    def shape(self) -> ScreenConfiguration:
        return self.alpha.shape

    @property
    def dimension(self) -> int:
        return self.alpha.dimension

    def potentia(self, index: Sequence[int]) -> float:
        return potentia_of_power(self, index)

    def potentia_table(self) -> np.ndarray:
        """Real diagonal in flat order."""
        diag = self.alpha.diagonal()
        worst = float(np.max(np.abs(diag.imag))) if diag.size else 0.0
        if worst > tolerances.DIAGONAL_TOL:
            raise NumericError(f"diagonal has imaginary part {worst:.3e}")
        return diag.real.copy()


@dataclass(frozen=True)
class IsaCheck:
    name: str
    passed: bool
    residual: float
    tolerance: float


@dataclass(frozen=True)
class IsaValidationReport:
    checks: tuple[IsaCheck, ...]

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> IsaCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def validate_isa(ea: ExperimentalArrangement) -> IsaValidationReport:
    """Check the four arrangement properties and report each residual.

    Checks, in order: hermitian, trace, positive, diagonal. The diagonal
    residual is the worst of imaginary magnitude and distance outside [0, 1].
    """
    a = ea.alpha.entries
    herm = float(np.max(np.abs(a - a.conj().T)))
    tr = complex(np.trace(a))
    trace_res = abs(tr - 1.0)
    # eigvalsh assumes Hermitian input; symmetrize so a lopsided candidate
    # still gets a sensible positivity figure instead of garbage
    sym = (a + a.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    pos_res = max(0.0, -min_eig)
    diag = a.diagonal()
    diag_res = 0.0
    if diag.size:
        imag_part = float(np.max(np.abs(diag.imag)))
        below = float(np.max(np.maximum(-diag.real, 0.0)))
        above = float(np.max(np.maximum(diag.real - 1.0, 0.0)))
        diag_res = max(imag_part, below, above)
    checks = (
        IsaCheck("hermitian", herm <= tolerances.HERMITICITY_TOL, herm, tolerances.HERMITICITY_TOL),
        IsaCheck("trace", trace_res <= tolerances.TRACE_TOL, float(trace_res), tolerances.TRACE_TOL),
        IsaCheck("positive", min_eig >= tolerances.PSD_EIGENVALUE_FLOOR, pos_res, -tolerances.PSD_EIGENVALUE_FLOOR),
        IsaCheck("diagonal", diag_res <= tolerances.DIAGONAL_TOL, diag_res, tolerances.DIAGONAL_TOL),
    )
    return IsaValidationReport(checks)


def require_valid(ea: ExperimentalArrangement) -> ExperimentalArrangement:
    report = validate_isa(ea)
    if not report.valid:
        detail = ", ".join(
            f"{c.name} (residual {c.residual:.6e})" for c in report.checks if not c.passed
        )
        raise ValidationError(f"arrangement failed validation: {detail}")
    return ea


def build_from_state_vector(
    amplitudes: Sequence[complex] | np.ndarray,
    shape: ScreenConfiguration,
    label: str | None = None,
) -> ExperimentalArrangement:
    """Rank-one arrangement |v><v| from a normalized amplitude vector in flat order."""
    v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if v.size != shape.dimension:
        raise DimensionError(
            f"amplitude vector has length {v.size}, expected {shape.dimension} for {shape}"
        )
    if not np.all(np.isfinite(v)):
        raise NumericError("amplitudes must be finite")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tolerances.STATE_NORM_TOL:
        raise ValidationError(f"state vector norm is {norm!r}, expected 1")
    return require_valid(
        ExperimentalArrangement(DenseOperatorTensor(shape, np.outer(v, v.conj())), label)
    )


def build_from_mixture(
    weights: Sequence[float],
    arrangements: Sequence[ExperimentalArrangement],
    label: str | None = None,
) -> ExperimentalArrangement:
    """Convex combination of arrangements over one shared configuration."""
    if len(weights) != len(arrangements) or not arrangements:
        raise DimensionError("need one weight per arrangement, at least one of each")
    shape = arrangements[0].shape
    for ea in arrangements[1:]:
        if ea.shape != shape:
            raise DimensionError(f"mixture mixes configurations {shape} and {ea.shape}")
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w < 0):
        raise ValidationError("mixture weights must be nonnegative")
    total = float(w.sum())
    if abs(total - 1.0) > tolerances.TRACE_TOL:
        raise ValidationError(f"mixture weights sum to {total!r}, expected 1")
    acc = np.zeros((shape.dimension, shape.dimension), dtype=np.complex128)
    for wi, ea in zip(w, arrangements):
        acc += wi * ea.alpha.entries
    return require_valid(ExperimentalArrangement(DenseOperatorTensor(shape, acc), label))


def degree_of_complexity(ea: ExperimentalArrangement) -> int:
    return ea.dimension


def potentia_of_power(ea: ExperimentalArrangement, power: Power | Sequence[int]) -> float:
    """Diagonal entry at the power's multi-index.

    The imaginary part is checked against tolerance and discarded.
    """
    if isinstance(power, Power):
        if power.shape != ea.shape:
            raise DimensionError(f"power on {power.shape} queried against {ea.shape}")
        flat = power.flat
    else:
        flat = ea.shape.flat_index(power)
    value = complex(ea.alpha.entries[flat, flat])
    if abs(value.imag) > tolerances.DIAGONAL_TOL:
        raise NumericError(f"potentia has imaginary part {value.imag:.3e}")
    return value.real


@dataclass(frozen=True, eq=False)
class GeneralProjector:
    """Hermitian idempotent operator on a configuration's full space."""

    matrix: DenseOperatorTensor

    def __post_init__(self) -> None:
        m = self.matrix.entries
        herm = float(np.max(np.abs(m - m.conj().T)))
        idem = float(np.max(np.abs(m @ m - m)))
        worst = max(herm, idem)
        if worst > tolerances.PROJECTOR_TOL:
            raise NumericError(f"not a projector: max deviation {worst:.3e}")

    @classmethod
    def from_matrix(cls, m: np.ndarray, shape: ScreenConfiguration | None = None) -> "GeneralProjector":
        arr = _frozen_complex_matrix(np.asarray(m, dtype=np.complex128))
        if shape is None:
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise DimensionError(f"projector matrix must be square, got {arr.shape}")
            shape = ScreenConfiguration((arr.shape[0],))
        return cls(DenseOperatorTensor(shape, arr))

    @classmethod
    def identity(cls, shape: ScreenConfiguration) -> "GeneralProjector":
        return cls(DenseOperatorTensor(shape, np.eye(shape.dimension, dtype=np.complex128)))

    @property
    def dimension(self) -> int:
        return self.matrix.dimension

    @property
    def rank(self) -> int:
        return int(round(float(np.trace(self.matrix.entries).real)))


def commutes(p: GeneralProjector, q: GeneralProjector) -> bool:
    """True when the commutator vanishes within tolerance."""
    if p.dimension != q.dimension:
        raise DimensionError(f"projector dimensions differ: {p.dimension} vs {q.dimension}")
    a, b = p.matrix.entries, q.matrix.entries
    return float(np.max(np.abs(a @ b - b @ a))) <= tolerances.COMMUTATOR_TOL


@dataclass(frozen=True, eq=False)
class PowersGraph:
    """Projectors as vertices, edges between commuting pairs (i < j pairs)."""

    vertices: tuple[GeneralProjector, ...]
    edges: frozenset[tuple[int, int]]

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        a, b = min(i, j), max(i, j)
        return (a, b) in self.edges


def build_powers_graph(projectors: Sequence[GeneralProjector]) -> PowersGraph:
    verts = tuple(projectors)
    dims = {p.dimension for p in verts}
    if len(dims) > 1:
        raise DimensionError(f"projectors live on different dimensions: {sorted(dims)}")
    edges = set()
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if commutes(verts[i], verts[j]):
                edges.add((i, j))
    return PowersGraph(verts, frozenset(edges))


@dataclass(frozen=True, eq=False)
class GlobalIntensiveValuation:
    """The valuation P -> trace(alpha . P) backed by one arrangement."""

    backing: ExperimentalArrangement

    def __call__(self, p: GeneralProjector) -> float:
        return potentia_of_projector(self, p)


def potentia_of_projector(giv: GlobalIntensiveValuation, p: GeneralProjector) -> float:
    ea = giv.backing
    if p.dimension != ea.dimension:
        raise DimensionError(
            f"projector dimension {p.dimension} does not match arrangement dimension {ea.dimension}"
        )
    value = complex(np.einsum("ij,ji->", ea.alpha.entries, p.matrix.entries))
    if abs(value.imag) > tolerances.DIAGONAL_TOL:
        raise NumericError(f"valuation has imaginary part {value.imag:.3e}")
    return value.real


@dataclass(frozen=True)
class AdditivityReport:
    family_size: int
    residual: float
    passed: bool


def verify_additivity(
    giv: GlobalIntensiveValuation, family: Sequence[GeneralProjector]
) -> AdditivityReport:
    """Compare the valuation of a summed orthogonal family with the sum of valuations.

    The family must be pairwise orthogonal within tolerance; the sum of such a
    family is itself a projector, so the valuation applies to it directly.
    """
    if not family:
        raise DimensionError("additivity needs a nonempty projector family")
    mats = [p.matrix.entries for p in family]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            dev = float(np.max(np.abs(mats[i] @ mats[j])))
            if dev > tolerances.ORTHOGONALITY_TOL:
                raise NumericError(
                    f"family is not pairwise orthogonal: |P{i} P{j}| = {dev:.3e}"
                )
    total = np.sum(mats, axis=0)
    whole = complex(np.einsum("ij,ji->", giv.backing.alpha.entries, total)).real
    parts = sum(potentia_of_projector(giv, p) for p in family)
    residual = abs(whole - parts)
    return AdditivityReport(len(family), residual, residual <= tolerances.ADDITIVITY_TOL)


class AbstractPurity(NamedTuple):
    value: float
    is_pure: bool


class OperationalPurity(NamedTuple):
    max_eigenvalue: float
    certain_power_exists: bool


def purity_abstract(ea: ExperimentalArrangement) -> AbstractPurity:
    """Trace of the squared tensor; pure iff it equals 1 within tolerance."""
    value = complex(np.einsum("ij,ji->", ea.alpha.entries, ea.alpha.entries))
    return AbstractPurity(value.real, abs(value.real - 1.0) <= tolerances.PURITY_TOL)


def purity_operational(ea: ExperimentalArrangement) -> OperationalPurity:
    """Largest eigenvalue; a certain outcome exists in some basis iff it is 1.

    In the eigenbasis the arrangement is diagonal, so a unit eigenvalue means
    one power there carries potentia 1 and every other power carries 0.
    """
    top = float(np.linalg.eigvalsh(ea.alpha.entries)[-1])
    return OperationalPurity(top, abs(top - 1.0) <= tolerances.PURITY_TOL)


def sample_outcomes(ea: ExperimentalArrangement, count: int, seed: int) -> dict[tuple[int, ...], int]:
    """Draw joint outcomes from the potentia table.

    One multinomial draw of the full count using a PCG64 generator seeded with
    `seed` (algorithm id: SAMPLER_ALGORITHM). Identical inputs give identical
    counts. Returns only outcomes that occurred, keyed by multi-index in flat
    order.
    """
    if count < 0:
        raise DimensionError(f"draw count must be nonnegative, got {count}")
    table = ea.potentia_table()
    total = float(table.sum())
    if abs(total - 1.0) > tolerances.DIAGONAL_TOL:
        raise ValidationError(f"potentia table sums to {total!r}, expected 1")
    p = np.clip(table, 0.0, None)
    p = p / p.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.multinomial(count, p)
    out: dict[tuple[int, ...], int] = {}
    for flat, c in enumerate(draws):
        if c > 0:
            out[ea.shape.multi_index(flat)] = int(c)
    return out

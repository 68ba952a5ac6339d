"""Shared builders and independent brute-force oracles for the test suite.

The loop_* functions re-derive tensor operations from their definitions with
plain Python loops, deliberately avoiding the vectorized library paths, so
tests can compare the two routes.
"""

from __future__ import annotations

import math

import numpy as np

import qlab


def two_detector_table() -> qlab.ExperimentalArrangement:
    """Single screen, two detectors, potentia 0.7 and 0.3."""
    shape = qlab.configuration(2)
    return qlab.build_from_mixture(
        [0.7, 0.3],
        [
            qlab.build_from_state_vector([1, 0], shape),
            qlab.build_from_state_vector([0, 1], shape),
        ],
    )


def six_detector_certain() -> qlab.ExperimentalArrangement:
    """Single screen, six detectors, all potentia on the first."""
    shape = qlab.configuration(6)
    v = np.zeros(6)
    v[0] = 1.0
    return qlab.build_from_state_vector(v, shape)


def four_screen_pair() -> qlab.ExperimentalArrangement:
    """Four qubit-like screens, equal mixture of the joint outcomes
    (1,2,1,2) and (2,2,2,2); screens 1 and 3 track screen 2's partner."""
    shape = qlab.configuration(2, 2, 2, 2)
    v1 = np.zeros(16)
    v1[shape.flat_index((1, 2, 1, 2))] = 1.0
    v2 = np.zeros(16)
    v2[shape.flat_index((2, 2, 2, 2))] = 1.0
    return qlab.build_from_mixture(
        [0.5, 0.5],
        [qlab.build_from_state_vector(v1, shape), qlab.build_from_state_vector(v2, shape)],
    )


def three_screen_pair() -> qlab.ExperimentalArrangement:
    """What four_screen_pair becomes after its last screen is removed."""
    shape = qlab.configuration(2, 2, 2)
    v1 = np.zeros(8)
    v1[shape.flat_index((1, 2, 1))] = 1.0
    v2 = np.zeros(8)
    v2[shape.flat_index((2, 2, 2))] = 1.0
    return qlab.build_from_mixture(
        [0.5, 0.5],
        [qlab.build_from_state_vector(v1, shape), qlab.build_from_state_vector(v2, shape)],
    )


def bell_state() -> np.ndarray:
    v = np.zeros(4, dtype=np.complex128)
    v[0] = v[3] = 1 / math.sqrt(2)
    return v


def ghz_state(screens: int = 3) -> np.ndarray:
    v = np.zeros(2**screens, dtype=np.complex128)
    v[0] = v[-1] = 1 / math.sqrt(2)
    return v


def w_state() -> np.ndarray:
    v = np.zeros(8, dtype=np.complex128)
    for flat in (1, 2, 4):
        v[flat] = 1 / math.sqrt(3)
    return v


def product_state(counts: tuple[int, ...], seed: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Random product state and its single-screen factors."""
    rng = qlab.make_rng(seed)
    factors = [qlab.random_state_vector(c, rng) for c in counts]
    v = factors[0]
    for f in factors[1:]:
        v = np.kron(v, f)
    return v, factors


def loop_flat(index: tuple[int, ...], counts: tuple[int, ...]) -> int:
    """Mixed-radix flattening, leftmost most significant, by definition."""
    flat = 0
    for k, c in zip(index, counts):
        flat = flat * c + (k - 1)
    return flat


def loop_indices(counts: tuple[int, ...]):
    """All 1-based multi-indices in flat order."""
    if not counts:
        yield ()
        return
    for head in range(1, counts[0] + 1):
        for tail in loop_indices(counts[1:]):
            yield (head,) + tail


def loop_kron(a: np.ndarray, b: np.ndarray, counts_a, counts_b) -> np.ndarray:
    """Joint tensor from the entry-by-entry definition."""
    counts = tuple(counts_a) + tuple(counts_b)
    n = a.shape[0] * b.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for bra in loop_indices(counts):
        for ket in loop_indices(counts):
            ba, bb = bra[: len(counts_a)], bra[len(counts_a):]
            ka, kb = ket[: len(counts_a)], ket[len(counts_a):]
            out[loop_flat(bra, counts), loop_flat(ket, counts)] = (
                a[loop_flat(ba, counts_a), loop_flat(ka, counts_a)]
                * b[loop_flat(bb, counts_b), loop_flat(kb, counts_b)]
            )
    return out


def loop_partial_trace(matrix: np.ndarray, counts: tuple[int, ...], traced: set[int]) -> np.ndarray:
    """Partial trace from the definition: sum entries whose traced components
    agree on bra and ket. `traced` holds 1-based screen positions."""
    kept = [j for j in range(1, len(counts) + 1) if j not in traced]
    kept_counts = tuple(counts[j - 1] for j in kept)
    traced_counts = tuple(counts[j - 1] for j in sorted(traced))
    m = int(np.prod(kept_counts)) if kept_counts else 1
    out = np.zeros((m, m), dtype=np.complex128)
    for bra_kept in loop_indices(kept_counts):
        for ket_kept in loop_indices(kept_counts):
            acc = 0.0 + 0.0j
            for shared in loop_indices(traced_counts):
                bra_full = [0] * len(counts)
                ket_full = [0] * len(counts)
                for pos, j in enumerate(kept):
                    bra_full[j - 1] = bra_kept[pos]
                    ket_full[j - 1] = ket_kept[pos]
                for pos, j in enumerate(sorted(traced)):
                    bra_full[j - 1] = shared[pos]
                    ket_full[j - 1] = shared[pos]
                acc += matrix[
                    loop_flat(tuple(bra_full), counts), loop_flat(tuple(ket_full), counts)
                ]
            out[loop_flat(bra_kept, kept_counts), loop_flat(ket_kept, kept_counts)] = acc
    return out


def random_hermitian(dim: int, seed: int) -> np.ndarray:
    rng = qlab.make_rng(seed)
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (z + z.conj().T) / 2

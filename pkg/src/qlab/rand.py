"""Seeded random objects: states, unitaries, projectors, arrangements.

Everything routes through a PCG64 generator so a fixed seed reproduces the
same objects on every run. Functions accept either a seed or a Generator.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .arrangement import ExperimentalArrangement, build_from_mixture, build_from_state_vector
from .screens import ScreenConfiguration


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def random_state_vector(dim: int, rng: int | np.random.Generator) -> np.ndarray:
    """Normalized complex vector, Gaussian direction."""
    rng = make_rng(rng)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(dim: int, rng: int | np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    rng = make_rng(rng)
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_projector(dim: int, rank: int, rng: int | np.random.Generator) -> np.ndarray:
    """Rank-r projector from random orthonormal columns."""
    if not 0 < rank <= dim:
        raise ValueError(f"rank must be in 1..{dim}, got {rank}")
    u = random_unitary(dim, rng)
    cols = u[:, :rank]
    return cols @ cols.conj().T


def random_orthogonal_family(
    dim: int, rng: int | np.random.Generator, parts: int | None = None
) -> list[np.ndarray]:
    """Pairwise orthogonal projectors splitting one random orthonormal basis."""
    rng = make_rng(rng)
    if parts is None:
        parts = int(rng.integers(2, min(dim, 5) + 1)) if dim >= 2 else 1
    if not 1 <= parts <= dim:
        raise ValueError(f"parts must be in 1..{dim}, got {parts}")
    u = random_unitary(dim, rng)
    bounds = sorted(rng.choice(np.arange(1, dim), size=parts - 1, replace=False).tolist()) if parts > 1 else []
    edges = [0] + bounds + [dim]
    family = []
    for a, b in zip(edges[:-1], edges[1:]):
        cols = u[:, a:b]
        family.append(cols @ cols.conj().T)
    return family


def random_arrangement(
    shape: ScreenConfiguration,
    rng: int | np.random.Generator,
    terms: int | None = None,
    label: str | None = None,
) -> ExperimentalArrangement:
    """Random valid arrangement: a Dirichlet-weighted mixture of rank-one terms."""
    rng = make_rng(rng)
    if terms is None:
        terms = int(rng.integers(1, 5))
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    weights: Sequence[float] = rng.dirichlet(np.ones(terms)) if terms > 1 else [1.0]
    parts = [
        build_from_state_vector(random_state_vector(shape.dimension, rng), shape)
        for _ in range(terms)
    ]
    return build_from_mixture(weights, parts, label)

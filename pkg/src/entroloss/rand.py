"""Seeded random states, unitaries and channels for tests and demos."""

from __future__ import annotations

import numpy as np

from .channels import QuantumOperation
from .operators import TraceClassElement


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d)).conj()


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + g.conj().T) / 2.0


def random_pure(dim: int, rng: np.random.Generator, factor_dims=None) -> TraceClassElement:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return TraceClassElement.pure(v, factor_dims=factor_dims)


def random_density(
    dim: int, rng: np.random.Generator, rank: int | None = None, factor_dims=None
) -> TraceClassElement:
    rank = dim if rank is None else int(rank)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m /= np.real(np.trace(m))
    return TraceClassElement(m, factor_dims=factor_dims, validate=False)


def random_probability(dim: int, rng: np.random.Generator) -> np.ndarray:
    p = rng.random(dim)
    return p / p.sum()


def random_channel(dim_in: int, dim_out: int, choi_rank: int, rng: np.random.Generator) -> QuantumOperation:
    """Haar-random channel with the given Choi rank via a random Stinespring isometry."""
    total = dim_out * choi_rank
    if total < dim_in:
        raise ValueError("dim_out * choi_rank must be at least dim_in")
    g = rng.standard_normal((total, dim_in)) + 1j * rng.standard_normal((total, dim_in))
    q, r = np.linalg.qr(g)
    v = q * (np.diagonal(r) / np.abs(np.diagonal(r))).conj()
    kraus = [v[k::choi_rank, :] for k in range(choi_rank)]
    return QuantumOperation(kraus, meta={"kind": "random"})

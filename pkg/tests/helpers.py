"""Shared deterministic random generators for the test suite."""

from __future__ import annotations

import numpy as np

from chanapprox.channels import Channel


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_unitary(d: int, gen: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    g = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density(d: int, gen: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart)."""
    g = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_channel(d: int, kraus_count: int, gen: np.random.Generator) -> Channel:
    """Random channel with the given Kraus rank, via a random isometry."""
    g = gen.normal(size=(d * kraus_count, d)) + 1j * gen.normal(
        size=(d * kraus_count, d)
    )
    q, _ = np.linalg.qr(g)
    return Channel(tuple(q[i * d : (i + 1) * d, :] for i in range(kraus_count)))


def random_simplex(k: int, gen: np.random.Generator) -> np.ndarray:
    """Uniform (Dirichlet) random point on the probability simplex."""
    return gen.dirichlet(np.ones(k))

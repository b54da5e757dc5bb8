"""Composite Gauss-Legendre rules used by the speed-law integrals."""

from __future__ import annotations

import functools

import numpy as np

__all__ = ["composite_gauss_legendre", "integrate"]


@functools.lru_cache(maxsize=16)
def _reference_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite_gauss_legendre(
    a: float, b: float, panels: int = 16, order: int = 32
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for (a, b) split into equal panels.

    The default 16 x 32 = 512 nodes integrate the speed densities (after
    the v = sin p substitution) to normalization error below 1e-12.
    """
    x, w = _reference_rule(order)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate(f, a: float, b: float, panels: int = 16, order: int = 32) -> float:
    """Integral of a vectorized callable over (a, b)."""
    nodes, weights = composite_gauss_legendre(a, b, panels, order)
    return float(weights @ f(nodes))

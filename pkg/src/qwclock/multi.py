"""Dynamics with several clocking excitations on the chain.

The n-excitation sector is spanned by strictly increasing occupation-site
lists.  Free propagation is the antisymmetrized product of single-particle
propagations (equivalently, the expansion over determinant eigenstates);
a single active link dresses each configuration with a power of the link
primitive counted by how many excitations sit past the link.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable

import numpy as np

from .chain import ChainSpec, NormalizationError, eigenvalue, propagator
from .oracle import ResourceLimitError, sector_occupations
from .quadrature import composite_gauss_legendre

__all__ = [
    "OccupationSet",
    "SectorState",
    "JointSpeedLaw",
    "slater_amplitude",
    "sector_energy",
    "propagate_free_sector",
    "propagate_single_link",
    "count_past_link_distribution",
    "joint_speed_law",
]

# desk-scale caps for dense sector amplitudes
MAX_SITES = 24
MAX_EXCITATIONS = 4


@dataclass(frozen=True)
class OccupationSet:
    """Strictly increasing list of occupied sites (or of mode numbers)."""

    sites: tuple[int, ...]

    def __post_init__(self) -> None:
        sites = tuple(int(x) for x in self.sites)
        object.__setattr__(self, "sites", sites)
        if len(sites) == 0:
            raise ValueError("occupation set must not be empty")
        if sites[0] < 1 or any(a >= b for a, b in zip(sites, sites[1:])):
            raise ValueError(
                f"sites must be strictly increasing positive integers, got {sites}"
            )

    def __len__(self) -> int:
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)


def _as_sites(obj) -> tuple[int, ...]:
    if isinstance(obj, OccupationSet):
        return obj.sites
    return OccupationSet(tuple(obj)).sites


def slater_amplitude(spec: ChainSpec, momenta, sites) -> float:
    """det[v_{k_i}(x_j)]: amplitude of an occupation list in a mode list.

    Label lists need not be ordered here (the determinant carries the
    permutation sign); occupation states themselves are always ordered.
    """
    k = np.array([int(v) for v in momenta])
    x = np.array([int(v) for v in sites])
    if len(k) != len(x):
        raise ValueError(f"size mismatch: {len(k)} momenta vs {len(x)} sites")
    if len(k) == 0:
        raise ValueError("label lists must not be empty")
    for label in (k, x):
        if label.min() < 1 or label.max() > spec.s:
            raise ValueError(f"labels {label.tolist()} outside 1..{spec.s}")
    matrix = np.sqrt(2.0 / (spec.s + 1)) * np.sin(
        np.pi * np.outer(k, x) / (spec.s + 1)
    )
    return float(np.linalg.det(matrix))


def sector_energy(spec: ChainSpec, momenta) -> float:
    """Sum of the single-mode energies of the occupied modes."""
    return float(sum(eigenvalue(spec, k) for k in _as_sites(momenta)))


def _occupation_array(s: int, n: int) -> np.ndarray:
    return np.array(sector_occupations(s, n), dtype=int)


@dataclass(frozen=True, eq=False)
class SectorState:
    """Amplitudes over (register basis label, occupation list), total norm 1.

    amplitudes[z, i] multiplies register label z and the i-th occupation
    list in lexicographic order; d = 1 encodes a bare cursor.
    """

    spec: ChainSpec
    n: int
    amplitudes: np.ndarray  # (d, C(s, n)) complex

    def __post_init__(self) -> None:
        if self.spec.s > MAX_SITES or self.n > MAX_EXCITATIONS:
            raise ResourceLimitError(
                f"sector s={self.spec.s}, n={self.n} beyond desk scale "
                f"(s <= {MAX_SITES}, n <= {MAX_EXCITATIONS})"
            )
        if not 1 <= self.n <= self.spec.s:
            raise ValueError(f"excitation number n={self.n} outside 1..{self.spec.s}")
        arr = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", arr)
        m = len(sector_occupations(self.spec.s, self.n))
        if arr.ndim != 2 or arr.shape[1] != m:
            raise ValueError(f"amplitudes have shape {arr.shape}, expected (d, {m})")
        norm2 = float(np.sum(np.abs(arr) ** 2))
        if abs(norm2 - 1.0) > 1e-9:
            raise NormalizationError(f"sector norm^2 = {norm2!r} deviates from 1")

    @property
    def d(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def occupations(self) -> tuple[tuple[int, ...], ...]:
        return sector_occupations(self.spec.s, self.n)

    @classmethod
    def from_product(
        cls, spec: ChainSpec, sites, register_state=None
    ) -> "SectorState":
        """Basis occupation list, optionally tensored with a register vector."""
        occupied = _as_sites(sites)
        if occupied[-1] > spec.s:
            raise ValueError(f"sites {occupied} exceed the chain length s={spec.s}")
        n = len(occupied)
        labels = sector_occupations(spec.s, n)
        reg = np.array([1.0], dtype=complex) if register_state is None else np.asarray(
            register_state, dtype=complex
        )
        amps = np.zeros((reg.size, len(labels)), dtype=complex)
        amps[:, labels.index(occupied)] = reg
        return cls(spec, n, amps)

    def to_vector(self) -> np.ndarray:
        """Flatten with the register label varying fastest (oracle layout)."""
        return self.amplitudes.T.reshape(-1)

    @classmethod
    def from_vector(cls, spec: ChainSpec, n: int, d: int, vec) -> "SectorState":
        arr = np.asarray(vec, dtype=complex).reshape(-1, d).T
        return cls(spec, n, arr)

    def register_density_matrix(self) -> np.ndarray:
        return self.amplitudes @ self.amplitudes.conj().T

    def occupation_probabilities(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)


def _permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _embed_antisymmetric(state: SectorState) -> np.ndarray:
    """Scatter ordered amplitudes onto the full n-leg antisymmetric tensor."""
    s, n, d = state.spec.s, state.n, state.d
    subs = _occupation_array(s, n) - 1
    full = np.zeros((d,) + (s,) * n, dtype=complex)
    for perm in permutations(range(n)):
        sign = _permutation_sign(perm)
        idx = tuple(subs[:, j] for j in perm)
        full[(slice(None),) + idx] = sign * state.amplitudes
    return full


def _extract_ordered(full: np.ndarray, s: int, n: int) -> np.ndarray:
    subs = _occupation_array(s, n) - 1
    idx = tuple(subs[:, j] for j in range(n))
    return full[(slice(None),) + idx]


def propagate_free_sector(state: SectorState, t: float) -> SectorState:
    """Evolve under the bare chain: one single-particle propagator per leg."""
    u = propagator(state.spec, t)
    full = _embed_antisymmetric(state)
    for axis in range(1, full.ndim):
        full = np.moveaxis(np.tensordot(u, full, axes=(1, axis)), 0, axis)
    amps = _extract_ordered(full, state.spec.s, state.n)
    # each ordered amplitude appears n! times in the tensor, carrying its sign
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if abs(norm2 - 1.0) > 1e-9:
        raise NormalizationError(f"sector norm^2 drifted to {norm2!r}")
    return SectorState(state.spec, state.n, amps)


def _counts_past(s: int, n: int, x0: int) -> np.ndarray:
    return np.sum(_occupation_array(s, n) > x0, axis=1)


def count_past_link_distribution(state: SectorState, x0: int) -> np.ndarray:
    """Probability that exactly m of the n excitations sit past site x0."""
    if not 1 <= x0 <= state.spec.s:
        raise ValueError(f"x0={x0} outside 1..{state.spec.s}")
    counts = _counts_past(state.spec.s, state.n, x0)
    weights = state.occupation_probabilities()
    probs = np.zeros(state.n + 1)
    for m in range(state.n + 1):
        probs[m] = float(weights[counts == m].sum())
    return probs


def propagate_single_link(
    state: SectorState, x0: int, g: np.ndarray, t: float
) -> SectorState:
    """Evolve with primitive g on link x0 only.

    Each configuration carries the register factor g^(count of excitations
    past x0); undressing by those powers reduces the dynamics to the free
    sector, which is propagated and then re-dressed.
    """
    if x0 < state.n:
        raise ValueError(f"active link x0={x0} must be >= n={state.n}")
    if x0 > state.spec.s - 1:
        raise ValueError(f"active link x0={x0} outside 1..{state.spec.s - 1}")
    g = np.asarray(g, dtype=complex)
    if g.shape != (state.d, state.d):
        raise ValueError(f"primitive has shape {g.shape}, expected {(state.d,) * 2}")
    if np.abs(g.conj().T @ g - np.eye(state.d)).max() > 1e-12:
        raise ValueError("primitive must be unitary")

    counts = _counts_past(state.spec.s, state.n, x0)
    powers = [np.linalg.matrix_power(g, m) for m in range(state.n + 1)]

    undressed = np.empty_like(state.amplitudes)
    for m in range(state.n + 1):
        mask = counts == m
        if mask.any():
            undressed[:, mask] = powers[m].conj().T @ state.amplitudes[:, mask]
    free = propagate_free_sector(SectorState(state.spec, state.n, undressed), t)
    dressed = np.empty_like(free.amplitudes)
    for m in range(state.n + 1):
        mask = counts == m
        if mask.any():
            dressed[:, mask] = powers[m] @ free.amplitudes[:, mask]
    return SectorState(state.spec, state.n, dressed)


@dataclass(frozen=True, eq=False)
class JointSpeedLaw:
    """Joint limit law of the two speeds for the |{1,2}> start.

    density on the ordered support 0 < v1 < v2 < 1 (leftmost slower).
    """

    density: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def normalization(self) -> float:
        """Double integral over the ordered triangle; 1 up to quadrature error."""
        p2, w2 = composite_gauss_legendre(0.0, np.pi / 2, panels=16, order=32)
        total = 0.0
        for p, w in zip(p2, w2):
            p1, w1 = composite_gauss_legendre(0.0, p, panels=4, order=16)
            total += w * float(w1 @ self._integrand_p(p1, p))
        return total

    @staticmethod
    def _integrand_p(p1, p2) -> np.ndarray:
        s1, s2 = np.sin(p1) ** 2, np.sin(p2) ** 2
        return 64.0 * s1 * s2 * (2.0 - s1 - s2) / np.pi**2

    def marginal_rightmost(self, v2: float) -> float:
        """Density of the faster speed: integral of f(., v2) over (0, v2)."""
        if not 0.0 < v2 < 1.0:
            return 0.0
        p1, w1 = composite_gauss_legendre(0.0, float(np.arcsin(v2)), panels=4, order=16)
        s1 = np.sin(p1) ** 2
        core = 64.0 * s1 * v2**2 * (2.0 - s1 - v2**2) / (
            np.pi**2 * np.sqrt(1.0 - v2**2)
        )
        return float(w1 @ core)

    def conditional_mean_leftmost(self, v2: float) -> float:
        """E(V1 | V2 = v2); equals 3 v2/4 up to O(v2^5) corrections."""
        if not 0.0 < v2 < 1.0:
            raise ValueError(f"v2={v2} outside (0, 1)")
        p1, w1 = composite_gauss_legendre(0.0, float(np.arcsin(v2)), panels=4, order=16)
        s1 = np.sin(p1) ** 2
        core = s1 * (2.0 - s1 - v2**2)
        num = float(w1 @ (np.sin(p1) * core))
        den = float(w1 @ core)
        return num / den


def joint_speed_law() -> JointSpeedLaw:
    """Joint speed density 64 v1^2 v2^2 (2 - v1^2 - v2^2) / (pi^2 sqrt(...))."""

    def density(v1, v2):
        a1 = np.atleast_1d(np.asarray(v1, dtype=float))
        a2 = np.atleast_1d(np.asarray(v2, dtype=float))
        a1, a2 = np.broadcast_arrays(a1, a2)
        out = np.zeros(a1.shape)
        inside = (a1 > 0.0) & (a1 < a2) & (a2 < 1.0)
        if inside.any():
            b1, b2 = a1[inside], a2[inside]
            out[inside] = (
                64.0
                * b1**2
                * b2**2
                * (2.0 - b1**2 - b2**2)
                / (np.pi**2 * np.sqrt((1.0 - b1**2) * (1.0 - b2**2)))
            )
        if np.ndim(v1) == 0 and np.ndim(v2) == 0:
            return float(out[0])
        return out

    return JointSpeedLaw(density=density)

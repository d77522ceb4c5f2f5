"""Brute-force full-space reference implementation for validation.

Everything here works in the 2^N-dimensional computational basis (bit i of a
basis index is the state of spin i, 1 = up) and is deliberately slow and
simple: it exists to validate the small-basis transforms and dynamics on
random symmetric states, not to scale.  States are capped at 12 spins and
dense 2^N x 2^N operations at 8.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError
from .symcore import SymDensity, SymKet, binom_table

__all__ = [
    "MAX_STATE_SPINS",
    "MAX_DENSE_SPINS",
    "FullKet",
    "FullDensity",
    "symmetrizer_matrix",
    "lift",
    "project",
    "symmetric_amplitudes",
    "symmetric_block",
    "full_partial_trace",
    "full_partial_transpose",
    "full_evolve",
]

MAX_STATE_SPINS = 12
MAX_DENSE_SPINS = 8


@dataclass(frozen=True)
class FullKet:
    """Pure N-spin state in the 2^N computational basis, N <= 12."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_STATE_SPINS:
            raise DomainError(f"full-space kets support 1 <= n <= {MAX_STATE_SPINS}")
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (2**self.n,):
            raise DomainError(f"amplitude vector must have length {2 ** self.n}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise DataError(f"full-space ket norm {norm} is not 1")
        object.__setattr__(self, "amps", amps.copy())

    def density(self) -> "FullDensity":
        return FullDensity(self.n, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class FullDensity:
    """Mixed N-spin state as a dense 2^N x 2^N matrix, N <= 8."""

    n: int
    mat: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DENSE_SPINS:
            raise DomainError(f"full-space densities support 1 <= n <= {MAX_DENSE_SPINS}")
        mat = np.asarray(self.mat, dtype=np.complex128)
        dim = 2**self.n
        if mat.shape != (dim, dim):
            raise DomainError(f"matrix must be {dim}x{dim}")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
            raise DataError("full-space density matrix is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > 1e-10:
            raise DataError("full-space density matrix trace is not 1")
        object.__setattr__(self, "mat", mat.copy())


@functools.lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    pc = np.array([bin(b).count("1") for b in range(2**n)], dtype=np.int64)
    pc.setflags(write=False)
    return pc


@functools.lru_cache(maxsize=None)
def symmetrizer_matrix(n: int) -> np.ndarray:
    """The (N+1) x 2^N projector onto the symmetric subspace.

    Row m carries C(N,m)^(-1/2) on every bitstring with m bits set, so that
    S S^dagger is the identity on the small basis while S^dagger S projects.
    """
    pc = _popcounts(n)
    coeff = binom_table(n).coeff(n, np.arange(n + 1))
    s = np.zeros((n + 1, 2**n))
    s[pc, np.arange(2**n)] = coeff[pc]
    s.setflags(write=False)
    return s


def lift(psi: SymKet) -> FullKet:
    """Expand a symmetric state into the full 2^N basis.

    The amplitude of a bitstring with m bits set is amps[m] * C(N,m)^(-1/2).
    """
    if psi.n > MAX_STATE_SPINS:
        raise DomainError(f"lift supports n <= {MAX_STATE_SPINS}, got {psi.n}")
    pc = _popcounts(psi.n)
    coeff = binom_table(psi.n).coeff(psi.n, np.arange(psi.n + 1))
    return FullKet(psi.n, psi.amps[pc] * coeff[pc])


def symmetric_amplitudes(phi: FullKet) -> np.ndarray:
    """Raw small-basis amplitudes S |phi>; zero where |phi> is antisymmetric."""
    return symmetrizer_matrix(phi.n) @ phi.amps


def symmetric_block(rho: FullDensity) -> np.ndarray:
    """Raw small-basis block S rho S^dagger (trace <= 1 for non-symmetric input)."""
    s = symmetrizer_matrix(rho.n)
    return s @ rho.mat @ s.T


def project(x: FullKet | FullDensity) -> SymKet | SymDensity:
    """Project a full-space state onto the symmetric subspace.

    Non-symmetric components are discarded; the result is renormalized.

    Raises
    ------
    DataError
        If the state has no symmetric component to normalize.
    """
    if isinstance(x, FullKet):
        return SymKet(x.n, symmetric_amplitudes(x))
    if isinstance(x, FullDensity):
        block = symmetric_block(x)
        tr = np.trace(block).real
        if tr < 1e-12:
            raise DataError("state has no symmetric component")
        return SymDensity(x.n, block / tr)
    raise DomainError("project expects a FullKet or FullDensity")


def _check_subset(n: int, subset) -> tuple[int, ...]:
    subset = tuple(int(i) for i in subset)
    if not subset:
        raise DomainError("spin subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise DomainError("spin subset must not repeat indices")
    if any(i < 0 or i >= n for i in subset):
        raise DomainError(f"spin indices must be in [0, {n - 1}]")
    return subset


def full_partial_trace(rho: FullDensity, subset) -> FullDensity:
    """Trace out the listed spins of a full-space density matrix.

    For symmetric inputs the result is independent of which spins are listed.
    """
    subset = _check_subset(rho.n, subset)
    if len(subset) >= rho.n:
        raise DomainError("cannot trace out every spin")
    t = rho.mat.reshape((2,) * (2 * rho.n))
    for i in sorted(subset, reverse=True):
        half = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=half + i)
    remaining = rho.n - len(subset)
    return FullDensity(remaining, t.reshape(2**remaining, 2**remaining))


def full_partial_transpose(rho: FullDensity, subset) -> FullDensity:
    """Transpose the listed spins' indices of a full-space density matrix."""
    subset = _check_subset(rho.n, subset)
    t = rho.mat.reshape((2,) * (2 * rho.n))
    for i in subset:
        t = t.swapaxes(i, rho.n + i)
    dim = 2**rho.n
    return FullDensity(rho.n, t.reshape(dim, dim))


@functools.lru_cache(maxsize=None)
def _full_angular(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collective (J_x, J_y, J_z) as sums of single-spin operators."""
    half_x = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=np.complex128)
    half_y = np.array([[0.0, 0.5j], [-0.5j, 0.0]], dtype=np.complex128)
    half_z = np.array([[-0.5, 0.0], [0.0, 0.5]], dtype=np.complex128)
    dim = 2**n
    jx = np.zeros((dim, dim), dtype=np.complex128)
    jy = np.zeros_like(jx)
    jz = np.zeros_like(jx)
    for i in range(n):
        left = np.eye(2**i)
        right = np.eye(2 ** (n - 1 - i))
        jx += np.kron(np.kron(left, half_x), right)
        jy += np.kron(np.kron(left, half_y), right)
        jz += np.kron(np.kron(left, half_z), right)
    return jx, jy, jz


@functools.lru_cache(maxsize=None)
def _full_eigensystem(n: int, kind: str) -> tuple[np.ndarray, np.ndarray]:
    jx, jy, jz = _full_angular(n)
    if kind == "jx":
        h = jx
    elif kind == "jy":
        h = jy
    elif kind == "jz":
        h = jz
    elif kind == "twist":
        h = jx @ jx
    elif kind == "counter_twist":
        jp = jx + 1j * jy
        jm = jx - 1j * jy
        h = (jp @ jp - jm @ jm) / 1j
    else:
        raise DomainError(f"unknown Hamiltonian kind {kind!r}")
    return np.linalg.eigh(h)


def full_evolve(phi: FullKet, kind: str, t: float) -> FullKet:
    """Evolve a full-space ket by exp(-i H t) with the collective Hamiltonian."""
    if phi.n > MAX_DENSE_SPINS:
        raise DomainError(f"full-space evolution supports n <= {MAX_DENSE_SPINS}")
    w, v = _full_eigensystem(phi.n, kind)
    return FullKet(phi.n, v @ (np.exp(-1j * w * t) * (v.conj().T @ phi.amps)))

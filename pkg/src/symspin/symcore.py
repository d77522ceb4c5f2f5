"""Symmetric-subspace representation of N-spin-1/2 ensembles.

A permutation-symmetric pure state of N spin-1/2 particles is stored as a
complex vector of length N+1 over the basis of states with m spins up,
m = 0..N; a symmetric mixed state is an (N+1) x (N+1) Hermitian matrix in
the same basis.  This module provides the combinatorial machinery (log-domain
binomial tables, stable at N ~ 1e3) plus the three transforms that never
materialize 2^N-dimensional objects:

* :func:`partial_trace` -- trace out k spins, staying in the small basis,
* :func:`partial_transpose` -- map into the (N-k+1)(k+1)-dimensional product
  space of two smaller symmetric subspaces and transpose the k-spin side,
* :func:`schmidt_values` -- singular values of the bipartite coefficient
  matrix of a pure state for the split {N-k, k}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DataError, DomainError

__all__ = [
    "BinomTable",
    "binom_table",
    "log_binom",
    "binom_coeff",
    "SymKet",
    "SymDensity",
    "SplitDensity",
    "Split",
    "even_split",
    "partial_trace",
    "embed_split",
    "transpose_b",
    "partial_transpose",
    "schmidt_values",
    "dicke_schmidt_profile",
]

#: Constructor tolerance for Hermiticity and unit trace of density matrices.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
#: Norm tolerance below which a state vector is considered unnormalizable.
ZERO_NORM_TOL = 1e-12


class BinomTable:
    """Precomputed natural-log binomial coefficients ``log C(n, m)``.

    Raw binomials overflow double precision near N ~ 1030 and already lose
    relative accuracy well before that, so every binomial ratio in this
    package is assembled in the log domain and exponentiated once.

    Parameters
    ----------
    n_max : int
        Largest ``n`` for which ``log_binom(n, m)`` is available.
    """

    def __init__(self, n_max: int):
        if n_max < 0:
            raise DomainError(f"n_max must be non-negative, got {n_max}")
        self.n_max = int(n_max)
        # log(k!) for k = 0..n_max
        self._logfact = gammaln(np.arange(self.n_max + 1, dtype=float) + 1.0)
        self._logfact.setflags(write=False)

    def log_binom(self, n, m):
        """Return ``log C(n, m)``; vectorized over ``m`` (and ``n``)."""
        n = np.asarray(n, dtype=np.int64)
        m = np.asarray(m, dtype=np.int64)
        if np.any(n > self.n_max) or np.any(n < 0):
            raise DomainError(f"n out of table range [0, {self.n_max}]")
        if np.any(m < 0) or np.any(m > n):
            raise DomainError("m out of range [0, n]")
        lf = self._logfact
        return lf[n] - lf[m] - lf[n - m]

    def row(self, n: int) -> np.ndarray:
        """Return the vector ``log C(n, m)`` for m = 0..n."""
        return self.log_binom(n, np.arange(n + 1))

    def coeff(self, n, m):
        """Normalization coefficient ``C(n, m)^(-1/2)`` of a Dicke component."""
        return np.exp(-0.5 * self.log_binom(n, m))


# Shared table, grown on demand; replaced wholesale so readers always see a
# complete table.
_table = BinomTable(64)


def binom_table(n_max: int) -> BinomTable:
    """Return a shared :class:`BinomTable` covering at least ``n_max``."""
    global _table
    if _table.n_max < n_max:
        _table = BinomTable(max(int(n_max), 2 * _table.n_max))
    return _table


def log_binom(n: int, m: int) -> float:
    """Natural log of the binomial coefficient C(n, m)."""
    return float(binom_table(int(np.max(n))).log_binom(n, m))


def binom_coeff(n: int, m: int) -> float:
    """Return the Dicke normalization coefficient ``C(n, m)^(-1/2)``.

    This is the amplitude carried by each of the C(n, m) computational
    bitstrings inside the normalized symmetric state with m spins up.

    Raises
    ------
    DomainError
        If ``m < 0`` or ``m > n``.
    """
    return float(np.exp(-0.5 * log_binom(n, m)))


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SymKet:
    """Pure symmetric state of ``n`` spins.

    ``amps[m]`` is the coefficient of the basis state with m spins up.  The
    vector is normalized on construction.
    """

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"particle count must be >= 1, got {self.n}")
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (self.n + 1,):
            raise DomainError(
                f"amplitude vector must have length {self.n + 1}, got {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if norm < ZERO_NORM_TOL:
            raise DataError("cannot normalize a zero amplitude vector")
        object.__setattr__(self, "amps", _readonly(amps / norm))

    @property
    def dim(self) -> int:
        return self.n + 1

    def density(self) -> "SymDensity":
        """Projector |psi><psi| as a :class:`SymDensity`."""
        return SymDensity(self.n, np.outer(self.amps, self.amps.conj()))

    def overlap(self, other: "SymKet") -> complex:
        if other.n != self.n:
            raise DomainError("particle counts differ")
        return complex(np.vdot(self.amps, other.amps))


def _check_density(mat: np.ndarray, dim: int, what: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.shape != (dim, dim):
        raise DomainError(f"{what} must be {dim}x{dim}, got {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T)) >= HERMITICITY_TOL:
        raise DataError(f"{what} is not Hermitian within {HERMITICITY_TOL}")
    tr = np.trace(mat).real
    if abs(tr - 1.0) >= TRACE_TOL:
        raise DataError(f"{what} trace {tr} differs from 1 beyond {TRACE_TOL}")
    return mat


@dataclass(frozen=True)
class SymDensity:
    """Mixed symmetric state of ``n`` spins as an (n+1) x (n+1) matrix.

    The constructor enforces Hermiticity and unit trace; positive
    semidefiniteness is a contract of the producing operations and is
    checked in the test suite rather than on every construction.
    """

    n: int
    mat: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"particle count must be >= 1, got {self.n}")
        mat = _check_density(self.mat, self.n + 1, "symmetric density matrix")
        object.__setattr__(self, "mat", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class SplitDensity:
    """Operator on the product of two symmetric subspaces with n_a and n_b spins.

    The composite row index is ``a * (n_b + 1) + c`` where a and c index the
    side-A and side-B excitation numbers (side-A major).  This is the home of
    partial transposes, which leave the single-ensemble symmetric subspace.
    """

    n_a: int
    n_b: int
    mat: np.ndarray

    def __post_init__(self):
        if self.n_a < 1 or self.n_b < 1:
            raise DomainError("both sides of a split need at least one spin")
        mat = _check_density(self.mat, self.dim, "split density matrix")
        object.__setattr__(self, "mat", _readonly(mat))

    @property
    def dim(self) -> int:
        return (self.n_a + 1) * (self.n_b + 1)


@dataclass(frozen=True)
class Split:
    """Descriptor of a bipartite split {remaining - k, k} after particle loss.

    A split with ``remaining < total_n`` acts on the mixed state obtained by
    tracing ``total_n - remaining`` spins out of the originating pure state.
    ``k`` is the size of the side on which partial transposes are taken.
    """

    total_n: int
    remaining: int
    k: int

    def __post_init__(self):
        if not 2 <= self.remaining <= self.total_n:
            raise DomainError(
                f"remaining must be in [2, {self.total_n}], got {self.remaining}"
            )
        if not 1 <= self.k <= self.remaining - 1:
            raise DomainError(
                f"k must be in [1, {self.remaining - 1}], got {self.k}"
            )

    @property
    def traced_out(self) -> int:
        return self.total_n - self.remaining

    @property
    def sides(self) -> tuple[int, int]:
        return (self.remaining - self.k, self.k)


def even_split(total_n: int, remaining: int) -> Split:
    """The most even split {ceil(N_r/2), floor(N_r/2)} of a reduced state."""
    return Split(total_n, remaining, remaining // 2)


def _check_k(n: int, k: int):
    if not 1 <= k <= n - 1:
        raise DomainError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")


def partial_trace(rho: SymDensity, k: int) -> SymDensity:
    """Trace ``k`` spins out of a symmetric density matrix.

    Works entirely in the small basis: the (a, b) element of the reduced
    matrix is a k+1 term sum over elements (a+j, b+j) of the input weighted
    by ratios of binomial coefficients.  Which spins are traced is irrelevant
    by symmetry.

    Parameters
    ----------
    rho : SymDensity
        State of N spins.
    k : int
        Number of spins to remove, 1 <= k <= N-1.

    Returns
    -------
    SymDensity
        State of N-k spins with the same trace.
    """
    n = rho.n
    _check_k(n, k)
    nr = n - k
    tab = binom_table(n)
    lb_n = tab.row(n)
    lb_r = tab.row(nr)
    lb_k = tab.row(k)
    out = np.zeros((nr + 1, nr + 1), dtype=np.complex128)
    for j in range(k + 1):
        # u_j[a] = sqrt(C(k,j)) * sqrt(C(n-k,a) / C(n,a+j)); coefficient of the
        # (a+j, b+j) window entry factorizes as u_j[a] * u_j[b] and is <= 1.
        u = np.exp(0.5 * (lb_k[j] + lb_r - lb_n[j : j + nr + 1]))
        out += (u[:, None] * u[None, :]) * rho.mat[j : j + nr + 1, j : j + nr + 1]
    return SymDensity(nr, out)


def _split_coeff_matrix(n: int, k: int) -> np.ndarray:
    """Coefficients f[i, j] = sqrt(C(n-k,i) C(k,j) / C(n,i+j)) of the
    symmetric-to-product change of basis for the split {n-k, k}."""
    nr = n - k
    tab = binom_table(n)
    lb_n = tab.row(n)
    lb_r = tab.row(nr)
    lb_k = tab.row(k)
    i = np.arange(nr + 1)[:, None]
    j = np.arange(k + 1)[None, :]
    return np.exp(0.5 * (lb_r[i] + lb_k[j] - lb_n[i + j]))


def embed_split(rho: SymDensity, k: int) -> SplitDensity:
    """Express a symmetric density matrix on the product space S_{N-k} x S_k.

    The embedding is an isometry, so the result has the same spectrum as the
    input padded with zeros, and the same trace.
    """
    n = rho.n
    _check_k(n, k)
    f = _split_coeff_matrix(n, k)
    v = f.reshape(-1)
    nr = n - k
    sums = (np.arange(nr + 1)[:, None] + np.arange(k + 1)[None, :]).reshape(-1)
    mat = (v[:, None] * v[None, :]) * rho.mat[sums[:, None], sums[None, :]]
    return SplitDensity(nr, k, mat)


def transpose_b(sd: SplitDensity) -> SplitDensity:
    """Transpose the side-B (k-spin) factor of a split density matrix."""
    da, db = sd.n_a + 1, sd.n_b + 1
    t = sd.mat.reshape(da, db, da, db).swapaxes(1, 3).reshape(da * db, da * db)
    return SplitDensity(sd.n_a, sd.n_b, t)


def partial_transpose(rho: SymDensity, k: int) -> SplitDensity:
    """Partial transpose of a symmetric density matrix over k spins.

    The result lives in the (N-k+1)(k+1)-dimensional product space; the
    transpose is taken on the k-spin side.  Applying :func:`transpose_b`
    to the result recovers :func:`embed_split` of the input.

    Parameters
    ----------
    rho : SymDensity
        State of N spins.
    k : int
        Size of the transposed side, 1 <= k <= N-1.
    """
    return transpose_b(embed_split(rho, k))


def schmidt_values(psi: SymKet, k: int) -> np.ndarray:
    """Schmidt (singular) values of a pure symmetric state for the split {N-k, k}.

    The bipartite coefficient matrix has entries
    ``c[i, j] = amps[i+j] * sqrt(C(N-k,i) C(k,j) / C(N,i+j))`` and the
    decomposition reduces to a dense SVD of an (N-k+1) x (k+1) matrix.

    Returns
    -------
    numpy.ndarray
        Non-negative singular values, sorted descending; their squares sum
        to one.
    """
    _check_k(psi.n, k)
    f = _split_coeff_matrix(psi.n, k)
    nr = psi.n - k
    sums = np.arange(nr + 1)[:, None] + np.arange(k + 1)[None, :]
    c = f * psi.amps[sums]
    return np.linalg.svd(c, compute_uv=False)


def dicke_schmidt_profile(n: int, m: int, k: int) -> np.ndarray:
    """Squared Schmidt coefficients of the Dicke state |m> for the split {n-k, k}.

    Entry i is the probability that i of the m excitations end up on the
    (n-k)-spin side, i.e. the hypergeometric probability mass function with
    population n, m successes and n-k draws.  Entries outside the support
    are zero; the vector sums to one.
    """
    if not 0 <= m <= n:
        raise DomainError(f"m must be in [0, {n}], got {m}")
    _check_k(n, k)
    nr = n - k
    tab = binom_table(n)
    lb_n = tab.row(n)
    lb_r = tab.row(nr)
    lb_k = tab.row(k)
    out = np.zeros(nr + 1)
    i = np.arange(max(0, m - k), min(nr, m) + 1)
    out[i] = np.exp(lb_r[i] + lb_k[m - i] - lb_n[m])
    return out

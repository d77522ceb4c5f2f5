"""Bipartite entanglement measures and spin-squeezing quantities.

Everything here is a pure function of its inputs.  Entropies are in bits
(log base 2) and angular momenta use hbar = 1, so a symmetric N-spin state is
a single pseudo-spin J = N/2.

The two-spin measures (concurrence, entanglement of formation) act on the
three-dimensional symmetric two-spin density matrix by embedding it in the
four-dimensional two-qubit space, where the singlet component of a symmetric
state vanishes identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError, UndefinedSqueezingError
from .symcore import (
    Split,
    SplitDensity,
    SymDensity,
    SymKet,
    partial_trace,
    partial_transpose,
    schmidt_values,
)

__all__ = [
    "ZERO_TOL_SCALE",
    "eigenvalue_zero_tol",
    "von_neumann_entropy",
    "entropy_of_entanglement",
    "unobtainable_bound",
    "concurrence_pair",
    "dicke_concurrence_closed_form",
    "formation_from_concurrence",
    "eof_pair",
    "negativity",
    "log_negativity",
    "CollectiveMoments",
    "collective_moments",
    "SqueezingRecord",
    "squeezing_parameter",
    "squeezing_of",
    "squeezing_after_loss",
    "majorizes",
    "reduce_to",
    "reduced_spectrum",
    "split_log_negativity",
    "pair_concurrence",
    "pair_formation",
    "even_split_entropy",
    "trace_distance",
]

#: Eigenvalues with |lambda| below ZERO_TOL_SCALE * dimension are treated as
#: zero in negativity and rank decisions (dense eigensolver noise floor).
ZERO_TOL_SCALE = 1e-10

_HERM_TOL = 1e-10
_PROB_TOL = 1e-9
_MEAN_JZ_TOL = 1e-9


def eigenvalue_zero_tol(dim: int) -> float:
    return ZERO_TOL_SCALE * dim


def _as_matrix(rho) -> np.ndarray:
    """Accept SymDensity, SplitDensity or a raw Hermitian ndarray."""
    if isinstance(rho, (SymDensity, SplitDensity)):
        return rho.mat
    mat = np.asarray(rho, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T)) >= _HERM_TOL:
        raise DataError("matrix is not Hermitian within tolerance")
    return mat


def von_neumann_entropy(rho) -> float:
    """Entropy -Tr(rho log2 rho) of a Hermitian PSD matrix, in bits.

    Eigenvalues below the zero threshold contribute nothing (the 0 log 0 := 0
    continuous extension).
    """
    mat = _as_matrix(rho)
    lam = np.linalg.eigvalsh(mat)
    lam = lam[lam > eigenvalue_zero_tol(mat.shape[0])]
    if lam.size == 0:
        return 0.0
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def entropy_of_entanglement(psi: SymKet, k: int) -> float:
    """Reduced entropy of a pure symmetric state for the split {N-k, k}.

    Computed from the Schmidt values, so no density matrix of either side is
    formed; symmetric under k <-> N-k.
    """
    lam2 = schmidt_values(psi, k) ** 2
    lam2 = lam2[lam2 > 1e-30]
    return float(max(0.0, -np.sum(lam2 * np.log2(lam2))))


def unobtainable_bound(k: int) -> float:
    """Product-space entropy ceiling log2(k+1) that overall-symmetric states
    cannot reach for N >= 7."""
    return math.log2(k + 1)


# Embedding of the symmetric two-spin basis into the two-qubit basis
# {00, 01, 10, 11}; the singlet row is absent because symmetric states have
# no singlet component.
_PAIR_EMBED = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0 / math.sqrt(2.0), 0.0],
        [0.0, 1.0 / math.sqrt(2.0), 0.0],
        [0.0, 0.0, 1.0],
    ]
)

_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def concurrence_pair(rho2: SymDensity) -> float:
    """Wootters concurrence of a symmetric two-spin density matrix.

    The input is expanded to the full two-qubit space and the standard
    spin-flip construction is applied: C = max(0, l1 - l2 - l3 - l4) with
    l_i the decreasing square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy).
    """
    if not isinstance(rho2, SymDensity) or rho2.n != 2:
        raise DomainError("concurrence_pair needs a two-spin SymDensity")
    rho4 = _PAIR_EMBED @ rho2.mat @ _PAIR_EMBED.T
    rho_tilde = _SIGMA_YY @ rho4.conj() @ _SIGMA_YY
    lam = np.linalg.eigvals(rho4 @ rho_tilde).real
    lam = np.sqrt(np.clip(lam, 0.0, None))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def dicke_concurrence_closed_form(n: int, m: int) -> float:
    """Closed-form pair concurrence of the Dicke state with m excitations.

    With M = m - N/2 this evaluates
    [N^2 - 4M^2 - sqrt((N^2 - 4M^2)((N-2)^2 - 4M^2))] / (2N(N-1)),
    which reproduces 2/N at m=1 and 1/(N-1) at m=N/2.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if not 0 <= m <= n:
        raise DomainError(f"m must be in [0, {n}], got {m}")
    m_half = m - n / 2.0
    a = n * n - 4.0 * m_half * m_half
    b = (n - 2.0) ** 2 - 4.0 * m_half * m_half
    return float((a - math.sqrt(max(a * b, 0.0))) / (2.0 * n * (n - 1)))


def formation_from_concurrence(c: float) -> float:
    """Entanglement of formation h((1 + sqrt(1 - C^2)) / 2) of a concurrence."""
    if not 0.0 <= c <= 1.0 + 1e-12:
        raise DomainError(f"concurrence must be in [0, 1], got {c}")
    x = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c)))
    return _binary_entropy(x)


def _binary_entropy(x: float) -> float:
    s = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            s -= p * math.log2(p)
    return s


def eof_pair(rho2: SymDensity) -> float:
    """Entanglement of formation of a symmetric two-spin density matrix."""
    return formation_from_concurrence(concurrence_pair(rho2))


def negativity(pt, zero_tol: float | None = None) -> float:
    """Absolute sum of the negative eigenvalues of a partial transpose."""
    mat = _as_matrix(pt)
    lam = np.linalg.eigvalsh(mat)
    tol = eigenvalue_zero_tol(mat.shape[0]) if zero_tol is None else zero_tol
    lam = lam[lam < -tol]
    return float(-lam.sum()) if lam.size else 0.0


def log_negativity(pt, zero_tol: float | None = None) -> float:
    """Logarithmic negativity log2(2 * negativity + 1)."""
    return math.log2(2.0 * negativity(pt, zero_tol) + 1.0)


@dataclass(frozen=True)
class CollectiveMoments:
    """First and second moments of the collective angular momentum."""

    jx_mean: float
    jy_mean: float
    jz_mean: float
    jx2: float
    jy2: float
    jz2: float
    jxjy_sym: float


def collective_moments(state: SymKet | SymDensity) -> CollectiveMoments:
    """Moments of J for a symmetric state via the pseudo-spin J = N/2 algebra.

    Uses J_z |m> = (m - N/2)|m> and J_+ |m> = sqrt((N-m)(m+1)) |m+1>; only
    the diagonals of the density matrix within bandwidth two enter, so the
    cost is O(N).
    """
    n = state.n
    m = np.arange(n + 1, dtype=float)
    jz_diag = m - n / 2.0
    s1 = np.sqrt((n - m[:-1]) * (m[:-1] + 1.0))  # <m+1| J+ |m>
    s2 = s1[:-1] * s1[1:]                        # <m+2| J+^2 |m>
    jmjp_diag = (n - m) * (m + 1.0)                       # J- J+
    jpjm_diag = m * (n - m + 1.0)                         # J+ J-

    if isinstance(state, SymKet):
        a = state.amps
        pop = (a.conj() * a).real
        ejp = np.sum(a[1:].conj() * s1 * a[:-1])
        ejp2 = np.sum(a[2:].conj() * s2 * a[:-2])
    elif isinstance(state, SymDensity):
        rho = state.mat
        pop = np.diag(rho).real
        ejp = np.sum(s1 * np.diag(rho, 1))
        ejp2 = np.sum(s2 * np.diag(rho, 2))
    else:
        raise DomainError("collective_moments expects a SymKet or SymDensity")

    ladder_sym = float(np.sum((jmjp_diag + jpjm_diag) * pop))
    jx2 = (2.0 * ejp2.real + ladder_sym) / 4.0
    jy2 = (-2.0 * ejp2.real + ladder_sym) / 4.0
    return CollectiveMoments(
        jx_mean=float(ejp.real),
        jy_mean=float(ejp.imag),
        jz_mean=float(np.sum(jz_diag * pop)),
        jx2=float(jx2),
        jy2=float(jy2),
        jz2=float(np.sum(jz_diag**2 * pop)),
        jxjy_sym=float(ejp2.imag / 2.0),
    )


@dataclass(frozen=True)
class SqueezingRecord:
    """Spin-squeezing parameter and the quantities it is built from.

    ``xi2`` is N <J_min^2> / <J_z>^2 with J_min the transverse quadrature of
    smallest variance; ``xi1_2`` is the single-spin limit N^2 / (4 <J_z>^2);
    ``theta_min`` is the optimal quadrature angle in the x-y plane.
    """

    xi2: float
    xi1_2: float
    n: int
    theta_min: float


def squeezing_parameter(mom: CollectiveMoments, n: int) -> SqueezingRecord:
    """Squeezing parameter of a z-polarized state from its moments.

    The minimal transverse variance is found in closed form from the 2x2
    second-moment matrix [[<Jx^2>, <JxJy>_sym], [<JxJy>_sym, <Jy^2>]].

    Raises
    ------
    UndefinedSqueezingError
        If <J_z> vanishes, in which case the parameter is undefined.
    DataError
        If the transverse means are not negligible.
    """
    if abs(mom.jz_mean) <= _MEAN_JZ_TOL:
        raise UndefinedSqueezingError("mean spin along z vanishes")
    if math.hypot(mom.jx_mean, mom.jy_mean) > 1e-8 * (n / 2.0 + 1.0):
        raise DataError("transverse means must vanish for the squeezing parameter")
    half_diff = 0.5 * (mom.jx2 - mom.jy2)
    radius = math.hypot(half_diff, mom.jxjy_sym)
    v_min = 0.5 * (mom.jx2 + mom.jy2) - radius
    theta_min = 0.5 * math.atan2(-mom.jxjy_sym, -half_diff)
    xi2 = n * v_min / mom.jz_mean**2
    xi1_2 = n * n / (4.0 * mom.jz_mean**2)
    if xi2 <= 1.0 / n - 1e-9:
        raise DataError(f"squeezing parameter {xi2} beats the 1/N limit")
    return SqueezingRecord(xi2=float(xi2), xi1_2=float(xi1_2), n=n, theta_min=theta_min)


def squeezing_of(state: SymKet | SymDensity) -> SqueezingRecord:
    """Convenience wrapper: moments then squeezing parameter."""
    return squeezing_parameter(collective_moments(state), state.n)


def squeezing_after_loss(rec: SqueezingRecord, n: int, n_r: int) -> float:
    """Large-N squeezing parameter after reduction to n_r spins.

    Linear interpolation xi^2_1 + (xi^2_N - xi^2_1)(N_r - 1)/(N - 1) between
    the single-spin limit and the full-ensemble value; exact at n_r = n.
    """
    if rec.n != n:
        raise DomainError(f"record is for n={rec.n}, not {n}")
    if not 1 <= n_r <= n:
        raise DomainError(f"n_r must be in [1, {n}], got {n_r}")
    return rec.xi1_2 + (rec.xi2 - rec.xi1_2) * (n_r - 1) / (n - 1)


def majorizes(p, q) -> bool:
    """True if probability vector ``p`` majorizes ``q``.

    Both vectors are zero-padded to a common length; the comparison of
    descending partial sums allows a -1e-9 slack.
    """
    p = _check_probability(np.asarray(p, dtype=float))
    q = _check_probability(np.asarray(q, dtype=float))
    size = max(p.size, q.size)
    p = np.pad(p, (0, size - p.size))
    q = np.pad(q, (0, size - q.size))
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    return bool(np.all(cp >= cq - _PROB_TOL))


def _check_probability(v: np.ndarray) -> np.ndarray:
    if v.ndim != 1 or v.size == 0:
        raise DataError("probability vector must be non-empty and 1-d")
    if np.min(v) < -_PROB_TOL or abs(v.sum() - 1.0) > _PROB_TOL:
        raise DataError("not a probability vector")
    return v


def reduce_to(state: SymKet | SymDensity, n_r: int) -> SymDensity:
    """Density matrix of the state after tracing down to ``n_r`` spins."""
    rho = state.density() if isinstance(state, SymKet) else state
    if not 1 <= n_r <= rho.n:
        raise DomainError(f"n_r must be in [1, {rho.n}], got {n_r}")
    if n_r == rho.n:
        return rho
    return partial_trace(rho, rho.n - n_r)


def reduced_spectrum(state: SymKet | SymDensity, n_r: int) -> np.ndarray:
    """Eigenvalues of the state reduced to ``n_r`` spins, sorted descending."""
    lam = np.linalg.eigvalsh(reduce_to(state, n_r).mat)
    return lam[::-1]


def split_log_negativity(state: SymKet | SymDensity, split: Split) -> float:
    """Logarithmic negativity of a (possibly particle-loss) bipartite split."""
    if split.total_n != state.n:
        raise DomainError(f"split is for n={split.total_n}, state has n={state.n}")
    rho = reduce_to(state, split.remaining)
    return log_negativity(partial_transpose(rho, split.k))


def pair_concurrence(state: SymKet | SymDensity) -> float:
    """Concurrence of the state reduced to two spins."""
    return concurrence_pair(reduce_to(state, 2))


def pair_formation(state: SymKet | SymDensity) -> float:
    """Entanglement of formation of the {1,1} split (all but two spins lost)."""
    return formation_from_concurrence(pair_concurrence(state))


def even_split_entropy(psi: SymKet) -> float:
    """Entropy of entanglement of the most even split {ceil(N/2), floor(N/2)}."""
    return entropy_of_entanglement(psi, psi.n // 2)


def trace_distance(rho, sigma) -> float:
    """Trace distance (half the trace norm of the difference)."""
    lam = np.linalg.eigvalsh(_as_matrix(rho) - _as_matrix(sigma))
    return float(0.5 * np.sum(np.abs(lam)))

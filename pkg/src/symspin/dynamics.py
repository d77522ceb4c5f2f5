"""Squeezing Hamiltonians and exact time evolution in the pseudo-spin basis.

A symmetry-preserving Hamiltonian acts on the (N+1)-dimensional basis as a
polynomial in the pseudo-spin J = N/2 operators, so evolution is computed by
a single dense Hermitian eigendecomposition per Hamiltonian and is exact to
machine precision at any time.  The counter-twisting generator
(J+^2 - J-^2)/i squeezes a polarized sample near-optimally; the one-axis
twisting generator J_x^2 squeezes sub-optimally but periodically, passing
through a GHZ-type cat state at half its period.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from .errors import DomainError, SearchError, UndefinedSqueezingError
from .measures import (
    SqueezingRecord,
    collective_moments,
    even_split_entropy,
    pair_formation,
    split_log_negativity,
    squeezing_of,
    trace_distance,
)
from .states import make_polarized
from .symcore import SymDensity, SymKet, even_split

__all__ = [
    "HAMILTONIAN_KINDS",
    "Hamiltonian",
    "build_hamiltonian",
    "propagate",
    "find_optimal_time",
    "optimal_time_scale",
    "Trajectory",
    "run_trajectory",
    "trajectory_measures",
    "first_peak_time",
    "ghz_proximity",
]

HAMILTONIAN_KINDS = ("counter_twist", "twist", "jx", "jy", "jz")


@dataclass(frozen=True)
class Hamiltonian:
    """Hermitian (N+1) x (N+1) generator for one of the supported kinds.

    The eigendecomposition is computed lazily once and shared by all
    propagations with this instance.
    """

    n: int
    kind: str
    mat: np.ndarray

    @functools.cached_property
    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        w, v = np.linalg.eigh(self.mat)
        return w, v


def _ladder(n: int) -> tuple[np.ndarray, np.ndarray]:
    m = np.arange(n, dtype=float)
    s = np.sqrt((n - m) * (m + 1.0))
    jp = np.diag(s, -1).astype(np.complex128)
    return jp, jp.conj().T


def build_hamiltonian(n: int, kind: str) -> Hamiltonian:
    """Construct a squeezing or rotation generator in the small basis.

    ``counter_twist`` is (J+^2 - J-^2)/i and couples m to m +- 2 only;
    ``twist`` is J_x^2 and couples m to m and m +- 2; ``jx``, ``jy``, ``jz``
    are the collective angular momentum components.
    """
    if n < 1:
        raise DomainError(f"particle count must be >= 1, got {n}")
    jp, jm = _ladder(n)
    if kind == "jz":
        mat = np.diag(np.arange(n + 1) - n / 2.0).astype(np.complex128)
    elif kind == "jx":
        mat = (jp + jm) / 2.0
    elif kind == "jy":
        mat = (jp - jm) / 2.0j
    elif kind == "twist":
        jx = (jp + jm) / 2.0
        mat = jx @ jx
    elif kind == "counter_twist":
        mat = (jp @ jp - jm @ jm) / 1.0j
    else:
        raise DomainError(f"unknown Hamiltonian kind {kind!r}")
    return Hamiltonian(n=n, kind=kind, mat=mat)


def propagate(psi0: SymKet, h: Hamiltonian, t: float) -> SymKet:
    """Evolve a state by exp(-i H t) using the cached eigendecomposition."""
    if psi0.n != h.n:
        raise DomainError(f"state has n={psi0.n}, Hamiltonian has n={h.n}")
    w, v = h.eigensystem
    return SymKet(psi0.n, v @ (np.exp(-1j * w * t) * (v.conj().T @ psi0.amps)))


def optimal_time_scale(n: int) -> float:
    """Reference counter-twisting optimal time 0.2 log2(N) / N."""
    return 0.2 * math.log2(n) / n


def _xi2_at(h: Hamiltonian, psi0: SymKet, t: float) -> float:
    try:
        return squeezing_of(propagate(psi0, h, t)).xi2
    except UndefinedSqueezingError:
        return math.inf


@functools.lru_cache(maxsize=None)
def find_optimal_time(n: int, kind: str = "counter_twist") -> float:
    """Time of maximal squeezing of an initially polarized sample.

    A coarse grid over [0, 1.5 log2(N)/N] brackets the first minimum of
    xi^2(t), which golden-section search then refines to relative tolerance
    1e-4.

    Raises
    ------
    SearchError
        If the grid fails to bracket an interior minimum.
    """
    if n < 4:
        raise DomainError(f"optimal-time search needs n >= 4, got {n}")
    if kind not in ("counter_twist", "twist"):
        raise DomainError(f"kind {kind!r} does not squeeze a polarized sample")
    h = build_hamiltonian(n, kind)
    psi0 = make_polarized(n)
    grid = np.linspace(0.0, 7.5 * optimal_time_scale(n), 61)
    values = np.array([_xi2_at(h, psi0, t) for t in grid])
    i = int(np.argmin(values))
    if i == 0 or i == grid.size - 1 or not np.isfinite(values[i]):
        raise SearchError("no interior squeezing minimum bracketed")
    try:
        res = minimize_scalar(
            lambda t: _xi2_at(h, psi0, t),
            bracket=(grid[i - 1], grid[i], grid[i + 1]),
            method="golden",
            options={"xtol": 1e-4},
        )
    except ValueError as exc:
        raise SearchError(f"golden-section refinement failed: {exc}") from exc
    return float(res.x)


@dataclass(frozen=True)
class Trajectory:
    """Uniform samples of an evolution, in time units of the optimal time.

    ``times`` are scaled so maximal squeezing occurs at 1; ``t_star`` is the
    optimal time in absolute units.  Samples where the mean spin vanishes
    carry an infinite squeezing parameter.
    """

    n: int
    kind: str
    t_star: float
    times: np.ndarray
    kets: tuple[SymKet, ...]
    records: tuple[SqueezingRecord, ...]


def run_trajectory(n: int, kind: str, t_max_scaled: float, steps: int) -> Trajectory:
    """Sample the evolution of a polarized sample at ``steps`` scaled times."""
    if steps < 2:
        raise DomainError(f"need at least 2 steps, got {steps}")
    t_star = find_optimal_time(n, kind)
    h = build_hamiltonian(n, kind)
    psi0 = make_polarized(n)
    times = np.linspace(0.0, t_max_scaled, steps)
    kets = tuple(propagate(psi0, h, ts * t_star) for ts in times)
    records = []
    for ket in kets:
        try:
            records.append(squeezing_of(ket))
        except UndefinedSqueezingError:
            records.append(
                SqueezingRecord(xi2=math.inf, xi1_2=math.inf, n=n, theta_min=math.nan)
            )
    return Trajectory(
        n=n, kind=kind, t_star=t_star, times=times, kets=kets, records=tuple(records)
    )


def trajectory_measures(
    traj: Trajectory, en_remaining: tuple[int, ...] = ()
) -> dict[str, np.ndarray]:
    """Entanglement sweep along a trajectory.

    Returns columns ``t_scaled``, ``xi2``, ``jz_mean``, ``ef_11`` (pair
    entanglement of formation), ``ef_even`` (even-split entropy of the pure
    state) and, for every requested ``N_r`` in ``en_remaining``, the
    logarithmic negativity ``en_nr_<N_r>`` of the most even split of the
    state reduced to N_r spins.
    """
    n = traj.n
    for n_r in en_remaining:
        if not 2 <= n_r <= n:
            raise DomainError(f"N_r must be in [2, {n}], got {n_r}")
    cols: dict[str, np.ndarray] = {
        "t_scaled": np.asarray(traj.times, dtype=float),
        "xi2": np.array([r.xi2 for r in traj.records]),
        "jz_mean": np.array([collective_moments(k).jz_mean for k in traj.kets]),
        "ef_11": np.array([pair_formation(k) for k in traj.kets]),
        "ef_even": np.array([even_split_entropy(k) for k in traj.kets]),
    }
    for n_r in en_remaining:
        split = even_split(n, n_r)
        cols[f"en_nr_{n_r}"] = np.array(
            [split_log_negativity(k, split) for k in traj.kets]
        )
    return cols


def first_peak_time(times, values, resolution: int = 4000) -> float:
    """Location of the first local maximum of a sampled curve.

    The samples are interpolated with a cubic spline and scanned on a fine
    grid; if the curve has no interior local maximum the position of the
    global maximum (possibly a boundary) is returned.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size < 4:
        raise DomainError("need at least 4 samples to locate a peak")
    spline = CubicSpline(times, values)
    tt = np.linspace(times[0], times[-1], resolution)
    vv = spline(tt)
    interior = np.flatnonzero((vv[1:-1] > vv[2:]) & (vv[1:-1] >= vv[:-2])) + 1
    if interior.size:
        return float(tt[interior[0]])
    return float(tt[np.argmax(vv)])


def ghz_proximity(state: SymKet | SymDensity) -> float:
    """Trace distance to the nearest GHZ state (|0> + e^{ia}|N>)/sqrt(2).

    The branch phase a is a collective J_z rotation, i.e. a local unitary
    that cannot change any entanglement measure, so the distance is
    minimized over it in closed form before comparing.
    """
    rho = state.density() if isinstance(state, SymKet) else state
    n = rho.n
    alpha = -np.angle(rho.mat[0, n])
    ghz = np.zeros(n + 1, dtype=np.complex128)
    ghz[0] = 1.0 / math.sqrt(2.0)
    ghz[n] = np.exp(1j * alpha) / math.sqrt(2.0)
    return trace_distance(rho, SymKet(n, ghz).density())

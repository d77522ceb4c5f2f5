"""Factories for the reference families of symmetric states.

Families: GHZ, Dicke (W is the one-excitation member), comb states (equal
amplitudes on basis indices spaced s apart around N/2), Gaussian random
states, and the fully polarized state.  A small string grammar identifies
states on the command line: ``ghz``, ``dicke:<m>``, ``dicke:auto`` (m = N//2),
``comb:<s>``, ``comb:auto`` (s = round(sqrt(2N))), ``random:<seed>``,
``polarized``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .symcore import SymKet

__all__ = [
    "RNG_ALGORITHM",
    "StateSpec",
    "parse_state_spec",
    "build_state",
    "make_ghz",
    "make_dicke",
    "make_comb",
    "make_random",
    "make_polarized",
    "random_amplitudes",
    "comb_auto_spacing",
    "superpose",
]

#: Bit generator behind ``random:<seed>`` states, recorded in CLI metadata.
RNG_ALGORITHM = "PCG64"

_FAMILIES = ("ghz", "dicke", "comb", "random", "polarized")


@dataclass(frozen=True)
class StateSpec:
    """Parsed description of a reference state.

    ``m`` (dicke), ``s`` (comb) and ``seed`` (random) are meaningful only for
    their own family; ``label`` preserves the grammar string for output rows.
    """

    family: str
    n: int
    m: int | None = None
    s: int | None = None
    seed: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise DomainError(f"unknown state family {self.family!r}")
        if self.family == "dicke" and not 0 <= (self.m or 0) <= self.n:
            raise DomainError(f"dicke index m={self.m} outside [0, {self.n}]")
        if self.family == "comb" and not 1 <= (self.s or 0) <= self.n:
            raise DomainError(f"comb spacing s={self.s} outside [1, {self.n}]")
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self) -> str:
        if self.family == "dicke":
            return f"dicke:{self.m}"
        if self.family == "comb":
            return f"comb:{self.s}"
        if self.family == "random":
            return f"random:{self.seed}"
        return self.family


def comb_auto_spacing(n: int) -> int:
    """Near-optimal comb spacing round(sqrt(2N)) for maximal split entropy."""
    return max(1, round(math.sqrt(2 * n)))


def parse_state_spec(text: str, n: int) -> StateSpec:
    """Parse a state-grammar string for an ensemble of ``n`` spins.

    Raises
    ------
    DomainError
        On unknown family names, malformed arguments, or out-of-range
        parameters.
    """
    name, _, arg = text.strip().partition(":")
    if name == "ghz":
        if arg:
            raise DomainError("ghz takes no argument")
        return StateSpec("ghz", n, label=text.strip())
    if name == "polarized":
        if arg:
            raise DomainError("polarized takes no argument")
        return StateSpec("polarized", n, label=text.strip())
    if name == "dicke":
        m = n // 2 if arg == "auto" else _parse_int(arg, "dicke:<m>")
        return StateSpec("dicke", n, m=m, label=text.strip())
    if name == "comb":
        s = comb_auto_spacing(n) if arg == "auto" else _parse_int(arg, "comb:<s>")
        return StateSpec("comb", n, s=s, label=text.strip())
    if name == "random":
        return StateSpec("random", n, seed=_parse_int(arg, "random:<seed>"), label=text.strip())
    raise DomainError(f"unknown state spec {text!r}")


def _parse_int(arg: str, what: str) -> int:
    try:
        return int(arg)
    except ValueError:
        raise DomainError(f"{what} needs an integer argument, got {arg!r}") from None


def build_state(spec: StateSpec) -> SymKet:
    """Construct the :class:`SymKet` described by a :class:`StateSpec`."""
    if spec.family == "ghz":
        return make_ghz(spec.n)
    if spec.family == "dicke":
        return make_dicke(spec.n, spec.m)
    if spec.family == "comb":
        return make_comb(spec.n, spec.s)
    if spec.family == "random":
        return make_random(spec.n, spec.seed)
    return make_polarized(spec.n)


def make_ghz(n: int) -> SymKet:
    """Equal superposition of the all-down and all-up states."""
    if n < 2:
        raise DomainError(f"GHZ needs n >= 2, got {n}")
    amps = np.zeros(n + 1, dtype=np.complex128)
    amps[0] = amps[n] = 1.0 / math.sqrt(2.0)
    return SymKet(n, amps)


def make_dicke(n: int, m: int) -> SymKet:
    """Basis state with exactly ``m`` spins up; m=1 is the W state."""
    if not 0 <= m <= n:
        raise DomainError(f"m must be in [0, {n}], got {m}")
    amps = np.zeros(n + 1, dtype=np.complex128)
    amps[m] = 1.0
    return SymKet(n, amps)


def make_polarized(n: int) -> SymKet:
    """Fully polarized (all spins down) product state."""
    return make_dicke(n, 0)


def make_comb(n: int, s: int) -> SymKet:
    """Equal-weight superposition of basis indices floor(n/2) + j*s.

    Teeth falling outside [0, n] are dropped and the state renormalized, so
    the amplitude is 1/sqrt(#teeth) rather than the asymptotic sqrt(2s/N).
    """
    if not 1 <= s <= n:
        raise DomainError(f"comb spacing must be in [1, {n}], got {s}")
    center = n // 2
    amps = np.zeros(n + 1, dtype=np.complex128)
    teeth = np.arange(-(center // s), (n - center) // s + 1) * s + center
    amps[teeth] = 1.0
    return SymKet(n, amps)


def random_amplitudes(n: int, seed: int) -> np.ndarray:
    """Raw Gaussian amplitude vector with E[|r_m|^2] = 1/(n+1), not normalized.

    Deterministic per (n, seed): the PCG64 stream is keyed on both values and
    no global generator state is touched.
    """
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(n)]))
    sigma = math.sqrt(0.5 / (n + 1))
    re, im = rng.normal(0.0, sigma, size=(2, n + 1))
    return re + 1j * im


def make_random(n: int, seed: int) -> SymKet:
    """Normalized Haar-like random symmetric state, deterministic per (n, seed)."""
    if n < 1:
        raise DomainError(f"random state needs n >= 1, got {n}")
    return SymKet(n, random_amplitudes(n, seed))


def superpose(a: SymKet, b: SymKet, weight: float) -> SymKet:
    """Normalized superposition sqrt(w)|a> + sqrt(1-w)|b>, 0 <= w <= 1."""
    if a.n != b.n:
        raise DomainError("cannot superpose states of different sizes")
    if not 0.0 <= weight <= 1.0:
        raise DomainError(f"weight must be in [0, 1], got {weight}")
    return SymKet(a.n, math.sqrt(weight) * a.amps + math.sqrt(1.0 - weight) * b.amps)

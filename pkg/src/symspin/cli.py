"""Command line front end emitting CSV datasets for the reference figures.

Every command is deterministic given its full configuration (seeds included)
and embeds a metadata line with the tool version, the canonical form of the
configuration, and the RNG algorithm, so re-running a command reproduces its
output byte for byte.  Exit codes: 0 on success, 2 on configuration errors,
3 on numerical failures.
"""

from __future__ import annotations

import csv
import functools
import math
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace

import click
import numpy as np

from . import __version__
from .errors import DataError, DomainError, SearchError
from .io import save_ket
from .measures import (
    entropy_of_entanglement,
    even_split_entropy,
    pair_formation,
    split_log_negativity,
    squeezing_after_loss,
    squeezing_of,
    unobtainable_bound,
)
from .states import RNG_ALGORITHM, build_state, make_random, parse_state_spec, superpose
from .symcore import Split, SymDensity, even_split, partial_trace
from .dynamics import (
    build_hamiltonian,
    find_optimal_time,
    propagate,
    run_trajectory,
    trajectory_measures,
)
from . import oracle as orc
from .states import make_polarized, make_random as _make_random

__all__ = ["main", "SweepConfig", "parse_canonical"]

NEGATIVITY_N_CAP = 100

_REFERENCE_STATES = ("ghz", "dicke:1", "dicke:auto", "comb:auto", "random:0")
_DEFAULT_N_LIST = (50, 100, 200, 300, 400, 500, 600)


@dataclass(frozen=True)
class SweepConfig:
    """Full configuration of one CLI command, canonicalizable to a string."""

    command: str
    states: tuple[str, ...] = ()
    n: int | None = None
    n_list: tuple[int, ...] = ()
    splits: tuple[int, ...] = ()
    seeds: tuple[int, ...] = ()
    steps: int = 201
    t_max: float = 2.0
    kind: str = "counter_twist"
    out: str = "-"
    loss_out: str = ""
    jobs: int = 1

    def canonical(self) -> str:
        parts = [self.command]
        parts.append(f"states={','.join(self.states)}")
        parts.append(f"n={'' if self.n is None else self.n}")
        parts.append(f"n_list={','.join(map(str, self.n_list))}")
        parts.append(f"splits={','.join(map(str, self.splits))}")
        parts.append(f"seeds={','.join(map(str, self.seeds))}")
        parts.append(f"steps={self.steps}")
        parts.append(f"t_max={self.t_max!r}")
        parts.append(f"kind={self.kind}")
        parts.append(f"out={self.out}")
        parts.append(f"loss_out={self.loss_out}")
        parts.append(f"jobs={self.jobs}")
        return " ".join(shlex.quote(p) for p in parts)

    def __post_init__(self):
        if self.jobs < 1:
            raise DomainError(f"jobs must be >= 1, got {self.jobs}")


def parse_canonical(text: str) -> SweepConfig:
    """Inverse of :meth:`SweepConfig.canonical`."""
    tokens = shlex.split(text)
    if not tokens:
        raise DomainError("empty canonical config")
    kwargs = {}
    for tok in tokens[1:]:
        key, _, value = tok.partition("=")
        if key == "states":
            kwargs["states"] = tuple(v for v in value.split(",") if v)
        elif key in ("n_list", "splits", "seeds"):
            kwargs[key] = tuple(int(v) for v in value.split(",") if v)
        elif key == "n":
            kwargs["n"] = int(value) if value else None
        elif key in ("steps", "jobs"):
            kwargs[key] = int(value)
        elif key == "t_max":
            kwargs[key] = float(value)
        elif key in ("kind", "out", "loss_out"):
            kwargs[key] = value
        else:
            raise DomainError(f"unknown canonical field {key!r}")
    return SweepConfig(command=tokens[0], **kwargs)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(config: SweepConfig, header: list[str], rows: list[tuple]) -> None:
    if config.out == "-":
        _emit(sys.stdout, config, header, rows)
    else:
        with open(config.out, "w", newline="") as f:
            _emit(f, config, header, rows)


def _emit(f, config: SweepConfig, header, rows) -> None:
    f.write(
        f"# symspin={__version__} rng={RNG_ALGORITHM} "
        f"config={shlex.quote(config.canonical())}\n"
    )
    w = csv.writer(f, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])


def _pmap(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as exe:
        return list(exe.map(fn, items))


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    """Comma lists with optional a:b ranges, e.g. '2,4,8' or '0:25'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo, _, hi = part.partition(":")
            try:
                out.extend(range(int(lo), int(hi)))
            except ValueError:
                raise click.UsageError(f"bad {what} range {part!r}") from None
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise click.UsageError(f"bad {what} value {part!r}") from None
    if not out:
        raise click.UsageError(f"{what} list is empty")
    return tuple(out)


def _checked_specs(state_texts, n: int):
    try:
        return [parse_state_spec(s, n) for s in state_texts]
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc


def _numerical_guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DataError, SearchError, np.linalg.LinAlgError) as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(3)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from exc

    return wrapper


@click.group()
@click.version_option(version=__version__)
def main():
    """Entanglement and squeezing sweeps for symmetric spin ensembles."""


# ---------------------------------------------------------------------------
# entropy-splits


def _entropy_splits_rows(args):
    spec_text, n = args
    psi = build_state(parse_state_spec(spec_text, n))
    return [
        (spec_text, n, k, entropy_of_entanglement(psi, k), unobtainable_bound(k))
        for k in range(1, n // 2 + 1)
    ]


@main.command("entropy-splits")
@click.option("--n", type=int, default=50, show_default=True)
@click.option("--state", "states", multiple=True, help="State specs (repeatable).")
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option(
    "--dump-states",
    type=click.Path(file_okay=False, writable=True),
    default=None,
    help="Directory in which to save each constructed state as CSV.",
)
@_numerical_guard
def cmd_entropy_splits(n, states, out, jobs, dump_states):
    """Entropy of entanglement vs split size k for pure reference states."""
    states = tuple(states) or _REFERENCE_STATES
    if n < 2:
        raise click.UsageError("need n >= 2")
    specs = _checked_specs(states, n)
    config = SweepConfig("entropy-splits", states=states, n=n, out=out, jobs=jobs)
    if dump_states:
        import pathlib

        directory = pathlib.Path(dump_states)
        directory.mkdir(parents=True, exist_ok=True)
        for spec in specs:
            name = spec.label.replace(":", "_") + ".csv"
            save_ket(build_state(spec), directory / name)
    chunks = _pmap(_entropy_splits_rows, [(s, n) for s in states], jobs)
    rows = sorted(r for chunk in chunks for r in chunk)
    _write_csv(config, ["state", "n", "k", "entropy", "bound"], rows)


# ---------------------------------------------------------------------------
# entropy-vs-n


def _entropy_vs_n_row(args):
    spec_text, n, seeds = args
    if spec_text == "random":
        es = [even_split_entropy(make_random(n, seed)) for seed in seeds]
        e = float(np.mean(es))
    else:
        e = even_split_entropy(build_state(parse_state_spec(spec_text, n)))
    return (spec_text, n, e, unobtainable_bound(n // 2))


@main.command("entropy-vs-n")
@click.option("--n-list", default=",".join(map(str, _DEFAULT_N_LIST)), show_default=True)
@click.option(
    "--state",
    "states",
    multiple=True,
    help="State specs; the bare token 'random' means the seed-averaged family.",
)
@click.option("--seeds", default="0:25", show_default=True)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_entropy_vs_n(n_list, states, seeds, out, jobs):
    """Even-split entropy vs particle count for the reference families."""
    states = tuple(states) or ("ghz", "dicke:1", "dicke:auto", "comb:auto", "random")
    ns = _parse_int_list(n_list, "n")
    seed_list = _parse_int_list(seeds, "seed")
    for s in states:
        if s != "random":
            _checked_specs([s], max(ns))
    config = SweepConfig(
        "entropy-vs-n", states=states, n_list=ns, seeds=seed_list, out=out, jobs=jobs
    )
    tasks = [(s, n, seed_list) for s in states for n in ns]
    rows = sorted(_pmap(_entropy_vs_n_row, tasks, jobs))
    _write_csv(config, ["state", "n", "entropy", "bound"], rows)


# ---------------------------------------------------------------------------
# pair-formation


def _pair_formation_row(args):
    spec_text, n = args
    psi = build_state(parse_state_spec(spec_text, n))
    return (spec_text, n, pair_formation(psi))


@main.command("pair-formation")
@click.option("--n-list", default=",".join(map(str, _DEFAULT_N_LIST)), show_default=True)
@click.option("--state", "states", multiple=True)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_pair_formation(n_list, states, out, jobs):
    """Two-particle entanglement of formation vs particle count."""
    states = tuple(states) or _REFERENCE_STATES
    ns = _parse_int_list(n_list, "n")
    for s in states:
        _checked_specs([s], max(ns))
    config = SweepConfig(
        "pair-formation", states=states, n_list=ns, out=out, jobs=jobs
    )
    tasks = [(s, n) for s in states for n in ns]
    rows = sorted(_pmap(_pair_formation_row, tasks, jobs))
    _write_csv(config, ["state", "n", "ef_11"], rows)


# ---------------------------------------------------------------------------
# extremal-scatter


def _scatter_point(label, psi):
    return (label, even_split_entropy(psi), pair_formation(psi))


def _scatter_rows(args):
    kind, n, payload = args
    if kind == "state":
        spec_text = payload
        return [_scatter_point(spec_text, build_state(parse_state_spec(spec_text, n)))]
    if kind == "mix":
        spec_a, spec_b, weights = payload
        a = build_state(parse_state_spec(spec_a, n))
        b = build_state(parse_state_spec(spec_b, n))
        return [
            _scatter_point(f"mix:{spec_a}+{spec_b}:w={w!r}", superpose(a, b, w))
            for w in weights
        ]
    ham_kind, t_max, steps = payload
    traj = run_trajectory(n, ham_kind, t_max, steps)
    return [
        _scatter_point(f"traj:{ham_kind}:t={ts!r}", ket)
        for ts, ket in zip(traj.times, traj.kets)
    ]


@main.command("extremal-scatter")
@click.option("--n", type=int, default=50, show_default=True)
@click.option("--state", "states", multiple=True)
@click.option("--steps", type=int, default=41, show_default=True)
@click.option("--t-max", type=float, default=2.0, show_default=True)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_extremal_scatter(n, states, steps, t_max, out, jobs):
    """Trade-off scatter of even-split vs pair entanglement of formation.

    Emits the reference states, two interpolation families (polarized to W,
    half-excited Dicke to comb) and squeezing-trajectory samples for both
    Hamiltonians.
    """
    states = tuple(states) or ("ghz", "dicke:0", "dicke:1", "dicke:auto", "comb:auto", "random:0")
    if steps < 2:
        raise click.UsageError("need steps >= 2")
    _checked_specs(states, n)
    config = SweepConfig(
        "extremal-scatter", states=states, n=n, steps=steps, t_max=t_max, out=out, jobs=jobs
    )
    weights = tuple(i / 20.0 for i in range(21))
    tasks = [("state", n, s) for s in states]
    tasks += [
        ("mix", n, ("dicke:0", "dicke:1", weights)),
        ("mix", n, ("dicke:auto", "comb:auto", weights)),
        ("traj", n, ("counter_twist", t_max, steps)),
        ("traj", n, ("twist", t_max, steps)),
    ]
    chunks = _pmap(_scatter_rows, tasks, jobs)
    rows = sorted(r for chunk in chunks for r in chunk)
    _write_csv(config, ["label", "ef_even", "ef_11"], rows)


# ---------------------------------------------------------------------------
# negativity-reduced


def _negativity_reduced_rows(args):
    spec_text, n = args
    psi = build_state(parse_state_spec(spec_text, n))
    rho = psi.density()
    rows = []
    for n_r in range(n, 1, -1):
        if n_r < rho.n:
            rho = partial_trace(rho, rho.n - n_r)
        from .measures import log_negativity
        from .symcore import partial_transpose

        en = log_negativity(partial_transpose(rho, n_r // 2))
        rows.append((spec_text, n, n_r, en))
    rows.reverse()
    return rows


@main.command("negativity-reduced")
@click.option("--n", type=int, default=50, show_default=True)
@click.option("--state", "states", multiple=True)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_negativity_reduced(n, states, out, jobs):
    """Even-split logarithmic negativity vs particles remaining."""
    states = tuple(states) or _REFERENCE_STATES
    if n < 2:
        raise click.UsageError("need n >= 2")
    if n > NEGATIVITY_N_CAP:
        raise click.UsageError(
            f"negativity sweeps are capped at n = {NEGATIVITY_N_CAP} "
            "(dense eigensolves on the split space)"
        )
    _checked_specs(states, n)
    config = SweepConfig("negativity-reduced", states=states, n=n, out=out, jobs=jobs)
    chunks = _pmap(_negativity_reduced_rows, [(s, n) for s in states], jobs)
    rows = sorted(r for chunk in chunks for r in chunk)
    _write_csv(config, ["state", "n", "n_r", "en_even"], rows)


# ---------------------------------------------------------------------------
# dicke-ordering


def _dicke_ordering_row(args):
    n, m = args
    psi = build_state(parse_state_spec(f"dicke:{m}", n))
    split = Split(n, 2, 1)
    return (m, pair_formation(psi), split_log_negativity(psi, split))


def _dicke_scaling_row(n):
    psi = build_state(parse_state_spec("dicke:1", n))
    ef = pair_formation(psi)
    en = split_log_negativity(psi, Split(n, 2, 1))
    return (n, ef, en, n * n * ef, n * n * en)


@main.command("dicke-ordering")
@click.option("--n", type=int, default=50, show_default=True)
@click.option(
    "--n-list",
    default="",
    help="If given, emit the large-N scaling table for dicke:1 instead.",
)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_dicke_ordering(n, n_list, out, jobs):
    """Ordering of pair formation vs pair negativity across Dicke states."""
    if n_list:
        ns = _parse_int_list(n_list, "n")
        config = SweepConfig("dicke-ordering", states=("dicke:1",), n_list=ns, out=out, jobs=jobs)
        rows = sorted(_pmap(_dicke_scaling_row, list(ns), jobs))
        _write_csv(config, ["n", "ef_11", "en_11", "n2_ef_11", "n2_en_11"], rows)
        return
    if n < 4:
        raise click.UsageError("need n >= 4")
    config = SweepConfig("dicke-ordering", n=n, out=out, jobs=jobs)
    rows = sorted(_pmap(_dicke_ordering_row, [(n, m) for m in range(1, n // 2 + 1)], jobs))
    _write_csv(config, ["m", "ef_11", "en_11"], rows)


# ---------------------------------------------------------------------------
# squeeze


@main.command("squeeze")
@click.option("--n", type=int, default=50, show_default=True)
@click.option(
    "--kind",
    type=click.Choice(["counter_twist", "twist"]),
    default="counter_twist",
    show_default=True,
)
@click.option("--steps", type=int, default=201, show_default=True)
@click.option("--t-max", type=float, default=2.0, show_default=True)
@click.option(
    "--splits",
    default="",
    help="Comma list of N_r values adding even-split negativity columns.",
)
@click.option(
    "--loss-out",
    default="",
    help="Also write the particle-loss squeezing table (at scaled t = 1) here.",
)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_squeeze(n, kind, steps, t_max, splits, loss_out, out, jobs):
    """Squeezing trajectory (and optionally squeezing under particle loss)."""
    if n < 4:
        raise click.UsageError("need n >= 4")
    if steps < 2:
        raise click.UsageError("need steps >= 2")
    split_list = _parse_int_list(splits, "split") if splits else ()
    for n_r in split_list:
        if not 2 <= n_r <= n:
            raise click.UsageError(f"split N_r={n_r} outside [2, {n}]")
    config = SweepConfig(
        "squeeze",
        n=n,
        kind=kind,
        steps=steps,
        t_max=t_max,
        splits=split_list,
        loss_out=loss_out,
        out=out,
        jobs=jobs,
    )
    traj = run_trajectory(n, kind, t_max, steps)
    cols = trajectory_measures(traj, split_list)
    header = list(cols.keys())
    rows = list(zip(*[cols[h] for h in header]))
    rows = [tuple(float(x) for x in row) for row in rows]
    _write_csv(config, header, rows)
    if loss_out:
        _write_loss_table(config, traj)


def _write_loss_table(config: SweepConfig, traj) -> None:
    n = config.n
    psi_star = propagate(
        make_polarized(n), build_hamiltonian(n, config.kind), traj.t_star
    )
    rec = squeezing_of(psi_star)
    rows = []
    rho = psi_star.density()
    for n_r in range(n, 0, -1):
        if n_r < rho.n:
            rho = partial_trace(rho, 1)
        direct = squeezing_of(rho).xi2
        line = squeezing_after_loss(rec, n, n_r)
        rows.append((n_r, direct, line))
    rows.reverse()
    loss_config = replace(config, out=config.loss_out)
    with open(config.loss_out, "w", newline="") as f:
        _emit(f, loss_config, ["n_r", "xi2_direct", "xi2_line"], rows)


# ---------------------------------------------------------------------------
# oracle-check


def _oracle_check_rows(args):
    n, seeds = args
    import numpy as np

    from .measures import reduce_to
    from .symcore import partial_transpose, schmidt_values

    rows = []
    err_trace = err_pt = err_schmidt = err_evolve = 0.0
    for seed in seeds:
        psi = _make_random(n, seed)
        full = orc.lift(psi).density()
        rho = psi.density()
        for k in range(1, n):
            a = orc.project(orc.full_partial_trace(full, list(range(k))))
            b = partial_trace(rho, k)
            err_trace = max(err_trace, float(np.max(np.abs(a.mat - b.mat))))
            ev_f = np.sort(np.linalg.eigvalsh(orc.full_partial_transpose(full, list(range(k))).mat))
            ev_s = np.sort(np.linalg.eigvalsh(partial_transpose(rho, k).mat))
            ev_pad = np.sort(np.concatenate([ev_s, np.zeros(2**n - ev_s.size)]))
            err_pt = max(err_pt, float(np.max(np.abs(ev_f - ev_pad))))
            sv = schmidt_values(psi, k)
            lam = np.sqrt(np.clip(np.linalg.eigvalsh(
                orc.full_partial_trace(full, list(range(k))).mat
            ), 0.0, None))
            sv_pad = np.sort(np.concatenate([sv, np.zeros(lam.size - min(sv.size, lam.size))]))[::-1]
            err_schmidt = max(
                err_schmidt,
                float(np.max(np.abs(np.sort(lam)[::-1][: sv_pad.size] - sv_pad))),
            )
        for hkind in ("counter_twist", "twist"):
            a = orc.project(orc.full_evolve(orc.lift(psi), hkind, 0.1))
            b = propagate(psi, build_hamiltonian(n, hkind), 0.1)
            err_evolve = max(err_evolve, float(np.max(np.abs(a.amps - b.amps))))
    tol = 1e-9
    for check, err in [
        ("partial_trace", err_trace),
        ("partial_transpose", err_pt),
        ("schmidt", err_schmidt),
        ("evolve", err_evolve),
    ]:
        rows.append((n, check, err, "pass" if err < tol else "FAIL"))
    return rows


@main.command("oracle-check")
@click.option("--n-list", default="2,3,4,5,6", show_default=True)
@click.option("--seeds", default="0:5", show_default=True)
@click.option("--out", default="-", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_numerical_guard
def cmd_oracle_check(n_list, seeds, out, jobs):
    """Cross-check the small-basis transforms against the full-space oracle."""
    ns = _parse_int_list(n_list, "n")
    seed_list = _parse_int_list(seeds, "seed")
    if max(ns) > orc.MAX_DENSE_SPINS:
        raise click.UsageError(f"oracle checks are capped at n = {orc.MAX_DENSE_SPINS}")
    if min(ns) < 2:
        raise click.UsageError("oracle checks need n >= 2")
    config = SweepConfig("oracle-check", n_list=ns, seeds=seed_list, out=out, jobs=jobs)
    chunks = _pmap(_oracle_check_rows, [(n, seed_list) for n in ns], jobs)
    rows = sorted(r for chunk in chunks for r in chunk)
    _write_csv(config, ["n", "check", "max_err", "status"], rows)
    if any(r[3] == "FAIL" for r in rows):
        click.echo("oracle disagreement detected", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()

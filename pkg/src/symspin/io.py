"""CSV serialization of symmetric states.

Both formats start with a line ``n=<N>`` followed by a CSV header row;
complex entries are stored as paired ``re``/``im`` columns.  Kets carry one
row per basis index m, density matrices one row per (row, col) entry in
row-major order.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import DataError
from .symcore import SymDensity, SymKet

__all__ = ["save_ket", "load_ket", "save_density", "load_density"]


def _open(path, mode):
    if hasattr(path, "write") or hasattr(path, "read"):
        return path, False
    return open(Path(path), mode, newline=""), True


def save_ket(psi: SymKet, path) -> None:
    f, close = _open(path, "w")
    try:
        f.write(f"n={psi.n}\n")
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["m", "re", "im"])
        for m, a in enumerate(psi.amps):
            w.writerow([m, repr(a.real), repr(a.imag)])
    finally:
        if close:
            f.close()


def save_density(rho: SymDensity, path) -> None:
    f, close = _open(path, "w")
    try:
        f.write(f"n={rho.n}\n")
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["row", "col", "re", "im"])
        for i in range(rho.n + 1):
            for j in range(rho.n + 1):
                z = rho.mat[i, j]
                w.writerow([i, j, repr(z.real), repr(z.imag)])
    finally:
        if close:
            f.close()


def _read_header(f, expected_fields):
    first = f.readline().strip()
    if not first.startswith("n="):
        raise DataError(f"expected leading 'n=<N>' line, got {first!r}")
    try:
        n = int(first[2:])
    except ValueError:
        raise DataError(f"bad particle count in {first!r}") from None
    reader = csv.reader(f)
    header = next(reader, None)
    if header != expected_fields:
        raise DataError(f"expected header {expected_fields}, got {header}")
    return n, reader


def load_ket(path) -> SymKet:
    f, close = _open(path, "r")
    try:
        n, reader = _read_header(f, ["m", "re", "im"])
        amps = np.zeros(n + 1, dtype=np.complex128)
        for row in reader:
            if not row:
                continue
            m = int(row[0])
            amps[m] = float(row[1]) + 1j * float(row[2])
        return SymKet(n, amps)
    finally:
        if close:
            f.close()


def load_density(path) -> SymDensity:
    f, close = _open(path, "r")
    try:
        n, reader = _read_header(f, ["row", "col", "re", "im"])
        mat = np.zeros((n + 1, n + 1), dtype=np.complex128)
        for row in reader:
            if not row:
                continue
            mat[int(row[0]), int(row[1])] = float(row[2]) + 1j * float(row[3])
        return SymDensity(n, mat)
    finally:
        if close:
            f.close()

"""Susceptibility datasets: CSV ingestion, export and synthetic generation.

CSV layout (UTF-8, ``#`` comment lines allowed)::

    temperature_K,chi[,sigma]

The chi column is either muB/Oe per dimer (``mub-oe``) or emu per mole of
dimers (``emu-mol``); values are converted to muB/Oe on load.
"""
import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from ..constants import EMU_PER_MOL_PER_MUB_OE
from ..errors import DuplicateTemperature, EmptyDataset, MalformedRow, NonPositiveTemperature
from ..thermo import ModelParams, chi_model

UNITS = ("mub-oe", "emu-mol")
_SCALE = {"mub-oe": 1.0, "emu-mol": EMU_PER_MOL_PER_MUB_OE}


@dataclass(frozen=True, eq=False)
class DataSet:
    t_K: np.ndarray
    chi: np.ndarray
    sigma: np.ndarray | None = None
    source_units: str = "mub-oe"

    def __post_init__(self):
        t = np.asarray(self.t_K, dtype=float)
        chi = np.asarray(self.chi, dtype=float)
        if t.ndim != 1 or t.shape != chi.shape:
            raise ValueError("t_K and chi must be 1-D arrays of equal length")
        if t.size == 0:
            raise EmptyDataset("dataset has no rows")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(chi))):
            raise ValueError("dataset values must be finite")
        if np.any(t <= 0):
            raise NonPositiveTemperature("temperatures must be positive")
        if np.any(np.diff(t) <= 0):
            raise ValueError("temperatures must be strictly increasing")
        if self.sigma is not None:
            sigma = np.asarray(self.sigma, dtype=float)
            if sigma.shape != t.shape or not np.all(np.isfinite(sigma)) or np.any(sigma <= 0):
                raise ValueError("sigma must be positive and finite for every row")
            object.__setattr__(self, "sigma", sigma)
        if self.source_units not in UNITS:
            raise ValueError(f"unknown units {self.source_units!r}")
        object.__setattr__(self, "t_K", t)
        object.__setattr__(self, "chi", chi)

    def __len__(self):
        return self.t_K.size

    @property
    def rows(self):
        sig = self.sigma if self.sigma is not None else [None] * len(self)
        return list(zip(self.t_K.tolist(), self.chi.tolist(), list(sig)))


def _parse_float(text, lineno, what):
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(f"line {lineno}: cannot parse {what} {text!r}", line=lineno) from None
    if not math.isfinite(value):
        raise MalformedRow(f"line {lineno}: {what} is not finite", line=lineno)
    return value


def parse_csv(text: str, units: str = "mub-oe") -> DataSet:
    if units not in UNITS:
        raise ValueError(f"units must be one of {UNITS}, got {units!r}")
    header = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([stripped]))]
        if header is None:
            if fields not in (["temperature_K", "chi"], ["temperature_K", "chi", "sigma"]):
                raise MalformedRow(
                    f"line {lineno}: header must be 'temperature_K,chi[,sigma]', got {stripped!r}",
                    line=lineno)
            header = fields
            continue
        if len(fields) != len(header):
            raise MalformedRow(
                f"line {lineno}: expected {len(header)} fields, got {len(fields)}", line=lineno)
        t = _parse_float(fields[0], lineno, "temperature")
        if t <= 0:
            raise NonPositiveTemperature(f"line {lineno}: temperature {t} K is not positive",
                                         line=lineno)
        chi = _parse_float(fields[1], lineno, "chi")
        if chi < 0:
            raise MalformedRow(f"line {lineno}: chi must be non-negative", line=lineno)
        sigma = None
        if len(header) == 3:
            sigma = _parse_float(fields[2], lineno, "sigma")
            if sigma <= 0:
                raise MalformedRow(f"line {lineno}: sigma must be positive", line=lineno)
        rows.append((t, chi, sigma, lineno))
    if header is None or not rows:
        raise EmptyDataset("no data rows found")

    rows.sort(key=lambda r: r[0])
    for a, b in zip(rows, rows[1:]):
        if a[0] == b[0]:
            raise DuplicateTemperature(
                f"line {b[3]}: temperature {b[0]} K duplicates line {a[3]}", line=b[3])
    scale = _SCALE[units]
    t = np.array([r[0] for r in rows])
    chi = np.array([r[1] for r in rows]) / scale
    sigma = np.array([r[2] for r in rows]) / scale if len(header) == 3 else None
    return DataSet(t, chi, sigma, units)


def load_csv(path, units: str = "mub-oe") -> DataSet:
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read(), units)


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering used for every numeric output."""
    return format(float(x), ".12g")


def format_csv(data: DataSet, units: str = "mub-oe") -> str:
    scale = _SCALE[units]
    buf = io.StringIO()
    has_sigma = data.sigma is not None
    buf.write("temperature_K,chi,sigma\n" if has_sigma else "temperature_K,chi\n")
    for i in range(len(data)):
        cells = [fmt(data.t_K[i]), fmt(data.chi[i] * scale)]
        if has_sigma:
            cells.append(fmt(data.sigma[i] * scale))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def synthesize(p: ModelParams, grid, noise_rel: float = 0.0, seed: int = 0) -> DataSet:
    """Model data with multiplicative Gaussian noise.

    Noise draws come from ``numpy.random.default_rng(seed)`` (PCG64), one
    ``standard_normal`` per grid point in grid order, so a given seed always
    yields the same dataset. With ``noise_rel == 0`` no sigma column is
    attached.
    """
    if noise_rel < 0:
        raise ValueError("noise_rel must be non-negative")
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("grid must be a non-empty 1-D sequence")
    clean = np.asarray(chi_model(t, p), dtype=float)
    if noise_rel == 0:
        return DataSet(t, clean.copy())
    z = np.random.default_rng(seed).standard_normal(t.size)
    return DataSet(t, clean * (1 + noise_rel * z), noise_rel * clean)

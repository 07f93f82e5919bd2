"""Text formats: map descriptions (JSON), delimited tables (CSV), reports.

Map description::

    {"numerator":   {"sigma_angle": 0.0, "zeros": [[0.5, 0.0], [0.1, -0.2]]},
     "denominator": {"sigma_angle": 0.0, "zeros": [[0.0, 0.0]]}}

Floats are written with 17 significant digits so a written file re-reads to
identical values.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .blaschke import BlaschkeProduct, RationalCircleMap
from .errors import DomainError, FormatError
from .fourier import FourierSpectrum, SampledCircleMap
from .geometry import StarlikeProfile


def fmt(x) -> str:
    """Canonical text for a table cell."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def blaschke_to_dict(B: BlaschkeProduct) -> dict:
    return {"sigma_angle": B.sigma_angle, "zeros": [[z.real, z.imag] for z in B.zeros]}


def blaschke_from_dict(d) -> BlaschkeProduct:
    if d is None:
        return BlaschkeProduct()
    if not isinstance(d, dict):
        raise FormatError("product entry must be an object with sigma_angle and zeros")
    zeros = d.get("zeros", [])
    if not isinstance(zeros, list) or any(not isinstance(z, list) or len(z) != 2 for z in zeros):
        raise FormatError("zeros must be a list of [re, im] pairs")
    try:
        return BlaschkeProduct(float(d.get("sigma_angle", 0.0)), [complex(float(a), float(b)) for a, b in zeros])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise FormatError(str(exc)) from exc
        raise FormatError(f"bad product entry: {exc}") from exc


def map_to_dict(f: RationalCircleMap) -> dict:
    return {"numerator": blaschke_to_dict(f.numerator), "denominator": blaschke_to_dict(f.denominator)}


def map_from_dict(d) -> RationalCircleMap:
    if not isinstance(d, dict) or "numerator" not in d:
        raise FormatError("map description needs a 'numerator' field")
    return RationalCircleMap(blaschke_from_dict(d["numerator"]), blaschke_from_dict(d.get("denominator")))


def dumps_map(f: RationalCircleMap) -> str:
    return json.dumps(map_to_dict(f), indent=2) + "\n"


def loads_map(text: str) -> RationalCircleMap:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"map description is not valid JSON: {exc}") from exc
    return map_from_dict(d)


def read_map(path) -> RationalCircleMap:
    return loads_map(Path(path).read_text())


def write_map(f: RationalCircleMap, path) -> None:
    Path(path).write_text(dumps_map(f))


def write_table(header: Sequence[str], rows: Iterable[Sequence], stream=None) -> str | None:
    """Comma-delimited table with a one-line header; returns the text if no stream."""
    out = stream if stream is not None else io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return out.getvalue() if stream is None else None


def read_table(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError("empty table")
    return rows[0], rows[1:]


def spectrum_rows(sp: FourierSpectrum):
    for n, c in sp.items():
        yield n, c.real, c.imag, abs(c)


SPECTRUM_HEADER = ("n", "re", "im", "abs")
CURVE_HEADER = ("theta", "re", "im")
PROFILE_HEADER = ("theta", "re", "im", "R", "phi")


def dumps_curve(s: SampledCircleMap, profile: StarlikeProfile | None = None) -> str:
    theta = s.angles
    if profile is None:
        rows = zip(theta, s.values.real, s.values.imag)
        return write_table(CURVE_HEADER, rows)
    rows = zip(theta, s.values.real, s.values.imag, profile.R(theta), profile.phi(theta))
    return write_table(PROFILE_HEADER, rows)


def loads_curve(text: str) -> SampledCircleMap:
    """Parse a curve table; theta must be the uniform grid 2 pi k / N."""
    header, rows = read_table(text)
    if [h.strip() for h in header[:3]] != list(CURVE_HEADER):
        raise FormatError(f"curve table must start with columns {', '.join(CURVE_HEADER)}")
    try:
        data = np.array([[float(x) for x in r[:3]] for r in rows if r])
    except ValueError as exc:
        raise FormatError(f"non-numeric curve entry: {exc}") from exc
    if data.ndim != 2 or data.shape[0] == 0:
        raise FormatError("curve table has no rows")
    n = data.shape[0]
    if not np.allclose(data[:, 0], 2 * np.pi * np.arange(n) / n, atol=1e-9):
        raise FormatError("theta column must be the uniform grid 2*pi*k/N")
    try:
        return SampledCircleMap(data[:, 1] + 1j * data[:, 2])
    except DomainError as exc:
        raise FormatError(str(exc)) from exc


def read_curve(path) -> SampledCircleMap:
    return loads_curve(Path(path).read_text())


def report_text(fields: dict) -> str:
    """``key: value`` lines."""
    return "".join(f"{k}: {fmt(v)}\n" for k, v in fields.items())


def report_delimited(fields: dict) -> str:
    return write_table(list(fields), [list(fields.values())])

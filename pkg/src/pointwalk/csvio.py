"""CSV import/export for fields, profiles and sweeps.

All writers are byte-stable: floats are serialised with repr (shortest
round-trip), rows follow a deterministic site order, newlines are '\\n',
and metadata lives in leading '# key = value' comment lines.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .asymptotics import CorrectionProfile
from .errors import ValidationError
from .fields import MassField
from .montecarlo import EmpiricalField

__all__ = [
    "write_mass_field",
    "write_empirical_field",
    "write_profile",
    "write_sweep",
    "read_table",
]


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _render(meta: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key} = {value}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _write(text: str, path) -> None:
    Path(path).write_text(text, newline="")


def _coord_header(dim: int) -> list[str]:
    return [f"x_{i + 1}" for i in range(dim)]


def write_mass_field(field: MassField, path, kernel_hash: str = "",
                     extra_meta: dict | None = None) -> None:
    """Columns x_1..x_nu, value; one row per lattice site (lexicographic)."""
    meta = {"dim": field.dim, "n": field.time, "R": field.radius,
            "kernel": kernel_hash}
    meta.update(extra_meta or {})
    rows = ([*site, field.value_at(site)] for site in field.sites())
    _write(_render(meta, _coord_header(field.dim) + ["value"], rows), path)


def write_empirical_field(field: EmpiricalField, path, kernel_hash: str = "",
                          extra_meta: dict | None = None) -> None:
    """MassField schema plus count and stderr columns."""
    meta = {"dim": field.dim, "n": field.n, "R": field.radius,
            "kernel": kernel_hash, "samples": field.samples,
            "seed": field.seed}
    meta.update(extra_meta or {})

    def rows():
        for site in field.sites():
            yield [*site, field.estimate(site), field.count_at(site),
                   field.stderr(site)]

    header = _coord_header(field.dim) + ["value", "count", "stderr"]
    _write(_render(meta, header, rows()), path)


_PROFILE_COLUMNS = ("exact_total", "gaussian", "exact_correction",
                    "delta_sum", "delta_quadrature", "delta_closed",
                    "psi_residual")


def write_profile(profile: CorrectionProfile, path,
                  extra_meta: dict | None = None) -> None:
    meta = {"dim": profile.dim, "n": profile.n, "R": profile.radius,
            "kernel": profile.kernel_hash}
    meta.update(extra_meta or {})

    def rows():
        for i in range(len(profile)):
            yield [*profile.sites[i],
                   *(getattr(profile, col)[i] for col in _PROFILE_COLUMNS)]

    header = _coord_header(profile.dim) + list(_PROFILE_COLUMNS)
    _write(_render(meta, header, rows()), path)


def write_sweep(rows, header: list[str], path,
                meta: dict | None = None) -> None:
    """Generic ladder table: caller supplies header and row tuples."""
    _write(_render(meta or {}, header, rows), path)


def read_table(path):
    """Parse a CSV written by this module.

    Returns (meta, header, columns) with columns as float arrays (integer
    columns come back as floats; coordinates are exactly representable).
    """
    meta = {}
    header = None
    data: list[list[str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            data.append(line.split(","))
    if header is None:
        raise ValidationError(f"{path}: no header row found")
    if any(len(row) != len(header) for row in data):
        raise ValidationError(f"{path}: ragged rows")
    columns = {
        name: np.array([float(row[j]) for row in data])
        for j, name in enumerate(header)
    }
    return meta, header, columns

"""Wire formats: JSON for structured records, CSV for grids and series.

Floating-point values are serialized with ``repr`` (shortest round-trip
representation), so write-read cycles are lossless and output files are
byte-stable for diffing.  Readers validate shape and headers and raise
:class:`~treeharmonics.params.DomainError` on malformed input so the
command line can map the failure to its I/O exit code.
"""

import csv
import json

import numpy as np

from .params import DomainError, check_grid, torus_grid, tree_params
from .spherical import RadialKernel, TorusSymbol
from .abel import AbelSequence
from .zline import ZKernel


def _fmt(x):
    return repr(float(x))


# ---------------------------------------------------------------------------
# RadialKernel JSON: {"q": int, "values": [[re, im], ...]} indexed from d = 0
# ---------------------------------------------------------------------------

def kernel_to_json(kernel):
    pairs = [[float(v.real), float(v.imag)] for v in kernel.values]
    return json.dumps({"q": kernel.params.q, "values": pairs}) + "\n"


def kernel_from_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed kernel JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != {"q", "values"}:
        raise DomainError('kernel JSON must be an object with exactly "q" and "values"')
    rows = obj["values"]
    if not isinstance(rows, list) or not rows:
        raise DomainError('"values" must be a nonempty list of [re, im] pairs')
    vals = np.empty(len(rows), dtype=complex)
    for i, row in enumerate(rows):
        if (
            not isinstance(row, list)
            or len(row) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row)
        ):
            raise DomainError(f'"values"[{i}] must be an [re, im] pair of numbers')
        vals[i] = complex(row[0], row[1])
    return RadialKernel(obj["q"], vals)


def write_kernel(kernel, path):
    with open(path, "w") as fh:
        fh.write(kernel_to_json(kernel))


def read_kernel(path):
    with open(path) as fh:
        return kernel_from_json(fh.read())


# ---------------------------------------------------------------------------
# CSV series
# ---------------------------------------------------------------------------

def _read_rows(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise DomainError(f"{path}: empty file, expected header {','.join(header)}")
        if first != list(header):
            raise DomainError(
                f"{path}: bad header {','.join(first)!r}, expected {','.join(header)!r}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DomainError(f"{path}:{lineno}: expected {len(header)} fields")
            try:
                rows.append([float(x) for x in row])
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise DomainError(f"{path}: no data rows")
    return rows


def symbol_to_csv(symbol):
    lines = ["s,re,im"]
    for s, val in zip(symbol.grid, symbol.samples):
        lines.append(f"{_fmt(s)},{_fmt(val.real)},{_fmt(val.imag)}")
    return "\n".join(lines) + "\n"


def write_symbol(symbol, path):
    with open(path, "w") as fh:
        fh.write(symbol_to_csv(symbol))


def read_symbol(q, path):
    """Read a symbol CSV sampled on the standard grid of its row count."""
    params = tree_params(q)
    rows = _read_rows(path, ("s", "re", "im"))
    n = check_grid(len(rows))
    data = np.asarray(rows, dtype=float)
    grid = torus_grid(params, n)
    if np.max(np.abs(data[:, 0] - grid)) > 1e-9 * params.period:
        raise DomainError(
            f"{path}: frequency column does not match the standard {n}-point grid for q={params.q}"
        )
    return TorusSymbol(params, data[:, 1] + 1j * data[:, 2])


def abel_to_csv(seq):
    J = seq.support_radius
    lines = ["j,re,im"]
    for i, j in enumerate(range(-J, J + 1)):
        v = seq.values[i]
        lines.append(f"{j},{_fmt(v.real)},{_fmt(v.imag)}")
    return "\n".join(lines) + "\n"


def write_abel(seq, path):
    with open(path, "w") as fh:
        fh.write(abel_to_csv(seq))


def read_abel(q, path):
    rows = _read_rows(path, ("j", "re", "im"))
    jcol = [int(r[0]) for r in rows]
    J = (len(rows) - 1) // 2
    if jcol != list(range(-J, J + 1)):
        raise DomainError(f"{path}: index column must run -J..J contiguously")
    vals = np.array([complex(r[1], r[2]) for r in rows])
    return AbelSequence(q, vals)


def zkernel_to_csv(F):
    lines = ["d,re,im"]
    for d, v in zip(F.indices, F.values):
        lines.append(f"{int(d)},{_fmt(v.real)},{_fmt(v.imag)}")
    return "\n".join(lines) + "\n"


def write_zkernel(F, path):
    with open(path, "w") as fh:
        fh.write(zkernel_to_csv(F))


def read_zkernel(q, path):
    rows = _read_rows(path, ("d", "re", "im"))
    dcol = [int(r[0]) for r in rows]
    if dcol != list(range(dcol[0], dcol[0] + len(dcol))):
        raise DomainError(f"{path}: index column must be contiguous and ascending")
    vals = np.array([complex(r[1], r[2]) for r in rows])
    return ZKernel(q, dcol[0], vals)


# ---------------------------------------------------------------------------
# Census CSV: j,d,m,count sorted by (j, d)
# ---------------------------------------------------------------------------

def census_to_csv(rows):
    lines = ["j,d,m,count"]
    for j, d, m, count in rows:
        lines.append(f"{int(j)},{int(d)},{int(m)},{int(count)}")
    return "\n".join(lines) + "\n"


def write_census(rows, path):
    with open(path, "w") as fh:
        fh.write(census_to_csv(rows))


# ---------------------------------------------------------------------------
# Structured JSON records
# ---------------------------------------------------------------------------

def interval_to_json(interval):
    return (
        json.dumps(
            {
                "lower": interval.lower,
                "upper": interval.upper,
                "lower_method": interval.lower_method,
                "upper_method": interval.upper_method,
            },
            indent=2,
        )
        + "\n"
    )


def report_to_json(report):
    return json.dumps(report.to_json_dict(), indent=2) + "\n"

"""Tensor text files, seeded known-rank tensors and the detectable-rank table.

File format (UTF-8, whitespace separated)::

    tensor 3
    dims 2 2 2
    # seed 7
    1 2 3 4 5 6 7 8

Line 1 gives the order, line 2 the dimensions. Lines starting with ``#`` are
comments; ``# key value`` comments are kept as metadata. The remaining tokens
are the entries, first index fastest, written as shortest round-trip decimals.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .detector import max_detectable_rank
from .errors import ParameterError, TensorFormatError, TensorLengthError, TensorParseError
from .tensor_core import CpdModel, DenseTensor, cpd_synthesize

GENERATOR = "PCG64"
DISTRIBUTIONS = ("gaussian", "uniform")


@dataclass
class TensorFile:
    tensor: DenseTensor
    metadata: dict[str, str] = field(default_factory=dict)


def _header(line, keyword, lineno):
    tokens = line.split()
    if not tokens or tokens[0] != keyword:
        raise TensorFormatError(f"expected a '{keyword}' line", lineno)
    try:
        return [int(tok) for tok in tokens[1:]]
    except ValueError:
        raise TensorFormatError(f"non-integer value on '{keyword}' line", lineno) from None


def parse_tensor_file(source) -> TensorFile:
    """Parse a tensor file from a string or a text stream."""
    text = source if isinstance(source, str) else source.read()
    metadata = {}
    headers = []
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 1)
            if parts:
                metadata[parts[0]] = parts[1].strip() if len(parts) > 1 else ""
            continue
        if len(headers) == 0:
            headers.append(_header(line, "tensor", lineno))
            if len(headers[0]) != 1 or headers[0][0] < 1:
                raise TensorFormatError("'tensor' line must hold one positive order", lineno)
            continue
        if len(headers) == 1:
            if not line.startswith("dims"):
                raise TensorFormatError("missing 'dims' line", lineno)
            dims = _header(line, "dims", lineno)
            if len(dims) != headers[0][0]:
                raise TensorFormatError(
                    f"order {headers[0][0]} but {len(dims)} dimensions given", lineno
                )
            if any(d < 1 for d in dims):
                raise TensorFormatError("dimensions must be positive", lineno)
            headers.append(dims)
            continue
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                raise TensorParseError(f"not a number: {tok!r}", lineno) from None
    if not headers:
        raise TensorFormatError("missing 'tensor' line")
    if len(headers) < 2:
        raise TensorFormatError("missing 'dims' line")
    dims = headers[1]
    if len(values) != prod(dims):
        raise TensorLengthError(prod(dims), len(values))
    return TensorFile(DenseTensor(dims, np.array(values)), metadata)


def parse_tensor(source) -> DenseTensor:
    return parse_tensor_file(source).tensor


def format_tensor(t: DenseTensor, metadata=None) -> str:
    out = io.StringIO()
    out.write(f"tensor {t.order}\n")
    out.write("dims " + " ".join(str(d) for d in t.dims) + "\n")
    for key, value in (metadata or {}).items():
        out.write(f"# {key} {value}\n")
    per_line = t.dims[0]
    data = t.data.tolist()
    for start in range(0, len(data), per_line):
        out.write(" ".join(repr(v) for v in data[start : start + per_line]) + "\n")
    return out.getvalue()


def read_tensor(path) -> TensorFile:
    with open(path, encoding="utf-8") as fh:
        return parse_tensor_file(fh)


def write_tensor(path, t: DenseTensor, metadata=None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_tensor(t, metadata))


def synth_tensor(dims, rank: int, seed=None, distribution: str = "gaussian"):
    """Random tensor built from ``rank`` rank-one terms with unit weights.

    Factor entries are i.i.d. standard normal (``gaussian``) or uniform on
    [-1, 1) (``uniform``), drawn mode by mode from a PCG64 generator. ``seed``
    may be anything :func:`numpy.random.default_rng` accepts, including a
    ``Generator``. Returns ``(tensor, model)``.
    """
    if int(rank) < 1:
        raise ParameterError(f"rank must be at least 1, got {rank}")
    if distribution not in DISTRIBUTIONS:
        raise ParameterError(f"unknown distribution {distribution!r}")
    rank = int(rank)
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise ParameterError(f"invalid dimensions {dims}")
    rng = np.random.default_rng(seed)
    if distribution == "gaussian":
        factors = [rng.standard_normal((d, rank)) for d in dims]
    else:
        factors = [rng.uniform(-1.0, 1.0, (d, rank)) for d in dims]
    model = CpdModel(np.ones(rank), factors)
    return cpd_synthesize(model), model


def emit_rmax_table(i_max: int, n_max: int) -> list[tuple[int, int, int]]:
    """``(N, I, R_max)`` for cubical tensors, N in 2..n_max and I in 2..i_max."""
    if i_max < 2 or n_max < 2:
        raise ParameterError("i_max and n_max must both be at least 2")
    return [
        (n, i, max_detectable_rank([i] * n)[0])
        for n in range(2, n_max + 1)
        for i in range(2, i_max + 1)
    ]


def write_rmax_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["N", "I", "R_max"])
    writer.writerows(rows)

"""
Binary field format (version CRIDE1).

Byte layout, all little-endian, no padding:

    offset  size  type     content
    0       6     bytes    magic b"CRIDE1"
    6       4     uint32   n (points per axis)
    10      1     uint8    number of components: 1 (scalar) or 3 (vector)
    11      8     float64  dealias_fraction
    19      1     uint8    zero-mean flag (0 or 1)
    20      ...   float64  coefficients as interleaved (re, im) pairs

Coefficients are written in row-major order over (component, k1, k2, k3).
Each wavenumber axis is in FFT order: 0, 1, ..., n/2-1, -n/2, ..., -1.
That makes n^3 * ncomp * 16 bytes after the header. The coefficients use the
1/n^3 forward normalization, so coeff(0) is the box mean.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from core.exceptions import FieldError
from fields.grid import GridSpec
from fields.spectral import SpectralField

MAGIC = b"CRIDE1"
_HEADER = struct.Struct("<6sIBdB")
HEADER_SIZE = _HEADER.size


def encode_field(f: SpectralField) -> bytes:
    ncomp = 3 if f.is_vector else 1
    header = _HEADER.pack(MAGIC, f.grid.n, ncomp, float(f.grid.dealias_fraction), 1 if f.zero_mean else 0)
    body = np.ascontiguousarray(f.coeffs, dtype="<c16").tobytes(order="C")
    return header + body


def decode_field(data: bytes) -> SpectralField:
    if len(data) < HEADER_SIZE:
        raise FieldError(f"field file: truncated header ({len(data)} bytes)")
    magic, n, ncomp, fraction, zero_mean = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FieldError(f"field file: bad magic {magic!r}")
    if ncomp not in (1, 3):
        raise FieldError(f"field file: invalid component count {ncomp}")
    if zero_mean not in (0, 1):
        raise FieldError(f"field file: invalid zero-mean flag {zero_mean}")

    grid = GridSpec(n=int(n), dealias_fraction=float(fraction))
    expected = ncomp * n**3 * 16
    body = data[HEADER_SIZE:]
    if len(body) != expected:
        raise FieldError(f"field file: expected {expected} coefficient bytes, got {len(body)}")

    coeffs = np.frombuffer(body, dtype="<c16").astype(np.complex128)
    shape = grid.shape if ncomp == 1 else (3,) + grid.shape
    return SpectralField(grid, coeffs.reshape(shape), zero_mean=bool(zero_mean))


def save_field(f: SpectralField, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(encode_field(f))
    return p


def load_field(path: str | Path) -> SpectralField:
    p = Path(path)
    if not p.exists():
        raise FieldError(f"field file not found: {p}")
    return decode_field(p.read_bytes())

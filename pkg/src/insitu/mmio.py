"""Reading and writing matrices as text.

Two formats are accepted:

* Matrix Market, ``%%MatrixMarket matrix (coordinate|array)
  (real|complex|integer) general``. Array data is column-major; complex
  entries are two numbers ``re im``.
* Dense text: one matrix row per line, whitespace-separated entries,
  complex numbers written ``re+imi`` (``3``, ``-2.5i``, ``1e-3-4i``).
  Blank lines and ``#`` comments are ignored.

Numbers are written with ``repr`` so a write/read round trip is exact.
"""
from __future__ import annotations

import io
import re

import numpy as np

from .errors import ParseError
from .matcore import DTYPE

_HEADER = re.compile(r"%%MatrixMarket\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s*$", re.IGNORECASE)
_IMAG_UNIT = re.compile(r"[ij]$")


def parse_complex(token: str, lineno: int | None = None) -> complex:
    """Parse ``re+imi`` style text (``i`` or ``j`` as the imaginary unit)."""
    text = token.strip()
    try:
        value = complex(_IMAG_UNIT.sub("j", text)) if _IMAG_UNIT.search(text) else complex(float(text))
    except ValueError:
        raise ParseError(f"bad number {token!r}", lineno) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite number {token!r}", lineno)
    return value


def format_complex(z: complex) -> str:
    """``re+imi`` form that :func:`parse_complex` reads back exactly."""
    z = complex(z)
    if z.imag == 0 and not np.signbit(z.imag):
        return repr(z.real)
    sign = "-" if np.signbit(z.imag) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _lines(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return text.splitlines()


def parse_matrix_market(text) -> np.ndarray:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    match = _HEADER.match(lines[0].strip())
    if not match:
        raise ParseError("expected '%%MatrixMarket matrix <format> <field> general' header", 1)
    obj, fmt, field, symmetry = (g.lower() for g in match.groups())
    if obj != "matrix":
        raise ParseError(f"unsupported object {obj!r}", 1)
    if fmt not in ("coordinate", "array"):
        raise ParseError(f"unsupported format {fmt!r}", 1)
    if field not in ("real", "complex", "integer"):
        raise ParseError(f"unsupported field {field!r}", 1)
    if symmetry != "general":
        raise ParseError(f"unsupported symmetry {symmetry!r}", 1)
    width = 2 if field == "complex" else 1

    body = [(k + 1, ln.split()) for k, ln in enumerate(lines) if k > 0 and ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing size line", len(lines))
    size_lineno, size = body[0]
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError("size line must contain integers", size_lineno) from None
    expect = 3 if fmt == "coordinate" else 2
    if len(dims) != expect:
        raise ParseError(f"size line needs {expect} integers", size_lineno)
    m, n = dims[0], dims[1]
    if m < 1 or n < 1:
        raise ParseError("matrix dimensions must be positive", size_lineno)

    def value(tokens, lineno):
        try:
            parts = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"bad {field} value {' '.join(tokens)!r}", lineno) from None
        if field == "integer" and any(not p.is_integer() for p in parts):
            raise ParseError("non-integer value in integer matrix", lineno)
        z = complex(parts[0], parts[1]) if width == 2 else complex(parts[0])
        if not np.isfinite(z):
            raise ParseError("non-finite value", lineno)
        return z

    out = np.zeros((m, n), dtype=DTYPE)
    entries = body[1:]
    if fmt == "array":
        if len(entries) != m * n:
            raise ParseError(f"expected {m * n} entries, found {len(entries)}", entries[-1][0] if entries else size_lineno)
        for k, (lineno, tokens) in enumerate(entries):
            if len(tokens) != width:
                raise ParseError(f"expected {width} value(s) per line", lineno)
            out[k % m, k // m] = value(tokens, lineno)
    else:
        nnz = dims[2]
        if len(entries) != nnz:
            raise ParseError(f"expected {nnz} entries, found {len(entries)}", entries[-1][0] if entries else size_lineno)
        for lineno, tokens in entries:
            if len(tokens) != 2 + width:
                raise ParseError(f"expected row, column and {width} value(s)", lineno)
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError("bad index", lineno) from None
            if not (1 <= i <= m and 1 <= j <= n):
                raise ParseError(f"index ({i},{j}) out of bounds for {m}x{n}", lineno)
            out[i - 1, j - 1] += value(tokens[2:], lineno)
    return out


def write_matrix_market(a, stream=None, comment: str | None = None) -> str:
    """Array-format Matrix Market text (``real`` when every imaginary part is +0)."""
    a = np.asarray(a, dtype=DTYPE)
    if a.ndim == 1:
        a = a[:, None]
    real = not np.any(a.imag) and not np.any(np.signbit(a.imag))
    buf = io.StringIO()
    buf.write(f"%%MatrixMarket matrix array {'real' if real else 'complex'} general\n")
    if comment:
        for line in comment.splitlines():
            buf.write(f"% {line}\n")
    buf.write(f"{a.shape[0]} {a.shape[1]}\n")
    for z in a.T.ravel():
        buf.write(f"{float(z.real)!r}\n" if real else f"{float(z.real)!r} {float(z.imag)!r}\n")
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def parse_dense(text) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(_lines(text), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append((lineno, [parse_complex(t, lineno) for t in line.split()]))
    if not rows:
        raise ParseError("no data rows", None)
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(f"row has {len(row)} entries, expected {width}", lineno)
    return np.array([r for _, r in rows], dtype=DTYPE)


def write_dense(a) -> str:
    a = np.atleast_2d(np.asarray(a, dtype=DTYPE))
    return "".join(" ".join(format_complex(z) for z in row) + "\n" for row in a)


def parse_matrix(text) -> np.ndarray:
    """Dispatch on the header: Matrix Market if present, dense text otherwise."""
    lines = _lines(text)
    first = next((ln for ln in lines if ln.strip()), "")
    if first.lstrip().lower().startswith("%%matrixmarket"):
        return parse_matrix_market(text)
    return parse_dense(text)


def parse_vector(text) -> np.ndarray:
    """A vector stored as an m x 1 or 1 x m matrix in either format."""
    a = parse_matrix(text)
    if a.shape[0] != 1 and a.shape[1] != 1:
        raise ParseError(f"expected a vector, got a {a.shape[0]}x{a.shape[1]} matrix")
    return a.ravel()


def read_matrix(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_matrix(fh.read())


def read_vector(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_vector(fh.read())

"""Reader for the plain-text state file.

Example::

    # |+><+| measured in Z and X
    dim: 2
    matrix:
      0.5+0i 0.5+0i
      0.5+0i 0.5+0i
    basis Z:
      1 0
      0 1
    basis X:
      0.7071067811865476 0.7071067811865476
      0.7071067811865476 -0.7071067811865476

Instead of ``matrix:`` a qubit may be given as ``bloch: x y z``. Complex
entries are written ``re+imi`` (``j`` is accepted too). Each row of a basis
block is one basis vector; rows are normalized on reading. Exactly two
basis blocks are required.
"""
from dataclasses import dataclass

import numpy as np

from . import numlin
from .errors import InvalidInputError, QucohError


class StateFileError(QucohError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


@dataclass
class StateFile:
    dim: int
    rho: np.ndarray
    bases: dict  # label -> basis matrix, vectors as columns


def parse_complex(token, line):
    text = token.strip().replace("i", "j")
    try:
        return complex(text)
    except ValueError:
        raise StateFileError(f"cannot parse complex number {token!r}", line) from None


def _rows(lines, start, count, width, what):
    """Read ``count`` rows of ``width`` numbers starting at index ``start``."""
    rows = []
    i = start
    while len(rows) < count:
        if i >= len(lines):
            raise StateFileError(f"{what}: expected {count} rows, found {len(rows)}",
                                 lines[-1][0] if lines else None)
        lineno, text = lines[i]
        tokens = text.split()
        if len(tokens) != width:
            raise StateFileError(f"{what}: expected {width} entries, found {len(tokens)}", lineno)
        rows.append([parse_complex(t, lineno) for t in tokens])
        i += 1
    return np.array(rows, dtype=complex), i


def parse_state_text(text):
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))

    dim = None
    rho = None
    rho_line = None
    bases = {}
    i = 0
    while i < len(lines):
        lineno, text_line = lines[i]
        key, sep, rest = text_line.partition(":")
        key = key.strip()
        if not sep:
            raise StateFileError(f"expected 'key:' line, got {text_line!r}", lineno)
        if key == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise StateFileError(f"dim must be an integer, got {rest.strip()!r}", lineno) from None
            if not 2 <= dim <= 8:
                raise StateFileError(f"dim must lie in [2, 8], got {dim}", lineno)
            i += 1
        elif key in ("bloch", "matrix"):
            if dim is None:
                raise StateFileError("dim must be declared before the state", lineno)
            if rho is not None:
                raise StateFileError("state given twice", lineno)
            rho_line = lineno
            if key == "bloch":
                if dim != 2:
                    raise StateFileError("bloch representation requires dim: 2", lineno)
                parts = rest.split()
                if len(parts) != 3:
                    raise StateFileError("bloch needs three components", lineno)
                try:
                    r = np.array([float(p) for p in parts])
                except ValueError:
                    raise StateFileError(f"cannot parse Bloch vector {rest.strip()!r}", lineno) from None
                if np.linalg.norm(r) > 1 + numlin.NUMERIC_TOL:
                    raise StateFileError(f"Bloch vector norm {np.linalg.norm(r):.12g} exceeds 1 "
                                         "(invariant: positive)", lineno)
                rho = numlin.state_from_bloch(r)
                i += 1
            else:
                if rest.strip():
                    raise StateFileError("matrix rows go on the following lines", lineno)
                rho, i = _rows(lines, i + 1, dim, dim, "matrix")
        elif key.startswith("basis"):
            if dim is None:
                raise StateFileError("dim must be declared before bases", lineno)
            label = key[len("basis"):].strip() or f"B{len(bases) + 1}"
            if label in bases:
                raise StateFileError(f"basis {label!r} given twice", lineno)
            vectors, i = _rows(lines, i + 1, dim, dim, f"basis {label}")
            norms = np.linalg.norm(vectors, axis=1)
            if np.any(norms < 1e-12):
                raise StateFileError(f"basis {label} contains a zero vector", lineno)
            basis = (vectors / norms[:, None]).T
            try:
                numlin.validate_basis(basis)
            except InvalidInputError as exc:
                raise StateFileError(f"basis {label}: {exc} (invariant: {exc.invariant})",
                                     lineno) from None
            bases[label] = basis
        else:
            raise StateFileError(f"unknown key {key!r}", lineno)

    if dim is None:
        raise StateFileError("missing 'dim:' line")
    if rho is None:
        raise StateFileError("missing state ('bloch:' or 'matrix:')")
    if len(bases) != 2:
        raise StateFileError(f"expected exactly two basis blocks, found {len(bases)}")
    try:
        rho = numlin.validate_density_matrix(rho)
    except InvalidInputError as exc:
        raise StateFileError(f"{exc} (invariant: {exc.invariant})", rho_line) from None
    return StateFile(dim, rho, bases)


def read_state_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_state_text(fh.read())

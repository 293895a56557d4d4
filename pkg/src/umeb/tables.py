"""Plain-text tables of state sets, one row per state.

In symbolic mode each row is rescaled by ``sqrt(d)`` so entries are 0 or
d-th roots of unity, printed as ``1``, ``-1``, ``w``, ``w^2``, ... where
``w = exp(2*pi*i/d)`` (``ω``, ``ω²`` with ``unicode=True``). Rows are first
brought to canonical phase, so globally rephased inputs print identically.
"""

from __future__ import annotations

import cmath
import math
import warnings

from .construct import PROP1, PROP2, StateSet
from .linalg import canonical_phase

GRID_TOL = 1e-10
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class OffGridWarning(UserWarning):
    """Symbolic rendering was requested for amplitudes off the root-of-unity grid."""


def column_order(state_set: StateSet) -> list[tuple[int, int]]:
    """Product kets in table-column order.

    prop1: one ``d x d`` block per ``l`` (first index major), then the
    trailing complement columns. prop2: the first ``m`` columns for each
    first index, then the complement columns. Otherwise flat order.
    """
    dims = state_set.dims
    d, dp = dims.d, dims.d_prime
    if state_set.provenance == PROP1:
        cols = []
        for l in range(dims.q):
            cols += [(i, j) for i in range(d) for j in range(l * d, (l + 1) * d)]
        cols += [(i, j) for i in range(d) for j in range(dims.q * d, dp)]
        return cols
    if state_set.provenance == PROP2:
        m = state_set.m_param
        return [(i, j) for i in range(d) for j in range(m)] + [
            (i, j) for i in range(d) for j in range(m, dp)
        ]
    return [(i, j) for i in range(d) for j in range(dp)]


def ket_label(i: int, j: int, d_prime: int) -> str:
    return f"{i}{j}" if d_prime <= 10 else f"{i},{j}"


def root_token(t: int, d: int, unicode: bool = False) -> str:
    """Token for ``w^t`` with ``w = exp(2*pi*i/d)``."""
    t %= d
    if t == 0:
        return "1"
    if 2 * t == d:
        return "-1"
    base = "ω" if unicode else "w"
    if t == 1:
        return base
    return base + (str(t).translate(_SUPERSCRIPT) if unicode else f"^{t}")


def symbolic_token(value: complex, d: int, unicode: bool = False):
    """Token for ``value`` if it is 0 or a d-th root of unity, else None."""
    if abs(value) <= GRID_TOL:
        return "0"
    t = round(cmath.phase(value) * d / (2 * math.pi)) % d
    if abs(value - cmath.exp(2j * math.pi * t / d)) > GRID_TOL:
        return None
    return root_token(t, d, unicode)


def numeric_token(value: complex, precision: int) -> str:
    eps = 0.5 * 10.0**-precision
    re = value.real if abs(value.real) >= eps else 0.0
    im = value.imag if abs(value.imag) >= eps else 0.0
    if im == 0.0:
        return f"{re:.{precision}f}"
    if re == 0.0:
        return f"{im:.{precision}f}i"
    return f"{re:.{precision}f}{im:+.{precision}f}i"


def _layout(header, rows) -> str:
    width = max(len(tok) for row in [header, *rows] for tok in row)
    lines = [" ".join(tok.rjust(width) for tok in row) for row in [header, *rows]]
    return "\n".join(lines) + "\n"


def render_table(
    state_set: StateSet,
    symbolic: bool = True,
    unicode: bool = False,
    precision: int = 4,
) -> str:
    dims = state_set.dims
    cols = column_order(state_set)
    flat = [dims.flat_index(i, j) for i, j in cols]
    header = [ket_label(i, j, dims.d_prime) for i, j in cols]
    amps = [canonical_phase(v).amplitudes[flat] for v in state_set.vectors]
    if symbolic:
        scale = math.sqrt(dims.d)
        rows = [[symbolic_token(a * scale, dims.d, unicode) for a in row] for row in amps]
        if all(tok is not None for row in rows for tok in row):
            return _layout(header, rows)
        warnings.warn(
            "amplitudes are not all 0 or roots of unity over sqrt(d); printing numeric table",
            OffGridWarning,
            stacklevel=2,
        )
    rows = [[numeric_token(complex(a), precision) for a in row] for row in amps]
    return _layout(header, rows)

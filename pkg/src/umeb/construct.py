"""Closed-form UMEB families in C^d (x) C^d' for d < d'.

Two generators are provided:

``construct_prop1``
    For ``d' = q*d + r`` with ``0 < r < d``: ``q`` stacked copies of the
    generalized Bell basis, one per block of ``d`` consecutive columns of
    the second subsystem, giving ``q*d**2`` states.
``construct_prop2``
    For an admissible modulus ``m`` (see :func:`allowed_m_values`): shifted
    diagonals ``|k>|(k + j) mod m>`` with Fourier phases, giving ``d*m``
    states.

In both cases the orthogonal complement is spanned by product kets living in
fewer than ``d`` columns, which is what makes the set unextendible.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidInputError
from .linalg import BipartiteDims, StateVector, SubspaceBasis

PROP1 = "prop1"
PROP2 = "prop2"
IMPORTED = "imported"
PROVENANCES = (PROP1, PROP2, IMPORTED)


@dataclass(frozen=True)
class Prop1Label:
    n: int
    m: int
    l: int

    def __str__(self):
        return f"phi(n={self.n},m={self.m},l={self.l})"


@dataclass(frozen=True)
class Prop2Label:
    i: int
    j: int

    def __str__(self):
        return f"phi(i={self.i},j={self.j})"


@dataclass(frozen=True)
class ExternalLabel:
    name: str

    def __str__(self):
        return self.name


StateLabel = Union[Prop1Label, Prop2Label, ExternalLabel]

_PROP1_RE = re.compile(r"phi\(n=(\d+),m=(\d+),l=(\d+)\)")
_PROP2_RE = re.compile(r"phi\(i=(\d+),j=(\d+)\)")


def parse_label(text: str, provenance: str) -> StateLabel:
    """Inverse of ``str(label)``; unknown spellings become external labels."""
    if provenance == PROP1:
        match = _PROP1_RE.fullmatch(text)
        if match:
            return Prop1Label(*map(int, match.groups()))
    elif provenance == PROP2:
        match = _PROP2_RE.fullmatch(text)
        if match:
            return Prop2Label(*map(int, match.groups()))
    return ExternalLabel(text)


@dataclass(frozen=True, eq=False)
class StateSet:
    """Ordered, labelled states plus the recipe that produced them."""

    dims: BipartiteDims
    states: tuple
    provenance: str = IMPORTED
    m_param: Optional[int] = None

    def __post_init__(self):
        states = tuple((label, vec) for label, vec in self.states)
        object.__setattr__(self, "states", states)
        if not states:
            raise InvalidInputError("a state set needs at least one state")
        if self.provenance not in PROVENANCES:
            raise InvalidInputError(f"unknown provenance {self.provenance!r}")
        for label, vec in states:
            if vec.dims != self.dims:
                raise InvalidInputError(f"state {label} lives in {vec.dims}, set is {self.dims}")
        d, q = self.dims.d, self.dims.q
        if self.provenance == PROP1:
            if len(states) != q * d * d:
                raise InvalidInputError(f"prop1 set must have q*d^2 = {q * d * d} states")
            for label, _ in states:
                if not (
                    isinstance(label, Prop1Label)
                    and 0 <= label.n < d
                    and 0 <= label.m < d
                    and 1 <= label.l <= q
                ):
                    raise InvalidInputError(f"bad prop1 label {label}")
        elif self.provenance == PROP2:
            if self.m_param is None:
                raise InvalidInputError("prop2 set needs m_param")
            if len(states) != d * self.m_param:
                raise InvalidInputError(f"prop2 set must have d*m = {d * self.m_param} states")
            for label, _ in states:
                if not (
                    isinstance(label, Prop2Label)
                    and 0 <= label.i < d
                    and 0 <= label.j < self.m_param
                ):
                    raise InvalidInputError(f"bad prop2 label {label}")

    def __len__(self):
        return len(self.states)

    @property
    def labels(self):
        return tuple(label for label, _ in self.states)

    @property
    def vectors(self):
        return tuple(vec for _, vec in self.states)

    def matrix(self) -> np.ndarray:
        return np.array([vec.amplitudes for _, vec in self.states])

    def as_basis(self, label: str = "V1") -> SubspaceBasis:
        return SubspaceBasis(self.dims, self.vectors, label)

    @classmethod
    def imported(cls, dims: BipartiteDims, vectors, names=None) -> "StateSet":
        vectors = tuple(vectors)
        names = names or [f"psi{k}" for k in range(len(vectors))]
        return cls(dims, tuple(zip(map(ExternalLabel, names), vectors)), IMPORTED)

    def without(self, index: int) -> "StateSet":
        """Copy with one state dropped; the result no longer carries a recipe."""
        kept = self.states[:index] + self.states[index + 1 :]
        return StateSet(self.dims, kept, IMPORTED)

    def with_state(self, label: StateLabel, vec: StateVector) -> "StateSet":
        return StateSet(self.dims, self.states + ((label, vec),), IMPORTED)


def root_of_unity(d: int, exponent: int) -> complex:
    """``exp(2*pi*i*exponent/d)``, exact on quarter turns."""
    t = exponent % d
    quarter, rem = divmod(4 * t, d)
    if rem == 0:
        return (1, 1j, -1, -1j)[quarter]
    return cmath.exp(2j * cmath.pi * t / d)


def shift_mod(k: int, j: int, modulus: int) -> int:
    """``k (+) j``: cyclic shift ``(k + j) mod modulus``."""
    return (k + j) % modulus


def construct_prop1(dims: BipartiteDims) -> StateSet:
    """The ``q*d**2`` states ``(1/sqrt d) sum_p w^(n p) |p (+) m>|(l-1) d + p>``.

    ``(+)`` is addition mod ``d`` on the first factor only. States are ordered
    by ``(l, m, n)`` with ``n`` fastest.
    """
    dims.require_rectangular()
    d, q, r = dims.d, dims.q, dims.r
    if r == 0:
        raise InvalidInputError(
            f"prop1 needs r = d' mod d > 0, got r=0 for d={d}, d'={dims.d_prime}: "
            f"the q*d^2 = {q * d * d} states would already span the whole space"
        )
    amp = 1.0 / np.sqrt(d)
    states = []
    for l in range(1, q + 1):
        for m in range(d):
            for n in range(d):
                vec = np.zeros(dims.size, dtype=complex)
                for p in range(d):
                    vec[dims.flat_index(shift_mod(p, m, d), (l - 1) * d + p)] = (
                        root_of_unity(d, n * p) * amp
                    )
                states.append((Prop1Label(n, m, l), StateVector(dims, vec)))
    return StateSet(dims, tuple(states), PROP1)


def allowed_m_values(dims: BipartiteDims) -> tuple[int, ...]:
    """Admissible moduli for :func:`construct_prop2`, ascending."""
    dims.require_rectangular()
    d, dp = dims.d, dims.d_prime
    if dp >= 2 * d:
        return tuple(range(dp - d + 1, dp))
    r = dp - d
    return tuple(range(dp - r, dp))


def construct_prop2(dims: BipartiteDims, m_param: int) -> StateSet:
    """The ``d*m`` states ``(1/sqrt d) sum_k w^(k i) |k>|(k + j) mod m>``.

    The shift is taken mod ``m`` on the second factor. States are ordered by
    ``(j, i)`` with ``i`` fastest.
    """
    allowed = allowed_m_values(dims)
    if m_param not in allowed:
        raise InvalidInputError(
            f"m={m_param} is not admissible for d={dims.d}, d'={dims.d_prime}; "
            f"choose m in {{{', '.join(map(str, allowed))}}}"
        )
    d = dims.d
    amp = 1.0 / np.sqrt(d)
    states = []
    for j in range(m_param):
        for i in range(d):
            vec = np.zeros(dims.size, dtype=complex)
            for k in range(d):
                vec[dims.flat_index(k, shift_mod(k, j, m_param))] = root_of_unity(d, k * i) * amp
            states.append((Prop2Label(i, j), StateVector(dims, vec)))
    return StateSet(dims, tuple(states), PROP2, m_param)


def construction_columns(state_set: StateSet) -> int:
    """Number of leading second-subsystem columns the construction occupies."""
    if state_set.provenance == PROP1:
        return state_set.dims.q * state_set.dims.d
    if state_set.provenance == PROP2:
        return state_set.m_param
    raise InvalidInputError("imported sets have no closed-form column range")


def complement_product_kets(state_set: StateSet) -> SubspaceBasis:
    """Closed-form complement: all |i>|j> with ``j`` past the construction's columns."""
    if state_set.provenance == IMPORTED:
        raise InvalidInputError(
            "imported sets have no closed-form complement; use orthonormal_complement"
        )
    dims = state_set.dims
    start = construction_columns(state_set)
    kets = tuple(
        StateVector.product_ket(dims, i, j) for i in range(dims.d) for j in range(start, dims.d_prime)
    )
    return SubspaceBasis(dims, kets, label="complement")


@dataclass(frozen=True)
class Construction:
    method: str
    m_param: Optional[int]
    size: int

    def build(self, dims: BipartiteDims) -> StateSet:
        if self.method == PROP1:
            return construct_prop1(dims)
        return construct_prop2(dims, self.m_param)


def available_constructions(dims: BipartiteDims) -> list[Construction]:
    """Every closed-form UMEB available for ``dims`` with its member count."""
    dims.require_rectangular()
    options = []
    if dims.r > 0:
        options.append(Construction(PROP1, None, dims.q * dims.d**2))
    for m in allowed_m_values(dims):
        options.append(Construction(PROP2, m, dims.d * m))
    return options


def build(dims: BipartiteDims, method: str, m_param: Optional[int] = None) -> StateSet:
    if method == PROP1:
        return construct_prop1(dims)
    if method == PROP2:
        if m_param is None:
            raise InvalidInputError(
                f"prop2 needs m; admissible values: {list(allowed_m_values(dims))}"
            )
        return construct_prop2(dims, m_param)
    raise InvalidInputError(f"unknown method {method!r}")

"""Dense linear algebra for pure states of C^d (x) C^d'.

Amplitudes are stored in the computational product basis with the first
subsystem as the major index: the ket |i>|j> sits at flat position
``i * d_prime + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, NotOrthonormalError

TOL_NORM = 1e-10
TOL_ORTH = 1e-10
TOL_RANK = 1e-8


@dataclass(frozen=True)
class BipartiteDims:
    """Local dimensions ``(d, d_prime)`` with ``2 <= d <= d_prime``.

    ``q`` and ``r`` are always recomputed from ``d_prime = q * d + r``.
    The square case ``d == d_prime`` is allowed so that small reference
    systems (e.g. the two-qubit Bell basis) can be expressed; the
    constructions themselves require ``d < d_prime``.
    """

    d: int
    d_prime: int

    def __post_init__(self):
        for name in ("d", "d_prime"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
        if self.d < 2:
            raise InvalidInputError(f"d must be at least 2, got {self.d}")
        if self.d_prime < self.d:
            raise InvalidInputError(
                f"expected d <= d_prime, got d={self.d}, d_prime={self.d_prime}"
            )
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "d_prime", int(self.d_prime))

    @property
    def q(self) -> int:
        return self.d_prime // self.d

    @property
    def r(self) -> int:
        return self.d_prime % self.d

    @property
    def size(self) -> int:
        """Dimension ``d * d_prime`` of the joint space."""
        return self.d * self.d_prime

    def flat_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.d and 0 <= j < self.d_prime):
            raise InvalidInputError(f"ket |{i},{j}> out of range for {self}")
        return i * self.d_prime + j

    def ket_of(self, flat: int) -> tuple[int, int]:
        return divmod(flat, self.d_prime)

    def require_rectangular(self):
        if self.d >= self.d_prime:
            raise InvalidInputError(
                f"construction needs d < d_prime, got d={self.d}, d_prime={self.d_prime}"
            )

    def __str__(self):
        return f"C^{self.d} x C^{self.d_prime}"


def _frozen_array(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized pure state of a bipartite system."""

    dims: BipartiteDims
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen_array(self.amplitudes).reshape(-1)
        if amps.shape != (self.dims.size,):
            raise DimensionMismatchError(
                f"expected {self.dims.size} amplitudes for {self.dims}, got {amps.size}"
            )
        norm = np.linalg.norm(amps)
        if not abs(norm - 1.0) <= TOL_NORM:
            raise InvalidInputError(f"state is not normalized: norm = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, dims: BipartiteDims, values) -> "StateVector":
        """Build a state from unnormalized amplitudes."""
        amps = np.asarray(values, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidInputError("cannot normalize the zero vector")
        return cls(dims, amps / norm)

    @classmethod
    def from_kets(cls, dims: BipartiteDims, kets: Mapping[tuple[int, int], complex]) -> "StateVector":
        """Normalized superposition of product kets, e.g. ``{(0, 0): 1, (1, 1): 1}``."""
        amps = np.zeros(dims.size, dtype=complex)
        for (i, j), value in kets.items():
            amps[dims.flat_index(i, j)] += value
        return cls.normalized(dims, amps)

    @classmethod
    def product_ket(cls, dims: BipartiteDims, i: int, j: int) -> "StateVector":
        amps = np.zeros(dims.size, dtype=complex)
        amps[dims.flat_index(i, j)] = 1.0
        return cls(dims, amps)

    def __mul__(self, phase):
        return StateVector.normalized(self.dims, self.amplitudes * phase)

    __rmul__ = __mul__

    def __repr__(self):
        return f"StateVector({self.dims.d}x{self.dims.d_prime}, {np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Descending Schmidt coefficients of a state (length ``d``)."""

    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_array(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise InvalidInputError("Schmidt spectrum must be a non-empty 1-d sequence")
        if np.any(vals < 0) or np.any(np.diff(vals) > 0):
            raise InvalidInputError("Schmidt spectrum must be non-negative and descending")
        if abs(float(np.sum(vals**2)) - 1.0) > 1e-9:
            raise InvalidInputError("squared Schmidt coefficients must sum to 1")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __getitem__(self, k):
        return float(self.values[k])

    @property
    def min(self) -> float:
        return float(self.values[-1])

    def deviation_from_maximal(self) -> float:
        """Largest ``|sigma_k - 1/sqrt(d)|``."""
        return float(np.max(np.abs(self.values - 1.0 / np.sqrt(self.values.size))))


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """An ordered family of states meant to be orthonormal.

    Orthonormality is not enforced on construction; operations that rely on
    it call :func:`check_orthonormal_vectors` and report the offending pair.
    """

    dims: BipartiteDims
    vectors: tuple
    label: str = ""
    _matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vectors = tuple(self.vectors)
        if not 0 < len(vectors) <= self.dims.size:
            raise InvalidInputError(
                f"a basis needs between 1 and {self.dims.size} vectors, got {len(vectors)}"
            )
        for v in vectors:
            if v.dims != self.dims:
                raise DimensionMismatchError(f"vector in {v.dims} added to basis of {self.dims}")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "_matrix", _frozen_array([v.amplitudes for v in vectors]))

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def matrix(self) -> np.ndarray:
        """Rows are the amplitude vectors."""
        return self._matrix

    def projector(self) -> np.ndarray:
        a = self._matrix
        return a.T @ a.conj()


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.dims != b.dims:
        raise DimensionMismatchError(f"cannot pair a state in {a.dims} with one in {b.dims}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def reshape(s: StateVector) -> np.ndarray:
    """The ``d x d'`` coefficient matrix, entry ``(i, j)`` = amplitude of |i>|j>."""
    return s.amplitudes.reshape(s.dims.d, s.dims.d_prime)


def singular_values(matrix: np.ndarray) -> np.ndarray:
    # LinAlgError on non-convergence propagates: a wrong spectrum is worse than none.
    return np.linalg.svd(matrix, compute_uv=False)


def schmidt_spectrum(s: StateVector) -> SchmidtSpectrum:
    values = np.clip(singular_values(reshape(s)), 0.0, None)
    return SchmidtSpectrum(np.sort(values)[::-1])


def schmidt_rank(s: StateVector, tol: float = TOL_RANK) -> int:
    if not tol > 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    return int(np.count_nonzero(schmidt_spectrum(s).values > tol))


def gram_matrix(vectors: np.ndarray) -> np.ndarray:
    """``G[a, b] = <v_a|v_b>`` for the rows of ``vectors``."""
    return vectors.conj() @ vectors.T


def gram_residual(vectors: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Max entrywise ``|G - I|`` and the index pair where it occurs."""
    dev = np.abs(gram_matrix(vectors) - np.eye(vectors.shape[0]))
    flat = int(np.argmax(dev))
    a, b = divmod(flat, dev.shape[1])
    return float(dev[a, b]), (min(a, b), max(a, b))


def check_orthonormal_vectors(vectors: np.ndarray, tol: float = TOL_ORTH):
    residual, pair = gram_residual(vectors)
    if residual > tol:
        raise NotOrthonormalError(
            f"vectors {pair[0]} and {pair[1]} violate orthonormality: "
            f"|G - I| = {residual:.3e} > {tol:.1e}",
            pair,
            residual,
        )


def orthonormal_complement(basis: SubspaceBasis, tol: float = TOL_ORTH) -> SubspaceBasis:
    """Orthonormal basis of the orthogonal complement of ``span(basis)``."""
    a = basis.matrix()
    check_orthonormal_vectors(a, tol)
    n, total = a.shape
    if n == total:
        raise InvalidInputError("basis spans the whole space; its complement is empty")
    # x is orthogonal to every row a_k iff conj(A) x = 0.
    _, _, vh = np.linalg.svd(a.conj(), full_matrices=True)
    null = vh[n:].conj()
    vectors = tuple(StateVector.normalized(basis.dims, row) for row in null)
    return SubspaceBasis(basis.dims, vectors, label="complement")


def canonical_phase(s: StateVector, tol: float = 1e-12) -> StateVector:
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    amps = s.amplitudes
    nonzero = np.flatnonzero(np.abs(amps) > tol)
    if nonzero.size == 0:
        return s
    lead = amps[nonzero[0]]
    return StateVector(s.dims, amps * (abs(lead) / lead))


def phase_distance(a: StateVector, b: StateVector) -> float:
    """Euclidean distance between canonical-phase representatives."""
    if a.dims != b.dims:
        raise DimensionMismatchError(f"cannot compare {a.dims} with {b.dims}")
    return float(np.linalg.norm(canonical_phase(a).amplitudes - canonical_phase(b).amplitudes))


def projector_distance(a: SubspaceBasis, b: SubspaceBasis) -> float:
    """Frobenius norm of the difference of the two orthogonal projectors."""
    return float(np.linalg.norm(a.projector() - b.projector()))


def basis_from_states(dims: BipartiteDims, states: Iterable[StateVector], label: str = "") -> SubspaceBasis:
    return SubspaceBasis(dims, tuple(states), label)


def bell_basis() -> Sequence[StateVector]:
    """The four two-qubit Bell states, used as reference inputs."""
    dims = BipartiteDims(2, 2)
    return (
        StateVector.from_kets(dims, {(0, 0): 1, (1, 1): 1}),
        StateVector.from_kets(dims, {(0, 0): 1, (1, 1): -1}),
        StateVector.from_kets(dims, {(0, 1): 1, (1, 0): 1}),
        StateVector.from_kets(dims, {(0, 1): 1, (1, 0): -1}),
    )

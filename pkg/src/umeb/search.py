"""Numerical search for a maximally entangled vector inside a subspace.

``numerical_search`` maximizes the smallest Schmidt coefficient of
``sum_k c_k b_k`` over unit coefficient vectors ``c``. A value reaching
``1/sqrt(d)`` exhibits a maximally entangled vector in the subspace, which
proves extendibility. A lower value is evidence only: the search is
one-sided.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import get_kernel
from .errors import InvalidInputError
from .linalg import StateVector, SubspaceBasis, check_orthonormal_vectors, singular_values

DEFAULT_RESTARTS = 32
DEFAULT_STEPS = 500
DEFAULT_SEED = 0
ME_THRESHOLD = 1e-6


def default_seed() -> int:
    """Seed from ``UMEB_SEED`` if set, else 0."""
    raw = os.environ.get("UMEB_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"UMEB_SEED must be an integer, got {raw!r}") from exc


@dataclass(frozen=True, eq=False)
class NumericalCertificate:
    """Outcome of a complement search.

    ``best_min_schmidt`` is the largest smallest-Schmidt-coefficient found,
    witnessed by ``best_vector``. ``restart_values`` lists the per-restart
    optimum in restart order.
    """

    best_min_schmidt: float
    best_vector: StateVector
    restarts: int
    seed: int
    steps: int
    restart_values: tuple
    backend: str
    threshold: float = ME_THRESHOLD

    kind = "numerical"

    @property
    def target(self) -> float:
        return float(1.0 / np.sqrt(self.best_vector.dims.d))

    @property
    def found_maximally_entangled(self) -> bool:
        return bool(self.best_min_schmidt >= self.target - self.threshold)

    @property
    def valid(self) -> bool:
        """True when no maximally entangled vector was found (evidence, not proof)."""
        return not self.found_maximally_entangled

    def to_dict(self):
        amps = self.best_vector.amplitudes
        return {
            "kind": self.kind,
            "best_min_schmidt": self.best_min_schmidt,
            "target": self.target,
            "threshold": self.threshold,
            "found_maximally_entangled": self.found_maximally_entangled,
            "restarts": self.restarts,
            "seed": self.seed,
            "steps": self.steps,
            "backend": self.backend,
            "best_vector": [[float(a.real), float(a.imag)] for a in amps],
        }


def _start_point(seed: int, restart: int, k: int) -> np.ndarray:
    rng = np.random.default_rng([seed, restart])
    c = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return c / np.linalg.norm(c)


def numerical_search(
    complement: SubspaceBasis,
    restarts: int = DEFAULT_RESTARTS,
    seed: int | None = None,
    steps: int = DEFAULT_STEPS,
    *,
    workers: int = 1,
    backend: str | None = None,
    threshold: float = ME_THRESHOLD,
) -> NumericalCertificate:
    """Maximize the smallest Schmidt coefficient over unit vectors of ``complement``.

    Restart ``r`` starts from a Gaussian point drawn from
    ``default_rng([seed, r])``, so results depend only on
    ``(seed, restarts, steps)`` and the backend. Restarts are independent and
    may run on ``workers`` threads; the best restart wins, lowest index on ties.
    """
    if restarts < 1:
        raise InvalidInputError(f"restarts must be >= 1, got {restarts}")
    if steps < 0:
        raise InvalidInputError(f"steps must be >= 0, got {steps}")
    if complement is None or len(complement) == 0:
        raise InvalidInputError("empty complement: the set is already complete")
    if seed is None:
        seed = default_seed()
    kernel = get_kernel(backend)
    dims = complement.dims
    rows = complement.matrix()
    check_orthonormal_vectors(rows)
    basis = np.ascontiguousarray(rows.reshape(len(complement), dims.d, dims.d_prime))

    def one(restart):
        c = kernel.ascend(basis, _start_point(seed, restart, basis.shape[0]), steps)
        vec = np.tensordot(c, basis, axes=1)
        return float(singular_values(vec)[-1]), c

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(restarts)))
    else:
        results = [one(r) for r in range(restarts)]

    best = 0
    for r, (value, _) in enumerate(results):
        if value > results[best][0]:
            best = r
    value, c = results[best]
    witness = StateVector.normalized(dims, c @ rows)
    value = float(min(max(value, 0.0), 1.0 / np.sqrt(dims.d)))
    return NumericalCertificate(
        best_min_schmidt=value,
        best_vector=witness,
        restarts=restarts,
        seed=seed,
        steps=steps,
        restart_values=tuple(v for v, _ in results),
        backend=kernel.BACKEND,
        threshold=threshold,
    )

"""Checks for the three UMEB conditions.

A set of ``n < d*d'`` states is a UMEB when (i) every state is maximally
entangled, (ii) the states are orthonormal and (iii) no maximally entangled
vector is orthogonal to all of them.

Condition (iii) is settled structurally when the complement is spanned by
vectors occupying fewer than ``d`` columns of the ``d x d'`` reshape: every
vector in such a subspace has Schmidt rank below ``d``. Otherwise the
numerical search in :mod:`umeb.search` is used, which can only exhibit a
counterexample, never prove its absence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .construct import IMPORTED, StateSet, complement_product_kets
from .errors import InvalidInputError
from .linalg import (
    TOL_ORTH,
    SubspaceBasis,
    gram_residual,
    orthonormal_complement,
    schmidt_spectrum,
)
from .search import (
    DEFAULT_RESTARTS,
    DEFAULT_STEPS,
    ME_THRESHOLD,
    NumericalCertificate,
    default_seed,
    numerical_search,
)

TOL_ENTANGLED = 1e-10
TOL_SUPPORT = 1e-8


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    residual: float
    worst_index: Optional[int] = None
    leading_deviation: Optional[float] = None


@dataclass(frozen=True)
class StructuralCertificate:
    """Column-support bound on the Schmidt rank of every complement vector."""

    column_support: tuple
    rank_bound: int
    d: int
    complement_source: str

    kind = "structural"

    @property
    def valid(self) -> bool:
        return len(self.column_support) < self.d

    def to_dict(self):
        return {
            "kind": self.kind,
            "column_support": list(self.column_support),
            "rank_bound": self.rank_bound,
            "valid": self.valid,
            "complement_source": self.complement_source,
        }


UnextendibilityCertificate = Union[StructuralCertificate, NumericalCertificate]


@dataclass(frozen=True)
class VerifyConfig:
    tol_orth: float = TOL_ORTH
    tol_entangled: float = TOL_ENTANGLED
    tol_support: float = TOL_SUPPORT
    restarts: int = DEFAULT_RESTARTS
    steps: int = DEFAULT_STEPS
    seed: Optional[int] = None
    threshold: float = ME_THRESHOLD
    cross_check: bool = False
    workers: int = 1
    backend: Optional[str] = None


@dataclass(frozen=True, eq=False)
class VerificationReport:
    members: int
    dims: tuple
    provenance: str
    orthonormal: CheckResult
    maximally_entangled: CheckResult
    structural: Optional[StructuralCertificate]
    numerical: Optional[NumericalCertificate]
    decided_by: str
    unextendible: Optional[bool]
    notes: tuple = field(default_factory=tuple)

    @property
    def certificate(self) -> Optional[UnextendibilityCertificate]:
        """The certificate that decided condition (iii)."""
        if self.decided_by == "structural":
            return self.structural
        if self.decided_by == "numerical":
            return self.numerical
        return None

    @property
    def overall(self) -> bool:
        return bool(
            self.orthonormal.passed and self.maximally_entangled.passed and self.unextendible
        )

    def to_dict(self):
        return {
            "members": self.members,
            "d": self.dims[0],
            "d_prime": self.dims[1],
            "provenance": self.provenance,
            "orthonormal": {"pass": self.orthonormal.passed, "residual": self.orthonormal.residual},
            "maximally_entangled": {
                "pass": self.maximally_entangled.passed,
                "worst_deviation": self.maximally_entangled.residual,
                "worst_index": self.maximally_entangled.worst_index,
                "leading_deviation": self.maximally_entangled.leading_deviation,
            },
            "unextendible": {
                "pass": self.unextendible,
                "decided_by": self.decided_by,
                "structural": self.structural.to_dict() if self.structural else None,
                "numerical": self.numerical.to_dict() if self.numerical else None,
            },
            "overall": self.overall,
            "notes": list(self.notes),
        }


def check_orthonormal(state_set: StateSet, tol: float = TOL_ORTH) -> CheckResult:
    """Max entrywise deviation of the Gram matrix from the identity."""
    residual, pair = gram_residual(state_set.matrix())
    return CheckResult(residual <= tol, residual, pair[1])


def check_maximally_entangled(state_set: StateSet, tol: float = TOL_ENTANGLED) -> CheckResult:
    """Worst ``|sigma_k - 1/sqrt(d)|`` over all states and Schmidt coefficients.

    ``leading_deviation`` is ``sigma_1 - 1/sqrt(d)`` for that worst state: the
    excess of the largest coefficient, ``1 - 1/sqrt(d)`` for a product state.
    """
    spectra = [schmidt_spectrum(v) for v in state_set.vectors]
    deviations = [spec.deviation_from_maximal() for spec in spectra]
    worst = int(np.argmax(deviations))
    leading = spectra[worst][0] - 1.0 / np.sqrt(state_set.dims.d)
    return CheckResult(deviations[worst] <= tol, float(deviations[worst]), worst, float(leading))


def column_support(basis: SubspaceBasis, tol: float = TOL_SUPPORT) -> tuple:
    """Second-subsystem indices ``j`` where some basis vector has weight above ``tol``."""
    dims = basis.dims
    weights = np.abs(basis.matrix()).reshape(len(basis), dims.d, dims.d_prime)
    return tuple(int(j) for j in np.flatnonzero(np.max(weights, axis=(0, 1)) > tol))


def _closed_form_complement(state_set: StateSet, tol: float) -> Optional[SubspaceBasis]:
    """Closed-form complement if it really is one for these states, else None."""
    if state_set.provenance == IMPORTED:
        return None
    kets = complement_product_kets(state_set)
    if len(kets) + len(state_set) != state_set.dims.size:
        return None
    cross = state_set.matrix().conj() @ kets.matrix().T
    if np.max(np.abs(cross)) > tol:
        return None
    return kets


def complement_of(state_set: StateSet, tol: float = TOL_ORTH) -> tuple[SubspaceBasis, str]:
    """Complement basis and where it came from (``closed-form`` or ``computed``)."""
    closed = _closed_form_complement(state_set, tol)
    if closed is not None:
        return closed, "closed-form"
    return orthonormal_complement(state_set.as_basis(), tol), "computed"


def structural_certificate(
    state_set: StateSet,
    complement: Optional[SubspaceBasis] = None,
    tol: float = TOL_SUPPORT,
    source: str = "supplied",
) -> StructuralCertificate:
    """Bound the Schmidt rank of every complement vector by its column support.

    The result is valid when fewer than ``d`` columns are occupied; an invalid
    certificate means the structural argument is inconclusive.
    """
    if complement is None:
        complement, source = complement_of(state_set)
    support = column_support(complement, tol)
    d = state_set.dims.d
    return StructuralCertificate(support, min(d, len(support)), d, source)


def verify_umeb(state_set: StateSet, config: Optional[VerifyConfig] = None) -> VerificationReport:
    """Run (ii), (i) and then (iii), structural first with numerical fallback."""
    config = config or VerifyConfig()
    dims = state_set.dims
    n = len(state_set)
    if n >= dims.size:
        raise InvalidInputError(
            f"{n} states in a {dims.size}-dimensional space cannot form a UMEB (need n < d*d')"
        )
    ortho = check_orthonormal(state_set, config.tol_orth)
    entangled = check_maximally_entangled(state_set, config.tol_entangled)
    notes = []
    if not ortho.passed:
        notes.append("states are not orthonormal; complement not analysed")
        return VerificationReport(
            n, (dims.d, dims.d_prime), state_set.provenance, ortho, entangled,
            None, None, "skipped", None, tuple(notes),
        )

    complement, source = complement_of(state_set, config.tol_orth)
    structural = structural_certificate(state_set, complement, config.tol_support, source)

    numerical = None
    if not structural.valid or config.cross_check:
        seed = default_seed() if config.seed is None else config.seed
        numerical = numerical_search(
            complement,
            restarts=config.restarts,
            seed=seed,
            steps=config.steps,
            workers=config.workers,
            backend=config.backend,
            threshold=config.threshold,
        )

    if structural.valid:
        decided_by = "structural"
        unextendible = True
        if numerical is not None and numerical.found_maximally_entangled:
            notes.append("numerical cross-check contradicts the structural certificate")
            unextendible = False
    else:
        decided_by = "numerical"
        unextendible = numerical.valid
        if unextendible:
            notes.append(
                "no maximally entangled complement vector found; "
                "numerical evidence only, not a proof"
            )
        else:
            notes.append("maximally entangled vector found in the complement: set is extendible")
    return VerificationReport(
        n, (dims.d, dims.d_prime), state_set.provenance, ortho, entangled,
        structural, numerical, decided_by, unextendible, tuple(notes),
    )

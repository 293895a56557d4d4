"""Unextendible maximally entangled bases (UMEBs) in C^d (x) C^d', d < d'.

Closed-form constructions plus structural and numerical verification of the
three UMEB conditions.
"""

from ._backend import BACKEND
from .construct import (
    ExternalLabel,
    Prop1Label,
    Prop2Label,
    StateSet,
    allowed_m_values,
    available_constructions,
    complement_product_kets,
    construct_prop1,
    construct_prop2,
)
from .errors import (
    DimensionMismatchError,
    DocumentError,
    InvalidInputError,
    NotOrthonormalError,
    UMEBError,
)
from .linalg import (
    BipartiteDims,
    SchmidtSpectrum,
    StateVector,
    SubspaceBasis,
    canonical_phase,
    inner_product,
    orthonormal_complement,
    reshape,
    schmidt_rank,
    schmidt_spectrum,
)
from .search import NumericalCertificate, numerical_search
from .verify import (
    StructuralCertificate,
    VerificationReport,
    VerifyConfig,
    check_maximally_entangled,
    check_orthonormal,
    structural_certificate,
    verify_umeb,
)

__version__ = "0.1.0"

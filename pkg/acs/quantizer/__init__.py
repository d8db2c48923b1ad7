"""Covariant integral quantization checked against its closed forms."""

from acs.quantizer.models import (
    KineticFit,
    RatioReport,
    SymbolKind,
    SymbolSpec,
)
from acs.quantizer.services import (
    DEFAULT_BASIS,
    Fiducial,
    predicted_ratio,
    quantize_elements,
    target_matrix,
    unit_ratio_fiducial,
    verify_d,
    verify_p,
    verify_p2,
    verify_q_power,
)

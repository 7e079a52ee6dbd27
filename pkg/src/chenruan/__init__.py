"""Chen-Ruan orbifold cohomology of Calabi-Yau hypersurfaces in simplicial toric varieties."""

from __future__ import annotations

from .cyclotomic import CyclotomicNumber, FieldMismatchError, zeta
from .polynomial import ChowGrading, GradedPoly
from .toric import (Cone, Fan, FanError, GroupElement, QuotientFanData, builtin_fan, fan_from_json,
                    local_group, mirror_quintic_fan, projective_space_fan, quotient_fan)

__version__ = "0.1.0"

__all__ = [
    "ChowGrading", "Cone", "CyclotomicNumber", "Fan", "FanError", "FieldMismatchError",
    "GradedPoly", "GroupElement", "QuotientFanData", "builtin_fan", "fan_from_json",
    "local_group", "mirror_quintic_fan", "projective_space_fan", "quotient_fan", "zeta",
    "__version__",
]

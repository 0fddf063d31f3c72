"""Finitely presented modules and their homological invariants."""

from .functors import (
    AbGroupValue,
    ModuleMap,
    ext_group,
    extends_along,
    hom_module,
    isomorphic,
    module_invariants,
    tensor_product,
    tor_group,
)
from .presentation import ImageModule, Presentation, direct_sum
from .projective import ProjectivityResult, character_dual, is_projective, pd_at_most_one
from .resolution import (
    FpCertificate,
    FPnVerified,
    Inconclusive,
    Resolution,
    SyzygyGrowth,
    as_presentation,
    classify_fp,
    resolve,
    syzygy,
)

__all__ = [
    "AbGroupValue", "FPnVerified", "FpCertificate", "ImageModule", "Inconclusive", "ModuleMap",
    "Presentation", "ProjectivityResult", "Resolution", "SyzygyGrowth", "as_presentation",
    "character_dual", "classify_fp", "direct_sum", "ext_group", "extends_along", "hom_module",
    "is_projective", "isomorphic", "module_invariants", "pd_at_most_one", "resolve",
    "syzygy", "tensor_product", "tor_group",
]

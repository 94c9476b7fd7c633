"""Exact barycenters of valuations on finite semilattice cones."""

from .barycenter import PipelineTrace, beta, pipeline_barycenter, uniqueness_sweep
from .cone import (
    DualFunctional,
    GeneralFunctional,
    SemilatticeCone,
    barycenter_support_sup,
    dual_cone_enumerate,
    is_barycenter,
    make_cone,
)
from .extrat import INF, ext, fmt
from .poset import FinitePoset, MonotoneMap, specialization_from_opens
from .powercone import ConvexUpset, enumerate_smyth, jia_check, lift_functional, smyth_as_cone
from .valuation import Valuation, ValuationTable, dirac, evaluate, image_valuation, integrate

__all__ = [
    "INF",
    "ConvexUpset",
    "DualFunctional",
    "FinitePoset",
    "GeneralFunctional",
    "MonotoneMap",
    "PipelineTrace",
    "SemilatticeCone",
    "Valuation",
    "ValuationTable",
    "barycenter_support_sup",
    "beta",
    "dirac",
    "dual_cone_enumerate",
    "enumerate_smyth",
    "evaluate",
    "ext",
    "fmt",
    "image_valuation",
    "integrate",
    "is_barycenter",
    "jia_check",
    "lift_functional",
    "make_cone",
    "pipeline_barycenter",
    "smyth_as_cone",
    "specialization_from_opens",
    "uniqueness_sweep",
]

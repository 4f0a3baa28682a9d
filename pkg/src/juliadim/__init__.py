"""Rigorous lower bounds on the Hausdorff dimension of Julia sets of
real quadratic polynomials p_c(z) = z^2 + c, c in [-2, 2]."""

from .cdisc import DiscKind, ExtendedDisc, ParamEnclosure
from .interval import RInterval
from .kneading import StationaryKneading, UnimodalPermutation, locate_feig_param
from .mcmullen import McMullenMatrix, build
from .spectral import BoundResult, SpectralEnclosure, bisect_delta, validate
from .tiles import CoverConfig, DistanceBounds, TileCode, TileCover

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CoverConfig",
    "DiscKind",
    "DistanceBounds",
    "ExtendedDisc",
    "McMullenMatrix",
    "ParamEnclosure",
    "RInterval",
    "SpectralEnclosure",
    "StationaryKneading",
    "TileCode",
    "TileCover",
    "UnimodalPermutation",
    "bisect_delta",
    "build",
    "locate_feig_param",
    "validate",
]

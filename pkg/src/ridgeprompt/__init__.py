"""ridgeprompt: multi-scale ridge detection turned into point prompts.

The pipeline runs image -> scale-space jets -> ridge strength -> sparse ridge
volume -> connected ridge curves -> salience-weighted point prompts, with
evaluation utilities for scoring mask predictions against references and a
synthetic-image generator providing exact ground truth for verification.
"""

from .curves import RidgeCurve, curves_to_json, extract_curves, salience
from .errors import InvalidInputError, InvalidParameterError, RidgePromptError
from .evaluation import (
    EvalReport,
    FilterPolicy,
    MaskFilterResult,
    aggregate_reports,
    evaluate,
    filter_masks,
    segment_quality_rate,
    union_mask,
)
from .image import (
    BinaryMask,
    GrayImage,
    PixelPoint,
    load_gray,
    load_mask,
    save_gray,
    save_mask,
)
from .prompts import PromptSet, allocate_prompts, grid_prompts, random_prompts
from .ridges import RidgePoint, RidgeVolume, detect_ridges, ridge_strength
from .scalespace import ScaleJet, ScaleSpec, compute_jet, gaussian_kernel, gaussian_smooth
from .synthetic import (
    GroundTruth,
    RidgeSpec,
    SinusoidPath,
    StraightPath,
    SynthSpec,
    crossing_pair,
    synth_image,
    vertical_ridge,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMask",
    "EvalReport",
    "FilterPolicy",
    "GrayImage",
    "GroundTruth",
    "InvalidInputError",
    "InvalidParameterError",
    "MaskFilterResult",
    "PixelPoint",
    "PromptSet",
    "RidgeCurve",
    "RidgePoint",
    "RidgePromptError",
    "RidgeSpec",
    "RidgeVolume",
    "ScaleJet",
    "ScaleSpec",
    "SinusoidPath",
    "StraightPath",
    "SynthSpec",
    "aggregate_reports",
    "allocate_prompts",
    "compute_jet",
    "crossing_pair",
    "curves_to_json",
    "detect_ridges",
    "evaluate",
    "extract_curves",
    "filter_masks",
    "gaussian_kernel",
    "gaussian_smooth",
    "grid_prompts",
    "load_gray",
    "load_mask",
    "random_prompts",
    "ridge_strength",
    "salience",
    "save_gray",
    "save_mask",
    "segment_quality_rate",
    "synth_image",
    "union_mask",
    "vertical_ridge",
]

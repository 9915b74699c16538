"""sam_adapter: prompt JSON in, filtered segment-anything masks out."""

from .adapter import (
    FilterPolicy,
    MaskCandidate,
    SamPointPredictor,
    SegmenterRun,
    reject_reason,
    segment_with_prompts,
)
from .schema import PromptSchemaError, load_prompts, validate_metadata

__version__ = "0.1.0"

__all__ = [
    "FilterPolicy",
    "MaskCandidate",
    "PromptSchemaError",
    "SamPointPredictor",
    "SegmenterRun",
    "load_prompts",
    "reject_reason",
    "segment_with_prompts",
    "validate_metadata",
]

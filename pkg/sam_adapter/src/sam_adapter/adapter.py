"""Run a point predictor over a prompt set and emit filtered masks.

The adapter contains no geometry of its own: it submits each prompt as a
single positive point, records the predictor's best mask hypothesis with its
quality scores, applies the keep/reject thresholds, and writes the artifacts
the evaluation tooling consumes (binary mask PNGs paired with a metadata
JSON). Everything upstream of the predictor and downstream of the files is
someone else's job.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .schema import load_prompts, validate_metadata

REJECT_PRED_IOU = "pred_iou"
REJECT_STABILITY = "stability"
REJECT_AREA = "area"


@dataclass(frozen=True)
class FilterPolicy:
    """Keep thresholds mirroring the evaluation side's defaults."""

    pred_iou_thresh: float = 0.6
    stability_thresh: float = 0.8
    max_area_fraction: float = 0.25


@dataclass(frozen=True)
class MaskCandidate:
    """One mask hypothesis from the predictor with its quality scores."""

    mask: np.ndarray
    pred_iou: float
    stability: float


@dataclass(frozen=True)
class SegmenterRun:
    """Inputs of one adapter invocation."""

    image_path: Path
    prompts_path: Path
    out_dir: Path
    checkpoint: str | None = None
    model_type: str = "vit_h"


def reject_reason(candidate: MaskCandidate, policy: FilterPolicy) -> str | None:
    """First failing criterion in threshold order, or None if kept."""
    if candidate.pred_iou < policy.pred_iou_thresh:
        return REJECT_PRED_IOU
    if candidate.stability < policy.stability_thresh:
        return REJECT_STABILITY
    area_fraction = float(np.count_nonzero(candidate.mask)) / candidate.mask.size
    if area_fraction > policy.max_area_fraction:
        return REJECT_AREA
    return None


def _load_rgb(path) -> np.ndarray:
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def _write_mask_png(mask: np.ndarray, path: Path) -> None:
    arr = np.where(mask.astype(bool), 255, 0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def segment_with_prompts(
    run: SegmenterRun,
    policy: FilterPolicy = FilterPolicy(),
    predictor=None,
) -> list[dict]:
    """Segment one image at each prompt point and write masks + metadata.

    ``predictor`` must expose ``set_image(rgb)`` and
    ``predict_point(x, y) -> sequence[MaskCandidate]``; when omitted, a real
    segment-anything predictor is constructed from ``run.checkpoint``. Of the
    hypotheses returned per point, the one with the highest predicted quality
    is recorded. Returns the metadata records (also written to
    ``prompt_masks.json`` in the output directory); masks land as
    ``mask_{i:04d}.png``, one per kept-or-rejected prompt.
    """
    points = load_prompts(run.prompts_path)
    run.out_dir.mkdir(parents=True, exist_ok=True)

    records: list[dict] = []
    if points:
        if predictor is None:
            predictor = SamPointPredictor.from_checkpoint(run.checkpoint, run.model_type)
        predictor.set_image(_load_rgb(run.image_path))
        for i, (x, y) in enumerate(points):
            candidates = list(predictor.predict_point(x, y))
            if not candidates:
                records.append(
                    {
                        "point": [x, y],
                        "mask": None,
                        "pred_iou": 0.0,
                        "stability": 0.0,
                        "kept": False,
                        "reject_reason": REJECT_PRED_IOU,
                    }
                )
                continue
            best = max(candidates, key=lambda c: c.pred_iou)
            reason = reject_reason(best, policy)
            mask_name = f"mask_{i:04d}.png"
            _write_mask_png(best.mask, run.out_dir / mask_name)
            records.append(
                {
                    "point": [x, y],
                    "mask": mask_name,
                    "pred_iou": float(best.pred_iou),
                    "stability": float(best.stability),
                    "kept": reason is None,
                    "reject_reason": reason,
                }
            )

    validate_metadata(records)
    metadata_path = run.out_dir / "prompt_masks.json"
    metadata_path.write_text(json.dumps(records, indent=2, sort_keys=True) + "\n")
    return records


class SamPointPredictor:
    """Thin wrapper over segment-anything's point-prompted predictor.

    Imports torch and segment_anything lazily so the adapter (and its tests,
    which inject fakes) work without the heavyweight dependencies installed.
    """

    def __init__(self, predictor, threshold_offset: float = 1.0):
        self._predictor = predictor
        self._threshold_offset = threshold_offset

    @classmethod
    def from_checkpoint(cls, checkpoint: str | None, model_type: str = "vit_h"):
        if not checkpoint:
            raise FileNotFoundError("a segment-anything checkpoint path is required")
        if not Path(checkpoint).exists():
            raise FileNotFoundError(f"checkpoint not found: {checkpoint}")
        try:
            from segment_anything import SamPredictor, sam_model_registry
        except ImportError as exc:
            raise RuntimeError(
                "segment-anything is not installed; install the [sam] extra"
            ) from exc
        sam = sam_model_registry[model_type](checkpoint=checkpoint)
        return cls(SamPredictor(sam))

    def set_image(self, rgb: np.ndarray) -> None:
        self._predictor.set_image(rgb)

    def predict_point(self, x: int, y: int):
        import torch
        from segment_anything.utils.amg import calculate_stability_score

        masks, iou_predictions, low_res_logits = self._predictor.predict(
            point_coords=np.array([[x, y]]),
            point_labels=np.array([1]),
            multimask_output=True,
        )
        threshold = self._predictor.model.mask_threshold
        stability = calculate_stability_score(
            torch.from_numpy(low_res_logits), threshold, self._threshold_offset
        ).numpy()
        return [
            MaskCandidate(
                mask=masks[j],
                pred_iou=float(np.clip(iou_predictions[j], 0.0, 1.0)),
                stability=float(np.clip(stability[j], 0.0, 1.0)),
            )
            for j in range(masks.shape[0])
        ]

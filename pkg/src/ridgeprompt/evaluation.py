"""Mask quality filtering and pixel-level scoring against reference masks.

Masks carry segmenter-reported quality metadata (predicted IoU and stability
score) and are filtered against thresholds plus a maximum-area rule before
their union is compared to a reference annotation. Rates are reported at the
pixel level; aggregate rates sum confusion counts across images before
dividing, rather than averaging per-image rates.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, InvalidParameterError
from .image import BinaryMask
from .prompts import PromptSet

REJECT_PRED_IOU = "pred_iou"
REJECT_STABILITY = "stability"
REJECT_AREA = "area"


@dataclass(frozen=True)
class FilterPolicy:
    """Mask-keeping thresholds: minimum predicted IoU, minimum stability,
    maximum area as a fraction of the image."""

    pred_iou_thresh: float = 0.6
    stability_thresh: float = 0.8
    max_area_fraction: float = 0.25

    def __post_init__(self):
        for name in ("pred_iou_thresh", "stability_thresh", "max_area_fraction"):
            v = getattr(self, name)
            if not (0.0 <= float(v) <= 1.0):
                raise InvalidParameterError(f"{name} must be in [0, 1], got {v}")

    def to_json(self) -> dict:
        return {
            "pred_iou_thresh": self.pred_iou_thresh,
            "stability_thresh": self.stability_thresh,
            "max_area_fraction": self.max_area_fraction,
        }


@dataclass(frozen=True)
class MaskFilterResult:
    """Outcome of filtering a mask list.

    ``rejections`` pairs each rejected input index with the first failing
    criterion ("pred_iou", "stability" or "area", checked in that order).
    ``missing_metadata`` flags (index, field) pairs where a score was absent
    and the criterion was treated as passing.
    """

    kept: tuple[BinaryMask, ...]
    kept_indices: tuple[int, ...]
    rejections: tuple[tuple[int, str], ...]
    missing_metadata: tuple[tuple[int, str], ...]


def filter_masks(masks, policy: FilterPolicy = FilterPolicy()) -> MaskFilterResult:
    """Keep masks passing all three criteria; label each rejection."""
    masks = list(masks)
    dims = {m.shape for m in masks}
    if len(dims) > 1:
        raise InvalidInputError(f"mask dimensions disagree: {sorted(dims)}")

    kept, kept_idx, rejections, missing = [], [], [], []
    for i, mask in enumerate(masks):
        if mask.pred_iou is None:
            missing.append((i, REJECT_PRED_IOU))
        if mask.stability is None:
            missing.append((i, REJECT_STABILITY))
        if mask.pred_iou is not None and mask.pred_iou < policy.pred_iou_thresh:
            rejections.append((i, REJECT_PRED_IOU))
        elif mask.stability is not None and mask.stability < policy.stability_thresh:
            rejections.append((i, REJECT_STABILITY))
        elif mask.area_fraction > policy.max_area_fraction:
            rejections.append((i, REJECT_AREA))
        else:
            kept.append(mask)
            kept_idx.append(i)
    return MaskFilterResult(
        kept=tuple(kept),
        kept_indices=tuple(kept_idx),
        rejections=tuple(rejections),
        missing_metadata=tuple(missing),
    )


@dataclass(frozen=True)
class EvalReport:
    """Pixel confusion counts with derived rates.

    Rates are ``None`` when their denominator is empty (e.g. TPR of an empty
    reference); they are never silently coerced to 0 or 1.
    """

    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def tpr(self) -> float | None:
        d = self.tp + self.fn
        return self.tp / d if d > 0 else None

    @property
    def fpr(self) -> float | None:
        d = self.fp + self.tn
        return self.fp / d if d > 0 else None

    @property
    def iou(self) -> float | None:
        d = self.tp + self.fp + self.fn
        return self.tp / d if d > 0 else None

    def to_json(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "tpr": self.tpr,
            "fpr": self.fpr,
            "iou": self.iou,
        }


def union_mask(masks) -> BinaryMask | None:
    """Logical OR of a mask list; None for an empty list."""
    masks = list(masks)
    if not masks:
        return None
    dims = {m.shape for m in masks}
    if len(dims) > 1:
        raise InvalidInputError(f"mask dimensions disagree: {sorted(dims)}")
    bits = np.zeros(masks[0].shape, dtype=bool)
    for m in masks:
        bits |= m.bits
    return BinaryMask(bits)


def evaluate(prediction: BinaryMask, reference: BinaryMask) -> EvalReport:
    """Pixelwise confusion counts of a predicted mask against a reference."""
    if prediction.shape != reference.shape:
        raise InvalidInputError(
            f"prediction {prediction.shape} and reference {reference.shape} dims differ"
        )
    pred = prediction.bits
    ref = reference.bits
    tp = int(np.count_nonzero(pred & ref))
    fp = int(np.count_nonzero(pred & ~ref))
    fn = int(np.count_nonzero(~pred & ref))
    tn = int(np.count_nonzero(~pred & ~ref))
    return EvalReport(tp=tp, fp=fp, tn=tn, fn=fn)


def aggregate_reports(reports) -> EvalReport:
    """Sum confusion counts over images, then derive rates from the sums."""
    reports = list(reports)
    if not reports:
        raise InvalidParameterError("cannot aggregate zero reports")
    return EvalReport(
        tp=sum(r.tp for r in reports),
        fp=sum(r.fp for r in reports),
        tn=sum(r.tn for r in reports),
        fn=sum(r.fn for r in reports),
    )


def segment_quality_rate(prompts: PromptSet, masks, policy: FilterPolicy = FilterPolicy()) -> float:
    """Fraction of prompts whose candidate mask survives the filter.

    ``masks`` aligns with the prompt list; missing entries (None, or a list
    shorter than the prompts) count as failing. An empty prompt set has no
    passing segments and rates 0.0.
    """
    n = len(prompts)
    if n == 0:
        return 0.0
    masks = list(masks)[:n]
    present = [m for m in masks if m is not None]
    if not present:
        return 0.0
    result = filter_masks(present, policy)
    return len(result.kept) / n


def write_report_csv(path, rows: list[tuple[str, EvalReport]], aggregate: EvalReport) -> None:
    """One CSV row per image plus a final aggregate row; blank cells for
    undefined rates."""

    def fmt(v):
        return "" if v is None else f"{v:.6f}"

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image", "tp", "fp", "tn", "fn", "tpr", "fpr", "iou"])
        for name, r in rows:
            writer.writerow([name, r.tp, r.fp, r.tn, r.fn, fmt(r.tpr), fmt(r.fpr), fmt(r.iou)])
        a = aggregate
        writer.writerow(["aggregate", a.tp, a.fp, a.tn, a.fn, fmt(a.tpr), fmt(a.fpr), fmt(a.iou)])


def evaluate_directories(pred_dir, ref_dir):
    """Pair mask PNGs by filename stem and evaluate each pair.

    Returns (rows, aggregate, unmatched) where rows is a list of
    (stem, EvalReport) sorted by stem and unmatched lists stems present on
    only one side. Raises InvalidInputError when nothing matches.
    """
    from .image import load_mask

    pred_dir, ref_dir = Path(pred_dir), Path(ref_dir)
    preds = {p.stem: p for p in sorted(pred_dir.glob("*.png"))}
    refs = {p.stem: p for p in sorted(ref_dir.glob("*.png"))}
    common = sorted(preds.keys() & refs.keys())
    unmatched = sorted(preds.keys() ^ refs.keys())
    if not common:
        raise InvalidInputError(
            f"no mask stems shared between {pred_dir} and {ref_dir}"
        )
    rows = [(stem, evaluate(load_mask(preds[stem]), load_mask(refs[stem]))) for stem in common]
    return rows, aggregate_reports(r for _, r in rows), unmatched

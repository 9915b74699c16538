"""
Mask filtering and pixel-level evaluation
=========================================

Simulate the downstream half of the pipeline: candidate masks arrive from a
segmenter with quality metadata, get filtered by thresholds and an area rule,
and their union is scored against a reference annotation with pixel-level
TPR / FPR / IoU.
"""

import numpy as np

from ridgeprompt import (
    BinaryMask,
    FilterPolicy,
    SynthSpec,
    aggregate_reports,
    evaluate,
    filter_masks,
    synth_image,
    union_mask,
    vertical_ridge,
)

# ---------------------------------------------------------------------------
# Ground truth: the two-sigma band around a synthetic ridge.
# ---------------------------------------------------------------------------
dims = (96, 96)
image, truth = synth_image(SynthSpec(dims=dims, ridges=(vertical_ridge(dims, 48.0, 2.0),)))
reference = truth.mask
print(f"reference covers {reference.area_fraction:.1%} of the image")

# ---------------------------------------------------------------------------
# Fake segmenter output: one tight mask on the ridge (good scores), one
# shifted mask (low predicted quality), one huge background mask (area rule).
# ---------------------------------------------------------------------------
def band(center, halfwidth):
    bits = np.zeros(dims, dtype=bool)
    bits[:, center - halfwidth : center + halfwidth + 1] = True
    return bits

candidates = [
    BinaryMask(band(48, 4), pred_iou=0.91, stability=0.93),
    BinaryMask(band(70, 4), pred_iou=0.42, stability=0.88),
    BinaryMask(np.ones(dims, dtype=bool), pred_iou=0.85, stability=0.90),
]

policy = FilterPolicy()  # pred_iou >= 0.6, stability >= 0.8, area <= 25%
result = filter_masks(candidates, policy)
print(f"kept {len(result.kept)} of {len(candidates)}; rejections: {list(result.rejections)}")

# ---------------------------------------------------------------------------
# Union the survivors and score at the pixel level.
# ---------------------------------------------------------------------------
prediction = union_mask(result.kept)
report = evaluate(prediction, reference)
print(f"tp={report.tp} fp={report.fp} fn={report.fn} tn={report.tn}")
print(f"TPR={report.tpr:.3f}  FPR={report.fpr:.3f}  IoU={report.iou:.3f}")

# ---------------------------------------------------------------------------
# Aggregation over a batch sums counts before dividing; with class
# imbalance this is NOT the mean of per-image rates.
# ---------------------------------------------------------------------------
_, other_truth = synth_image(SynthSpec(dims=dims, ridges=(vertical_ridge(dims, 30.0, 1.0),)))
reports = [
    evaluate(prediction, reference),
    evaluate(prediction, other_truth.mask),
]
agg = aggregate_reports(reports)
mean_tpr = sum(r.tpr for r in reports) / len(reports)
print(f"aggregate TPR {agg.tpr:.3f} vs mean-of-rates {mean_tpr:.3f}")

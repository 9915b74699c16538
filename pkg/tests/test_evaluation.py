import numpy as np
import pytest

from ridgeprompt import (
    BinaryMask,
    EvalReport,
    FilterPolicy,
    PixelPoint,
    aggregate_reports,
    evaluate,
    filter_masks,
    save_mask,
    segment_quality_rate,
    union_mask,
)
from ridgeprompt.errors import InvalidInputError, InvalidParameterError
from ridgeprompt.evaluation import evaluate_directories, write_report_csv
from ridgeprompt.prompts import PromptSet


def mask(bits, pred_iou=None, stability=None):
    return BinaryMask(np.asarray(bits, dtype=bool), pred_iou=pred_iou, stability=stability)


def square_mask(n, fill, **meta):
    bits = np.zeros((n, n), dtype=bool)
    bits.flat[: int(fill * n * n)] = True
    return mask(bits, **meta)


def brute_force_counts(pred, ref):
    """Independent oracle: per-pixel double loop."""
    tp = fp = tn = fn = 0
    for y in range(pred.shape[0]):
        for x in range(pred.shape[1]):
            p, r = bool(pred[y, x]), bool(ref[y, x])
            if p and r:
                tp += 1
            elif p and not r:
                fp += 1
            elif not p and r:
                fn += 1
            else:
                tn += 1
    return tp, fp, tn, fn


class TestFilter:
    def test_low_pred_iou_rejected(self):
        m = square_mask(10, 0.1, pred_iou=0.5, stability=0.9)
        result = filter_masks([m])
        assert result.kept == ()
        assert result.rejections == ((0, "pred_iou"),)

    def test_low_stability_rejected(self):
        m = square_mask(10, 0.1, pred_iou=0.9, stability=0.7)
        result = filter_masks([m])
        assert result.rejections == ((0, "stability"),)

    def test_oversized_rejected(self):
        m = square_mask(10, 0.30, pred_iou=0.9, stability=0.9)
        result = filter_masks([m])
        assert result.rejections == ((0, "area"),)

    def test_good_mask_kept(self):
        m = square_mask(10, 0.01, pred_iou=0.9, stability=0.9)
        result = filter_masks([m])
        assert result.kept_indices == (0,)
        assert result.rejections == ()

    def test_first_failing_criterion_labels_rejection(self):
        m = square_mask(10, 0.4, pred_iou=0.1, stability=0.1)
        result = filter_masks([m])
        assert result.rejections == ((0, "pred_iou"),)

    def test_missing_metadata_passes_but_flagged(self):
        m = square_mask(10, 0.1)
        result = filter_masks([m])
        assert result.kept_indices == (0,)
        assert set(result.missing_metadata) == {(0, "pred_iou"), (0, "stability")}

    def test_threshold_boundaries_inclusive(self):
        m = square_mask(10, 0.25, pred_iou=0.6, stability=0.8)
        assert filter_masks([m]).kept_indices == (0,)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            filter_masks([square_mask(10, 0.1), square_mask(12, 0.1)])

    def test_monotone_in_policy(self):
        rng = np.random.default_rng(3)
        masks = [
            mask(
                rng.random((8, 8)) > 0.6,
                pred_iou=float(rng.uniform()),
                stability=float(rng.uniform()),
            )
            for _ in range(25)
        ]
        loose = FilterPolicy(pred_iou_thresh=0.3, stability_thresh=0.4, max_area_fraction=0.9)
        for tight in (
            FilterPolicy(0.7, 0.4, 0.9),
            FilterPolicy(0.3, 0.8, 0.9),
            FilterPolicy(0.3, 0.4, 0.3),
        ):
            kept_loose = set(filter_masks(masks, loose).kept_indices)
            kept_tight = set(filter_masks(masks, tight).kept_indices)
            assert kept_tight <= kept_loose

    def test_policy_validation(self):
        with pytest.raises(InvalidParameterError):
            FilterPolicy(pred_iou_thresh=1.5)


class TestEvaluate:
    def test_identity(self):
        bits = np.zeros((12, 12), dtype=bool)
        bits[3:6, 2:9] = True
        r = evaluate(mask(bits), mask(bits))
        assert (r.tpr, r.fpr, r.iou) == (1.0, 0.0, 1.0)

    def test_disjoint(self):
        a = np.zeros((8, 8), dtype=bool)
        b = np.zeros((8, 8), dtype=bool)
        a[0, 0] = True
        b[7, 7] = True
        r = evaluate(mask(a), mask(b))
        assert r.tpr == 0.0
        assert r.iou == 0.0

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(50)
        for _ in range(50):
            pred = rng.random((16, 16)) > rng.uniform(0.2, 0.8)
            ref = rng.random((16, 16)) > rng.uniform(0.2, 0.8)
            r = evaluate(mask(pred), mask(ref))
            assert (r.tp, r.fp, r.tn, r.fn) == brute_force_counts(pred, ref)
            assert r.tp + r.fp + r.tn + r.fn == 256

    def test_swap_symmetry_in_counts(self):
        rng = np.random.default_rng(8)
        pred = rng.random((10, 10)) > 0.5
        ref = rng.random((10, 10)) > 0.5
        fwd = evaluate(mask(pred), mask(ref))
        rev = evaluate(mask(ref), mask(pred))
        assert fwd.tp == rev.tp
        assert fwd.tn == rev.tn
        assert fwd.fp == rev.fn
        assert fwd.fn == rev.fp

    def test_undefined_rates_are_none(self):
        empty = mask(np.zeros((4, 4), dtype=bool))
        full = mask(np.ones((4, 4), dtype=bool))
        r = evaluate(empty, empty)
        assert r.tpr is None and r.iou is None and r.fpr == 0.0
        r = evaluate(full, full)
        assert r.fpr is None and r.tpr == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            evaluate(square_mask(4, 0.5), square_mask(5, 0.5))

    def test_aggregate_sums_counts_not_rates(self):
        r1 = EvalReport(tp=1, fp=0, tn=0, fn=9)   # tpr 0.1
        r2 = EvalReport(tp=90, fp=0, tn=0, fn=0)  # tpr 1.0
        agg = aggregate_reports([r1, r2])
        assert agg.tpr == pytest.approx(0.91)
        mean_of_rates = (r1.tpr + r2.tpr) / 2
        assert agg.tpr != pytest.approx(mean_of_rates)

    def test_union_mask(self):
        a = np.zeros((6, 6), dtype=bool)
        b = np.zeros((6, 6), dtype=bool)
        a[0] = True
        b[:, 0] = True
        u = union_mask([mask(a), mask(b)])
        assert np.array_equal(u.bits, a | b)
        assert union_mask([]) is None


class TestQualityRate:
    def _prompts(self, n):
        return PromptSet(
            points=tuple(PixelPoint(i, 0) for i in range(n)),
            labels=(1,) * n,
            provenance=("grid",) * n,
            seed=0,
        )

    def test_all_pass(self):
        masks = [square_mask(10, 0.05, pred_iou=0.9, stability=0.9) for _ in range(4)]
        assert segment_quality_rate(self._prompts(4), masks) == 1.0

    def test_no_masks(self):
        assert segment_quality_rate(self._prompts(4), []) == 0.0

    def test_sixteen_prompts_eleven_passing(self):
        good = [square_mask(10, 0.05, pred_iou=0.9, stability=0.9) for _ in range(11)]
        bad = [square_mask(10, 0.05, pred_iou=0.2, stability=0.9) for _ in range(5)]
        assert segment_quality_rate(self._prompts(16), good + bad) == 0.6875

    def test_missing_masks_count_as_failing(self):
        masks = [square_mask(10, 0.05, pred_iou=0.9, stability=0.9), None]
        assert segment_quality_rate(self._prompts(4), masks) == 0.25


class TestDirectories:
    def _write(self, directory, name, bits):
        directory.mkdir(parents=True, exist_ok=True)
        save_mask(mask(bits), directory / f"{name}.png")

    def test_pairing_and_aggregate(self, tmp_path):
        pred, ref = tmp_path / "pred", tmp_path / "ref"
        a = np.zeros((8, 8), dtype=bool)
        a[:4] = True
        self._write(pred, "img1", a)
        self._write(ref, "img1", a)
        b = np.zeros((8, 8), dtype=bool)
        self._write(pred, "img2", b)
        self._write(ref, "img2", a)
        self._write(pred, "orphan", a)

        rows, agg, unmatched = evaluate_directories(pred, ref)
        assert [name for name, _ in rows] == ["img1", "img2"]
        assert unmatched == ["orphan"]
        assert agg.tp == 32 and agg.fn == 32

        out = tmp_path / "report.csv"
        write_report_csv(out, rows, agg)
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("image,")
        assert len(lines) == 4
        assert lines[-1].startswith("aggregate,")

    def test_no_matches_is_an_error(self, tmp_path):
        pred, ref = tmp_path / "pred", tmp_path / "ref"
        self._write(pred, "a", np.zeros((4, 4), dtype=bool))
        ref.mkdir()
        with pytest.raises(InvalidInputError):
            evaluate_directories(pred, ref)

"""Command line for running the adapter over one image + prompt file."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adapter import FilterPolicy, SegmenterRun, segment_with_prompts
from .schema import PromptSchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sam-adapter",
        description="Submit point prompts to a segment-anything predictor and "
        "write filtered masks plus metadata",
    )
    parser.add_argument("--image", required=True, help="input image (PNG/JPEG)")
    parser.add_argument("--prompts", required=True, help="prompt JSON file")
    parser.add_argument("--out-dir", required=True, help="output directory for masks + metadata")
    parser.add_argument("--checkpoint", default=None, help="segment-anything checkpoint path")
    parser.add_argument("--model-type", default="vit_h", help="segment-anything model key")
    parser.add_argument("--pred-iou-thresh", type=float, default=0.6)
    parser.add_argument("--stability-thresh", type=float, default=0.8)
    parser.add_argument("--max-area-fraction", type=float, default=0.25)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = SegmenterRun(
        image_path=Path(args.image),
        prompts_path=Path(args.prompts),
        out_dir=Path(args.out_dir),
        checkpoint=args.checkpoint,
        model_type=args.model_type,
    )
    policy = FilterPolicy(
        pred_iou_thresh=args.pred_iou_thresh,
        stability_thresh=args.stability_thresh,
        max_area_fraction=args.max_area_fraction,
    )
    try:
        records = segment_with_prompts(run, policy)
    except PromptSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, RuntimeError) as exc:
        print(f"fatal: {exc}", file=sys.stderr)
        return 1
    kept = sum(1 for r in records if r["kept"])
    print(f"{len(records)} prompts -> {kept} kept masks in {run.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

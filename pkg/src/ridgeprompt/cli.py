"""Command-line pipeline: detect, prompts, grid, synth, eval.

All outputs are JSON (CSV additionally for eval reports) written atomically
(temp file + rename) with the resolved run configuration embedded, so a rerun
with identical flags and seed produces byte-identical files.

Exit codes: 0 success, 2 invalid parameters or inputs, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .curves import curves_to_json, extract_curves
from .errors import InvalidInputError, InvalidParameterError
from .evaluation import evaluate_directories, write_report_csv
from .image import GrayImage, load_gray, save_gray, save_mask
from .prompts import PromptSet, allocate_prompts, grid_prompts, random_prompts
from .ridges import detect_ridges, ridge_strength
from .scalespace import ScaleSpec, compute_jet
from .synthetic import (
    RidgeSpec,
    SinusoidPath,
    SynthSpec,
    crossing_pair,
    synth_image,
    vertical_ridge,
)


def _write_json_atomic(path: Path, obj) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _parse_scales(raw: str | None) -> tuple[float, ...] | None:
    if raw is None:
        return None
    try:
        scales = tuple(float(v) for v in raw.split(",") if v.strip())
    except ValueError as exc:
        raise InvalidParameterError(f"--scales must be a comma list of numbers: {raw!r}") from exc
    if not scales:
        raise InvalidParameterError("--scales is empty")
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise InvalidParameterError(f"--scales must be strictly ascending, got {raw!r}")
    return scales


def _scale_spec(args) -> ScaleSpec:
    scales = _parse_scales(args.scales)
    if scales is None:
        return ScaleSpec.default(gamma=args.gamma)
    return ScaleSpec(scales=scales, gamma=args.gamma)


def _collect_inputs(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found = sorted(p.glob("*.png"))
            if not found:
                raise InvalidInputError(f"no PNG files in directory {p}")
            files.extend(found)
        elif p.exists():
            files.append(p)
        else:
            raise FileNotFoundError(f"input not found: {p}")
    return files


def _run_parallel(jobs: int, work, items):
    if jobs <= 1 or len(items) <= 1:
        for item in items:
            work(item)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # re-raise the first failure, if any
        for _ in pool.map(work, items):
            pass


def _stretched_rgb(image: GrayImage) -> np.ndarray:
    v = image.pixels
    lo, hi = float(v.min()), float(v.max())
    stretched = (v - lo) / (hi - lo) if hi > lo else np.zeros_like(v)
    gray = np.rint(stretched * 255.0).astype(np.uint8)
    return np.stack([gray, gray, gray], axis=-1)


def _draw_points(rgb: np.ndarray, points, color=(255, 0, 0)) -> np.ndarray:
    h, w = rgb.shape[:2]
    out = rgb.copy()
    for x, y in points:
        for dx, dy in ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)):
            px, py = x + dx, y + dy
            if 0 <= px < w and 0 <= py < h:
                out[py, px] = color
    return out


def _save_png_atomic(arr: np.ndarray, path: Path) -> None:
    from PIL import Image

    tmp = path.with_name(path.name + ".tmp")
    mode = "RGB" if arr.ndim == 3 else "L"
    Image.fromarray(arr, mode=mode).save(tmp, format="PNG")
    os.replace(tmp, path)


def _detect_config(args, path: Path) -> dict:
    spec = _scale_spec(args)
    return {
        "command": args.command,
        "input": str(path),
        "scales": list(spec.scales),
        "gamma": spec.gamma,
        "rel_threshold": args.rel_threshold,
        "squared_variant": args.squared_variant,
        "invert": args.invert,
    }


def cmd_detect(args) -> int:
    inputs = _collect_inputs(args.inputs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = _scale_spec(args)

    def work(path: Path) -> None:
        image = load_gray(path, invert=args.invert)
        volume = detect_ridges(
            image, spec, rel_threshold=args.rel_threshold, squared_difference=args.squared_variant
        )
        curves = extract_curves(volume)
        config = _detect_config(args, path)
        ridge_doc = volume.to_json()
        ridge_doc["config"] = config
        _write_json_atomic(out_dir / f"{path.stem}.ridges.json", ridge_doc)
        _write_json_atomic(
            out_dir / f"{path.stem}.curves.json",
            {"config": config, "curves": curves_to_json(curves)},
        )
        if args.viz:
            smax = None
            for t in spec.scales:
                s = ridge_strength(compute_jet(image, t), spec.gamma, args.squared_variant)
                smax = s if smax is None else np.maximum(smax, s)
            top = float(smax.max())
            norm = smax / top if top > 0 else smax
            _save_png_atomic(
                np.rint(norm * 255.0).astype(np.uint8), out_dir / f"{path.stem}.strength.png"
            )
            overlay = _draw_points(
                _stretched_rgb(image), sorted({(p.x, p.y) for p in volume.points})
            )
            _save_png_atomic(overlay, out_dir / f"{path.stem}.overlay.png")

    _run_parallel(args.jobs, work, inputs)
    return 0


def _prompts_for_image(args, image: GrayImage, spec: ScaleSpec) -> PromptSet:
    if args.mode == "grid":
        return grid_prompts(image.shape, args.grid_side)
    if args.mode == "random":
        return random_prompts(image.shape, args.budget, args.seed)
    volume = detect_ridges(
        image, spec, rel_threshold=args.rel_threshold, squared_difference=args.squared_variant
    )
    curves = extract_curves(volume)
    prompt_set = allocate_prompts(curves, args.budget, args.seed)
    if len(prompt_set) == 0:
        print("warning: no ridge curves detected; prompt set is empty", file=sys.stderr)
    return prompt_set


def cmd_prompts(args) -> int:
    inputs = _collect_inputs(args.inputs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = _scale_spec(args)

    def work(path: Path) -> None:
        image = load_gray(path, invert=args.invert)
        prompt_set = _prompts_for_image(args, image, spec)
        config = _detect_config(args, path)
        config.update(
            {"mode": args.mode, "budget": args.budget, "seed": args.seed, "grid_side": args.grid_side}
        )
        doc = prompt_set.to_json()
        doc["config"] = config
        _write_json_atomic(out_dir / f"{path.stem}.prompts.json", doc)
        if args.viz:
            overlay = _draw_points(
                _stretched_rgb(image), [(p.x, p.y) for p in prompt_set.points]
            )
            _save_png_atomic(overlay, out_dir / f"{path.stem}.overlay.png")

    _run_parallel(args.jobs, work, inputs)
    return 0


def cmd_grid(args) -> int:
    args.mode = "grid"
    args.budget = args.grid_side * args.grid_side
    args.seed = 0
    return cmd_prompts(args)


def cmd_synth(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        height, width = (int(v) for v in args.dims.lower().split("x"))
    except ValueError as exc:
        raise InvalidParameterError(f"--dims must look like 96x96, got {args.dims!r}") from exc
    dims = (height, width)

    if args.preset == "straight":
        column = args.column if args.column is not None else (width - 1) / 2.0
        ridges = [vertical_ridge(dims, column, args.sigma, args.amplitude)]
    elif args.preset == "crossing":
        ridges = list(crossing_pair(dims, args.sigma, args.amplitude))
    else:
        ridges = [
            RidgeSpec(
                path=SinusoidPath(
                    x_center=(width - 1) / 2.0,
                    amplitude=args.sin_amplitude,
                    period=args.period,
                    height=height,
                ),
                sigma=args.sigma,
                amplitude=args.amplitude,
            )
        ]
    spec = SynthSpec(dims=dims, ridges=tuple(ridges), noise_sigma=args.noise_sigma, seed=args.seed)
    image, truth = synth_image(spec)

    name = args.name
    save_gray(image, out_dir / f"{name}.png")
    save_mask(truth.mask, out_dir / f"{name}_truth.png")
    doc = truth.to_json()
    doc["config"] = {
        "command": "synth",
        "preset": args.preset,
        "dims": [height, width],
        "sigma": args.sigma,
        "amplitude": args.amplitude,
        "noise_sigma": args.noise_sigma,
        "seed": args.seed,
    }
    _write_json_atomic(out_dir / f"{name}_centerlines.json", doc)
    return 0


def cmd_eval(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows, aggregate, unmatched = evaluate_directories(args.pred_dir, args.ref_dir)
    for stem in unmatched:
        print(f"warning: unmatched mask stem skipped: {stem}", file=sys.stderr)
    doc = {
        "config": {
            "command": "eval",
            "pred_dir": str(args.pred_dir),
            "ref_dir": str(args.ref_dir),
        },
        "per_image": [{"image": stem, **r.to_json()} for stem, r in rows],
        "aggregate": aggregate.to_json(),
        "unmatched": unmatched,
    }
    _write_json_atomic(out_dir / "report.json", doc)
    write_report_csv(out_dir / "report.csv", rows, aggregate)
    return 0


def _add_detection_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scales", default=None, help="comma list of ascending variances t (default: ladder 1..16)")
    p.add_argument("--gamma", type=float, default=0.75, help="scale-normalization exponent")
    p.add_argument("--rel-threshold", type=float, default=0.01, help="noise floor as a fraction of the global strength maximum")
    p.add_argument("--squared-variant", action="store_true", help="use the squared-curvature-difference strength measure")
    p.add_argument("--invert", action="store_true", help="invert intensities to detect valley-like features")


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="+", help="input image file(s) or directory of PNGs")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--viz", action="store_true", help="also write overlay/strength PNGs")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across images")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ridgeprompt",
        description="Multi-scale ridge detection and salience-weighted point prompts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect scale-space ridges, write ridge + curve JSON")
    _add_io_flags(p)
    _add_detection_flags(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("prompts", help="generate point prompts (ridge, grid or random mode)")
    _add_io_flags(p)
    _add_detection_flags(p)
    p.add_argument("--mode", choices=("ridge", "grid", "random"), default="ridge")
    p.add_argument("--budget", type=int, default=64, help="number of prompts (ridge/random modes)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--grid-side", type=int, default=8, help="grid side n for grid mode (n*n points)")
    p.set_defaults(func=cmd_prompts)

    p = sub.add_parser("grid", help="shortcut: uniform n x n grid prompts")
    _add_io_flags(p)
    _add_detection_flags(p)
    p.add_argument("--grid-side", type=int, default=8, help="grid side n (n*n points)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("synth", help="render a synthetic ridge image with ground truth")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--name", default="synth", help="output file stem")
    p.add_argument("--preset", choices=("straight", "sinusoid", "crossing"), default="straight")
    p.add_argument("--dims", default="96x96", help="image size as HxW")
    p.add_argument("--column", type=float, default=None, help="centerline column (straight preset)")
    p.add_argument("--sigma", type=float, default=2.0, help="ridge half-width in pixels")
    p.add_argument("--amplitude", type=float, default=1.0, help="peak intensity in (0, 1]")
    p.add_argument("--noise-sigma", type=float, default=0.0, help="additive Gaussian noise level")
    p.add_argument("--sin-amplitude", type=float, default=8.0, help="sinusoid sway in pixels")
    p.add_argument("--period", type=float, default=48.0, help="sinusoid period in pixels")
    p.add_argument("--seed", type=int, default=0, help="noise seed")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="score predicted masks against reference masks")
    p.add_argument("--pred-dir", required=True, help="directory of predicted mask PNGs")
    p.add_argument("--ref-dir", required=True, help="directory of reference mask PNGs")
    p.add_argument("--out-dir", default=".", help="output directory for report.json/report.csv")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameterError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

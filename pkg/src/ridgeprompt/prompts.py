"""Point-prompt construction: salience-weighted ridge prompts plus grid and
random baselines.

Ridge prompts are allocated across curves in proportion to relative salience:
curve i receives a quota ceil(budget * A_i / sum_j A_j), and curves are
visited in descending salience order, drawing each quota uniformly without
replacement from the curve's projected pixels until the budget runs out.
Quotas are ceilings of fractions summing to the budget, so the budget binds
before the quotas do unless a small curve caps out; any budget left by such
caps is topped up from the remaining pixels, again most salient first, which
keeps the output size at exactly min(budget, total projected pixels).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import RidgeCurve
from .errors import InvalidParameterError
from .image import PixelPoint
from .rng import Xoshiro256StarStar


@dataclass(frozen=True)
class PromptSet:
    """Ordered point prompts with foreground labels and per-point provenance.

    ``provenance[i]`` is the originating curve id for ridge prompts, or the
    strings "grid" / "random" for the baselines. The points/labels JSON
    arrays are shaped for direct ingestion by point-prompted segmenters.
    """

    points: tuple[PixelPoint, ...]
    labels: tuple[int, ...]
    provenance: tuple
    seed: int

    def __post_init__(self):
        if len(self.points) != len(self.labels) or len(self.points) != len(self.provenance):
            raise InvalidParameterError("points, labels and provenance must be parallel")
        seen = set()
        for p in self.points:
            if (p.x, p.y) in seen:
                raise InvalidParameterError(f"duplicate prompt point ({p.x}, {p.y})")
            seen.add((p.x, p.y))

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "points": [p.as_list() for p in self.points],
            "labels": list(self.labels),
            "seed": int(self.seed),
            "provenance": list(self.provenance),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PromptSet":
        return cls(
            points=tuple(PixelPoint(int(x), int(y)) for x, y in obj["points"]),
            labels=tuple(int(v) for v in obj["labels"]),
            provenance=tuple(obj["provenance"]),
            seed=int(obj["seed"]),
        )


def allocate_prompts(curves: list[RidgeCurve], prompt_budget: int, seed: int) -> PromptSet:
    """Draw up to ``prompt_budget`` prompts from ridge curves by salience.

    Two phases, both visiting curves in descending salience order. The quota
    phase draws min(quota, remaining budget, pixels) per curve. If quota caps
    on small curves leave budget unfilled while pixels remain elsewhere, a
    top-up phase assigns the leftover budget to curves with spare pixels, so
    the output size is always min(budget, total projected pixels). Each
    curve's pixels are sampled uniformly without replacement in one draw;
    the whole procedure is deterministic given the seed. An empty curve list
    yields an empty set.
    """
    if prompt_budget < 1:
        raise InvalidParameterError(f"prompt_budget must be >= 1, got {prompt_budget}")
    if not curves:
        return PromptSet(points=(), labels=(), provenance=(), seed=seed)

    total = sum(c.salience for c in curves)
    ordered = sorted(curves, key=lambda c: (-c.salience, c.id))

    takes = []
    remaining = prompt_budget
    for curve in ordered:
        quota = math.ceil(prompt_budget * curve.salience / total)
        take = min(quota, remaining, len(curve.projected))
        takes.append(take)
        remaining -= take
    if remaining > 0:
        for i, curve in enumerate(ordered):
            extra = min(remaining, len(curve.projected) - takes[i])
            takes[i] += extra
            remaining -= extra
            if remaining == 0:
                break

    rng = Xoshiro256StarStar(seed)
    points: list[PixelPoint] = []
    provenance: list[int] = []
    for curve, take in zip(ordered, takes):
        if take == 0:
            continue
        for x, y in rng.sample(curve.projected, take):
            points.append(PixelPoint(x, y))
            provenance.append(curve.id)

    return PromptSet(
        points=tuple(points),
        labels=(1,) * len(points),
        provenance=tuple(provenance),
        seed=seed,
    )


def grid_prompts(image_dims: tuple[int, int], n: int) -> PromptSet:
    """n x n prompts at uniform grid cell centers.

    ``image_dims`` is (height, width) in numpy shape order. Points are
    emitted row-major: x_i = floor((i + 0.5) * width / n) and
    y_j = floor((j + 0.5) * height / n).
    """
    height, width = int(image_dims[0]), int(image_dims[1])
    if n < 1:
        raise InvalidParameterError(f"grid side must be >= 1, got {n}")
    if n * n > width * height:
        raise InvalidParameterError(
            f"grid of {n * n} points exceeds the {width}x{height} pixel count"
        )
    if n > width or n > height:
        raise InvalidParameterError(
            f"grid side {n} exceeds an image dimension ({width}x{height}); "
            "cell centers would collide"
        )
    points = [
        PixelPoint(int((i + 0.5) * width / n), int((j + 0.5) * height / n))
        for j in range(n)
        for i in range(n)
    ]
    count = len(points)
    return PromptSet(
        points=tuple(points),
        labels=(1,) * count,
        provenance=("grid",) * count,
        seed=0,
    )


def random_prompts(image_dims: tuple[int, int], prompt_budget: int, seed: int) -> PromptSet:
    """Uniform without-replacement sample of pixel coordinates."""
    height, width = int(image_dims[0]), int(image_dims[1])
    if prompt_budget < 1:
        raise InvalidParameterError(f"prompt_budget must be >= 1, got {prompt_budget}")
    if prompt_budget > width * height:
        raise InvalidParameterError(
            f"budget {prompt_budget} exceeds the {width * height} available pixels"
        )
    rng = Xoshiro256StarStar(seed)
    chosen = rng.sample(range(width * height), prompt_budget)
    points = tuple(PixelPoint(idx % width, idx // width) for idx in chosen)
    return PromptSet(
        points=points,
        labels=(1,) * len(points),
        provenance=("random",) * len(points),
        seed=seed,
    )

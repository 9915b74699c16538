"""Connected scale-space ridge curves and their salience.

Ridge points are grouped into maximal 26-connected components over the
(x, y, k) volume; a component may drift a pixel sideways while stepping one
scale and stay connected. Salience is a discrete path integral of the square
root of ridge strength over the curve projected to image space: projection
deduplicates (x, y) across scales keeping the maximum strength per pixel, and
each projected pixel contributes one unit of path length.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import InvalidParameterError
from .ridges import RidgePoint, RidgeVolume


@dataclass(frozen=True)
class RidgeCurve:
    """One connected component of a ridge volume.

    ``projected`` holds the deduplicated image-space pixels as (x, y) pairs
    sorted by (y, x); it is the domain of the salience integral and of prompt
    sampling.
    """

    id: int
    points: tuple[RidgePoint, ...]
    salience: float
    projected: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.points:
            raise InvalidParameterError("a ridge curve cannot be empty")
        if not self.salience > 0:
            raise InvalidParameterError(f"salience must be positive, got {self.salience}")

    def to_json(self) -> dict:
        pts = sorted(self.points, key=lambda p: (p.k, p.y, p.x))
        return {
            "id": int(self.id),
            "salience": float(self.salience),
            "points": [p.as_list() for p in pts],
        }


def salience(curve_points) -> float:
    """Discrete ridge salience: sum over projected pixels of sqrt(max strength).

    Accepts a RidgeCurve or any iterable of RidgePoint. Projection takes, for
    each distinct (x, y), the maximum strength among the points mapping there,
    so scale multiplicity never inflates the integral.
    """
    points = curve_points.points if isinstance(curve_points, RidgeCurve) else tuple(curve_points)
    if not points:
        raise InvalidParameterError("salience of an empty point set is undefined")
    best: dict[tuple[int, int], float] = {}
    for p in points:
        key = (p.x, p.y)
        if p.strength > best.get(key, 0.0):
            best[key] = p.strength
    # deterministic summation order: sorted by (y, x)
    return float(sum(np.sqrt(best[k]) for k in sorted(best, key=lambda q: (q[1], q[0]))))


def extract_curves(volume: RidgeVolume) -> list[RidgeCurve]:
    """Partition a ridge volume into 26-connected curves, most salient first.

    Curve ids reflect discovery order in a (k, y, x) scan of the points, so
    they are stable across runs; the returned list is sorted by descending
    salience with ties broken by ascending id.
    """
    if not volume.points:
        return []

    m, n, num_scales = volume.dims
    occupied = np.zeros((num_scales, m, n), dtype=bool)
    strength = np.zeros((num_scales, m, n), dtype=np.float64)
    for p in volume.points:
        occupied[p.k, p.y, p.x] = True
        strength[p.k, p.y, p.x] = p.strength

    labels, _ = ndimage.label(occupied, structure=np.ones((3, 3, 3), dtype=bool))

    # assign curve ids by first appearance in (k, y, x) order
    scan = sorted(volume.points, key=lambda p: (p.k, p.y, p.x))
    id_of_label: dict[int, int] = {}
    members: dict[int, list[RidgePoint]] = {}
    for p in scan:
        lab = int(labels[p.k, p.y, p.x])
        if lab not in id_of_label:
            id_of_label[lab] = len(id_of_label)
        members.setdefault(lab, []).append(p)

    curves = []
    for lab, pts in members.items():
        pts = tuple(pts)
        projected = tuple(sorted({(p.x, p.y) for p in pts}, key=lambda q: (q[1], q[0])))
        curves.append(
            RidgeCurve(
                id=id_of_label[lab],
                points=pts,
                salience=salience(pts),
                projected=projected,
            )
        )
    curves.sort(key=lambda c: (-c.salience, c.id))
    return curves


def curves_to_json(curves: list[RidgeCurve]) -> list[dict]:
    """JSON form of a curve list, sorted by descending salience."""
    ordered = sorted(curves, key=lambda c: (-c.salience, c.id))
    return [c.to_json() for c in ordered]

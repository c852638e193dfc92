"""Empirical thin-triangle constant on small balls.

A geodesic triangle is mapped onto its comparison tripod; points of two
sides with the same image must stay close.  The defect of a triangle is the
largest distance between such points, measured in the Cayley graph with
points allowed in the interior of edges.  Only one geodesic per pair of
vertices is examined (the shortlex-least one), so the result is a lower
estimate of the true constant.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cayley import ElementIndex, enumerate_growth
from .errors import GrowthLabError
from .presentation import GroupPresentation
from .rewriting import normal_form
from .words import Word, inverse


@dataclass(frozen=True)
class GeodesicTriangle:
    vertices: tuple[Word, Word, Word]
    # sides[0] joins vertices 0 and 1, sides[1] joins 0 and 2, sides[2] joins 1 and 2,
    # each read from the lower-indexed vertex
    sides: tuple[Word, Word, Word]
    # tripod leg lengths at vertices 0, 1, 2
    internal_points: tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ThinnessReport:
    radius_examined: int
    triangles_examined: int
    delta_hat: int
    worst_triangle: GeodesicTriangle | None
    worst_defect: Fraction
    exhaustive: bool
    label: str = "empirical lower estimate"

    def to_dict(self, p: GroupPresentation | None = None) -> dict:
        fmt = (lambda w: p.format(w) or "1") if p is not None else list
        worst = None
        if self.worst_triangle is not None:
            worst = {
                "vertices": [fmt(v) for v in self.worst_triangle.vertices],
                "sides": [fmt(s) for s in self.worst_triangle.sides],
                "internal_points": [str(x) for x in self.worst_triangle.internal_points],
            }
        return {
            "schema": "growthlab.thinness/1",
            "radius_examined": self.radius_examined,
            "triangles_examined": self.triangles_examined,
            "delta_hat": self.delta_hat,
            "worst_defect": str(self.worst_defect),
            "worst_triangle": worst,
            "exhaustive": self.exhaustive,
            "label": self.label,
        }


class _Metric:
    """Canonical forms and cached distances inside one group."""

    def __init__(self, p: GroupPresentation, radius: int):
        self.p = p
        self.index = None if p.rewriting is not None else ElementIndex.for_ball(p, radius)
        self.radius = radius
        self.capped = False  # set when a distance fell outside the indexed ball
        self._ids: dict[Word, int] = {}
        self._words: list[Word] = []
        self._dist: dict[tuple[int, int], int] = {}

    def canon(self, w: Sequence[int]) -> Word:
        if self.index is None:
            return normal_form(w, self.p.rewriting)
        return self.index.canonical(w)

    def ident(self, w: Word) -> int:
        i = self._ids.get(w)
        if i is None:
            i = self._ids[w] = len(self._words)
            self._words.append(w)
        return i

    def dist(self, i: int, j: int) -> int:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        d = self._dist.get(key)
        if d is None:
            a, b = self._words[key[0]], self._words[key[1]]
            w = inverse(a, self.p.alphabet) + b
            if self.index is None:
                d = len(normal_form(w, self.p.rewriting))
            else:
                try:
                    d = self.index.length(w)
                except GrowthLabError:
                    # outside the ball: a lower bound, exact wherever it matters
                    # because a closer pair of endpoints exists
                    d = self.radius + 1
                    self.capped = True
            self._dist[key] = d
        return d

    def geodesic(self, u: Word, v: Word) -> Word:
        return self.canon(inverse(u, self.p.alphabet) + v)

    def path(self, u: Word, side: Word) -> list[int]:
        out = []
        for k in range(len(side) + 1):
            out.append(self.ident(self.canon(u + side[:k])))
        return out


def _point_distance(metric: _Metric, a: tuple[int, int, int], b: tuple[int, int, int]) -> int:
    """Distance in quarter units between points on edges.

    A point is ``(u, v, s)``: the point ``s/4`` of the way along the edge from
    vertex ``u`` to vertex ``v`` (``u == v`` when it is a vertex).
    """
    u1, u2, s = a
    v1, v2, r = b
    if {u1, u2} == {v1, v2} and u1 != u2:
        return abs(s - r) if u1 == v1 else abs(4 - s - r)
    d = metric.dist
    return min(
        s + 4 * d(u1, v1) + r,
        s + 4 * d(u1, v2) + (4 - r),
        (4 - s) + 4 * d(u2, v1) + r,
        (4 - s) + 4 * d(u2, v2) + (4 - r),
    )


def _point(path: list[int], q: int) -> tuple[int, int, int]:
    k, s = divmod(q, 4)
    if s == 0:
        return (path[k], path[k], 0)
    return (path[k], path[k + 1], s)


def _defect(metric: _Metric, tri: GeodesicTriangle) -> Fraction:
    x = tri.vertices
    paths = {}
    for (i, j), side in zip(((0, 1), (0, 2), (1, 2)), tri.sides):
        paths[i, j] = metric.path(x[i], side)
        paths[j, i] = paths[i, j][::-1]
    worst = 0
    for i, (j, k) in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
        leg = tri.internal_points[i]
        # the distance is a concave minimum of lines with slopes in {-2, 0, 2}
        # along each edge, so its maximum is attained at a quarter point
        for q in range(0, int(leg * 4) + 1):
            d = _point_distance(metric, _point(paths[i, j], q), _point(paths[i, k], q))
            worst = max(worst, d)
    return Fraction(worst, 4)


def make_triangle(metric: _Metric, a: Word, b: Word, c: Word) -> GeodesicTriangle:
    s01, s02, s12 = metric.geodesic(a, b), metric.geodesic(a, c), metric.geodesic(b, c)
    d01, d02, d12 = len(s01), len(s02), len(s12)
    legs = (
        Fraction(d01 + d02 - d12, 2),
        Fraction(d01 + d12 - d02, 2),
        Fraction(d02 + d12 - d01, 2),
    )
    return GeodesicTriangle((a, b, c), (s01, s02, s12), legs)


def _ball_elements(p: GroupPresentation, R: int) -> list[Word]:
    table = enumerate_growth(p, R, store_elements=True)
    return [w for _, w in table.iter_words()]


def estimate_delta(
    p: GroupPresentation,
    R: int,
    sample: int | None = None,
    seed: int = 0,
) -> ThinnessReport:
    """Largest tripod defect over triangles with vertices in the ball of radius ``R``.

    ``sample=None`` examines every unordered triple of distinct elements;
    otherwise ``sample`` triples are drawn with a fixed seed.
    """
    elements = _ball_elements(p, R)
    # every point on a side lies within 3R of the identity
    metric = _Metric(p, 3 * R)
    if sample is None:
        triples = itertools.combinations(range(len(elements)), 3)
    else:
        rng = random.Random(seed)
        n = len(elements)
        triples = (tuple(sorted(rng.sample(range(n), 3))) for _ in range(sample)) if n >= 3 else iter(())
    worst, worst_tri, count = Fraction(0), None, 0
    for i, j, k in triples:
        tri = make_triangle(metric, elements[i], elements[j], elements[k])
        d = _defect(metric, tri)
        count += 1
        if d > worst or worst_tri is None:
            worst, worst_tri = d, tri
    return ThinnessReport(R, count, math.ceil(worst), worst_tri, worst, sample is None)


def recheck(p: GroupPresentation, tri: GeodesicTriangle, radius: int | None = None) -> int:
    """Integer defect of one triangle, recomputed from scratch."""
    if radius is None:
        radius = max(len(v) for v in tri.vertices)
    metric = _Metric(p, 3 * radius)
    return math.ceil(_defect(metric, tri))

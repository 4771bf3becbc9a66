"""Newton polygons over a valued field.

The polygon of p is the lower convex hull of the points (i, v(p_i)) for the
nonzero coefficients, values compared lexicographically.  Slope comparisons
are done by integer cross-scaling, so everything stays exact at any rank.

For monic p the polygon encodes the multiset of root valuations in an
algebraic closure: an edge of horizontal length L and slope s contributes L
copies of -s, and a zero coefficient tail of length k contributes k copies of
inf.  An "isolated slope" is an edge of horizontal length exactly 1, i.e. two
consecutive hull vertices one apart.
"""
from __future__ import annotations

from dataclasses import dataclass

from .unipoly import UniPoly
from .values import INF, ExtendedValue, ValueVector


Point = tuple[int, ValueVector]


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    trailing_zero_count: int
    degree: int

    def edges(self) -> list[dict]:
        out = []
        for (i1, v1), (i2, v2) in zip(self.vertices, self.vertices[1:]):
            out.append({
                "from": i1,
                "to": i2,
                "length": i2 - i1,
                "slope": (v2 - v1).div_by_int(i2 - i1),
            })
        return out


@dataclass(frozen=True)
class ValuationMultiset:
    """A sorted multiset of extended values."""

    entries: tuple[ExtendedValue, ...]

    @staticmethod
    def of(values) -> "ValuationMultiset":
        return ValuationMultiset(tuple(sorted(values)))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts(self) -> dict:
        out: dict[ExtendedValue, int] = {}
        for v in self.entries:
            out[v] = out.get(v, 0) + 1
        return out

    def __str__(self):
        return "{" + ", ".join(str(v) for v in self.entries) + "}"


def _strict_turn(a: Point, b: Point, c: Point) -> bool:
    """True iff slope(a, b) < slope(b, c), i.e. b is a genuine hull vertex."""
    (i1, v1), (i2, v2), (i3, v3) = a, b, c
    left = (v2 - v1).scaled(i3 - i2)
    right = (v3 - v2).scaled(i2 - i1)
    return left < right


def polygon(p: UniPoly, field) -> NewtonPolygon:
    if p.is_zero_poly():
        raise ValueError("the zero polynomial has no Newton polygon")
    points: list[Point] = []
    k0 = None
    for i, c in enumerate(p.coeffs):
        v = field.valuation(c)
        if v.is_infinite:
            continue
        if k0 is None:
            k0 = i
        points.append((i, v.vector))
    if not points:
        raise ValueError("no finite points (zero polynomial)")
    hull: list[Point] = []
    for pt in points:
        while len(hull) >= 2 and not _strict_turn(hull[-2], hull[-1], pt):
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(tuple(points), tuple(hull), k0, p.degree())


def root_valuations(p: UniPoly, field) -> ValuationMultiset:
    """Multiset of valuations of the roots of monic p in an algebraic closure."""
    if p.is_zero_poly():
        raise ValueError("zero polynomial")
    if not p.is_monic():
        raise ValueError("root valuations require a monic polynomial")
    pg = polygon(p, field)
    values: list[ExtendedValue] = [INF] * pg.trailing_zero_count
    for e in pg.edges():
        val = ExtendedValue(-e["slope"])
        values.extend([val] * e["length"])
    return ValuationMultiset.of(values)


def isolated_slopes(p: UniPoly, field) -> list[int]:
    """All k such that (k, v(p_k)) -> (k+1, v(p_{k+1})) is a hull edge of length 1."""
    pg = polygon(p, field)
    return [i1 for (i1, _), (i2, _) in zip(pg.vertices, pg.vertices[1:]) if i2 - i1 == 1]

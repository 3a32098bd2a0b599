"""Finite point-line geometries and their metric/subspace primitives.

Points are dense integer indices ``0..point_count-1``; lines are stored as
sorted tuples of point indices, deduplicated and ordered lexicographically,
so structural equality of geometries is plain dataclass equality.  All set
manipulation runs over Python-int bitsets sized to the point count, which
keeps the exhaustive scans used elsewhere in the package fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

UNREACHABLE = -1


class GeometryError(ValueError):
    """An operation was applied outside its stated domain."""


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


@dataclass(frozen=True)
class Geometry:
    """An abstract point-line incidence structure.

    ``labels``, when present, carries one provenance label per point (see
    :mod:`nearhex.labels`); imported geometries may carry plain strings.
    """

    point_count: int
    lines: tuple[tuple[int, ...], ...]
    labels: tuple | None = None

    def __post_init__(self) -> None:
        if self.point_count < 0:
            raise GeometryError("negative point count")
        seen = set()
        canon = []
        for line in self.lines:
            pts = tuple(sorted(set(line)))
            if len(pts) < 2:
                raise GeometryError(f"line with fewer than 2 points: {line!r}")
            if pts[0] < 0 or pts[-1] >= self.point_count:
                raise GeometryError(f"line {line!r} has out-of-range point index")
            if pts not in seen:
                seen.add(pts)
                canon.append(pts)
        canon.sort()
        object.__setattr__(self, "lines", tuple(canon))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.point_count:
                raise GeometryError("label count does not match point count")
            object.__setattr__(self, "labels", labels)

    # -- cached incidence machinery -------------------------------------

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask of neighbours (collinear points, self excluded) per point."""
        adj = [0] * self.point_count
        for line in self.lines:
            lm = mask_of(line)
            for p in line:
                adj[p] |= lm
        return tuple(adj[p] & ~(1 << p) for p in range(self.point_count))

    @cached_property
    def lines_by_point(self) -> tuple[tuple[int, ...], ...]:
        through: list[list[int]] = [[] for _ in range(self.point_count)]
        for i, line in enumerate(self.lines):
            for p in line:
                through[p].append(i)
        return tuple(tuple(t) for t in through)

    @cached_property
    def line_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.lines)

    @cached_property
    def pair_line(self) -> dict[tuple[int, int], int]:
        """Map from a sorted collinear pair to the index of its (unique) line.

        When the geometry is not a partial linear space the last line wins;
        use :func:`validate_pls` to detect that situation.
        """
        out: dict[tuple[int, int], int] = {}
        for i, line in enumerate(self.lines):
            for a, b in combinations(line, 2):
                out[(a, b)] = i
        return out

    @cached_property
    def distance_rows(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs collinearity-graph distances (UNREACHABLE when disconnected)."""
        adj = self.adjacency
        full = self.full_mask
        rows = []
        for s in range(self.point_count):
            dist = [UNREACHABLE] * self.point_count
            dist[s] = 0
            seen = 1 << s
            frontier = 1 << s
            d = 0
            while frontier and seen != full:
                nxt = 0
                for v in bits_of(frontier):
                    nxt |= adj[v]
                nxt &= ~seen
                d += 1
                for v in bits_of(nxt):
                    dist[v] = d
                seen |= nxt
                frontier = nxt
            rows.append(tuple(dist))
        return tuple(rows)

    @property
    def full_mask(self) -> int:
        return (1 << self.point_count) - 1


@dataclass(frozen=True)
class DistanceTable:
    """BFS distances from ``source`` in the collinearity graph."""

    source: int
    dist: tuple[int, ...]


class Metrics(NamedTuple):
    connected: bool
    diameter: int


class PlsVerdict(NamedTuple):
    ok: bool
    # each violation: ((a, b), line_index_1, line_index_2)
    violations: tuple[tuple[tuple[int, int], int, int], ...]


def _check_points(g: Geometry, pts: Iterable[int]) -> list[int]:
    out = []
    for p in pts:
        if not 0 <= p < g.point_count:
            raise GeometryError(f"point index {p} out of range")
        out.append(p)
    return out


def collinear(g: Geometry, x: int, y: int) -> bool:
    return x != y and bool(g.adjacency[x] >> y & 1)


def validate_pls(g: Geometry) -> PlsVerdict:
    """Check the partial-linear-space property: any two points on <= 1 line."""
    first: dict[tuple[int, int], int] = {}
    violations = []
    for i, line in enumerate(g.lines):
        for pair in combinations(line, 2):
            if pair in first:
                violations.append((pair, first[pair], i))
            else:
                first[pair] = i
    return PlsVerdict(not violations, tuple(violations))


def perp(g: Geometry, points: Iterable[int]) -> frozenset[int]:
    """Intersection of the perps of the given points.

    The perp of a single point contains the point itself; consequently for a
    non-collinear pair the result holds only their common neighbours.
    """
    pts = _check_points(g, points)
    if not pts:
        raise GeometryError("perp of an empty set is undefined")
    m = g.full_mask
    for p in pts:
        m &= g.adjacency[p] | (1 << p)
    return frozenset(bits_of(m))


def third_point(g: Geometry, x: int, y: int) -> int:
    """The third point of the (3-point) line through two collinear points."""
    _check_points(g, (x, y))
    if x == y or not collinear(g, x, y):
        raise GeometryError(f"points {x} and {y} are not two collinear points")
    line = g.lines[g.pair_line[(min(x, y), max(x, y))]]
    if len(line) != 3:
        raise GeometryError(f"line {line!r} does not have exactly 3 points")
    return next(p for p in line if p != x and p != y)


def distances(g: Geometry, x: int) -> DistanceTable:
    (src,) = _check_points(g, (x,))
    return DistanceTable(src, g.distance_rows[src])


def metrics(g: Geometry) -> Metrics:
    """Connectivity flag plus the largest finite distance."""
    diameter = 0
    connected = g.point_count > 0
    for row in g.distance_rows:
        m = max(row) if row else 0
        if UNREACHABLE in row:
            connected = False
        diameter = max(diameter, m)
    return Metrics(connected, diameter)


def is_subspace(g: Geometry, points: Iterable[int]) -> bool:
    """True iff every line meeting the set in >= 2 points lies inside it."""
    m = mask_of(_check_points(g, points))
    for line in g.lines:
        lm = mask_of(line)
        inter = lm & m
        if inter and inter != (inter & -inter) and lm & ~m:
            return False
    return True


def is_geometric_hyperplane(g: Geometry, points: Iterable[int]) -> bool:
    """Proper nonempty subspace meeting every line."""
    m = mask_of(_check_points(g, points))
    if m == 0 or m == g.full_mask:
        return False
    if not is_subspace(g, bits_of(m)):
        return False
    return all(mask_of(line) & m for line in g.lines)


def convex_closure(g: Geometry, points: Iterable[int]) -> frozenset[int]:
    """Smallest convex subspace containing the given points.

    Iterates two expansion rules to a fixed point: add every point on a
    geodesic between two members, and complete every line that already has
    two members.  Line completion is required: closing under geodesics alone
    stalls on sets (4-cycles and the like) that are metrically convex but
    carry no full line, and those are useless for quad classification.
    """
    pts = _check_points(g, points)
    if not pts:
        raise GeometryError("closure of an empty set is undefined")
    adj = g.adjacency
    rows = None
    m = mask_of(pts)
    while True:
        add = 0
        members = list(bits_of(m))
        for i, a in enumerate(members):
            ra = None
            for b in members[i + 1 :]:
                if adj[a] >> b & 1:
                    line = g.lines[g.pair_line[(a, b)]]
                    add |= mask_of(line)
                elif adj[a] & adj[b]:
                    add |= adj[a] & adj[b]
                else:
                    # distance 3 or more (or disconnected): full interval scan
                    if rows is None:
                        rows = g.distance_rows
                    if ra is None:
                        ra = rows[a]
                    rb = rows[b]
                    d = ra[b]
                    if d == UNREACHABLE:
                        continue
                    for z in range(g.point_count):
                        if ra[z] != UNREACHABLE and ra[z] + rb[z] == d:
                            add |= 1 << z
        if add & ~m == 0:
            return frozenset(bits_of(m))
        m |= add


def induced_geometry(g: Geometry, points: Iterable[int]) -> Geometry:
    """Geometry on the given points whose lines are the lines lying inside."""
    pts = sorted(set(_check_points(g, points)))
    remap = {p: i for i, p in enumerate(pts)}
    m = mask_of(pts)
    lines = [
        tuple(remap[p] for p in line)
        for line in g.lines
        if mask_of(line) & ~m == 0
    ]
    labels = tuple(g.labels[p] for p in pts) if g.labels is not None else None
    return Geometry(len(pts), tuple(lines), labels)


def dual_geometry(g: Geometry) -> Geometry:
    """Swap points and lines: dual point i is line i, dual lines are pencils."""
    through = g.lines_by_point
    for p, t in enumerate(through):
        if len(t) < 2:
            raise GeometryError(f"point {p} lies on {len(t)} < 2 lines")
    return Geometry(len(g.lines), tuple(tuple(t) for t in through))

"""The edge/factor model of the unique (2,2) generalized quadrangle and
its triad machinery.

Points of the model are the 15 edges (2-subsets) of a fixed 6-set, lines
are the 15 factors (triples of pairwise disjoint edges), and two points are
collinear exactly when the edges are disjoint.  Triads of points, triads of
lines (realised on the dual geometry) and the grid/complete-triad structure
around them are what the near-hexagon builders consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .geometry import (
    Geometry,
    GeometryError,
    collinear,
    dual_geometry,
    induced_geometry,
    mask_of,
    perp,
    validate_pls,
)
from .labels import Edge

GROUND = (1, 2, 3, 4, 5, 6)

#: the 15 edges in lexicographic order; fixes point indices 0..14 for good
EDGES: tuple[frozenset[int], ...] = tuple(
    frozenset(c) for c in combinations(GROUND, 2)
)
EDGE_INDEX: dict[frozenset[int], int] = {e: i for i, e in enumerate(EDGES)}


def build_w2() -> Geometry:
    """Build the (2,2)-GQ on the 15 edges of a 6-set, with Edge labels."""
    factors = []
    for trip in combinations(range(len(EDGES)), 3):
        a, b, c = (EDGES[i] for i in trip)
        if a.isdisjoint(b) and a.isdisjoint(c) and b.isdisjoint(c):
            factors.append(trip)
    g = Geometry(len(EDGES), tuple(factors), tuple(Edge(e) for e in EDGES))
    if len(g.lines) != 15:
        raise GeometryError(f"expected 15 factors, got {len(g.lines)}")
    return g


class GqVerdict(NamedTuple):
    order: tuple[int, int] | None
    witness: str | None

    @property
    def ok(self) -> bool:
        return self.order is not None


def is_gq(g: Geometry) -> GqVerdict:
    """Decide whether ``g`` is a generalized quadrangle and find its order.

    Checks, in order: partial linear space, constant line size s+1, constant
    number t+1 of lines per point, and the one-point axiom (every point off
    a line is collinear with exactly one of its points).  The witness names
    the first failure.
    """
    pls = validate_pls(g)
    if not pls.ok:
        (a, b), i, j = pls.violations[0]
        return GqVerdict(None, f"points {a},{b} lie on lines {i} and {j}")
    if not g.lines:
        return GqVerdict(None, "no lines")
    sizes = {len(line) for line in g.lines}
    if len(sizes) != 1:
        return GqVerdict(None, f"line sizes vary: {sorted(sizes)}")
    degrees = {len(t) for t in g.lines_by_point}
    if len(degrees) != 1:
        return GqVerdict(None, f"lines per point vary: {sorted(degrees)}")
    adj = g.adjacency
    for li, line in enumerate(g.lines):
        lm = mask_of(line)
        for x in range(g.point_count):
            if lm >> x & 1:
                continue
            hits = (adj[x] & lm).bit_count()
            if hits != 1:
                return GqVerdict(
                    None, f"point {x} is collinear with {hits} points of line {li}"
                )
    return GqVerdict((sizes.pop() - 1, degrees.pop() - 1), None)


@dataclass(frozen=True)
class Triad:
    """Three pairwise non-collinear points (or pairwise disjoint lines)."""

    elements: tuple[int, int, int]
    kind: str  # "complete" | "incomplete"
    perp_set: frozenset[int]
    mode: str = "points"  # "points" | "lines"


def _classify_triad(g: Geometry, elems: tuple[int, int, int], mode: str) -> Triad:
    p = perp(g, elems)
    if len(p) == 3:
        kind = "complete"
    elif len(p) == 1:
        kind = "incomplete"
    else:
        raise GeometryError(
            f"triad {elems} has perp of size {len(p)}; expected 1 or 3"
        )
    return Triad(elems, kind, p, mode)


def enumerate_triads(g: Geometry, mode: str = "points") -> list[Triad]:
    """All triads of points, or of lines (computed on the dual geometry)."""
    if mode == "points":
        h = g
    elif mode == "lines":
        h = dual_geometry(g)
    else:
        raise GeometryError(f"unknown triad mode {mode!r}")
    adj = h.adjacency
    out = []
    for a, b, c in combinations(range(h.point_count), 3):
        if adj[a] >> b & 1 or adj[a] >> c & 1 or adj[b] >> c & 1:
            continue
        out.append(_classify_triad(h, (a, b, c), mode))
    return out


def incomplete_triad_subgq(g: Geometry, triad: Triad) -> frozenset[int]:
    """The unique 9-point set containing an incomplete triad that induces a
    (2,1)-GQ.  The search itself certifies uniqueness."""
    if triad.mode != "points":
        raise GeometryError("grid search applies to point triads")
    if triad.kind != "incomplete":
        raise GeometryError("complete triads are not contained in a grid")
    adj = g.adjacency
    tset = set(triad.elements)
    # a grid through the triad lies inside the points collinear with >= 2
    # of its elements, so the subset search can be pruned to those
    candidates = [
        p
        for p in range(g.point_count)
        if p not in tset
        and sum(adj[p] >> t & 1 for t in triad.elements) >= 2
    ]
    found = []
    for rest in combinations(candidates, 6):
        pts = frozenset(tset) | frozenset(rest)
        if is_gq(induced_geometry(g, pts)).order == (2, 1):
            found.append(pts)
    if len(found) != 1:
        raise GeometryError(
            f"triad {triad.elements}: found {len(found)} grids, expected exactly 1"
        )
    return found[0]


def complete_triad_through(g: Geometry, x: int, y: int) -> Triad:
    """The unique complete triad containing a non-collinear pair."""
    if x == y or collinear(g, x, y):
        raise GeometryError(f"points {x} and {y} are not a non-collinear pair")
    adj = g.adjacency
    found = []
    for z in range(g.point_count):
        if z in (x, y) or adj[z] >> x & 1 or adj[z] >> y & 1:
            continue
        p = perp(g, (x, y, z))
        if len(p) == 3:
            found.append(Triad(tuple(sorted((x, y, z))), "complete", p))
    if len(found) != 1:
        raise GeometryError(
            f"pair ({x},{y}): found {len(found)} complete triads, expected exactly 1"
        )
    return found[0]

"""Builders for the four labelled geometries.

* :func:`build_h3` -- the 105-point near hexagon assembled from two
  copies of the (2,2)-GQ, glued along a fixed isomorphism.
* :func:`build_dsp62` -- the 135-point dual polar space obtained by
  adjoining both base copies to the 105-point hexagon.
* :func:`build_h3_partitions` -- the partition model (perfect matchings of
  an 8-set).
* :func:`build_h3_debruyn` -- the flag model on ordered pairs of edges.

The two copies of the base quadrangle share the ground set, and the pairing
x <-> x' is fixed as the identity on edge labels: the quadrangle is unique
up to isomorphism, so any pairing yields an isomorphic result, and the
identity keeps point indices reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .geometry import Geometry, GeometryError, perp, validate_pls
from .gq22 import EDGES, EDGE_INDEX, Triad, build_w2, enumerate_triads
from .labels import Edge, OrderedPair, Pair, Partition, PrimedEdge, perp_related


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise GeometryError("construction failure: " + message)


def _base_triples(w2: Geometry) -> list[tuple[int, int, int]]:
    """The 35 base triples: the 15 lines plus the 20 complete point triads."""
    triples = [tuple(line) for line in w2.lines]
    triples += [
        t.elements for t in enumerate_triads(w2, "points") if t.kind == "complete"
    ]
    return triples


def h3_point_list() -> list[tuple[int, int]]:
    """Point order of the 105-point hexagon: (x, u') with u' in x'^perp."""
    w2 = build_w2()
    return [(x, u) for x in range(15) for u in sorted(perp(w2, (x,)))]


def build_h3() -> Geometry:
    """Build the 105-point near hexagon with Pair labels.

    For each base triple T (a line or a complete triad), the perp of its
    primed copy is again a 3-set T'^perp, and every bijection T -> T'^perp
    contributes one line.  All 6 bijections per triple survive the point
    membership condition, giving 35 * 6 = 210 pairwise distinct lines; both
    facts are checked here rather than assumed.
    """
    w2 = build_w2()
    points = h3_point_list()
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    for t in _base_triples(w2):
        t_perp = sorted(perp(w2, t))
        _require(len(t_perp) == 3, f"base triple {t} has perp of size {len(t_perp)}")
        for sigma in permutations(t_perp):
            for x, u in zip(t, sigma):
                _require((x, u) in index, f"candidate pair ({x},{u}) is not a point")
            line = tuple(sorted(index[(x, u)] for x, u in zip(t, sigma)))
            _require(line not in lines, f"duplicate line {line}")
            lines.add(line)
    _require(len(lines) == 210, f"expected 210 lines, got {len(lines)}")
    labels = tuple(
        Pair(Edge(EDGES[x]), PrimedEdge(EDGES[u])) for x, u in points
    )
    g = Geometry(len(points), tuple(lines), labels)
    degrees = {len(t) for t in g.lines_by_point}
    _require(degrees == {6}, f"lines per point {sorted(degrees)}, expected {{6}}")
    _require(validate_pls(g).ok, "two lines share two points")
    return g


def build_dsp62(h3: Geometry) -> Geometry:
    """Adjoin both base copies to the 105-point hexagon.

    Points 0..104 are the hexagon's points, 105..119 the plain edges,
    120..134 the primed edges; the new lines are {x, (x,u'), u'}, one per
    hexagon point.
    """
    if h3.point_count != 105 or h3.labels is None:
        raise GeometryError("input must be the 105-point hexagon with Pair labels")
    lines = [tuple(line) for line in h3.lines]
    for i, label in enumerate(h3.labels):
        if not isinstance(label, Pair):
            raise GeometryError(f"point {i} lacks a Pair label")
        x = EDGE_INDEX[label.base.ends]
        u = EDGE_INDEX[label.prime.ends]
        lines.append((i, 105 + x, 120 + u))
    labels = (
        h3.labels
        + tuple(Edge(e) for e in EDGES)
        + tuple(PrimedEdge(e) for e in EDGES)
    )
    g = Geometry(135, tuple(lines), labels)
    _require(len(g.lines) == 315, f"expected 315 lines, got {len(g.lines)}")
    _require(validate_pls(g).ok, "two lines share two points")
    degrees = {len(t) for t in g.lines_by_point}
    _require(degrees == {7}, f"lines per point {sorted(degrees)}, expected {{7}}")
    adj = g.adjacency
    for a in range(105, 135):
        for b in range(a + 1, 135):
            same_side = (a < 120) == (b < 120)
            if same_side:
                _require(not adj[a] >> b & 1, f"{a} and {b} must not be collinear")
            else:
                expected = perp_related(labels[a].ends, labels[b].ends)
                _require(
                    bool(adj[a] >> b & 1) == expected,
                    f"cross collinearity wrong for {a},{b}",
                )
    return g


def _matchings(items: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for i, second in enumerate(rest):
        pair = (first, second)
        for sub in _matchings(rest[:i] + rest[i + 1 :]):
            out.append((pair,) + sub)
    return out


def build_h3_partitions() -> Geometry:
    """The partition model: points are the 105 perfect matchings of an
    8-set, lines are the triples of matchings sharing two blocks."""
    points = sorted(_matchings(tuple(range(1, 9))))
    index = {m: i for i, m in enumerate(points)}
    _require(len(points) == 105, f"expected 105 matchings, got {len(points)}")
    by_block_pair: dict[tuple[tuple[int, int], tuple[int, int]], list[int]] = {}
    for m in points:
        for blocks in combinations(m, 2):
            by_block_pair.setdefault(blocks, []).append(index[m])
    lines = []
    for blocks, members in sorted(by_block_pair.items()):
        _require(len(members) == 3, f"blocks {blocks} shared by {len(members)} points")
        lines.append(tuple(sorted(members)))
    _require(len(lines) == 210, f"expected 210 lines, got {len(lines)}")
    labels = tuple(
        Partition(frozenset(frozenset(b) for b in m)) for m in points
    )
    g = Geometry(105, tuple(lines), labels)
    _require(validate_pls(g).ok, "two lines share two points")
    return g


@dataclass(frozen=True)
class DebruynCensus:
    """The flag-model geometry plus per-type line bookkeeping.

    ``escort_triads`` records, for each of the 120 swap-type lines, the point
    triad {x',y',z'} used to build it, classified complete/incomplete.
    Descriptions of this construction sometimes call these triads
    incomplete; the census records what actually happens instead of
    asserting either reading.
    """

    geometry: Geometry
    type_counts: dict[str, int]
    escort_triads: tuple[Triad, ...]

    @property
    def escort_kind_counts(self) -> dict[str, int]:
        out = {"complete": 0, "incomplete": 0}
        for t in self.escort_triads:
            out[t.kind] += 1
        return out


def debruyn_census() -> DebruynCensus:
    """Build the flag model, keeping per-type line counts and the triads
    behind the swap-type lines."""
    w2 = build_w2()
    adj = w2.adjacency
    points = [(x, x) for x in range(15)]
    points += [
        (x, y)
        for x in range(15)
        for y in range(15)
        if x != y and adj[x] >> y & 1
    ]
    points.sort()
    index = {p: i for i, p in enumerate(points)}
    _require(len(points) == 105, f"expected 105 points, got {len(points)}")

    by_type: dict[str, set[tuple[int, ...]]] = {k: set() for k in "i ii iii iv".split()}

    def emit(kind: str, pairs) -> None:
        line = tuple(sorted(index[p] for p in pairs))
        _require(line not in by_type[kind], f"duplicate type-{kind} line")
        by_type[kind].add(line)

    for line in w2.lines:
        a, b, c = line
        emit("i", [(a, a), (b, b), (c, c)])
        for x in line:
            y, z = (p for p in line if p != x)
            emit("ii", [(x, x), (x, y), (x, z)])
        emit("iii", [(a, b), (b, c), (c, a)])
        emit("iii", [(a, c), (c, b), (b, a)])

    escorts = []
    for triad in enumerate_triads(w2, "lines"):
        if triad.kind != "incomplete":
            continue
        (centre,) = triad.perp_set
        centre_pts = set(w2.lines[centre])
        anchors = []
        for li in triad.elements:
            meet = set(w2.lines[li]) & centre_pts
            _require(len(meet) == 1, f"lines {li} and {centre} meet in {len(meet)} points")
            anchors.append((set(w2.lines[li]), meet.pop()))
        (kpts, x), (mpts, y), (npts, z) = anchors
        for xp in sorted(kpts - {x}):
            yps = [q for q in mpts - {y} if not adj[xp] >> q & 1]
            zps = [q for q in npts - {z} if not adj[xp] >> q & 1]
            _require(
                len(yps) == 1 and len(zps) == 1,
                f"non-collinear mate of {xp} not unique in triad {triad.elements}",
            )
            yp, zp = yps[0], zps[0]
            for a, b in ((xp, yp), (xp, zp), (yp, zp)):
                _require(not adj[a] >> b & 1, f"escort triple {xp},{yp},{zp} not a triad")
            p = perp(w2, (xp, yp, zp))
            kind = {3: "complete", 1: "incomplete"}.get(len(p))
            _require(kind is not None, f"escort perp has size {len(p)}")
            escorts.append(Triad(tuple(sorted((xp, yp, zp))), kind, p))
            emit("iv", [(x, xp), (y, yp), (z, zp)])

    counts = {k: len(v) for k, v in by_type.items()}
    _require(
        counts == {"i": 15, "ii": 45, "iii": 30, "iv": 120},
        f"line counts by type {counts}",
    )
    all_lines = set().union(*by_type.values())
    _require(len(all_lines) == 210, f"expected 210 distinct lines, got {len(all_lines)}")
    labels = tuple(
        OrderedPair(Edge(EDGES[x]), Edge(EDGES[y])) for x, y in points
    )
    g = Geometry(105, tuple(all_lines), labels)
    _require(validate_pls(g).ok, "two lines share two points")
    return DebruynCensus(g, counts, tuple(escorts))


def build_h3_debruyn() -> Geometry:
    """The flag model on ordered pairs of edges, with OrderedPair labels."""
    return debruyn_census().geometry

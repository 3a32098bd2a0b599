"""Near-polygon verification: parameters, NP, quads, case analyses.

Frozen expected values were derived independently: the case counts by
elementary counting over the edge model (|x^perp \\ y^perp| = 4 for any
distinct x,y gives 15*14*16/2 = 1680 for A3, and so on), the quad counts by
double counting distance-2 pairs (18 per grid, 60 per (2,2)-quad), and all
of it cross-checked by a from-scratch brute-force script.
"""

from collections import Counter

import pytest

from nearhex import (
    Geometry,
    GeometryError,
    check_np,
    dsp_case_analysis,
    enumerate_quads,
    h3_case_analysis,
    line_distance_profiles,
    parameters,
)


def test_parameters_w2(w2):
    p = parameters(w2)
    assert (p.v, p.diameter) == (15, 2)
    assert p.line_sizes == {3}
    assert p.lines_per_point == {3}
    assert p.t2_values == {2}
    assert p.connected and p.dense and p.slim


def test_parameters_h3(h3):
    p = parameters(h3)
    assert p.v == 105
    assert p.line_sizes == {3}
    assert p.lines_per_point == {6}
    assert p.t2_values == {1, 2}
    assert p.diameter == 3
    assert p.dense and p.slim


def test_parameters_dsp(dsp):
    p = parameters(dsp)
    assert p.v == 135
    assert p.lines_per_point == {7}
    assert p.t2_values == {2}
    assert p.diameter == 3
    assert p.dense and p.slim


def test_distance_distributions(h3, dsp):
    for g, want in ((h3, (1, 12, 44, 48)), (dsp, (1, 14, 56, 64))):
        for row in g.distance_rows:
            census = Counter(row)
            assert tuple(census[d] for d in range(4)) == want


def test_check_np(w2, h3, dsp):
    assert check_np(w2).ok
    assert check_np(h3).ok
    assert check_np(dsp).ok


def test_check_np_pentagon_witness():
    pentagon = Geometry(5, tuple((i, (i + 1) % 5) for i in range(5)))
    verdict = check_np(pentagon)
    assert not verdict.ok
    x, li = verdict.witness
    assert x not in pentagon.lines[li]


def test_check_np_square_is_a_thin_quadrangle():
    # a 4-cycle is the (1,1)-GQ: nearest points are unique everywhere
    square = Geometry(4, tuple((i, (i + 1) % 4) for i in range(4)))
    assert check_np(square).ok


def test_check_np_rejects_disconnected():
    g = Geometry(4, ((0, 1), (2, 3)))
    with pytest.raises(GeometryError):
        check_np(g)


def test_line_distance_profiles(h3, dsp):
    assert line_distance_profiles(h3) == {(1, 2, 2): 6300, (2, 3, 3): 15120}
    profiles = line_distance_profiles(dsp)
    assert profiles == {(1, 2, 2): 11340, (2, 3, 3): 30240}
    glue = [i for i, line in enumerate(dsp.lines) if any(p >= 105 for p in line)]
    assert len(glue) == 105
    assert line_distance_profiles(dsp, glue) == {(1, 2, 2): 3780, (2, 3, 3): 10080}


def test_quads_w2(w2):
    records = enumerate_quads(w2)
    assert len(records) == 1
    (q,) = records
    assert q.kind == "gq22"
    assert q.points == frozenset(range(15))


def test_quads_h3(h3):
    records = enumerate_quads(h3)
    census = Counter((r.kind, len(r.points)) for r in records)
    assert census == {("grid21", 9): 35, ("gq22", 15): 28}


def test_quads_dsp(dsp):
    records = enumerate_quads(dsp)
    census = Counter((r.kind, len(r.points)) for r in records)
    assert census == {("gq22", 15): 63}


def test_quad_double_counting(h3, dsp):
    # every distance-2 pair lies in exactly one quad: 18 per grid, 60 per
    # (2,2)-quad, matching the case counts
    h3_d2 = sum(row.count(2) for row in h3.distance_rows) // 2
    assert h3_d2 == 315 + 315 + 1680
    assert h3_d2 == 35 * 18 + 28 * 60
    dsp_d2 = sum(row.count(2) for row in dsp.distance_rows) // 2
    assert dsp_d2 == 3780 == 63 * 60


def test_h3_case_analysis(h3):
    reports = {r.case: r for r in h3_case_analysis(h3)}
    assert all(r.ok for r in reports.values())
    assert {c: r.pair_count for c, r in reports.items()} == {
        "A1": 315,
        "A2": 315,
        "A3": 1680,
        "A4": 2520,
        "collinear": 630,
    }
    assert reports["A1"].observed == {2: 315}
    assert reports["A2"].observed == {2: 315}
    assert reports["A3"].observed == {3: 1680}
    assert reports["A4"].observed == {3: 2520}
    total = sum(r.pair_count for r in reports.values())
    assert total == 105 * 104 // 2


def test_h3_case_analysis_worked_example(h3):
    """(12,12') and (12,34') fall in case A1 with common neighbours exactly
    {(34,56'), (56,56')}."""
    from nearhex.geometry import bits_of

    def pidx(x, u):
        want = (frozenset(x), frozenset(u))
        return next(
            i
            for i, l in enumerate(h3.labels)
            if (l.base.ends, l.prime.ends) == want
        )

    a = pidx((1, 2), (1, 2))
    b = pidx((1, 2), (3, 4))
    common = frozenset(bits_of(h3.adjacency[a] & h3.adjacency[b]))
    assert common == {pidx((3, 4), (5, 6)), pidx((5, 6), (5, 6))}


def test_h3_case_analysis_needs_labels(h3):
    with pytest.raises(GeometryError):
        h3_case_analysis(Geometry(h3.point_count, h3.lines))


def test_dsp_case_analysis(dsp):
    reports = {r.case: r for r in dsp_case_analysis(dsp, range(105))}
    assert all(r.ok for r in reports.values())
    assert {c: r.pair_count for c, r in reports.items()} == {
        "B1": 105,
        "B2": 105,
        "B3": 120,
        "B4": 630,
        "B5": 630,
        "B6": 840,
        "B7": 840,
        "A1": 315,
        "A2": 315,
        "A3": 1680,
        "A4": 2520,
        "collinear": 945,
    }
    # only >= 3 is guaranteed a priori for B1/B2/B4/B5; the scan pins the
    # exact count
    for case in ("B1", "B2", "B4", "B5"):
        assert set(reports[case].observed) == {3}
    for case in ("B3", "B6", "B7", "A4"):
        assert set(reports[case].observed) == {3}
    # inside the embedded hexagon the extra glue neighbour lifts A1/A2 to 3
    for case in ("A1", "A2", "A3"):
        assert set(reports[case].observed) == {3}


def test_dsp_case_analysis_worked_examples(dsp):
    """12 vs 13' sit at distance 3 (B3); 12 vs (34,56') have 3 common
    neighbours (B4, since 56 is disjoint from 12)."""
    from nearhex.gq22 import EDGE_INDEX

    def eidx(name):
        return EDGE_INDEX[frozenset(int(c) for c in name)]

    def pidx(x, u):
        want = (frozenset(x), frozenset(u))
        return next(
            i
            for i, l in enumerate(dsp.labels[:105])
            if (l.base.ends, l.prime.ends) == want
        )

    rows = dsp.distance_rows
    assert rows[105 + eidx("12")][120 + eidx("13")] == 3
    a = 105 + eidx("12")
    b = pidx((3, 4), (5, 6))
    assert rows[a][b] == 2
    assert (dsp.adjacency[a] & dsp.adjacency[b]).bit_count() == 3


def test_dsp_case_analysis_checks_h3_points(dsp):
    with pytest.raises(GeometryError):
        dsp_case_analysis(dsp, range(104))

import pytest

from coregroups.diagrams import (
    BadOverFlagError,
    Coloring,
    Diagram,
    DuplicateSlotError,
    MissingOrientationError,
    NotClassicalError,
    NotColorable,
    UnmatchedEdgeError,
    build_kink,
    build_torus2m,
    build_unknot_loop,
    checkerboard_color,
    classify_corners,
    connected_sum,
    corner_eta,
    diagonal_corner,
    disjoint_union,
    format_diagram,
    parse_diagram,
    rotationally_equal,
    trace_arcs,
    trace_faces,
)

TREFOIL = """\
# trefoil as a closed 2-braid
crossing c1 a e f b over=odd
crossing c2 c a b d over=odd
crossing c3 e c d f over=odd
seed c1.3
"""

VIRTUAL_TREFOIL = """\
crossing v1 a b d c over=even
crossing v2 b c a d over=even
"""

VIRTUAL_KINK = """\
crossing k1 a b a b over=even
"""


def test_parse_trefoil():
    d = parse_diagram(TREFOIL)
    assert len(d.crossings) == 3
    assert len(d.edges) == 6
    assert d.mu == 1
    assert d.k == 1
    assert len(trace_arcs(d)) == 3


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DuplicateSlotError) as e:
        parse_diagram("crossing c1 a a a b over=even\n")
    assert "line 1" in str(e.value)
    with pytest.raises(UnmatchedEdgeError):
        parse_diagram("crossing c1 a b c d over=even\ncrossing c2 a b c e over=odd\n")
    with pytest.raises(BadOverFlagError) as e:
        parse_diagram("crossing c1 a a b b over=sideways\n")
    assert "line 1" in str(e.value)
    with pytest.raises(DuplicateSlotError):
        parse_diagram("crossing c1 a a b b over=even\ncrossing c1 c c d d over=even\n")


def test_parse_loop_only():
    d = parse_diagram("loop l1\n")
    assert d.loops == ("l1",)
    assert len(d.crossings) == 0
    assert d.mu == 1
    arcs = trace_arcs(d)
    assert len(arcs) == 1 and arcs[0].closed


def test_trace_faces_trefoil():
    d = parse_diagram(TREFOIL)
    t = trace_faces(d, "classical")
    assert len(t.regions) == 5
    assert dict(t.genus)[("c1", "c2", "c3")] == 0
    assert t.outer is not None
    tv = trace_faces(d, "virtual")
    assert len(tv.regions) == 5
    assert tv.outer is None


def test_trace_faces_virtual_trefoil():
    d = parse_diagram(VIRTUAL_TREFOIL)
    t = trace_faces(d, "virtual")
    assert len(t.regions) == 2
    assert dict(t.genus)[("v1", "v2")] == 1
    with pytest.raises(NotClassicalError):
        trace_faces(d, "classical")


def test_trace_faces_split_union():
    d1 = parse_diagram(TREFOIL)
    d = disjoint_union(d1, d1)
    assert d.k == 2
    assert len(trace_faces(d, "classical").regions) == 9
    assert len(trace_faces(d, "virtual").regions) == 10


def test_loop_regions():
    d = build_unknot_loop()
    tv = trace_faces(d, "virtual")
    assert len(tv.regions) == 2
    tc = trace_faces(d, "classical")
    assert len(tc.regions) == 2
    assert tc.outer is not None


def test_corner_partition():
    for d in (parse_diagram(TREFOIL), parse_diagram(VIRTUAL_TREFOIL), build_torus2m(5)):
        t = trace_faces(d, "virtual")
        corners = [c for r in t.regions for c in r.corners]
        assert len(corners) == 4 * len(d.crossings)
        assert len(set(corners)) == len(corners)


def test_trace_arcs_examples():
    assert len(trace_arcs(build_kink())) == 1
    d = parse_diagram(TREFOIL)
    arcs = trace_arcs(d)
    assert [a.name for a in arcs] == ["g1", "g2", "g3"]
    assert all(not a.closed for a in arcs)
    assert all(len(a.edges) == 2 for a in arcs)


def test_checkerboard_trefoil():
    d = parse_diagram(TREFOIL)
    table = trace_faces(d, "classical")
    col = checkerboard_color(d, table=table)
    assert isinstance(col, Coloring)
    assert col.of[table.outer] == 0
    for a, b in d.edges:
        assert col.of[table.corner_region[a]] != col.of[table.corner_region[b]]
    # the flip is the only other valid shading
    flip = col.flipped()
    for a, b in d.edges:
        assert flip.of[table.corner_region[a]] != flip.of[table.corner_region[b]]


def test_checkerboard_certificate():
    d = parse_diagram(VIRTUAL_KINK)
    res = checkerboard_color(d, "virtual")
    assert isinstance(res, NotColorable)
    assert res.edge is not None


def test_checkerboard_disjoint_union():
    d = disjoint_union(parse_diagram(TREFOIL), build_unknot_loop())
    col = checkerboard_color(d, "classical")
    assert isinstance(col, Coloring)


def test_classify_corners_convention():
    d = parse_diagram(TREFOIL)  # over=odd: slots 1,3 overpass
    lab = classify_corners(d, "c1")
    assert lab.v == ("c1", 1)
    assert lab.w == ("c1", 0)
    assert lab.y == ("c1", 2)
    assert lab.x == ("c1", 3)
    assert lab.eta[lab.v] == -1 and lab.eta[lab.x] == -1
    assert lab.eta[lab.w] == 1 and lab.eta[lab.y] == 1

    flipped = Diagram([(c, 1 - f) for c, f in d.crossings], d.edges)
    lab2 = classify_corners(flipped, "c1")
    assert {lab2.v, lab2.x} == {("c1", 0), ("c1", 2)}
    assert corner_eta(flipped, ("c1", 1)) == 1
    assert corner_eta(d, ("c1", 1)) == -1
    assert diagonal_corner(("c1", 1)) == ("c1", 3)


def test_classify_corners_kink_repeats_regions():
    d = build_kink()
    lab = classify_corners(d, "c1")
    t = trace_faces(d, "virtual")
    regions = {t.corner_region[c] for c in (lab.v, lab.w, lab.x, lab.y)}
    assert len(regions) == 3  # two corners share a region at a kink


def test_build_torus2m():
    k = build_torus2m(1)
    assert len(trace_arcs(k)) == 1
    assert k.mu == 1
    hopf = build_torus2m(2)
    assert hopf.mu == 2
    tre = build_torus2m(3)
    assert tre.mu == 1
    assert rotationally_equal(tre, parse_diagram(format_diagram(tre)))
    assert trace_faces(tre, "classical").regions
    with pytest.raises(ValueError):
        build_torus2m(0)


def test_torus2m_genus_zero():
    for m in range(1, 8):
        d = build_torus2m(m)
        assert d.is_classical
        assert len(trace_faces(d, "classical").regions) == m + 2


def test_orientation_seeds():
    d = parse_diagram(TREFOIL)
    assert d.orientation is not None
    bare = Diagram(d.crossings, d.edges)
    assert bare.orientation is None
    with pytest.raises(MissingOrientationError):
        Diagram(d.crossings, d.edges, seeds=[("c1", 3), ("c1", 1)]).orientation


def test_connected_sum_basics():
    a = build_torus2m(2)
    b = build_torus2m(3)
    s = connected_sum(a, "g1", b, "g1")
    assert s.k == 1
    assert s.is_classical
    assert len(s.crossings) == 5
    assert s.mu == 2  # one hopf component fused with the trefoil


def test_disjoint_union_renames_on_clash():
    d = parse_diagram(TREFOIL)
    u = disjoint_union(d, d)
    assert len(u.crossings) == 6
    assert len(set(u.crossing_ids)) == 6


def test_format_roundtrip():
    for d in (parse_diagram(TREFOIL), build_torus2m(4),
              disjoint_union(build_kink(), build_unknot_loop())):
        again = parse_diagram(format_diagram(d))
        assert again == d or rotationally_equal(again, d)
        assert format_diagram(parse_diagram(format_diagram(d))) == format_diagram(d)


def test_euler_property_across_samples():
    samples = [parse_diagram(TREFOIL), parse_diagram(VIRTUAL_TREFOIL),
               parse_diagram(VIRTUAL_KINK), build_torus2m(6),
               disjoint_union(build_torus2m(3), build_kink())]
    for d in samples:
        for piece, g in d.piece_genus.items():
            assert g >= 0
        t = trace_faces(d, "virtual")
        total = sum(len(r.corners) for r in t.regions)
        assert total == 4 * len(d.crossings)


def test_arc_count_equals_crossings_when_each_curve_dives():
    for d in (parse_diagram(TREFOIL), build_torus2m(2), build_torus2m(5)):
        arcs = trace_arcs(d)
        if all(not a.closed for a in arcs):
            assert len(arcs) == len(d.crossings)


def test_outer_marks_steer_classical_merging():
    d1 = parse_diagram(TREFOIL)
    base = disjoint_union(d1, d1)
    default = trace_faces(base, "classical")
    marked = Diagram(base.crossings, base.edges, base.loops, base.seeds,
                     [("c1", 1), ("c1'", 1)])
    shifted = trace_faces(marked, "classical")
    assert len(default.regions) == len(shifted.regions) == 9
    assert default.by_name[default.outer].corners != shifted.by_name[shifted.outer].corners
    assert ("c1", 1) in shifted.by_name[shifted.outer].corners


def test_union_with_noncolorable_piece_is_noncolorable():
    virt_kink = parse_diagram(VIRTUAL_KINK)
    d = disjoint_union(parse_diagram(VIRTUAL_TREFOIL), virt_kink)
    res = checkerboard_color(d, "virtual")
    assert isinstance(res, NotColorable)

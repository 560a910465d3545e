import pytest

from coregroups.abelian import Z, abelianize, relation_matrix, smith_normal_form
from coregroups.diagrams import (
    Diagram,
    MissingOrientationError,
    build_kink,
    build_torus2m,
    build_unknot_loop,
    checkerboard_color,
    connected_sum,
    disjoint_union,
    parse_diagram,
    trace_arcs,
    trace_faces,
)
from coregroups.enumeration import hom_fingerprint
from coregroups.linkgroups import (
    BoundaryWord,
    UnknownArcError,
    arc_core,
    arc_element_map,
    arc_element_word,
    boundary_quotient,
    checkerboard_graphs,
    core_of_wirtinger,
    dehn,
    goeritz_matrix,
    rc_zero,
    region_core,
    second_region_core,
    wirtinger,
)
from coregroups.presentations import (
    Presentation,
    cyclically_equivalent,
    free_reduce,
    inverse,
    word,
)

from helpers import build_braid_closure
from test_diagrams import TREFOIL


def in_row_lattice(m, v):
    """Integer row-span membership via invariant-factor comparison."""
    return smith_normal_form(list(m) + [list(v)]) == smith_normal_form(list(m) or [[0] * len(v)])


@pytest.fixture(scope="module")
def trefoil():
    return parse_diagram(TREFOIL)


@pytest.fixture(scope="module")
def figure_eight():
    return build_braid_closure([1, -2, 1, -2], 3)


def test_arc_core_trefoil(trefoil):
    p = arc_core(trefoil)
    assert p.generators == ("g1", "g2", "g3")
    assert p.relators == (
        word("g2 g1^-1 g2 g3^-1"),
        word("g1 g3^-1 g1 g2^-1"),
        word("g3 g2^-1 g3 g1^-1"),
    )
    assert abelianize(p) == Z(1, 3)


def test_arc_core_kink_and_loop():
    assert abelianize(arc_core(build_kink())) == Z(1)
    p = arc_core(build_unknot_loop())
    assert p == Presentation(("g1",), [])


def test_arc_core_figure_eight(figure_eight):
    assert abelianize(arc_core(figure_eight)) == Z(1, 5)


def test_region_core_trefoil(trefoil):
    p = region_core(trefoil, "classical")
    assert len(p.generators) == 5
    assert len(p.relators) == 3
    assert abelianize(p) == Z(2, 3)
    assert word("R2 R1^-1 R3 R4^-1") in p.relators


def test_region_core_loop_virtual():
    p = region_core(build_unknot_loop(), "virtual")
    assert p == Presentation(("R1", "R2"), [])


def test_second_region_core_trefoil(trefoil):
    p = second_region_core(trefoil, "classical")
    assert len(p.generators) == 5
    assert len(p.relators) <= 5
    assert abelianize(p) == Z(2, 3, 3)


def test_second_region_core_kink():
    assert abelianize(second_region_core(build_kink(), "classical")) == Z(2)


def test_free_split_relation(trefoil, figure_eight):
    for d in (trefoil, build_kink(), build_torus2m(4), figure_eight):
        rc_ab = abelianize(region_core(d, "classical"))
        ac_ab = abelianize(arc_core(d))
        assert rc_ab == Z(1 + ac_ab.free_rank, *ac_ab.divisors)


def test_wirtinger_trefoil(trefoil):
    p = wirtinger(trefoil)
    assert len(p.generators) == 3
    assert abelianize(p) == Z(1)


def test_wirtinger_requires_orientation(trefoil):
    bare = Diagram(trefoil.crossings, trefoil.edges)
    with pytest.raises(MissingOrientationError):
        wirtinger(bare)


def test_wirtinger_torus_matches_two_generator_form():
    for m in (2, 3, 5):
        p = wirtinger(build_torus2m(m))
        lhs = tuple((("s1", 1) if i % 2 == 0 else ("s2", 1)) for i in range(m))
        rhs = tuple((("s2", 1) if i % 2 == 0 else ("s1", 1)) for i in range(m))
        q = Presentation(("s1", "s2"), [free_reduce(lhs + inverse(rhs))])
        assert abelianize(p) == abelianize(q)
        assert hom_fingerprint(p) == hom_fingerprint(q)


def test_wirtinger_loop():
    assert wirtinger(build_unknot_loop()) == Presentation(("g1",), [])


def test_dehn_kink_and_loop():
    p = dehn(build_kink())
    assert abelianize(p) == Z(1)
    assert hom_fingerprint(p) == hom_fingerprint(Presentation(("x",), []))
    assert abelianize(dehn(build_unknot_loop())) == Z(1)


def test_dehn_matches_wirtinger_for_classical(trefoil, figure_eight):
    for d in (trefoil, build_kink(), build_torus2m(2), figure_eight):
        dp = dehn(d)
        wp = wirtinger(d)
        assert abelianize(dp) == abelianize(wp) == Z(d.mu)
        assert hom_fingerprint(dp, ("s3",)) == hom_fingerprint(wp, ("s3",))


def test_rc_zero(trefoil):
    p = rc_zero(trefoil)
    assert abelianize(p) == Z(1, 3)
    q = rc_zero(build_kink())
    assert abelianize(q) == Z(1)
    assert hom_fingerprint(q) == hom_fingerprint(Presentation(("x",), []))


def test_arc_element_images_die_in_rc_abelianized(trefoil):
    table = trace_faces(trefoil, "classical")
    col = checkerboard_color(trefoil, table=table)
    f = arc_element_map(trefoil, col, table)
    rc = region_core(trefoil, table=table)
    m = relation_matrix(rc)
    gen_index = {g: i for i, g in enumerate(rc.generators)}
    for r in arc_core(trefoil).relators:
        vec = [0] * len(rc.generators)
        for arc, e in r:
            for g, e2 in f[arc]:
                vec[gen_index[g]] += e * e2
        assert in_row_lattice(m, vec)


def test_arc_element_measurement_point(trefoil):
    table = trace_faces(trefoil, "classical")
    col = checkerboard_color(trefoil, table=table)
    rc = region_core(trefoil, table=table)
    rel_at = dict(zip(trefoil.crossing_ids, rc.relators))
    for arc in trace_arcs(trefoil):
        words = [arc_element_word(trefoil, table, col, arc, i)
                 for i in range(len(arc.edges))]
        for i in range(len(words) - 1):
            if words[i] == words[i + 1]:
                continue
            shared = set(x[0] for x in arc.edges[i]) & set(x[0] for x in arc.edges[i + 1])
            diff = free_reduce(words[i] + inverse(words[i + 1]))
            assert any(cyclically_equivalent(diff, rel_at[c]) for c in shared)


def test_checkerboard_graphs(trefoil):
    col = checkerboard_color(trefoil, "classical")
    g = checkerboard_graphs(trefoil, col)
    assert g.beta_s + g.beta_u == 2
    assert len(g.shaded_edges) + len(g.unshaded_edges) == 2 * len(trefoil.crossings)

    two = disjoint_union(trefoil, trefoil)
    g2 = checkerboard_graphs(two, checkerboard_color(two, "classical"))
    assert g2.beta_s + g2.beta_u == 3

    kink = build_kink()
    gk = checkerboard_graphs(kink, checkerboard_color(kink, "classical"))
    assert gk.beta_s + gk.beta_u == 2


def test_goeritz_trefoil(trefoil):
    col = checkerboard_color(trefoil, "classical")
    g = goeritz_matrix(trefoil, col)
    divisors, rank = smith_normal_form(g)
    assert divisors == [3] and rank == 1


def test_goeritz_figure_eight(figure_eight):
    col = checkerboard_color(figure_eight, "classical")
    g = goeritz_matrix(figure_eight, col)
    det = _det(g)
    assert abs(det) == 5


def _det(m):
    import itertools
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i, j in itertools.combinations(range(n), 2):
            if perm[i] > perm[j]:
                sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def test_goeritz_kink():
    d = build_kink()
    col = checkerboard_color(d, "classical")
    g = goeritz_matrix(d, col)
    assert abs(_det(g)) == 1 or g == []


def test_core_of_wirtinger(trefoil):
    c = core_of_wirtinger(trefoil)
    assert abelianize(c) == abelianize(arc_core(trefoil)) == Z(1, 3)
    assert hom_fingerprint(c) == hom_fingerprint(arc_core(trefoil))
    for m in range(1, 8):
        d = build_torus2m(m)
        assert abelianize(core_of_wirtinger(d)) == Z(1, m)
    assert core_of_wirtinger(build_unknot_loop()) == Presentation(("g1",), [])


def test_boundary_quotient_basics():
    p = Presentation(("a", "b", "c", "d"), [])
    assert boundary_quotient(p, []) == p
    q = boundary_quotient(p, [BoundaryWord([("a", 1), ("d", -1)])])
    assert q.relators == (word("a d^-1"), word("a^-1 d"))
    with pytest.raises(UnknownArcError):
        boundary_quotient(p, [BoundaryWord([("zz", 1)])])


def test_connected_sum_abelianization():
    s = connected_sum(build_torus2m(2), "g1", build_torus2m(3), "g1")
    assert abelianize(arc_core(s)) == Z(1, 6)  # Z + Z2 + Z3

    kinked = connected_sum(build_kink(), "g1", build_torus2m(2), "g1")
    assert abelianize(arc_core(kinked)) == Z(1, 2)


def test_prop_style_construction():
    piece1 = connected_sum(build_kink(), "g1", build_torus2m(2), "g1")
    piece1 = connected_sum(piece1, "g1", build_torus2m(6), "g1")
    d = disjoint_union(piece1, build_kink())
    got = abelianize(arc_core(d))
    assert got == Z(2, 2, 6)


def test_relator_count_invariants():
    from coregroups.verification import load_corpus

    for entry in load_corpus():
        d = entry.diagram
        mode = "classical" if d.is_classical else "virtual"
        table = trace_faces(d, mode)
        assert len(arc_core(d).relators) == len(d.crossings)
        assert len(region_core(d, table=table).relators) == len(d.crossings)
        assert len(second_region_core(d, table=table).relators) <= len(table.regions)


def test_torsion_statements_on_classical_corpus():
    from coregroups.abelian import direct_sum, torsion_divisors
    from coregroups.verification import load_corpus

    for entry in load_corpus():
        d = entry.diagram
        if not d.is_classical:
            continue
        t = abelianize(arc_core(d))
        rc = abelianize(region_core(d, "classical"))
        rrc = abelianize(second_region_core(d, "classical"))
        assert torsion_divisors(rc) == torsion_divisors(t)
        doubled = direct_sum(Z(0, *t.divisors), Z(0, *t.divisors))
        assert torsion_divisors(rrc) == torsion_divisors(doubled)


def test_dehn_matches_wirtinger_across_classical_corpus():
    from coregroups.verification import load_corpus

    for entry in load_corpus():
        d = entry.diagram
        if not d.is_classical:
            continue
        dp, wp = dehn(d), wirtinger(d)
        assert abelianize(dp) == abelianize(wp) == Z(d.mu)
        assert hom_fingerprint(dp, ("s3",)) == hom_fingerprint(wp, ("s3",))


def test_surface_example_group_shapes():
    from coregroups.verification import load_corpus

    corpus = load_corpus()
    pub = corpus.published["surface_example"]
    d = corpus.get(pub["diagram"]).diagram
    dehn_target = Presentation(
        ("a", "b"), [word("a b a b^-1 a^-1 b^-1"), word("a a b^-1 b^-1")])
    dp = dehn(d, base=pub["dehn_base"])
    assert abelianize(dp) == abelianize(dehn_target) == Z(1)
    assert hom_fingerprint(dp) == hom_fingerprint(dehn_target)
    rc0_target = Presentation(("a", "b"), [word("a b^-1") * 3])
    rp = rc_zero(d, base=pub["dehn_base"])
    assert abelianize(rp) == abelianize(rc0_target) == Z(1, 3)
    assert hom_fingerprint(rp) == hom_fingerprint(rc0_target)


def test_wirtinger_s3_count_matches_coloring_oracle(trefoil):
    from coregroups.enumeration import count_homomorphisms, symmetric_group

    # 6 one-element images plus 6 proper three-colorings
    assert count_homomorphisms(wirtinger(trefoil), symmetric_group(3)) == 12


def test_free_split_hom_identity_for_nonabelian_targets(trefoil):
    from coregroups.enumeration import count_homomorphisms, symmetric_group

    s3 = symmetric_group(3)
    for d in (trefoil, build_kink(), build_torus2m(4)):
        ac_n = count_homomorphisms(arc_core(d), s3)
        rc_n = count_homomorphisms(region_core(d, "classical"), s3)
        assert rc_n == 6 * ac_n


def test_goeritz_torus_family_determinants():
    for m in range(1, 8):
        d = build_torus2m(m)
        col = checkerboard_color(d, "classical")
        g = goeritz_matrix(d, col)
        divisors = [x for x in smith_normal_form(g)[0] if x > 1]
        assert divisors == ([m] if m > 1 else [])

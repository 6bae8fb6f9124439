import pytest

from dequiv.posets import chain, diamond, hasse, poset_from_covers
from dequiv.quivers import (Arrow, NotPosetQuiverError, Presentation, Quiver,
                            QuiverError, a1p_presentation, bgp_reflect,
                            canonical_presentation, incidence_presentation,
                            is_gentle, kronecker_presentation, quiver_as_poset,
                            t2_poset, unique_path_property)


def hasse_quiver(p):
    return Quiver(p.elements, tuple(Arrow("%s>%s" % c, c[0], c[1]) for c in hasse(p)))


def test_acyclicity_enforced():
    with pytest.raises(QuiverError):
        Quiver(("a", "b"), (Arrow("f", "a", "b"), Arrow("g", "b", "a")))


def test_canonical_presentation_shapes():
    two = canonical_presentation([2, 3])
    assert len(two.relations) == 0
    assert len(two.quiver.vertices) == 5  # 0, one + two arm interiors, w
    three = canonical_presentation([2, 2, 2])
    assert len(three.relations) == 1
    assert len(three.quiver.vertices) == 5
    four = canonical_presentation([2, 2, 2, 2])
    assert len(four.relations) == 2


def test_weight_one_arms_are_dropped():
    # only weights >= 2 count; dropping 1s can reduce to the t = 2 case
    pres = canonical_presentation([1, 3, 3])
    assert len(pres.relations) == 0
    assert set(pres.quiver.vertices) == set(canonical_presentation([3, 3]).quiver.vertices)


def test_kronecker_and_a1p():
    kr = kronecker_presentation()
    assert len(kr.quiver.vertices) == 2 and len(kr.quiver.arrows) == 2
    pr = a1p_presentation(3)
    # two parallel paths 0 -> w of lengths 1 and 3
    assert len(pr.quiver.paths("0", "w")) == 2
    assert sorted(len(p) for p in pr.quiver.paths("0", "w")) == [1, 3]
    assert not pr.relations


def test_bgp_reflection_involution():
    q = hasse_quiver(chain(3))
    sink = "c2"
    r = bgp_reflect(q, sink)
    assert {(a.source, a.target) for a in r.arrows} == {("c0", "c1"), ("c2", "c1")}
    back = bgp_reflect(r, sink)
    assert {(a.source, a.target) for a in back.arrows} == \
        {(a.source, a.target) for a in q.arrows}


def test_bgp_rejects_interior_vertex():
    q = hasse_quiver(chain(3))
    with pytest.raises(QuiverError):
        bgp_reflect(q, "c1")


def test_unique_path_property():
    assert unique_path_property(hasse_quiver(chain(4)))
    assert not unique_path_property(hasse_quiver(diamond()))


def test_gentle_predicate():
    assert is_gentle(a1p_presentation(2))
    assert not is_gentle(canonical_presentation([2, 2, 2]))  # non-monomial relation


def test_quiver_as_poset_round_trip():
    p = chain(4)
    assert quiver_as_poset(hasse_quiver(p)) == p
    # multiple paths would silently lose commutativity relations: rejected
    with pytest.raises(NotPosetQuiverError):
        quiver_as_poset(hasse_quiver(diamond()))
    with pytest.raises(NotPosetQuiverError):
        quiver_as_poset(kronecker_presentation().quiver)


def test_incidence_presentation_of_diamond():
    pres = incidence_presentation(diamond())
    # one commutativity relation between the two paths through the square
    assert len(pres.relations) == 1
    assert {(a.source, a.target) for a in pres.quiver.arrows} == set(hasse(diamond()))


def test_t2_poset_is_relation_free():
    for p1, p2 in [(2, 2), (2, 3), (3, 3), (2, 4)]:
        poset = t2_poset(p1, p2)
        assert poset.n == p1 + p2
        pres = incidence_presentation(poset)
        assert not pres.relations
        assert unique_path_property(pres.quiver)


def test_presentation_json_round_trip():
    pres = canonical_presentation([2, 2, 3])
    again = Presentation.from_json(pres.to_json())
    assert again.quiver == pres.quiver
    assert len(again.relations) == len(pres.relations)

import itertools

import pytest

from dequiv.posets import (CycleError, Poset, antichain, are_isomorphic,
                           build_Xp, canonical_key, chain, diamond,
                           enumerate_posets, hasse, order_complex,
                           poset_from_covers, poset_product)


def naive_count(n):
    """Independent oracle: every poset on {0..n-1} has a linear extension,
    so relations can be taken inside {(i,j): i < j}; count canonical keys
    of the transitively closed subsets."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keys = set()
    for bits in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if (bits >> k) & 1}
        if not all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b2 == b):
            continue
        covers = [(str(a), str(b)) for a, b in rel
                  if not any((a, c) in rel and (c, b) in rel for c in range(n))]
        p = poset_from_covers([str(i) for i in range(n)], covers)
        keys.add(canonical_key(p))
    return len(keys)


def test_enumeration_counts():
    assert [len(enumerate_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_connected_counts():
    counts = [len(enumerate_posets(n, connected_only=True)) for n in range(1, 6)]
    assert counts == [1, 1, 3, 10, 44]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_against_naive_oracle(n):
    assert len(enumerate_posets(n)) == naive_count(n)


def test_enumeration_is_irredundant():
    ps = enumerate_posets(4)
    keys = {canonical_key(p) for p in ps}
    assert len(keys) == len(ps)


def test_hasse_round_trip():
    for p in enumerate_posets(4):
        assert poset_from_covers(p.elements, hasse(p)) == p


def test_cycle_reported():
    with pytest.raises(CycleError) as err:
        poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    assert set(err.value.cycle) == {"a", "b", "c"}


def test_isomorphism_witness_is_replayable():
    p = diamond()
    q = poset_from_covers(["w", "x", "y", "z"],
                          [("z", "x"), ("z", "y"), ("x", "w"), ("y", "w")])
    wit = are_isomorphic(p, q)
    assert wit is not None
    for a, b in p.relation:
        assert (wit[a], wit[b]) in q.relation
    assert are_isomorphic(chain(3), antichain(3)) is None


def test_product_of_chains_is_diamond():
    prod = poset_product(chain(2), chain(2))
    assert are_isomorphic(prod, diamond()) is not None


def test_x333_is_cube():
    cube = poset_product(poset_product(chain(2, "a"), chain(2, "b")), chain(2, "c"))
    assert are_isomorphic(build_Xp(3, 3, 3), cube) is not None


def test_xp_element_counts():
    # |X_p| = p1 + p2 + p3 - 1, matching the canonical vertex count
    for w in [(2, 2, 2), (2, 3, 4), (3, 3, 3), (2, 2, 5)]:
        assert build_Xp(*w).n == sum(w) - 1


def test_xp_has_unique_bottom_and_top():
    p = build_Xp(2, 3, 4)
    bottoms = [x for x in p.elements if all((x, y) in p.relation for y in p.elements)]
    tops = [x for x in p.elements if all((y, x) in p.relation for y in p.elements)]
    assert bottoms == ["0"] and tops == ["w"]


def test_order_complex_of_diamond():
    faces = order_complex(diamond()).faces
    assert len(faces[0]) == 4   # vertices
    assert len(faces[1]) == 5   # edges: 4 covers + bottom-to-top
    assert len(faces[2]) == 2   # triangles through a and b


def test_poset_validation_rejects_partial_relation():
    with pytest.raises(Exception):
        Poset(("a", "b"), frozenset({("a", "b")}))  # missing reflexivity

"""Quivers, paths and relation sets; canonical-algebra and incidence-algebra
presentations; BGP reflections; the gentle predicate and path uniqueness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactla import QQ
from .posets import Poset, poset_from_covers


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Finite acyclic quiver; parallel arrows allowed, oriented cycles not."""

    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError("arrow %s has endpoint off the vertex set" % a.name)
        self.topological_order()  # raises on an oriented cycle

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a.target == v]

    def is_source(self, v) -> bool:
        return not self.arrows_into(v)

    def is_sink(self, v) -> bool:
        return not self.arrows_from(v)

    def topological_order(self) -> List[str]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = sorted(v for v in self.vertices if indeg[v] == 0)
        out = []
        while ready:
            v = ready.pop(0)
            out.append(v)
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
            ready.sort()
        if len(out) != len(self.vertices):
            raise QuiverError("quiver has an oriented cycle")
        return out

    def paths(self, u, v) -> List[Tuple[str, ...]]:
        """All directed paths u -> v as arrow-name tuples ('' paths excluded
        unless u == v, where the empty tuple denotes the trivial path)."""
        out = []
        if u == v:
            out.append(())

        def walk(cur, acc):
            for a in self.arrows_from(cur):
                nxt = acc + (a.name,)
                if a.target == v:
                    out.append(nxt)
                walk(a.target, nxt)

        walk(u, ())
        return out

    def path_count(self) -> int:
        return sum(len(self.paths(u, v)) for u in self.vertices for v in self.vertices)

    def to_json(self, relations=None) -> dict:
        data = {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.name, "from": a.source, "to": a.target} for a in self.arrows],
        }
        if relations is not None:
            data["relations"] = [
                {"terms": [{"coeff": QQ.to_str(c), "path": list(p.arrow_names)} for c, p in rel.terms]}
                for rel in relations
            ]
        return data


@dataclass(frozen=True)
class QPath:
    """A path: a source vertex plus a composable arrow-name sequence.

    The empty sequence is the trivial path at the source."""

    source: str
    arrow_names: tuple

    def target(self, q: Quiver) -> str:
        v = self.source
        for name in self.arrow_names:
            a = q.arrow(name)
            if a.source != v:
                raise QuiverError("path %s not composable at %s" % (self.arrow_names, v))
            v = a.target
        return v

    def __len__(self):
        return len(self.arrow_names)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths, all with a common source/target."""

    terms: tuple  # ((coeff, QPath), ...)

    def endpoints(self, q: Quiver):
        srcs = {p.source for _, p in self.terms}
        tgts = {p.target(q) for _, p in self.terms}
        if len(srcs) != 1 or len(tgts) != 1:
            raise QuiverError("relation terms are not parallel")
        return srcs.pop(), tgts.pop()


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple
    field: object = QQ

    def __post_init__(self):
        for rel in self.relations:
            rel.endpoints(self.quiver)
            paths = [p.arrow_names for _, p in rel.terms]
            if len(set(paths)) != len(paths):
                raise QuiverError("relation repeats a path")
            if not any(not self.field.is_zero(c) for c, _ in rel.terms):
                raise QuiverError("relation with all-zero coefficients")

    def to_json(self) -> dict:
        return self.quiver.to_json(self.relations)

    @staticmethod
    def from_json(data: dict, field=QQ) -> "Presentation":
        q = Quiver(tuple(data["vertices"]),
                   tuple(Arrow(a["id"], a["from"], a["to"]) for a in data["arrows"]))
        rels = []
        arrow_src = {a.name: a.source for a in q.arrows}
        for rel in data.get("relations", []):
            terms = []
            for t in rel["terms"]:
                path = tuple(t["path"])
                src = arrow_src[path[0]] if path else t.get("source")
                terms.append((field.from_str(t["coeff"]), QPath(src, path)))
            rels.append(Relation(tuple(terms)))
        return Presentation(q, tuple(rels), field)

    @staticmethod
    def load(path, field=QQ) -> "Presentation":
        with open(path) as fh:
            return Presentation.from_json(json.load(fh), field)


# -- canonical algebras ------------------------------------------------------

def _canonical_quiver(weights: Sequence[int]) -> Quiver:
    verts = ["0"]
    arrows = []
    for i, p in enumerate(weights, start=1):
        prev = "0"
        for j in range(1, p):
            v = "%d,%d" % (i, j)
            verts.append(v)
            arrows.append(Arrow("x%d_%d" % (i, j), prev, v))
            prev = v
        arrows.append(Arrow("x%d_%d" % (i, p), prev, "w"))
    verts.append("w")
    return Quiver(tuple(verts), tuple(arrows))


def canonical_presentation(weights: Sequence[int], lambdas: Optional[Sequence] = None,
                           field=QQ) -> Presentation:
    """The canonical algebra kQ/I of the given weight type.

    Weights equal to 1 are dropped when three or more weights are present;
    fewer than two surviving weights are padded back with 1s, so the types
    (p) and () produce the two-arm path algebras with no relations.
    """
    ws = [int(p) for p in weights]
    if any(p < 1 for p in ws):
        raise QuiverError("weights must be positive")
    if len(ws) >= 3:
        ws = [p for p in ws if p >= 2]
    while len(ws) < 2:
        ws.append(1)
    t = len(ws)
    lam = [field.from_int(x) if isinstance(x, int) else x for x in (lambdas or [])]
    if t >= 3:
        if lambdas is None:
            lam = [field.from_int(i - 1) for i in range(2, t)]  # 1, 2, ... by default
        if len(lam) != t - 2:
            raise QuiverError("need %d lambda parameters for %d weights" % (t - 2, t))
        if any(field.is_zero(x) for x in lam):
            raise QuiverError("lambda parameters must be nonzero")
        if len({field.to_str(x) for x in lam}) != len(lam):
            raise QuiverError("lambda parameters must be pairwise distinct")
    q = _canonical_quiver(ws)
    arm_path = {i: QPath("0", tuple("x%d_%d" % (i, j) for j in range(1, p + 1)))
                for i, p in enumerate(ws, start=1)}
    rels = []
    for i in range(3, t + 1):
        rels.append(Relation((
            (field.one, arm_path[i]),
            (field.neg(field.one), arm_path[2]),
            (lam[i - 3], arm_path[1]),
        )))
    return Presentation(q, tuple(rels), field)


def kronecker_presentation(field=QQ) -> Presentation:
    return canonical_presentation([1, 1], field=field)


def a1p_presentation(p: int, field=QQ) -> Presentation:
    """Path algebra of the two-parallel-paths quiver with arms of length p and 1."""
    if p < 1:
        raise QuiverError("p must be >= 1")
    return canonical_presentation([p, 1], field=field)


# -- incidence algebras ------------------------------------------------------

def incidence_presentation(p: Poset, field=QQ) -> Presentation:
    """Presentation of the incidence algebra on the Hasse quiver.

    For each vertex pair with several parallel Hasse paths, the differences
    against the first path (ordered by length then arrow names) generate the
    commutativity ideal.  The dimension check (order pairs = algebra
    dimension) is run by the algebra builder downstream.
    """
    covers = p.covers()
    arrows = tuple(Arrow("%s->%s" % (x, y), x, y) for x, y in covers)
    q = Quiver(tuple(p.elements), arrows)
    rels = []
    for u in p.elements:
        for v in p.elements:
            if u == v or not p.lt(u, v):
                continue
            paths = sorted(q.paths(u, v), key=lambda pp: (len(pp), pp))
            base = paths[0]
            for other in paths[1:]:
                rels.append(Relation((
                    (field.one, QPath(u, base)),
                    (field.neg(field.one), QPath(u, other)),
                )))
    return Presentation(q, tuple(rels), field)


# -- BGP reflection and quiver predicates -----------------------------------

def bgp_reflect(q: Quiver, v: str) -> Quiver:
    """Reverse all arrows at a source or sink vertex."""
    if v not in q.vertices:
        raise QuiverError("unknown vertex %s" % v)
    if not (q.is_source(v) or q.is_sink(v)):
        raise QuiverError("vertex %s is neither a source nor a sink" % v)
    arrows = tuple(Arrow(a.name, a.target, a.source) if v in (a.source, a.target) else a
                   for a in q.arrows)
    return Quiver(q.vertices, arrows)


def unique_path_property(q: Quiver) -> bool:
    """True iff every ordered vertex pair is joined by at most one path."""
    for u in q.vertices:
        for v in q.vertices:
            if u != v and len(q.paths(u, v)) > 1:
                return False
        if len(q.paths(u, u)) > 1:
            return False
    return True


def is_gentle(pres: Presentation) -> bool:
    """The gentle predicate on a presentation.

    Requires: at most two arrows in and out of every vertex; all relations
    monomial of length two; for each arrow at most one admissible and one
    forbidden (in-relation) composition on either side.
    """
    q = pres.quiver
    for v in q.vertices:
        if len(q.arrows_into(v)) > 2 or len(q.arrows_from(v)) > 2:
            return False
    forbidden = set()
    for rel in pres.relations:
        if len(rel.terms) != 1:
            return False
        _, path = rel.terms[0]
        if len(path) != 2:
            return False
        forbidden.add(path.arrow_names)
    for b in q.arrows:
        pre = [a for a in q.arrows if a.target == b.source]
        pre_rel = [a for a in pre if (a.name, b.name) in forbidden]
        pre_free = [a for a in pre if (a.name, b.name) not in forbidden]
        if len(pre_rel) > 1 or len(pre_free) > 1:
            return False
        post = [c for c in q.arrows if c.source == b.target]
        post_rel = [c for c in post if (b.name, c.name) in forbidden]
        post_free = [c for c in post if (b.name, c.name) not in forbidden]
        if len(post_rel) > 1 or len(post_free) > 1:
            return False
    return True


class NotPosetQuiverError(QuiverError):
    pass


def quiver_as_poset(q: Quiver) -> Poset:
    """The path-order poset of a quiver, when the quiver is a Hasse diagram.

    Fails when two vertices are joined by more than one path, or when some
    arrow is implied by a longer path (not a cover)."""
    if not unique_path_property(q):
        raise NotPosetQuiverError("two vertices are connected by more than one path")
    for a in q.arrows:
        long_paths = [p for p in q.paths(a.source, a.target) if len(p) > 1]
        if long_paths:
            raise NotPosetQuiverError("arrow %s duplicates a longer path" % a.name)
    return poset_from_covers(q.vertices, [(a.source, a.target) for a in q.arrows])


def t2_poset(p1: int, p2: int) -> Poset:
    """Reflect the two-weight canonical quiver at its sink and read the
    resulting unique-path quiver as a poset (p1 + p2 elements)."""
    if p1 < 2 or p2 < 2:
        raise QuiverError("t2_poset requires p1, p2 >= 2")
    pres = canonical_presentation([p1, p2])
    assert not pres.relations
    return quiver_as_poset(bgp_reflect(pres.quiver, "w"))

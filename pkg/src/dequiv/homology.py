"""Homological machinery: minimal projective resolutions, Ext dimensions,
global dimension, Coxeter polynomials, the derived-invariant certificate,
Hochschild cohomology (relative bar complex) and nerve cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exactla import QQ, ExactMatrix, IntPolynomial, char_poly, smith_normal_form
from .posets import Poset, order_complex
from .quivers import unique_path_property
from .algebra import (BoundQuiverAlgebra, ModuleMap, ProjectiveRep,
                      Representation, hom_from_generators, incidence_algebra,
                      kernel_of, projective_rep, simple_module)


class ResolutionError(RuntimeError):
    pass


@dataclass
class ProjectiveResolution:
    """... -> P_1 -> P_0 -> M -> 0 with minimal (radical) differentials.

    steps[i] = (P_i, d_i) with d_0 : P_0 -> M and d_i : P_i -> P_{i-1}.
    No steps means M = 0 (projective dimension -1 by convention)."""

    module: Representation
    steps: List[Tuple[ProjectiveRep, ModuleMap]]

    @property
    def length(self) -> int:
        return len(self.steps) - 1


def _top_generators(m: Representation):
    """Vertexwise lifts of a basis of M / rad M: (vertex, column) pairs.

    rad M at v is the sum of the images of the incoming arrow maps."""
    alg = m.algebra
    f = alg.field
    gens = []
    for v in alg.vertex_order:
        d = m.dim(v)
        if d == 0:
            continue
        cols = []
        for a in alg.quiver.arrows_into(v):
            ma = m.map_of(a.name)
            for c in range(ma.ncols):
                cols.append([ma.entries[r][c] for r in range(d)])
        cur = ExactMatrix(f, d, len(cols), tuple(
            tuple(cols[c][r] for c in range(len(cols))) for r in range(d)))
        rank = cur.rank()
        if rank == d:
            continue
        for i in range(d):
            unit = ExactMatrix(f, d, 1, tuple(
                (f.one,) if r == i else (f.zero,) for r in range(d)))
            cand = cur.hstack(unit)
            if cand.rank() > rank:
                cur, rank = cand, rank + 1
                gens.append((v, unit))
                if rank == d:
                    break
    return gens


def projective_cover(m: Representation) -> Tuple[ProjectiveRep, ModuleMap]:
    """Projective cover P(M) ->> M built on lifted top generators."""
    alg = m.algebra
    gens = _top_generators(m)
    p = projective_rep(alg, [v for v, _ in gens])
    cover = hom_from_generators(p, m, [vec for _, vec in gens])
    for v in alg.vertex_order:
        if cover.block(v).rank() != m.dim(v):
            raise ResolutionError("projective cover not surjective at %s" % v)
    return p, cover


def minimal_resolution(m: Representation, cap: Optional[int] = None) -> ProjectiveResolution:
    """Minimal projective resolution, failing loudly if cap is exceeded."""
    alg = m.algebra
    if cap is None:
        cap = alg.dimension
    steps: List[Tuple[ProjectiveRep, ModuleMap]] = []
    cur = m
    prev_incl: Optional[ModuleMap] = None
    for _ in range(cap + 1):
        if cur.is_zero():
            _assert_minimal(steps)
            return ProjectiveResolution(m, steps)
        p, cover = projective_cover(cur)
        diff = cover if prev_incl is None else prev_incl.compose(cover)
        steps.append((p, diff))
        cur, prev_incl = kernel_of(cover)
    raise ResolutionError("resolution cap %d exceeded" % cap)


def _assert_minimal(steps):
    # differentials between projectives must land in the radical: the
    # coordinate of any generator image along a trivial-path basis label
    # of the target must vanish
    for i in range(1, len(steps)):
        p_i, d_i = steps[i]
        p_prev = steps[i - 1][0]
        f = p_i.rep.algebra.field
        for j, v in enumerate(p_i.blocks):
            img = d_i.block(v) @ p_i.gen_vector(j)
            for r, lab in enumerate(p_prev.labels_at(v)):
                if lab[1] == () and not f.is_zero(img.entries[r][0]):
                    raise ResolutionError("non-minimal differential at step %d" % i)


def hom_complex(res_steps, n: Representation, max_i: int):
    """Hom(P_*, N) in generator coordinates: (dims, differential matrices).

    mats[i] maps Hom(P_i, N) -> Hom(P_{i+1}, N)."""
    if not res_steps:
        return [], []
    alg = n.algebra
    f = alg.field
    # one step beyond max_i so the outgoing differential of Ext^{max_i} exists
    steps = res_steps[: max_i + 2]
    dims = [sum(n.dim(v) for v in p.blocks) for p, _ in steps]
    mats = []
    for i in range(1, len(steps)):
        p_hi, d = steps[i]
        p_lo = steps[i - 1][0]
        cols = []
        for j, v in enumerate(p_lo.blocks):
            for c in range(n.dim(v)):
                unit = ExactMatrix(f, n.dim(v), 1, tuple(
                    (f.one,) if r == c else (f.zero,) for r in range(n.dim(v))))
                gen_images = [ExactMatrix.zero(n.dim(w), 1, f) for w in p_lo.blocks]
                gen_images[j] = unit
                phi = hom_from_generators(p_lo, n, gen_images)
                comp = phi.compose(d)
                col = []
                for j2, v2 in enumerate(p_hi.blocks):
                    img = comp.block(v2) @ p_hi.gen_vector(j2)
                    col.extend(img.entries[r][0] for r in range(img.nrows))
                cols.append(col)
        mats.append(ExactMatrix(f, dims[i], dims[i - 1], tuple(
            tuple(cols[c][r] for c in range(dims[i - 1])) for r in range(dims[i]))))
    return dims, mats


def ext_dims(m: Representation, n: Representation, max_i: int) -> List[int]:
    """dim Ext^i(M, N) for i = 0..max_i."""
    if m.is_zero() or n.is_zero():
        return [0] * (max_i + 1)
    res = minimal_resolution(m)
    dims, mats = hom_complex(res.steps, n, max_i)
    out = []
    for i in range(max_i + 1):
        if i >= len(dims):
            out.append(0)
            continue
        rank_in = mats[i - 1].rank() if 1 <= i <= len(mats) else 0
        rank_out = mats[i].rank() if i < len(mats) else 0
        out.append(dims[i] - rank_out - rank_in)
    return out


def projective_dimension(m: Representation) -> int:
    return minimal_resolution(m).length


def global_dimension(a: BoundQuiverAlgebra) -> int:
    return max(projective_dimension(simple_module(a, v)) for v in a.vertex_order)


def coxeter_matrix(a: BoundQuiverAlgebra) -> ExactMatrix:
    """Phi = -C^{-T} C in the fixed topological vertex order."""
    c = a.cartan_matrix()
    return (c.transpose().inverse() @ c).scale(-1)


def coxeter_polynomial(a: BoundQuiverAlgebra) -> IntPolynomial:
    return char_poly(coxeter_matrix(a))


def euler_form_check(a: BoundQuiverAlgebra) -> bool:
    """sum_i (-1)^i dim Ext^i(S_x, S_y) must equal (C^{-1})_{x,y}."""
    cinv = a.cartan_matrix().inverse()
    g = global_dimension(a)
    simples = {v: simple_module(a, v) for v in a.vertex_order}
    for i, x in enumerate(a.vertex_order):
        for j, y in enumerate(a.vertex_order):
            alt = sum((-1) ** k * d for k, d in enumerate(ext_dims(simples[x], simples[y], g)))
            if cinv.entries[i][j] != alt:
                return False
    return True


# -- certificates ------------------------------------------------------------

COXETER_CONVENTION = "phi=-C^{-T}C"


@dataclass(frozen=True)
class InvariantCertificate:
    """Derived-invariant fingerprint.  total_dimension is informational
    only and excluded from invariant comparison."""

    simple_count: int
    total_dimension: int
    cartan_det: int
    coxeter: IntPolynomial
    snf_antisym: tuple
    gldim: int
    vertex_order: tuple

    def key(self):
        # the gldim *value* is not derived invariant; its finiteness is
        return (self.simple_count, self.cartan_det, self.coxeter.coeffs,
                self.snf_antisym, self.gldim >= 0)

    def same_invariants(self, other: "InvariantCertificate") -> bool:
        return self.key() == other.key()

    def to_json(self) -> dict:
        return {
            "simples": self.simple_count,
            "total_dimension": self.total_dimension,
            "det_cartan": self.cartan_det,
            "coxeter": list(self.coxeter.coeffs),
            "snf_antisym": list(self.snf_antisym),
            "gldim": self.gldim,
            "convention": COXETER_CONVENTION,
            "vertex_order": list(self.vertex_order),
        }


def certificate(a: BoundQuiverAlgebra) -> InvariantCertificate:
    c = a.cartan_matrix()
    anti = c - c.transpose()
    return InvariantCertificate(
        simple_count=len(a.vertex_order),
        total_dimension=a.dimension,
        cartan_det=int(c.det()),
        coxeter=coxeter_polynomial(a),
        snf_antisym=tuple(smith_normal_form(anti)),
        gldim=global_dimension(a),
        vertex_order=tuple(a.vertex_order),
    )


# -- nerve (simplicial) cohomology -------------------------------------------

def nerve_cohomology(p: Poset, max_deg: int) -> List[int]:
    """Simplicial cohomology dims of the order complex, degrees 0..max_deg."""
    faces = order_complex(p).faces
    dims = []
    mats = []
    for d in range(max_deg + 1):
        lo = faces[d] if d < len(faces) else ()
        hi = faces[d + 1] if d + 1 < len(faces) else ()
        lo_idx = {f: i for i, f in enumerate(lo)}
        rows = []
        for f in hi:
            row = [Fraction(0)] * len(lo)
            for k in range(len(f)):
                row[lo_idx[f[:k] + f[k + 1:]]] += (-1) ** k
            rows.append(row)
        mats.append(ExactMatrix(QQ, len(hi), len(lo), tuple(tuple(r) for r in rows)))
        dims.append(len(lo))
    out = []
    for d in range(max_deg + 1):
        rank_out = mats[d].rank()
        rank_in = mats[d - 1].rank() if d >= 1 else 0
        out.append(dims[d] - rank_out - rank_in)
    return out


# -- Hochschild cohomology (relative bar complex) ----------------------------

class ResourceRefusal(RuntimeError):
    pass


def hochschild_bar(a: BoundQuiverAlgebra, max_deg: int,
                   size_budget: int = 20000) -> List[int]:
    """HH^0..HH^max_deg via the bar complex relative to the vertex span.

    Degree-n cochains are vertex-span-bimodule maps rad^{(x)n} -> A; the
    vertex span is separable, so the relative complex computes absolute
    Hochschild cohomology.  Degrees above 3 are refused up front."""
    if max_deg > 3:
        raise ResourceRefusal("hochschild_bar supports max_deg <= 3")
    f = a.field
    # radical basis elements (u, v, path); n = 0 cochains live on diagonal blocks
    rad = []
    for (u, v), paths in a._basis.items():
        for p in paths:
            if p:
                rad.append((u, v, p))

    def composable_tuples(n):
        if n == 0:
            return [()]
        out = [(r,) for r in rad]
        for _ in range(n - 1):
            out = [tup + (r,) for tup in out for r in rad if tup[-1][1] == r[0]]
        return out

    def cochain_space(n):
        """Basis of C^n: (argument tuple, value basis path) with blocks matching."""
        basis = []
        for tup in composable_tuples(n):
            if n == 0:
                for v in a.vertex_order:
                    for bp in a.basis(v, v):
                        basis.append((tup, (v, v), bp))
            else:
                blk = (tup[0][0], tup[-1][1])
                for bp in a.basis(*blk):
                    basis.append((tup, blk, bp))
        if len(basis) > size_budget:
            raise ResourceRefusal("bar cochain space in degree %d exceeds budget" % n)
        return basis

    def lmul(r, blk, elem):
        """Left-multiply {path: coeff} in block blk by radical basis elt r."""
        if r[1] != blk[0]:
            return {}, None
        out = {}
        for p, c in elem.items():
            for bp, c2 in a.reduce_path(r[0], blk[1], r[2] + p).items():
                out[bp] = f.add(out.get(bp, f.zero), f.mul(c, c2))
        return out, (r[0], blk[1])

    def rmul(blk, elem, r):
        if blk[1] != r[0]:
            return {}, None
        out = {}
        for p, c in elem.items():
            for bp, c2 in a.reduce_path(blk[0], r[1], p + r[2]).items():
                out[bp] = f.add(out.get(bp, f.zero), f.mul(c, c2))
        return out, (blk[0], r[1])

    spaces = [cochain_space(n) for n in range(max_deg + 2)]
    mats = []
    for n in range(max_deg + 1):
        src, tgt = spaces[n], spaces[n + 1]
        tgt_idx = {(tup, bp): i for i, (tup, blk, bp) in enumerate(tgt)}
        bigs = composable_tuples(n + 1)
        cols = []
        for tup, blk, bp in src:
            col = [f.zero] * len(tgt)

            def add_at(big, elem, sign):
                for bp2, c in elem.items():
                    key = (big, bp2)
                    if key in tgt_idx and not f.is_zero(c):
                        col[tgt_idx[key]] = f.add(
                            col[tgt_idx[key]], f.mul(f.from_int(sign), c))

            for big in bigs:
                # term 0: r_1 * f(r_2..r_{n+1})
                if big[1:] == tup:
                    elem, _ = lmul(big[0], blk, {bp: f.one})
                    add_at(big, elem, 1)
                # middle terms: (-1)^i f(..., r_i r_{i+1}, ...)
                for i in range(1, n + 1):
                    r_i, r_j = big[i - 1], big[i]
                    prod, _ = rmul((r_i[0], r_i[1]), {r_i[2]: f.one}, r_j)
                    for bp_mid, c_mid in prod.items():
                        mid = (r_i[0], r_j[1], bp_mid)
                        if big[: i - 1] + (mid,) + big[i + 1:] == tup:
                            add_at(big, {bp: c_mid}, (-1) ** i)
                # last term: (-1)^{n+1} f(r_1..r_n) * r_{n+1}
                if big[:-1] == tup:
                    elem, _ = rmul(blk, {bp: f.one}, big[-1])
                    add_at(big, elem, (-1) ** (n + 1))
            cols.append(col)
        mats.append(ExactMatrix(f, len(tgt), len(src), tuple(
            tuple(cols[c][r] for c in range(len(src))) for r in range(len(tgt)))))

    out = []
    for n in range(max_deg + 1):
        rank_out = mats[n].rank()
        rank_in = mats[n - 1].rank() if n >= 1 else 0
        out.append(len(spaces[n]) - rank_out - rank_in)
    return out


def hochschild_of_poset(p: Poset, max_deg: int) -> List[int]:
    return hochschild_bar(incidence_algebra(p), max_deg)


def mitchell_equivalence_check(p: Poset) -> bool:
    """gldim <= 1 must coincide with the Hasse unique-path property."""
    a = incidence_algebra(p)
    return (global_dimension(a) <= 1) == unique_path_property(a.quiver)

"""Double/triple quivers, per-vertex quadratic relations, cuts, and the
compatibility of edge contraction with the loop-cut dimensional reduction.

The double quiver adds a dual arrow a*: j -> i per arrow a: i -> j; the
triple quiver further adds one loop per vertex and carries the cubic
potential sum_a (a.a*.l_{t(a)} - a*.a.l_{s(a)}).  Cutting the loops by
cyclic differentiation yields the per-vertex quadratic relation sets, and
both constructions commute with contracting an arrow a0: the contracted
triple re-expands to the original potential, and eliminating the dual of
a0 from the endpoint relations (conjugating the target-side relation by
a0) reproduces the relations of the contracted double quiver.
"""

from __future__ import annotations

from typing import NamedTuple

from .contraction import contract_qp, contract_quiver, hat_word
from .errors import PreconditionError
from .paths import (
    CyclicWord,
    NCPoly,
    Path,
    Potential,
    Sym,
    cyclic_derivative,
    cyclic_normal_form,
    reduce_syms,
)
from .qp import QuiverWithPotential
from .quiver import Arrow, Quiver


def dual_name(aid):
    """Name of the added dual arrow (always a fresh suffix, not an involution)."""
    return aid + "*"


def loop_name(v):
    return f"l_{v}"


def double_quiver(Q):
    arrows = list(Q.arrows) + [
        Arrow(dual_name(a.id), a.target, a.source) for a in Q.arrows
    ]
    return Quiver(Q.vertices, arrows, name=f"double({Q.name})")


def triple_qp(Q):
    """Double quiver plus one loop per vertex, with the cubic potential.

    Each arrow a contributes +a.a*.l_{t(a)} - a*.a.l_{s(a)} (the loop acts
    first in printing order, matching cyclic-word composability).
    """
    D = double_quiver(Q)
    arrows = list(D.arrows) + [Arrow(loop_name(v), v, v) for v in Q.vertices]
    T = Quiver(Q.vertices, arrows, name=f"triple({Q.name})")
    W = Potential.zero()
    for a in Q.arrows:
        plus = Path((Sym(a.id), Sym(dual_name(a.id)), Sym(loop_name(a.target))))
        minus = Path((Sym(dual_name(a.id)), Sym(a.id), Sym(loop_name(a.source))))
        W = W + Potential.of_word(cyclic_normal_form(T, plus), 1)
        W = W + Potential.of_word(cyclic_normal_form(T, minus), -1)
    return QuiverWithPotential(T, W)


class RelationSet(NamedTuple):
    """Per-vertex quadratic relation components, as (vertex, NCPoly) pairs.

    Several entries may share a vertex (e.g. the two loop derivatives at a
    merged vertex); `at` sums every component based at the given vertex.
    """

    entries: tuple

    def at(self, v):
        total = NCPoly.zero()
        for vertex, poly in self.entries:
            if vertex == v:
                total = total + poly
        return total


def cut_relations(Q, W, cut):
    """Cyclic derivatives of W by each cut loop, tagged by the loop's vertex."""
    entries = []
    for lid in cut:
        a = Q.arrow(lid)
        if a.source != a.target:
            raise PreconditionError(f"cut arrow {lid!r} is not a loop")
        entries.append((a.source, cyclic_derivative(Q, W, lid)))
    return RelationSet(tuple(entries))


def preprojective_relations(Q):
    """Per-vertex components of sum_a (a.a* - a*.a) over the double quiver."""
    entries = []
    for v in Q.vertices:
        poly = NCPoly.zero()
        for a in Q.arrows:
            if a.target == v:
                p = Path((Sym(a.id), Sym(dual_name(a.id))))
                poly = poly + NCPoly.of_path(p, 1)
            if a.source == v:
                p = Path((Sym(dual_name(a.id)), Sym(a.id)))
                poly = poly + NCPoly.of_path(p, -1)
        entries.append((v, poly))
    return RelationSet(tuple(entries))


def contract_triple_check(Q, a0_id):
    """Contracting the triple QP along a0 matches the triple of the
    contracted quiver.

    Two comparisons, both exact: (i) re-expanding every hatted letter of
    the contracted potential into original letters (with cyclic
    cancellation of a0.a0^-1 pairs) recovers the original cubic potential;
    (ii) after renaming dual arrows to the duals of the hatted base arrows
    and fusing the two merged-vertex loops into one, the contracted
    potential equals the cubic potential of the contracted quiver's triple
    -- the two leftover quadratic loop terms cancel each other under the
    fusion, eliminating the dual of a0.
    """
    a0 = Q.arrow(a0_id)
    ip, im = a0.source, a0.target
    T = triple_qp(Q)
    lhs = contract_qp(T, a0_id)
    _, hat_map_T, expansion_T = contract_quiver(T.quiver, a0_id)
    expanded = Potential.zero()
    for w, c in lhs.potential.terms.items():
        syms = []
        for s in w.syms:
            syms.extend(expansion_T[s.arrow])
        expanded = expanded + Potential.of_word(
            cyclic_normal_form(T.quiver, Path(tuple(syms))), c
        )
    if expanded != T.potential:
        return False
    Qhat, hat_map_Q, _ = contract_quiver(Q, a0_id)
    rhs = triple_qp(Qhat)
    rename = {}
    for a in Q.arrows:
        if a.id == a0_id:
            continue
        rename[hat_map_T[a.id]] = hat_map_Q[a.id]
        rename[hat_map_T[dual_name(a.id)]] = dual_name(hat_map_Q[a.id])
    rename[hat_map_T[loop_name(im)]] = loop_name(ip)
    key = lambda rot: tuple((s.arrow, s.inv) for s in rot)
    acc = {}
    for w, c in lhs.potential.terms.items():
        syms = tuple(Sym(rename.get(s.arrow, s.arrow), s.inv) for s in w.syms)
        best = min((syms[k:] + syms[:k] for k in range(len(syms))), key=key)
        cw = CyclicWord(best)
        total = acc.get(cw, 0) + c
        if total:
            acc[cw] = total
        else:
            acc.pop(cw, None)
    return acc == rhs.potential.terms


def adhm_elimination_check(Q, a0_id):
    """Eliminating the dual of a0 from the endpoint relations reproduces
    the relations of the contracted quiver.

    The source-endpoint relation plus the a0-conjugated target-endpoint
    relation cancels the dual-of-a0 terms; rewriting every word in hatted
    double-quiver letters must then equal the merged-vertex relation of
    the contracted quiver, and the relations away from the endpoints must
    match after the same rewrite, vertex by vertex.
    """
    a0 = Q.arrow(a0_id)
    if a0.source == a0.target:
        raise PreconditionError(f"cannot contract the loop {a0_id!r}")
    ip, im = a0.source, a0.target
    D = double_quiver(Q)
    rel = preprojective_relations(Q)
    Qhat, hat_map_Q, _ = contract_quiver(Q, a0_id)
    rhs = preprojective_relations(Qhat)
    _, hat_map_D, expansion_D = contract_quiver(D, a0_id)
    star_fix = {
        hat_map_D[dual_name(a.id)]: dual_name(hat_map_Q[a.id])
        for a in Q.arrows
        if a.id != a0_id
    }

    def rewrite(poly):
        out = NCPoly.zero()
        for p, c in poly.terms.items():
            syms = hat_word(p.syms, a0_id, hat_map_D, expansion_D)
            syms = tuple(Sym(star_fix.get(s.arrow, s.arrow), s.inv) for s in syms)
            out = out + NCPoly.of_path(Path(syms), c)
        return out

    def conjugate(poly):
        out = NCPoly.zero()
        for p, c in poly.terms.items():
            syms = reduce_syms((Sym(a0_id, True),) + p.syms + (Sym(a0_id),))
            path = Path(syms) if syms else Path.idempotent(ip)
            out = out + NCPoly.of_path(path, c)
        return out

    for v in Q.vertices:
        if v in (ip, im):
            continue
        if rewrite(rel.at(v)) != rhs.at(v):
            return False
    combined = rel.at(ip) + conjugate(rel.at(im))
    for p in combined.terms:
        if all(s.arrow in (a0_id, dual_name(a0_id)) for s in p.syms):
            return False  # the connector terms failed to cancel
    return rewrite(combined) == rhs.at(ip)

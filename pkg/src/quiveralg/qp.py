"""Quivers with potential and the trivial-part reduction.

A QuiverWithPotential bundles a quiver, a potential (rational combination
of cyclic words in its arrows), and an optional designated arrow that may
appear formally inverted in words.  The trivial-part reduction repeatedly
eliminates quadratic 2-cycle terms b.c by the substitution recipe
(c -> -dW/db + c, b -> -dW/dc + b, then delete b and c), the syntactic
shadow of reduction up to right-equivalence.
"""

from __future__ import annotations

from .errors import PreconditionError, UnsupportedReductionError
from .paths import (
    NCPoly,
    Potential,
    cyclic_derivative,
    quadratic_two_cycles,
    substitute_arrow,
    sym_source,
    sym_target,
)
from .quiver import Quiver


class QuiverWithPotential:
    """quiver + potential (+ optional formally invertible arrow)."""

    __slots__ = ("quiver", "potential", "inverted")

    def __init__(self, quiver, potential=None, inverted=None):
        self.quiver = quiver
        self.potential = potential if potential is not None else Potential.zero()
        self.inverted = inverted
        if inverted is not None:
            quiver.arrow(inverted)  # must exist
        self._validate()

    def _validate(self):
        Q = self.quiver
        for w in self.potential.terms:
            prev = None
            for s in w.syms:
                if s.inv and s.arrow != self.inverted:
                    raise PreconditionError(
                        f"inverse symbol {s} of a non-designated arrow in potential"
                    )
                Q.arrow(s.arrow)
                if prev is not None and sym_source(Q, prev) != sym_target(Q, s):
                    raise PreconditionError(f"potential term {w} is not composable")
                prev = s
            if sym_source(Q, w.syms[-1]) != sym_target(Q, w.syms[0]):
                raise PreconditionError(f"potential term {w} is not closed")

    def __eq__(self, other):
        return (
            isinstance(other, QuiverWithPotential)
            and self.quiver == other.quiver
            and self.potential == other.potential
            and self.inverted == other.inverted
        )

    def __repr__(self):
        return f"QP({self.quiver!r}, W = {self.potential})"


def delete_arrows(Q, ids):
    keep = [a for a in Q.arrows if a.id not in ids]
    return Quiver(Q.vertices, keep, name=Q.name)


def reduce_trivial(qp):
    """Delete the trivial (quadratic) part of the potential.

    Repeatedly pick a quadratic term b.c with coefficient +-1, substitute
    c -> -(dW/db - c), b -> -(dW/dc - b) simultaneously, and delete the two
    arrows.  Errors out (never silently) on non-unit quadratic coefficients
    or if a replacement reintroduces an eliminated arrow.
    """
    qp_cur = qp
    eliminated = set()
    while True:
        quads = quadratic_two_cycles(qp_cur.quiver, qp_cur.potential)
        if not quads:
            return qp_cur
        w, coeff = min(quads, key=lambda t: t[0].sort_key())
        if coeff not in (1, -1):
            raise UnsupportedReductionError(
                f"quadratic term {w} has non-unit coefficient {coeff}"
            )
        s1, s2 = w.syms  # word s1.s2, s2 acts first
        b, c = s1.arrow, s2.arrow
        Q = qp_cur.quiver
        W = qp_cur.potential.scale(1 / coeff) if coeff != 1 else qp_cur.potential
        # dW/db = c + W1  and  dW/dc = b + W2 (as NCPoly identities)
        from .paths import Path, Sym

        db = cyclic_derivative(Q, W, b)
        dc = cyclic_derivative(Q, W, c)
        W1 = db - NCPoly.of_path(Path((Sym(c),)))
        W2 = dc - NCPoly.of_path(Path((Sym(b),)))
        for poly in (W1, W2):
            for p in poly.terms:
                for s in p.syms:
                    if s.arrow in (b, c) or s.arrow in eliminated:
                        raise UnsupportedReductionError(
                            f"elimination of ({b},{c}) reintroduces {s.arrow}"
                        )
        Wnew = substitute_arrow(Q, qp_cur.potential, {c: -W1, b: -W2})
        for w2 in Wnew.terms:
            for s in w2.syms:
                if s.arrow in (b, c):
                    raise UnsupportedReductionError(
                        f"substitution left eliminated arrow {s.arrow} in {w2}"
                    )
        eliminated.update((b, c))
        qp_cur = QuiverWithPotential(
            delete_arrows(Q, {b, c}), Wnew, inverted=qp_cur.inverted
        )

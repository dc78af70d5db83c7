"""Noncommutative path algebra over Q, cyclic words, potentials.

Composition is function-style: in the word "fg" the right letter g acts
first, so the path fg runs s(g) -> t(g)=s(f) -> t(f).  Words are stored as
tuples of symbols in that printing order (index 0 is the LAST letter to
act).  At most one arrow may be formally inverted -- the designated
contraction arrow -- and only its symbols may carry the inverse flag.

A cyclic word is the rotation class of a closed path, canonicalized to the
lexicographically least rotation after cancelling a0 a0^{-1} pairs (also
across the cyclic seam).
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DegenerateTermError,
    InternalConsistencyError,
    PreconditionError,
    UnsupportedReductionError,
)


class Sym(NamedTuple):
    """One letter of a path: an arrow id plus a direction flag."""

    arrow: str
    inv: bool = False

    def __str__(self):
        return f"{self.arrow}^-1" if self.inv else self.arrow


def sym_source(Q, s):
    a = Q.arrow(s.arrow)
    return a.target if s.inv else a.source


def sym_target(Q, s):
    a = Q.arrow(s.arrow)
    return a.source if s.inv else a.target


class Path:
    """A composable word of symbols, or a lazy (length-0) vertex path e_v."""

    __slots__ = ("syms", "base")

    def __init__(self, syms=(), base=None):
        self.syms = tuple(syms)
        self.base = base
        if not self.syms and base is None:
            raise PreconditionError("empty path needs a base vertex")

    @staticmethod
    def idempotent(v):
        return Path((), base=v)

    def is_idempotent(self):
        return not self.syms

    def __len__(self):
        return len(self.syms)

    def __eq__(self, other):
        return isinstance(other, Path) and self.syms == other.syms and self.base == other.base

    def __hash__(self):
        return hash((self.syms, self.base))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (len(self.syms), tuple((s.arrow, s.inv) for s in self.syms), self.base or "")

    def source(self, Q):
        if not self.syms:
            return self.base
        return sym_source(Q, self.syms[-1])

    def target(self, Q):
        if not self.syms:
            return self.base
        return sym_target(Q, self.syms[0])

    def __str__(self):
        if not self.syms:
            return f"e_{self.base}"
        return ".".join(str(s) for s in self.syms)

    __repr__ = __str__


def check_composable(Q, syms):
    """Validate that consecutive symbols compose (right acts first)."""
    for left, right in zip(syms, syms[1:]):
        if sym_source(Q, left) != sym_target(Q, right):
            raise PreconditionError(
                f"non-composable letters {left}.{right}: "
                f"s({left})={sym_source(Q, left)} != t({right})={sym_target(Q, right)}"
            )


def reduce_syms(syms):
    """Cancel adjacent inverse pairs a a^{-1} and a^{-1} a (open word)."""
    out = []
    for s in syms:
        if out and out[-1].arrow == s.arrow and out[-1].inv != s.inv:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def compose(Q, left, right):
    """The path left*right (right acts first), with inverse cancellation."""
    if right.is_idempotent():
        if left.source(Q) != right.base:
            raise PreconditionError("idempotent mismatch in composition")
        return left
    if left.is_idempotent():
        if right.target(Q) != left.base:
            raise PreconditionError("idempotent mismatch in composition")
        return right
    if left.source(Q) != right.target(Q):
        raise PreconditionError(f"cannot compose {left} . {right}")
    syms = reduce_syms(left.syms + right.syms)
    if not syms:
        return Path.idempotent(right.source(Q))
    return Path(syms)


class NCPoly:
    """Finite Q-linear combination of paths (no zero coefficients stored)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for p, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[p] = c

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def of_path(p, c=1):
        return NCPoly({p: Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p, Fraction(0)) + c
            if s:
                out[p] = s
            else:
                del out[p]
        r = NCPoly.__new__(NCPoly)
        r.terms = out
        return r

    def __neg__(self):
        r = NCPoly.__new__(NCPoly)
        r.terms = {p: -c for p, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        r = NCPoly.__new__(NCPoly)
        r.terms = {p: cc * c for p, cc in self.terms.items()} if c else {}
        return r

    def mul(self, other, Q):
        out = NCPoly()
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                out = out + NCPoly.of_path(compose(Q, p1, p2), c1 * c2)
        return out

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda t: t[0].sort_key())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            if c == 1:
                parts.append(str(p))
            elif c == -1:
                parts.append("-" + str(p))
            else:
                parts.append(f"{c}*{p}")
        out = parts[0]
        for piece in parts[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    __repr__ = __str__


class CyclicWord:
    """Rotation class of a closed path, stored as the least rotation."""

    __slots__ = ("syms",)

    def __init__(self, syms):
        self.syms = tuple(syms)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.syms == other.syms

    def __hash__(self):
        return hash(self.syms)

    def __len__(self):
        return len(self.syms)

    def sort_key(self):
        return (len(self.syms), tuple((s.arrow, s.inv) for s in self.syms))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def rotations(self):
        n = len(self.syms)
        return [self.syms[k:] + self.syms[:k] for k in range(n)]

    def __str__(self):
        return ".".join(str(s) for s in self.syms)

    __repr__ = __str__


def _cancel_cyclic(syms):
    """Cancel inverse pairs including across the seam; [] means degenerate."""
    syms = list(reduce_syms(syms))
    while len(syms) >= 2 and syms[0].arrow == syms[-1].arrow and syms[0].inv != syms[-1].inv:
        syms = list(reduce_syms(syms[1:-1]))
    return syms


def cyclic_normal_form(Q, path):
    """Canonical cyclic word of a closed path.

    Cancels a a^{-1} / a^{-1} a pairs (also across the cyclic seam), then
    picks the lexicographically least rotation by (arrow id, inverse flag).
    A word that cancels away entirely is a degenerate (length-0) cycle and
    is an error.
    """
    if path.is_idempotent():
        raise DegenerateTermError("idempotent is not a cyclic word")
    if path.source(Q) != path.target(Q):
        raise PreconditionError(f"path {path} is not closed")
    check_composable(Q, path.syms)
    syms = _cancel_cyclic(path.syms)
    if not syms:
        raise DegenerateTermError(f"cyclic word {path} cancels away completely")
    key = lambda rot: tuple((s.arrow, s.inv) for s in rot)
    best = min(
        (tuple(syms[k:] + syms[:k]) for k in range(len(syms))),
        key=key,
    )
    return CyclicWord(best)


class Potential:
    """Finite Q-linear combination of cyclic words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[w] = c

    @staticmethod
    def zero():
        return Potential()

    @staticmethod
    def of_word(w, c=1):
        return Potential({w: Fraction(c)})

    @staticmethod
    def from_paths(Q, path_coeffs):
        W = Potential()
        for p, c in path_coeffs:
            W = W + Potential.of_word(cyclic_normal_form(Q, p), c)
        return W

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                del out[w]
        r = Potential.__new__(Potential)
        r.terms = out
        return r

    def __neg__(self):
        r = Potential.__new__(Potential)
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        r = Potential.__new__(Potential)
        r.terms = {w: cc * c for w, cc in self.terms.items()} if c else {}
        return r

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def arrows_used(self):
        out = set()
        for w in self.terms:
            for s in w.syms:
                out.add(s.arrow)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"{c} * {w}")
        return " + ".join(parts)

    __repr__ = __str__


def cyclic_derivative(Q, W, arrow_id):
    """Cyclic partial derivative of a potential by a forward arrow.

    For each term and each occurrence of the arrow, rotate the cyclic word
    so that occurrence comes first and delete it; the remainder is an open
    path from t(arrow) back to s(arrow) read in word order.
    """
    out = NCPoly()
    for w, c in W.terms.items():
        n = len(w.syms)
        for k in range(n):
            s = w.syms[k]
            if s.arrow == arrow_id and not s.inv:
                rot = w.syms[k:] + w.syms[:k]  # occurrence is rot[0]
                rest = rot[1:]
                if rest:
                    p = Path(reduce_syms(rest))
                    if not p.syms:
                        a = Q.arrow(arrow_id)
                        p = Path.idempotent(a.target)
                else:
                    a = Q.arrow(arrow_id)
                    p = Path.idempotent(a.target)
                out = out + NCPoly.of_path(p, c)
    return out


def substitute_arrow(Q, value, assignments):
    """Simultaneous substitution arrow -> NCPoly in an NCPoly or Potential.

    Replacement polynomials must share source and target with the replaced
    arrow.  Idempotent paths inside replacements act as scalars on the
    neighbouring letters.  Returns the same kind of object as `value`.
    """
    for aid, repl in assignments.items():
        a = Q.arrow(aid)
        for p in repl.terms:
            if p.source(Q) != a.source or p.target(Q) != a.target:
                raise PreconditionError(
                    f"replacement term {p} for {aid} has endpoints "
                    f"{p.source(Q)}->{p.target(Q)}, expected {a.source}->{a.target}"
                )

    def expand_word(syms, coeff):
        """Yield (symbol-tuple, coefficient) after substitution."""
        results = [((), coeff)]
        for s in syms:
            if not s.inv and s.arrow in assignments:
                repl = assignments[s.arrow]
                new = []
                for prefix, c in results:
                    for p, pc in repl.terms.items():
                        new.append((prefix + p.syms, c * pc))
                results = new
                if not results:
                    return []
            else:
                results = [(prefix + (s,), c) for prefix, c in results]
        return results

    if isinstance(value, NCPoly):
        out = NCPoly()
        for p, c in value.terms.items():
            if p.is_idempotent():
                out = out + NCPoly.of_path(p, c)
                continue
            src = p.source(Q)
            for syms, cc in expand_word(p.syms, c):
                syms = reduce_syms(syms)
                out = out + NCPoly.of_path(Path(syms) if syms else Path.idempotent(src), cc)
        return out
    if isinstance(value, Potential):
        out = Potential()
        for w, c in value.terms.items():
            for syms, cc in expand_word(w.syms, c):
                syms = _cancel_cyclic(syms)
                if not syms:
                    raise DegenerateTermError(
                        f"substitution degenerated the cyclic word {w}"
                    )
                out = out + Potential.of_word(
                    cyclic_normal_form(Q, Path(syms)), cc
                )
        return out
    raise InternalConsistencyError(f"cannot substitute into {type(value).__name__}")


def quadratic_two_cycles(Q, W):
    """Length-2 terms b.c of W whose letters are distinct forward arrows."""
    quads = []
    for w, c in W.terms.items():
        if len(w.syms) == 2:
            s1, s2 = w.syms
            if s1.inv or s2.inv or s1.arrow == s2.arrow:
                raise UnsupportedReductionError(f"unsupported quadratic term {w}")
            quads.append((w, c))
    return quads

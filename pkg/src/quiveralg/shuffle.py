"""Shuffle-algebra model of the cohomological Hall algebra.

An element of rank vector g is a Sym_g-invariant polynomial in variables
x[i,1..g^i].  The product of f (rank g1) and g (rank g2) sums, over all
per-vertex splittings of the slots 1..g1+g2 into a g1-block and a g2-block,
the relabelled product f*g times the arrow/vertex kernel

    fac = prod_{arrows i->j} prod_{a1 in block1(i), a2 in block2(j)}
              (x[j,a2] - x[i,a1])
          / prod_i prod_{a1 in block1(i), a2 in block2(i)} (x[i,a2] - x[i,a1]).

The sum is assembled over the common denominator prod_i Vdm(x[i,*]) and the
final division is performed exactly; a non-zero remainder is an internal
bug, never a data error.

Contraction acts on these polynomials by the slotwise substitution
x[i-,a] |-> x[i0,a], x[i+,a] |-> x[i0,a]; it is a homomorphism for the
product above on the rank sectors with equal values at the two merged
vertices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from .contraction import contract_quiver
from .errors import PreconditionError
from .linalg import QQ, in_span, rref
from .poly import Poly, Rat, xvar
from .quiver import check_dimvec, euler_form

INCONCLUSIVE = "inconclusive"


class SymPoly:
    """Symmetric polynomial attached to a quiver and a rank vector.

    Invariance under slot permutations at every vertex is validated at
    construction (adjacent transpositions suffice); asymmetric input is
    rejected, not symmetrized.
    """

    __slots__ = ("quiver", "gamma", "poly")

    def __init__(self, quiver, gamma, poly):
        check_dimvec(quiver, gamma, what="rank vector")
        if not isinstance(poly, Poly):
            poly = Poly.const(poly)
        self.quiver = quiver
        self.gamma = dict(gamma)
        self.poly = poly
        self._validate()

    def _validate(self):
        gamma = self.gamma
        for v in self.poly.variables():
            if len(v) != 3 or v[0] != "x":
                raise PreconditionError(f"foreign variable {v!r}")
            _, vertex, slot = v
            if vertex not in gamma:
                raise PreconditionError(f"variable at unknown vertex {vertex!r}")
            if not 1 <= slot <= gamma[vertex]:
                raise PreconditionError(
                    f"slot {slot} out of range 1..{gamma[vertex]} at vertex {vertex!r}"
                )
        for vertex, n in gamma.items():
            for a in range(1, n):
                swap = {
                    xvar(vertex, a): xvar(vertex, a + 1),
                    xvar(vertex, a + 1): xvar(vertex, a),
                }
                if self.poly.rename_vars(swap) != self.poly:
                    raise PreconditionError(
                        f"polynomial is not symmetric in the slots of {vertex!r}"
                    )

    @staticmethod
    def one(quiver, gamma):
        return SymPoly(quiver, gamma, Poly.const(1))

    @staticmethod
    def generator(quiver, vertex, power=1):
        """x[vertex,1]^power in the rank-one sector e_vertex."""
        gamma = {v: 1 if v == vertex else 0 for v in quiver.vertices}
        poly = Poly.var(xvar(vertex, 1), power) if power else Poly.const(1)
        return SymPoly(quiver, gamma, poly)

    def gamma_key(self):
        return tuple(self.gamma[v] for v in self.quiver.vertices)

    def is_zero(self):
        return self.poly.is_zero()

    def __add__(self, other):
        self._check_same_sector(other)
        return SymPoly(self.quiver, self.gamma, self.poly + other.poly)

    def __sub__(self, other):
        self._check_same_sector(other)
        return SymPoly(self.quiver, self.gamma, self.poly - other.poly)

    def scale(self, c):
        return SymPoly(self.quiver, self.gamma, self.poly * Poly.const(Fraction(c)))

    def _check_same_sector(self, other):
        if self.quiver != other.quiver or self.gamma != other.gamma:
            raise PreconditionError("elements live in different rank sectors")

    def __eq__(self, other):
        return (
            isinstance(other, SymPoly)
            and self.quiver == other.quiver
            and self.gamma == other.gamma
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.quiver, tuple(sorted(self.gamma.items())), self.poly))

    def __str__(self):
        return f"[{self.gamma_key()}] {self.poly}"

    __repr__ = __str__


class ShuffleElement:
    """Finite sum of SymPoly components indexed by their rank vectors."""

    __slots__ = ("quiver", "parts")

    def __init__(self, quiver, parts=()):
        self.quiver = quiver
        self.parts = {}
        for sp in parts:
            self._add_part(sp)

    def _add_part(self, sp):
        if sp.quiver != self.quiver:
            raise PreconditionError("component over a different quiver")
        key = sp.gamma_key()
        if key in self.parts:
            sp = self.parts[key] + sp
        if sp.is_zero():
            self.parts.pop(key, None)
        else:
            self.parts[key] = sp

    def __add__(self, other):
        out = ShuffleElement(self.quiver, self.parts.values())
        for sp in other.parts.values():
            out._add_part(sp)
        return out

    def mul(self, other):
        out = ShuffleElement(self.quiver)
        for f in self.parts.values():
            for g in other.parts.values():
                out._add_part(shuffle_mul(f, g))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ShuffleElement)
            and self.quiver == other.quiver
            and self.parts == other.parts
        )


def fac_kernel(Q, g1, g2):
    """The shuffle kernel as a factored rational function.

    Block 1 occupies slots 1..g1^i and block 2 slots g1^i+1..g1^i+g2^i at
    every vertex i.  Arrows contribute numerator factors, equal vertices
    contribute denominator factors.
    """
    check_dimvec(Q, g1, what="rank vector")
    check_dimvec(Q, g2, what="rank vector")
    out = Rat.one()
    for i in Q.vertices:
        for j in Q.vertices:
            a_ij = Q.arrow_count(i, j)
            if not a_ij:
                continue
            for a1 in range(1, g1[i] + 1):
                for a2 in range(g1[j] + 1, g1[j] + g2[j] + 1):
                    out = out * Rat(1, [(Poly.linear_diff(xvar(j, a2), xvar(i, a1)), a_ij)])
    for i in Q.vertices:
        for a1 in range(1, g1[i] + 1):
            for a2 in range(g1[i] + 1, g1[i] + g2[i] + 1):
                out = out * Rat(1, [(Poly.linear_diff(xvar(i, a2), xvar(i, a1)), -1)])
    return out


def _inside_vdm(vertex, slots):
    """prod_{a<b in slots} (x[vertex,b] - x[vertex,a])."""
    out = Poly.const(1)
    for a, b in combinations(sorted(slots), 2):
        out = out * Poly.linear_diff(xvar(vertex, b), xvar(vertex, a))
    return out


def _inversions(block1, block2):
    return sum(1 for s in block1 for t in block2 if t < s)


def shuffle_mul(f, g):
    """The shuffle product f*g, exact, with polynomiality asserted."""
    if f.quiver != g.quiver:
        raise PreconditionError("shuffle product requires a common quiver")
    Q = f.quiver
    g1, g2 = f.gamma, g.gamma
    gamma = {v: g1[v] + g2[v] for v in Q.vertices}
    if f.poly.is_zero() or g.poly.is_zero():
        return SymPoly(Q, gamma, Poly.zero())

    choices = []
    for v in Q.vertices:
        slots = range(1, gamma[v] + 1)
        choices.append([tuple(c) for c in combinations(slots, g1[v])])

    def walk(k, blocks):
        if k == len(choices):
            yield tuple(blocks)
            return
        for c in choices[k]:
            blocks.append(c)
            yield from walk(k + 1, blocks)
            blocks.pop()

    numerator = Poly.zero()
    verts = Q.vertices
    arrow_pairs = [
        (i, j, Q.arrow_count(i, j))
        for i in verts
        for j in verts
        if Q.arrow_count(i, j)
    ]
    for blocks in walk(0, []):
        block1 = dict(zip(verts, blocks))
        block2 = {v: tuple(s for s in range(1, gamma[v] + 1) if s not in block1[v]) for v in verts}
        ren_f = {}
        ren_g = {}
        for v in verts:
            for p, slot in enumerate(block1[v], start=1):
                ren_f[xvar(v, p)] = xvar(v, slot)
            for q, slot in enumerate(block2[v], start=1):
                ren_g[xvar(v, q)] = xvar(v, slot)
        term = f.poly.rename_vars(ren_f) * g.poly.rename_vars(ren_g)
        sign = 1
        for v in verts:
            if _inversions(block1[v], block2[v]) % 2:
                sign = -sign
            term = term * _inside_vdm(v, block1[v]) * _inside_vdm(v, block2[v])
        for i, j, a_ij in arrow_pairs:
            for a1 in block1[i]:
                for a2 in block2[j]:
                    term = term * Poly.linear_diff(xvar(j, a2), xvar(i, a1)) ** a_ij
        numerator = numerator + (term if sign == 1 else -term)

    result = numerator
    for v in verts:
        for a, b in combinations(range(1, gamma[v] + 1), 2):
            result = result.divide_linear(xvar(v, b), xvar(v, a))
    return SymPoly(Q, gamma, result)


def product_degree(Q, parts):
    """Degree of a product of homogeneous factors, given (deg, gamma) pairs."""
    total = sum(d for d, _gamma in parts)
    for p in range(len(parts)):
        for q in range(p + 1, len(parts)):
            total -= euler_form(Q, parts[p][1], parts[q][1])
    return total


def contract_shuffle(f, a0_id):
    """Image of f under edge contraction: both merged blocks land on the
    surviving vertex, slotwise."""
    Q = f.quiver
    a0 = Q.arrow(a0_id)
    ip, im = a0.source, a0.target
    if ip == im:
        raise PreconditionError(f"cannot contract the loop {a0_id!r}")
    if f.gamma[ip] != f.gamma[im]:
        raise PreconditionError(
            f"equal-rank precondition: gamma[{ip}]={f.gamma[ip]} != gamma[{im}]={f.gamma[im]}"
        )
    Qhat, _, _ = contract_quiver(Q, a0_id)
    ghat = {v: f.gamma[v] for v in Qhat.vertices}
    ren = {xvar(im, a): xvar(ip, a) for a in range(1, f.gamma[im] + 1)}
    return SymPoly(Qhat, ghat, f.poly.rename_vars(ren))


def _vertex_words(Q, gamma):
    letters = []
    for v in Q.vertices:
        letters.extend([v] * gamma[v])
    return sorted(set(permutations(letters)))


def _compositions_upto(m, bound):
    """All tuples of m non-negative integers with sum <= bound."""
    if m == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _compositions_upto(m - 1, bound - first):
            yield (first,) + rest


def _unit_gamma(Q, v):
    return {u: 1 if u == v else 0 for u in Q.vertices}


def spherical_products(Q, gamma, d):
    """All products of rank-one generator powers of total rank gamma and
    polynomial degree <= d (ordered words, left factor acting first in the
    product notation f1 * f2 * ...)."""
    check_dimvec(Q, gamma, what="rank vector")
    out = []
    for word in _vertex_words(Q, gamma):
        m = len(word)
        chi_sum = 0
        for p in range(m):
            for q in range(p + 1, m):
                chi_sum += euler_form(Q, _unit_gamma(Q, word[p]), _unit_gamma(Q, word[q]))
        bound = d + chi_sum
        if bound < 0:
            continue
        for ks in _compositions_upto(m, bound):
            prod = None
            for v, k in zip(word, ks):
                gen = SymPoly(Q, _unit_gamma(Q, v), Poly.var(xvar(v, 1), k))
                prod = gen if prod is None else shuffle_mul(prod, gen)
                if prod.is_zero():
                    break
            if prod is not None and not prod.is_zero():
                out.append(prod)
    if not any(gamma.values()):
        out.append(SymPoly.one(Q, gamma))
    return out


def _to_rows(polys):
    monos = sorted({m for p in polys for m in p.terms}, key=lambda m: (len(m), m))
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monos)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(tuple(row))
    return monos, rows


def spherical_span(Q, gamma, d):
    """Row-reduced basis of the degree-<=d slice generated by rank-one
    elements, as SymPoly values."""
    products = spherical_products(Q, gamma, d)
    if not products:
        return []
    monos, rows = _to_rows([p.poly for p in products])
    reduced, _pivots = rref(QQ, rows)
    basis = []
    for row in reduced:
        terms = {m: c for m, c in zip(monos, row) if c}
        if terms:
            p = Poly.zero()
            p.terms.update(terms)
            basis.append(SymPoly(Q, gamma, p))
    return basis


def spherical_membership(f, d=None):
    """True / False / INCONCLUSIVE membership of f in the span of rank-one
    generator products.  Exact below the degree bound; degrees above the
    bound cannot be decided by the truncated span."""
    if d is None:
        d = f.poly.total_degree()
    if f.poly.total_degree() > d:
        return INCONCLUSIVE
    if f.poly.is_zero():
        return True
    products = spherical_products(f.quiver, f.gamma, d)
    polys = [p.poly for p in products] + [f.poly]
    _monos, rows = _to_rows(polys)
    reduced, pivots = rref(QQ, rows[:-1])
    return in_span(QQ, reduced, pivots, rows[-1])

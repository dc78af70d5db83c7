"""Tiny exact linear algebra over Q and over prime fields F_p.

Matrices are tuples of row tuples.  Field elements are Fractions (QQ) or
ints in range(p) (GF(p)).  Just enough functionality for representation
contraction, brute-force semistability, and quotient representations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import PreconditionError


class QQ:
    name = "QQ"

    @staticmethod
    def conv(x):
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError
        return 1 / Fraction(a)

    @staticmethod
    def elements():
        raise PreconditionError("QQ is infinite; enumeration requires a finite field")


class GF:
    def __init__(self, p):
        if p < 2 or any(p % k == 0 for k in range(2, p)):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def conv(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if not a:
            raise ZeroDivisionError
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def zeros(F, rows, cols):
    return tuple(tuple(F.zero for _ in range(cols)) for _ in range(rows))


def identity(F, n):
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def mat_mul(F, A, B):
    if A and B and len(A[0]) != len(B):
        raise PreconditionError("matrix shape mismatch")
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        r = []
        for j in range(cols):
            s = F.zero
            for k in range(inner):
                s = F.add(s, F.mul(row[k], B[k][j]))
            r.append(s)
        out.append(tuple(r))
    return tuple(out)


def mat_vec(F, A, v):
    return tuple(
        _dot(F, row, v)
        for row in A
    )


def _dot(F, row, v):
    s = F.zero
    for a, b in zip(row, v):
        s = F.add(s, F.mul(a, b))
    return s


def mat_inverse(F, A):
    """Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise PreconditionError("inverse of a non-square matrix")
    aug = [list(A[i]) + list(identity(F, n)[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != F.zero), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        aug[col] = [F.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != F.zero:
                factor = aug[r][col]
                aug[r] = [F.sub(x, F.mul(factor, y)) for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rref(F, rows):
    """Reduced row echelon form; returns (rows_tuple, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != F.zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != F.zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    rows = [tuple(row) for row in rows[:r]]
    return tuple(rows), tuple(pivots)


def in_span(F, basis_rref, pivots, v):
    """Is vector v in the row space given by its rref basis?"""
    v = list(v)
    for row, c in zip(basis_rref, pivots):
        if v[c] != F.zero:
            f = v[c]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return all(x == F.zero for x in v)


def subspaces(F, n):
    """All subspaces of F^n as rref bases (tuple of basis rows, pivots).

    Enumerates reduced row echelon forms directly: choose pivot columns,
    then fill the free entries (zero above/below pivots as rref demands).
    """
    from itertools import combinations

    out = [((), ())]  # the zero subspace
    nonzero = [x for x in F.elements() if x != F.zero]
    del nonzero  # rref pivots are 1; free entries range over all of F
    for k in range(1, n + 1):
        for pivots in combinations(range(n), k):
            free_positions = []
            for r, pc in enumerate(pivots):
                for c in range(pc + 1, n):
                    if c not in pivots[r + 1 :] and c not in pivots:
                        free_positions.append((r, c))
                    elif c in pivots[r + 1 :]:
                        pass  # forced zero in rref
            for fill in product(list(F.elements()), repeat=len(free_positions)):
                rows = [[F.zero] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = F.one
                for (r, c), val in zip(free_positions, fill):
                    rows[r][c] = val
                out.append((tuple(tuple(r) for r in rows), tuple(pivots)))
    return out


def subspace_contains(F, sub, v):
    basis, pivots = sub
    return in_span(F, basis, pivots, v)


def subspace_dim(sub):
    return len(sub[0])


def map_preserves(F, A, sub_src, sub_tgt):
    """Does the matrix A map the source subspace into the target one?"""
    basis, _ = sub_src
    for row in basis:
        if not subspace_contains(F, sub_tgt, mat_vec(F, A, row)):
            return False
    return True

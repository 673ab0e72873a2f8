"""Lookup-table arithmetic for the Galois fields GF(q), q <= 9.

Extension fields use fixed irreducible polynomials so that element indices
are stable across runs:

    GF(4): x^2 + x + 1      GF(8): x^3 + x + 1      GF(9): x^2 + 1

Elements are indexed 0..q-1; index 0 is the zero element, index 1 the one.
For GF(p^k) the base-p digits of an index are the coefficients of the
corresponding polynomial, least significant first, so c0 + c1*x + c2*x^2
has index c0 + c1*p + c2*p^2.
"""

from __future__ import annotations

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# Irreducible polynomial coefficients, constant term first, monic leading
# coefficient omitted: x^2+x+1 -> (1, 1), x^3+x+1 -> (1, 1, 0), x^2+1 -> (1, 0).
_IRREDUCIBLE = {4: (2, (1, 1)), 8: (2, (1, 1, 0)), 9: (3, (1, 0))}

_PRIMES = {2: 2, 3: 3, 5: 5, 7: 7}


class FieldTable:
    """GF(q) as total lookup tables over element indices 0..q-1.

    Immutable after construction; all four tables (add, mul, neg, inv) are
    plain nested tuples, so shared concurrent reads are safe.
    """

    def __init__(self, q: int, p: int, add, mul):
        self.q = q
        self.p = p  # characteristic
        self.add = add
        self.mul = mul
        self.neg = tuple(_weak_inverse(add, a, q) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
            else:
                raise ValueError(f"element {a} has no multiplicative inverse")
        self.inv = tuple(inv)
        self._check_axioms()

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by the zero element")
        return self.mul[a][self.inv[b]]

    def _check_axioms(self) -> None:
        q, add, mul = self.q, self.add, self.mul
        rng = range(q)
        for a in rng:
            if add[0][a] != a or add[a][0] != a:
                raise ValueError("0 is not an additive identity")
            if mul[1][a] != a or mul[a][1] != a:
                raise ValueError("1 is not a multiplicative identity")
            if mul[0][a] != 0:
                raise ValueError("0 is not absorbing")
            if add[a][self.neg[a]] != 0:
                raise ValueError("negation table is inconsistent")
        for a in rng:
            for b in rng:
                if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                    raise ValueError("addition or multiplication not commutative")
                for c in rng:
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        raise ValueError("addition not associative")
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise ValueError("multiplication not associative")
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise ValueError("distributivity fails")
        if q % self.p != 0:
            raise ValueError("characteristic does not divide the order")

    def __repr__(self) -> str:
        return f"FieldTable(GF({self.q}))"


def _weak_inverse(add, a, q):
    for b in range(q):
        if add[a][b] == 0:
            return b
    raise ValueError(f"element {a} has no additive inverse")


def _prime_field(p: int) -> FieldTable:
    add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
    mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
    return FieldTable(p, p, add, mul)


def _extension_field(q: int) -> FieldTable:
    p, poly = _IRREDUCIBLE[q]
    k = len(poly)

    def digits(i):
        out = []
        for _ in range(k):
            out.append(i % p)
            i //= p
        return out

    def index(ds):
        i = 0
        for d in reversed(ds):
            i = i * p + d
        return i

    def poly_mul(a, b):
        # schoolbook product then reduction by x^k = -(poly)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
        for deg in range(2 * k - 2, k - 1, -1):
            coef = prod[deg]
            if coef:
                prod[deg] = 0
                for j, cj in enumerate(poly):
                    prod[deg - k + j] = (prod[deg - k + j] - coef * cj) % p
        return prod[:k]

    elems = [digits(i) for i in range(q)]
    add = tuple(
        tuple(index([(x + y) % p for x, y in zip(a, b)]) for b in elems) for a in elems
    )
    mul = tuple(tuple(index(poly_mul(a, b)) for b in elems) for a in elems)
    return FieldTable(q, p, add, mul)


_CACHE: dict[int, FieldTable] = {}


def make_field(q: int) -> FieldTable:
    """Build (and cache) the lookup tables for GF(q), q in {2,3,4,5,7,8,9}."""
    if q not in FIELD_ORDERS:
        raise ValueError(f"unsupported field order {q}; supported: {FIELD_ORDERS}")
    if q not in _CACHE:
        _CACHE[q] = _prime_field(q) if q in _PRIMES else _extension_field(q)
    return _CACHE[q]


def mat_rank(field: FieldTable, matrix, cols=None) -> int:
    """Rank of the selected columns (1-based indices) by Gaussian elimination.

    `matrix` is a list of rows of element indices; `cols=None` selects all.
    """
    if not matrix:
        return 0
    width = len(matrix[0])
    for row in matrix:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for x in row:
            if not 0 <= x < field.q:
                raise ValueError(f"entry {x} out of range for GF({field.q})")
    if cols is None:
        cols = range(1, width + 1)
    cols = sorted(cols)
    for c in cols:
        if not 1 <= c <= width:
            raise ValueError(f"column {c} out of range 1..{width}")
    m = [[row[c - 1] for c in cols] for row in matrix]
    nrows, ncols = len(m), len(cols)
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        scale = field.inv[m[rank][c]]
        m[rank] = [field.mul[scale][x] for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [field.sub(x, field.mul[f][y]) for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank

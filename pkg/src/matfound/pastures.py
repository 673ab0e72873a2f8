"""Finite pastures: a multiplicative unit group with zero, an involution
x -> -x, and a set of three-term null sums replacing addition.

Elements are indexed 0..k with 0 the zero element and 1..k the units;
index 1 is the multiplicative identity.  Null sums are stored as sorted
index triples, closed under permutation (by sorting) and under the
diagonal unit action.

The catalog covers the small fields GF(2)..GF(9), the regular partial
field F1pm, the Krasner hyperfield K, the sign hyperfields S and W, the
hexagonal partial field H (units generated by z with z^3 = -1), and the
four-unit quotient DmodZ2 of the dyadic partial field by z^2.
"""

from __future__ import annotations

import itertools
import logging

from .smallfield import FieldTable, make_field

logger = logging.getLogger(__name__)

HOM_UNIT_CAP = 31  # |P| <= 32 including zero

FACTOR_TYPES = ("U", "D", "H", "F3", "F2", "F1pm", "K")


class FinitePasture:
    __slots__ = ("name", "k", "eps", "mul_table", "null", "inv_table")

    def __init__(self, name, k, eps, mul_table, null, _validate=True):
        self.name = name
        self.k = k
        self.eps = eps
        self.mul_table = mul_table  # (k+1) x (k+1), zero row/col included
        self.null = frozenset(null)
        inv = [0] * (k + 1)
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if mul_table[a][b] == 1:
                    inv[a] = b
                    break
        self.inv_table = tuple(inv)
        if _validate:
            problems = self.validate()
            if problems:
                raise ValueError(f"invalid pasture {name!r}: " + "; ".join(problems))

    # ------------------------------------------------------------ arithmetic
    @property
    def units(self) -> range:
        return range(1, self.k + 1)

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    def neg(self, a: int) -> int:
        return self.mul_table[self.eps][a] if a else 0

    def is_null(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self.null

    def fundamental_pairs(self) -> list[tuple[int, int]]:
        """Ordered unit pairs (u, v) with u + v - 1 null."""
        return [
            (u, v)
            for u in self.units
            for v in self.units
            if self.is_null(u, v, self.eps)
        ]

    # ------------------------------------------------------------ validation
    def validate(self) -> list[str]:
        """Exhaustive axiom check; returns a list of violations (empty = ok)."""
        problems = []
        k, mul, eps = self.k, self.mul_table, self.eps
        units = range(1, k + 1)
        if not 1 <= eps <= k:
            return [f"eps index {eps} is not a unit"]
        for a in range(k + 1):
            if mul[0][a] != 0 or mul[a][0] != 0:
                problems.append("zero is not absorbing")
            if a and (mul[1][a] != a or mul[a][1] != a):
                problems.append(f"1 is not an identity at {a}")
        for a in units:
            if not self.inv_table[a]:
                problems.append(f"unit {a} has no inverse")
            for b in units:
                if not 1 <= mul[a][b] <= k:
                    problems.append(f"product of units {a},{b} is not a unit")
                if mul[a][b] != mul[b][a]:
                    problems.append(f"multiplication not commutative at {a},{b}")
                for c in units:
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        problems.append("multiplication not associative")
        if problems:
            return sorted(set(problems))
        if mul[eps][eps] != 1:
            problems.append("eps squared is not 1")
        if (0, 0, 0) not in self.null:
            problems.append("0+0+0 must be null")
        for t in self.null:
            if any(not 0 <= x <= k for x in t):
                problems.append(f"triple {t} out of range")
                continue
            if tuple(sorted(t)) != t:
                problems.append(f"triple {t} not stored sorted")
            zeros = t.count(0)
            if zeros == 2 and t[2] != 0:
                problems.append(f"a+0+0 null with a = {t[2]} != 0")
            if zeros == 1 and mul[eps][t[1]] != t[2]:
                problems.append(f"0+x+y null with y != -x for {t}")
            for d in units:
                if tuple(sorted(mul[x][d] if x else 0 for x in t)) not in self.null:
                    problems.append(f"null set not closed under scaling of {t}")
        for x in units:
            if (0, min(x, self.neg(x)), max(x, self.neg(x))) not in self.null:
                problems.append(f"missing weak-inverse triple for unit {x}")
        return sorted(set(problems))

    # ------------------------------------------------------------- plumbing
    def to_json(self) -> dict:
        return {
            "units": self.k,
            "eps": self.eps,
            "mul": [list(row[1:]) for row in self.mul_table[1:]],
            "null": sorted(list(t) for t in self.null),
        }

    def __repr__(self) -> str:
        label = self.name or f"{self.k} units"
        return f"FinitePasture({label})"


def from_json(obj: dict) -> FinitePasture:
    k = int(obj["units"])
    mul = _with_zero(
        [[int(x) for x in row] for row in obj["mul"]], k
    )
    null = {tuple(sorted(int(x) for x in t)) for t in obj["null"]}
    return FinitePasture(obj.get("name"), k, int(obj["eps"]), mul, null)


def _with_zero(unit_table, k):
    rows = [tuple([0] * (k + 1))]
    for row in unit_table:
        rows.append(tuple([0] + list(row)))
    return tuple(rows)


# ------------------------------------------------------------- construction
def _close_triples(k, mul, triples):
    """Close a set of sorted triples under the diagonal unit action."""
    out = set(triples)
    frontier = list(out)
    while frontier:
        t = frontier.pop()
        for d in range(2, k + 1):
            s = tuple(sorted(mul[x][d] if x else 0 for x in t))
            if s not in out:
                out.add(s)
                frontier.append(s)
    return out


def _subgroup(k, mul, gens):
    sub = {1}
    frontier = [1]
    gens = set(gens) | {1}
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = mul[a][g]
            if b not in sub:
                sub.add(b)
                frontier.append(b)
    return sub


def build_pasture(name, k, eps, mul, triples, *, warn_passes=False) -> FinitePasture:
    """Saturate the null set and collapse units to a fixpoint, then validate.

    `mul` is a (k+1)x(k+1) table including the zero row/column; `triples`
    may be unsorted and unsaturated.  Collapsing merges every unit a with 1
    whenever 0 + a + (-1) becomes null, as in quotient formation.
    """
    triples = {tuple(sorted(t)) for t in triples}
    triples.add((0, 0, 0))
    collapse_rounds = 0
    while True:
        triples = _close_triples(k, mul, triples)
        for t in triples:
            if t.count(0) == 2 and t[2] != 0:
                raise ValueError(f"null sum {t} forces a unit to equal zero")
        witnesses = set()
        for t in triples:
            if t.count(0) == 1:
                _, x, y = t
                # 0 + x + y null should mean y = -x; otherwise eps*x^-1*y
                # collapses to 1.
                inv_x = next(b for b in range(1, k + 1) if mul[x][b] == 1)
                witnesses.add(mul[mul[eps][inv_x]][y])
        witnesses.discard(1)
        if not witnesses:
            break
        collapse_rounds += 1
        sub = _subgroup(k, mul, witnesses)
        orbit_rep = {}
        for a in range(1, k + 1):
            orbit_rep[a] = min(mul[a][h] for h in sub)
        reps = sorted(set(orbit_rep.values()), key=lambda a: (a != orbit_rep[1], a))
        index = {rep: i + 1 for i, rep in enumerate(reps)}
        remap = [0] + [index[orbit_rep[a]] for a in range(1, k + 1)]
        new_k = len(reps)
        new_mul = [[0] * (new_k + 1) for _ in range(new_k + 1)]
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                new_mul[remap[a]][remap[b]] = remap[mul[a][b]]
        mul = tuple(tuple(row) for row in new_mul)
        triples = {tuple(sorted(remap[x] for x in t)) for t in triples}
        eps = remap[eps]
        k = new_k
    if warn_passes and collapse_rounds > 1:
        logger.warning("quotient needed %d collapse rounds", collapse_rounds)
    return FinitePasture(name, k, eps, mul, triples)


# ------------------------------------------------------------------ catalog
def pasture_of_field(field: FieldTable) -> FinitePasture:
    """A field as a pasture, preserving the field's element indices."""
    k = field.q - 1
    mul = tuple(tuple(field.mul[a][b] for b in range(k + 1)) for a in range(k + 1))
    null = {
        tuple(sorted((a, b, c)))
        for a in range(k + 1)
        for b in range(k + 1)
        for c in range(k + 1)
        if field.add[field.add[a][b]][c] == 0
    }
    return FinitePasture(f"F{field.q}", k, field.neg[1], mul, null)


def _cyclic_mul(k):
    # units 1..k as powers z^0..z^(k-1)
    return _with_zero(
        [[((a + b) % k) + 1 for b in range(k)] for a in range(k)], k
    )


_C2 = _with_zero([[1, 2], [2, 1]], 2)
_TRIVIAL = _with_zero([[1]], 1)
# Klein four group: 1, -1, z, -z
_C2C2 = _with_zero([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]], 4)

PASTURE_NAMES = (
    "F1pm", "F2", "F3", "F4", "F5", "F7", "F8", "F9", "K", "S", "W", "H", "DmodZ2",
)

_CATALOG_CACHE: dict[str, FinitePasture] = {}


def named_pasture(name: str) -> FinitePasture:
    if name in _CATALOG_CACHE:
        return _CATALOG_CACHE[name]
    if name in ("F2", "F3", "F4", "F5", "F7", "F8", "F9"):
        p = pasture_of_field(make_field(int(name[1:])))
    elif name == "F1pm":
        p = FinitePasture("F1pm", 2, 2, _C2, {(0, 0, 0), (0, 1, 2)})
    elif name == "K":
        p = FinitePasture("K", 1, 1, _TRIVIAL, {(0, 0, 0), (0, 1, 1), (1, 1, 1)})
    elif name == "S":
        p = FinitePasture(
            "S", 2, 2, _C2, {(0, 0, 0), (0, 1, 2), (1, 1, 2), (1, 2, 2)}
        )
    elif name == "W":
        p = FinitePasture(
            "W", 2, 2, _C2,
            {(0, 0, 0), (0, 1, 2), (1, 1, 2), (1, 2, 2), (1, 1, 1), (2, 2, 2)},
        )
    elif name == "H":
        # units z^0..z^5 at indices 1..6, eps = z^3; null generated by
        # z - z^2 - 1 (scalings give the two unit triples below)
        p = FinitePasture(
            "H", 6, 4, _cyclic_mul(6),
            {(0, 0, 0), (0, 1, 4), (0, 2, 5), (0, 3, 6), (2, 4, 6), (1, 3, 5)},
        )
    elif name == "DmodZ2":
        # dyadic partial field modulo z^2: units 1, -1, z, -z with z + z = 1
        p = FinitePasture(
            "DmodZ2", 4, 2, _C2C2,
            {(0, 0, 0), (0, 1, 2), (0, 3, 4), (2, 3, 3), (1, 4, 4), (1, 1, 4),
             (2, 2, 3)},
        )
    else:
        raise ValueError(f"unknown pasture {name!r}")
    _CATALOG_CACHE[name] = p
    return p


# ------------------------------------------------------------ constructions
def product(p1: FinitePasture, p2: FinitePasture) -> FinitePasture:
    """Categorical product: unit pairs with componentwise null sums."""
    k1, k2 = p1.k, p2.k
    k = k1 * k2

    def idx(a1, a2):
        return (a1 - 1) * k2 + a2

    mul = [[0] * (k + 1) for _ in range(k + 1)]
    for a1 in p1.units:
        for a2 in p2.units:
            for b1 in p1.units:
                for b2 in p2.units:
                    mul[idx(a1, a2)][idx(b1, b2)] = idx(p1.mul(a1, b1), p2.mul(a2, b2))
    mul = tuple(tuple(row) for row in mul)

    def split(a):
        if a == 0:
            return 0, 0
        return (a - 1) // k2 + 1, (a - 1) % k2 + 1

    null = set()
    for t in itertools.combinations_with_replacement(range(k + 1), 3):
        comp = [split(x) for x in t]
        if p1.is_null(*(c[0] for c in comp)) and p2.is_null(*(c[1] for c in comp)):
            null.add(t)
    name = None
    if p1.name and p2.name:
        name = f"{p1.name}x{p2.name}"
    return FinitePasture(name, k, idx(p1.eps, p2.eps), mul, null)


def tensor(p1: FinitePasture, p2: FinitePasture) -> FinitePasture:
    """Categorical coproduct: pairs modulo (-a, -b) ~ (a, b), null sums
    generated by both factors."""
    k2 = p2.k
    pairs = [(a, b) for a in p1.units for b in p2.units]
    rep = {}
    for a, b in pairs:
        twin = (p1.neg(a), p2.neg(b))
        rep[(a, b)] = min((a, b), twin)
    classes = sorted(set(rep.values()))
    classes.sort(key=lambda c: (c != rep[(1, 1)], c))
    index = {c: i + 1 for i, c in enumerate(classes)}
    k = len(classes)

    def idx(a, b):
        return index[rep[(a, b)]]

    mul = [[0] * (k + 1) for _ in range(k + 1)]
    for (a1, b1), i in ((c, index[c]) for c in classes):
        for (a2, b2), j in ((c, index[c]) for c in classes):
            mul[i][j] = idx(p1.mul(a1, a2), p2.mul(b1, b2))
    mul = tuple(tuple(row) for row in mul)

    triples = set()
    for (a, b, c) in p1.null:
        for y in p2.units:
            triples.add(
                tuple(sorted(idx(x, y) if x else 0 for x in (a, b, c)))
            )
    for (a, b, c) in p2.null:
        for x in p1.units:
            triples.add(
                tuple(sorted(idx(x, y) if y else 0 for y in (a, b, c)))
            )
    name = None
    if p1.name and p2.name:
        name = f"{p1.name}(x){p2.name}"
    return build_pasture(name, k, idx(p1.eps, 1), mul, triples)


def quotient(p: FinitePasture, relations) -> FinitePasture:
    """Quotient by extra null sums (each with at least two nonzero entries).

    Saturation and unit collapse are iterated to a fixpoint; a warning is
    logged when more than one pass is needed.
    """
    triples = set(p.null)
    for t in relations:
        t = tuple(sorted(t))
        if len(t) != 3:
            raise ValueError(f"relation {t} is not a triple")
        if sum(1 for x in t if x) < 2:
            raise ValueError(f"relation {t} needs at least two nonzero entries")
        if any(not 0 <= x <= p.k for x in t):
            raise ValueError(f"relation {t} out of range")
        triples.add(t)
    return build_pasture(None, p.k, p.eps, p.mul_table, triples, warn_passes=True)


# ----------------------------------------------------------------- morphisms
def hom_enumerate(p: FinitePasture, q: FinitePasture) -> list[dict[int, int]]:
    """All pasture morphisms P -> Q as unit maps, via generator images."""
    if p.k > HOM_UNIT_CAP:
        raise ValueError(f"hom enumeration capped at {HOM_UNIT_CAP} units")

    homs = []

    def close(partial):
        # multiplicative closure with consistency checking
        work = dict(partial)
        changed = True
        while changed:
            changed = False
            items = list(work.items())
            for (a, fa) in items:
                for (b, fb) in items:
                    ab = p.mul(a, b)
                    fab = q.mul(fa, fb)
                    got = work.get(ab)
                    if got is None:
                        work[ab] = fab
                        changed = True
                    elif got != fab:
                        return None
        return work

    def extend(partial):
        missing = next((u for u in p.units if u not in partial), None)
        if missing is None:
            if partial[p.eps] != q.eps:
                return
            for (a, b, c) in p.null:
                img = tuple(sorted(partial[x] if x else 0 for x in (a, b, c)))
                if img not in q.null:
                    return
            homs.append(dict(partial))
            return
        for img in q.units:
            nxt = dict(partial)
            nxt[missing] = img
            closed = close(nxt)
            if closed is not None:
                extend(closed)

    extend({1: 1})
    return homs


def is_isomorphic(p: FinitePasture, q: FinitePasture) -> bool:
    """True iff some morphism P -> Q is bijective with a morphism inverse."""
    if p.k != q.k or len(p.null) != len(q.null):
        return False
    for hom in hom_enumerate(p, q):
        if len(set(hom.values())) != p.k:
            continue
        inverse = {v: u for u, v in hom.items()}
        inverse[0] = 0
        if all(
            tuple(sorted(inverse[x] for x in t)) in p.null for t in q.null
        ):
            return True
    return False


# ------------------------------------------------- factor-type morphism tests
def hom_count_factor(tag: str, p: FinitePasture) -> int:
    """Number of morphisms from a decomposition factor into P.

    U counts fundamental pairs; D counts units with u + u = 1; H counts
    units with u^3 = -1 and u - u^2 = 1; F3, F2, K and F1pm are 0/1 tests.
    """
    if tag == "U":
        return len(p.fundamental_pairs())
    if tag == "D":
        return sum(1 for u in p.units if p.is_null(u, u, p.eps))
    if tag == "H":
        count = 0
        for u in p.units:
            if p.mul(u, p.mul(u, u)) != p.eps:
                continue
            if p.is_null(u, p.neg(p.mul(u, u)), p.eps):
                count += 1
        return count
    if tag == "F3":
        return 1 if p.is_null(1, 1, 1) else 0
    if tag == "F2":
        return 1 if p.eps == 1 else 0
    if tag == "F1pm":
        return 1
    if tag == "K":
        return 1 if p.eps == 1 and p.is_null(1, 1, 1) else 0
    raise ValueError(f"unknown factor type {tag!r}")


class InfiniteTarget:
    """A representability target that is never materialized; morphism
    existence from each factor type is table data."""

    def __init__(self, name: str, admits: dict[str, bool]):
        self.name = name
        self.admits = admits

    def __repr__(self) -> str:
        return f"InfiniteTarget({self.name})"


def _inf(name, u, d, h):
    admits = {"U": u, "D": d, "H": h, "F3": False, "F2": False,
              "F1pm": True, "K": False}
    return InfiniteTarget(name, admits)


INFINITE_TARGETS = {
    "U": _inf("U", True, False, False),
    "D": _inf("D", True, True, False),
    "Q": _inf("Q", True, True, False),
    "R": _inf("R", True, True, False),
    "C": _inf("C", True, True, True),
    "P": _inf("P", True, True, True),
}
INFINITE_TARGETS["PhaseP"] = INFINITE_TARGETS["P"]


def admits_morphism(tag: str, target) -> bool:
    """Does a morphism exist from the factor type into the target?"""
    if tag not in FACTOR_TYPES:
        raise ValueError(f"unknown factor type {tag!r}")
    if isinstance(target, InfiniteTarget):
        return target.admits[tag]
    return hom_count_factor(tag, target) > 0


def resolve_target(name: str):
    """Look up a representability target by name (finite catalog or
    infinite table entry)."""
    if name in PASTURE_NAMES:
        return named_pasture(name)
    if name in INFINITE_TARGETS:
        return INFINITE_TARGETS[name]
    raise ValueError(f"unknown target {name!r}")

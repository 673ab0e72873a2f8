"""Cross ratios of basis quadruples, hexagon bookkeeping, and sign-valued
Grassmann-Pluecker functions.

For an embedded rank-2 minor on residual a < b < c < d (a "hexagon"), the
six cross-ratio values are pinned to symbolic slots

    x = <a b | c d>      y = <a c | b d>

and the remaining four slots are 1/y, -x/y, -y/x, 1/x.  The slot layout is
a hexagon whose label-preserving symmetry group is S3, generated by

    rho:   x -> 1/y, y -> -x/y        (order 3)
    sigma: x -> y,   y -> x           (order 2)

acting simply transitively on the six slots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .matroids import EmbeddedMinorSite, Matroid, elems_of, mask_of
from .pastures import FinitePasture, named_pasture, pasture_of_field
from .smallfield import FieldTable

SLOTS = ("x", "y", "1/y", "-x/y", "-y/x", "1/x")

# canonical quad ordering for each slot, as positions into sorted residual
_SLOT_POSITIONS = (
    (0, 1, 2, 3),  # x
    (0, 2, 1, 3),  # y
    (0, 2, 3, 1),  # 1/y
    (0, 3, 2, 1),  # -x/y
    (0, 3, 1, 2),  # -y/x
    (0, 1, 3, 2),  # 1/x
)
_POSITIONS_TO_SLOT = {pos: i for i, pos in enumerate(_SLOT_POSITIONS)}

# row/column swaps that leave a cross ratio unchanged (Klein four-group on
# the argument positions)
_KLEIN = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


class HexSym:
    """A label-preserving symmetry of the slot hexagon (element of S3)."""

    __slots__ = ("perm",)

    def __init__(self, perm):
        self.perm = tuple(perm)

    def __call__(self, slot: int) -> int:
        return self.perm[slot]

    def compose(self, other: "HexSym") -> "HexSym":
        """self after other."""
        return _SYM_INTERN[tuple(self.perm[p] for p in other.perm)]

    def inverse(self) -> "HexSym":
        inv = [0] * 6
        for i, p in enumerate(self.perm):
            inv[p] = i
        return _SYM_INTERN[tuple(inv)]

    def order(self) -> int:
        n, g = 1, self
        while g.perm != _ID:
            g = g.compose(self)
            n += 1
        return n

    def __eq__(self, other) -> bool:
        return isinstance(other, HexSym) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __repr__(self) -> str:
        return f"HexSym{self.perm}"


_ID = (0, 1, 2, 3, 4, 5)
RHO = HexSym((2, 3, 4, 5, 0, 1))
SIGMA = HexSym((1, 0, 5, 4, 3, 2))


def _generate_group():
    group = {_ID: HexSym(_ID)}
    frontier = [HexSym(_ID)]
    while frontier:
        g = frontier.pop()
        for gen in (RHO, SIGMA):
            perm = tuple(gen.perm[p] for p in g.perm)
            if perm not in group:
                h = HexSym(perm)
                group[perm] = h
                frontier.append(h)
    return group


_SYM_INTERN = _generate_group()
HEX_SYMS = tuple(sorted(_SYM_INTERN.values(), key=lambda g: g.perm))
IDENTITY = _SYM_INTERN[_ID]

_ANCHOR = {}
for _g in HEX_SYMS:
    for _p in range(6):
        _ANCHOR[(_p, _g(_p))] = _g


def hexsym_from_anchor(p: int, q: int) -> HexSym:
    """The unique label-preserving symmetry mapping slot p to slot q."""
    return _ANCHOR[(p, q)]


@dataclass(frozen=True)
class Hexagon:
    site: EmbeddedMinorSite

    @property
    def residual(self) -> tuple[int, int, int, int]:
        return self.site.residual

    @property
    def contracted(self) -> tuple[int, ...]:
        return self.site.contracted

    def slot_quad(self, slot: int) -> tuple[int, int, int, int]:
        """The canonical argument ordering whose cross ratio sits in `slot`."""
        res = self.residual
        return tuple(res[p] for p in _SLOT_POSITIONS[slot])

    def slot_of(self, quad) -> int:
        """Slot of the cross ratio <q0 q1 | q2 q3> on this hexagon."""
        quad = tuple(quad)
        if sorted(quad) != sorted(self.residual):
            raise ValueError(f"{quad} is not an ordering of {self.residual}")
        rank = {e: i for i, e in enumerate(self.residual)}
        for move in _KLEIN:
            arranged = tuple(quad[p] for p in move)
            if arranged[0] == self.residual[0]:
                return _POSITIONS_TO_SLOT[tuple(rank[e] for e in arranged)]
        raise AssertionError("Klein normalization failed")


def build_hexagons(m: Matroid) -> list[Hexagon]:
    """One hexagon per embedded rank-2 uniform minor on four elements."""
    return [Hexagon(site) for site in m.embedded_u24_sites()]


# ---------------------------------------------------------------- omega set
@dataclass(frozen=True)
class OmegaTuple:
    contracted: tuple[int, ...]
    quad: tuple[int, int, int, int]
    status: str  # not_in_omega | degenerate | nondegenerate


def omega_status(m: Matroid, contracted, quad) -> OmegaTuple:
    j = tuple(sorted(contracted))
    quad = tuple(quad)
    if len(j) != m.r - 2:
        raise ValueError(f"contracted set must have {m.r - 2} elements")
    if len(set(quad)) != 4 or set(quad) & set(j):
        raise ValueError("quad must be four distinct elements outside the contracted set")
    jm = mask_of(j)

    def pair_is_basis(a, b):
        return jm | (1 << (a - 1)) | (1 << (b - 1)) in m.bases

    e1, e2, e3, e4 = quad
    cross = (
        pair_is_basis(e1, e3)
        and pair_is_basis(e2, e4)
        and pair_is_basis(e1, e4)
        and pair_is_basis(e2, e3)
    )
    if not cross:
        return OmegaTuple(j, quad, "not_in_omega")
    if pair_is_basis(e1, e2) and pair_is_basis(e3, e4):
        return OmegaTuple(j, quad, "nondegenerate")
    return OmegaTuple(j, quad, "degenerate")


# ---------------------------------------------------- GP functions and signs
def sort_sign(seq) -> int:
    """Sign of the permutation sorting a tuple of distinct ints."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class GPFunction:
    """A pasture-valued Grassmann-Pluecker function, stored on sorted bases.

    Reordering signs are recovered from permutation parity on demand.
    """

    def __init__(self, matroid: Matroid, pasture: FinitePasture, values: dict):
        self.matroid = matroid
        self.pasture = pasture
        want = {elems_of(b) for b in matroid.bases}
        got = {tuple(k) for k in values}
        if want != got:
            raise ValueError("values must be given on exactly the sorted bases")
        for v in values.values():
            if not 1 <= v <= pasture.k:
                raise ValueError(f"value {v} is not a unit")
        self.values = {tuple(k): v for k, v in values.items()}

    def delta(self, args) -> int:
        """Signed value on an ordered tuple; 0 when the set is not a basis."""
        key = tuple(sorted(args))
        v = self.values.get(key, 0)
        if not v:
            return 0
        return v if sort_sign(args) > 0 else self.pasture.neg(v)


class Chirotope:
    """A sign-valued GP function: an orientation candidate for a matroid."""

    def __init__(self, matroid: Matroid, signs: dict):
        want = {elems_of(b) for b in matroid.bases}
        got = {tuple(k) for k in signs}
        if want != got:
            raise ValueError("signs must be given on exactly the sorted bases")
        if any(s not in (1, -1) for s in signs.values()):
            raise ValueError("signs must be +1 or -1")
        self.matroid = matroid
        self.signs = {tuple(k): s for k, s in signs.items()}

    def gp(self) -> GPFunction:
        s = named_pasture("S")
        return GPFunction(
            self.matroid,
            s,
            {k: (1 if v > 0 else s.eps) for k, v in self.signs.items()},
        )

    def to_json(self) -> dict:
        return {
            "matroid": self.matroid.to_json(),
            "signs": {
                ",".join(map(str, k)): v for k, v in sorted(self.signs.items())
            },
        }

    @classmethod
    def all_positive(cls, matroid: Matroid) -> "Chirotope":
        return cls(matroid, {elems_of(b): 1 for b in matroid.bases})

    @classmethod
    def from_json(cls, obj: dict, matroid: Matroid | None = None) -> "Chirotope":
        from . import matroids

        m = matroid if matroid is not None else matroids.from_json(obj["matroid"])
        signs = {
            tuple(int(x) for x in key.split(",")): int(v)
            for key, v in obj["signs"].items()
        }
        return cls(m, signs)


def _field_det(field: FieldTable, matrix, cols) -> int:
    m = [[row[c - 1] for c in cols] for row in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = field.neg[det]
        det = field.mul[det][m[c][c]]
        inv = field.inv[m[c][c]]
        for r in range(c + 1, n):
            if m[r][c]:
                f = field.mul[m[r][c]][inv]
                m[r] = [field.sub(x, field.mul[f][y]) for x, y in zip(m[r], m[c])]
    return det


def gp_from_matrix(field: FieldTable, matrix) -> GPFunction:
    """The determinant GP function of a matrix, over the field as a pasture."""
    from . import matroids

    m = matroids.from_matrix(field, matrix)
    values = {}
    for b in m.bases:
        cols = elems_of(b)
        values[cols] = _field_det(field, matrix, cols)
    return GPFunction(m, pasture_of_field(field), values)


def eval_cross_ratio(rep, contracted, quad):
    """Cross ratio <q0 q1 | q2 q3> with the given contracted set.

    Degenerate tuples return the unit 1.  For a Chirotope the result is
    +1 or -1; for a GPFunction it is a unit index of its pasture.
    """
    chirotope = isinstance(rep, Chirotope)
    gp = rep.gp() if chirotope else rep
    m = gp.matroid
    status = omega_status(m, contracted, quad)
    if status.status == "not_in_omega":
        raise ValueError(f"({contracted}; {quad}) is not in the omega set")
    p = gp.pasture
    if status.status == "degenerate":
        return 1
    j = status.contracted
    e1, e2, e3, e4 = quad
    num = p.mul(gp.delta(j + (e1, e3)), gp.delta(j + (e2, e4)))
    den = p.mul(gp.delta(j + (e1, e4)), gp.delta(j + (e2, e3)))
    value = p.mul(num, p.inv(den))
    if chirotope:
        return 1 if value == 1 else -1
    return value


def gp_violations(gp: GPFunction) -> list[dict]:
    """All failures of the 3-term Pluecker null condition, with witnesses."""
    m, p = gp.matroid, gp.pasture
    out = []
    if m.r < 2:
        return out
    for j in itertools.combinations(range(1, m.n + 1), m.r - 2):
        rest = [e for e in range(1, m.n + 1) if e not in j]
        for quad in itertools.combinations(rest, 4):
            e1, e2, e3, e4 = quad
            t1 = p.mul(gp.delta(j + (e1, e2)), gp.delta(j + (e3, e4)))
            t2 = p.mul(gp.delta(j + (e1, e3)), gp.delta(j + (e2, e4)))
            t3 = p.mul(gp.delta(j + (e1, e4)), gp.delta(j + (e2, e3)))
            if not p.is_null(t1, p.neg(t2), t3):
                out.append({"contracted": list(j), "quad": list(quad),
                            "terms": [t1, t2, t3]})
    return out


def validate_chirotope(c: Chirotope) -> list[dict]:
    """Empty list when the sign pattern satisfies all Pluecker conditions."""
    return gp_violations(c.gp())

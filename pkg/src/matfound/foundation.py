"""The decomposition pipeline for matroids without large uniform minors.

Every embedded rank-2 uniform minor on four elements contributes a hexagon
of cross ratios.  Degenerations of the three-cross-ratio product identities
on five-element structures (sources R3 and R4) and parallel-element
identities (source R5) equate cross ratios across hexagons.  A union-find
with symmetry-group edge labels merges hexagons; cycles generate a
monodromy subgroup of the hexagon symmetry group S3, whose order selects
the component's factor:

    order 1 -> U        order 2 -> D        order 3 -> H
    order 6 -> contributes the relation 1+1+1=0 to the head

The head factor is F1pm, F2 (Fano or dual-Fano minor present), F3
(an order-6 component), or K (both).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .crossratio import (
    Chirotope,
    Hexagon,
    HexSym,
    IDENTITY,
    build_hexagons,
    eval_cross_ratio,
    hexsym_from_anchor,
    validate_chirotope,
)
from .errors import GuardError, IntegrityError
from .matroids import Matroid, fano_minor_presence, mask_of
from .pastures import FinitePasture, admits_morphism, hom_count_factor

_ALLOWED_ORDERS = {1, 2, 3, 6}

# component sign pair -> lifted pair over the dyadic partial field, where z
# denotes the element with z + z = 1 (i.e. one half)
_LIFT_TABLE = {(1, 1): ("z", "z"), (1, -1): ("z^-1", "-1"), (-1, 1): ("-1", "z^-1")}
_LIFT_SIGN = {"z": 1, "z^-1": 1, "-1": -1}


@dataclass(frozen=True)
class RelationEdge:
    hex_a: int
    slot_a: int
    hex_b: int
    slot_b: int
    source: str  # R3 | R4 | R5
    witness: tuple
    phi: HexSym  # frame map of hex_a into frame of hex_b


@dataclass
class Component:
    hexagons: list[int]
    order: int
    monodromy: list[HexSym]
    root: int


@dataclass
class FoundationDecomposition:
    head: str  # F1pm | F2 | F3 | K
    factors: dict[str, int]  # counts for U, D, H
    components: list[Component]
    fano: str

    def key(self):
        return (self.head, self.factors["U"], self.factors["D"], self.factors["H"])

    def factor_tags(self) -> list[str]:
        tags = [self.head]
        for tag in ("U", "D", "H"):
            tags.extend([tag] * self.factors[tag])
        return tags


@dataclass(frozen=True)
class RepresentationClass:
    id: str
    field_representable: bool


@dataclass
class DyadicLift:
    components: list[dict]

    def sign_pairs(self) -> list[tuple[int, int]]:
        """Push the lift through z -> 1; recovers the input cross-ratio signs."""
        return [
            (_LIFT_SIGN[c["lift"][0]], _LIFT_SIGN[c["lift"][1]])
            for c in self.components
        ]


@dataclass(frozen=True)
class PositiveOrientationReport:
    r: int
    near_regular: bool
    lifts_to_U: int


# ------------------------------------------------------------------ guards
def guard(m: Matroid) -> None:
    if m.has_large_uniform_minor():
        raise GuardError("large_uniform_minor")


# ------------------------------------------------------------- harvesting
def harvest_relations(m: Matroid, hexagons: list[Hexagon] | None = None):
    """All cross-ratio identifications from degenerate five-element product
    identities (R3 rank-2 side, R4 rank-3 side) and parallel pairs (R5)."""
    guard(m)
    if hexagons is None:
        hexagons = build_hexagons(m)
    index = {
        (mask_of(h.contracted), mask_of(h.residual)): i for i, h in enumerate(hexagons)
    }
    found: dict[tuple, tuple] = {}  # (hexA, hexB, phi) -> (source, witness)

    def emit(source, ja, quad_a, jb, quad_b, witness):
        ha = index[(mask_of(ja), mask_of(sorted(quad_a)))]
        hb = index[(mask_of(jb), mask_of(sorted(quad_b)))]
        slot_a = hexagons[ha].slot_of(quad_a)
        slot_b = hexagons[hb].slot_of(quad_b)
        phi = hexsym_from_anchor(slot_a, slot_b)
        if ha > hb:
            ha, hb = hb, ha
            phi = phi.inverse()
        key = (ha, hb, phi)
        if key not in found:
            found[key] = (source, witness)

    _harvest_r3(m, emit)
    _harvest_r4(m, emit)
    _harvest_r5(m, index, emit)
    # each identification equates all six slot pairs; emit one edge per pair
    edges = []
    for (ha, hb, phi), (source, witness) in sorted(
        found.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].perm)
    ):
        for slot in range(6):
            edges.append(
                RelationEdge(ha, slot, hb, phi(slot), source, witness, phi)
            )
    return edges


def _harvest_r3(m: Matroid, emit) -> None:
    if m.r < 2 or m.n - (m.r - 2) < 5:
        return
    for j in itertools.combinations(range(1, m.n + 1), m.r - 2):
        jm = mask_of(j)
        verts, adj = m.pair_graph(jm)
        for p, q in itertools.combinations(verts, 2):
            if not adj[p] & (1 << (q - 1)):
                continue
            common = adj[p] & adj[q]
            if bin(common).count("1") < 3:
                continue
            cvs = [v for v in verts if common & (1 << (v - 1))]
            for a, b, c in itertools.combinations(cvs, 3):
                inner = (
                    (a, b, bool(adj[a] & (1 << (b - 1)))),
                    (a, c, bool(adj[a] & (1 << (c - 1)))),
                    (b, c, bool(adj[b] & (1 << (c - 1)))),
                )
                live = [t for t in inner if t[2]]
                if len(live) == 3:
                    raise IntegrityError(
                        "R3 instance with no degenerate member; "
                        "large uniform minor guard should have fired"
                    )
                if len(live) == 1:
                    raise IntegrityError(
                        "R3 instance forces a nondegenerate cross ratio to 1"
                    )
                if len(live) != 2:
                    continue
                (u, v) = next((x, y) for x, y, ok in inner if not ok)
                w = next(e for e in (a, b, c) if e not in (u, v))
                emit("R3", j, (p, q, w, u), j, (p, q, w, v),
                     ("R3", j, (p, q), (u, v, w)))


def _harvest_r4(m: Matroid, emit) -> None:
    if m.r < 3 or m.n - (m.r - 3) < 5:
        return
    for j in itertools.combinations(range(1, m.n + 1), m.r - 3):
        jm = mask_of(j)
        verts = [e for e in range(1, m.n + 1) if e not in j]
        graphs = {}
        for t in verts:
            _, adj = m.pair_graph(jm | (1 << (t - 1)))
            graphs[t] = adj
        for p, q in itertools.combinations(verts, 2):
            rest = [v for v in verts if v not in (p, q)]
            inter = {
                v: graphs[p].get(v, 0) & graphs[q].get(v, 0) for v in rest
            }
            pq_bit = 1 << (q - 1)
            for a, b in itertools.combinations(rest, 2):
                if not inter[a] & (1 << (b - 1)):
                    continue
                both = inter[a] & inter[b]
                for c in rest:
                    if c <= b or not both & (1 << (c - 1)):
                        continue
                    if jm | mask_of((a, b, c)) not in m.bases:
                        continue  # inner triple dependent: all members degenerate
                    s = {k: bool(graphs[k][p] & pq_bit) for k in (a, b, c)}
                    live = [k for k in (a, b, c) if s[k]]
                    if len(live) == 3:
                        raise IntegrityError(
                            "R4 instance with no degenerate member; "
                            "large uniform minor guard should have fired"
                        )
                    if len(live) == 1:
                        raise IntegrityError(
                            "R4 instance forces a nondegenerate cross ratio to 1"
                        )
                    if len(live) != 2:
                        continue
                    k0 = next(k for k in (a, b, c) if not s[k])
                    k1, k2 = live
                    emit("R4", j + (k2,), (p, q, k0, k1),
                         j + (k1,), (p, q, k0, k2),
                         ("R4", j, (p, q), (k0, k1, k2)))


def _harvest_r5(m: Matroid, index, emit) -> None:
    if m.r < 3:
        return
    by_contract: dict[int, list[int]] = {}
    for (jmask, qmask) in index:
        by_contract.setdefault(jmask, []).append(qmask)
    for j in itertools.combinations(range(1, m.n + 1), m.r - 3):
        jm = mask_of(j)
        jsize = m.r - 3
        groups: dict[tuple, list[int]] = {}
        for g in range(1, m.n + 1):
            gb = 1 << (g - 1)
            if jm & gb:
                continue
            if m.rank(jm | gb) != jsize + 1:
                continue
            groups.setdefault(m.closure((*j, g)), []).append(g)
        for members in groups.values():
            for g5, g6 in itertools.combinations(members, 2):
                quads_a = by_contract.get(jm | (1 << (g5 - 1)), ())
                quads_b = set(by_contract.get(jm | (1 << (g6 - 1)), ()))
                avoid = (1 << (g5 - 1)) | (1 << (g6 - 1))
                for qmask in quads_a:
                    if qmask & avoid or qmask not in quads_b:
                        continue
                    quad = tuple(
                        e for e in range(1, m.n + 1) if qmask & (1 << (e - 1))
                    )
                    emit("R5", j + (g5,), quad, j + (g6,), quad,
                         ("R5", j, (g5, g6), quad))


# ---------------------------------------------------------------- monodromy
class _UnionFind:
    """Union-find whose nodes carry a frame map to their parent's frame."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.offset = [IDENTITY] * n  # frame(i) -> frame(parent(i))

    def find(self, i: int) -> tuple[int, HexSym]:
        if self.parent[i] == i:
            return i, IDENTITY
        root, up = self.find(self.parent[i])
        combined = up.compose(self.offset[i])
        self.parent[i] = root
        self.offset[i] = combined
        return root, combined


def _merge(num_hexagons: int, edges):
    """Process edges; returns the union-find and raw cycle discrepancies."""
    uf = _UnionFind(num_hexagons)
    raised: list[tuple[int, HexSym]] = []
    for e in edges:
        ra, fa = uf.find(e.hex_a)
        rb, fb = uf.find(e.hex_b)
        g = fb.compose(e.phi.compose(fa.inverse()))
        if ra == rb:
            if g is not IDENTITY:
                raised.append((ra, g))
        else:
            uf.parent[ra] = rb
            uf.offset[ra] = g
    return uf, raised


def monodromy_components(
    num_hexagons: int, edges, seed: int | None = None
) -> list[Component]:
    """Merge hexagons along edges; cycle discrepancies generate each
    component's monodromy subgroup (an order 1, 2, 3 or 6 subgroup of S3)."""
    edges = list(edges)
    if seed is not None:
        random.Random(seed).shuffle(edges)
    comps, _ = _components_with_frames(num_hexagons, edges)
    return comps


def _components_with_frames(num_hexagons: int, edges):
    uf, raised = _merge(num_hexagons, edges)
    groups: dict[int, list[int]] = {}
    gens: dict[int, set[HexSym]] = {}
    for i in range(num_hexagons):
        root, _ = uf.find(i)
        groups.setdefault(root, []).append(i)
        gens.setdefault(root, set())
    for node, g in raised:
        root, f = uf.find(node)
        gens[root].add(f.compose(g.compose(f.inverse())))
    out = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        subgroup = {IDENTITY}
        frontier = list(gens[root])
        while frontier:
            g = frontier.pop()
            for h in list(subgroup):
                for prod in (g.compose(h), h.compose(g)):
                    if prod not in subgroup:
                        subgroup.add(prod)
                        frontier.append(prod)
        order = len(subgroup)
        if order not in _ALLOWED_ORDERS:
            raise IntegrityError(f"monodromy subgroup of order {order}")
        out.append(
            Component(
                hexagons=sorted(groups[root]),
                order=order,
                monodromy=sorted(gens[root], key=lambda g: g.perm),
                root=root,
            )
        )
    return out, uf


# ------------------------------------------------------------ decomposition
def foundation(m: Matroid, seed: int | None = None) -> FoundationDecomposition:
    """Tensor decomposition of the cross-ratio structure: head factor plus
    a multiset over {U, D, H}."""
    guard(m)
    hexagons = build_hexagons(m)
    edges = harvest_relations(m, hexagons)
    comps = monodromy_components(len(hexagons), edges, seed=seed)
    factors = {"U": 0, "D": 0, "H": 0}
    has_f3 = False
    for comp in comps:
        if comp.order == 1:
            factors["U"] += 1
        elif comp.order == 2:
            factors["D"] += 1
        elif comp.order == 3:
            factors["H"] += 1
        else:
            has_f3 = True
    fano = fano_minor_presence(m)
    has_fano = fano != "none"
    if has_fano and has_f3:
        head = "K"
    elif has_fano:
        head = "F2"
    elif has_f3:
        head = "F3"
    else:
        head = "F1pm"
    return FoundationDecomposition(head, factors, comps, fano)


_CLASS_FIELD = {
    "C1": True, "C2": True, "C3": True, "C4": True, "C5": True, "C6": True,
    "C7": True, "C8": True, "C9": False, "C10": True, "C11": False, "C12": False,
}


def classify_decomposition(dec: FoundationDecomposition) -> RepresentationClass:
    d = dec.factors["D"] > 0
    h = dec.factors["H"] > 0
    u = dec.factors["U"] > 0
    if dec.head == "F3":
        cid = "C6"
    elif dec.head == "K":
        cid = "C12"
    elif dec.head == "F1pm":
        cid = "C5" if d and h else "C3" if d else "C4" if h else "C2" if u else "C1"
    else:  # F2
        cid = "C11" if d and h else "C9" if d else "C10" if h else "C8" if u else "C7"
    return RepresentationClass(cid, _CLASS_FIELD[cid])


def classify(m: Matroid) -> RepresentationClass:
    return classify_decomposition(foundation(m))


def decomposition_admits(dec: FoundationDecomposition, target) -> bool:
    return all(admits_morphism(tag, target) for tag in set(dec.factor_tags()))


def representable_over(m: Matroid, target) -> bool:
    return decomposition_admits(foundation(m), target)


def decomposition_hom_count(dec: FoundationDecomposition, p: FinitePasture) -> int:
    count = 1
    for tag in dec.factor_tags():
        count *= hom_count_factor(tag, p)
        if not count:
            return 0
    return count


def hom_count(m: Matroid, p: FinitePasture) -> int:
    return decomposition_hom_count(foundation(m), p)


# ------------------------------------------------------------------- lifts
def lift_orientation(m: Matroid, chi: Chirotope) -> DyadicLift:
    """The unique dyadic lift of an orientation, one record per component."""
    if chi.matroid != m:
        raise ValueError("chirotope is attached to a different matroid")
    violations = validate_chirotope(chi)
    if violations:
        raise ValueError(f"invalid chirotope: {violations[0]}")
    guard(m)
    hexagons = build_hexagons(m)
    edges = harvest_relations(m, hexagons)
    comps, uf = _components_with_frames(len(hexagons), edges)
    if fano_minor_presence(m) != "none":
        raise IntegrityError("Fano minor present; matroid admits no orientation")
    records = []
    for ci, comp in enumerate(comps):
        if comp.order not in (1, 2):
            raise IntegrityError(
                f"component of order {comp.order} is incompatible with signs"
            )
        vecs = []
        for hi in comp.hexagons:
            _, f = uf.find(hi)
            hx = hexagons[hi]
            local = [
                eval_cross_ratio(chi, hx.contracted, hx.slot_quad(s))
                for s in range(6)
            ]
            f_inv = f.inverse()
            vecs.append(tuple(local[f_inv(t)] for t in range(6)))
        if len(set(vecs)) != 1:
            raise IntegrityError("sign data disagrees across identified hexagons")
        vec = vecs[0]
        for g in comp.monodromy:
            if any(vec[g(t)] != vec[t] for t in range(6)):
                raise IntegrityError(
                    "sign data is not invariant under the component monodromy"
                )
        pair = (vec[0], vec[1])
        if pair not in _LIFT_TABLE:
            raise IntegrityError(f"slot signs {pair} are not a fundamental pair")
        records.append(
            {
                "component": ci,
                "factor": "U" if comp.order == 1 else "D",
                "signs": pair,
                "lift": _LIFT_TABLE[pair],
                "hexagons": [
                    {
                        "contracted": list(hexagons[hi].contracted),
                        "residual": list(hexagons[hi].residual),
                    }
                    for hi in comp.hexagons
                ],
            }
        )
    return DyadicLift(records)


def check_positive_orientation(m: Matroid, chi: Chirotope) -> PositiveOrientationReport:
    """For an all-positive sign assignment: the decomposition must be a pure
    tensor power of U; there are exactly 2^r lifts to the near-regular
    partial field."""
    if chi.matroid != m:
        raise ValueError("chirotope is attached to a different matroid")
    if any(s != 1 for s in chi.signs.values()):
        raise ValueError("chirotope is not all-positive")
    dec = foundation(m)
    if dec.head != "F1pm" or dec.factors["D"] or dec.factors["H"]:
        raise IntegrityError(
            f"positively signed matroid decomposed as {dec.key()}; expected "
            "a pure tensor power of U"
        )
    r = dec.factors["U"]
    return PositiveOrientationReport(r=r, near_regular=True, lifts_to_U=2 ** r)

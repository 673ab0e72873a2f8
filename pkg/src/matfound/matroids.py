"""Matroids on ground sets {1..n}, n <= 16, with bases stored as bitmasks.

Element e corresponds to bit e-1.  Rank queries use the fact that the rank
of a set S equals the largest |B & S| over bases B; results are memoized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GuardError
from .smallfield import FieldTable, make_field, mat_rank

MAX_GROUND = 16


class ExchangeError(ValueError):
    """Basis-exchange violation; carries a witness (basis, element) pair."""

    def __init__(self, basis, element):
        self.basis = tuple(sorted(basis))
        self.element = element
        super().__init__(
            f"basis exchange fails for basis {self.basis}, element {element}"
        )


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elems_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class EmbeddedMinorSite:
    """An embedded minor M\\I/J presented on its residual elements."""

    deleted: tuple[int, ...]
    contracted: tuple[int, ...]
    residual: tuple[int, ...]


class Matroid:
    __slots__ = ("n", "r", "bases", "_blist", "_rank_cache")

    def __init__(self, n: int, r: int, bases: frozenset[int], _trusted: bool = False):
        if not 0 <= r <= n <= MAX_GROUND:
            raise ValueError(f"need 0 <= rank <= n <= {MAX_GROUND}")
        if not bases:
            raise ValueError("empty basis family")
        self.n = n
        self.r = r
        self.bases = bases
        self._blist = sorted(bases)
        self._rank_cache: dict[int, int] = {}
        full = (1 << n) - 1
        for b in self._blist:
            if b & ~full:
                raise ValueError("basis uses elements outside 1..n")
            if bin(b).count("1") != r:
                raise ValueError(f"basis {elems_of(b)} does not have {r} elements")
        if not _trusted:
            self._check_exchange()

    def _check_exchange(self) -> None:
        bases = self.bases
        for a in self._blist:
            for b in self._blist:
                if a == b:
                    continue
                out = a & ~b
                avail = b & ~a
                while out:
                    bit = out & -out
                    out ^= bit
                    rest = avail
                    while rest:
                        add = rest & -rest
                        rest ^= add
                        if (a ^ bit) | add in bases:
                            break
                    else:
                        raise ExchangeError(elems_of(a), elems_of(bit)[0])

    # ------------------------------------------------------------------ rank
    def rank(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        best = 0
        for b in self._blist:
            k = bin(b & mask).count("1")
            if k > best:
                best = k
                if best == self.r:
                    break
        self._rank_cache[mask] = best
        return best

    def rank_of(self, elements) -> int:
        return self.rank(mask_of(elements))

    def is_independent(self, elements) -> bool:
        m = mask_of(elements)
        return self.rank(m) == bin(m).count("1")

    def is_coindependent(self, elements) -> bool:
        full = (1 << self.n) - 1
        return self.rank(full & ~mask_of(elements)) == self.r

    def closure(self, elements) -> tuple[int, ...]:
        m = mask_of(elements)
        rk = self.rank(m)
        out = []
        for e in range(1, self.n + 1):
            if self.rank(m | (1 << (e - 1))) == rk:
                out.append(e)
        return tuple(out)

    # ---------------------------------------------------------- constructions
    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        return Matroid(
            self.n,
            self.n - self.r,
            frozenset(full & ~b for b in self.bases),
            _trusted=True,
        )

    def minor(self, deleted=(), contracted=()) -> "Matroid":
        i_mask = mask_of(deleted)
        j_mask = mask_of(contracted)
        if i_mask & j_mask:
            raise ValueError("deleted and contracted sets overlap")
        if self.rank(j_mask) != bin(j_mask).count("1"):
            raise ValueError("contracted set is dependent")
        full = (1 << self.n) - 1
        if self.rank(full & ~i_mask) != self.r:
            raise ValueError("deleted set is not coindependent")
        residual = elems_of(full & ~(i_mask | j_mask))
        new_bases = set()
        for b in self.bases:
            if b & i_mask or (b & j_mask) != j_mask:
                continue
            new_bases.add(_relabel_mask(b & ~j_mask, residual))
        return Matroid(
            len(residual),
            self.r - bin(j_mask).count("1"),
            frozenset(new_bases),
            _trusted=True,
        )

    def direct_sum(self, other: "Matroid") -> "Matroid":
        n = self.n + other.n
        if n > MAX_GROUND:
            raise ValueError(f"direct sum exceeds {MAX_GROUND} elements")
        bases = frozenset(
            a | (b << self.n) for a in self.bases for b in other.bases
        )
        return Matroid(n, self.r + other.r, bases, _trusted=True)

    # ------------------------------------------------------------- slices
    def pair_graph(self, j_mask: int):
        """Adjacency bitmasks on E - J: a~b iff J+{a,b} is a basis."""
        verts = elems_of(((1 << self.n) - 1) & ~j_mask)
        adj = {v: 0 for v in verts}
        for a, b in itertools.combinations(verts, 2):
            if j_mask | (1 << (a - 1)) | (1 << (b - 1)) in self.bases:
                adj[a] |= 1 << (b - 1)
                adj[b] |= 1 << (a - 1)
        return verts, adj

    def embedded_u24_sites(self) -> list[EmbeddedMinorSite]:
        """All (J, {e1<e2<e3<e4}) with every J+{ei,ej} a basis, in lex order."""
        out = []
        if self.r < 2:
            return out
        full = (1 << self.n) - 1
        for j in itertools.combinations(range(1, self.n + 1), self.r - 2):
            j_mask = mask_of(j)
            verts, adj = self.pair_graph(j_mask)
            for quad in itertools.combinations(verts, 4):
                qm = mask_of(quad)
                if all(adj[v] & qm == qm & ~(1 << (v - 1)) for v in quad):
                    out.append(
                        EmbeddedMinorSite(
                            deleted=elems_of(full & ~(j_mask | qm)),
                            contracted=j,
                            residual=quad,
                        )
                    )
        return out

    def has_large_uniform_minor(self) -> bool:
        """True iff some minor is the rank-2 or rank-3 uniform matroid on 5."""
        return self._has_u25() or self.dual()._has_u25()

    def _has_u25(self) -> bool:
        if self.r < 2 or self.n - (self.r - 2) < 5:
            return False
        for j in itertools.combinations(range(1, self.n + 1), self.r - 2):
            _, adj = self.pair_graph(mask_of(j))
            masks = [m for m in adj.values() if bin(m).count("1") >= 4]
            if len(masks) >= 5 and _has_clique(adj, 5):
                return True
        return False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.r,
            "bases": [list(elems_of(b)) for b in self._blist],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and self.r == other.r
            and self.bases == other.bases
        )

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"


def _relabel_mask(mask: int, residual) -> int:
    out = 0
    for new, old in enumerate(residual, start=1):
        if mask & (1 << (old - 1)):
            out |= 1 << (new - 1)
    return out


def _has_clique(adj: dict[int, int], k: int) -> bool:
    verts = sorted(adj)

    def grow(count, cand_mask):
        if count == k:
            return True
        if count + bin(cand_mask).count("1") < k:
            return False
        m = cand_mask
        while m:
            bit = m & -m
            m ^= bit
            v = bit.bit_length()
            if grow(count + 1, m & adj[v]):
                return True
        return False

    cand = 0
    for v in verts:
        cand |= 1 << (v - 1)
    return grow(0, cand)


# ---------------------------------------------------------------- constructors
def from_bases(n: int, r: int, bases) -> Matroid:
    masks = set()
    for b in bases:
        b = tuple(b)
        if len(set(b)) != len(b):
            raise ValueError(f"repeated element in basis {b}")
        for e in b:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside 1..{n}")
        masks.add(mask_of(b))
    return Matroid(n, r, frozenset(masks))


def from_matrix(field: FieldTable, matrix) -> Matroid:
    r = len(matrix)
    n = len(matrix[0]) if matrix else 0
    if not r <= n <= MAX_GROUND:
        raise ValueError(f"need rows <= columns <= {MAX_GROUND}")
    if mat_rank(field, matrix) < r:
        raise ValueError(f"matrix rank below {r}; not a rank-{r} representation")
    bases = set()
    for cols in itertools.combinations(range(1, n + 1), r):
        if mat_rank(field, matrix, cols) == r:
            bases.add(mask_of(cols))
    return Matroid(n, r, frozenset(bases))


# ---------------------------------------------------------------- catalog
_FANO_COLS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1))

# Graphic matroid of K4, edges 1..6 = ab, ac, ad, bc, bd, cd; the four
# triangles are the nonbases.
_MK4_NONBASES = ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6))


def _fano_matrix():
    return [[col[i] for col in _FANO_COLS] for i in range(3)]


def _ag23_matrix():
    pts = [(x, y) for x in range(3) for y in range(3)]
    return [[1] * 9, [x for x, _ in pts], [y for _, y in pts]]


def _t8_matrix():
    rows = []
    for i in range(4):
        ident = [1 if j == i else 0 for j in range(4)]
        rows.append(ident + [0 if j == i else 1 for j in range(4)])
    return rows


def _validated(m: Matroid, name: str, n: int, r: int, nbases: int) -> Matroid:
    if (m.n, m.r, len(m.bases)) != (n, r, nbases):
        raise ValueError(
            f"catalog entry {name} failed validation: got "
            f"(n={m.n}, r={m.r}, bases={len(m.bases)})"
        )
    return m


def catalog(name: str) -> Matroid:
    """Named matroids: U(r,n) for n <= 9, F7, F7dual, F7minus, AG23, T8,
    C5, C5dual, MK4."""
    if name.startswith("U(") and name.endswith(")"):
        try:
            r, n = (int(t) for t in name[2:-1].split(","))
        except ValueError:
            raise ValueError(f"cannot parse uniform matroid name {name!r}") from None
        if not 0 <= r <= n <= 9:
            raise ValueError(f"uniform matroid {name} out of supported range")
        bases = frozenset(
            mask_of(c) for c in itertools.combinations(range(1, n + 1), r)
        )
        return Matroid(n, r, bases, _trusted=True)
    if name == "F7":
        return _validated(from_matrix(make_field(2), _fano_matrix()), name, 7, 3, 28)
    if name == "F7dual":
        return catalog("F7").dual()
    if name == "F7minus":
        return _validated(from_matrix(make_field(3), _fano_matrix()), name, 7, 3, 29)
    if name == "AG23":
        return _validated(from_matrix(make_field(3), _ag23_matrix()), name, 9, 3, 72)
    if name == "T8":
        return _validated(from_matrix(make_field(3), _t8_matrix()), name, 8, 4, 59)
    if name == "C5":
        bases = [c for c in itertools.combinations(range(1, 6), 3) if c != (3, 4, 5)]
        return from_bases(5, 3, bases)
    if name == "C5dual":
        return catalog("C5").dual()
    if name == "MK4":
        nb = set(_MK4_NONBASES)
        bases = [c for c in itertools.combinations(range(1, 7), 3) if c not in nb]
        return from_bases(6, 3, bases)
    raise ValueError(f"unknown catalog matroid {name!r}")


def from_json(obj: dict) -> Matroid:
    if "rows" in obj:
        return from_matrix(make_field(int(obj["field"])), obj["rows"])
    return from_bases(int(obj["n"]), int(obj["rank"]), obj["bases"])


# ---------------------------------------------------------- minor detection
def _nonbasis_degrees(m: Matroid) -> dict[int, int]:
    deg = {e: 0 for e in range(1, m.n + 1)}
    for c in itertools.combinations(range(1, m.n + 1), m.r):
        if mask_of(c) not in m.bases:
            for e in c:
                deg[e] += 1
    return deg


def is_isomorphic_small(m1: Matroid, m2: Matroid) -> bool:
    """Backtracking isomorphism test for ground sets of at most 9 elements."""
    if m1.n > 9 or m2.n > 9:
        raise GuardError("iso_test_too_large", "isomorphism test supports at most 9 elements")
    if (m1.n, m1.r, len(m1.bases)) != (m2.n, m2.r, len(m2.bases)):
        return False
    deg1, deg2 = _nonbasis_degrees(m1), _nonbasis_degrees(m2)
    if sorted(deg1.values()) != sorted(deg2.values()):
        return False
    order = sorted(deg1, key=lambda e: (-deg1[e], e))
    n, r = m1.n, m1.r

    def extend(idx: int, image: dict[int, int], used: int) -> bool:
        if idx == n:
            return True
        e = order[idx]
        mapped = [x for x in order[:idx]]
        for f in range(1, n + 1):
            if used & (1 << (f - 1)) or deg2[f] != deg1[e]:
                continue
            image[e] = f
            ok = True
            for sub in itertools.combinations(mapped, r - 1):
                src = mask_of(sub + (e,))
                dst = mask_of(tuple(image[x] for x in sub) + (f,))
                if (src in m1.bases) != (dst in m2.bases):
                    ok = False
                    break
            if ok and extend(idx + 1, image, used | (1 << (f - 1))):
                return True
            del image[e]
        return False

    return extend(0, {}, 0)


def _fano_embedded(m: Matroid, template: Matroid):
    """Yield True once if some embedded 7-element minor is isomorphic to the
    rank-3 template (which must be F7)."""
    if m.r < 3 or m.n < 7 or (m.n - m.r) < 4:
        return False
    jsize = m.r - 3
    isize = m.n - 7 - jsize
    if isize < 0:
        return False
    full = (1 << m.n) - 1
    for j in itertools.combinations(range(1, m.n + 1), jsize):
        j_mask = mask_of(j)
        if m.rank(j_mask) != jsize:
            continue
        bases_j = [b for b in m._blist if b & j_mask == j_mask]
        if not bases_j:
            continue
        rest = elems_of(full & ~j_mask)
        for i in itertools.combinations(rest, isize):
            i_mask = mask_of(i)
            minor_bases = {
                _relabel_mask(b & ~j_mask, elems_of(full & ~(i_mask | j_mask)))
                for b in bases_j
                if not b & i_mask
            }
            if len(minor_bases) != len(template.bases):
                continue
            cand = Matroid(7, 3, frozenset(minor_bases), _trusted=True)
            if is_isomorphic_small(cand, template):
                return True
    return False


def fano_minor_presence(m: Matroid) -> str:
    """Scan for F7 / F7dual minors; returns 'none', 'F7', 'F7dual' or 'both'."""
    if m.n > MAX_GROUND:
        raise GuardError("scan_too_large", f"ground set too large for exhaustive scan (n={m.n})")
    f7 = catalog("F7")
    has_f7 = _fano_embedded(m, f7)
    has_dual = _fano_embedded(m.dual(), f7)
    if has_f7 and has_dual:
        return "both"
    if has_f7:
        return "F7"
    if has_dual:
        return "F7dual"
    return "none"

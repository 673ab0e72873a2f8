"""Brute-force ground truth: exhaustive enumeration of pasture-valued
Grassmann-Pluecker functions and explicit rescaling-orbit counting.

This module deliberately never consults the decomposition pipeline; it is
the independent cross-check for it.  Enumeration is a depth-first search
over unit values on sorted bases, pruning on every three-term Pluecker
null condition as soon as all of its basis values are assigned.
"""

from __future__ import annotations

import itertools

from .errors import GuardError
from .matroids import Matroid, elems_of
from .pastures import FinitePasture
from .crossratio import sort_sign

NODE_BUDGET = 10_000_000
ORBIT_BUDGET = 200_000


def _pluecker_relations(m: Matroid, pos_of_basis):
    """Each relation is three (pos_a, pos_b, sign) terms; pos -1 marks a
    nonbasis member (term value 0)."""
    relations = []
    if m.r < 2:
        return relations
    for j in itertools.combinations(range(1, m.n + 1), m.r - 2):
        rest = [e for e in range(1, m.n + 1) if e not in j]
        for e1, e2, e3, e4 in itertools.combinations(rest, 4):
            terms = []
            nontrivial = 0
            for (a, b) in ((e1, e2), (e3, e4), (e1, e3), (e2, e4), (e1, e4), (e2, e3)):
                key = tuple(sorted(j + (a, b)))
                pos = pos_of_basis.get(key, -1)
                if pos >= 0:
                    nontrivial += 1
                terms.append((pos, sort_sign(j + (a, b))))
            if nontrivial:
                relations.append(tuple(terms))
    return relations


def _prepare(m: Matroid, p: FinitePasture):
    bases = [elems_of(b) for b in m._blist]
    pos_of_basis = {b: i for i, b in enumerate(bases)}
    relations = _pluecker_relations(m, pos_of_basis)

    # assignment order: bases in order of first appearance in a relation,
    # so null conditions complete (and prune) as early as possible
    order = []
    seen = set()
    for rel in relations:
        for pos, _ in rel:
            if pos >= 0 and pos not in seen:
                seen.add(pos)
                order.append(pos)
    for i in range(len(bases)):
        if i not in seen:
            order.append(i)
    step_of = {pos: k for k, pos in enumerate(order)}

    triggers: list[list[tuple]] = [[] for _ in bases]
    for rel in relations:
        last = max(step_of[pos] for pos, _ in rel if pos >= 0)
        triggers[last].append(rel)
    return bases, order, triggers


def satisfying_assignments(
    m: Matroid, p: FinitePasture, node_budget: int = NODE_BUDGET
) -> list[tuple[int, ...]]:
    """All unit assignments to sorted bases satisfying every Pluecker null
    condition, as tuples aligned with the sorted basis list."""
    bases, order, triggers = _prepare(m, p)
    nb = len(bases)
    val = [0] * nb
    out: list[tuple[int, ...]] = []
    nodes = 0

    def term_value(pos, sign):
        if pos < 0:
            return 0
        v = val[pos]
        return v if sign > 0 else p.neg(v)

    def dfs(k):
        nonlocal nodes
        if k == nb:
            out.append(tuple(val))
            return
        pos = order[k]
        # fix the first basis value to 1; global scaling restores the rest
        choices = (1,) if k == 0 else p.units
        for u in choices:
            nodes += 1
            if nodes > node_budget:
                raise GuardError(
                    "oracle_budget",
                    f"search exceeded the {node_budget}-node budget",
                )
            val[pos] = u
            ok = True
            for rel in triggers[k]:
                t1 = p.mul(term_value(*rel[0]), term_value(*rel[1]))
                t2 = p.mul(term_value(*rel[2]), term_value(*rel[3]))
                t3 = p.mul(term_value(*rel[4]), term_value(*rel[5]))
                if not p.is_null(t1, p.neg(t2), t3):
                    ok = False
                    break
            if ok:
                dfs(k + 1)
        val[pos] = 0

    dfs(0)
    # expand the normalization: every assignment is a global scale of one
    # with first-ordered basis value 1
    full = []
    for a in out:
        for c in p.units:
            full.append(tuple(p.mul(c, v) for v in a))
    return sorted(set(full))


def enumerate_representations(
    m: Matroid, p: FinitePasture, node_budget: int = NODE_BUDGET
) -> int:
    """Exhaustive count of pasture representations."""
    return len(satisfying_assignments(m, p, node_budget))


def rescaling_classes(m: Matroid, p: FinitePasture) -> int:
    """Orbits of satisfying assignments under global scaling and
    single-element rescalings, by explicit breadth-first search."""
    if p.k * m.n > 512:
        raise GuardError("orbit_guard", "unit count times ground set too large")
    sat = satisfying_assignments(m, p)
    if len(sat) > ORBIT_BUDGET:
        raise GuardError("orbit_guard", f"{len(sat)} satisfying assignments")
    if not sat:
        return 0
    bases = [elems_of(b) for b in m._blist]
    membership = [
        [i for i, b in enumerate(bases) if e in b] for e in range(1, m.n + 1)
    ]
    index = {a: i for i, a in enumerate(sat)}
    seen = [False] * len(sat)
    classes = 0
    for start in range(len(sat)):
        if seen[start]:
            continue
        classes += 1
        stack = [sat[start]]
        seen[start] = True
        while stack:
            a = stack.pop()
            neighbours = []
            for u in p.units:
                if u == 1:
                    continue
                neighbours.append(tuple(p.mul(u, v) for v in a))
                for touched in membership:
                    b = list(a)
                    for i in touched:
                        b[i] = p.mul(u, b[i])
                    neighbours.append(tuple(b))
            for b in neighbours:
                i = index[b]
                if not seen[i]:
                    seen[i] = True
                    stack.append(b)
    return classes

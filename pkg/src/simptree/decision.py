"""Polynomial-time tree decision via the triple condition.

A connected complex is a tree exactly when no triple ``(f, g1, g2)``
has ``g1``, ``g2`` incomparable under ``<=_f`` while being connected
outside ``f`` in the residue ``{h : h & f == g1 & g2} + {g1, g2}``.

Four variants share one enumeration loop and differ in which pairs are
enumerated and how the connectivity question is answered:

``baseline``
    every triple, residue rebuilt and merged per check.
``useless_removal``
    as baseline, but a facet whose outer loop finds no cycle is dropped
    before the next outer iteration.
``connection_set``
    useless removal, and pairs drawn only from facets meeting ``f``.
``incidence_matrix``
    connection sets plus per-``f`` outside-``f`` adjacency and
    components, so residues are never materialised.

Triples are enumerated with ``f`` ascending, then pairs ``(i, j)``
with ``i < j`` ascending over the remaining facets.  Pairs where one
facet misses ``f`` entirely are comparable by definition and are counted
in bulk without being visited; the counters are identical to a
pair-by-pair loop.
"""
from __future__ import annotations

import time
from bisect import bisect_right
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .complex import FacetComplex, _components, bits, connected_components
from .cycles import CycleCertificate, certificate_from_cycle, cycle_from_triple, residue_path
from .relations import _is_reducible
from .unionfind import DisjointSet

__all__ = [
    "VARIANTS",
    "VARIANT_ALIASES",
    "DisconnectedComplexError",
    "TripleOutcome",
    "DecisionStats",
    "Verdict",
    "triple_condition",
    "is_tree",
    "is_tree_baseline",
    "is_tree_useless_removal",
    "is_tree_connection_set",
    "is_tree_incidence_matrix",
    "is_tree_naive_verdict",
    "reducible_leaves",
    "strip_reducible",
    "cyclic_facets",
    "is_forest",
]

VARIANTS = ("baseline", "useless_removal", "connection_set", "incidence_matrix", "naive")
VARIANT_ALIASES = {
    "baseline": "baseline",
    "useless": "useless_removal",
    "useless_removal": "useless_removal",
    "connset": "connection_set",
    "connection_set": "connection_set",
    "incmat": "incidence_matrix",
    "incidence_matrix": "incidence_matrix",
    "naive": "naive",
}


class DisconnectedComplexError(ValueError):
    """The tree decision procedure needs a connected complex."""


@dataclass(frozen=True)
class TripleOutcome:
    triple: tuple[int, int, int]
    stage: str  # "comparable" | "disconnected" | "cycle_found"
    path: tuple[int, ...] | None = None

    @property
    def satisfied(self) -> bool:
        return self.stage == "cycle_found"


@dataclass
class DecisionStats:
    variant: str
    triples_enumerated: int = 0
    comparability_rejections: int = 0
    connectivity_checks: int = 0
    cycle_triples: int = 0
    facets_removed: int = 0

    def as_record(self) -> dict:
        return asdict(self)


@dataclass
class Verdict:
    is_tree: bool
    witness: CycleCertificate | None
    stats: DecisionStats
    first_cycle_triple: tuple[int, int, int] | None = None
    wall_time_ms: float = field(default=0.0, compare=False)


def _comparable(a: int, b: int) -> bool:
    return a & ~b == 0 or b & ~a == 0


def _residue_connected(masks: Sequence[int], members: Iterable[int], f: int, g1: int, g2: int) -> bool:
    fm = masks[f]
    target = masks[g1] & masks[g2]
    res = [h for h in members if h == g1 or h == g2 or (h != f and masks[h] & fm == target)]
    return _components(masks, res, fm).same(g1, g2)


def triple_condition(delta: FacetComplex, f: int, g1: int, g2: int, members: Iterable[int] | None = None) -> TripleOutcome:
    """Evaluate the triple condition, returning the stage reached."""
    if len({f, g1, g2}) != 3:
        raise ValueError("triple facets must be distinct")
    masks = delta.masks
    triple = (f, g1, g2)
    if _comparable(masks[g1] & masks[f], masks[g2] & masks[f]):
        return TripleOutcome(triple, "comparable")
    mem = range(delta.l) if members is None else sorted(members)
    if not _residue_connected(masks, mem, f, g1, g2):
        return TripleOutcome(triple, "disconnected")
    path = residue_path(masks, mem, f, g1, g2)
    return TripleOutcome(triple, "cycle_found", tuple(path))


class _IncidenceChecker:
    """Outside-``f`` adjacency and components, built at most once per outer facet."""

    def __init__(self, masks: Sequence[int], nbrs: Sequence[Sequence[int]]):
        self.masks = masks
        self.nbrs = nbrs
        self.f = None

    def prepare(self, f: int, alive: Sequence[bool]) -> None:
        # tables are built on the first connectivity check for f; alive
        # only changes between outer facets
        self.f = f
        self.alive = alive
        self.adj = None

    def _build(self) -> None:
        masks, alive, f = self.masks, self.alive, self.f
        fm = masks[f]
        adj = {}
        ds = DisjointSet(len(masks))
        for h, ok in enumerate(alive):
            if not ok or h == f:
                continue
            out = masks[h] & ~fm
            row = [x for x in self.nbrs[h] if alive[x] and x != f and masks[x] & out]
            adj[h] = row
            for x in row:
                ds.union(h, x)
        self.adj = adj
        self.outside = ds

    def __call__(self, f: int, g1: int, g2: int) -> bool:
        if self.adj is None:
            self._build()
        if not self.outside.same(g1, g2):
            return False
        masks = self.masks
        fm = masks[f]
        target = masks[g1] & masks[g2]
        seen = {g1}
        stack = [g1]
        adj = self.adj
        while stack:
            h = stack.pop()
            for x in adj[h]:
                if x in seen:
                    continue
                if x == g2:
                    return True
                if masks[x] & fm == target:
                    seen.add(x)
                    stack.append(x)
        return False


def _neighbors(masks: Sequence[int]) -> list[list[int]]:
    l = len(masks)
    by_vertex: dict[int, list[int]] = {}
    for h, m in enumerate(masks):
        for k in bits(m):
            by_vertex.setdefault(k, []).append(h)
    out = []
    for h in range(l):
        seen = set()
        for k in bits(masks[h]):
            seen.update(by_vertex[k])
        seen.discard(h)
        out.append(sorted(seen))
    return out


def _decide(delta: FacetComplex, variant: str, early_exit: bool, witness: bool) -> Verdict:
    started = time.perf_counter()
    stats = DecisionStats(variant)
    masks = delta.masks
    l = delta.l
    if len(connected_components(delta)) > 1:
        raise DisconnectedComplexError("complex is not connected; use is_forest")

    removal = variant != "baseline"
    sparse = variant in ("connection_set", "incidence_matrix")
    nbrs = _neighbors(masks) if sparse else None
    alive = [True] * l
    if variant == "incidence_matrix":
        checker = _IncidenceChecker(masks, nbrs)
        check: Callable[[int, int, int], bool] = checker
    else:
        checker = None

        def check(f: int, g1: int, g2: int) -> bool:
            return _residue_connected(masks, [h for h in range(l) if alive[h]], f, g1, g2)

    first = None
    cert = None
    for f in range(l):
        fm = masks[f]
        if sparse:
            others = [g for g in nbrs[f] if alive[g]]
        else:
            others = [g for g in range(l) if g != f and alive[g]]
        if checker is not None:
            checker.prepare(f, alive)
        inter = [masks[g] & fm for g in others]
        nz = [a for a, x in enumerate(inter) if x]
        m = len(others)
        found = False
        for a in range(m):
            ia = inter[a]
            if not ia:
                k = m - 1 - a
                stats.triples_enumerated += k
                stats.comparability_rejections += k
                continue
            last = a
            for b in nz[bisect_right(nz, a):]:
                gap = b - last - 1
                last = b
                stats.triples_enumerated += gap + 1
                stats.comparability_rejections += gap
                ib = inter[b]
                if ia & ~ib == 0 or ib & ~ia == 0:
                    stats.comparability_rejections += 1
                    continue
                stats.connectivity_checks += 1
                g1, g2 = others[a], others[b]
                if not check(f, g1, g2):
                    continue
                stats.cycle_triples += 1
                found = True
                if first is None:
                    first = (f, g1, g2)
                    if witness:
                        cert = cycle_from_triple(delta, f, g1, g2, [h for h in range(l) if alive[h]])
                if early_exit:
                    return _finish(False, cert, stats, first, started)
            tail = m - 1 - last
            stats.triples_enumerated += tail
            stats.comparability_rejections += tail
        if removal and not found:
            alive[f] = False
            stats.facets_removed += 1
    return _finish(first is None, cert, stats, first, started)


def _finish(is_tree_, cert, stats, first, started) -> Verdict:
    return Verdict(is_tree_, cert, stats, first, (time.perf_counter() - started) * 1000.0)


def is_tree_baseline(delta: FacetComplex, early_exit: bool = True, witness: bool = True) -> Verdict:
    return _decide(delta, "baseline", early_exit, witness)


def is_tree_useless_removal(delta: FacetComplex, early_exit: bool = True, witness: bool = True) -> Verdict:
    return _decide(delta, "useless_removal", early_exit, witness)


def is_tree_connection_set(delta: FacetComplex, early_exit: bool = True, witness: bool = True) -> Verdict:
    return _decide(delta, "connection_set", early_exit, witness)


def is_tree_incidence_matrix(delta: FacetComplex, early_exit: bool = True, witness: bool = True) -> Verdict:
    return _decide(delta, "incidence_matrix", early_exit, witness)


def is_tree_naive_verdict(delta: FacetComplex, early_exit: bool = True, witness: bool = True) -> Verdict:
    """Subset-enumeration verdict, wrapped like the polynomial variants."""
    from .oracle import all_minimal_cycles_naive

    started = time.perf_counter()
    if len(connected_components(delta)) > 1:
        raise DisconnectedComplexError("complex is not connected; use is_forest")
    cycles = all_minimal_cycles_naive(delta)
    cert = certificate_from_cycle(delta, cycles[0]) if cycles and witness else None
    return _finish(not cycles, cert, DecisionStats("naive"), None, started)


_DISPATCH = {
    "baseline": is_tree_baseline,
    "useless_removal": is_tree_useless_removal,
    "connection_set": is_tree_connection_set,
    "incidence_matrix": is_tree_incidence_matrix,
    "naive": is_tree_naive_verdict,
}


def is_tree(delta: FacetComplex, variant: str = "connection_set", early_exit: bool = True, witness: bool = True) -> Verdict:
    try:
        fn = _DISPATCH[VARIANT_ALIASES[variant]]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    return fn(delta, early_exit=early_exit, witness=witness)


def reducible_leaves(delta: FacetComplex, members: Iterable[int] | None = None) -> set[int]:
    """Facets whose intersections with all other facets form a chain."""
    mem = range(delta.l) if members is None else sorted(members)
    return {f for f in mem if _is_reducible(delta.masks, mem, f)}


def strip_reducible(delta: FacetComplex) -> tuple[FacetComplex, list[int]]:
    """Remove reducible leaves until none is left.

    Returns the remaining sub-complex (same vertex universe) and the
    removed facet indices in removal order.
    """
    alive = list(range(delta.l))
    removed: list[int] = []
    changed = True
    while changed and alive:
        changed = False
        for f in list(alive):
            if _is_reducible(delta.masks, alive, f):
                alive.remove(f)
                removed.append(f)
                changed = True
    return delta.restrict(alive), removed


def cyclic_facets(delta: FacetComplex) -> dict[int, CycleCertificate]:
    """Each facet lying on some cycle, mapped to one such cycle."""
    masks = delta.masks
    nbrs = _neighbors(masks)
    out = {}
    for f in range(delta.l):
        fm = masks[f]
        others = nbrs[f]
        done = False
        for a, g1 in enumerate(others):
            for g2 in others[a + 1:]:
                if _comparable(masks[g1] & fm, masks[g2] & fm):
                    continue
                if _residue_connected(masks, range(delta.l), f, g1, g2):
                    out[f] = cycle_from_triple(delta, f, g1, g2)
                    done = True
                    break
            if done:
                break
    return out


def is_forest(delta: FacetComplex, variant: str = "connection_set") -> bool:
    """Every connected component is a tree."""
    for block in connected_components(delta):
        if len(block) <= 2:
            continue
        if not is_tree(delta.restrict(block), variant, early_exit=True, witness=False).is_tree:
            return False
    return True

"""Graftedness, vertex covers, unmixedness and the Cohen-Macaulay report."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .complex import FacetComplex, bits, facet_ideal_generators, format_monomial, is_connected
from .relations import _is_reducible, _leaf_witness

__all__ = [
    "GraftReport",
    "CoverReport",
    "CMReport",
    "CoverBoundError",
    "is_grafted",
    "minimal_vertex_covers",
    "vertex_covering_number",
    "cm_report",
]

DEFAULT_MAX_N = 25


class CoverBoundError(ValueError):
    pass


@dataclass(frozen=True)
class GraftReport:
    leaves: tuple[int, ...]
    non_leaves: tuple[int, ...]
    grafted: bool
    failure: str | None = None  # uncovered_vertex | intersecting_leaves | irreducible_leaf
    detail: tuple[int, ...] = ()


def is_grafted(delta: FacetComplex) -> GraftReport:
    """Decide graftedness from the leaves alone.

    The complex is grafted iff its leaves are pairwise disjoint, cover
    every vertex of the non-leaves, and are all reducible.
    """
    masks = delta.masks
    members = range(delta.l)
    leaf_list, rest = [], []
    for f in members:
        (leaf_list if _leaf_witness(masks, members, f)[0] else rest).append(f)
    leaves, non_leaves = tuple(leaf_list), tuple(rest)

    leaf_union = 0
    for f in leaves:
        leaf_union |= masks[f]
    for g in non_leaves:
        if masks[g] & ~leaf_union:
            return GraftReport(leaves, non_leaves, False, "uncovered_vertex", (g,))
    for a, b in combinations(leaves, 2):
        if masks[a] & masks[b]:
            return GraftReport(leaves, non_leaves, False, "intersecting_leaves", (a, b))
    for f in leaves:
        if not _is_reducible(masks, members, f):
            return GraftReport(leaves, non_leaves, False, "irreducible_leaf", (f,))
    return GraftReport(leaves, non_leaves, True)


@dataclass(frozen=True)
class CoverReport:
    minimal_covers: tuple[frozenset[str], ...]
    alpha: int
    unmixed: bool
    n: int

    @property
    def height(self) -> int:
        return self.alpha

    @property
    def dim(self) -> int:
        return self.n - self.alpha


def _minimal_cover_masks(masks: Sequence[int]) -> list[int]:
    """All minimal transversals by branching on the first unhit facet.

    A branch dies as soon as some chosen vertex has no private facet
    (a facet it alone hits); private sets only shrink as the cover grows.
    """
    found: set[int] = set()
    order = sorted(range(len(masks)), key=lambda i: masks[i].bit_count())

    def private_ok(cover: int) -> bool:
        need = cover
        for m in masks:
            hit = m & cover
            if hit and hit & (hit - 1) == 0:
                need &= ~hit
                if not need:
                    return True
        return need == 0

    def grow(cover: int) -> None:
        for i in order:
            if not masks[i] & cover:
                for k in bits(masks[i]):
                    nxt = cover | (1 << k)
                    if private_ok(nxt):
                        grow(nxt)
                return
        found.add(cover)

    grow(0)
    return sorted(found, key=lambda c: (c.bit_count(), c))


def minimal_vertex_covers(delta: FacetComplex, max_n: int = DEFAULT_MAX_N) -> CoverReport:
    """Every minimal vertex cover, with covering number and unmixedness."""
    if delta.n > max_n:
        raise CoverBoundError(f"{delta.n} vertices exceeds cover bound {max_n}")
    covers = _minimal_cover_masks(delta.masks)
    sizes = {c.bit_count() for c in covers}
    alpha = min(sizes) if sizes else 0
    return CoverReport(
        tuple(frozenset(delta.vertex_names(c)) for c in covers),
        alpha,
        len(sizes) <= 1,
        delta.n,
    )


def vertex_covering_number(delta: FacetComplex, max_n: int = DEFAULT_MAX_N) -> int:
    """Smallest cover size, searching vertex subsets level by level."""
    if delta.n > max_n:
        raise CoverBoundError(f"{delta.n} vertices exceeds cover bound {max_n}")
    if delta.l == 0:
        return 0
    masks = delta.masks
    for k in range(1, delta.n + 1):
        for combo in combinations(range(delta.n), k):
            cover = 0
            for v in combo:
                cover |= 1 << v
            if all(m & cover for m in masks):
                return k
    raise AssertionError("the full vertex set is always a cover")


@dataclass
class CMReport:
    generators: list[str]
    is_tree: bool
    grafted: bool
    graft_failure: str | None
    unmixed: bool | None
    alpha: int | None
    height: int | None
    dim: int | None
    minimal_primes: list[list[str]] | None
    cohen_macaulay: bool | None
    reason: str
    notes: list[str] = field(default_factory=list)

    @property
    def cm_label(self) -> str:
        return {True: "true", False: "false", None: "unknown"}[self.cohen_macaulay]

    def as_record(self) -> dict:
        out = dict(self.__dict__)
        out["cohen_macaulay"] = self.cm_label
        return out

    def to_text(self) -> str:
        def show(x):
            return "unavailable" if x is None else str(x).lower() if isinstance(x, bool) else str(x)

        lines = [f"generators: {', '.join(self.generators)}"]
        if self.minimal_primes is None:
            lines.append("minimal_primes: unavailable")
        else:
            primes = ["(" + ", ".join(p) + ")" for p in self.minimal_primes]
            lines.append(f"minimal_primes: {' '.join(primes)}")
        lines += [
            f"alpha: {show(self.alpha)}",
            f"height: {show(self.height)}",
            f"dim: {show(self.dim)}",
            f"is_tree: {show(self.is_tree)}",
            f"grafted: {show(self.grafted)}" + (f" ({self.graft_failure})" if self.graft_failure else ""),
            f"unmixed: {show(self.unmixed)}",
            f"cohen_macaulay: {self.cm_label} ({self.reason})",
        ]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def cm_report(delta: FacetComplex, max_n: int = DEFAULT_MAX_N) -> CMReport:
    """Combinatorial facts bearing on whether the facet ideal is Cohen-Macaulay.

    Grafted complexes are Cohen-Macaulay; Cohen-Macaulay forces unmixed;
    for trees grafted, unmixed and Cohen-Macaulay coincide.  Outside
    those cases the verdict is left unknown.
    """
    from .decision import is_forest

    graft = is_grafted(delta)
    tree = is_connected(delta) and is_forest(delta)
    notes = []
    try:
        covers = minimal_vertex_covers(delta, max_n)
    except CoverBoundError as exc:
        covers = None
        notes.append(str(exc))

    if graft.grafted:
        cm, reason = True, "grafted"
    elif tree:
        cm, reason = False, "tree that is not grafted"
    elif covers is not None and not covers.unmixed:
        cm, reason = False, "not unmixed"
    else:
        cm, reason = None, "not decidable by this tool"

    names = [format_monomial(g) for g in facet_ideal_generators(delta)]
    if covers is None:
        return CMReport(names, tree, graft.grafted, graft.failure, None, None, None, None, None, cm, reason, notes)
    primes = [sorted(c, key=delta.vertex_index) for c in covers.minimal_covers]
    return CMReport(
        names, tree, graft.grafted, graft.failure, covers.unmixed,
        covers.alpha, covers.height, covers.dim, primes, cm, reason, notes,
    )

"""Order and connectivity primitives on the facets of a complex.

All functions take facet *indices* into a :class:`FacetComplex`.  Those
that accept ``members`` evaluate the relation inside the sub-complex made
of those facets instead of the whole complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import FacetComplex, _components

__all__ = [
    "LeafStatus",
    "leq",
    "leaf_status",
    "is_leaf",
    "leaves",
    "strong_neighbors",
    "is_strong_neighbor",
    "connected_outside",
    "residue",
    "is_reducible_leaf",
]


@dataclass(frozen=True)
class LeafStatus:
    is_leaf: bool
    witness: int | None = None
    joint: int | None = None


def leq(delta: FacetComplex, h: int, g: int, f: int) -> bool:
    """``h <=_f g``, i.e. ``h & f`` is a subset of ``g & f``."""
    m = delta.masks
    return (m[h] & m[f]) & ~m[g] == 0


def _members(delta: FacetComplex, members: Iterable[int] | None) -> Sequence[int]:
    return range(delta.l) if members is None else sorted(members)


def _leaf_witness(masks: Sequence[int], members: Sequence[int], f: int) -> tuple[bool, int | None]:
    fm = masks[f]
    shared = 0
    others = []
    for h in members:
        if h != f:
            shared |= masks[h] & fm
            others.append(h)
    if not others:
        return True, None
    # some g must dominate every intersection, i.e. contain their union
    for g in others:
        if shared & ~masks[g] == 0:
            return True, g
    return False, None


def leaf_status(delta: FacetComplex, f: int, members: Iterable[int] | None = None) -> LeafStatus:
    """Leaf test for facet ``f`` with the smallest-index dominating witness."""
    mem = _members(delta, members)
    if f not in mem:
        raise ValueError(f"facet {f} is not in the complex")
    ok, g = _leaf_witness(delta.masks, mem, f)
    if not ok or g is None:
        return LeafStatus(ok)
    joint = g if delta.masks[g] & delta.masks[f] else None
    return LeafStatus(True, g, joint)


def is_leaf(delta: FacetComplex, f: int, members: Iterable[int] | None = None) -> bool:
    return _leaf_witness(delta.masks, _members(delta, members), f)[0]


def leaves(delta: FacetComplex, members: Iterable[int] | None = None) -> list[int]:
    mem = _members(delta, members)
    return [f for f in mem if _leaf_witness(delta.masks, mem, f)[0]]


def _strong(masks: Sequence[int], members: Sequence[int], f: int, g: int) -> bool:
    if f == g:
        return False
    common = masks[f] & masks[g]
    for h in members:
        if h != f and h != g and common & ~masks[h] == 0:
            return False
    return True


def is_strong_neighbor(delta: FacetComplex, f: int, g: int, members: Iterable[int] | None = None) -> bool:
    return _strong(delta.masks, _members(delta, members), f, g)


def strong_neighbors(delta: FacetComplex, f: int, members: Iterable[int] | None = None) -> set[int]:
    """All ``g != f`` whose intersection with ``f`` lies in no third facet."""
    mem = _members(delta, members)
    return {g for g in mem if _strong(delta.masks, mem, f, g)}


def _vertex_mask(delta: FacetComplex, vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    return delta.vertex_mask(vertices)


def connected_outside(
    delta: FacetComplex,
    vertices,
    src: int,
    dst: int,
    members: Iterable[int] | None = None,
) -> bool:
    """Whether ``src`` and ``dst`` are joined by a path avoiding ``vertices``.

    Consecutive facets on the path must share a vertex outside
    ``vertices`` (a name collection or a vertex bitmask).  Vertices are
    stripped from every facet, then each remaining vertex merges all
    facets that contain it.
    """
    mem = _members(delta, members)
    if src not in mem or dst not in mem:
        raise ValueError("src and dst must belong to the complex")
    if src == dst:
        return True
    ds = _components(delta.masks, mem, _vertex_mask(delta, vertices))
    return ds.same(src, dst)


def residue(delta: FacetComplex, f: int, g1: int, g2: int, members: Iterable[int] | None = None) -> list[int]:
    """Facets ``h`` with ``h & f == g1 & g2``, plus ``g1`` and ``g2``, as sorted indices."""
    if len({f, g1, g2}) != 3:
        raise ValueError("residue needs three distinct facets")
    m = delta.masks
    target = m[g1] & m[g2]
    fm = m[f]
    out = [h for h in _members(delta, members) if h == g1 or h == g2 or (m[h] & fm) == target]
    return out


def is_reducible_leaf(delta: FacetComplex, f: int, members: Iterable[int] | None = None) -> bool:
    """Whether the intersections of ``f`` with the other facets form a chain."""
    return _is_reducible(delta.masks, _members(delta, members), f)


def _is_reducible(masks: Sequence[int], members: Iterable[int], f: int) -> bool:
    fm = masks[f]
    inter = sorted({masks[h] & fm for h in members if h != f}, key=int.bit_count)
    return all(a & ~b == 0 for a, b in zip(inter, inter[1:]))

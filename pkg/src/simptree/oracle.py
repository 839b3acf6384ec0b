"""Exponential reference implementations, for tests and tiny inputs.

Every nonempty subset of facets is examined.  Subsets are encoded as
integers (bit ``i`` = facet ``i``) and all of them are evaluated at once
with numpy, so ``l`` up to about 20 stays practical.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from .complex import FacetComplex, bits
from .relations import _leaf_witness

__all__ = [
    "OracleBoundError",
    "DEFAULT_BOUND",
    "subsets",
    "leaf_table",
    "forest_table",
    "is_forest_naive",
    "is_tree_naive",
    "is_cycle_naive",
    "all_minimal_cycles_naive",
    "is_grafted_by_definition",
    "is_reducible_naive",
]

DEFAULT_BOUND = 20


class OracleBoundError(ValueError):
    pass


def subsets(l: int) -> Iterator[tuple[int, ...]]:
    """Every nonempty subset of ``range(l)``, once each, in binary order."""
    for s in range(1, 1 << l):
        yield tuple(bits(s))


def _check(delta: FacetComplex, bound: int) -> None:
    if delta.l > bound:
        raise OracleBoundError(f"{delta.l} facets exceeds oracle bound {bound}")


def _spread(values: list, dtype) -> np.ndarray:
    """``out[s] = OR of values[i] for i in s`` over all subsets ``s``."""
    out = np.zeros(1, dtype=dtype)
    for v in values:
        out = np.concatenate([out, out | v])
    return out


def leaf_table(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """``has_leaf[s]`` for every subset ``s`` of facets (index 0 is the empty set)."""
    _check(delta, bound)
    l = delta.l
    size = 1 << l
    masks = list(delta.masks)
    dtype = np.int64 if delta.n < 63 else object
    idx = np.arange(size, dtype=np.int64)
    member = [(idx >> i) & 1 == 1 for i in range(l)]
    has_leaf = np.zeros(size, dtype=bool)
    for f in range(l):
        fm = masks[f]
        # union of h & f over the other facets of the subset
        shared = _spread([0 if h == f else masks[h] & fm for h in range(l)], dtype)
        leaf = member[f] & (idx == (1 << f))
        for g in range(l):
            if g != f:
                leaf |= member[g] & ((shared & ~masks[g]) == 0)
        has_leaf |= member[f] & leaf
    return has_leaf


def forest_table(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> tuple[np.ndarray, np.ndarray]:
    """``(has_leaf, is_forest)`` tables over all facet subsets."""
    has_leaf = leaf_table(delta, bound)
    bad = ~has_leaf
    bad[0] = False
    # subset-OR transform: bad[s] = some nonempty t <= s has no leaf
    for i in range(delta.l):
        step = 1 << i
        view = bad.reshape(-1, 2 * step)
        view[:, step:] |= view[:, :step]
    return has_leaf, ~bad


def is_forest_naive(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> bool:
    """Every nonempty subset of facets has a leaf."""
    if delta.l == 0:
        return True
    return bool(forest_table(delta, bound)[1][-1])


def is_tree_naive(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> bool:
    from .complex import is_connected

    return is_connected(delta) and is_forest_naive(delta, bound)


def _cycle_mask(has_leaf: np.ndarray, forest: np.ndarray, l: int) -> np.ndarray:
    size = 1 << l
    idx = np.arange(size, dtype=np.int64)
    cyc = ~has_leaf
    cyc[0] = False
    for i in range(l):
        with_i = (idx >> i) & 1 == 1
        cyc &= ~with_i | forest[idx ^ (1 << i)]
    return cyc


def is_cycle_naive(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> bool:
    """No leaf, while every nonempty proper subset has one."""
    if delta.l == 0:
        return False
    has_leaf, forest = forest_table(delta, bound)
    return bool(_cycle_mask(has_leaf, forest, delta.l)[-1])


def all_minimal_cycles_naive(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> list[tuple[int, ...]]:
    """Every subset of facets that is a cycle, in binary subset order."""
    if delta.l == 0:
        return []
    has_leaf, forest = forest_table(delta, bound)
    cyc = _cycle_mask(has_leaf, forest, delta.l)
    return [tuple(bits(int(s))) for s in np.flatnonzero(cyc)]


def is_grafted_by_definition(delta: FacetComplex, bound: int = DEFAULT_BOUND) -> bool:
    """Recursive check of the grafting conditions, memoised on facet subsets.

    The leaves must be pairwise disjoint and cover every non-leaf, and
    removing any non-leaf that is a joint of some leaf must again give a
    grafted complex.
    """
    _check(delta, bound)
    masks = delta.masks

    @lru_cache(maxsize=None)
    def grafted(s: int) -> bool:
        members = list(bits(s))
        if not members:
            return True
        leaf_set, rest = [], []
        joints = set()
        for f in members:
            ok, _ = _leaf_witness(masks, members, f)
            if ok:
                leaf_set.append(f)
                # every dominating facet meeting f is a joint
                fm = masks[f]
                shared = 0
                for h in members:
                    if h != f:
                        shared |= masks[h] & fm
                for g in members:
                    if g != f and shared & ~masks[g] == 0 and masks[g] & fm:
                        joints.add(g)
            else:
                rest.append(f)
        leaf_union = 0
        for f in leaf_set:
            if leaf_union & masks[f]:
                return False
            leaf_union |= masks[f]
        for g in rest:
            if masks[g] & ~leaf_union:
                return False
        return all(grafted(s & ~(1 << g)) for g in rest if g in joints)

    return grafted((1 << delta.l) - 1)


def is_reducible_naive(delta: FacetComplex, f: int) -> bool:
    """Leaf in every sub-complex containing ``f`` (checked over all subsets)."""
    _check(delta, DEFAULT_BOUND)
    others = [h for h in range(delta.l) if h != f]
    for s in range(1 << len(others)):
        members = [f] + [others[i] for i in bits(s)]
        if not _leaf_witness(delta.masks, members, f)[0]:
            return False
    return True


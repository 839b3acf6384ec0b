"""Merge-find structure over dense integer ids."""
from __future__ import annotations

from typing import Iterable


class DisjointSet:
    """Union by rank with path compression."""

    __slots__ = ("parent", "rank")

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the classes of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def groups(self, members: Iterable[int]) -> list[list[int]]:
        """Classes restricted to ``members``, ordered by first member."""
        out: dict[int, list[int]] = {}
        for x in members:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())

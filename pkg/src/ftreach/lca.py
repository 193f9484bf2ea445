"""Lowest common ancestor and level ancestor over a parent-array forest.

LCA uses an Euler tour with a sparse table of minimum depths; level
ancestor uses binary lifting.  Nodes are ``0..n-1`` and ``parent[v] == -1``
marks a root.
"""
from __future__ import annotations

from typing import Sequence


class RootedForest:
    def __init__(self, parent: Sequence[int]):
        n = len(parent)
        self.parent = list(parent)
        children: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for v, p in enumerate(self.parent):
            if p == -1:
                roots.append(v)
            else:
                children[p].append(v)
        self.depth = [0] * n
        self.root = list(range(n))
        self.first = [0] * n
        euler: list[int] = []
        visited = 0
        for r in roots:
            stack = [(r, 0)]
            while stack:
                v, idx = stack.pop()
                if idx == 0:
                    visited += 1
                    self.first[v] = len(euler)
                    if self.parent[v] != -1:
                        self.depth[v] = self.depth[self.parent[v]] + 1
                        self.root[v] = self.root[self.parent[v]]
                euler.append(v)
                if idx < len(children[v]):
                    stack.append((v, idx + 1))
                    stack.append((children[v][idx], 0))
        if visited < n:
            raise ValueError("parent array contains a cycle")
        self._euler = euler
        self._table = self._sparse(euler)
        self._up = self._lifting()

    def _sparse(self, euler: list[int]) -> list[list[int]]:
        table = [euler[:]]
        span = 1
        while 2 * span <= len(euler):
            prev = table[-1]
            row = []
            for i in range(len(euler) - 2 * span + 1):
                a, b = prev[i], prev[i + span]
                row.append(a if self.depth[a] <= self.depth[b] else b)
            table.append(row)
            span *= 2
        return table

    def _lifting(self) -> list[list[int]]:
        n = len(self.parent)
        up = [[p if p != -1 else v for v, p in enumerate(self.parent)]]
        height = max(self.depth, default=0)
        while (1 << len(up)) <= height:
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(n)])
        return up

    def lca(self, u: int, v: int) -> int | None:
        """Common ancestor of ``u`` and ``v``, or ``None`` across trees."""
        if self.root[u] != self.root[v]:
            return None
        lo, hi = sorted((self.first[u], self.first[v]))
        j = (hi - lo + 1).bit_length() - 1
        a, b = self._table[j][lo], self._table[j][hi - (1 << j) + 1]
        return a if self.depth[a] <= self.depth[b] else b

    def level_ancestor(self, v: int, d: int) -> int:
        """Ancestor of ``v`` at depth ``d`` (``0 <= d <= depth[v]``)."""
        if not 0 <= d <= self.depth[v]:
            raise ValueError(f"depth {d} out of range for node {v}")
        steps = self.depth[v] - d
        j = 0
        while steps:
            if steps & 1:
                v = self._up[j][v]
            steps >>= 1
            j += 1
        return v

    def words(self) -> int:
        return len(self.parent) * 4 + len(self._euler) + sum(map(len, self._table)) + sum(
            map(len, self._up)
        )

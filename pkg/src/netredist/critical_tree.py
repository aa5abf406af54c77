"""The critical tree of an invitation graph.

Each participant's parent is the nearest agent whose absence would cut her
off from the sponsor; this is exactly the immediate-dominator tree of the
induced graph rooted at the sponsor.  The tree is computed with the
iterative data-flow algorithm (Cooper/Harvey/Kennedy): simple, easy to
audit, and fast enough for desk-scale instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from netredist.profiles import SPONSOR, InducedGraph


@dataclass(frozen=True)
class CriticalTree:
    """Immediate-dominator tree over the participant set.

    ``subtree[i]`` holds the strict descendants of ``i`` (the agents that
    participate only through ``i``).  ``root_branches`` are the sponsor's
    children in canonical order and ``branch_of`` maps every participant to
    the index of its branch in that list.
    """

    parent: Mapping[str, str]
    children: Mapping[str, tuple[str, ...]]
    subtree: Mapping[str, frozenset[str]]
    root_branches: tuple[str, ...]
    branch_of: Mapping[str, int]

    @property
    def agents(self) -> list[str]:
        return sorted(self.parent)

    def ancestors(self, i: str) -> list[str]:
        """Critical ancestors of ``i`` from the first branch root down to ``i``."""
        chain = [i]
        while self.parent[chain[-1]] != SPONSOR:
            chain.append(self.parent[chain[-1]])
        chain.reverse()
        return chain

    def depth(self, i: str) -> int:
        return len(self.ancestors(i))

    def branch_members(self, root: str) -> frozenset[str]:
        return self.subtree[root] | {root}


def critical_tree(graph: InducedGraph) -> CriticalTree:
    """Build the critical tree of ``graph`` restricted to reachable agents."""
    order = _reverse_postorder(graph)
    index = {v: k for k, v in enumerate(order)}
    preds: dict[str, list[str]] = {v: [] for v in order}
    for u, v in graph.edges:
        if u in index and v in index:
            preds[v].append(u)

    idom: dict[str, str | None] = {v: None for v in order}
    idom[SPONSOR] = SPONSOR
    changed = True
    while changed:
        changed = False
        for v in order[1:]:
            candidates = [p for p in preds[v] if idom[p] is not None]
            new = candidates[0]
            for p in candidates[1:]:
                new = _intersect(new, p, idom, index)
            if idom[v] != new:
                idom[v] = new
                changed = True

    parent = {v: idom[v] for v in order[1:]}
    children: dict[str, list[str]] = {v: [] for v in order}
    for v in sorted(parent):
        children[parent[v]].append(v)

    subtree: dict[str, frozenset[str]] = {}
    for v in reversed(order):
        acc: set[str] = set()
        for c in children[v]:
            acc.add(c)
            acc.update(subtree[c])
        subtree[v] = frozenset(acc)

    root_branches = tuple(children[SPONSOR])
    branch_of = {}
    for k, m in enumerate(root_branches):
        branch_of[m] = k
        for v in subtree[m]:
            branch_of[v] = k
    subtree.pop(SPONSOR)
    return CriticalTree(
        parent=parent,
        children={v: tuple(cs) for v, cs in children.items()},
        subtree=subtree,
        root_branches=root_branches,
        branch_of=branch_of,
    )


def _reverse_postorder(graph: InducedGraph) -> list[str]:
    order: list[str] = []
    seen = {SPONSOR}
    stack: list[tuple[str, int]] = [(SPONSOR, 0)]
    while stack:
        v, i = stack[-1]
        succ = graph.successors.get(v, ())
        if i < len(succ):
            stack[-1] = (v, i + 1)
            w = succ[i]
            if w not in seen:
                seen.add(w)
                stack.append((w, 0))
        else:
            order.append(v)
            stack.pop()
    order.reverse()
    return order


def _intersect(a: str, b: str, idom: dict, index: dict) -> str:
    while a != b:
        while index[a] > index[b]:
            a = idom[a]
        while index[b] > index[a]:
            b = idom[b]
    return a

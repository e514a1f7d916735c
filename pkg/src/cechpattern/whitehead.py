"""Whitehead graphs of finite subtrees, their nerves, and frontier projection.

The vertices of ``Wh(X)`` are the actual tree vertices adjacent to ``X``; at
``X = {e}`` they are the 2n letters.  The trivial cover belonging to the empty
subtree has the single vertex ``TOP`` (``None``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping

from .group import (
    EMPTY,
    Subtree,
    Word,
    format_word,
    inverse,
    multiply,
    step,
    word_key,
)
from .pattern import LinePattern, line_key, lines_meeting_subtree, lines_through_vertex

TOP = None


def edge_key(u, v) -> tuple:
    """Nerve edges are stored as shortlex-ordered pairs."""
    return (u, v) if word_key(u) <= word_key(v) else (v, u)


@dataclass(frozen=True, eq=False)
class Nerve:
    vertices: tuple
    edges: frozenset  # of shortlex-ordered pairs

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (word_key(e[0]), word_key(e[1])))


@dataclass(frozen=True, eq=False)
class WhiteheadGraph:
    base: Subtree
    vertices: tuple
    edges: Mapping  # Line -> (backward exit, forward exit)

    @cached_property
    def nerve(self) -> Nerve:
        return Nerve(self.vertices, frozenset(edge_key(*p) for p in self.edges.values()))

    @cached_property
    def edge_lines(self) -> dict:
        """Nerve edge -> lines running along it."""
        out: dict = {}
        for line, pair in self.edges.items():
            out.setdefault(edge_key(*pair), []).append(line)
        return out

    def edge_list(self) -> list:
        return [(line, self.edges[line]) for line in sorted(self.edges, key=line_key)]

    def multiplicities(self) -> dict:
        return {e: len(ls) for e, ls in self.edge_lines.items()}


@lru_cache(maxsize=4096)
def wh_subtree(P: LinePattern, X: Subtree) -> WhiteheadGraph:
    if not len(X):
        return WhiteheadGraph(EMPTY, (TOP,), {})
    return WhiteheadGraph(X, tuple(X.frontier(P.rank)), lines_meeting_subtree(P, X))


def wh_vertex(P: LinePattern, v: Word) -> WhiteheadGraph:
    return wh_subtree(P, Subtree(frozenset([v])))


def components(W: WhiteheadGraph) -> list[frozenset]:
    parent = {v: v for v in W.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in W.edges.values():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict = {}
    for v in W.vertices:
        groups.setdefault(find(v), set()).add(v)
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda c: min(word_key(v) for v in c))
    return comps


def nerve(W: WhiteheadGraph) -> Nerve:
    return W.nerve


def is_connected_graph(W: WhiteheadGraph) -> bool:
    return len(components(W)) == 1


@dataclass(frozen=True)
class EdgePartition:
    """Partition of the positions ``(word_index, cyclic position)`` of ``Wh(v)``."""

    blocks: frozenset  # of frozensets of positions

    def block_of(self, p) -> frozenset:
        for b in self.blocks:
            if p in b:
                return b
        raise KeyError(p)

    def refines(self, other: "EdgePartition") -> bool:
        """Every block of self lies inside a block of other."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def sorted_blocks(self) -> list:
        return sorted((sorted(b) for b in self.blocks))


def position_exits(P: LinePattern, X: Subtree, v: Word) -> dict:
    """Position at ``v`` -> exit pair in ``Wh(X)`` of the line through it."""
    if v not in X:
        raise ValueError(f"{format_word(v)} is not in {X}")
    W = wh_subtree(P, X)
    return {(c.word_index, c.position): W.edges[c.line] for c in lines_through_vertex(P, v)}


def induced_partition(P: LinePattern, X: Subtree, v: Word) -> EdgePartition:
    groups: dict = {}
    for pos, pair in position_exits(P, X, v).items():
        groups.setdefault(frozenset(pair), set()).add(pos)
    return EdgePartition(frozenset(frozenset(g) for g in groups.values()))


class NotNested(ValueError):
    pass


def project_vertex(X: Subtree, a: Word) -> Word:
    """The neighbour of X on the geodesic from X to ``a`` (``a`` outside X)."""
    if not len(X):
        return TOP
    if a in X:
        raise ValueError(f"{format_word(a)} lies in {X}")
    cur = a
    for x in multiply(inverse(a), X.root):
        nxt = step(cur, x)
        if nxt in X.vertices:
            return cur
        cur = nxt
    raise AssertionError("geodesic to the root never entered the subtree")


def frontier_projection(X: Subtree, X2: Subtree, rank: int) -> dict:
    if not X.vertices <= X2.vertices:
        raise NotNested(f"{X} is not contained in {X2}")
    if not len(X2):
        return {TOP: TOP}
    return {a: project_vertex(X, a) for a in X2.frontier(rank)}

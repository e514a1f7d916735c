"""Connectedness by Whitehead moves, independent of the cohomology code.

Minimize the total cyclic length of the pattern with type-II Whitehead
automorphisms, then read connectivity off the Whitehead graph at e.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .group import Word, cyclic_reduce, inverse, letters, reduce
from .pattern import LinePattern, cyclic_canonical


class InvalidMove(ValueError):
    pass


@dataclass(frozen=True)
class WhiteheadMove:
    """``y -> (x^-1 if y^-1 in A) y (x if y in A)`` for y != x^±1; ``x -> x``."""

    A: frozenset
    x: int

    def __post_init__(self):
        if self.x not in self.A or -self.x in self.A:
            raise InvalidMove(f"need x in A and x^-1 not in A (x={self.x}, A={sorted(self.A)})")

    def inverse(self) -> "WhiteheadMove":
        return WhiteheadMove(frozenset(self.A - {self.x}) | {-self.x}, -self.x)

    def image(self, y: int) -> Word:
        x = self.x
        if abs(y) == abs(x):
            return (y,)
        if y < 0:
            return inverse(self.image(-y))
        out = [y]
        if -y in self.A:
            out.insert(0, -x)
        if y in self.A:
            out.append(x)
        return tuple(out)


def all_moves(rank: int) -> list[WhiteheadMove]:
    """Every type-II move, in a fixed order."""
    out = []
    ls = letters(rank)
    for x in ls:
        others = [y for y in ls if abs(y) != abs(x)]
        for bits in product((0, 1), repeat=len(others)):
            A = frozenset([x] + [y for y, b in zip(others, bits) if b])
            out.append(WhiteheadMove(A, x))
    return out


def apply_move(words: Iterable[Word], move: WhiteheadMove) -> list[Word]:
    out = []
    for w in words:
        seq = []
        for y in w:
            seq.extend(move.image(y))
        out.append(cyclic_reduce(reduce(seq)))
    return out


def canonical_multiword(words: Iterable[Word]) -> tuple:
    """Cyclic words up to rotation and inversion, sorted."""
    return tuple(sorted((cyclic_canonical(w) for w in words), key=_wkey))


def _wkey(w: Word) -> tuple:
    return (len(w), tuple(2 * (abs(x) - 1) + (x < 0) for x in w))


def _total(words: Sequence[Word]) -> int:
    return sum(len(w) for w in words)


def _mkey(words: tuple) -> tuple:
    return (_total(words), tuple(_wkey(w) for w in words))


def minimize_multiword(words: Sequence[Word], rank: int, plateau_depth: int = 1) -> tuple:
    """Greedy descent of total cyclic length; returns the canonical multiword.

    Each round applies the length-decreasing move whose result is least.
    At the bottom, moves preserving length are explored ``plateau_depth``
    levels deep; a decrease found there is taken, and otherwise the walk
    moves to the least representative seen until that is the start itself,
    which makes the result idempotent.
    """
    moves = all_moves(rank)
    cur = canonical_multiword(words)
    while True:
        best = None
        for m in moves:
            nxt = canonical_multiword(apply_move(cur, m))
            if _total(nxt) < _total(cur) and (best is None or _mkey(nxt) < _mkey(best)):
                best = nxt
        if best is not None:
            cur = best
            continue
        seen = {cur}
        frontier = [cur]
        lower = None
        for _ in range(plateau_depth):
            nxt_frontier = []
            for ws in frontier:
                for m in moves:
                    nxt = canonical_multiword(apply_move(ws, m))
                    if _total(nxt) < _total(cur):
                        if lower is None or _mkey(nxt) < _mkey(lower):
                            lower = nxt
                    elif _total(nxt) == _total(cur) and nxt not in seen:
                        seen.add(nxt)
                        nxt_frontier.append(nxt)
            frontier = nxt_frontier
        if lower is not None:
            cur = lower
            continue
        least = min(seen, key=_mkey)
        if least == cur:
            return cur
        cur = least


def oracle_connected(P: LinePattern, plateau_depth: int = 1) -> str:
    from .group import subtree
    from .whitehead import components, wh_subtree

    words = minimize_multiword(P.words, P.rank, plateau_depth)
    Q = LinePattern(P.rank, tuple(words))
    W = wh_subtree(Q, subtree([()]))
    return "Connected" if len(components(W)) == 1 else "Disconnected"


__all__ = [
    "InvalidMove",
    "WhiteheadMove",
    "all_moves",
    "apply_move",
    "canonical_multiword",
    "minimize_multiword",
    "oracle_connected",
]

"""Reduced words in a free group and finite subtrees of its Cayley tree.

A letter is a nonzero int: ``+i`` is the i-th basis element and ``-i`` its
inverse.  A word is a tuple of letters, always freely reduced; the same tuple
doubles as a vertex of the Cayley tree, with ``()`` the identity ``e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Letter = int
Word = tuple  # tuple[Letter, ...]

E: Word = ()

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


def letters(rank: int) -> list[Letter]:
    """All 2n letters in shortlex order a1 < A1 < a2 < A2 < ..."""
    out = []
    for i in range(1, rank + 1):
        out.extend((i, -i))
    return out


def letter_key(x: Letter) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


def word_key(w) -> tuple:
    """Shortlex sort key.  ``None`` (the single set of the trivial cover) sorts first."""
    if w is None:
        return (-1, ())
    return (len(w), tuple(2 * (abs(x) - 1) + (x < 0) for x in w))


def reduce(seq: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for x in seq:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(u: Word, v: Word) -> Word:
    k = 0
    n = min(len(u), len(v))
    while k < n and u[-1 - k] == -v[k]:
        k += 1
    return u[: len(u) - k] + v[k:]


def step(v: Word, x: Letter) -> Word:
    """The neighbour ``v·x`` of ``v`` in the Cayley tree."""
    if v and v[-1] == -x:
        return v[:-1]
    return v + (x,)


def inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Word, k: int) -> Word:
    if k < 0:
        w, k = inverse(w), -k
    out: Word = E
    for _ in range(k):
        out = multiply(out, w)
    return out


def distance(u: Word, v: Word) -> int:
    k = 0
    n = min(len(u), len(v))
    while k < n and u[k] == v[k]:
        k += 1
    return len(u) + len(v) - 2 * k


def geodesic(u: Word, v: Word) -> list[Word]:
    """Vertices of the tree geodesic from ``u`` to ``v``, endpoints included."""
    path = [u]
    cur = u
    for x in multiply(inverse(u), v):
        cur = step(cur, x)
        path.append(cur)
    return path


def cyclic_reduce(w: Word) -> Word:
    w = reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def edge_label(u: Word, v: Word) -> Letter:
    """The letter ``x`` with ``v = u·x`` for adjacent vertices."""
    s = multiply(inverse(u), v)
    if len(s) != 1:
        raise ValueError(f"{format_word(u)} and {format_word(v)} are not adjacent")
    return s[0]


# -- text encoding ---------------------------------------------------------

_TOKEN = re.compile(r"([xX])(\d+)")


def parse_word(text: str, tokenized: bool = False) -> Word:
    """Parse ``"aabAB"`` (lowercase generator, uppercase inverse) or, with
    ``tokenized``, ``"x1 x2 X1"``.  The result is freely reduced."""
    text = text.strip()
    if tokenized:
        seq = []
        pos = 0
        for m in _TOKEN.finditer(text):
            if text[pos : m.start()].strip():
                raise ValueError(f"bad token in {text!r}")
            idx = int(m.group(2))
            if idx < 1:
                raise ValueError(f"bad generator index in {text!r}")
            seq.append(idx if m.group(1) == "x" else -idx)
            pos = m.end()
        if text[pos:].strip():
            raise ValueError(f"bad token in {text!r}")
        return reduce(seq)
    seq = []
    for ch in text:
        if ch in " ·*":
            continue
        low = ch.lower()
        if low not in _ALPHA:
            raise ValueError(f"bad letter {ch!r} in {text!r}")
        idx = _ALPHA.index(low) + 1
        seq.append(idx if ch == low else -idx)
    return reduce(seq)


def format_word(w, tokenized: bool = False) -> str:
    if w is None:
        return "D"
    if not w:
        return "e"
    if tokenized:
        return " ".join(("x" if x > 0 else "X") + str(abs(x)) for x in w)
    if max(abs(x) for x in w) > len(_ALPHA):
        return format_word(w, tokenized=True)
    return "".join(_ALPHA[x - 1] if x > 0 else _ALPHA[-x - 1].upper() for x in w)


def parse_vertex(text: str, tokenized: bool = False) -> Word:
    return E if text.strip() == "e" else parse_word(text, tokenized)


# -- finite subtrees ---------------------------------------------------------


class DisconnectedSubtree(ValueError):
    pass


@dataclass(frozen=True)
class Subtree:
    """A finite connected vertex set of the Cayley tree (possibly empty)."""

    vertices: frozenset
    root: Word | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        verts = frozenset(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            return
        tops = [v for v in verts if not v or v[:-1] not in verts]
        if len(tops) != 1:
            raise DisconnectedSubtree(
                "vertex set is not connected: "
                + ", ".join(sorted(format_word(v) for v in verts))
            )
        object.__setattr__(self, "root", tops[0])

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.vertices, key=word_key))

    def __le__(self, other: "Subtree") -> bool:
        return self.vertices <= other.vertices

    def __repr__(self) -> str:
        return "Subtree({" + ", ".join(format_word(v) for v in self) + "})"

    def degree(self, v: Word, rank: int) -> int:
        return sum(step(v, x) in self.vertices for x in letters(rank))

    def leaves(self, rank: int) -> list[Word]:
        if len(self) == 1:
            return list(self.vertices)
        return sorted((v for v in self.vertices if self.degree(v, rank) == 1), key=word_key)

    def frontier(self, rank: int) -> list[Word]:
        """Vertices outside the subtree adjacent to it, shortlex sorted."""
        out = set()
        verts = self.vertices
        for v in verts:
            for x in letters(rank):
                u = step(v, x)
                if u not in verts:
                    out.add(u)
        return sorted(out, key=word_key)

    def remove(self, v: Word) -> "Subtree":
        return Subtree(self.vertices - {v})

    def translate(self, g: Word) -> "Subtree":
        return Subtree(frozenset(multiply(g, v) for v in self.vertices))

    def union_hull(self, other: "Subtree") -> "Subtree":
        return hull(self.vertices | other.vertices)

    def diameter(self) -> int:
        verts = list(self.vertices)
        if len(verts) < 2:
            return 0
        return max(distance(u, v) for i, u in enumerate(verts) for v in verts[i + 1 :])


EMPTY = Subtree(frozenset())


def subtree(vertices: Iterable[Word]) -> Subtree:
    return Subtree(frozenset(vertices))


def sphere(rank: int, r: int) -> list[Word]:
    layer = [E]
    for _ in range(r):
        nxt = []
        for w in layer:
            for x in letters(rank):
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        layer = nxt
    return layer


def ball(rank: int, r: int) -> Subtree:
    verts = []
    layer = [E]
    verts.extend(layer)
    for _ in range(r):
        nxt = []
        for w in layer:
            for x in letters(rank):
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        verts.extend(nxt)
        layer = nxt
    return Subtree(frozenset(verts))


def ball_size(rank: int, r: int) -> int:
    if rank == 1:
        return 2 * r + 1
    q = 2 * rank - 1
    return 1 + 2 * rank * (q**r - 1) // (q - 1)


def hull(points: Iterable[Word]) -> Subtree:
    pts = list(points)
    if not pts:
        return EMPTY
    base = pts[0]
    out = {base}
    for p in pts[1:]:
        out.update(geodesic(base, p))
    return Subtree(frozenset(out))


def in_shadow(gate: Word, target: Word) -> bool:
    """Does the geodesic from e to ``target`` pass through ``gate``?"""
    if not gate:
        raise ValueError("the shadow of e from e is not defined")
    return target[: len(gate)] == gate


def longest_arc(X: Subtree) -> list[Word]:
    """A longest embedded arc in X as a vertex path.

    Among longest arcs the one whose sorted endpoint pair is shortlex least is
    chosen; it is traversed in the direction whose (in, out) label sequence is
    lexicographically least.
    """
    if not len(X):
        raise ValueError("empty subtree has no arcs")
    verts = sorted(X.vertices, key=word_key)
    best = None
    for i, u in enumerate(verts):
        for v in verts[i:]:
            key = (-distance(u, v), word_key(u), word_key(v))
            if best is None or key < best[0]:
                best = (key, u, v)
    _, u, v = best
    fwd = geodesic(u, v)
    back = fwd[::-1]

    def seq(path):
        return [
            (letter_key(edge_label(path[k - 1], path[k])), letter_key(edge_label(path[k], path[k + 1])))
            for k in range(1, len(path) - 1)
        ]

    return fwd if seq(fwd) <= seq(back) else back


def longest_arc_pairs(X: Subtree) -> list[tuple[Letter, Letter]]:
    path = longest_arc(X)
    return [
        (edge_label(path[k - 1], path[k]), edge_label(path[k], path[k + 1]))
        for k in range(1, len(path) - 1)
    ]

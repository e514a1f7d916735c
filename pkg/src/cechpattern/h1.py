"""Ȟ¹ of the decomposition space: leaf stripping, generators, relators.

A 1-cochain class is handled through its line function (see
:mod:`cechpattern.cech`).  Stripping a leaf ``v`` of the base removes every
line through ``v``: the lines through ``v`` are translated to ``e`` and
packaged as a class ``tau`` on a small subtree ``X_(a,P)`` grown from ``e`` in
the direction ``a`` pointing back into the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .cech import (
    Cochain0,
    Cochain1,
    LimitClass1,
    act1,
    coboundary,
    coboundary_matrix,
    cochain1_from_lines,
    oriented,
    refine1,
)
from .group import (
    E,
    Subtree,
    Word,
    ball,
    format_word,
    hull,
    inverse,
    letter_key,
    letters,
    multiply,
    step,
    word_key,
)
from .h0 import ModulePresentation, ZFElement, _columns, _kernel_relators, at_least, bounds
from .pattern import LinePattern, lines_through_vertex
from .whitehead import EdgePartition, position_exits, wh_subtree
from .zlinalg import solve_linear

SINGLE = Subtree(frozenset([E]))


class Unrealizable(ValueError):
    pass


@dataclass(frozen=True)
class DirectionPartitionKey:
    a: Optional[int]  # None when the base is a single vertex
    partition: EdgePartition

    def __str__(self) -> str:
        a = "-" if self.a is None else format_word((self.a,))
        return f"({a}, {len(self.partition.blocks)} blocks)"


class _Pos(NamedTuple):
    pos: tuple
    pair: frozenset  # unordered {in-letter, out-letter}
    sign: int  # +1 when in-letter precedes out-letter


def _positions(P: LinePattern) -> list[_Pos]:
    out = []
    for c in lines_through_vertex(P, E):
        x_in, x_out = c.back[0], c.fwd[0]
        out.append(_Pos((c.word_index, c.position), frozenset((x_in, x_out)), 1 if letter_key(x_in) < letter_key(x_out) else -1))
    return out


def _lines_at_e(P: LinePattern) -> dict:
    return {(c.word_index, c.position): c.line for c in lines_through_vertex(P, E)}


def _walk(P: LinePattern, pos: tuple, a: int, steps: int) -> list[Word]:
    """Vertices of the line through e at ``pos``, walking off in direction ``a``."""
    i, j = pos
    w = P.words[i]
    m = len(w)
    out = [E]
    cur = E
    if w[j] == a:
        for k in range(steps):
            cur = step(cur, w[(j + k) % m])
            out.append(cur)
    else:
        for k in range(steps):
            cur = step(cur, -w[(j - 1 - k) % m])
            out.append(cur)
    return out


def _divergence_point(P: LinePattern, p: tuple, q: tuple, a: int) -> Word:
    steps = 2 * max(len(w) for w in P.words) + 2
    while True:
        wp, wq = _walk(P, p, a, steps), _walk(P, q, a, steps)
        k = 0
        while k < len(wp) and wp[k] == wq[k]:
            k += 1
        if k < len(wp):
            return wp[k - 1]
        steps *= 2  # unreachable for distinct lines of a valid pattern


def _conflicts(P: LinePattern, partition: EdgePartition) -> list[tuple]:
    """Pairs of positions on the same Wh(e) edge lying in different blocks."""
    block = {}
    for b in partition.blocks:
        for p in b:
            block[p] = b
    info = _positions(P)
    out = []
    for x in range(len(info)):
        for y in range(x + 1, len(info)):
            p, q = info[x], info[y]
            if p.pair == q.pair and block[p.pos] is not block[q.pos]:
                out.append((p, q))
    return out


def separates(P: LinePattern, X: Subtree, key: DirectionPartitionKey) -> bool:
    """Positions in different blocks with the same Wh(e) edge exit X differently."""
    exits = position_exits(P, X, E)
    return all(exits[p.pos] != exits[q.pos] for p, q in _conflicts(P, key.partition))


def minimal_subtree_for_partition(P: LinePattern, key: DirectionPartitionKey, verify: bool = False) -> Subtree:
    """Least subtree containing e, grown in direction ``key.a``, on which the
    blocks of ``key.partition`` sharing a Wh(e) edge are told apart.

    Two such lines must be kept inside until their last common vertex, so
    the answer is the hull of e and those divergence points.
    """
    points = [E]
    for p, q in _conflicts(P, key.partition):
        if key.a is None or key.a not in p.pair:
            raise Unrealizable(f"blocks on edge {sorted(map(format_word, [(x,) for x in p.pair]))} cannot be separated")
        points.append(_divergence_point(P, p.pos, q.pos, key.a))
    X = hull(points)
    if verify:
        if not separates(P, X, key):
            raise AssertionError("hull does not separate the partition")
        for leaf in X.leaves(P.rank):
            if leaf != E and separates(P, X.remove(leaf), key):
                raise AssertionError(f"{X} is not minimal: {format_word(leaf)} removable")
    return X


def finest_key(P: LinePattern, a: Optional[int]) -> DirectionPartitionKey:
    """Split every Wh(e) edge at ``a`` into single positions; keep the others whole."""
    groups: dict = {}
    for p in _positions(P):
        k = p.pos if a is not None and a in p.pair else p.pair
        groups.setdefault(k, set()).add(p.pos)
    return DirectionPartitionKey(a, EdgePartition(frozenset(frozenset(g) for g in groups.values())))


def _key_from_values(P: LinePattern, a, h: dict) -> DirectionPartitionKey:
    groups: dict = {}
    for p in _positions(P):
        groups.setdefault((p.pair, h.get(p.pos, 0)), set()).add(p.pos)
    return DirectionPartitionKey(a, EdgePartition(frozenset(frozenset(g) for g in groups.values())))


def class_at_e(P: LinePattern, f_pos: dict, a: Optional[int]) -> tuple:
    """A class whose lines through e carry ``f_pos`` (position -> value) and
    whose other lines carry 0, on its least base grown in direction ``a``."""
    signs = {p.pos: p.sign for p in _positions(P)}
    key = _key_from_values(P, a, {p: n * signs[p] for p, n in f_pos.items()})
    X = minimal_subtree_for_partition(P, key)
    at_e = _lines_at_e(P)
    f = {at_e[p]: n for p, n in f_pos.items() if n}
    return LimitClass1(P, cochain1_from_lines(P, X, f)), key


# -- stripping -----------------------------------------------------------------


class StripStep(NamedTuple):
    key: DirectionPartitionKey
    tau: LimitClass1  # lives near e
    g: Word  # the term is act(tau, g); g = v^-1
    coefficients: dict  # nerve edge of Wh(base(tau)) -> value


def _neighbour_letter(X: Subtree, v: Word, rank: int) -> Optional[int]:
    if len(X) == 1:
        return None
    for x in letters(rank):
        if step(v, x) in X.vertices:
            return x
    raise ValueError(f"{format_word(v)} has no neighbour in {X}")


def strip_leaf1(P: LinePattern, sigma: LimitClass1, v: Word) -> tuple[StripStep, LimitClass1]:
    X = sigma.base
    if v not in X or (len(X) > 1 and X.degree(v, P.rank) != 1):
        raise ValueError(f"{format_word(v)} is not a leaf of {X}")
    f = sigma.lines()
    crossings = lines_through_vertex(P, v)
    f_pos = {(c.word_index, c.position): f.get(c.line, 0) for c in crossings}
    a = _neighbour_letter(X, v, P.rank)
    tau, key = class_at_e(P, f_pos, a)
    through_v = {c.line for c in crossings}
    rest = {l: n for l, n in f.items() if l not in through_v}
    Y = X.remove(v)
    if len(Y):
        remainder = LimitClass1(P, cochain1_from_lines(P, Y, rest))
    else:
        remainder = LimitClass1(P, Cochain1(Y, {}))
    coeffs = dict(tau.cochain.values)
    return StripStep(key, tau, inverse(v), coeffs), remainder


@lru_cache(maxsize=256)
def elimination_order(X: Subtree, rank: int) -> tuple:
    """``(v, a)`` pairs: repeatedly the shortlex-largest leaf and its inward letter."""
    out = []
    cur = X
    while len(cur):
        v = cur.leaves(rank)[-1]
        out.append((v, _neighbour_letter(cur, v, rank)))
        cur = cur.remove(v)
    return tuple(out)


def strip_all(P: LinePattern, sigma: LimitClass1) -> list[StripStep]:
    """Strip the shortlex-largest leaf until nothing is left.

    ``sigma == Σ act(step.tau, step.g)`` over the returned steps.  Works on
    the line function directly; each step is what :func:`strip_leaf1` does.
    """
    f = dict(sigma.lines())
    out = []
    for v, a in elimination_order(sigma.base, P.rank):
        if not f:
            break
        crossings = lines_through_vertex(P, v)
        f_pos = {}
        for c in crossings:
            n = f.pop(c.line, 0)
            if n:
                f_pos[(c.word_index, c.position)] = n
        if f_pos:
            tau, key = class_at_e(P, f_pos, a)
            out.append(StripStep(key, tau, inverse(v), dict(tau.cochain.values)))
    if f:
        raise AssertionError("lines left over after stripping")
    return out


def reconstruct(P: LinePattern, steps: Sequence[StripStep], base: Subtree) -> LimitClass1:
    total = LimitClass1(P, Cochain1(base, {}))
    for st in steps:
        total = total + st.tau.act(st.g)
    return total


# -- generators ----------------------------------------------------------------


def canonical_key1(c: LimitClass1) -> tuple:
    return (
        tuple(sorted(word_key(v) for v in c.base.vertices)),
        tuple(sorted(((word_key(u), word_key(w)), n) for (u, w), n in c.cochain.values.items())),
    )


def canonical_form1(c: LimitClass1) -> tuple[LimitClass1, Word, int]:
    """``(rep, s, sign)`` with ``c == sign * act(rep, s^-1)``.

    rep is the least key over support translates, scaled so that its first
    edge value is positive.
    """
    best = None
    for s in c.base.vertices:
        t = c.act(s)
        vals = t.cochain.values
        sign = 1
        if vals:
            first = min(vals, key=lambda e: (word_key(e[0]), word_key(e[1])))
            sign = 1 if vals[first] > 0 else -1
        if sign < 0:
            t = -t
        k = canonical_key1(t)
        if best is None or k < best[0]:
            best = (k, t, s, sign)
    return best[1], best[2], best[3]


def _fine_indicators(P: LinePattern, tau: LimitClass1, a: Optional[int]) -> list[tuple[LimitClass1, int]]:
    """Split a class near e into single nerve-edge pieces, each on its own least base.

    The pieces are the nerve edges through e of the finest base in direction ``a``.
    """
    Xf = fine_base(P, a)
    fine = refine1(P, tau.cochain, Xf)
    W = wh_subtree(P, Xf)
    crossings = lines_through_vertex(P, E)
    out = []
    for edge, n in sorted(fine.values.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1]))):
        lines = set(W.edge_lines[edge])
        f_pos = {}
        for c in crossings:
            if c.line in lines:
                f_pos[(c.word_index, c.position)] = oriented({edge: 1}, *W.edges[c.line])
        if not f_pos:
            raise ValueError("class has values on lines missing e")
        ind, _ = class_at_e(P, f_pos, a)
        out.append((ind, n))
    return out


def fine_base(P: LinePattern, a: Optional[int]) -> Subtree:
    if a is None:
        return SINGLE
    return minimal_subtree_for_partition(P, finest_key(P, a))


def fine_generators(P: LinePattern) -> list[LimitClass1]:
    """Every single-edge class on a finest base, canonicalized and deduplicated."""
    out, seen = [], set()
    through = set(_lines_at_e(P).values())
    for a in [None] + letters(P.rank):
        Xf = fine_base(P, a)
        W = wh_subtree(P, Xf)
        for edge in W.nerve.sorted_edges():
            if not through.intersection(W.edge_lines[edge]):
                continue
            tau = LimitClass1(P, Cochain1(Xf, {edge: 1}))
            for ind, _ in _fine_indicators(P, tau, a):
                rep, _, _ = canonical_form1(ind)
                k = canonical_key1(rep)
                if k not in seen:
                    seen.add(k)
                    out.append(rep)
    return out


@dataclass
class Generators1:
    classes: list
    certified: bool
    fine_radius: int  # radius of the largest finest base
    fine_size: int  # its vertex count
    index: dict  # canonical key -> generator index

    def express(self, c: LimitClass1, a: Optional[int], g: Word = E) -> ZFElement:
        """``act(c, g)`` over the generators, for a class near e grown in direction a."""
        terms = []
        for ind, n in _fine_indicators(c.pattern, c, a):
            rep, s, sign = canonical_form1(ind)
            j = self.index[canonical_key1(rep)]
            terms.append((j, multiply(inverse(s), g), sign * n))
        return ZFElement(terms)


def generators1(P: LinePattern, radius: int) -> Generators1:
    """Single-edge classes produced by stripping every nerve-edge indicator of
    Wh(ball(radius)), seeded with the nerve edges of Wh(e)."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    classes, index = [], {}

    def add(c):
        rep, _, _ = canonical_form1(c)
        k = canonical_key1(rep)
        if k not in index:
            index[k] = len(classes)
            classes.append(rep)

    W0 = wh_subtree(P, SINGLE)
    for edge in W0.nerve.sorted_edges():
        add(LimitClass1(P, Cochain1(SINGLE, {edge: 1})))
    X = ball(P.rank, radius)
    done = set()
    for edge in wh_subtree(P, X).nerve.sorted_edges():
        sigma = LimitClass1(P, Cochain1(X, {edge: 1}))
        for st in strip_all(P, sigma):
            k = (canonical_key1(st.tau), st.key.a)
            if k in done:
                continue
            done.add(k)
            for ind, _ in _fine_indicators(P, st.tau, st.key.a):
                add(ind)
    fine = fine_generators(P)
    certified = all(canonical_key1(c) in index for c in fine)
    sizes = [(len(fine_base(P, a)), max((len(v) for v in fine_base(P, a).vertices), default=0)) for a in [None] + letters(P.rank)]
    size, rad = max(sizes)
    return Generators1(classes, certified, rad, size, index)


# -- relators and presentation ----------------------------------------------------


def evaluation_matrix1(P: LinePattern, gens: Sequence[LimitClass1], R: int):
    X = ball(P.rank, R)
    edges = wh_subtree(P, X).nerve.sorted_edges()
    row = {e: i for i, e in enumerate(edges)}
    cols = _columns(gens, P.rank, R)
    M = [[0] * len(cols) for _ in edges]
    for k, (j, g) in enumerate(cols):
        for e, n in refine1(P, act1(gens[j].cochain, g), X).values.items():
            M[row[e]][k] = n
    return M, cols, edges


def relators1(P: LinePattern, gens: Sequence[LimitClass1], R: int) -> list[ZFElement]:
    M, cols, _ = evaluation_matrix1(P, gens, R)
    return _kernel_relators(M, cols)


def image_d_generators(P: LinePattern) -> list[LimitClass1]:
    """``d(delta_a)`` for every letter a, each on the base {e}."""
    out = []
    for x in letters(P.rank):
        d = coboundary(P, Cochain0(SINGLE, {(x,): 1}))
        out.append(LimitClass1(P, d))
    return out


def image_d_relators(P: LinePattern, gens: Generators1) -> list[ZFElement]:
    return [gens.express(c, None) for c in image_d_generators(P)]


def presentation1(P: LinePattern, r: int, R: int) -> ModulePresentation:
    g1 = generators1(P, r)
    rels = relators1(P, g1.classes, R)
    img = image_d_relators(P, g1)
    led = bounds(P, g1.classes)
    certified = g1.certified and at_least(R, led.N_relators)
    notes = [
        f"generators certified: {g1.certified}",
        f"largest finest base: {g1.fine_size} vertices, radius {g1.fine_radius}",
        f"image-d relators: {len(img)}",
    ]
    pres = ModulePresentation(g1.classes, rels + [x for x in img if x], r, R, certified, led, degree=1, notes=notes)
    pres.image_d = img  # type: ignore[attr-defined]
    return pres


# -- triviality ------------------------------------------------------------------


class Triviality(NamedTuple):
    trivial: bool
    witness: Optional[Cochain0]


def is_trivial_class1(P: LinePattern, sigma: LimitClass1) -> Triviality:
    """Solve ``d tau = sigma`` over ℤ on the base of sigma."""
    X = sigma.base
    if not sigma.cochain.values:
        return Triviality(True, Cochain0(X, {}))
    M, edges, verts = coboundary_matrix(P, X)
    b = [sigma.cochain.values.get(e, 0) for e in edges]
    x = solve_linear(M, b, len(verts))
    if x is None:
        return Triviality(False, None)
    return Triviality(True, Cochain0(X, {v: n for v, n in zip(verts, x) if n}))


__all__ = [
    "DirectionPartitionKey",
    "Generators1",
    "StripStep",
    "Triviality",
    "Unrealizable",
    "canonical_form1",
    "evaluation_matrix1",
    "fine_generators",
    "generators1",
    "image_d_generators",
    "image_d_relators",
    "is_trivial_class1",
    "minimal_subtree_for_partition",
    "presentation1",
    "reconstruct",
    "relators1",
    "separates",
    "strip_all",
    "strip_leaf1",
]

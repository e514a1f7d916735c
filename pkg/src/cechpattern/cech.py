"""Čech cochains of the covers U_X, refinement, and limit classes.

A 0-cochain on ``U_X`` assigns integers to the vertices of ``Wh(X)``; a
1-cochain assigns integers to nerve edges, stored on the shortlex-ordered
pair ``(u, v)`` and read as the value on the oriented edge u -> v (the
opposite orientation carries the negative).  Values are kept sparse: missing
keys are zero.

A 1-cochain is equivalently a function on pattern lines: a line crossing X
gets the value of the nerve edge it runs along, oriented in the line's own
direction.  That function is unchanged by refinement and by translation, so
it is what decides equality of direct-limit classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, NamedTuple

from .group import EMPTY, Subtree, Word, multiply, word_key
from .pattern import LinePattern
from .whitehead import TOP, components, edge_key, frontier_projection, wh_subtree
from .zlinalg import invariant_factors


class NotACocycle(ValueError):
    pass


class NotMeasurable(ValueError):
    """A line function that no cochain on the requested base realizes."""


def _sparse(values: Mapping) -> dict:
    return {k: v for k, v in values.items() if v}


def oriented(values: Mapping, u, v) -> int:
    if word_key(u) <= word_key(v):
        return values.get((u, v), 0)
    return -values.get((v, u), 0)


@dataclass(frozen=True, eq=False)
class Cochain0:
    base: Subtree
    values: Mapping  # Wh(base) vertex -> int

    def __eq__(self, other):
        return isinstance(other, Cochain0) and self.base == other.base and _sparse(self.values) == _sparse(other.values)

    def value(self, a) -> int:
        return self.values.get(a, 0)


@dataclass(frozen=True, eq=False)
class Cochain1:
    base: Subtree
    values: Mapping  # ordered nerve edge -> int

    def __eq__(self, other):
        return isinstance(other, Cochain1) and self.base == other.base and _sparse(self.values) == _sparse(other.values)

    def value(self, u, v) -> int:
        return oriented(self.values, u, v)


def cochain0(P: LinePattern, base: Subtree, values: Mapping) -> Cochain0:
    verts = set(wh_subtree(P, base).vertices)
    bad = [k for k in values if k not in verts]
    if bad:
        raise ValueError(f"{len(bad)} keys are not vertices of Wh({base})")
    return Cochain0(base, _sparse(values))


def cochain1(P: LinePattern, base: Subtree, values: Mapping) -> Cochain1:
    edges = wh_subtree(P, base).nerve.edges
    out = {}
    for (u, v), n in values.items():
        k = edge_key(u, v)
        if k not in edges:
            raise ValueError(f"{(u, v)} is not a nerve edge of Wh({base})")
        n = n if k == (u, v) else -n
        if n:
            out[k] = out.get(k, 0) + n
    return Cochain1(base, _sparse(out))


def coboundary(P: LinePattern, sigma: Cochain0) -> Cochain1:
    """``(d sigma)(u, v) = sigma(v) - sigma(u)`` on each nerve edge with u < v."""
    N = wh_subtree(P, sigma.base).nerve
    vals = sigma.values
    return Cochain1(sigma.base, _sparse({(u, v): vals.get(v, 0) - vals.get(u, 0) for u, v in N.edges}))


@lru_cache(maxsize=4096)
def _projection(X: Subtree, X2: Subtree, rank: int) -> dict:
    return frontier_projection(X, X2, rank)


def refine0(P: LinePattern, sigma: Cochain0, X2: Subtree) -> Cochain0:
    if X2 == sigma.base:
        return sigma
    pi = _projection(sigma.base, X2, P.rank)
    vals = sigma.values
    return Cochain0(X2, _sparse({a: vals.get(b, 0) for a, b in pi.items()}))


def refine1(P: LinePattern, tau: Cochain1, X2: Subtree) -> Cochain1:
    """Old nerve edges keep their (oriented) value, new ones get 0."""
    if X2 == tau.base:
        return tau
    pi = _projection(tau.base, X2, P.rank)
    if not tau.values:
        _ = pi  # still validates nesting
        return Cochain1(X2, {})
    old = wh_subtree(P, tau.base).nerve.edges
    out = {}
    for u, v in wh_subtree(P, X2).nerve.edges:
        pu, pv = pi[u], pi[v]
        if pu != pv and edge_key(pu, pv) in old:
            n = oriented(tau.values, pu, pv)
            if n:
                out[(u, v)] = n
    return Cochain1(X2, out)


def translate_subtree(X: Subtree, g: Word) -> Subtree:
    return X if not g else X.translate(g)


def act0(sigma: Cochain0, g: Word) -> Cochain0:
    """Right action: everything is moved by ``g^-1``."""
    if not g:
        return sigma
    h = tuple(-x for x in reversed(g))
    if not len(sigma.base):
        return sigma
    return Cochain0(sigma.base.translate(h), {multiply(h, a): n for a, n in sigma.values.items()})


def act1(tau: Cochain1, g: Word) -> Cochain1:
    if not g:
        return tau
    h = tuple(-x for x in reversed(g))
    out = {}
    for (u, v), n in tau.values.items():
        hu, hv = multiply(h, u), multiply(h, v)
        if word_key(hu) <= word_key(hv):
            out[(hu, hv)] = n
        else:
            out[(hv, hu)] = -n
    return Cochain1(tau.base.translate(h) if len(tau.base) else tau.base, out)


def line_values(P: LinePattern, tau: Cochain1) -> dict:
    """The refinement-invariant line function of a 1-cochain (nonzero lines only)."""
    out = {}
    if not tau.values:
        return out
    for line, (b, f) in wh_subtree(P, tau.base).edges.items():
        n = oriented(tau.values, b, f)
        if n:
            out[line] = n
    return out


def cochain1_from_lines(P: LinePattern, base: Subtree, f: Mapping) -> Cochain1:
    W = wh_subtree(P, base)
    out: dict = {}
    for line, n in f.items():
        if not n:
            continue
        if line not in W.edges:
            raise NotMeasurable(f"{line} does not meet {base}")
    for line, (b, fw) in W.edges.items():
        n = f.get(line, 0)
        k = edge_key(b, fw)
        signed = n if k == (b, fw) else -n
        if k in out and out[k] != signed:
            raise NotMeasurable(f"parallel lines on {k} carry different values")
        out[k] = signed
    return Cochain1(base, _sparse(out))


# -- limit classes -----------------------------------------------------------


def _hull2(X: Subtree, Y: Subtree) -> Subtree:
    if X.vertices <= Y.vertices:
        return Y
    if Y.vertices <= X.vertices:
        return X
    return X.union_hull(Y)


class LimitClass0:
    """An element of Ȟ⁰(D, ℤ): a cocycle on some U_X, modulo refinement."""

    __slots__ = ("pattern", "cochain")

    def __init__(self, pattern: LinePattern, cochain: Cochain0, check: bool = True):
        self.pattern = pattern
        self.cochain = cochain
        if check:
            vals = cochain.values
            for u, v in wh_subtree(pattern, cochain.base).edges.values():
                if vals.get(u, 0) != vals.get(v, 0):
                    raise NotACocycle(f"values differ across a line on {(u, v)}")

    @classmethod
    def constant(cls, pattern: LinePattern, n: int = 1) -> "LimitClass0":
        return cls(pattern, Cochain0(EMPTY, _sparse({TOP: n})), check=False)

    @classmethod
    def from_components(cls, pattern: LinePattern, base: Subtree, labels: Mapping) -> "LimitClass0":
        """``labels`` maps a component (any of its vertices, or the frozenset) to an integer."""
        W = wh_subtree(pattern, base)
        comps = components(W)
        vals = {}
        for key, n in labels.items():
            comp = key if isinstance(key, frozenset) else next(c for c in comps if key in c)
            for a in comp:
                vals[a] = n
        return cls(pattern, Cochain0(base, _sparse(vals)))

    @property
    def base(self) -> Subtree:
        return self.cochain.base

    def refine(self, X2: Subtree) -> "LimitClass0":
        return LimitClass0(self.pattern, refine0(self.pattern, self.cochain, X2), check=False)

    def component_labels(self) -> list:
        W = wh_subtree(self.pattern, self.base)
        return [(c, self.cochain.value(next(iter(c)))) for c in components(W)]

    def _binary(self, other: "LimitClass0", sign: int) -> "LimitClass0":
        X = _hull2(self.base, other.base)
        a = refine0(self.pattern, self.cochain, X).values
        b = refine0(self.pattern, other.cochain, X).values
        vals = dict(a)
        for k, n in b.items():
            vals[k] = vals.get(k, 0) + sign * n
        return LimitClass0(self.pattern, Cochain0(X, _sparse(vals)), check=False)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, n: int):
        return LimitClass0(self.pattern, Cochain0(self.base, _sparse({k: n * v for k, v in self.cochain.values.items()})), check=False)

    __rmul__ = __mul__

    def act(self, g: Word) -> "LimitClass0":
        return LimitClass0(self.pattern, act0(self.cochain, g), check=False)

    def is_zero(self) -> bool:
        return not self.cochain.values

    def __eq__(self, other):
        if not isinstance(other, LimitClass0):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        from .group import format_word

        vals = ", ".join(f"{format_word(k)}:{n}" for k, n in sorted(self.cochain.values.items(), key=lambda kv: word_key(kv[0])))
        return f"LimitClass0(base={self.base}, values={{{vals}}})"


class LimitClass1:
    """An element of the direct limit of the 1-cochain groups C¹(U_X, ℤ)."""

    __slots__ = ("pattern", "cochain")

    def __init__(self, pattern: LinePattern, cochain: Cochain1):
        self.pattern = pattern
        self.cochain = cochain

    @classmethod
    def from_lines(cls, pattern: LinePattern, base: Subtree, f: Mapping) -> "LimitClass1":
        return cls(pattern, cochain1_from_lines(pattern, base, f))

    @property
    def base(self) -> Subtree:
        return self.cochain.base

    def lines(self) -> dict:
        return line_values(self.pattern, self.cochain)

    def refine(self, X2: Subtree) -> "LimitClass1":
        return LimitClass1(self.pattern, refine1(self.pattern, self.cochain, X2))

    def _binary(self, other: "LimitClass1", sign: int) -> "LimitClass1":
        X = _hull2(self.base, other.base)
        a = refine1(self.pattern, self.cochain, X).values
        b = refine1(self.pattern, other.cochain, X).values
        vals = dict(a)
        for k, n in b.items():
            vals[k] = vals.get(k, 0) + sign * n
        return LimitClass1(self.pattern, Cochain1(X, _sparse(vals)))

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, n: int):
        return LimitClass1(self.pattern, Cochain1(self.base, _sparse({k: n * v for k, v in self.cochain.values.items()})))

    __rmul__ = __mul__

    def act(self, g: Word) -> "LimitClass1":
        return LimitClass1(self.pattern, act1(self.cochain, g))

    def is_zero(self) -> bool:
        return not self.cochain.values

    def __eq__(self, other):
        if not isinstance(other, LimitClass1):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"LimitClass1(base={self.base}, edges={len(self.cochain.values)})"


def act(c, g: Word):
    """Right F-action on limit classes."""
    return c.act(g)


class CoverCohomology(NamedTuple):
    h0_rank: int
    h1_rank: int
    h1_torsion: tuple


def coboundary_matrix(P: LinePattern, X: Subtree):
    """Rows: nerve edges (sorted); columns: Wh(X) vertices (sorted)."""
    W = wh_subtree(P, X)
    verts = list(W.vertices)
    col = {v: j for j, v in enumerate(verts)}
    edges = W.nerve.sorted_edges()
    M = []
    for u, v in edges:
        row = [0] * len(verts)
        row[col[v]] += 1
        row[col[u]] -= 1
        M.append(row)
    return M, edges, verts


def cover_cohomology(P: LinePattern, X: Subtree) -> CoverCohomology:
    M, edges, verts = coboundary_matrix(P, X)
    d = invariant_factors(M, len(verts))
    r = len(d)
    return CoverCohomology(len(verts) - r, len(edges) - r, tuple(x for x in d if x > 1))

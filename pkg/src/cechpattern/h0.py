"""Ȟ⁰ of the decomposition space: supports, splitting, generators, relators.

Classes are :class:`~cechpattern.cech.LimitClass0` values.  A presentation
is a list of generator classes together with relators in the free module
ℤF^k, whose elements are :class:`ZFElement` sums ``Σ n (e_j g)``.  The
evaluation map sends ``e_j g`` to ``act(gens[j], g)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .cech import Cochain0, LimitClass0, refine0
from .group import (
    E,
    Subtree,
    Word,
    ball,
    ball_size,
    format_word,
    inverse,
    letters,
    multiply,
    step,
    word_key,
)
from .pattern import LinePattern, lines_through_vertex
from .whitehead import TOP, components, is_connected_graph, wh_subtree
from .zlinalg import hermite_rows, invariant_factors, kernel_basis

# -- bounds ------------------------------------------------------------------

_INT_DIGIT_LIMIT = 100_000


@dataclass(frozen=True)
class Symbolic:
    """A positive integer too large to evaluate, kept as an expression.

    ``log10`` is a float estimate used only to compare against small radii.
    """

    expr: str
    log10: float

    def __str__(self) -> str:
        return self.expr

    def exceeds(self, n: int) -> bool:
        return self.log10 > math.log10(max(n, 1))



def at_least(radius: int, bound) -> bool:
    """``radius >= bound`` for exact or symbolic bounds."""
    if isinstance(bound, Symbolic):
        return not bound.exceeds(radius)
    return radius >= bound


def _ball_size_bound(rank: int, r):
    if rank == 1:
        return 2 * r + 1
    q = 2 * rank - 1
    if r * math.log10(q) > _INT_DIGIT_LIMIT:
        return Symbolic(f"1 + {2 * rank}*({q}^{r} - 1)/{q - 1}", r * math.log10(q) + math.log10(2 * rank / (q - 1)))
    return ball_size(rank, r)


@dataclass(frozen=True)
class BoundLedger:
    n: int
    k: int
    K: int
    M: int
    N_generators: int
    D_diam: Optional[int] = None
    L_ball: Optional[int] = None
    K_preimage: object = None
    N_relators: object = None

    def as_dict(self) -> dict:
        def enc(x):
            if x is None or isinstance(x, int) and x.bit_length() < 64:
                return x
            return str(x) if isinstance(x, Symbolic) else _int_text(x)

        return {name: enc(getattr(self, name)) for name in self.__dataclass_fields__}


def _int_text(x: int) -> str:
    return format(x, "d") if x.bit_length() < 14000 else f"<{x.bit_length()}-bit integer>"


def bounds(P: LinePattern, gens: Sequence[LimitClass0] | None = None) -> BoundLedger:
    """Exact search bounds.  The relator fields need the generators."""
    n, k = P.rank, P.total_length
    K = 2**k + 1
    M = (2 * n) ** 2 * K
    N = (2 * n) ** (M + 1) * (1 + 2 * n) + 1
    if gens is None:
        return BoundLedger(n, k, K, M, N)
    supports = [support0(g) if isinstance(g, LimitClass0) else g.base for g in gens]
    D = max((X.diameter() for X in supports), default=0)
    L = ball_size(n, (D + 1) // 2)
    if L * math.log10(2) + math.log10(M) > _INT_DIGIT_LIMIT:
        Kp: object = Symbolic(f"2^{L}*{M}", L * math.log10(2) + math.log10(M))
        Nr: object = Symbolic(f"|ball(2^{L}*{M} + {L})| + 1", math.inf)
    else:
        Kp = 2**L * M
        size = _ball_size_bound(n, Kp + L)
        Nr = size + 1 if isinstance(size, int) else Symbolic(f"{size.expr} + 1", size.log10)
    return BoundLedger(n, k, K, M, N, D, L, Kp, Nr)


# -- supports ------------------------------------------------------------------


def _children(X: Subtree, v: Word, rank: int) -> list:
    return [u for u in (step(v, x) for x in letters(rank)) if u not in X.vertices]


def _prune(X: Subtree, vals: dict, v: Word, rank: int):
    kids = _children(X, v, rank)
    first = vals.get(kids[0], 0)
    if any(vals.get(u, 0) != first for u in kids[1:]):
        return None
    Y = X.remove(v)
    nv = {a: n for a, n in vals.items() if a not in kids}
    if first:
        nv[TOP if not len(Y) else v] = first
    return Y, nv


def support0(c: LimitClass0, rng: random.Random | None = None) -> Subtree:
    return minimize0(c, rng).base


def minimize0(c: LimitClass0, rng: random.Random | None = None) -> LimitClass0:
    """The same class on its minimal support, found by pruning leaves.

    Any pruning order gives the same result; ``rng`` randomizes it for tests.
    """
    rank = c.pattern.rank
    X = c.base
    vals = dict(c.cochain.values)
    while len(X):
        leaves = X.leaves(rank)
        if rng is not None:
            rng.shuffle(leaves)
        for v in leaves:
            res = _prune(X, vals, v, rank)
            if res is not None:
                X, vals = res
                break
        else:
            break
    if X == c.base:
        return c
    return LimitClass0(c.pattern, Cochain0(X, vals), check=False)


def indicator0(P: LinePattern, X: Subtree, comp) -> LimitClass0:
    return LimitClass0(P, Cochain0(X, {a: 1 for a in comp}), check=False)


def canonical_key(c: LimitClass0) -> tuple:
    vals = c.cochain.values
    return (
        tuple(sorted(word_key(v) for v in c.base.vertices)),
        tuple(sorted((word_key(a), n) for a, n in vals.items())),
    )


def orbit_representative(c: LimitClass0) -> LimitClass0:
    """Translate of a minimized class with the least canonical key.

    Candidates are the translates putting one support vertex at e.
    """
    c = minimize0(c)
    if not len(c.base):
        return c
    best = None
    for s in c.base.vertices:
        t = c.act(s)
        k = canonical_key(t)
        if best is None or k < best[0]:
            best = (k, t)
    return best[1]


# -- splitting -----------------------------------------------------------------


class NotSplittable(ValueError):
    pass


class Split(NamedTuple):
    tau: LimitClass0
    remainder: LimitClass0
    v: Word
    w: Word


def _position_labels(c: LimitClass0, v: Word) -> dict:
    P = c.pattern
    W = wh_subtree(P, c.base)
    vals = c.cochain.values
    return {(x.word_index, x.position): vals.get(W.edges[x.line][0], 0) for x in lines_through_vertex(P, v)}


def _branch_letter(v: Word, u: Word) -> int:
    """First letter of the geodesic from v to u."""
    return multiply(inverse(v), u)[0]


def _split_at(c: LimitClass0, v: Word, w: Word) -> Split:
    P = c.pattern
    X = c.base
    rank = P.rank
    path = multiply(inverse(v), w)
    t = path[0]
    if path[-1] == -t:
        raise NotSplittable("t-branch at w points back at v")
    A = {u for u in X.vertices if u != v and _branch_letter(v, u) != t}
    wt = step(w, t)
    B = {u for u in X.vertices if u != w and multiply(inverse(w), u)[:1] == (t,)} if wt in X else set()
    if len(A) <= len(B):
        raise NotSplittable("A is not larger than B")
    g = multiply(w, inverse(v))
    ginv = inverse(g)
    Y = Subtree(frozenset(A | {v} | {multiply(ginv, b) for b in B}))
    vals = c.cochain.values
    rho = {}
    for f in Y.frontier(rank):
        src = multiply(g, f) if _branch_letter(v, f) == t else f
        n = vals.get(src, 0)
        if n:
            rho[f] = n
    tau = minimize0(LimitClass0(P, Cochain0(Y, rho)))
    rem = minimize0(c - tau)
    return Split(tau, rem, v, w)


def split0(c: LimitClass0, ledger: BoundLedger | None = None) -> Split:
    """Write ``c = tau + remainder`` with both supports strictly smaller.

    Searches ordered pairs ``v != w`` of support vertices, shortlex order,
    whose position labels agree.  ``ledger`` is accepted for reporting only;
    the arc-length precondition is not enforced.
    """
    c = minimize0(c)
    X = c.base
    size = len(X)
    if size < 2:
        raise NotSplittable("support has fewer than two vertices")
    verts = list(X)
    labels = {v: _position_labels(c, v) for v in verts}
    for v in verts:
        for w in verts:
            if v == w or labels[v] != labels[w]:
                continue
            try:
                s = _split_at(c, v, w)
            except NotSplittable:
                continue
            if len(s.tau.base) < size and len(s.remainder.base) < size:
                return s
    raise NotSplittable(f"no splitting pair in support of size {size}")


# -- generators ----------------------------------------------------------------


def generators0(P: LinePattern, radius: int) -> list[LimitClass0]:
    """Constant class, then orbit representatives of component indicators.

    The indicator of the last component of ``Wh(ball(radius))`` is the
    constant minus the others and is left out.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    X = ball(P.rank, radius)
    comps = components(wh_subtree(P, X))
    out = [LimitClass0.constant(P)]
    seen = {canonical_key(out[0])}
    for comp in comps[:-1]:
        rep = orbit_representative(indicator0(P, X, comp))
        k = canonical_key(rep)
        if k not in seen:
            seen.add(k)
            out.append(rep)
    return out


# -- free module ----------------------------------------------------------------


class ZFElement:
    """A finite sum ``Σ n (e_j g)`` in ℤF^k; immutable, zero terms dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        acc: dict = {}
        for j, g, n in terms:
            g = tuple(g)
            acc[(j, g)] = acc.get((j, g), 0) + n
        self.terms = tuple(
            sorted(((j, g, n) for (j, g), n in acc.items() if n), key=lambda t: (t[0], word_key(t[1])))
        )

    @classmethod
    def basis(cls, j: int, g: Word = E, n: int = 1) -> "ZFElement":
        return cls([(j, g, n)])

    def __add__(self, other: "ZFElement") -> "ZFElement":
        return ZFElement(self.terms + other.terms)

    def __sub__(self, other: "ZFElement") -> "ZFElement":
        return self + (-other)

    def __neg__(self) -> "ZFElement":
        return ZFElement((j, g, -n) for j, g, n in self.terms)

    def __mul__(self, h: Word) -> "ZFElement":
        """Right multiplication by a group element."""
        return ZFElement((j, multiply(g, h), n) for j, g, n in self.terms)

    def scale(self, m: int) -> "ZFElement":
        return ZFElement((j, g, m * n) for j, g, n in self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ZFElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{n}*e{j}[{format_word(g)}]" for j, g, n in self.terms)

    def to_json(self) -> list:
        return [{"gen": j, "g": format_word(g), "n": n} for j, g, n in self.terms]


def apply_p(x: ZFElement, gens: Sequence):
    """Evaluate ``x`` on generator classes (0- or 1-dimensional)."""
    if not gens:
        raise ValueError("no generators")
    total = None
    for j, g, n in x.terms:
        if not 0 <= j < len(gens):
            raise IndexError(f"generator index {j} out of range")
        term = gens[j].act(g) * n
        total = term if total is None else total + term
    if total is None:
        total = gens[0] * 0
    return total


@dataclass
class ModulePresentation:
    generators: list
    relators: list
    search_radius: int
    relator_radius: int
    certified: bool
    bounds: BoundLedger
    degree: int = 0
    notes: list = field(default_factory=list)


# -- relators ------------------------------------------------------------------


def _anchor(c) -> Subtree:
    return c.base if len(c.base) else Subtree(frozenset([E]))


def translates_in_ball(X: Subtree, rank: int, R: int) -> list[Word]:
    """All g with ``g^-1·X ⊆ ball(R)``, shortlex sorted."""
    if not len(X):
        return []
    s0 = min(X.vertices, key=word_key)
    out = []
    for h in ball(rank, R):
        g = multiply(s0, inverse(h))
        ginv = inverse(g)
        if all(len(multiply(ginv, s)) <= R for s in X.vertices):
            out.append(g)
    out.sort(key=word_key)
    return out


def _columns(gens: Sequence, rank: int, R: int) -> list[tuple]:
    return [(j, g) for j, c in enumerate(gens) for g in translates_in_ball(_anchor(c), rank, R)]


def evaluation_matrix0(P: LinePattern, gens: Sequence[LimitClass0], R: int):
    """Columns: translates ``e_j g`` fitting in ball(R).  Rows: components of Wh(ball(R))."""
    X = ball(P.rank, R)
    comps = components(wh_subtree(P, X))
    reps = [min(c, key=word_key) for c in comps]
    cols = _columns(gens, P.rank, R)
    M = [[0] * len(cols) for _ in comps]
    for k, (j, g) in enumerate(cols):
        vals = refine0(P, gens[j].act(g).cochain, X).values
        for i, a in enumerate(reps):
            M[i][k] = vals.get(a, 0)
    return M, cols


def _kernel_relators(M: list, cols: list) -> list[ZFElement]:
    if not cols:
        return []
    basis = hermite_rows(kernel_basis(M, len(cols)))
    return [ZFElement((cols[k][0], cols[k][1], n) for k, n in enumerate(v) if n) for v in basis]


def relators0(P: LinePattern, gens: Sequence[LimitClass0], R: int) -> list[ZFElement]:
    M, cols = evaluation_matrix0(P, gens, R)
    return _kernel_relators(M, cols)


def presentation0(P: LinePattern, r: int, R: int) -> ModulePresentation:
    gens = generators0(P, r)
    rels = relators0(P, gens, R)
    led = bounds(P, gens)
    certified = at_least(r, led.N_generators) and at_least(R, led.N_relators)
    return ModulePresentation(gens, rels, r, R, certified, led, degree=0)


def window_invariants(M: list, ncols: int) -> tuple:
    """(rank, nontrivial invariant factors) of an evaluation matrix."""
    d = invariant_factors(M, ncols)
    return len(d), tuple(x for x in d if x > 1)


def is_trivial_module_z(pres: ModulePresentation) -> bool:
    """Does the presentation read as ℤ with trivial action?

    True when the only generator is the constant class (every class it
    produces is F-invariant and the evaluation is injective on ℤ·e_0).
    """
    return len(pres.generators) == 1 and not len(pres.generators[0].base)


# -- connectedness -------------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityPolicy:
    max_radius: int = 5
    stability_window: int = 3
    run_oracle: bool = True
    plateau_depth: int = 1


CONNECTED = "Connected"
DISCONNECTED = "Disconnected"
INCONCLUSIVE = "Inconclusive"


@dataclass
class ConnectivityResult:
    verdict: str
    method: str
    radius: int
    certified: bool
    component_counts: list
    oracle_verdict: Optional[str] = None
    agreement: Optional[bool] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def is_connected(P: LinePattern, policy: ConnectivityPolicy = ConnectivityPolicy()) -> ConnectivityResult:
    """Scan ``Wh(ball(r))`` for growing r.

    A disconnected graph yields a non-constant Ȟ⁰ class, so Disconnected is
    certified.  Connected is returned after ``stability_window`` consecutive
    connected radii and is heuristic.
    """
    counts = []
    verdict, method, certified = INCONCLUSIVE, "stability-window", False
    streak = 0
    r = 0
    for r in range(policy.max_radius + 1):
        n = len(components(wh_subtree(P, ball(P.rank, r))))
        counts.append(n)
        if n > 1:
            verdict, method, certified = DISCONNECTED, "component-scan", True
            break
        streak += 1
        if streak >= policy.stability_window:
            verdict = CONNECTED
            break
    res = ConnectivityResult(verdict, method, r, certified, counts)
    if policy.run_oracle:
        from .oracle import oracle_connected

        res.oracle_verdict = oracle_connected(P, policy.plateau_depth)
        res.agreement = None if verdict == INCONCLUSIVE else verdict == res.oracle_verdict
    return res


def wh_connected_at(P: LinePattern, X: Subtree) -> bool:
    return is_connected_graph(wh_subtree(P, X))


__all__ = [
    "BoundLedger",
    "ConnectivityPolicy",
    "ConnectivityResult",
    "ModulePresentation",
    "NotSplittable",
    "Split",
    "Symbolic",
    "ZFElement",
    "apply_p",
    "at_least",
    "bounds",
    "canonical_key",
    "evaluation_matrix0",
    "generators0",
    "is_connected",
    "minimize0",
    "orbit_representative",
    "presentation0",
    "relators0",
    "split0",
    "support0",
    "translates_in_ball",
    "window_invariants",
]

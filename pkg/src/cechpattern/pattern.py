"""Line patterns: validation, canonical lines, and lines crossing a subtree."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .group import (
    E,
    Subtree,
    Word,
    cyclic_reduce,
    format_word,
    inverse,
    multiply,
    parse_word,
    step,
    word_key,
)


class PatternError(ValueError):
    """Base class for rejected patterns; ``words`` names the offenders."""

    code = "invalid_pattern"

    def __init__(self, message: str, words: Sequence[str] = ()):
        super().__init__(message)
        self.words = list(words)


class RejectedEmptyWord(PatternError):
    code = "empty_word"


class RejectedProperPower(PatternError):
    code = "proper_power"


class RejectedConjugatePair(PatternError):
    code = "conjugate_pair"


class RejectedLetter(PatternError):
    code = "letter_out_of_range"


class Line(NamedTuple):
    """The line ``g<w_i>`` keyed by the shortlex-least element of its coset."""

    word_index: int
    coset_rep: Word


def line_key(line: Line) -> tuple:
    return (line.word_index, word_key(line.coset_rep))


class Crossing(NamedTuple):
    """A line through a vertex at cyclic position ``(word_index, position)``."""

    line: Line
    back: Word
    fwd: Word
    word_index: int
    position: int


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def cyclic_canonical(w: Word) -> Word:
    """Least rotation of ``w`` or of ``w^-1``: the unoriented cyclic word."""
    return min(rotations(w) + rotations(inverse(w)), key=word_key)


def is_proper_power(w: Word) -> bool:
    m = len(w)
    for p in range(1, m):
        if m % p == 0 and w[:p] * (m // p) == w:
            return True
    return False


def _canonical_rep(g: Word, w: Word, winv: Word) -> Word:
    # |g w^k| is convex in k; walk downhill, then pick the shortlex least of
    # the at most two minimisers.
    h = g
    while True:
        hw = multiply(h, w)
        if len(hw) < len(h):
            h = hw
            continue
        hv = multiply(h, winv)
        if len(hv) < len(h):
            h = hv
            continue
        break
    cands = [h]
    for nb in (multiply(h, w), multiply(h, winv)):
        if len(nb) == len(h):
            cands.append(nb)
    return min(cands, key=word_key)


@dataclass(frozen=True)
class LinePattern:
    rank: int
    words: tuple  # tuple[Word, ...], cyclically reduced

    @cached_property
    def inverses(self) -> tuple:
        return tuple(inverse(w) for w in self.words)

    @cached_property
    def prefixes_inv(self) -> tuple:
        # prefixes_inv[i][j] = (w_i[:j])^-1
        return tuple(tuple(inverse(w[:j]) for j in range(len(w))) for w in self.words)

    @property
    def total_length(self) -> int:
        return sum(len(w) for w in self.words)

    def line(self, i: int, g: Word) -> Line:
        """The line through ``g`` along ``w_i`` (vertex set ``g<w_i>·prefixes``)."""
        return Line(i, _canonical_rep(g, self.words[i], self.inverses[i]))

    def __str__(self) -> str:
        return f"F{self.rank}" + "{" + ", ".join(format_word(w) for w in self.words) + "}"


def validate_pattern(rank: int, raw_words: Iterable) -> LinePattern:
    if rank < 1:
        raise PatternError(f"rank must be positive, got {rank}")
    words = []
    for raw in raw_words:
        w = parse_word(raw) if isinstance(raw, str) else tuple(raw)
        w = cyclic_reduce(w)
        label = raw if isinstance(raw, str) else format_word(w)
        if not w:
            raise RejectedEmptyWord(f"{label!r} is trivial after cyclic reduction", [label])
        if any(abs(x) > rank for x in w):
            raise RejectedLetter(f"{label!r} uses a letter outside rank {rank}", [label])
        if is_proper_power(w):
            raise RejectedProperPower(f"{format_word(w)} is a proper power", [format_word(w)])
        words.append(w)
    if not words:
        raise RejectedEmptyWord("a pattern needs at least one word")
    seen: dict = {}
    for w in words:
        c = cyclic_canonical(w)
        if c in seen:
            raise RejectedConjugatePair(
                f"{format_word(seen[c])} and {format_word(w)} are conjugate up to inversion",
                [format_word(seen[c]), format_word(w)],
            )
        seen[c] = w
    return LinePattern(rank, tuple(words))


def lines_through_vertex(P: LinePattern, v: Word) -> list[Crossing]:
    out = []
    for i, w in enumerate(P.words):
        m = len(w)
        pinv = P.prefixes_inv[i]
        for j in range(m):
            back = step(v, -w[j - 1])
            fwd = step(v, w[j])
            out.append(Crossing(P.line(i, multiply(v, pinv[j])), back, fwd, i, j))
    return out


def lines_meeting_subtree(P: LinePattern, X: Subtree) -> dict:
    """Map each line meeting X to its (backward exit, forward exit).

    Each line is visited once, from the vertex where it enters X going
    forward, so the work is linear in |X| plus the length of the walks.
    """
    verts = X.vertices
    out = {}
    for v in verts:
        for i, w in enumerate(P.words):
            m = len(w)
            pinv = P.prefixes_inv[i]
            for j in range(m):
                back = step(v, -w[j - 1])
                if back in verts:
                    continue
                cur, k = v, j
                while True:
                    nxt = step(cur, w[k])
                    if nxt not in verts:
                        break
                    cur = nxt
                    k = (k + 1) % m
                out[P.line(i, multiply(v, pinv[j]))] = (back, nxt)
    return out


def line_vertices(P: LinePattern, line: Line, radius: int) -> list[Word]:
    """Vertices of ``line`` within ``radius`` steps of its coset rep, in line order."""
    w = P.words[line.word_index]
    m = len(w)
    back = []
    cur = line.coset_rep
    for k in range(radius):
        cur = step(cur, -w[(-1 - k) % m])
        back.append(cur)
    fwd = [line.coset_rep]
    cur = line.coset_rep
    for k in range(radius):
        cur = step(cur, w[k % m])
        fwd.append(cur)
    return back[::-1] + fwd


def divergence_bound(P: LinePattern) -> int:
    """Longest common segment (in edges) shared by two distinct pattern lines.

    Found by comparing every pair of bi-infinite periodic words (all phases,
    both orientations); the periodicity lemma caps any overlap below
    ``|w_i| + |w_j|`` so the comparison window is finite.
    """
    seqs = []
    for i, w in enumerate(P.words):
        for u in (w, inverse(w)):
            for r in rotations(u):
                seqs.append((i, r))
    L = 2 * max(len(w) for w in P.words) + 1
    best = 0
    for a in range(len(seqs)):
        ia, ua = seqs[a]
        for b in range(a + 1, len(seqs)):
            ib, ub = seqs[b]
            k = 0
            while k < L and ua[k % len(ua)] == ub[k % len(ub)]:
                k += 1
            if k >= L:
                continue  # unreachable for a validated pattern
            best = max(best, k)
    return best


def canonical_line(P: LinePattern, i: int, g: Word) -> Line:
    return P.line(i, g)


def parse_pattern(rank: int, words: Sequence[str], tokenized: bool = False) -> LinePattern:
    return validate_pattern(rank, [parse_word(w, tokenized) if tokenized else w for w in words])


def translate(g: Word, line: Line, P: LinePattern) -> Line:
    return P.line(line.word_index, multiply(g, line.coset_rep))


__all__ = [
    "Crossing",
    "E",
    "Line",
    "LinePattern",
    "PatternError",
    "RejectedConjugatePair",
    "RejectedEmptyWord",
    "RejectedLetter",
    "RejectedProperPower",
    "canonical_line",
    "cyclic_canonical",
    "divergence_bound",
    "is_proper_power",
    "line_key",
    "line_vertices",
    "lines_meeting_subtree",
    "lines_through_vertex",
    "parse_pattern",
    "translate",
    "validate_pattern",
]

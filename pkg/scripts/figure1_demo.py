"""Walk through the pattern {aabab} in F_2: graphs, cohomology, presentations."""

from __future__ import annotations

from cechpattern import (
    ball,
    components,
    cover_cohomology,
    format_word,
    is_connected,
    presentation0,
    presentation1,
    validate_pattern,
    wh_subtree,
)
from cechpattern.oracle import minimize_multiword
from cechpattern.serialize import to_dot


def main() -> None:
    P = validate_pattern(2, ["aabab"])
    for r in range(3):
        W = wh_subtree(P, ball(2, r))
        ch = cover_cohomology(P, ball(2, r))
        print(f"r={r}: |V|={len(W.vertices)} |E|={len(W.edges)} components={len(components(W))} "
              f"H0={ch.h0_rank} H1={ch.h1_rank}")
    print(to_dot(wh_subtree(P, ball(2, 0)), P))
    print("minimized:", [format_word(w) for w in minimize_multiword(P.words, 2)])
    print("connected:", is_connected(P).as_dict())
    p0 = presentation0(P, 2, 3)
    print(f"H0: {len(p0.generators)} generators, {len(p0.relators)} relators, certified={p0.certified}")
    p1 = presentation1(P, 3, 4)
    print(f"H1: {len(p1.generators)} generators, {len(p1.relators)} relators, certified={p1.certified}")
    for note in p1.notes:
        print("  ", note)


if __name__ == "__main__":
    main()

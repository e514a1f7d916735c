"""JSON and DOT encodings of patterns, classes and presentations."""

from __future__ import annotations

import json
from pathlib import Path

from .cech import Cochain0, LimitClass0, LimitClass1, cochain1
from .group import Subtree, format_word, parse_vertex, word_key
from .h0 import ModulePresentation, ZFElement, bounds
from .pattern import LinePattern, parse_pattern
from .whitehead import WhiteheadGraph, components

TOP_KEY = ""  # the single set of the trivial cover


def _tok(P: LinePattern) -> bool:
    return P.rank > 26


def load_pattern(path, tokenized: bool = False) -> LinePattern:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return pattern_from_json(data, tokenized)


def pattern_from_json(data: dict, tokenized: bool = False) -> LinePattern:
    if not isinstance(data, dict) or "rank" not in data or "words" not in data:
        raise ValueError('pattern file needs "rank" and "words"')
    return parse_pattern(int(data["rank"]), list(data["words"]), tokenized=tokenized)


def pattern_to_json(P: LinePattern) -> dict:
    return {"rank": P.rank, "words": [format_word(w, _tok(P)) for w in P.words]}


def _vkey(v, tok: bool) -> str:
    return TOP_KEY if v is None else format_word(v, tok)


def _vparse(s: str, tok: bool):
    return None if s == TOP_KEY else parse_vertex(s, tok)


def class_to_json(c) -> dict:
    tok = _tok(c.pattern)
    base = [format_word(v, tok) for v in c.base]
    if isinstance(c, LimitClass0):
        items = sorted(c.cochain.values.items(), key=lambda kv: word_key(kv[0]))
        return {"degree": 0, "base": base, "labels": {_vkey(a, tok): n for a, n in items}}
    items = sorted(c.cochain.values.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))
    return {"degree": 1, "base": base, "labels": {f"{format_word(u, tok)}|{format_word(v, tok)}": n for (u, v), n in items}}


def class_from_json(P: LinePattern, data: dict):
    tok = _tok(P)
    base = Subtree(frozenset(parse_vertex(s, tok) for s in data.get("base", [])))
    labels = data.get("labels", {})
    if int(data.get("degree", 0)) == 0:
        return LimitClass0(P, Cochain0(base, {_vparse(k, tok): int(n) for k, n in labels.items() if int(n)}))
    vals = {}
    for k, n in labels.items():
        u, v = k.split("|")
        vals[(parse_vertex(u, tok), parse_vertex(v, tok))] = int(n)
    return LimitClass1(P, cochain1(P, base, vals))


def relator_from_json(P: LinePattern, terms: list) -> ZFElement:
    tok = _tok(P)
    return ZFElement((int(t["gen"]), parse_vertex(t["g"], tok), int(t["n"])) for t in terms)


def presentation_to_json(P: LinePattern, pres: ModulePresentation) -> dict:
    tok = _tok(P)
    return {
        "pattern": pattern_to_json(P),
        "degree": pres.degree,
        "generators": [class_to_json(g) for g in pres.generators],
        "relators": [[{"gen": j, "g": format_word(g, tok), "n": n} for j, g, n in x.terms] for x in pres.relators],
        "certified": pres.certified,
        "search_radius": pres.search_radius,
        "relator_radius": pres.relator_radius,
        "bounds": pres.bounds.as_dict(),
        "notes": list(pres.notes),
    }


def presentation_from_json(data: dict) -> tuple[LinePattern, ModulePresentation]:
    P = pattern_from_json(data["pattern"])
    gens = [class_from_json(P, g) for g in data["generators"]]
    rels = [relator_from_json(P, r) for r in data["relators"]]
    led = bounds(P, gens)
    pres = ModulePresentation(
        gens, rels, int(data["search_radius"]), int(data["relator_radius"]), bool(data["certified"]), led,
        degree=int(data.get("degree", 0)), notes=list(data.get("notes", [])),
    )
    return P, pres


def presentations_equal(a: ModulePresentation, b: ModulePresentation) -> bool:
    return (
        a.degree == b.degree
        and len(a.generators) == len(b.generators)
        and all(x == y for x, y in zip(a.generators, b.generators))
        and a.relators == b.relators
        and (a.search_radius, a.relator_radius, a.certified) == (b.search_radius, b.relator_radius, b.certified)
    )


# -- DOT -------------------------------------------------------------------------


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(W: WhiteheadGraph, P: LinePattern, name: str = "Wh") -> str:
    """Undirected multigraph, one edge per line crossing the base."""
    tok = _tok(P)
    lines = [f"graph {name} {{"]
    comps = components(W)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    for v in W.vertices:
        lines.append(f"  {_q(_vkey(v, tok) or 'D')} [component={comp_of[v]}];")
    for line, (u, v) in W.edge_list():
        label = f"w{line.word_index}@{format_word(line.coset_rep, tok)}"
        lines.append(f"  {_q(_vkey(u, tok))} -- {_q(_vkey(v, tok))} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

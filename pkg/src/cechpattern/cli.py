"""Command-line front end.  Run ``python3 -m cechpattern --help``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import serialize as io
from .cech import cover_cohomology
from .group import ball, format_word, letters, word_key
from .h0 import INCONCLUSIVE, ConnectivityPolicy, bounds, is_connected, presentation0
from .h1 import is_trivial_class1, presentation1
from .pattern import LinePattern, PatternError, validate_pattern
from .whitehead import components, wh_subtree

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _pattern(args) -> LinePattern:
    return io.load_pattern(args.file, tokenized=args.tokenized)


def cmd_validate(args) -> int:
    P = _pattern(args)
    _emit({"ok": True, **io.pattern_to_json(P)})
    return EXIT_OK


def _graph_summary(P: LinePattern, r: int) -> dict:
    X = ball(P.rank, r)
    W = wh_subtree(P, X)
    tok = P.rank > 26
    return {
        "radius": r,
        "vertices": len(W.vertices),
        "edges": len(W.edges),
        "components": [sorted((format_word(v, tok) for v in c), key=lambda s: s) for c in components(W)],
        "nerve_edges": len(W.nerve.edges),
    }


def cmd_wh(args) -> int:
    P = _pattern(args)
    out = _graph_summary(P, args.radius)
    if args.dot:
        Path(args.dot).write_text(io.to_dot(wh_subtree(P, ball(P.rank, args.radius)), P), encoding="utf-8")
        out["dot"] = args.dot
    _emit(out)
    return EXIT_OK


def cmd_nerve(args) -> int:
    P = _pattern(args)
    X = ball(P.rank, args.radius)
    W = wh_subtree(P, X)
    tok = P.rank > 26
    ch = cover_cohomology(P, X)
    _emit(
        {
            "radius": args.radius,
            "vertices": [format_word(v, tok) for v in W.vertices],
            "edges": [[format_word(u, tok), format_word(v, tok), m] for (u, v), m in sorted(W.multiplicities().items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))],
            "H0_rank": ch.h0_rank,
            "H1_rank": ch.h1_rank,
            "H1_torsion": list(ch.h1_torsion),
        }
    )
    return EXIT_OK


def _presentation(args, build) -> int:
    P = _pattern(args)
    pres = build(P, args.radius, args.relator_radius)
    data = io.presentation_to_json(P, pres)
    if args.json:
        Path(args.json).write_text(json.dumps(data, indent=2), encoding="utf-8")
    _emit(
        {
            "degree": pres.degree,
            "generators": len(pres.generators),
            "relators": len(pres.relators),
            "certified": pres.certified,
            "search_radius": pres.search_radius,
            "relator_radius": pres.relator_radius,
            "json": args.json,
        }
    )
    return EXIT_OK


def cmd_h0(args) -> int:
    return _presentation(args, presentation0)


def cmd_h1(args) -> int:
    return _presentation(args, presentation1)


def cmd_connected(args) -> int:
    P = _pattern(args)
    pol = ConnectivityPolicy(max_radius=args.max_radius, stability_window=args.stability_window)
    res = is_connected(P, pol)
    _emit(res.as_dict())
    return EXIT_INCONCLUSIVE if res.verdict == INCONCLUSIVE else EXIT_OK


def cmd_h1_trivial(args) -> int:
    P = _pattern(args)
    data = json.loads(Path(args.class_file).read_text(encoding="utf-8"))
    c = io.class_from_json(P, data)
    if int(data.get("degree", 1)) != 1:
        raise ValueError("h1-trivial needs a degree-1 class")
    res = is_trivial_class1(P, c)
    out = {"trivial": res.trivial, "witness": None}
    if res.witness is not None:
        tok = P.rank > 26
        out["witness"] = {format_word(v, tok): n for v, n in sorted(res.witness.values.items(), key=lambda kv: word_key(kv[0]))}
    _emit(out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    P = _pattern(args)
    _emit(bounds(P).as_dict())
    return EXIT_OK


def random_pattern(rng: random.Random, ranks=(2, 3), max_len: int = 8, max_words: int = 2) -> LinePattern:
    while True:
        n = rng.choice(ranks)
        ws = [tuple(rng.choice(letters(n)) for _ in range(rng.randint(1, max_len))) for _ in range(rng.randint(1, max_words))]
        try:
            return validate_pattern(n, ws)
        except PatternError:
            continue


def _corpus_job(item):
    name, data, max_radius, window, tokenized = item
    P = io.pattern_from_json(data, tokenized)
    res = is_connected(P, ConnectivityPolicy(max_radius=max_radius, stability_window=window))
    return {"name": name, **io.pattern_to_json(P), **res.as_dict()}


def cmd_corpus(args) -> int:
    items, invalid = [], []
    for path in sorted(Path(args.dir).glob("*.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        try:
            io.pattern_from_json(data, args.tokenized)
        except (PatternError, ValueError) as exc:
            invalid.append({"name": path.name, "error": getattr(exc, "code", type(exc).__name__), "message": str(exc)})
            continue
        items.append((path.name, data, args.max_radius, args.stability_window, args.tokenized))
    rng = random.Random(args.seed)
    for i in range(args.random):
        items.append((f"random-{i:04d}", io.pattern_to_json(random_pattern(rng)), args.max_radius, args.stability_window, False))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_corpus_job, items))
    else:
        rows = [_corpus_job(it) for it in items]
    rows.sort(key=lambda r: r["name"])
    decided = [r for r in rows if r["verdict"] != INCONCLUSIVE]
    report = {
        "seed": args.seed,
        "patterns": len(rows),
        "decided": len(decided),
        "agreements": sum(1 for r in decided if r["agreement"]),
        "disagreements": [r["name"] for r in decided if not r["agreement"]],
        "invalid": invalid,
        "rows": rows,
    }
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2), encoding="utf-8")
    _emit({k: v for k, v in report.items() if k != "rows"})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cechpattern", description="Čech cohomology of line-pattern decomposition spaces")
    p.add_argument("--tokenized", action="store_true", help="words use x1 X1 tokens instead of letters")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("wh")
    s.add_argument("file")
    s.add_argument("--radius", type=int, default=0)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_wh)

    s = sub.add_parser("nerve")
    s.add_argument("file")
    s.add_argument("--radius", type=int, default=0)
    s.set_defaults(func=cmd_nerve)

    for name, fn in (("h0", cmd_h0), ("h1", cmd_h1)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--radius", type=int, default=1)
        s.add_argument("--relator-radius", type=int, default=2)
        s.add_argument("--json")
        s.set_defaults(func=fn)

    s = sub.add_parser("connected")
    s.add_argument("file")
    s.add_argument("--max-radius", type=int, default=5)
    s.add_argument("--stability-window", type=int, default=3)
    s.set_defaults(func=cmd_connected)

    s = sub.add_parser("h1-trivial")
    s.add_argument("file")
    s.add_argument("--class", dest="class_file", required=True)
    s.set_defaults(func=cmd_h1_trivial)

    s = sub.add_parser("bounds")
    s.add_argument("file")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("corpus")
    s.add_argument("dir")
    s.add_argument("--report")
    s.add_argument("--random", type=int, default=0, help="also test this many generated patterns")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--max-radius", type=int, default=5)
    s.add_argument("--stability-window", type=int, default=3)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PatternError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc), "words": exc.words}), file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(json.dumps({"error": "internal", "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

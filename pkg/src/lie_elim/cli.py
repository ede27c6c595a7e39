"""Command-line front end: ``lie-elim {ranks,fp,eliminate,verify} GRAPH``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from .core_lie import witt_necklace
from .errors import InapplicableError, InvalidArgument, TorsionError
from .fp_ideal import FPPresentation, fp_graded_ranks
from .pcommute import PartialCommutation, eliminate, raag_ideal, validate
from .verify import run_suite
from .zmodule import is_saturated

SCHEMA = "lie-elim/1"


class GraphParseError(InvalidArgument):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass
class GraphFile:
    n: int
    edges: List[Tuple[int, int]]

    def theta(self) -> PartialCommutation:
        return validate(self.n, self.edges)


def parse_graph(text: str) -> GraphFile:
    """``n <count>`` then one ``a b`` edge per line; ``#`` starts a comment."""
    n: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphParseError(lineno, "expected header 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(lineno, f"vertex count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise GraphParseError(lineno, "vertex count must be >= 1")
            continue
        if len(parts) != 2:
            raise GraphParseError(lineno, "expected an edge 'a b'")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, "edge endpoints must be integers") from None
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphParseError(lineno, f"vertex out of range 1..{n}")
        if a == b:
            raise GraphParseError(lineno, "self-loop")
        key = (max(a, b), min(a, b))
        if key not in seen:
            seen.add(key)
            edges.append(key)
    if n is None:
        raise GraphParseError(1, "empty graph file")
    return GraphFile(n, edges)


def read_graph(path: str) -> GraphFile:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# --------------------------------------------------------------- commands
# Each command returns (payload, rows, ok): payload for JSON, rows for text/csv.


def _relabel_info(theta: PartialCommutation) -> Dict[str, object]:
    return {"n": theta.n, "edges": [list(e) for e in theta.original_edges()],
            "order": list(theta.labels)}


def cmd_ranks(g: GraphFile, D: int):
    theta = g.theta()
    if theta.is_empty:
        ranks = [witt_necklace(g.n, d) for d in range(1, D + 1)]
        sat = [True] * D
    else:
        I = raag_ideal(theta, D)
        ranks = [I.ambient.rank(d) - I.rank(d) for d in range(1, D + 1)]
        sat = [is_saturated(I.lattice(d)) for d in range(1, D + 1)]
    degrees = {str(d): {"rank": ranks[d - 1], "saturated": sat[d - 1]} for d in range(1, D + 1)}
    rows = [{"degree": d, "rank": ranks[d - 1], "saturated": sat[d - 1]} for d in range(1, D + 1)]
    return {"command": "ranks", "graph": _relabel_info(theta), "degrees": degrees}, rows, all(sat)


def cmd_fp(g: GraphFile, D: int):
    theta = g.theta()
    p = FPPresentation(theta)
    rep = fp_graded_ranks(p, D)
    degrees, rows = {}, []
    for r in rep.rows:
        entry = {"rankJ": r.rank_J, "rankGr": r.rank_gr, "saturated": r.saturated, "splitOK": r.split_ok}
        if r.pieces:
            entry["pieces"] = dict(r.pieces)
            entry["piecesOK"] = r.pieces_ok
        degrees[str(r.degree)] = entry
        rows.append({"degree": r.degree, "witt": r.witt, "rankJ": r.rank_J, "rankGr": r.rank_gr,
                     "saturated": r.saturated, "splitOK": r.split_ok,
                     "piecesOK": "" if r.pieces_ok is None else r.pieces_ok})
    mode = "empty-relation" if theta.is_empty else "decomposition"
    payload = {"command": "fp", "graph": _relabel_info(p.theta), "mode": mode, "degrees": degrees,
               "failed": [c.name for c in rep.checks if not c.passed]}
    return payload, rows, rep.ok


def cmd_eliminate(g: GraphFile, D: int):
    theta = g.theta()
    rep = eliminate(theta, D)
    table = rep.rank_table()
    pieces = {}
    for p in [*rep.B.values(), *rep.ideal_pieces()]:
        gens: Dict[str, List[str]] = {}
        for deg, tree in p.generating_set():
            gens.setdefault(str(deg), []).append(tree.render())
        pieces[p.name] = {"kind": p.kind, "generators": gens}
    payload = {"command": "eliminate", "graph": _relabel_info(rep.theta),
               "degrees": {str(d): row for d, row in table.items()}, "pieces": pieces,
               "failed": [c.name for c in rep.checks if not c.passed]}
    rows = [{"degree": d, **row} for d, row in table.items()]
    return payload, rows, rep.ok


def cmd_verify(g: GraphFile, D: int, seed: int, corrupt: bool = False, quiet: bool = False):
    theta = g.theta()
    progress = None if quiet else (lambda m: print(f"[verify] {m}", file=sys.stderr))
    res = run_suite(theta, D, seed=seed, corrupt_relators=corrupt, progress=progress)
    sections = {}
    rows = []
    for s in res.sections:
        sections[s.title] = {"passed": sum(c.passed for c in s.checks), "total": len(s.checks),
                             "failed": [{"name": c.name, "detail": c.detail} for c in s.failed]}
        rows.append({"section": s.title, "passed": sections[s.title]["passed"], "total": len(s.checks),
                     "ok": s.ok})
    payload = {"command": "verify", "graph": _relabel_info(theta), "seed": seed, "sections": sections,
               "passed": res.passed, "total": res.total, "ok": res.ok}
    return payload, rows, res.ok


# ---------------------------------------------------------------- output


def render(payload: dict, rows: List[dict], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump({"schema": SCHEMA, **payload},
                  out, indent=2, sort_keys=True)
        out.write("\n")
        return
    keys: List[str] = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        out.write(buf.getvalue())
        return
    widths = {k: max(len(k), *(len(str(r.get(k, ""))) for r in rows)) for k in keys}
    out.write("  ".join(k.rjust(widths[k]) for k in keys) + "\n")
    for r in rows:
        out.write("  ".join(str(r.get(k, "")).rjust(widths[k]) for k in keys) + "\n")
    failed = payload.get("failed") or []
    for name in failed:
        out.write(f"FAILED: {name}\n")
    for title, sec in (payload.get("sections") or {}).items():
        for f in sec["failed"]:
            out.write(f"FAILED [{title}] {f['name']}: {f['detail']}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lie-elim", description="Graded Lie algebra workbench for raags "
                                 "and their Formanek-Procesi extensions.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in [("ranks", "raag graded ranks and saturation"),
                        ("fp", "ranks and decomposition of the FP relator ideal"),
                        ("eliminate", "run the elimination algorithm and print generating sets"),
                        ("verify", "run the full check suite")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help="graph file, or '-' for standard input")
        p.add_argument("-d", "--max-degree", type=int, default=5, help="degree cutoff D (default 5)")
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--quiet", action="store_true", help="suppress progress messages")
        if name == "verify":
            p.add_argument("--corrupt-relator", action="store_true", help=argparse.SUPPRESS)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree < 1:
        print("error: --max-degree must be >= 1", file=sys.stderr)
        return 2
    try:
        g = read_graph(args.graph)
        D = args.max_degree
        if args.command == "ranks":
            payload, rows, ok = cmd_ranks(g, D)
        elif args.command == "fp":
            payload, rows, ok = cmd_fp(g, D)
        elif args.command == "eliminate":
            payload, rows, ok = cmd_eliminate(g, D)
        else:
            payload, rows, ok = cmd_verify(g, D, args.seed, args.corrupt_relator, args.quiet)
    except (InvalidArgument, InapplicableError, TorsionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload["max_degree"] = D
    render(payload, rows, args.format, sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

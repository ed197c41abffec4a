"""Command-line entry point.

Subcommands: parse, stats, relate, path, evaluate, export-graph.
Exit status is 0 on success, 1 on a usage error and 2 on a data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from functools import partial
from pathlib import Path

from .evaluation import CollectionError, evaluate, load_collection
from .graph import DEFAULT_ALL_PAIRS_CAP, all_pairs_precompute, build_graph
from .parser import DumpEncodingError, DumpFormatError, RelationType, parse_dump
from .relatedness import format_path, relate
from .store import Dictionary, StoreError, load, save, stats

log = logging.getLogger("wikisem")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _weight(text: str):
    name, sep, value = text.partition("=")
    try:
        rt = RelationType(name.strip())
        w = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <relation>=<positive number>, got {text!r}") from None
    if not sep or not w > 0 or w == float("inf"):
        raise argparse.ArgumentTypeError(f"expected <relation>=<positive number>, got {text!r}")
    return rt, w


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wikisem", description="Wiki-dictionary parsing and thesaurus relatedness.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_opts(sp, with_from=True):
        sp.add_argument("--store", required=True, type=Path)
        sp.add_argument("--graph-lang", required=True)
        if with_from:
            sp.add_argument("--from-lang", required=True)
        sp.add_argument("--weight", type=_weight, action="append", default=[], metavar="TYPE=VALUE")

    sp = sub.add_parser("parse", help="parse a page dump into a store directory")
    sp.add_argument("--input", required=True, type=Path)
    sp.add_argument("--out", required=True, type=Path)

    sp = sub.add_parser("stats", help="per-language entry and relation counts")
    sp.add_argument("--store", required=True, type=Path)

    for name in ("relate", "path"):
        sp = sub.add_parser(name, help="relatedness record" if name == "relate" else "linking paths")
        graph_opts(sp)
        sp.add_argument("word_a")
        sp.add_argument("word_b")

    sp = sub.add_parser("evaluate", help="score a word-pair collection")
    graph_opts(sp)
    sp.add_argument("--pairs", required=True, type=Path)
    sp.add_argument("--report", required=True, type=Path)
    sp.add_argument("--all-pairs-cap", type=_nonneg_int, default=DEFAULT_ALL_PAIRS_CAP)

    sp = sub.add_parser("export-graph", help="write the thesaurus graph as an edge list")
    graph_opts(sp, with_from=False)
    sp.add_argument("--out", required=True, type=Path)
    return p


def _check_paths(args):
    if getattr(args, "input", None) is not None and not args.input.is_file():
        raise UsageError(f"--input: no such file: {args.input}")
    if getattr(args, "store", None) is not None and not args.store.is_dir():
        raise UsageError(f"--store: no such directory: {args.store}")
    if getattr(args, "pairs", None) is not None and not args.pairs.is_file():
        raise UsageError(f"--pairs: no such file: {args.pairs}")
    for attr in ("out", "report"):
        target = getattr(args, attr, None)
        if target is None:
            continue
        if args.command == "parse":
            if target.exists() and not target.is_dir():
                raise UsageError(f"--out: not a directory: {target}")
        elif target.is_dir():
            raise UsageError(f"--{attr}: is a directory: {target}")
        elif not target.parent.is_dir():
            raise UsageError(f"--{attr}: no such directory: {target.parent}")


def _graph(args, dictionary: Dictionary):
    return build_graph(dictionary, args.graph_lang, dict(args.weight))


def cmd_parse(args, out):
    with open(args.input, "rb") as fh:
        parsed = parse_dump(fh)
    for w in parsed.warnings:
        log.warning(w)
    save(Dictionary(parsed.entries), args.out)
    out.write(f"entries\t{len(parsed.entries)}\nwarnings\t{len(parsed.warnings)}\n")


def cmd_stats(args, out):
    out.write(stats(load(args.store)).format_table() + "\n")


def cmd_relate(args, out):
    d = load(args.store)
    res = relate(d, _graph(args, d), args.word_a, args.word_b, args.from_lang, args.graph_lang)
    out.write(res.to_record())


def cmd_path(args, out):
    d = load(args.store)
    res = relate(d, _graph(args, d), args.word_a, args.word_b, args.from_lang, args.graph_lang, with_paths=True)
    if res.missing:
        log.warning("no path: %s", res.missing_reason.value)
        return
    for p in res.linking_paths:
        out.write(format_path(p) + "\n")


def cmd_evaluate(args, out):
    d = load(args.store)
    collection = load_collection(args.pairs)
    graph = _graph(args, d)
    oracle = None
    if len(graph) <= args.all_pairs_cap:
        log.info("using all-pairs precompute (%d nodes, cap %d)", len(graph), args.all_pairs_cap)
        oracle = all_pairs_precompute(graph, args.all_pairs_cap)
    else:
        log.info("graph has %d nodes, above cap %d; using per-query Dijkstra", len(graph), args.all_pairs_cap)
    fn = partial(_relate_pair, d, graph, args.from_lang, args.graph_lang, oracle)
    report = evaluate(collection, fn)
    args.report.write_text(report.to_json(), encoding="utf-8")
    fmt = lambda x: "undefined" if x is None else f"{x:.6f}"
    out.write(f"n_total\t{report.n_total}\nn_scored\t{report.n_scored}\nn_missing\t{report.n_missing}\n"
              f"spearman\t{fmt(report.spearman)}\npearson\t{fmt(report.pearson)}\n")


def _relate_pair(d, graph, src, dst, oracle, a, b):
    return relate(d, graph, a, b, src, dst, oracle=oracle)


def cmd_export_graph(args, out):
    d = load(args.store)
    graph = _graph(args, d)
    args.out.write_text(graph.to_tsv(), encoding="utf-8")
    out.write(f"nodes\t{len(graph)}\nedges\t{len(graph.edges)}\n")


COMMANDS = {
    "parse": cmd_parse,
    "stats": cmd_stats,
    "relate": cmd_relate,
    "path": cmd_path,
    "evaluate": cmd_evaluate,
    "export-graph": cmd_export_graph,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    log.propagate = False
    try:
        try:
            args = build_parser().parse_args(argv)
            _check_paths(args)
        except UsageError as exc:
            stderr.write(f"{exc}\n")
            return EXIT_USAGE
        except SystemExit as exc:  # --help
            return EXIT_OK if not exc.code else EXIT_USAGE
        try:
            COMMANDS[args.command](args, stdout)
        except (StoreError, CollectionError, DumpFormatError, DumpEncodingError, OSError) as exc:
            stderr.write(f"error: {exc}\n")
            return EXIT_DATA
        return EXIT_OK
    finally:
        log.removeHandler(handler)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

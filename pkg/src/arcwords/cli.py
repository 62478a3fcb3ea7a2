"""Command-line interface: word lengths, extremal tables, and verification suites.

Exit codes: 0 success, 1 non-member or failed verification, 2 parse/usage
failure, 3 size limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .constructions import check_word
from .digraph import (
    Digraph,
    DigraphParseError,
    FAMILY_NAMES,
    digraph_to_text,
    family,
    is_strong,
    parse_digraph,
)
from .experiments import (
    ClassSpec,
    SizeLimitError,
    THEOREMS,
    bounds_audit,
    check_conjectures,
    constructions_audit,
    digraph_hex,
    extremal_table,
    parse_tournament_lines,
    verify_characterization,
)
from .semigroup import MAX_DEGREE, explore
from .transform import parse_transformation, word_to_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SIZE = 3

_CLASS_BY_FLAG = {
    "all": "all_digraphs",
    "connected": "connected_digraphs",
    "acyclic": "acyclic_digraphs",
    "tournaments": "strong_tournaments",
}

_SUITES = THEOREMS + ("characterizations", "conjectures", "bounds", "constructions")


class _Exit(Exception):
    """Abort the command with a message on stderr and a specific exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}") from exc


def _family_of(spec: str) -> Digraph:
    name, sep, size = spec.partition(":")
    try:
        if sep:
            return family(name, int(size))
        return family(name)
    except ValueError as exc:
        raise _Exit(EXIT_PARSE, f"bad family spec {spec!r}: {exc}") from exc


def _load_digraph(args: argparse.Namespace) -> Digraph:
    if getattr(args, "digraph", None):
        try:
            return parse_digraph(_read_file(args.digraph))
        except DigraphParseError as exc:
            raise _Exit(EXIT_PARSE, f"{args.digraph}: {exc}") from exc
    return _family_of(args.family)


def _check_degree(d: Digraph) -> None:
    if d.n > MAX_DEGREE:
        raise _Exit(EXIT_SIZE, f"order {d.n} exceeds the n <= {MAX_DEGREE} exploration limit")


# ---------------------------------------------------------------------------
# commands


def _cmd_len(args: argparse.Namespace) -> int:
    d = _load_digraph(args)
    _check_degree(d)
    try:
        alpha = parse_transformation(args.alpha, n=d.n)
    except ValueError as exc:
        raise _Exit(EXIT_PARSE, f"bad transformation {args.alpha!r}: {exc}") from exc
    idx = explore(d)
    length = idx.length_of(alpha)
    if length is None:
        print(
            f"not a member: [{alpha}] is not generated by the arcs of this digraph",
            file=sys.stderr,
        )
        return EXIT_FAIL
    print(length)
    if args.word:
        word = idx.shortest_word(alpha)
        print(word_to_text(word))
        print("check: ok" if check_word(d, word, alpha) else "check: FAILED")
    return EXIT_OK


def _profile_table(d: Digraph, fmt: str) -> str:
    idx = explore(d)
    prof = idx.rank_profile()
    if fmt == "json":
        return json.dumps(
            {
                "n": prof.n,
                "size": prof.size,
                "rows": [
                    {"r": row.rank, "count": row.count, "max": row.max_length,
                     "witness_alpha": str(row.witness)}
                    for row in prof.rows
                ],
            },
            indent=2,
        ) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["r", "count", "max", "witness_alpha"])
        for row in prof.rows:
            writer.writerow([row.rank, row.count, row.max_length, str(row.witness)])
        return buf.getvalue()
    lines = [f"order {prof.n}, {prof.size} members, max length {prof.max_length}"]
    for row in prof.rows:
        lines.append(
            f"  r={row.rank}: count={row.count} max={row.max_length} witness=[{row.witness}]"
        )
    return "\n".join(lines) + "\n"


def _cmd_table(args: argparse.Namespace) -> int:
    if args.digraph or args.family:
        d = _load_digraph(args)
        _check_degree(d)
        sys.stdout.write(_profile_table(d, args.format))
        return EXIT_OK

    if args.from_file:
        text = _read_file(args.from_file)
        try:
            digraphs = parse_tournament_lines(text)
        except DigraphParseError as exc:
            raise _Exit(EXIT_PARSE, f"{args.from_file}: {exc}") from exc
        if not digraphs:
            raise _Exit(EXIT_PARSE, f"{args.from_file}: no tournaments found")
        spec = ClassSpec("strong_tournaments", digraphs[0].n)
        result = extremal_table(spec, long=args.long, jobs=args.jobs, digraphs=digraphs)
        if result.enumerated_count == 0:
            raise _Exit(
                EXIT_FAIL, f"{args.from_file}: no strongly connected tournaments"
            )
    else:
        if args.n is None:
            raise _Exit(EXIT_PARSE, "--class requires --n")
        spec = ClassSpec(_CLASS_BY_FLAG[args.cls], args.n, connectivity=args.connectivity)
        try:
            result = extremal_table(
                spec, long=args.long, jobs=args.jobs, cache_dir=args.cache_dir
            )
        except SizeLimitError as exc:
            raise _Exit(EXIT_SIZE, str(exc)) from exc

    if args.format == "json":
        sys.stdout.write(result.to_json() + "\n")
    elif args.format == "csv":
        sys.stdout.write(result.to_csv())
    else:
        sys.stdout.write(result.to_text())
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    failed = False
    suites = THEOREMS if args.suite == "characterizations" else (args.suite,)
    for suite in suites:
        if suite in THEOREMS:
            try:
                report = verify_characterization(
                    suite, args.n, long=args.long, connectivity=args.connectivity
                )
            except SizeLimitError as exc:
                raise _Exit(EXIT_SIZE, str(exc)) from exc
            sys.stdout.write(report.to_text())
            ok = report.holds
        elif suite == "conjectures":
            conj = check_conjectures(args.n, long=args.long)
            sys.stdout.write(conj.to_text())
            ok = conj.supported
        elif suite == "bounds":
            try:
                audit = bounds_audit(args.n, long=args.long)
            except ValueError as exc:
                raise _Exit(EXIT_PARSE, str(exc)) from exc
            sys.stdout.write(audit.to_text())
            ok = audit.holds
        else:
            built = constructions_audit(args.n, long=args.long)
            sys.stdout.write(built.to_text())
            ok = built.holds
        print("PASS" if ok else "FAIL")
        failed = failed or not ok
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    d = _family_of(args.family)
    text = digraph_to_text(d)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_ingest(args: argparse.Namespace) -> int:
    text = _read_file(args.file)
    try:
        digraphs = parse_tournament_lines(text)
    except DigraphParseError as exc:
        raise _Exit(EXIT_PARSE, f"{args.file}: {exc}") from exc
    if args.format == "json":
        payload = [
            {
                "index": i,
                "n": t.n,
                "strong": is_strong(t),
                "digraph_hex": digraph_hex(t),
                "edges": [list(e) for e in t.sorted_edges],
            }
            for i, t in enumerate(digraphs)
        ]
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["index", "n", "strong", "digraph_hex"])
        for i, t in enumerate(digraphs):
            writer.writerow([i, t.n, is_strong(t), digraph_hex(t)])
    else:
        for i, t in enumerate(digraphs):
            print(f"# tournament {i} strong={is_strong(t)} hex={digraph_hex(t)}")
            sys.stdout.write(digraph_to_text(t))
            print()
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _add_source_flags(parser: argparse.ArgumentParser, with_alpha: bool) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--digraph", metavar="FILE", help="digraph file (header 'digraph N', then edge lines)")
    group.add_argument(
        "--family",
        metavar="NAME:N",
        help=f"named family, one of {', '.join(FAMILY_NAMES)} (gammas have fixed size)",
    )
    if with_alpha:
        parser.add_argument("--alpha", required=True, help='transformation images, e.g. "3 2 3"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcwords",
        description="shortest words over arc generators of digraph transformation semigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_len = sub.add_parser("len", help="minimal word length of a transformation")
    _add_source_flags(p_len, with_alpha=True)
    p_len.add_argument("--word", action="store_true", help="also print a shortest word")
    p_len.set_defaults(func=_cmd_len)

    p_word = sub.add_parser("word", help="like len --word")
    _add_source_flags(p_word, with_alpha=True)
    p_word.set_defaults(func=_cmd_len, word=True)

    p_table = sub.add_parser("table", help="per-rank length tables")
    source = p_table.add_mutually_exclusive_group(required=True)
    source.add_argument("--class", dest="cls", choices=sorted(_CLASS_BY_FLAG),
                        help="extremal table over a digraph class")
    source.add_argument("--digraph", metavar="FILE")
    source.add_argument("--family", metavar="NAME:N")
    source.add_argument("--from", dest="from_file", metavar="FILE",
                        help="tournament-per-line bitstring file")
    p_table.add_argument("--n", type=int, help="order for --class")
    p_table.add_argument("--connectivity", choices=("unilateral", "weak"), default="unilateral")
    p_table.add_argument("--long", action="store_true", help="allow the long-running sizes")
    p_table.add_argument("--jobs", type=int, default=1)
    p_table.add_argument("--cache-dir", metavar="DIR")
    p_table.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_table.set_defaults(func=_cmd_table)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=_SUITES)
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--connectivity", choices=("unilateral", "weak"), default="unilateral")
    p_verify.add_argument("--long", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="print a named family as a digraph file")
    p_gen.add_argument("--family", required=True, metavar="NAME:N")
    p_gen.add_argument("--out", metavar="FILE")
    p_gen.set_defaults(func=_cmd_gen)

    p_ingest = sub.add_parser("ingest", help="parse a tournament bitstring file")
    p_ingest.add_argument("file", metavar="FILE")
    p_ingest.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_ingest.set_defaults(func=_cmd_ingest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"arcwords: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``cogrowth <subcommand> -m RANK WORD ...``.

Exit codes: 0 success, 1 malformed input or usage, 2 a letter outside the
alphabet, 3 when independent computations of H(z) disagree.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from .automata import (
    adjacency_matrix,
    build_free_group_dfa,
    core_to_dfa,
    minimize,
    state_label,
    subgroup_dfa,
    to_dot as automaton_dot,
    transfer_cogrowth,
    without_start_state,
)
from .core import CoreGraph, conjugacy_reduce, core_of, edge_list, enumerate_count, to_dot
from .exceptions import AlphabetError, CogrowthError, WordSyntaxError
from .nielsen import check_nielsen, nielsen_cogrowth, nielsen_matrix, schreier_generators
from .report import METHODS, ORACLE_CAP, SCHEMA_VERSION, analyze
from .series import format_poly, series_coefficients
from .spectral import entropy_of_subgroup
from .words import Word, format_letter, format_word, parse_word

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_ALPHABET = 2
EXIT_DISAGREE = 3
MAX_COEFFS = 10_000

AUTOMATON_KINDS = ("subgroup", "start-free", "free-group", "core", "minimal")


class UsageError(CogrowthError):
    """Bad command line or input file structure."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is our alphabet-error code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


@dataclass
class Block:
    rank: int
    words: list[Word]


def read_blocks(text: str) -> list[Block]:
    """Parse a generator file.

    Each block starts with a ``rank m`` line and is followed by one word per
    line; ``#`` starts a comment and blank lines are skipped.
    """
    blocks: list[Block] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0].lower() == "rank":
            if len(head) != 2 or not head[1].isdigit() or int(head[1]) < 1:
                raise UsageError(f"line {lineno}: expected 'rank m' with m >= 1")
            blocks.append(Block(int(head[1]), []))
            continue
        if not blocks:
            raise UsageError(f"line {lineno}: the file must start with 'rank m'")
        try:
            blocks[-1].words.append(parse_word(line, blocks[-1].rank))
        except CogrowthError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    if not blocks:
        raise UsageError("no 'rank m' line found")
    return blocks


def gather_blocks(args) -> list[Block]:
    if args.file is not None:
        if args.words:
            raise UsageError("give generators either as arguments or with --file, not both")
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        return read_blocks(text)
    if args.rank is None:
        raise UsageError("the rank -m/--rank is required")
    if args.rank < 1:
        raise UsageError("the rank must be at least 1")
    return [Block(args.rank, [parse_word(w, args.rank) for w in args.words])]


def _emit(out, docs: list, as_json: bool) -> None:
    if as_json:
        payload = docs[0] if len(docs) == 1 else docs
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(docs))


def cmd_analyze(args, blocks, out) -> int:
    status = EXIT_OK
    docs = []
    for b in blocks:
        report = analyze(b.rank, b.words, args.coeffs, args.oracle_depth, args.method)
        docs.append(report.to_dict() if args.json else report.to_text())
        if not report.methods_agree:
            status = EXIT_DISAGREE
    _emit(out, docs, args.json)
    return status


def _core_summary(c: CoreGraph) -> str:
    lines = [f"core: {c.vertex_count} vertices, root v{c.root}"]
    lines.extend(f"  v{u} --{x}--> v{v}" for u, x, v in edge_list(c))
    return "\n".join(lines) + "\n"


def cmd_core(args, blocks, out) -> int:
    docs = []
    for b in blocks:
        c = core_of(b.rank, b.words)
        if args.reduce and not c.is_trivial:
            conjugator, c = conjugacy_reduce(c)
        if args.dot:
            docs.append(to_dot(c))
        elif args.json:
            doc = {
                "schema": SCHEMA_VERSION,
                "rank": b.rank,
                "vertex_count": c.vertex_count,
                "edges": edge_list(c),
            }
            if args.reduce and not c.is_trivial:
                doc["conjugator"] = format_word(conjugator, b.rank)
            docs.append(doc)
        else:
            text = _core_summary(c)
            if args.reduce and not c.is_trivial:
                text = f"conjugator: {format_word(conjugator, b.rank)}\n" + text
            docs.append(text)
    _emit(out, docs, args.json and not args.dot)
    return EXIT_OK


def _automaton(kind: str, b: Block):
    if kind == "free-group":
        return build_free_group_dfa(b.rank)
    c = core_of(b.rank, b.words)
    if kind == "core":
        return core_to_dfa(c)
    d = subgroup_dfa(c)
    if kind == "start-free":
        return without_start_state(d)
    if kind == "minimal":
        return minimize(d)
    return d


def _symbol(x, rank: int) -> str:
    return format_letter(x, rank) if isinstance(x, int) else str(x)


def cmd_automaton(args, blocks, out) -> int:
    docs = []
    for b in blocks:
        a = _automaton(args.kind, b)
        labels = [state_label(n, b.rank) for n in a.names]
        if args.dot:
            docs.append(automaton_dot(a, b.rank, name=args.kind.replace("-", "_")))
        elif args.json:
            docs.append(
                {
                    "schema": SCHEMA_VERSION,
                    "kind": args.kind,
                    "states": labels,
                    "initials": sorted(a.initials),
                    "finals": sorted(a.finals),
                    "adjacency": adjacency_matrix(a).tolist(),
                }
            )
        else:
            lines = [f"{args.kind} automaton: {a.size} states"]
            for q, label in enumerate(labels):
                marks = ("initial " if q in a.initials else "") + ("final" if q in a.finals else "")
                moves = ", ".join(
                    f"{_symbol(x, b.rank)}->{labels[t]}" for x, t in a.delta[q].items()
                )
                lines.append(f"  {q}: {label} {marks.strip()}".rstrip() + f"  [{moves}]")
            docs.append("\n".join(lines) + "\n")
    _emit(out, docs, args.json and not args.dot)
    return EXIT_OK


def cmd_coefficients(args, blocks, out) -> int:
    if args.coeffs > MAX_COEFFS:
        raise UsageError(f"--coeffs is limited to {MAX_COEFFS}")
    status = EXIT_OK
    docs = []
    for b in blocks:
        c = core_of(b.rank, b.words)
        values = series_coefficients(transfer_cogrowth(subgroup_dfa(c)), args.coeffs)
        if args.method in ("enumerate", "all"):
            depth = min(args.oracle_depth, args.coeffs)
            if any(values[n] != enumerate_count(c, n) for n in range(depth + 1)):
                status = EXIT_DISAGREE
        if args.method in ("nielsen", "all"):
            other = nielsen_cogrowth(schreier_generators(c))
            if series_coefficients(other, args.coeffs) != values:
                status = EXIT_DISAGREE
        if args.json:
            docs.append({"schema": SCHEMA_VERSION, "coefficients": values})
        else:
            docs.append("n\t|H_n|\n" + "".join(f"{n}\t{v}\n" for n, v in enumerate(values)))
    _emit(out, docs, args.json)
    return status


def cmd_nielsen(args, blocks, out) -> int:
    docs = []
    for b in blocks:
        c = core_of(b.rank, b.words)
        basis = schreier_generators(c)
        matrix, rhs = nielsen_matrix(basis)
        h = nielsen_cogrowth(basis)
        if args.json:
            docs.append(
                {
                    "schema": SCHEMA_VERSION,
                    "generators": [format_word(w, b.rank) for w in basis],
                    "nielsen_property": check_nielsen(basis),
                    "matrix": [[list(p.coeffs) for p in row] for row in matrix],
                    "rhs": [list(p.coeffs) for p in rhs],
                    "cogrowth": h.to_json(),
                }
            )
        else:
            lines = ["generators: " + (", ".join(format_word(w, b.rank) for w in basis) or "(none)")]
            lines.append("matrix (ascending coefficients per entry):")
            lines.extend("  " + " ".join(str(list(p.coeffs)) for p in row) for row in matrix)
            lines.append("rhs: " + " ".join(str(list(p.coeffs)) for p in rhs))
            lines.append(f"H(z) = ({format_poly(h.num)}) / ({format_poly(h.den)})")
            docs.append("\n".join(lines) + "\n")
    _emit(out, docs, args.json)
    return EXIT_OK


def cmd_entropy(args, blocks, out) -> int:
    docs = []
    for b in blocks:
        c = core_of(b.rank, b.words)
        if c.is_trivial:
            values = {"perron_root": 0.0, "entropy": 0.0, "growth_rate": 1.0,
                      "iterations": 0, "residual": 0.0}
        else:
            r = entropy_of_subgroup(c)
            values = {"perron_root": float(r.perron_root), "entropy": r.entropy,
                      "growth_rate": float(r.growth_rate), "iterations": r.iterations,
                      "residual": r.residual}
        values["entropy_bits"] = values["entropy"] / math.log(2)
        if args.json:
            docs.append({"schema": SCHEMA_VERSION, **values})
        else:
            docs.append(
                f"entropy: {values['entropy']:.12g} (natural log), "
                f"{values['entropy_bits']:.12g} (bits)\n"
                f"growth rate: {values['growth_rate']:.12g}\n"
                f"power iteration: {values['iterations']} steps, residual {values['residual']:.3g}\n"
            )
    _emit(out, docs, args.json)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "core": cmd_core,
    "automaton": cmd_automaton,
    "coefficients": cmd_coefficients,
    "nielsen": cmd_nielsen,
    "entropy": cmd_entropy,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("words", nargs="*", help="generators, e.g. 'abA' or 'a b a^-1'")
    common.add_argument("-m", "--rank", type=int, help="rank of the ambient free group")
    common.add_argument("--file", help="read 'rank m' blocks of generators from a file ('-' for stdin)")
    common.add_argument("--method", choices=METHODS, default="all",
                        help="which independent methods to check the transfer series against")
    common.add_argument("--coeffs", type=int, default=20, metavar="N",
                        help="number of coefficients after the constant term (default 20)")
    common.add_argument("--oracle-depth", type=int, default=10, metavar="K",
                        help=f"check coefficients up to length K by enumeration (max {ORACLE_CAP})")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dot", action="store_true", help="Graphviz output where it applies")

    parser = _Parser(prog="cogrowth", description="Cogrowth of subgroups of free groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="full report")
    core = sub.add_parser("core", parents=[common], help="folded core graph")
    core.add_argument("--reduce", action="store_true", help="conjugate to a conjugacy-reduced subgroup first")
    auto = sub.add_parser("automaton", parents=[common], help="automata built from the core")
    auto.add_argument("--kind", choices=AUTOMATON_KINDS, default="subgroup")
    sub.add_parser("coefficients", parents=[common], help="table of |H_n|")
    sub.add_parser("nielsen", parents=[common], help="Schreier basis and its linear system")
    sub.add_parser("entropy", parents=[common], help="entropy and growth rate")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.coeffs < 0:
            raise UsageError("--coeffs must be nonnegative")
        if not 0 <= args.oracle_depth <= ORACLE_CAP:
            raise UsageError(f"--oracle-depth must be between 0 and {ORACLE_CAP}")
        blocks = gather_blocks(args)
        return COMMANDS[args.command](args, blocks, out)
    except AlphabetError as exc:
        print(f"cogrowth: {exc}", file=sys.stderr)
        return EXIT_ALPHABET
    except (WordSyntaxError, UsageError, OSError) as exc:
        print(f"cogrowth: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

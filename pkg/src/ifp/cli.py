"""Command-line interface.

Subcommands: parse, eval, valid, prove, check, compile, decide.  Each
reads one input file, with "-" for standard input.  Exit status 0 means
the affirmative outcome, 1 the negative one or an input error, and 2 a
usage error or an input over the brute-force size bound.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calculus import ProofEntry, ProofScript, RuleError, check_proof
from .core import InvalidPathError, canonicalize_ids, node_count
from .prover import Invalid, Valid, decide
from .semantics import (
    MissingAtomError,
    MissingClusterError,
    NotClassicalError,
    TooLargeError,
    compile_classical,
    ensure_within_bounds,
    metatrue,
    true_under,
    truth_table,
    valid,
)
from .syntax import (
    ParseError,
    format_interpretation,
    parse,
    parse_interpretation,
    parse_metaselection,
    parse_proof,
    print_cirquent,
    print_proof,
)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except TooLargeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (
        ParseError,
        RuleError,
        InvalidPathError,
        MissingAtomError,
        MissingClusterError,
        NotClassicalError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ifp",
        description="Work with cirquents: formulas whose disjunctions are "
        "grouped into clusters that must be resolved one way per cluster.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = _command(commands, "parse", "Parse a formula and print it back.")
    p.add_argument("--canonical", action="store_true", help="renumber clusters 1, 2, ...")
    p.add_argument(
        "--show-ids", action="store_true", help="print single-member cluster IDs too"
    )

    p = _command(commands, "eval", "Evaluate a formula under an interpretation.")
    p.add_argument("--model", required=True, help='interpretation, e.g. "p=1,q=0"')
    p.add_argument(
        "--metaselection",
        help='cluster sides, e.g. "1=left,2=right"; without this, every '
        "metaselection is tried",
    )

    p = _command(commands, "valid", "Decide validity by exhausting interpretations.")
    p.add_argument(
        "--max-atoms", type=int, help="override the brute-force size bound on atoms"
    )

    p = _command(commands, "prove", "Synthesize a checkable proof of a valid formula.")
    p.add_argument("-o", "--output", help="write the proof here instead of stdout")
    p.add_argument(
        "--trace", help="write the reduction's state-tuple trace to this file"
    )

    p = _command(commands, "check", "Check a proof file.")
    p.add_argument(
        "--infer",
        action="store_true",
        help="ignore the file's annotations and search for the rules",
    )

    _command(commands, "compile", "Compile to a classical formula in DNF.")

    p = _command(commands, "decide", "Prove the formula or print a countermodel.")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    return parser


def _command(commands, name: str, help_text: str) -> argparse.ArgumentParser:
    sub = commands.add_parser(name, help=help_text, description=help_text)
    sub.add_argument(
        "file", nargs="?", default="-", help="input file, or - for stdin (the default)"
    )
    sub.set_defaults(handler=globals()[f"_cmd_{name}"])
    return sub


def _read_source(args) -> str:
    if args.file == "-":
        return sys.stdin.read()
    with open(args.file, encoding="utf-8") as handle:
        return handle.read()


def _cmd_parse(args) -> int:
    c = parse(_read_source(args))
    if args.canonical:
        c = canonicalize_ids(c)
    print(print_cirquent(c, show_singleton_ids=args.show_ids))
    return 0


def _cmd_eval(args) -> int:
    c = parse(_read_source(args))
    interpretation = parse_interpretation(args.model)
    if args.metaselection is not None:
        result = metatrue(c, interpretation, parse_metaselection(args.metaselection))
    else:
        ensure_within_bounds(c)
        result = true_under(c, interpretation)
    print("true" if result else "false")
    return 0 if result else 1


def _cmd_valid(args) -> int:
    c = parse(_read_source(args))
    ok = valid(c, max_atoms=args.max_atoms)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _cmd_prove(args) -> int:
    c = parse(_read_source(args))
    decision = decide(c)
    if args.trace:
        lines = [st.as_line() for trace in decision.derivation.traces for st in trace]
        with open(args.trace, "w", encoding="utf-8") as handle:
            handle.write("".join(line + "\n" for line in lines))
    if isinstance(decision, Invalid):
        print("not provable", file=sys.stderr)
        return 1
    text = print_proof(decision.proof)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return 0


def _cmd_check(args) -> int:
    script = parse_proof(_read_source(args))
    if args.infer:
        script = ProofScript(tuple(ProofEntry(e.cirquent, None) for e in script.entries))
    failure = check_proof(script)
    if failure is None:
        print("ok")
        return 0
    print(f"line {failure.line}: {failure.reason}", file=sys.stderr)
    return 1


def _cmd_compile(args) -> int:
    c = parse(_read_source(args))
    compiled = compile_classical(truth_table(c))
    input_nodes = node_count(c)
    output_nodes = 0 if compiled is None else node_count(compiled)
    print("unsatisfiable" if compiled is None else print_cirquent(compiled))
    print(f"input-nodes: {input_nodes}")
    print(f"output-nodes: {output_nodes}")
    print(f"ratio: {output_nodes / input_nodes:.2f}")
    return 0


def _cmd_decide(args) -> int:
    c = parse(_read_source(args))
    decision = decide(c)
    if isinstance(decision, Valid):
        if args.json:
            payload = {"status": "valid", "proof": print_proof(decision.proof).splitlines()}
            print(json.dumps(payload))
        else:
            print(print_proof(decision.proof), end="")
        return 0
    if args.json:
        payload = {"status": "invalid", "countermodel": decision.countermodel}
        print(json.dumps(payload, sort_keys=True))
    else:
        print("countermodel: " + format_interpretation(decision.countermodel))
    return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: anf, compile, verify, render, counts, search.

Exit codes: 0 success, 1 verification mismatch, 2 parse/usage error,
3 non-classical quantum output.  Compiled programs go to stdout as JSON (the
count line goes to stderr) so output pipes straight into ``verify``.
"""

from __future__ import annotations

import argparse
import sys

from . import serialize
from .boolfunc import (
    Anf,
    ParseError,
    TruthTable,
    anf_of,
    format_monomials,
    parse_monomials,
    parse_table,
    truth_table_of,
)
from .program import QUANTUM, ProgramError, RomProgram, rom_call_count
from .render import render_program
from .search import (
    NotFoundWithinDepth,
    SearchTarget,
    conjectured_minimal_calls,
    minimal_program,
)
from .sim_classical import extract_function
from .sim_quantum import NonClassicalOutput, extract_boolean
from .synth_classical import (
    and_barrington,
    and_sequence,
    anf_to_circuit,
    balanced_and_circuit,
    circuit_inputs,
    circuit_to_three_bit,
    compile_pair,
    parse_circuit,
)
from .synth_quantum import and_fast, and_naive, compile_function

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NONCLASSICAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE) -> None:
        super().__init__(message)
        self.code = code


def _parse_function(
    monomials: str | None, table: str | None, num_vars: int | None
) -> Anf:
    if (monomials is None) == (table is None):
        raise CliError("give exactly one of --monomials or --table")
    if monomials is not None:
        return parse_monomials(monomials, num_vars)
    return anf_of(parse_table(table, num_vars))


def _cmd_anf(args: argparse.Namespace) -> int:
    if args.monomials is not None and args.table is not None:
        raise CliError("give exactly one of --monomials or --table")
    if args.table is not None:
        table = parse_table(args.table, args.num_vars)
        print(format_monomials(anf_of(table)))
    elif args.monomials is not None:
        anf = parse_monomials(args.monomials, args.num_vars)
        print(truth_table_of(anf).to_bit_string())
    else:
        raise CliError("give exactly one of --monomials or --table")
    return EXIT_OK


def _infer_rom_bits(args: argparse.Namespace, fallback: int) -> int:
    if args.num_rom_bits is not None:
        return args.num_rom_bits
    return max(fallback, 1)


def _cmd_compile(args: argparse.Namespace) -> int:
    naive = args.naive
    if args.backend == "quantum1":
        if args.and_of is not None:
            j = _infer_rom_bits(args, args.and_of)
            controls = list(range(1, args.and_of + 1))
            program = (and_naive if naive else and_fast)(controls, j)
        else:
            anf = _parse_function(args.monomials, args.table, args.num_vars)
            j = _infer_rom_bits(args, anf.num_vars)
            if j != anf.num_vars:
                anf = Anf(j, anf.monomials)
            program = compile_function(anf, j, method="naive" if naive else "fast")
    elif args.backend == "classical2":
        if args.and_of is not None:
            j = _infer_rom_bits(args, args.and_of)
            program, _ = and_sequence(args.and_of, j)
        else:
            if args.f1 is None and args.f2 is None and (args.monomials or args.table):
                args.f1 = args.monomials if args.monomials is not None else "t:" + args.table
            f1 = _parse_component(args.f1, args.num_vars)
            f2 = _parse_component(args.f2, args.num_vars)
            j = _infer_rom_bits(args, max(f1.num_vars if f1 else 1, f2.num_vars if f2 else 1))
            f1 = Anf(j, f1.monomials if f1 else frozenset())
            f2 = Anf(j, f2.monomials if f2 else frozenset())
            program = compile_pair(f1, f2, j)
    else:  # classical3
        if args.and_of is not None:
            j = _infer_rom_bits(args, args.and_of)
            if j == args.and_of:
                program = and_barrington(j)
            else:
                program = circuit_to_three_bit(balanced_and_circuit(args.and_of), j)
        elif args.circuit is not None:
            circuit = parse_circuit(args.circuit)
            j = _infer_rom_bits(args, max(circuit_inputs(circuit)))
            program = circuit_to_three_bit(circuit, j)
        else:
            anf = _parse_function(args.monomials, args.table, args.num_vars)
            j = _infer_rom_bits(args, anf.num_vars)
            program = circuit_to_three_bit(anf_to_circuit(Anf(j, anf.monomials)), j)
    text = serialize.dumps(program)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    print(f"rom_calls={rom_call_count(program)} gates={len(program)}", file=sys.stderr)
    return EXIT_OK


def _parse_component(spec: str | None, num_vars: int | None) -> Anf | None:
    """A component function given as ``1,1.2`` / ``m:...`` / ``t:0100``."""
    if spec is None:
        return None
    if spec.startswith("t:"):
        return anf_of(parse_table(spec[2:], num_vars))
    if spec.startswith("m:"):
        spec = spec[2:]
    return parse_monomials(spec, num_vars)


def _read_program(path: str) -> RomProgram:
    if path == "-":
        return serialize.loads(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as handle:
        return serialize.loads(handle.read())


def _cmd_verify(args: argparse.Namespace) -> int:
    program = _read_program(args.program)
    j = program.space.num_rom_bits
    n = program.space.num_writable
    specs = [args.f1, args.f2, args.f3][:n]
    if args.monomials is not None or args.table is not None:
        if specs[0] is not None:
            raise CliError("--monomials/--table conflict with --f1")
        specs[0] = args.monomials if args.monomials is not None else "t:" + args.table
    expected = []
    for spec in specs:
        anf = _parse_component(spec, j)
        if anf is None:
            expected.append(TruthTable.constant(j, 0))
        else:
            if anf.num_vars > j:
                raise CliError(f"expected function uses more than {j} variables")
            expected.append(truth_table_of(Anf(j, anf.monomials)))

    if program.space.kind == QUANTUM:
        try:
            actual = [extract_boolean(program)]
        except NonClassicalOutput as exc:
            print(f"non-classical output: {exc}")
            return EXIT_NONCLASSICAL
    else:
        actual = list(extract_function(program).components)

    for u in range(1 << j):
        for comp, (got, want) in enumerate(zip(actual, expected), start=1):
            if got.bits[u] != want.bits[u]:
                bits = ",".join(str(u >> b & 1) for b in range(j))
                print(f"mismatch at u=({bits}) component {comp}: got {got.bits[u]} expected {want.bits[u]}")
                return EXIT_MISMATCH
    print(f"ok: all {1 << j} assignments match")
    return EXIT_OK


def _cmd_render(args: argparse.Namespace) -> int:
    program = _read_program(args.program)
    sys.stdout.write(render_program(program))
    return EXIT_OK


def _cmd_counts(args: argparse.Namespace) -> int:
    if args.j_max > 16:
        raise CliError("counts table is capped at 16 ROM bits")
    header = f"{'j':>3} {'naive':>8} {'fast':>8} {'twobit':>8} {'barrington':>11} {'conjectured':>11}"
    print(header)
    for j in range(1, args.j_max + 1):
        controls = list(range(1, j + 1))
        naive = rom_call_count(and_naive(controls, j))
        fast = rom_call_count(and_fast(controls, j))
        sseq = rom_call_count(and_sequence(j, j)[0])
        barr = rom_call_count(and_barrington(j))
        rec = conjectured_minimal_calls(j)
        print(f"{j:>3} {naive:>8} {fast:>8} {sseq:>8} {barr:>11} {rec:>11}")
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    if args.j == 4 and not args.enable_j4:
        raise CliError("j=4 takes a long exhaustive run; pass --enable-j4 to confirm")
    target = SearchTarget.all_bits_and(args.j)
    try:
        result = minimal_program(target, args.max_depth)
    except NotFoundWithinDepth as exc:
        raise CliError(str(exc), EXIT_MISMATCH) from exc
    print(serialize.dumps(result.witness))
    print(
        f"j={args.j} min_rom_calls={result.minimal_rom_calls} nodes={result.nodes_expanded}",
        file=sys.stderr,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="romcomp",
        description="Compile, simulate, verify and search ROM-conditioned gate programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    anf = sub.add_parser(
        "anf",
        help="convert between truth tables and XOR-of-AND monomial lists",
        description=(
            "Tables are 0/1 strings in assignment order (u1 is the least "
            "significant index bit), or big-endian hex of that bit sequence "
            "(prefix 0x to force hex).  Monomial lists look like '1,1.2' "
            "for u1 XOR u1u2; '0' is the constant-1 monomial; an empty "
            "string is the constant 0."
        ),
    )
    anf.add_argument("--table", help="truth table, bits or hex")
    anf.add_argument("--monomials", help="monomial list like 1,1.2")
    anf.add_argument("--num-vars", type=int, default=None, help="number of variables")
    anf.set_defaults(func=_cmd_anf)

    comp = sub.add_parser("compile", help="compile a boolean function to a ROM program")
    comp.add_argument("--backend", required=True, choices=["quantum1", "classical2", "classical3"])
    comp.add_argument("--and-of", type=int, default=None, metavar="M",
                      help="compile the AND of ROM bits 1..M")
    comp.add_argument("--monomials", help="function as a monomial list")
    comp.add_argument("--table", help="function as a truth table")
    comp.add_argument("--f1", help="classical2: first component (monomials, m:... or t:...)")
    comp.add_argument("--f2", help="classical2: second component")
    comp.add_argument("--circuit", help="classical3: prefix circuit like '(and x1 (or x2 x3))'")
    comp.add_argument("--num-vars", type=int, default=None, help="variables in --monomials/--table")
    comp.add_argument("--num-rom-bits", type=int, default=None, help="ROM width of the program")
    comp.add_argument("--naive", action="store_true", help="quantum1: doubling construction")
    comp.add_argument("-o", "--output", help="write the JSON program here instead of stdout")
    comp.set_defaults(func=_cmd_compile)

    ver = sub.add_parser("verify", help="check a program against an expected function")
    ver.add_argument("program", help="program JSON file, or - for stdin")
    ver.add_argument("--monomials", help="expected function (component 1)")
    ver.add_argument("--table", help="expected table (component 1)")
    ver.add_argument("--f1", help="expected component 1 (monomials, m:... or t:...)")
    ver.add_argument("--f2", help="expected component 2")
    ver.add_argument("--f3", help="expected component 3")
    ver.set_defaults(func=_cmd_verify)

    ren = sub.add_parser("render", help="draw a program as a text circuit diagram")
    ren.add_argument("program", help="program JSON file, or - for stdin")
    ren.set_defaults(func=_cmd_render)

    cnt = sub.add_parser("counts", help="ROM-call counts of the AND constructions per width")
    cnt.add_argument("--j-max", type=int, default=8)
    cnt.set_defaults(func=_cmd_counts)

    srch = sub.add_parser("search", help="exhaustive minimal-ROM-call search for the AND target")
    srch.add_argument("--j", type=int, required=True, choices=[1, 2, 3, 4])
    srch.add_argument("--max-depth", type=int, default=12)
    srch.add_argument("--enable-j4", action="store_true",
                      help="confirm the long-running j=4 search")
    srch.set_defaults(func=_cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ProgramError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()

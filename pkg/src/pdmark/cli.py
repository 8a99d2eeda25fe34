"""Command-line interface.

Exit codes: 0 success or true, 1 checked property false, 2 usage or input
error, 3 resource bound hit.  Every result goes to stdout as canonical JSON
(or DOT, or a bare rank for ``rank --config``).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path

from . import __version__
from .fragment import (SCHEMA_VERSION, Bounds, Fragment, MarkedFragment, decode_fragment,
                       dumps, encode_fragment, explore, export_dot)
from .gadget import (build_gadget, counters_of, region_fragment, triple_of, zero_oracle,
                     zero_test_canonical, zero_test_robust)
from .games import attractor, game_from_dict
from .marking import check_well_formed, sample_well_formed
from .minsky import (Canonical, ResourceLimitError, Sampled, compare, decode_machine,
                     run_direct, run_via_marking)
from .pda import (FormatError, InputContractError, Pda, builtin_pda, decode_pda, encode_pda,
                  parse_config, pda_to_dict, validate)
from .rank import (encode_pautomaton, encode_rank_table, format_rank, level_sets,
                   mark_fragment, prestar, rank_of, rank_table, rank_via_saturation)

TOOL = "pdmark"
OK, FALSE, USAGE, RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def version_info() -> str:
    return f"{TOOL} {__version__} (fragment schema {SCHEMA_VERSION})\n"


def load_pda(spec: str) -> Pda:
    if spec == "gadget":
        return build_gadget()
    try:
        return builtin_pda(spec)
    except LookupError:
        pass
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"--pda {spec!r} is neither a builtin nor a file")
    pda = decode_pda(path.read_text(encoding="utf-8"))
    problems = validate(pda)
    if problems:
        raise UsageError(f"{spec}: invalid PDA ({problems[0].kind}: {problems[0].subject})")
    return pda


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _fragment(args, pda: Pda) -> Fragment:
    """``--in`` file if given, else an exploration from ``--root`` (default initial)."""
    if args.input:
        f = decode_fragment(_read(args.input))
        return f.fragment if isinstance(f, MarkedFragment) else f
    roots = [parse_config(r) for r in args.root] or [pda.initial_config]
    return explore(pda, roots, Bounds(args.depth, args.height))


def _marked(args, pda: Pda) -> MarkedFragment:
    f = decode_fragment(_read(args.input))
    if not isinstance(f, MarkedFragment):
        return mark_fragment(pda, f)
    return f


def _seeds(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad seed list {text!r}") from None


# -- subcommands -----------------------------------------------------------------

def cmd_pda(args, out) -> int:
    pda = load_pda(args.pda) if args.action == "show" else _load_unvalidated(args.pda)
    if args.action == "show":
        out.write(encode_pda(pda))
        return OK
    problems = validate(pda)
    out.write(dumps({"ok": not problems,
                     "violations": [p._asdict() for p in problems]}))
    return OK if not problems else FALSE


def _load_unvalidated(spec: str) -> Pda:
    if spec == "gadget":
        return build_gadget()
    try:
        return builtin_pda(spec)
    except LookupError:
        return decode_pda(_read(spec))


def cmd_explore(args, out) -> int:
    pda = load_pda(args.pda)
    out.write(encode_fragment(_fragment(args, pda)))
    return OK


def cmd_rank(args, out) -> int:
    pda = load_pda(args.pda)
    engine = rank_of if args.engine == "levels" else rank_via_saturation
    if args.config:
        out.write(f"{format_rank(engine(pda, parse_config(args.config)))}\n")
        return OK
    if not args.input:
        raise UsageError("rank needs --config or --in")
    fragment = _fragment(args, pda)
    out.write(encode_rank_table(rank_table(pda, fragment.vertices)))
    return OK


def cmd_levels(args, out) -> int:
    pda = load_pda(args.pda)
    out.write(dumps(level_sets(pda, args.n).to_dict()))
    return OK


def cmd_prestar(args, out) -> int:
    out.write(encode_pautomaton(prestar(load_pda(args.pda))))
    return OK


def cmd_mark(args, out) -> int:
    pda = load_pda(args.pda)
    out.write(encode_fragment(mark_fragment(pda, _fragment(args, pda))))
    return OK


def cmd_check_marking(args, out) -> int:
    pda = load_pda(args.pda)
    verdict = check_well_formed(pda, _marked(args, pda))
    out.write(verdict.encode())
    return OK if verdict.ok else FALSE


def cmd_sample_marking(args, out) -> int:
    pda = load_pda(args.pda)
    out.write(encode_fragment(sample_well_formed(pda, _fragment(args, pda), args.seed)))
    return OK


def cmd_export_dot(args, out) -> int:
    out.write(export_dot(decode_fragment(_read(args.input))))
    return OK


def cmd_gadget(args, out) -> int:
    pda = build_gadget()
    if args.action == "build":
        out.write(encode_pda(pda))
        return OK
    if not args.config:
        raise UsageError(f"gadget {args.action} needs --config")
    c = pda.check_config(parse_config(args.config))
    if args.action == "triple":
        out.write(dumps({"config": str(c), "triple": list(triple_of(c)),
                         "counters": list(counters_of(c))}))
        return OK
    if args.seed is not None:
        fragment = region_fragment(pda, c, args.which)
        result = zero_test_robust(pda, sample_well_formed(pda, fragment, args.seed), c, args.which)
        method = f"robust/sampled:{args.seed}"
    elif args.robust:
        result = zero_test_robust(pda, mark_fragment(pda, region_fragment(pda, c, args.which)),
                                  c, args.which)
        method = "robust/canonical"
    else:
        result = zero_test_canonical(pda, c, args.which)
        method = "canonical"
    if args.json:
        out.write(dumps({"config": str(c), "which": args.which, "method": method,
                         "zero": result, "oracle": zero_oracle(c, args.which)}))
        return OK
    out.write(("true" if result else "false") + "\n")
    return OK if result else FALSE


def cmd_minsky(args, out) -> int:
    machine = decode_machine(_read(args.machine))
    if args.action == "run":
        out.write(dumps(run_direct(machine, args.fuel).to_dict()))
        return OK
    if args.action == "reduce":
        mode = Sampled(args.seed) if args.seed is not None else Canonical()
        verdict = run_via_marking(machine, build_gadget(), mode, args.fuel, args.ceiling)
        out.write(dumps({"mode": str(mode), "verdict": verdict.to_dict()}))
        return OK
    report = compare(machine, args.fuel, _seeds(args.seeds), args.ceiling)
    out.write(dumps(report.to_dict()))
    return OK if report.agree else FALSE


def cmd_game(args, out) -> int:
    pda = load_pda(args.pda)
    try:
        obj = json.loads(_read(args.input))
    except ValueError as exc:
        raise FormatError(f"invalid JSON: {exc}", "$") from None
    if isinstance(obj, dict) and "owner" not in obj:
        # plain fragment: every state is Eve's unless named with --adam
        unknown = set(args.adam) - pda.states
        if unknown:
            raise UsageError(f"--adam names unknown states: {', '.join(sorted(unknown))}")
        obj["owner"] = {q: "adam" if q in args.adam else "eve" for q in sorted(pda.states)}
    elif args.adam:
        raise UsageError("--adam only applies to fragments without an owner map")
    game = game_from_dict(obj)
    result = attractor(game, pda.finals)
    payload = result.to_dict()
    payload["note"] = "frontier vertices count as losing for eve; winning set is sound, possibly incomplete"
    out.write(dumps(payload))
    return OK


def cmd_version(args, out) -> int:
    out.write(version_info())
    return OK


# -- parser ----------------------------------------------------------------------

def _add_explore_args(p: argparse.ArgumentParser, need_pda: bool = True) -> None:
    if need_pda:
        p.add_argument("--pda", required=True, help="builtin name or PDA JSON file")
    p.add_argument("--in", dest="input", help="fragment JSON file ('-' for stdin)")
    p.add_argument("--root", action="append", default=[], help="root configuration, repeatable")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--height", type=int, default=3)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Ranks and markings on pushdown graphs")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pda", help="validate or print an automaton")
    p.add_argument("action", choices=["validate", "show"])
    p.add_argument("--pda", required=True)
    p.set_defaults(func=cmd_pda)

    p = sub.add_parser("explore", help="bounded BFS fragment")
    _add_explore_args(p)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("rank", help="rank of a configuration or of every fragment vertex")
    p.add_argument("--pda", required=True)
    p.add_argument("--config")
    p.add_argument("--in", dest="input")
    p.add_argument("--engine", choices=["levels", "saturation"], default="levels")
    p.set_defaults(func=cmd_rank, root=[], depth=0, height=0)

    p = sub.add_parser("levels", help="level sets W_0..W_n")
    p.add_argument("--pda", required=True)
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("prestar", help="saturated P-automaton")
    p.add_argument("--pda", required=True)
    p.set_defaults(func=cmd_prestar)

    p = sub.add_parser("mark", help="canonical marking of a fragment")
    _add_explore_args(p)
    p.set_defaults(func=cmd_mark)

    p = sub.add_parser("check-marking", help="check a marked fragment")
    p.add_argument("--pda", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_check_marking)

    p = sub.add_parser("sample-marking", help="random well-formed marking")
    _add_explore_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample_marking)

    p = sub.add_parser("export-dot", help="Graphviz text for a fragment")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gadget", help="counter-encoding automaton")
    p.add_argument("action", choices=["build", "triple", "zero-test"])
    p.add_argument("--config")
    p.add_argument("--which", type=int, choices=[1, 2], default=1)
    p.add_argument("--robust", action="store_true", help="even-configuration test")
    p.add_argument("--seed", type=int, help="robust test under a sampled marking")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("minsky", help="two-counter machines")
    p.add_argument("action", choices=["run", "reduce", "compare"])
    p.add_argument("--machine", required=True)
    p.add_argument("--fuel", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.add_argument("--seeds", default="")
    p.add_argument("--ceiling", type=int, default=64)
    p.set_defaults(func=cmd_minsky)

    p = sub.add_parser("game", help="reachability games on fragments")
    p.add_argument("action", choices=["attractor"])
    p.add_argument("--pda", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--adam", action="append", default=[], help="state owned by Adam, repeatable")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("version")
    p.set_defaults(func=cmd_version)
    return parser


def run_command(argv: list[str]) -> tuple[int, str]:
    """Run one command; returns (exit code, stdout text).  Errors go to stderr."""
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):  # keeps --help text
            args = build_parser().parse_args(argv)
        code = args.func(args, out)
    except (UsageError, FormatError, InputContractError, LookupError) as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return USAGE, out.getvalue()
    except ResourceLimitError as exc:
        print(f"{TOOL}: resource limit: {exc}", file=sys.stderr)
        return RESOURCE, out.getvalue()
    except SystemExit as exc:  # --help
        return (exc.code if isinstance(exc.code, int) else USAGE), out.getvalue()
    return code, out.getvalue()


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv in (["-h"], ["--help"]):
        build_parser().print_help()
        return OK
    code, text = run_command(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

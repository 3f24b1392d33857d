"""Command-line front end.

Exit codes: 0 success, 1 well-formed negative answer (not controllable,
decision "no", unreachable), 2 usage or input error, 3 size guard or search
budget exceeded, 4 a synthesized sequence failed its own re-simulation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__
from .analysis import check_controllability, decompose_controlled_paths, format_path
from .errors import NotControllableError, ParseError, SearchBudgetExceeded, TooLargeError
from .minctrl import decision_min_controls, greedy_control_set, minimal_control_set
from .model import (
    CBN,
    as_cbcn,
    bits_to_str,
    build_dependency_graph,
    parse_bits,
    parse_cbn,
    parse_edge_list,
    to_dot,
)
from .oracle import min_dominating_set, oracle_controllable, shortest_steering, state_graph
from .reduction import build_reduction, solve_dominating_via_controllability
from .synthesis import simulate, synthesize

OK, NEGATIVE, USAGE, BUDGET, VERIFY_FAILED = 0, 1, 2, 3, 4


@dataclass
class CommandOutcome:
    exit_code: int
    text: str
    record: Optional[dict] = None


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_net(path):
    return parse_cbn(_read(path))


def _load_graph(path):
    return parse_edge_list(_read(path))


def _state(text, n, what):
    try:
        return parse_bits(text, n)
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _set_text(names):
    return "{" + ", ".join(names) + "}"


def _cmd_check(args):
    net = _load_net(args.file)
    g = build_dependency_graph(net)
    verdict = check_controllability(g)
    text = to_dot(g).rstrip() if args.dot else verdict.describe()
    return CommandOutcome(OK if verdict.controllable else NEGATIVE, text, verdict.to_record())


def _cmd_decompose(args):
    g = build_dependency_graph(_load_net(args.file))
    try:
        paths = decompose_controlled_paths(g)
    except NotControllableError as exc:
        return CommandOutcome(NEGATIVE, str(exc), exc.verdict.to_record())
    lines = [format_path(g, p) for p in paths]
    record = {"paths": [[g.label(v) for v in p] for p in paths]}
    return CommandOutcome(OK, "\n".join(lines), record)


def _cmd_synthesize(args):
    net = as_cbcn(_load_net(args.file))
    a = _state(args.source, net.n, "--from")
    b = _state(args.target, net.n, "--to")
    try:
        seq = synthesize(net, a, b)
    except NotControllableError as exc:
        return CommandOutcome(NEGATIVE, str(exc), exc.verdict.to_record())
    final = simulate(net, a, seq)[-1]
    if final != b:
        return CommandOutcome(
            VERIFY_FAILED,
            f"internal error: sequence ends in {bits_to_str(final)}, not {bits_to_str(b)}",
        )
    lines = [bits_to_str(u) for u in seq]
    record = {
        "controls": [net.names[i - 1] for i in net.controls],
        "horizon": len(seq),
        "sequence": lines,
        "final": bits_to_str(final),
    }
    return CommandOutcome(OK, "\n".join(lines), record)


def _parse_seq(text, width):
    if text is None or not text.strip():
        return []
    seq = []
    for token in text.split(","):
        token = token.strip()
        if token == "-":
            token = ""
        try:
            seq.append(parse_bits(token, width))
        except ValueError as exc:
            raise UsageError(f"--seq: {exc}") from None
    return seq


def _cmd_simulate(args):
    net = as_cbcn(_load_net(args.file))
    x0 = _state(args.source, net.n, "--from")
    seq = _parse_seq(args.seq, len(net.controls))
    if args.steps is not None:
        if seq:
            raise UsageError("--steps and --seq are mutually exclusive")
        if net.controls:
            raise UsageError("--steps is only for networks without controls")
        seq = [()] * args.steps
    trajectory = [bits_to_str(x) for x in simulate(net, x0, seq)]
    return CommandOutcome(OK, "\n".join(trajectory), {"trajectory": trajectory})


def _cmd_minimize(args):
    net = _load_net(args.file)
    if not isinstance(net, CBN):
        raise UsageError("minimize expects a network without '?' controls")
    if args.greedy:
        if args.k is not None:
            raise UsageError("-k needs exact search; drop --greedy")
        result = greedy_control_set(net)
    else:
        if args.k is not None and not decision_min_controls(net, args.k, args.max_tests):
            record = {"decision": False, "k": args.k}
            return CommandOutcome(NEGATIVE, f"no: every control set has more than {args.k} variables", record)
        result = minimal_control_set(net, args.max_tests)
    names = [net.names[i - 1] for i in result.control_set]
    kind = "exact" if result.exact else "greedy"
    text = f"control set {_set_text(names)}, size {result.cardinality} ({kind})"
    record = result.to_record(net.names, timing=args.timing)
    if args.k is not None:
        text = "yes, " + text
        record["decision"] = True
        record["k"] = args.k
    if args.timing:
        text += f", {result.tested_count} tests in {result.elapsed:.3f}s"
    return CommandOutcome(OK, text, record)


def _cmd_reduce(args):
    g = _load_graph(args.graph)
    isolated = "force" if args.force_isolated else "reject"
    if args.emit_cbn:
        from .model import format_cbn

        return CommandOutcome(OK, format_cbn(build_reduction(g, isolated).cbn).rstrip())
    try:
        result = solve_dominating_via_controllability(g, args.k, isolated, args.max_tests)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = result.to_record()
    body = f"Y={_set_text(record['Y'])}, gamma={result.gamma}, total controls={result.total_controls}"
    if result.decision is None:
        return CommandOutcome(OK, body, record)
    return CommandOutcome(OK if result.decision else NEGATIVE, ("yes, " if result.decision else "no, ") + body, record)


def _cmd_oracle(args):
    net = as_cbcn(_load_net(args.file))
    sg = state_graph(net)
    if args.dot:
        return CommandOutcome(OK, sg.to_dot().rstrip())
    if args.pair:
        a = _state(args.pair[0], net.n, "--pair")
        b = _state(args.pair[1], net.n, "--pair")
        seq = shortest_steering(sg, a, b)
        if seq is None:
            return CommandOutcome(NEGATIVE, "unreachable", {"reachable": False})
        lines = [bits_to_str(u) for u in seq]
        text = f"shortest steering length {len(seq)}" + "".join("\n" + s for s in lines)
        return CommandOutcome(OK, text, {"reachable": True, "length": len(seq), "sequence": lines})
    ok = oracle_controllable(sg)
    text = "controllable (state graph strongly connected)" if ok else "not controllable (state graph not strongly connected)"
    return CommandOutcome(OK if ok else NEGATIVE, text, {"controllable": ok, "states": sg.n_states})


def _cmd_domset(args):
    g = _load_graph(args.graph)
    result = min_dominating_set(g, args.k)
    names = [g.vertex_name(v) for v in result.dominating_set]
    record = {"D": names, "gamma": result.gamma, "decision": result.decision}
    body = f"D={_set_text(names)}, gamma={result.gamma}"
    if result.decision is None:
        return CommandOutcome(OK, body, record)
    return CommandOutcome(OK if result.decision else NEGATIVE, ("yes, " if result.decision else "no, ") + body, record)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="cbn-control",
        description="Controllability tools for conjunctive Boolean control networks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="controllability verdict")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="print the dependency graph as DOT")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="controlled-path decomposition")
    p.add_argument("file")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("synthesize", parents=[common], help="control sequence from A to B")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True, metavar="A")
    p.add_argument("--to", dest="target", required=True, metavar="B")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("simulate", parents=[common], help="trajectory under a control sequence")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True, metavar="A")
    p.add_argument("--seq", metavar="S", help="comma-separated control vectors, e.g. 10,01,11")
    p.add_argument("--steps", type=int, help="number of steps for networks without controls")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("minimize", parents=[common], help="minimum control set")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact search (default)")
    mode.add_argument("--greedy", action="store_true", help="greedy heuristic")
    p.add_argument("-k", type=int, help="decision version: is there a set of size <= k?")
    p.add_argument("--max-tests", type=int, help="budget of controllability tests")
    p.add_argument("--timing", action="store_true", help="report elapsed time and test count")
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("reduce-ds", parents=[common], help="dominating set through the controllability reduction")
    p.add_argument("graph")
    p.add_argument("-k", type=int)
    p.add_argument("--force-isolated", action="store_true", help="put isolated vertices in Y instead of rejecting")
    p.add_argument("--max-tests", type=int)
    p.add_argument("--emit-cbn", action="store_true", help="print the reduction network and stop")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("oracle", parents=[common], help="brute force on the state graph")
    p.add_argument("file")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"), help="shortest steering from A to B")
    p.add_argument("--dot", action="store_true", help="print the state graph as DOT")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("domset", parents=[common], help="exact minimum dominating set")
    p.add_argument("graph")
    p.add_argument("-k", type=int)
    p.set_defaults(func=_cmd_domset)
    return parser


def run(argv: Sequence[str]) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return CommandOutcome(exc.code if isinstance(exc.code, int) else USAGE, "")
    try:
        outcome = args.func(args)
    except (UsageError, ParseError) as exc:
        return CommandOutcome(USAGE, f"error: {exc}")
    except (TooLargeError, SearchBudgetExceeded) as exc:
        record = None
        if isinstance(exc, SearchBudgetExceeded) and exc.upper_bound is not None:
            record = {"upper_bound": list(exc.upper_bound), "tested_count": exc.tested_count}
        return CommandOutcome(BUDGET, f"error: {exc}", record)
    except ValueError as exc:
        return CommandOutcome(USAGE, f"error: {exc}")
    if args.format != "json":
        outcome.record = None
    elif outcome.record is None:
        outcome.record = {"text": outcome.text}
    return outcome


def main(argv: Optional[Sequence[str]] = None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    if outcome.record is not None:
        print(json.dumps(outcome.record, indent=2, sort_keys=True))
    elif outcome.text:
        stream = sys.stderr if outcome.exit_code in (USAGE, BUDGET, VERIFY_FAILED) else sys.stdout
        print(outcome.text, file=stream)
    return outcome.exit_code

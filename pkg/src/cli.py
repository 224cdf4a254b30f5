"""
Command-line interface for invariants, stabilizations, sums, isotopy and
Cost searches, Cost formulas, front generation and Cost graphs.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional, TextIO, Tuple

from .config import config
from .cost import cost_between
from .front_core import (
    BUILTIN_WORDS,
    OrientedFront,
    builtin_front,
    classical_invariants,
    connect_sum,
    front_from_json,
    front_to_json,
    orient_front,
    parse_front,
)
from .graph import build_cost_graph, export_graph, verify_metric
from .isotopy import SearchBudget, cost_search, lr_equivalent
from .knot_types import e_front, resolve_descriptor, standard_front
from .moves import MINUS, PLUS, stabilize

logger = logging.getLogger(__name__)


def _pair(text: str) -> Tuple[int, int]:
    try:
        tb, rot = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected TB,ROT, got {text!r}")
    return tb, rot


class _Parser(argparse.ArgumentParser):
    """Reads negative TB,ROT pairs such as -1,0 as values, not as options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(,-?\d+)?$")


def read_front(source: str) -> OrientedFront:
    """A front from a file (plain word or JSON document), stdin ("-") or a built-in name."""
    if source == "-":
        text = sys.stdin.read()
    elif not Path(source).exists() and source in BUILTIN_WORDS:
        return builtin_front(source)
    else:
        text = Path(source).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return front_from_json(text)
    return orient_front(parse_front(text))


def _emit(out: TextIO, payload) -> None:
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def _emit_model(out: TextIO, model) -> None:
    _emit(out, model.model_dump(mode="json", exclude_none=True))


def _emit_front(out: TextIO, front: OrientedFront) -> None:
    payload = json.loads(front_to_json(front))
    payload["invariants"] = classical_invariants(front).model_dump()
    _emit(out, payload)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget.build(
        max_width=args.max_width,
        max_events=args.max_events,
        max_states=args.max_states,
        max_cost=args.max_cost,
    )


def cmd_invariants(args, out: TextIO) -> int:
    _emit_model(out, classical_invariants(read_front(args.front)))
    return 0


def cmd_stabilize(args, out: TextIO) -> int:
    front = stabilize(read_front(args.front), args.sign, args.site)
    _emit_front(out, front)
    return 0


def cmd_sum(args, out: TextIO) -> int:
    _emit_front(out, connect_sum(read_front(args.front_a), read_front(args.front_b)))
    return 0


def cmd_isotopy(args, out: TextIO) -> int:
    verdict = lr_equivalent(read_front(args.front_a), read_front(args.front_b), _budget(args), args.threads)
    _emit_model(out, verdict)
    return 0


def cmd_cost(args, out: TextIO) -> int:
    result = cost_search(read_front(args.front_a), read_front(args.front_b), _budget(args), args.threads)
    _emit_model(out, result)
    return 0


def cmd_cost_simple(args, out: TextIO) -> int:
    descriptor = resolve_descriptor(args.type, args.desc)
    _emit_model(out, cost_between(descriptor, args.a, args.b))
    return 0


def cmd_gen(args, out: TextIO) -> int:
    name = args.name
    if name == "e":
        if not args.params:
            raise ValueError("gen e needs K,L parameters")
        k, l = _pair(args.params)
        name = f"e({k},{l})"
        front = e_front(k, l)
    elif name in BUILTIN_WORDS:
        front = builtin_front(name)
    else:
        raise ValueError(f"unknown generator {name!r}")
    if args.cls is not None:
        front = standard_front(name, *args.cls)
    _emit_front(out, front)
    return 0


def cmd_graph(args, out: TextIO) -> int:
    graph = build_cost_graph(resolve_descriptor(args.type, args.desc), args.floor)
    out.write(export_graph(graph, args.format).rstrip("\n") + "\n")
    return 0


def cmd_verify(args, out: TextIO) -> int:
    graph = build_cost_graph(resolve_descriptor(args.type, args.desc), args.floor)
    _emit_model(out, verify_metric(graph))
    return 0


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("search budget")
    group.add_argument("--max-width", type=int, help=f"max strands in a slice (default {config.SEARCH_MAX_WIDTH})")
    group.add_argument("--max-events", type=int, help=f"max word length (default {config.SEARCH_MAX_EVENTS})")
    group.add_argument("--max-states", type=int, help=f"max canonical words explored (default {config.SEARCH_MAX_STATES})")
    group.add_argument("--max-cost", type=int, help=f"max total stabilizations (default {config.SEARCH_MAX_COST})")
    group.add_argument("--threads", type=int, default=config.SEARCH_THREADS,
                       help=f"worker threads for frontier expansion (default {config.SEARCH_THREADS})")


def _add_type_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--type", help="built-in knot type: unknot, torus(p,q), left_trefoil")
    source.add_argument("--desc", help="knot-type descriptor JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="legcost", description="Cost function toolkit for Legendrian fronts")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="print tb, rot, writhe and cusp counts")
    p.add_argument("front", help="front file, '-' for stdin, or a built-in name")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("stabilize", help="insert a stabilization zigzag")
    p.add_argument("front")
    p.add_argument("--sign", choices=[PLUS, MINUS], required=True)
    p.add_argument("--site", type=int, default=0, help="segment id (default 0)")
    p.set_defaults(handler=cmd_stabilize)

    p = sub.add_parser("sum", help="connected sum of two fronts")
    p.add_argument("front_a")
    p.add_argument("front_b")
    p.set_defaults(handler=cmd_sum)

    for name, handler, text in (("isotopy", cmd_isotopy, "bounded Legendrian isotopy search"),
                                ("cost", cmd_cost, "Cost by stabilization search")):
        p = sub.add_parser(name, help=text)
        p.add_argument("front_a")
        p.add_argument("front_b")
        _add_budget_flags(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("cost-simple", help="Cost formula for a simple knot type")
    _add_type_flags(p)
    p.add_argument("--a", type=_pair, required=True, metavar="TB,ROT")
    p.add_argument("--b", type=_pair, required=True, metavar="TB,ROT")
    p.set_defaults(handler=cmd_cost_simple)

    p = sub.add_parser("gen", help="generate a front")
    p.add_argument("name", choices=sorted(BUILTIN_WORDS) + ["e"])
    p.add_argument("params", nargs="?", help="K,L for the twist family")
    p.add_argument("--class", dest="cls", type=_pair, metavar="TB,ROT",
                   help="stabilize the peak front down to this class")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("graph", help="export the Cost graph")
    _add_type_flags(p)
    p.add_argument("--floor", type=int, required=True, help="lowest tb included")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(handler=cmd_graph)

    p = sub.add_parser("verify", help="check metric axioms of the Cost graph")
    _add_type_flags(p)
    p.add_argument("--floor", type=int, required=True)
    p.set_defaults(handler=cmd_verify)
    return parser


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """Run one command; returns 0 on success, 1 on domain errors, 2 on usage errors."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.handler(args, out)
    except (ValueError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"legcost {args.command}: {e}\n")
        return 1


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

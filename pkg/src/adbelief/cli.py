"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import io
from .belief_change import check_agm, detect_dilation, expand, revise
from .errors import ADError, EmptyConditioningEvent, NonRegularEvent
from .io import MalformedInput, dumps
from .models import ADModel, natural_extension
from .previsional import MAX_OUTCOMES, PrevisionalModel
from .showcase import DEMOS

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _read_json(source: str):
    """A path, ``-`` for stdin, or inline JSON text."""
    if source == "-":
        text = sys.stdin.read()
    else:
        path = Path(source)
        text = path.read_text() if path.is_file() else source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{source}: invalid JSON ({exc.msg})") from exc


def _load_model(source: str) -> ADModel:
    obj = _read_json(source)
    if isinstance(obj, dict) and "layers" in obj:
        P = io.prevision_from_json(obj)
        if len(P.space) > MAX_OUTCOMES:
            raise MalformedInput(f"previsions are limited to {MAX_OUTCOMES} outcomes")
        return PrevisionalModel(P)
    return natural_extension(io.assessment_from_json(obj))


def _emit(args, payload: dict):
    if args.format == "json":
        print(dumps(payload))
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        print(f"{key:<32} {value}")


def _require_model(args) -> ADModel:
    if args.model is None:
        raise MalformedInput("a model file is required")
    return _load_model(args.model)


def cmd_extend(args) -> int:
    A = io.assessment_from_json(_read_json(args.model))
    M = natural_extension(A)
    _emit(args, {"consistent": not M.is_contradiction, "model": io.model_to_json(M)})
    return EXIT_OK


def cmd_prevision(args) -> int:
    M = _require_model(args)
    if M.is_contradiction:
        raise MalformedInput("the model is inconsistent; previsions are undefined")
    f = io.gamble_from_json(M.space, _read_json(args.gamble))
    out = {"gamble": io.gamble_to_json(f)}
    if args.given is None:
        out["lower"] = str(M.lower_prevision(f))
        out["upper"] = str(M.upper_prevision(f))
    else:
        E = io.event_from_json(M.space, _read_json(args.given))
        out["given"] = io.event_to_json(E)
        out["lower"] = str(M.conditional_lower_prevision(f, E))
        out["upper"] = str(M.conditional_upper_prevision(f, E))
    _emit(args, out)
    return EXIT_OK


def _event_only_contradiction(args) -> bool:
    # with a non-regular event the result does not depend on the model
    ev = _read_json(args.event)
    return isinstance(ev, list) and not ev


def cmd_condition(args) -> int:
    M = _require_model(args)
    E = io.event_from_json(M.space, _read_json(args.event))
    _emit(args, {"event": io.event_to_json(E), "model": io.model_to_json(M.condition(E))})
    return EXIT_OK


def cmd_expand(args) -> int:
    if args.model is None and _event_only_contradiction(args):
        _emit(args, {"event": [], "model": {"contradiction": True}})
        return EXIT_OK
    M = _require_model(args)
    E = io.event_from_json(M.space, _read_json(args.event))
    _emit(args, {"event": io.event_to_json(E), "model": io.model_to_json(expand(M, E))})
    return EXIT_OK


def cmd_revise(args) -> int:
    if args.model is None and _event_only_contradiction(args):
        _emit(args, {"event": [], "model": {"contradiction": True}})
        return EXIT_OK
    M = _require_model(args)
    E = io.event_from_json(M.space, _read_json(args.event))
    _emit(args, {"event": io.event_to_json(E), "model": io.model_to_json(revise(M, E))})
    return EXIT_OK


def cmd_agm(args) -> int:
    M = _require_model(args)
    if M.is_contradiction:
        raise MalformedInput("the postulate check needs a consistent model")
    E1 = io.event_from_json(M.space, _read_json(args.e1))
    E2 = io.event_from_json(M.space, _read_json(args.e2))
    report = check_agm(M, E1, E2, samples=args.samples, seed=args.seed)
    _emit(args, {"E1": io.event_to_json(E1), "E2": io.event_to_json(E2),
                 "seed": args.seed, "samples": args.samples, "verdicts": report.to_json()})
    if args.strict and not report.holds():
        return EXIT_FAILED
    return EXIT_OK


def cmd_dilation(args) -> int:
    M = _require_model(args)
    E = io.event_from_json(M.space, _read_json(args.event))
    f = io.gamble_from_json(M.space, _read_json(args.gamble))
    _emit(args, {"event": io.event_to_json(E), "gamble": io.gamble_to_json(f),
                 "dilation": detect_dilation(M, E, f)})
    return EXIT_OK


def cmd_demo(args) -> int:
    fn = DEMOS[args.name]
    if args.name == "previsional-sweep":
        res = fn(count=args.count, seed=args.seed, samples=args.samples)
    elif args.name == "propositional-sweep":
        res = fn()
    else:
        res = fn(seed=args.seed)
    _emit(args, res.to_json())
    return EXIT_OK if res.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adbelief",
                description="Accept-desirability models: inference, conditioning and belief change.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomised check")
    common.add_argument("--samples", type=int, default=64, help="number of sampled gambles")
    common.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("extend", parents=[common], help="natural extension of an assessment")
    s.add_argument("model", help="model JSON (path, '-' or inline)")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("prevision", parents=[common], help="lower and upper prevision of a gamble")
    s.add_argument("model")
    s.add_argument("gamble", help="JSON list of rationals")
    s.add_argument("--given", help="JSON list of outcome labels")
    s.set_defaults(func=cmd_prevision)

    for name, func, helptext in (("condition", cmd_condition, "condition on an event"),
                                 ("expand", cmd_expand, "expand by an event"),
                                 ("revise", cmd_revise, "revise by an event")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("model", nargs="?")
        s.add_argument("--event", required=True, help="JSON list of outcome labels")
        s.set_defaults(func=func)

    s = sub.add_parser("agm-check", parents=[common], help="check BR1-BR8 for two events")
    s.add_argument("model")
    s.add_argument("--e1", required=True)
    s.add_argument("--e2", required=True)
    s.add_argument("--strict", action="store_true", help="exit 1 when a postulate fails")
    s.set_defaults(func=cmd_agm)

    s = sub.add_parser("dilation", parents=[common], help="does conditioning dilate a gamble?")
    s.add_argument("model")
    s.add_argument("--event", required=True)
    s.add_argument("--gamble", required=True)
    s.set_defaults(func=cmd_dilation)

    s = sub.add_parser("demo", parents=[common], help="rerun a worked example")
    s.add_argument("name", choices=sorted(DEMOS))
    s.add_argument("--count", type=int, default=100, help="previsions in the previsional sweep")
    s.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, NonRegularEvent, EmptyConditioningEvent) as exc:
        print(f"adbelief: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (ADError, AssertionError) as exc:
        print(f"adbelief: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, KeyError, TypeError) as exc:
        print(f"adbelief: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

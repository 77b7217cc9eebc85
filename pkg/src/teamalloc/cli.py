"""Command-line front end: ``teamalloc gen|solve|check|fixtures|experiment``.

Exit codes: 0 success / property holds, 1 a property fails or the decision
answer is "no", 2 usage or validation error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiment import ALGORITHMS, run_experiment
from .fixtures import FIXTURE_NAMES, get_fixture
from .generate import GeneratorConfig, gen_random_instance
from .matching import InfeasibleMatchingError
from .model import (
    CapacityError,
    DomainError,
    ValidationError,
    instance_to_dict,
    load_allocation,
    load_instance,
    save_allocation,
    save_instance,
)
from .pareto import alg_dp_const_teams, mnw_bruteforce
from .verifiers import CHECKS, check_properties

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _write(path: str | None, data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.write(data.decode("utf-8") + "\n")
    else:
        Path(path).write_bytes(data)


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _value_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None


def cmd_gen(args) -> int:
    config = GeneratorConfig(args.n, args.m, args.values, args.signs, args.prefs, args.seed)
    _write(args.output, save_instance(gen_random_instance(config)))
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = load_instance(_read(args.input))
    if args.alg == "dp":
        allocation = alg_dp_const_teams(instance, budget=args.budget or 10**8)
    elif args.alg == "mnw-brute":
        allocation = mnw_bruteforce(instance, budget=args.budget or 2 * 10**7)
    else:
        allocation = ALGORITHMS[args.alg].run(instance)
    if allocation is None:
        print("no allocation exists", file=sys.stderr)
        return EXIT_NO
    _write(args.output, save_allocation(allocation))
    return EXIT_OK


def cmd_check(args) -> int:
    instance = load_instance(_read(args.input))
    allocation = load_allocation(_read(args.allocation), instance.num_teams)
    names = [p.strip() for p in args.props.split(",") if p.strip()]
    reports = check_properties(instance, allocation, names, budget=args.budget or 2 * 10**7)
    print(json.dumps([r.to_dict() for r in reports.values()], indent=2))
    return EXIT_OK if all(r.holds for r in reports.values()) else EXIT_NO


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in FIXTURE_NAMES:
            print(f"{name}\t{get_fixture(name).description}")
        return EXIT_OK
    if not args.name:
        raise ValidationError("fixtures emit needs a fixture name", "name")
    try:
        fixture = get_fixture(args.name)
    except KeyError as exc:
        raise ValidationError(exc.args[0], "name") from None
    doc = {
        "instance": instance_to_dict(fixture.instance),
        "allocations": {k: list(a.assignment) for k, a in fixture.allocations.items()},
        "facts": fixture.facts,
    }
    if args.instance_only:
        doc = doc["instance"]
    _write(args.output, json.dumps(doc, indent=2).encode("utf-8"))
    return EXIT_OK


def config_from_dict(doc: dict) -> tuple[GeneratorConfig, list[str], int]:
    """Parse an experiment config document.

    Keys: ``n``, ``m`` (int or ``[lo, hi]``), ``values`` (``[lo, hi]``),
    ``signs``, ``prefs``, ``seed``, ``trials`` and ``algorithms``.
    """
    try:
        config = GeneratorConfig(
            doc["n"] if isinstance(doc["n"], int) else tuple(doc["n"]),
            doc["m"] if isinstance(doc["m"], int) else tuple(doc["m"]),
            tuple(doc.get("values", (-9, 9))),
            doc.get("signs", "any"),
            doc.get("prefs", "strict"),
            int(doc.get("seed", 0)),
        )
    except KeyError as exc:
        raise ValidationError("missing field", exc.args[0]) from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc), "config") from None
    algorithms = doc.get("algorithms") or []
    return config, list(algorithms), int(doc.get("trials", 0))


def cmd_experiment(args) -> int:
    try:
        doc = json.loads(_read(args.config))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON ({exc})", "config") from None
    config, algorithms, trials = config_from_dict(doc)
    if args.trials is not None:
        trials = args.trials
    report = run_experiment(config, algorithms, trials, budget=args.budget or 2 * 10**7)
    _write(args.output, json.dumps(report.to_dict(), indent=2).encode("utf-8"))
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    return EXIT_OK if not report.failures() else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teamalloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--values", type=_value_range, default=(-9, 9), metavar="LO..HI")
    gen.add_argument("--signs", choices=["any", "nonneg", "nonpos", "binary", "identical"], default="any")
    gen.add_argument("--prefs", choices=["strict", "weak", "single-favorite"], default="strict")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="run an allocation algorithm")
    solve.add_argument("--alg", choices=sorted(ALGORITHMS), required=True)
    solve.add_argument("-i", "--input", required=True)
    solve.add_argument("-o", "--output")
    solve.add_argument("--budget", type=int)
    solve.set_defaults(func=cmd_solve)

    check = sub.add_parser("check", help="check properties of an allocation")
    check.add_argument("--props", default="ef1", help=f"comma list of {','.join(CHECKS)}")
    check.add_argument("-i", "--input", required=True)
    check.add_argument("-a", "--allocation", required=True)
    check.add_argument("--budget", type=int)
    check.set_defaults(func=cmd_check)

    fixtures = sub.add_parser("fixtures", help="list or emit the built-in fixtures")
    fixtures.add_argument("action", choices=["list", "emit"])
    fixtures.add_argument("name", nargs="?")
    fixtures.add_argument("--instance-only", action="store_true")
    fixtures.add_argument("-o", "--output")
    fixtures.set_defaults(func=cmd_fixtures)

    experiment = sub.add_parser("experiment", help="run a seeded sweep")
    experiment.add_argument("--config", required=True)
    experiment.add_argument("--trials", type=int)
    experiment.add_argument("-o", "--output")
    experiment.add_argument("--csv")
    experiment.add_argument("--budget", type=int)
    experiment.set_defaults(func=cmd_experiment)
    return parser


def _join_negative_ranges(argv: list[str]) -> list[str]:
    # argparse reads "-9..9" as an option flag; glue it to its option
    out: list[str] = []
    for token in argv:
        if out and out[-1] == "--values" and token.startswith("-"):
            out[-1] = f"--values={token}"
        else:
            out.append(token)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_ranges(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValidationError, DomainError, InfeasibleMatchingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

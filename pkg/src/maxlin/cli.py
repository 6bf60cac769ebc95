"""Command-line front end: load a DAG and a parameter table, emit lattices,
distributions, coordinate transforms, generators, and verification reports.

Identical configuration produces byte-identical output; every randomized
suite is driven by --seed and --trials alone.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import (
    buchberger_check,
    evaluate_at_distribution,
    fraction_text,
    hibi_generators,
    monomial_map,
    parse_polynomial,
    verify_vanishing,
)
from .dag import Dag, parse_dag, transitive_closure
from .errors import MaxlinError
from .model import (
    DEFAULT_ORACLE_LIMIT,
    ParamTable,
    full_distribution,
    cbn_correspondence_check,
    oracle_equivalence_check,
)
from .poset import StateLattice, ideal_lattice, order_preserving_maps
from .report import Report
from .transforms import roundtrip_check, zeta_factorization_check, zeta_transform

VERIFY_SUITES = ("vanishing", "theorem31", "oracle", "moebius", "eq5", "groebner")


@dataclass
class CommandConfig:
    command: str
    dag_path: str
    theta_path: str | None = None
    k: int | None = None
    seed: int = 0
    trials: int = 100
    fmt: str = "json"
    suite: str | None = None
    poly_path: str | None = None
    generators_of: str = "states"


def _digits(state) -> str:
    return "".join(str(v) for v in state)


def _load_dag(config: CommandConfig) -> Dag:
    text = Path(config.dag_path).read_text(encoding="utf-8")
    dag = parse_dag(text)
    if config.k is not None:
        dag = dataclasses.replace(dag, k=config.k)
    return dag


def _load_theta(config: CommandConfig) -> ParamTable:
    if config.theta_path is None:
        raise MaxlinError(f"the {config.command} command needs --theta")
    data = json.loads(Path(config.theta_path).read_text(encoding="utf-8"))
    return ParamTable.from_json_dict(data)


def _state_lattice(dag: Dag) -> StateLattice:
    return order_preserving_maps(transitive_closure(dag), dag.k)


def _emit_states(states, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_digits(g) for g in states], indent=2)
    return "\n".join(_digits(g) for g in states)


def _emit_value_map(values, prefix: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {_digits(g): fraction_text(v) for g, v in values.items()}, indent=2
        )
    return "\n".join(f"{prefix}{_digits(g)} = {v}" for g, v in values.items())


def _oracle_limit() -> int:
    raw = os.environ.get("MAXLIN_ORACLE_LIMIT")
    return int(raw) if raw else DEFAULT_ORACLE_LIMIT


def _eq5_suite(dag: Dag, trials: int, seed: int) -> Report:
    """Symbolic factorization check plus seeded random rational tables."""
    import random

    symbolic = zeta_factorization_check(dag, ParamTable.symbolic(dag.n, dag.k))
    failures = [f"symbolic: {f}" for f in symbolic.failures]
    total = symbolic.total
    rng = random.Random(seed)
    for trial in range(trials):
        report = zeta_factorization_check(dag, ParamTable.random(dag.n, dag.k, rng))
        total += report.total
        failures.extend(f"trial {trial}: {f}" for f in report.failures)
    detail = (
        f"symbolic + {trials} random tables, {symbolic.total} states each"
        if not failures
        else ""
    )
    return Report("eq5", total=total, failures=failures, detail=detail)


def _run_verify(config: CommandConfig, dag: Dag) -> Report:
    if config.suite == "vanishing":
        lattice = _state_lattice(dag)
        return verify_vanishing(hibi_generators(lattice), monomial_map(lattice))
    if config.suite == "theorem31":
        return cbn_correspondence_check(dag, trials=config.trials, seed=config.seed)
    if config.suite == "oracle":
        return oracle_equivalence_check(
            dag, trials=config.trials, seed=config.seed, limit=_oracle_limit()
        )
    if config.suite == "moebius":
        return roundtrip_check(
            _state_lattice(dag), trials=config.trials, seed=config.seed
        )
    if config.suite == "eq5":
        return _eq5_suite(dag, trials=config.trials, seed=config.seed)
    if config.suite == "groebner":
        return buchberger_check(hibi_generators(_state_lattice(dag)))
    raise MaxlinError(f"unknown verify suite {config.suite!r}")


def run(config: CommandConfig) -> int:
    """Execute one command; prints the result and returns the exit status."""
    dag = _load_dag(config)
    if config.command == "lattice":
        print(_emit_states(_state_lattice(dag).states, config.fmt))
        return 0
    if config.command == "ideals":
        lattice = ideal_lattice(transitive_closure(dag))
        print(_emit_states(lattice.states, config.fmt))
        return 0
    if config.command == "distribution":
        theta = _load_theta(config)
        dist = full_distribution(dag, theta)
        print(_emit_value_map(dist, "p", config.fmt))
        return 0
    if config.command == "zeta":
        theta = _load_theta(config)
        lattice = _state_lattice(dag)
        dist = full_distribution(dag, theta, lattice)
        print(_emit_value_map(zeta_transform(dist, lattice), "q", config.fmt))
        return 0
    if config.command == "generators":
        if config.generators_of == "ideals":
            lattice = ideal_lattice(transitive_closure(dag))
        else:
            lattice = _state_lattice(dag)
        generators = hibi_generators(lattice)
        if config.fmt == "json":
            print(json.dumps([g.to_json_dict() for g in generators], indent=2))
        else:
            print("\n".join(g.to_text() for g in generators))
        return 0
    if config.command == "verify":
        report = _run_verify(config, dag)
        if config.fmt == "json":
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            print(report.to_text())
        return 0 if report.passed else 1
    if config.command == "eval":
        theta = _load_theta(config)
        dist = full_distribution(dag, theta)
        if config.poly_path is None:
            raise MaxlinError("the eval command needs --poly")
        results = []
        for raw in Path(config.poly_path).read_text(encoding="utf-8").splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            value = evaluate_at_distribution(parse_polynomial(line), dist)
            results.append((line, value))
        if config.fmt == "json":
            print(
                json.dumps(
                    [
                        {"polynomial": line, "value": fraction_text(v)}
                        for line, v in results
                    ],
                    indent=2,
                )
            )
        else:
            print("\n".join(f"{line} = {v}" for line, v in results))
        return 0
    raise MaxlinError(f"unknown command {config.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxlin",
        description=(
            "State lattices, exact joint distributions, cumulative-coordinate "
            "transforms, and lattice-binomial verification for max-of-parents "
            "models on DAGs."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, theta: bool = False) -> None:
        p.add_argument("--dag", required=True, help="DAG file: 'n k' then 'u v' edge lines")
        p.add_argument("--k", type=int, default=None, help="override the file's state count")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if theta:
            p.add_argument("--theta", help='JSON {"theta": [["1/2","1/2"], ...]}')

    common(sub.add_parser("lattice", help="emit the model's state lattice"))
    common(sub.add_parser("ideals", help="emit the order ideals of the reachability poset"))
    common(sub.add_parser("distribution", help="emit the factored joint"), theta=True)
    common(sub.add_parser("zeta", help="emit the cumulative coordinates"), theta=True)
    gen = sub.add_parser("generators", help="emit the lattice binomial generators")
    common(gen)
    gen.add_argument(
        "--of",
        choices=("states", "ideals"),
        default="states",
        help="which lattice to generate for (default: the state lattice)",
    )
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=VERIFY_SUITES)
    common(verify)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=100)
    ev = sub.add_parser("eval", help="evaluate polynomials in p-variables at the joint")
    common(ev, theta=True)
    ev.add_argument("--poly", required=True, help="file with one polynomial per line")
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    return CommandConfig(
        command=args.command,
        dag_path=args.dag,
        theta_path=getattr(args, "theta", None),
        k=args.k,
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 100),
        fmt=args.format,
        suite=getattr(args, "suite", None),
        poly_path=getattr(args, "poly", None),
        generators_of=getattr(args, "of", "states"),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(config_from_args(args))
    except (MaxlinError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Algorithm registry and seeded experiment sweeps."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .generate import GeneratorConfig, PrefMode, SignMode, gen_random_instance
from .justified import alg_cut_and_choose_identical, alg_jef_two_teams_search
from .model import Allocation, CapacityError, Instance, ValidationError, team_utilities
from .pareto import alg_adjusted_winner_two_teams, alg_dp_const_teams, alg_three_teams_identical, mnw_bruteforce
from .stability import alg_double_round_robin, alg_swap_stable_balanced
from .verifiers import DEFAULT_BUDGET, check_properties, exists_ef1_jef_bruteforce


@dataclass(frozen=True)
class Algorithm:
    name: str
    run: Callable[[Instance], Allocation | None]
    properties: tuple[str, ...]
    decides: bool = False  # may answer "no allocation exists"


ALGORITHMS = {
    a.name: a
    for a in (
        Algorithm("swap-stable-balanced", alg_swap_stable_balanced, ("balanced", "ef11", "swap")),
        Algorithm("double-round-robin", alg_double_round_robin, ("ef1", "swap", "is")),
        Algorithm("adjusted-winner", alg_adjusted_winner_two_teams, ("ef1", "po", "team-po")),
        Algorithm("three-teams", alg_three_teams_identical, ("ef1", "po")),
        Algorithm("dp", alg_dp_const_teams, ("ef1", "po")),
        Algorithm("mnw-brute", mnw_bruteforce, ("ef1", "po")),
        Algorithm("jef-two-teams", alg_jef_two_teams_search, ("ef1", "jef"), decides=True),
        Algorithm("cut-and-choose", alg_cut_and_choose_identical, ("ef1", "jef")),
    )
}


def advertised_properties(name: str, config: GeneratorConfig) -> tuple[str, ...]:
    """Properties an algorithm guarantees on the config's instance family."""
    props = ALGORITHMS[name].properties
    lo, hi = config.value_range
    if name == "swap-stable-balanced" and (lo >= 0 or hi <= 0):
        props += ("ef1",)
    if name == "double-round-robin" and 0 <= lo and hi <= 1:
        props += ("po",)
    return props


def incompatibility(name: str, config: GeneratorConfig) -> str | None:
    """Why ``name`` cannot run on instances from ``config``, or ``None``."""
    if name not in ALGORITHMS:
        return f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}"
    n_lo, n_hi = config.bounds("n")
    lo, _ = config.value_range
    nonneg = lo >= 0
    needs = {
        "adjusted-winner": [(n_lo == n_hi == 2, "exactly 2 teams")],
        "three-teams": [
            (n_lo == n_hi == 3, "exactly 3 teams"),
            (config.sign_mode is SignMode.IDENTICAL, "identical valuations"),
            (nonneg, "nonnegative values"),
            (config.pref_mode is PrefMode.SINGLE_FAVORITE, "single-favorite preferences"),
        ],
        "dp": [(nonneg, "nonnegative values")],
        "mnw-brute": [(nonneg, "nonnegative values")],
        "jef-two-teams": [
            (n_lo == n_hi == 2, "exactly 2 teams"),
            (nonneg, "nonnegative values"),
            (config.pref_mode is PrefMode.STRICT, "strict preferences"),
        ],
        "cut-and-choose": [
            (n_lo == n_hi == 2, "exactly 2 teams"),
            (config.sign_mode is SignMode.IDENTICAL, "identical valuations"),
            (nonneg, "nonnegative values"),
        ],
    }.get(name, [])
    missing = [what for ok, what in needs if not ok]
    return f"{name} needs {', '.join(missing)}" if missing else None


@dataclass
class TrialRow:
    algorithm: str
    seed: int
    n: int
    m: int
    verdicts: dict[str, bool | None]
    utilities: list[int] | None
    assignment: list[int] | None
    wall_time: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.verdicts.values())


@dataclass
class ExperimentReport:
    rows: list[TrialRow] = field(default_factory=list)

    def pass_rates(self) -> dict[str, dict[str, float]]:
        """Per algorithm and property: fraction of checked trials that held."""
        rates: dict[str, dict[str, list[bool]]] = {}
        for row in self.rows:
            per = rates.setdefault(row.algorithm, {})
            for prop, ok in row.verdicts.items():
                if ok is not None:
                    per.setdefault(prop, []).append(ok)
        return {a: {p: sum(v) / len(v) for p, v in per.items()} for a, per in rates.items()}

    def failures(self) -> list[TrialRow]:
        return [row for row in self.rows if not row.passed]

    def to_dict(self, timing: bool = True) -> dict:
        rows = []
        for row in self.rows:
            d = asdict(row)
            if not timing:
                d.pop("wall_time")
            rows.append(d)
        return {
            "trials": rows,
            "pass_rates": self.pass_rates(),
            "failures": [{"algorithm": r.algorithm, "seed": r.seed} for r in self.failures()],
        }

    def to_csv(self) -> str:
        props = sorted({p for row in self.rows for p in row.verdicts})
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["algorithm", "seed", "n", "m", *props, "utilities", "wall_time"])
        for row in self.rows:
            cells = ["" if row.verdicts.get(p) is None else int(row.verdicts[p]) for p in props]
            utils = "" if row.utilities is None else " ".join(map(str, row.utilities))
            writer.writerow([row.algorithm, row.seed, row.n, row.m, *cells, utils, f"{row.wall_time:.6f}"])
        return out.getvalue()


def run_trial(name: str, instance: Instance, config: GeneratorConfig, budget: int = DEFAULT_BUDGET) -> TrialRow:
    algorithm = ALGORITHMS[name]
    start = time.perf_counter()
    allocation = algorithm.run(instance)
    elapsed = time.perf_counter() - start
    verdicts: dict[str, bool | None] = {}
    note = ""
    if algorithm.decides:
        try:
            truth = exists_ef1_jef_bruteforce(instance, budget) is not None
            verdicts["decision"] = truth == (allocation is not None)
        except CapacityError:
            verdicts["decision"] = None
            note = "decision not cross-checked: over budget"
    if allocation is not None:
        for prop in advertised_properties(name, config):
            try:
                verdicts[prop] = check_properties(instance, allocation, [prop], budget)[prop].holds
            except CapacityError:
                verdicts[prop] = None
                note = f"{prop} not checked: over budget"
    return TrialRow(
        name,
        config.seed,
        instance.num_teams,
        instance.num_players,
        verdicts,
        None if allocation is None else list(team_utilities(instance, allocation)),
        None if allocation is None else list(allocation.assignment),
        elapsed,
        note,
    )


def run_experiment(
    config: GeneratorConfig,
    algorithms: list[str],
    trials: int,
    budget: int = DEFAULT_BUDGET,
) -> ExperimentReport:
    """Generate ``trials`` instances (seed ``config.seed + t``) and check each algorithm.

    All algorithm/config pairings are validated before any trial runs.
    """
    problems = [msg for name in algorithms if (msg := incompatibility(name, config))]
    if problems:
        raise ValidationError("; ".join(problems), "algorithms")
    report = ExperimentReport()
    for t in range(trials):
        trial_config = config.with_seed(config.seed + t)
        instance = gen_random_instance(trial_config)
        for name in algorithms:
            report.rows.append(run_trial(name, instance, trial_config, budget))
    return report

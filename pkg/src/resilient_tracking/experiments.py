"""Experiment harness: spec files, record rows, CSV output, summaries.

Protocols
---------
one-step: per (m, alpha, trial) sample a fresh world (robots and targets
uniform in the arena, full four-direction menus), plan once per planner on
ground-truth coverage, apply each attacker, one row per (planner, attacker).

multi-round: per (m, alpha, trial) run the closed-loop simulation once per
(planner, attacker) under a shared per-trial seed, so every planner sees the
same target motion and the same measurement noise; one row per round.

Seeding
-------
The per-trial seed is the first 64 bits of SeedSequence([master_seed, trial]),
recorded in the ``seed`` column; adding trials never changes earlier trials'
streams.  Within a trial, consumers draw from disjoint child streams keyed by
fixed role codes: SeedSequence([trial_seed, 0]) samples the world,
([trial_seed, 1, planner_code]) feeds the planner and
([trial_seed, 2, planner_code, attacker_code]) feeds the attacker, with codes
taken from the canonical registry order, not the spec's list order.

CSV schema (version 1)
----------------------
Exact header ``trial,round,planner,attacker,m,alpha,f_full,f_attacked,
attack_rate,oracle_calls,wall_time_micros,seed``; one trailing comment line
``# status=complete schema=1 objective=<name> rows=<N>`` marks a complete
file (a crashed run leaves no marker).  ``wall_time_micros`` is
informational only and excluded from golden comparisons; for multi-round
rows it is the whole run's wall time split evenly over rounds.  Recorded
``f_attacked`` is snapped to min(f_attacked, f_full): monotonicity makes
the inequality exact in real arithmetic and the snap only absorbs ~1e-16
round-off in the expected-detections sums.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from statistics import mean, pstdev

import numpy as np

from .adversary import ATTACKER_NAMES, get_attacker
from .errors import CsvFormatError, SpecError
from .geometry import Rect
from .objectives import CountingOracle, CoverageCount
from .planners import PLANNER_NAMES, get_planner
from .simulation import SimConfig, run_rounds
from .worlds import sample_instance

CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = (
    "trial",
    "round",
    "planner",
    "attacker",
    "m",
    "alpha",
    "f_full",
    "f_attacked",
    "attack_rate",
    "oracle_calls",
    "wall_time_micros",
    "seed",
)


@dataclass(frozen=True)
class RecordRow:
    """One scored (planner, attacker) outcome."""

    trial: int
    round: int
    planner: str
    attacker: str
    m: int
    alpha: int
    f_full: float
    f_attacked: float
    attack_rate: float
    oracle_calls: int
    wall_time_micros: int
    seed: int

    def as_csv_fields(self) -> tuple:
        return (
            self.trial,
            self.round,
            self.planner,
            self.attacker,
            self.m,
            self.alpha,
            self.f_full,
            self.f_attacked,
            self.attack_rate,
            self.oracle_calls,
            self.wall_time_micros,
            self.seed,
        )


@dataclass(frozen=True)
class ExperimentSpec:
    """Validated experiment description; see :func:`spec_from_dict`."""

    protocol: str
    num_robots: int
    fov_side: float
    fly_length: float
    arena: Rect
    num_targets: tuple[int, ...]
    alphas: tuple[int, ...]
    trials: int
    planners: tuple[str, ...]
    attackers: tuple[str, ...]
    master_seed: int
    output: str | None = None
    rounds: int = 50
    measurement_noise_std: float = 0.1
    process_noise: float = 0.01
    initial_variance: float = 1.0
    target_speed: float = 0.3
    velocity_jitter_std: float = 0.0


def _fail(field: str, problem: str):
    raise SpecError(f"field {field!r}: {problem}")


def _require_int(data, field, minimum=None, maximum=None) -> int:
    value = data.get(field)
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(field, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(field, f"must be at least {minimum}, got {value}")
    if maximum is not None and value > maximum:
        _fail(field, f"must be at most {maximum}, got {value}")
    return value


def _require_number(data, field, minimum=None, strict=False) -> float:
    value = data.get(field)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        _fail(field, f"expected a number, got {value!r}")
    if minimum is not None:
        if strict and not value > minimum:
            _fail(field, f"must be greater than {minimum}, got {value}")
        if not strict and value < minimum:
            _fail(field, f"must be at least {minimum}, got {value}")
    return float(value)


def _normalize_targets(value) -> tuple[int, ...]:
    if isinstance(value, int) and not isinstance(value, bool):
        values = [value]
    elif isinstance(value, list) and value and all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        values = list(value)
    elif (
        isinstance(value, dict)
        and set(value) == {"start", "stop"}
        and all(isinstance(v, int) for v in value.values())
        and value["start"] <= value["stop"]
    ):
        values = list(range(value["start"], value["stop"] + 1))
    else:
        _fail(
            "num_targets",
            "expected an integer, a non-empty list of integers, or "
            f"{{'start': a, 'stop': b}} with a <= b, got {value!r}",
        )
    if any(v < 1 for v in values):
        _fail("num_targets", f"target counts must be positive, got {values}")
    return tuple(values)


def spec_from_dict(data: dict) -> ExperimentSpec:
    """Validate a parsed spec; raises :class:`SpecError` naming the field."""
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    known = {
        "protocol", "num_robots", "fov_side", "fly_length", "arena",
        "num_targets", "alphas", "trials", "planners", "attackers",
        "master_seed", "output", "rounds", "measurement_noise_std",
        "process_noise", "initial_variance", "target_speed",
        "velocity_jitter_std",
    }
    for key in data:
        if key not in known:
            _fail(key, "unknown field")

    protocol = data.get("protocol")
    if protocol not in ("one-step", "multi-round"):
        _fail("protocol", f"expected 'one-step' or 'multi-round', got {protocol!r}")
    num_robots = _require_int(data, "num_robots", minimum=1)
    fov_side = _require_number(data, "fov_side", minimum=0, strict=True)
    fly_length = _require_number(data, "fly_length", minimum=0)

    arena_raw = data.get("arena")
    if (
        not isinstance(arena_raw, list)
        or len(arena_raw) != 4
        or not all(isinstance(v, (int, float)) for v in arena_raw)
    ):
        _fail("arena", f"expected [x_min, x_max, y_min, y_max], got {arena_raw!r}")
    try:
        arena = Rect(*[float(v) for v in arena_raw])
    except ValueError as exc:
        _fail("arena", str(exc))

    num_targets = _normalize_targets(data.get("num_targets"))

    alphas_raw = data.get("alphas")
    if (
        not isinstance(alphas_raw, list)
        or not alphas_raw
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in alphas_raw)
    ):
        _fail("alphas", f"expected a non-empty list of integers, got {alphas_raw!r}")
    for a in alphas_raw:
        if not 0 <= a <= num_robots:
            _fail("alphas", f"each alpha must be in [0, {num_robots}], got {a}")

    trials = _require_int(data, "trials", minimum=1)

    planners_raw = data.get("planners")
    if not isinstance(planners_raw, list) or not planners_raw:
        _fail("planners", f"expected a non-empty list, got {planners_raw!r}")
    for p in planners_raw:
        if p not in PLANNER_NAMES:
            _fail("planners", f"unknown planner {p!r}; expected one of {PLANNER_NAMES}")
    attackers_raw = data.get("attackers")
    if not isinstance(attackers_raw, list) or not attackers_raw:
        _fail("attackers", f"expected a non-empty list, got {attackers_raw!r}")
    for a in attackers_raw:
        if a not in ATTACKER_NAMES:
            _fail("attackers", f"unknown attacker {a!r}; expected one of {ATTACKER_NAMES}")

    master_seed = _require_int(data, "master_seed", minimum=0)
    output = data.get("output")
    if output is not None and not isinstance(output, str):
        _fail("output", f"expected a string path, got {output!r}")

    spec = ExperimentSpec(
        protocol=protocol,
        num_robots=num_robots,
        fov_side=fov_side,
        fly_length=fly_length,
        arena=arena,
        num_targets=num_targets,
        alphas=tuple(alphas_raw),
        trials=trials,
        planners=tuple(planners_raw),
        attackers=tuple(attackers_raw),
        master_seed=master_seed,
        output=output,
    )
    if protocol == "multi-round":
        spec = replace(
            spec,
            rounds=_require_int(data, "rounds", minimum=1) if "rounds" in data else 50,
            measurement_noise_std=(
                _require_number(data, "measurement_noise_std", minimum=0)
                if "measurement_noise_std" in data
                else 0.1
            ),
            process_noise=(
                _require_number(data, "process_noise", minimum=0)
                if "process_noise" in data
                else 0.01
            ),
            initial_variance=(
                _require_number(data, "initial_variance", minimum=0, strict=True)
                if "initial_variance" in data
                else 1.0
            ),
            target_speed=(
                _require_number(data, "target_speed", minimum=0)
                if "target_speed" in data
                else 0.3
            ),
            velocity_jitter_std=(
                _require_number(data, "velocity_jitter_std", minimum=0)
                if "velocity_jitter_std" in data
                else 0.0
            ),
        )
    return spec


def load_spec(path) -> ExperimentSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec file is not valid JSON: {exc}") from None
    return spec_from_dict(data)


def derive_trial_seed(master_seed: int, trial: int) -> int:
    """First 64 bits of SeedSequence([master_seed, trial])."""
    seq = np.random.SeedSequence([master_seed, trial])
    return int(seq.generate_state(1, np.uint64)[0])


def _role_rng(trial_seed: int, *codes: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([trial_seed, *codes]))


def _one_step_cell(spec: ExperimentSpec, cell) -> list[RecordRow]:
    m, alpha, trial = cell
    trial_seed = derive_trial_seed(spec.master_seed, trial)
    instance = sample_instance(
        _role_rng(trial_seed, 0),
        num_robots=spec.num_robots,
        num_targets=m,
        fov_side=spec.fov_side,
        fly_length=spec.fly_length,
        arena=spec.arena,
    )
    objective = CoverageCount(instance.targets, instance.rects)
    rows = []
    for planner in spec.planners:
        pcode = PLANNER_NAMES.index(planner)
        oracle = CountingOracle(objective)
        t0 = time.perf_counter_ns()
        result = get_planner(planner)(
            instance.matroid, oracle, alpha, _role_rng(trial_seed, 1, pcode)
        )
        plan_ns = time.perf_counter_ns() - t0
        f_full = float(objective.evaluate(result.selected))
        for attacker in spec.attackers:
            acode = ATTACKER_NAMES.index(attacker)
            t1 = time.perf_counter_ns()
            attacked = get_attacker(attacker)(
                objective,
                result.selected,
                alpha,
                _role_rng(trial_seed, 2, pcode, acode),
            )
            attack_ns = time.perf_counter_ns() - t1
            f_att = min(float(attacked.surviving_value), f_full)
            rate = 0.0 if f_full <= 0 else (f_full - f_att) / f_full
            rows.append(
                RecordRow(
                    trial=trial,
                    round=1,
                    planner=planner,
                    attacker=attacker,
                    m=m,
                    alpha=alpha,
                    f_full=f_full,
                    f_attacked=f_att,
                    attack_rate=rate,
                    oracle_calls=result.oracle_calls,
                    wall_time_micros=(plan_ns + attack_ns) // 1000,
                    seed=trial_seed,
                )
            )
    return rows


def _multi_round_cell(spec: ExperimentSpec, cell) -> list[RecordRow]:
    m, alpha, trial = cell
    trial_seed = derive_trial_seed(spec.master_seed, trial)
    rows = []
    for planner in spec.planners:
        for attacker in spec.attackers:
            config = SimConfig(
                num_robots=spec.num_robots,
                num_targets=m,
                alpha=alpha,
                fov_side=spec.fov_side,
                fly_length=spec.fly_length,
                arena=spec.arena,
                rounds=spec.rounds,
                measurement_noise_std=spec.measurement_noise_std,
                process_noise=spec.process_noise,
                initial_variance=spec.initial_variance,
                target_speed=spec.target_speed,
                velocity_jitter_std=spec.velocity_jitter_std,
                planner=planner,
                attacker=attacker,
                rng_seed=trial_seed,
            )
            t0 = time.perf_counter_ns()
            records = run_rounds(config)
            per_round_micros = (time.perf_counter_ns() - t0) // 1000 // spec.rounds
            for record in records:
                rows.append(
                    RecordRow(
                        trial=trial,
                        round=record.round_index,
                        planner=planner,
                        attacker=attacker,
                        m=m,
                        alpha=alpha,
                        f_full=record.f_full,
                        f_attacked=record.f_attacked,
                        attack_rate=record.attack_rate,
                        oracle_calls=record.oracle_calls,
                        wall_time_micros=int(per_round_micros),
                        seed=trial_seed,
                    )
                )
    return rows


def _cells(spec: ExperimentSpec):
    return [
        (m, alpha, trial)
        for m in spec.num_targets
        for alpha in spec.alphas
        for trial in range(spec.trials)
    ]


def run_suite(spec: ExperimentSpec, jobs: int = 1) -> list[RecordRow]:
    """Run the spec's protocol; rows come back in deterministic cell order."""
    worker = _one_step_cell if spec.protocol == "one-step" else _multi_round_cell
    cells = _cells(spec)
    if jobs <= 1:
        buckets = [worker(spec, cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            buckets = list(pool.map(partial(worker, spec), cells))
    return [row for bucket in buckets for row in bucket]


def run_one_step_suite(spec: ExperimentSpec, jobs: int = 1) -> list[RecordRow]:
    if spec.protocol != "one-step":
        raise SpecError("field 'protocol': expected 'one-step'")
    return run_suite(spec, jobs=jobs)


def run_multi_round_suite(spec: ExperimentSpec, jobs: int = 1) -> list[RecordRow]:
    if spec.protocol != "multi-round":
        raise SpecError("field 'protocol': expected 'multi-round'")
    return run_suite(spec, jobs=jobs)


def objective_name(spec: ExperimentSpec) -> str:
    return "coverage_count" if spec.protocol == "one-step" else "expected_detections"


def write_csv(rows, path, objective: str = "coverage_count") -> None:
    """Write rows plus the completeness marker; str(value) round-trips floats."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row.as_csv_fields()) + "\n")
        fh.write(
            f"# status=complete schema={CSV_SCHEMA_VERSION} "
            f"objective={objective} rows={len(rows)}\n"
        )


def read_csv(path) -> list[RecordRow]:
    """Parse a results CSV; raises :class:`CsvFormatError` with line numbers."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CsvFormatError("line 1: empty file, expected header")
    if lines[0] != ",".join(CSV_COLUMNS):
        raise CsvFormatError(f"line 1: bad header {lines[0]!r}")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise CsvFormatError(
                f"line {lineno}: expected {len(CSV_COLUMNS)} fields, got {len(parts)}"
            )
        try:
            rows.append(
                RecordRow(
                    trial=int(parts[0]),
                    round=int(parts[1]),
                    planner=parts[2],
                    attacker=parts[3],
                    m=int(parts[4]),
                    alpha=int(parts[5]),
                    f_full=float(parts[6]),
                    f_attacked=float(parts[7]),
                    attack_rate=float(parts[8]),
                    oracle_calls=int(parts[9]),
                    wall_time_micros=int(parts[10]),
                    seed=int(parts[11]),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"line {lineno}: {exc}") from None
    return rows


@dataclass(frozen=True)
class SummaryRow:
    planner: str
    attacker: str
    m: int
    alpha: int
    count: int
    mean_attacked: float
    std_attacked: float


@dataclass(frozen=True)
class PairwiseRow:
    attacker: str
    m: int
    alpha: int
    baseline: str
    mean_difference: float  # mean(resilient) - mean(baseline)


def summarize_rows(rows) -> tuple[list[SummaryRow], list[PairwiseRow]]:
    """Group f_attacked by (planner, attacker, m, alpha); row order agnostic."""
    groups: dict[tuple, list[float]] = {}
    for row in rows:
        groups.setdefault((row.planner, row.attacker, row.m, row.alpha), []).append(
            row.f_attacked
        )
    summary = [
        SummaryRow(
            planner=planner,
            attacker=attacker,
            m=m,
            alpha=alpha,
            count=len(values),
            mean_attacked=mean(values),
            std_attacked=pstdev(values),
        )
        for (planner, attacker, m, alpha), values in sorted(groups.items())
    ]
    means = {
        (r.planner, r.attacker, r.m, r.alpha): r.mean_attacked for r in summary
    }
    pairwise = []
    for (planner, attacker, m, alpha), base_mean in sorted(means.items()):
        if planner not in ("greedy", "brute-force"):
            continue
        resilient = means.get(("resilient", attacker, m, alpha))
        if resilient is None:
            continue
        pairwise.append(
            PairwiseRow(
                attacker=attacker,
                m=m,
                alpha=alpha,
                baseline=planner,
                mean_difference=resilient - base_mean,
            )
        )
    return summary, pairwise


def summarize(path) -> tuple[list[SummaryRow], list[PairwiseRow]]:
    """Comparison table for a results CSV on disk."""
    return summarize_rows(read_csv(path))


def render_summary(summary, pairwise) -> str:
    lines = [
        f"{'planner':>12} {'attacker':>8} {'m':>4} {'alpha':>5} "
        f"{'n':>5} {'mean(f_att)':>12} {'std':>10}"
    ]
    for row in summary:
        lines.append(
            f"{row.planner:>12} {row.attacker:>8} {row.m:>4} {row.alpha:>5} "
            f"{row.count:>5} {row.mean_attacked:>12.4f} {row.std_attacked:>10.4f}"
        )
    if pairwise:
        lines.append("")
        lines.append("mean(resilient) - mean(baseline):")
        for row in pairwise:
            lines.append(
                f"  vs {row.baseline:>11} attacker={row.attacker:<7} m={row.m:<4} "
                f"alpha={row.alpha}: {row.mean_difference:+.4f}"
            )
    return "\n".join(lines)

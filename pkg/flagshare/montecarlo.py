"""
Monte Carlo estimation of logical error rates and pseudo-thresholds.

Each trial draws independent depolarizing faults for every circuit it runs,
decodes with the chosen procedure and judges the final frame after an ideal
round. Trial t of a run uses a Generator seeded from (seed, t), so results do
not depend on chunking or on the number of worker processes.

Key Features:
    - Memory trials (one or more noisy rounds) and ex-Rec CNOT trials
    - Wilson intervals, post-selected rates in detection mode
    - Adaptive trial counts and geometric bisection for the crossing
    - CSV and JSON reports

Dependencies:
    - numpy: SeedSequence-keyed Generators and the p grid
    - statsmodels: Wilson confidence intervals
"""

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from .circuit import Scheme
from .decode import DecoderConfig, Mode, Procedure
from .errors import ConfigError, UndefinedRateError
from .faults import NoiseParams, SampledFaults
from .ftcheck import flag_lookup
from .protocol import run_exrec, run_memory
from .reference import threshold_reference
from .schemes import DEFAULT_SEED, build_scheme, check_procedure

# Initialize logger
logger = logging.getLogger(__name__)

TARGETS = ("memory", "exrec")
DEFAULT_CHUNK = 2000
CONFIDENCE_ALPHA = 0.05
RELATIVE_HALF_WIDTH = 0.15


class Verdict(str, Enum):
    SUCCESS = "success"
    LOGICAL_FAILURE = "logical_failure"
    DISCARDED = "discarded"


@dataclass(frozen=True)
class TrialOutcome:
    """
    Attributes:
        verdict (Verdict): success, logical_failure or discarded
        faults (int): Faults drawn during the trial
        followups (str): Follow-ups of the first decoding round
    """

    verdict: Verdict
    faults: int = 0
    followups: str = "none"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator of trial ``trial`` in a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


@lru_cache(maxsize=None)
def prepare(code: str, scheme: str, procedure: str, scheme_seed: int = DEFAULT_SEED) -> Tuple[Scheme, DecoderConfig]:
    """
    Build a shipped scheme and its decoder configuration once per process.

    Raises:
        ConfigError: If the procedure does not fit the scheme
        UniquenessViolation: If the flag tables cannot be built
    """
    built = build_scheme(code, scheme, scheme_seed)
    proc = Procedure(procedure)
    check_procedure(built, proc)
    if proc is Procedure.DETECT:
        return built, DecoderConfig(Mode.DETECT, proc)
    return built, DecoderConfig(Mode.CORRECT, proc, flag_lookup(built, proc))


def _outcome(result, source: SampledFaults) -> TrialOutcome:
    if result.discarded:
        verdict = Verdict.DISCARDED
    elif result.failed:
        verdict = Verdict.LOGICAL_FAILURE
    else:
        verdict = Verdict.SUCCESS
    followups = result.outcomes[0].followups_used if result.outcomes else "none"
    return TrialOutcome(verdict, source.count, followups)


def memory_trial(scheme: Scheme, config: DecoderConfig, params: NoiseParams,
                 rng: np.random.Generator, rounds: int = 1) -> TrialOutcome:
    """
    Noisy round(s) on a fresh codeword, follow-ups included, then the ideal round.
    Successive rounds alternate which stabilizer type is treated first.
    """
    source = SampledFaults(params, rng)
    return _outcome(run_memory(scheme, config, source, rounds), source)


def exrec_trial(scheme: Scheme, config: DecoderConfig, params: NoiseParams,
                rng: np.random.Generator) -> TrialOutcome:
    """Noisy leading EC, transversal CNOT and trailing EC on two blocks, then ideal rounds."""
    source = SampledFaults(params, rng)
    return _outcome(run_exrec(scheme, config, source), source)


@dataclass(frozen=True)
class TrialSpec:
    """
    Picklable trial function for a shipped scheme.

    Attributes:
        target (str): memory or exrec
        code (str): Catalog code name
        scheme (str): Scheme name
        procedure (str): Decoding procedure
        rounds (int): Noisy rounds of a memory trial
        scheme_seed (int): Seed of randomized scheme constructions
    """

    target: str
    code: str
    scheme: str
    procedure: str
    rounds: int = 1
    scheme_seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ConfigError(f"unknown target {self.target!r}; choose one of {', '.join(TARGETS)}")
        if self.rounds < 1:
            raise ConfigError("rounds must be at least 1")

    def __call__(self, params: NoiseParams, rng: np.random.Generator) -> TrialOutcome:
        scheme, config = prepare(self.code, self.scheme, self.procedure, self.scheme_seed)
        if self.target == "exrec":
            return exrec_trial(scheme, config, params, rng)
        return memory_trial(scheme, config, params, rng, self.rounds)

    @property
    def mode(self) -> str:
        return "detect" if self.procedure == Procedure.DETECT.value else "correct"


TrialFn = Callable[[NoiseParams, np.random.Generator], TrialOutcome]


def _run_chunk(job: Tuple[TrialFn, NoiseParams, int, int, int]) -> Tuple[int, int, int]:
    """Trials start..stop-1; returns (trials, failures, accepted)."""
    trial_fn, params, seed, start, stop = job
    failures = accepted = 0
    for t in range(start, stop):
        outcome = trial_fn(params, trial_rng(seed, t))
        if outcome.verdict is not Verdict.DISCARDED:
            accepted += 1
            if outcome.verdict is Verdict.LOGICAL_FAILURE:
                failures += 1
    return stop - start, failures, accepted


def _count(trial_fn: TrialFn, params: NoiseParams, seed: int, start: int, stop: int,
           workers: int = 1, chunk: int = DEFAULT_CHUNK) -> Tuple[int, int, int]:
    jobs = [(trial_fn, params, seed, a, min(a + chunk, stop)) for a in range(start, stop, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(job) for job in jobs]
    return tuple(sum(part[i] for part in parts) for i in range(3))  # type: ignore[return-value]


@dataclass(frozen=True)
class RateEstimate:
    """
    Logical error rate at one physical rate.

    Attributes:
        p (float): Physical error rate
        trials (int): Trials run
        failures (int): Accepted trials that failed
        accepted (int): Trials not discarded
        rate (float): failures / accepted
        low (float): Lower end of the Wilson interval
        high (float): Upper end of the Wilson interval
    """

    p: float
    trials: int
    failures: int
    accepted: int
    rate: float
    low: float
    high: float

    @property
    def defined(self) -> bool:
        return self.accepted > 0

    @property
    def acceptance(self) -> float:
        return self.accepted / self.trials if self.trials else 0.0

    @property
    def half_width(self) -> float:
        return (self.high - self.low) / 2


def _estimate(p: float, trials: int, failures: int, accepted: int, strict: bool = True) -> RateEstimate:
    if accepted == 0:
        if not strict:
            return RateEstimate(p, trials, failures, 0, float("nan"), 0.0, 1.0)
        raise UndefinedRateError(f"no accepted trials out of {trials} at p = {p:g}")
    low, high = proportion_confint(failures, accepted, alpha=CONFIDENCE_ALPHA, method="wilson")
    return RateEstimate(p, trials, failures, accepted, failures / accepted, float(low), float(high))


def estimate_rate(trial_fn: TrialFn, params: NoiseParams, n_trials: int, seed: int = 0,
                  workers: int = 1, chunk: int = DEFAULT_CHUNK, strict: bool = True) -> RateEstimate:
    """
    Monte Carlo logical error rate with a 95% Wilson interval.

    Args:
        trial_fn (TrialFn): Called as trial_fn(params, rng); must be picklable when workers > 1
        params (NoiseParams): Noise strength
        n_trials (int): Number of trials, at least 1
        seed (int): Run seed
        workers (int): Worker processes
        chunk (int): Trials per work item
        strict (bool): When False, an all-discarded run gives a NaN rate

    Raises:
        ConfigError: If n_trials < 1
        UndefinedRateError: If every trial was discarded and strict is set
    """
    if n_trials < 1:
        raise ConfigError(f"n_trials must be at least 1, got {n_trials}")
    trials, failures, accepted = _count(trial_fn, params, seed, 0, n_trials, workers, chunk)
    estimate = _estimate(params.p, trials, failures, accepted, strict)
    logger.debug(f"p = {params.p:g}: {failures}/{accepted} failures ({trials} trials)")
    return estimate


def adaptive_estimate(trial_fn: TrialFn, params: NoiseParams, trials: int, max_trials: int,
                      seed: int = 0, workers: int = 1) -> RateEstimate:
    """
    Grow the trial count fourfold until the interval half-width is below 15%
    of the rate or max_trials is reached. Earlier trials are reused. A point
    where every trial was discarded comes back with a NaN rate.
    """
    done, failures, accepted = _count(trial_fn, params, seed, 0, trials, workers)
    while True:
        if accepted:
            estimate = _estimate(params.p, done, failures, accepted)
            if failures and estimate.half_width <= RELATIVE_HALF_WIDTH * estimate.rate:
                return estimate
        if done >= max_trials:
            return _estimate(params.p, done, failures, accepted, strict=False)
        target = min(done * 4, max_trials)
        more = _count(trial_fn, params, seed, done, target, workers)
        done, failures, accepted = done + more[0], failures + more[1], accepted + more[2]


@dataclass
class ThresholdReport:
    """
    Grid of rate estimates and the pseudo-threshold they bracket.

    Attributes:
        spec (TrialSpec): What was simulated
        gamma (float): Idle ratio
        seed (int): Run seed
        grid (List[RateEstimate]): Estimates sorted by p
        crossing (Optional[float]): Interpolated pseudo-threshold
        bracket (Optional[Tuple[float, float]]): Grid points around the crossing
        verdict (str): crossing, below (rate < p everywhere), above, or
            undefined when every grid point was discarded
        reference (float): Reference value or NaN
    """

    spec: TrialSpec
    gamma: float
    seed: int
    grid: List[RateEstimate] = field(default_factory=list)
    crossing: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None
    verdict: str = "crossing"
    reference: float = float("nan")

    @property
    def basename(self) -> str:
        return f"{self.spec.code}_{self.spec.scheme}_{self.spec.procedure}_g{self.gamma:g}"

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "p": f"{e.p:.6e}", "trials": e.trials, "failures": e.failures,
                "accepted": e.accepted, "acceptance": f"{e.acceptance:.6f}",
                "logical_rate": f"{e.rate:.6e}", "ci_low": f"{e.low:.6e}", "ci_high": f"{e.high:.6e}",
            }
            for e in self.grid
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spec": asdict(self.spec),
            "gamma": self.gamma,
            "seed": self.seed,
            "verdict": self.verdict,
            "crossing": self.crossing,
            "bracket": list(self.bracket) if self.bracket else None,
            "reference": None if math.isnan(self.reference) else self.reference,
            "grid": self.rows(),
        }


def _sign(e: RateEstimate) -> int:
    return 1 if e.rate > e.p else -1


def _interpolate(lo: RateEstimate, hi: RateEstimate) -> float:
    """Crossing of rate - p on a log-p axis between two estimates of opposite sign."""
    d_lo, d_hi = lo.rate - lo.p, hi.rate - hi.p
    t = d_lo / (d_lo - d_hi) if d_hi != d_lo else 0.5
    return float(math.exp(math.log(lo.p) + t * (math.log(hi.p) - math.log(lo.p))))


def find_pseudothreshold(spec: TrialSpec, gamma: float, p_range: Tuple[float, float] = (1e-5, 5e-2),
                         points: int = 7, trials: int = 10000, max_trials: int = 10 ** 7,
                         budget: int = 10 ** 8, seed: int = 0, workers: int = 1) -> ThresholdReport:
    """
    Locate the physical rate where the logical rate equals p.

    A log-spaced grid is sampled first; the first sign change of rate - p is
    then bisected geometrically until the bracket is narrower than 10% of its
    midpoint or the trial budget is spent.

    Args:
        spec (TrialSpec): Trial to run
        gamma (float): Idle ratio
        p_range (Tuple[float, float]): Grid ends
        points (int): Grid points
        trials (int): Initial trials per point
        max_trials (int): Cap per point
        budget (int): Total trial budget
        seed (int): Run seed
        workers (int): Worker processes

    Returns:
        ThresholdReport: verdict "below", "above" or "undefined" when no sign
            change exists
    """
    if trials < 1 or points < 2:
        raise ConfigError("need at least one trial and two grid points")
    report = ThresholdReport(spec, gamma, seed,
                             reference=threshold_reference(spec.target, spec.code, spec.scheme,
                                                           spec.procedure, gamma))
    used = 0

    def sample(p: float) -> RateEstimate:
        nonlocal used
        cap = max(trials, min(max_trials, budget - used))
        estimate = adaptive_estimate(spec, NoiseParams(p, gamma), trials, cap, seed, workers)
        used += estimate.trials
        report.grid.append(estimate)
        logger.info(f"{report.basename}: p = {p:.3e}, rate = {estimate.rate:.3e} "
                    f"[{estimate.low:.3e}, {estimate.high:.3e}], {estimate.trials} trials")
        return estimate

    sampled = [sample(float(p)) for p in np.geomspace(p_range[0], p_range[1], points)]
    # points with every trial discarded stay in the report but carry no sign
    grid = [e for e in sampled if e.defined]
    pair = next(((a, b) for a, b in zip(grid, grid[1:]) if _sign(a) < 0 < _sign(b)), None)
    if pair is None:
        if not grid:
            report.verdict = "undefined"
        else:
            report.verdict = "below" if all(_sign(e) < 0 for e in grid) else "above"
        report.grid.sort(key=lambda e: e.p)
        logger.warning(f"{report.basename}: no crossing on [{p_range[0]:g}, {p_range[1]:g}], rate {report.verdict} p")
        return report
    lo, hi = pair
    while (hi.p - lo.p) / math.sqrt(lo.p * hi.p) >= 0.1 and used < budget:
        mid = sample(math.sqrt(lo.p * hi.p))
        if not mid.defined:
            break
        if _sign(mid) < 0:
            lo = mid
        else:
            hi = mid
    report.bracket = (lo.p, hi.p)
    report.crossing = _interpolate(lo, hi)
    report.grid.sort(key=lambda e: e.p)
    logger.info(f"{report.basename}: pseudo-threshold {report.crossing:.3e} in [{lo.p:.3e}, {hi.p:.3e}]")
    return report


REPORT_COLUMNS = ("p", "trials", "failures", "accepted", "acceptance", "logical_rate", "ci_low", "ci_high")


def write_report(report: ThresholdReport, out_dir: str) -> Tuple[Path, Path]:
    """
    Write ``<out_dir>/<target>/<code>_<scheme>_<procedure>_g<gamma>.csv`` and its JSON mirror.

    Returns:
        Tuple[Path, Path]: CSV and JSON paths
    """
    folder = Path(out_dir) / report.spec.target
    folder.mkdir(parents=True, exist_ok=True)
    csv_path = folder / f"{report.basename}.csv"
    json_path = folder / f"{report.basename}.json"
    try:
        with open(csv_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=REPORT_COLUMNS)
            writer.writeheader()
            writer.writerows(report.rows())
        with open(json_path, "w", encoding="utf-8") as f:
            json.dump(report.to_dict(), f, indent=2)
    except OSError as e:
        logger.error(f"Error writing report {csv_path}: {str(e)}")
        raise
    logger.info(f"Report written to {csv_path}")
    return csv_path, json_path


def sweep(spec: TrialSpec, gamma: float, ps: Sequence[float], trials: int, seed: int = 0,
          workers: int = 1) -> ThresholdReport:
    """Fixed-grid estimates without bisection."""
    report = ThresholdReport(spec, gamma, seed, verdict="grid",
                             reference=threshold_reference(spec.target, spec.code, spec.scheme,
                                                           spec.procedure, gamma))
    for p in sorted(ps):
        report.grid.append(estimate_rate(spec, NoiseParams(p, gamma), trials, seed, workers, strict=False))
    return report

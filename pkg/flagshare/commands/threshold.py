"""
threshold: logical error rates and pseudo-thresholds of a certified scheme.

Without ``--p`` the pseudo-threshold is bracketed on a log grid and bisected;
with ``--p`` only the given points are estimated. Reports go to
``<out>/<target>/<code>_<scheme>_<procedure>_g<gamma>.{csv,json}``.
"""

import logging
import math

from ..montecarlo import TARGETS, TrialSpec, find_pseudothreshold, sweep, write_report
from ..utils.decorators import EXIT_OK, certified_scheme_required, logged_command

# Initialize logger
logger = logging.getLogger(__name__)


def _describe(report) -> str:
    reference = "" if math.isnan(report.reference) else f" (reference {report.reference:.3g})"
    if report.crossing is not None:
        return f"pseudo-threshold {report.crossing:.3e}{reference}"
    if report.verdict == "grid":
        return "; ".join(f"p={e.p:.2e}: {e.rate:.3e} [{e.low:.2e}, {e.high:.2e}] acc {e.acceptance:.3f}"
                         for e in report.grid)
    return f"no crossing, logical rate {report.verdict} p{reference}"


@logged_command
@certified_scheme_required
def run(args) -> int:
    config = args.config_obj
    gamma = config.get("gamma", args.gamma)
    seed = config.get("seed", args.seed)
    trials = config.get("trials", args.trials)
    workers = config.get("workers", args.workers)
    print(f"seed {seed}")
    targets = TARGETS if args.target == "both" else (args.target,)
    for target in targets:
        spec = TrialSpec(target, args.code, args.scheme, args.procedure, args.rounds, args.scheme_seed)
        if args.p:
            report = sweep(spec, gamma, args.p, trials, seed, workers)
        else:
            report = find_pseudothreshold(
                spec, gamma,
                p_range=(config.get("p_min"), config.get("p_max")),
                points=config.get("points"),
                trials=trials,
                max_trials=config.get("max_trials", args.max_trials),
                budget=config.get("budget"),
                seed=seed,
                workers=workers,
            )
        csv_path, _ = write_report(report, args.out)
        print(f"{target} {report.basename}: {_describe(report)} -> {csv_path}")
    return EXIT_OK

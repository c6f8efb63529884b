"""``verify``: run a named check and emit a report.

Exit status: 0 pass, 2 fail, 3 inconclusive, 64 usage error.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import cech, scenario
from .fields import CharacteristicObstruction, is_prime
from .localization import subset_name

EXIT = {"pass": 0, "fail": 2, "inconclusive": 3}
USAGE = 64


class UsageError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    scenario: str
    characteristic: int = 0
    t: int = 2
    k: int = 3
    multidegree: tuple = (0, 0, 0, 0)
    cutoff: int = 4
    max_cutoff: int = None
    degree_bound: int = 6
    j: int = -6
    jobs: int = 1

    def inputs(self):
        keys = SCENARIOS[self.scenario][1]
        out = {}
        for key in keys:
            value = getattr(self, key)
            out[key] = list(value) if isinstance(value, tuple) else value
        return out


@dataclass
class VerificationReport:
    scenario: str
    inputs: dict
    outcome: str
    details: dict = dc_field(default_factory=dict)
    rows: list = dc_field(default_factory=list)
    duration: float = None

    def as_dict(self, timing=False):
        out = {"scenario": self.scenario, "inputs": self.inputs,
               "outcome": self.outcome, "details": self.details}
        if timing:
            out["duration_s"] = round(self.duration or 0.0, 3)
        return out


def _outcome(value):
    if value is cech.INCONCLUSIVE:
        return "inconclusive"
    return "pass" if value else "fail"


def _require_char0(cfg):
    if cfg.characteristic != 0:
        raise UsageError(f"{cfg.scenario} needs --char 0")


def _require_charp(cfg):
    if cfg.characteristic == 0:
        raise UsageError(f"{cfg.scenario} needs --char p for a prime p")


def _cocycle_rows(check, label=""):
    return [[label or "d(eta)", subset_name(T), "zero" if ok else "nonzero"]
            for T, ok in check.checked]


def _stab_details(result):
    return {
        "cutoff": result.cutoff,
        "cutoffs_tried": list(result.attempts),
        "stable": not result.unstable,
        "unstable_pieces": [r.site for r in result.unstable],
    }


def run_char0_eta_cocycle(cfg):
    _require_char0(cfg)
    check = cech.is_cocycle(scenario.eta_char0(cfg.t), cfg.jobs)
    raw = cech.is_cocycle(scenario.eta_char0(cfg.t, variant="raw"), cfg.jobs)
    details = {"cocycle": check.ok, "witness": check.witness_name,
               "literal_table_cocycle": raw.ok, "literal_table_witness": raw.witness_name}
    return _outcome(check.ok), details, _cocycle_rows(check)


def run_char0_eta_noncoboundary(cfg):
    _require_char0(cfg)
    res = cech.coboundary_test(scenario.eta_char0(cfg.t), cfg.cutoff, cfg.max_cutoff, cfg.jobs)
    details = {"coboundary": str(res.outcome) if res.outcome is cech.INCONCLUSIVE else res.outcome}
    details.update(_stab_details(res))
    if res.outcome is cech.INCONCLUSIVE:
        outcome = "inconclusive"
    else:
        outcome = "fail" if res.outcome else "pass"
    rows = [["stabilization", r.site, "stable" if r.stable else "unstable"]
            for r in res.stabilization]
    return outcome, details, rows


def run_char0_rank(cfg):
    _require_char0(cfg)
    rep = cech.cohomology_rank(cfg.k, cfg.t, cfg.multidegree, cfg.cutoff, 0, cfg.jobs,
                               cfg.max_cutoff)
    details = rep.as_dict()
    details["unstable_pieces"] = rep.unstable_pieces
    expected = None
    if cfg.k == 3 and tuple(cfg.multidegree) == (0, 0, 0, 0):
        expected = 1 if cfg.t >= 2 else 0
    details["expected_rank"] = expected
    if not rep.stable:
        outcome = "inconclusive"
    elif expected is None:
        outcome = "pass"
    else:
        outcome = "pass" if rep.rank == expected else "fail"
    rows = [["rank", f"k={cfg.k}", str(rep.rank)]]
    return outcome, details, rows


def run_log_identity(cfg):
    _require_char0(cfg)
    here = scenario.truncated_log_sum(cfg.t)
    above = scenario.truncated_log_sum(cfg.t, ring=scenario.thickening(cfg.t + 1, 0))
    details = {"zero_at_t": here.is_zero(), "zero_at_t_plus_1": above.is_zero()}
    rows = [["log-sum", f"t={cfg.t}", "zero" if here.is_zero() else "nonzero"],
            ["log-sum", f"t={cfg.t + 1}", "zero" if above.is_zero() else "nonzero"]]
    ok = here.is_zero() and not above.is_zero()
    return _outcome(ok), details, rows


def run_charp_family(cfg):
    _require_charp(cfg)
    p, t = cfg.characteristic, cfg.t
    params = scenario.charp_params(p, t)
    cap = cfg.max_cutoff or max(cfg.cutoff, t + params.q + 2)
    classes = scenario.charp_classes(p, t)
    per_class = []
    rows = []
    verdicts = []
    for name, c in classes:
        co = cech.is_cocycle(c, cfg.jobs)
        cb = cech.coboundary_test(c, cfg.cutoff, cap, cfg.jobs)
        entry = {"class": name, "multidegree": list(c.multidegree), "cocycle": co.ok,
                 "witness": co.witness_name,
                 "coboundary": str(cb.outcome) if cb.outcome is cech.INCONCLUSIVE else cb.outcome}
        entry.update(_stab_details(cb))
        per_class.append(entry)
        rows.append([name, "cocycle", str(co.ok).lower()])
        rows.append([name, "coboundary", entry["coboundary"] if isinstance(entry["coboundary"], str)
                     else str(entry["coboundary"]).lower()])
        verdicts.append(co.ok)
        verdicts.append(cech.INCONCLUSIVE if cb.outcome is cech.INCONCLUSIVE else not cb.outcome)
    ind = cech.independence_report([c for _, c in classes], cfg.cutoff, cap, cfg.jobs)
    details = {
        "q": params.q, "q2": params.q2, "m_list": list(params.m_list),
        "bound": params.bound, "independent_classes": ind.count,
        "independence_cutoffs": {",".join(map(str, md)): n for md, n in ind.cutoffs.items()},
        "classes": per_class, "max_cutoff": cap,
    }
    rows.append(["independent", "count", str(ind.count)])
    if any(v is cech.INCONCLUSIVE for v in verdicts) or ind.outcome is cech.INCONCLUSIVE:
        outcome = "inconclusive"
    else:
        outcome = "pass" if all(verdicts) and ind.count == params.bound else "fail"
    return outcome, details, rows


def degree0_window(p, t, cutoff=4, max_cutoff=None, sweep=1, jobs=1):
    """Ranks of H^3 on (0,0,0,s), |s| <= q, plus neighbours (a,b,c,s) with a+b+c = 0."""
    params = scenario.charp_params(p, t)
    cap = max_cutoff or max(cutoff, t + params.q + 3)
    window = {}
    for s in range(-params.q, params.q + 1):
        rep = cech.cohomology_rank(3, t, (0, 0, 0, s), cutoff, p, jobs, cap)
        window[s] = rep
    shifts = [(a, b, -a - b) for a in range(-sweep, sweep + 1) for b in range(-sweep, sweep + 1)
              if (a, b) != (0, 0) and abs(a + b) <= sweep]
    neighbours = {}
    for a, b, c in shifts:
        for s in range(-params.q - 1, params.q + 2):
            neighbours[(a, b, c, s)] = cech.cohomology_rank(3, t, (a, b, c, s), cutoff, p, jobs, cap)
    return params, window, neighbours


def run_degree0_window(cfg):
    _require_charp(cfg)
    p, t = cfg.characteristic, cfg.t
    params, window, neighbours = degree0_window(p, t, cfg.cutoff, cfg.max_cutoff, jobs=cfg.jobs)
    total = sum(r.rank for r in window.values())
    stable = all(r.stable for r in window.values()) and all(r.stable for r in neighbours.values())
    details = {
        "window_ranks": {str(s): r.rank for s, r in window.items()},
        "window_cutoffs": {str(s): r.cutoff for s, r in window.items()},
        "neighbour_rank_total": sum(r.rank for r in neighbours.values()),
        "neighbours_checked": len(neighbours),
        "computed_rank": total,
        "bound_displayed": params.bound,
        "bound_2t_minus_3": 2 * t - 3,
        "bound_2t_minus_1": 2 * t - 1,
        "reaches_2t_minus_1": total >= 2 * t - 1,
        "stable": stable,
    }
    rows = [["window", f"s={s}", str(r.rank)] for s, r in window.items()]
    rows += [["neighbour", ",".join(map(str, md)), str(r.rank)] for md, r in neighbours.items()
             if r.rank]
    if not stable:
        outcome = "inconclusive"
    else:
        outcome = "pass" if total >= params.bound else "fail"
    return outcome, details, rows


def _stars_and_bars(j):
    # count a+...+f = -j with all parts >= 1 by direct enumeration
    n = -j
    if n < 6:
        return 0
    count = 0

    def walk(parts_left, remaining):
        nonlocal count
        if parts_left == 1:
            count += remaining >= 1
            return
        for first in range(1, remaining - parts_left + 2):
            walk(parts_left - 1, remaining - first)

    walk(6, n)
    return count


def run_h6_rank(cfg):
    value = scenario.h6_graded_rank(cfg.j)
    oracle = _stars_and_bars(cfg.j)
    details = {"rank": value, "enumerated": oracle}
    return _outcome(value == oracle), details, [["h6", f"j={cfg.j}", str(value)]]


def run_oracle_crosscheck(cfg):
    rows_out = []
    disagreements = 0
    for f, gb_says, oracle_says in scenario.membership_sweep(cfg.t, cfg.characteristic,
                                                              cfg.degree_bound):
        if gb_says != oracle_says:
            disagreements += 1
            rows_out.append(["disagree", str(f), f"groebner={gb_says} oracle={oracle_says}"])
    n = len(scenario.sweep_elements(cfg.degree_bound, cfg.characteristic))
    details = {"elements": n, "disagreements": disagreements}
    rows_out.insert(0, ["sweep", f"elements={n}", f"disagreements={disagreements}"])
    return _outcome(disagreements == 0), details, rows_out


SCENARIOS = {
    "char0-eta-cocycle": (run_char0_eta_cocycle, ("characteristic", "t")),
    "char0-eta-noncoboundary": (run_char0_eta_noncoboundary,
                                ("characteristic", "t", "cutoff", "max_cutoff")),
    "char0-rank": (run_char0_rank, ("characteristic", "t", "k", "multidegree", "cutoff",
                                    "max_cutoff")),
    "log-identity": (run_log_identity, ("characteristic", "t")),
    "charp-family": (run_charp_family, ("characteristic", "t", "cutoff", "max_cutoff")),
    "degree0-window": (run_degree0_window, ("characteristic", "t", "cutoff", "max_cutoff")),
    "h6-rank": (run_h6_rank, ("j",)),
    "oracle-crosscheck": (run_oracle_crosscheck, ("characteristic", "t", "degree_bound")),
}


def validate(cfg):
    if cfg.scenario not in SCENARIOS:
        raise UsageError(f"unknown scenario {cfg.scenario!r}")
    if cfg.characteristic != 0 and not is_prime(cfg.characteristic):
        raise UsageError(f"--char must be 0 or a prime, got {cfg.characteristic}")
    if cfg.t < 1:
        raise UsageError("--t must be >= 1")
    if cfg.cutoff < 2:
        raise UsageError("--cutoff must be >= 2")
    if cfg.max_cutoff is not None and cfg.max_cutoff < cfg.cutoff:
        raise UsageError("--max-cutoff must be >= --cutoff")
    if not 0 <= cfg.k <= 6:
        raise UsageError("--k must lie in 0..6")
    if cfg.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if cfg.scenario in ("charp-family", "degree0-window") and cfg.t < 2:
        raise UsageError(f"{cfg.scenario} needs --t >= 2")
    if cfg.scenario in ("char0-eta-cocycle", "char0-eta-noncoboundary", "log-identity") and cfg.t < 2:
        raise UsageError(f"{cfg.scenario} needs --t >= 2")


def run_scenario(cfg):
    validate(cfg)
    start = time.perf_counter()
    fn = SCENARIOS[cfg.scenario][0]
    try:
        outcome, details, rows = fn(cfg)
    except CharacteristicObstruction as exc:
        outcome, details, rows = "fail", {"error": str(exc)}, []
    return VerificationReport(cfg.scenario, cfg.inputs(), outcome, details, rows,
                              time.perf_counter() - start)


def emit_report(report, fmt="json", timing=False):
    if fmt == "json":
        return (json.dumps(report.as_dict(timing), indent=2) + "\n").encode()
    if fmt == "tsv":
        lines = ["scenario\tcheck\titem\tresult"]
        for row in report.rows:
            lines.append("\t".join([report.scenario] + [str(x) for x in row]))
        lines.append(f"{report.scenario}\toutcome\t-\t{report.outcome}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "human":
        lines = [f"{report.scenario}: {report.outcome.upper()}"]
        for key, value in report.inputs.items():
            lines.append(f"  {key} = {value}")
        for key, value in report.details.items():
            if key == "classes":
                for entry in value:
                    lines.append(f"  {entry['class']}: cocycle={entry['cocycle']} "
                                 f"coboundary={entry['coboundary']} cutoff={entry['cutoff']}")
            else:
                lines.append(f"  {key}: {value}")
        lines.append(f"  duration: {report.duration or 0.0:.2f}s")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _multidegree(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("multidegree needs four comma-separated integers")
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multidegree {text!r}") from None


def build_parser():
    ap = _Parser(prog="verify", description="Run a verification scenario for the determinantal "
                 "thickenings and print a report.")
    ap.add_argument("scenario", choices=sorted(SCENARIOS))
    ap.add_argument("--char", dest="characteristic", type=int, default=0)
    ap.add_argument("--t", type=int, default=2)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--multidegree", type=_multidegree, default=(0, 0, 0, 0))
    ap.add_argument("--cutoff", type=int, default=4)
    ap.add_argument("--max-cutoff", type=int, default=None,
                    help="raise the cutoff up to this level until graded pieces stabilize")
    ap.add_argument("--degree-bound", type=int, default=6)
    ap.add_argument("--j", type=int, default=-6)
    ap.add_argument("--format", choices=("json", "tsv", "human"), default="json")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None)
    ap.add_argument("--timing", action="store_true", help="include wall-clock time in json")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = ScenarioConfig(args.scenario, args.characteristic, args.t, args.k, args.multidegree,
                         args.cutoff, args.max_cutoff, args.degree_bound, args.j, args.jobs)
    try:
        report = run_scenario(cfg)
    except UsageError as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return USAGE
    data = emit_report(report, args.format, args.timing)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT[report.outcome]


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``driveshaft analyze|optimize|validate``.

Exit status is 0 on success, 1 when validation fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from .config import ConfigError, ScenarioConfig, load_config
from .ga import decode, write_history
from .optimize import DrivelineProblem, design_from_decoded, optimize
from .report import analysis_record, fmt_value, format_table, write_csv, write_json
from .validation import SELECTORS, run_validation

log = logging.getLogger("driveshaft")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_analyze(args, cfg: ScenarioConfig) -> int:
    design = cfg.design()
    rec = analysis_record(design, cfg.driveline, cfg.factors)
    out = _out_dir(args)
    write_csv(out / "analysis.csv", [rec])
    write_json(out / "analysis.json", rec)
    print(format_table(rec))
    if rec["errors"]:
        log.warning("some analyses failed: %s", rec["errors"])
    return EXIT_OK


def cmd_optimize(args, cfg: ScenarioConfig) -> int:
    if cfg.encoding is None:
        raise ConfigError("[encoding] section is required for optimize")
    params = cfg.ga
    if params is None:
        raise ConfigError("[ga] section is required for optimize")
    over = {}
    if args.seed is not None:
        over["seed"] = args.seed
    if args.threads is not None:
        over["threads"] = args.threads
    if over:
        try:
            params = dataclasses.replace(params, **over)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    problem = DrivelineProblem(cfg.encoding, cfg.driveline, cfg.factors, cfg.catalog)
    result = optimize(problem, params)
    out = _out_dir(args)
    write_history(out / "history.csv", result.history)
    decoded = decode(result.best.bits, cfg.encoding)
    design = design_from_decoded(decoded, cfg.encoding, cfg.catalog)
    rec = analysis_record(design, cfg.driveline, cfg.factors)
    summary = {
        "seed": params.seed,
        "generations": len(result.history),
        "evaluations": result.evaluations,
        "chromosome_hex": result.best.hex,
        "best_fitness": result.best.fitness,
        "notation": design.sequence.notation(),
        "analysis": rec,
    }
    write_json(out / "best.json", summary)
    write_csv(out / "best.csv", [rec])
    print(f"best design {design.sequence.notation()}  r_m={fmt_value(design.r_m)} m  "
          f"Omega={fmt_value(design.Omega)} rev/min  m_dv={fmt_value(rec['m_dv'])} kg  "
          f"feasible={fmt_value(rec['feasible'])}")
    print(format_table(rec))
    return EXIT_OK


def cmd_validate(args) -> int:
    names = [s.strip() for s in args.fixtures.split(",") if s.strip()]
    try:
        report = run_validation(names)
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from exc
    rows = [
        {"id": r.id, "source": r.source, "expected": float(r.expected), "computed": float(r.computed),
         "rel_error": float(r.rel_error), "tolerance": float(r.tolerance), "passed": bool(r.passed)}
        for r in report.results
    ]
    if args.out:
        out = _out_dir(args)
        write_csv(out / "validation.csv", rows)
    w = max(len(r["id"]) for r in rows)
    for r in rows:
        flag = "PASS" if r["passed"] else "FAIL"
        print(f"{flag}  {r['id']:<{w}}  expected={fmt_value(r['expected'])}  computed={fmt_value(r['computed'])}"
              f"  rel_err={r['rel_error']:.4f}  tol={r['tolerance']:g}")
    print(f"{len(rows) - report.n_failed}/{len(rows)} fixtures passed")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="driveshaft", description="Composite drive-shaft analysis and optimization")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse the shaft described in a scenario file")
    a.add_argument("--config", required=True)
    a.add_argument("--out", default="driveshaft_out")

    o = sub.add_parser("optimize", help="run the genetic algorithm of a scenario file")
    o.add_argument("--config", required=True)
    o.add_argument("--seed", type=int)
    o.add_argument("--threads", type=int)
    o.add_argument("--out", default="driveshaft_out")

    v = sub.add_parser("validate", help="compare built-in reference data")
    v.add_argument("--fixtures", default="all", help=f"comma list of {', '.join(SELECTORS)} or all")
    v.add_argument("--out")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "validate":
            return cmd_validate(args)
        cfg = load_config(args.config)
        if args.command == "analyze":
            return cmd_analyze(args, cfg)
        return cmd_optimize(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

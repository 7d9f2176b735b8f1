"""Command-line front end.

Exit codes: 0 every goal provable, 1 some goal not provable, 2 parse or
configuration error, 3 a self-check failed (oracle disagreement or a
countermodel that does not verify).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from typing import TextIO

from .calculus import check_derivation
from .formula import BOT, TOP, And, Formula, Imp, Or, ParseError
from .render import (derivation_latex, derivation_text, derivation_to_json, model_text,
                     model_to_json)
from .search import countermodel_errors, prove
from .semantics import BudgetExceeded, lc_refuting_chain
from .sequent import Sequent, parse_sequent

EXIT_OK, EXIT_UNPROVABLE, EXIT_INPUT, EXIT_SELFCHECK = 0, 1, 2, 3


@dataclass
class RunConfig:
    logic: str = "lc"
    format: str = "text"
    formula: str | None = None
    file: str | None = None
    verify_countermodel: bool = True
    oracle: bool = False
    stats: bool = False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="laterproof",
        description="Decide formulas of LC-later or KM; print a derivation or a countermodel.")
    p.add_argument("goal", nargs="?",
                   help="formula, or sequent 'a, b => c' (omit when using --file)")
    p.add_argument("--logic", choices=["lc", "km"], default="lc")
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    p.add_argument("--file", help="file with one goal per line; '#' starts a comment line")
    p.add_argument("--verify-countermodel", nargs="?", const="on", default="on",
                   choices=["on", "off"], help="check every countermodel semantically (default on)")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against brute-force enumeration of linear models")
    p.add_argument("--stats", action="store_true", help="print search statistics")
    return p


def _goals(cfg: RunConfig) -> list[tuple[str, int, str]]:
    if cfg.file is None:
        return [("<arg>", 1, cfg.formula or "")]
    with open(cfg.file, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    return [(cfg.file, i, line) for i, line in enumerate(lines, 1)
            if line.strip() and not line.lstrip().startswith("#")]


def _as_formula(s: Sequent) -> Formula:
    def fold(op, fs, unit):
        fs = sorted(fs, key=lambda f: f.key)
        if not fs:
            return unit
        out = fs[0]
        for f in fs[1:]:
            out = op(out, f)
        return out

    right = fold(Or, s.succedent, BOT)
    return Imp(fold(And, s.antecedent, TOP), right) if s.antecedent else right


def _decide(cfg: RunConfig, source: str, lineno: int, text: str) -> tuple[int, dict]:
    """Run one goal; returns the exit status for it and a report dict."""
    report: dict = {"goal": text.strip(), "logic": cfg.logic}
    try:
        goal = parse_sequent(text)
    except ParseError as exc:
        report["verdict"] = "error"
        expected = ", ".join(sorted(exc.expected))
        report["error"] = f"{source}:{lineno}:{exc.column}: {exc.message} (expected one of: {expected})"
        return EXIT_INPUT, report
    outcome = prove(goal, cfg.logic)
    status = EXIT_OK if outcome.provable else EXIT_UNPROVABLE
    report["verdict"] = "provable" if outcome.provable else "not provable"
    if cfg.stats:
        report["stats"] = dataclasses.asdict(outcome.stats)
    if outcome.provable:
        report["derivation"] = outcome.derivation
        report["checked"] = check_derivation(outcome.derivation, cfg.logic)
        if not report["checked"]:
            status = EXIT_SELFCHECK
    else:
        report["countermodel"] = (outcome.model, outcome.refuting_world)
        if cfg.verify_countermodel:
            problems = countermodel_errors(outcome, goal, cfg.logic)
            ok = not problems
            report["verified"] = ok
            if problems:
                report["verify_errors"] = problems
            if not ok:
                status = EXIT_SELFCHECK
    if cfg.oracle:
        try:
            chain = lc_refuting_chain(_as_formula(goal))
        except BudgetExceeded as exc:
            report["oracle"] = {"skipped": str(exc)}
        else:
            valid = chain is None
            report["oracle"] = {"lc_valid": valid}
            if chain is not None:
                report["oracle"]["chain"] = chain
            # KM is contained in LC, so only a KM proof of an LC-invalid goal conflicts
            conflict = (outcome.provable != valid) if cfg.logic == "lc" else (outcome.provable and not valid)
            if conflict:
                report["oracle"]["disagreement"] = True
                status = EXIT_SELFCHECK
    return status, report


def _emit(cfg: RunConfig, report: dict, out: TextIO) -> None:
    if cfg.format == "json":
        obj = {k: v for k, v in report.items() if k not in ("derivation", "countermodel", "oracle")}
        if "derivation" in report:
            obj["derivation"] = derivation_to_json(report["derivation"], cfg.logic)
        if "countermodel" in report:
            obj["countermodel"] = model_to_json(*report["countermodel"])
        if "oracle" in report:
            oracle = dict(report["oracle"])
            if "chain" in oracle:
                oracle["chain"] = model_to_json(oracle["chain"], 0)
            obj["oracle"] = oracle
        out.write(json.dumps(obj) + "\n")
        return
    comment = "% " if cfg.format == "latex" else ""
    write = lambda line="": out.write(f"{comment}{line}\n")  # noqa: E731
    write(f"goal: {report['goal']}")
    if report["verdict"] == "error":
        write(f"error: {report['error']}")
        write()
        return
    write(f"logic: {cfg.logic}")
    write(f"verdict: {report['verdict']}")
    if "derivation" in report:
        if cfg.format == "latex":
            out.write(derivation_latex(report["derivation"]) + "\n")
        else:
            write("derivation:")
            for line in derivation_text(report["derivation"]).splitlines():
                write("  " + line)
    if "countermodel" in report:
        write("countermodel:")
        for line in model_text(*report["countermodel"]).splitlines():
            write("  " + line)
        if "verified" in report:
            write("  verified: " + ("yes" if report["verified"] else "NO"))
            for problem in report.get("verify_errors", ()):
                write("    " + problem)
    if "stats" in report:
        write("stats: " + ", ".join(f"{k}={v}" for k, v in report["stats"].items()))
    if "oracle" in report:
        o = report["oracle"]
        if "skipped" in o:
            write(f"oracle: skipped ({o['skipped']})")
        else:
            write(f"oracle: {'valid' if o['lc_valid'] else 'invalid'} on linear models")
            if "chain" in o:
                for line in model_text(o["chain"], 0).splitlines():
                    write("  " + line)
            if o.get("disagreement"):
                write("oracle: DISAGREEMENT with the prover")
    write()


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if (cfg.formula is None) == (cfg.file is None):
        err.write("laterproof: give exactly one of a goal argument or --file\n")
        return EXIT_INPUT
    try:
        goals = _goals(cfg)
    except OSError as exc:
        err.write(f"laterproof: {exc}\n")
        return EXIT_INPUT
    worst = EXIT_OK
    for source, lineno, text in goals:
        status, report = _decide(cfg, source, lineno, text)
        if status == EXIT_INPUT:
            err.write(report["error"] + "\n")
        _emit(cfg, report, out)
        worst = max(worst, status)
    return worst


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(logic=args.logic, format=args.format, formula=args.goal, file=args.file,
                    verify_countermodel=args.verify_countermodel == "on",
                    oracle=args.oracle, stats=args.stats)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

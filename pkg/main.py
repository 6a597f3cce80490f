"""
Łukasiewicz Workbench - decision procedure, proof checker and consistency lab
for infinite-valued Łukasiewicz logic.

Exit codes: 0 affirmative result, 1 negative result, 2 usage or input error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from engines.consistency_lab import CONSISTENCY_NOTE, dump_trace, load_trace
from engines.workbench import LogicWorkbench
from tools.config import Settings
from tools.errors import LogicError
from tools.formula import Formula
from tools.parser import format_formula, parse
from tools.reporter import ReportGenerator
from tools.semantics import ONE, Valuation, evaluate, format_rational

logger = logging.getLogger("lukasiewicz")

EPILOG = """
Examples:
  lukasiewicz decide "(p & q) -> p"
  lukasiewicz eval "p -> q" --val p=3/5,q=7/10
  lukasiewicz minmax "p \\/ !p"
  lukasiewicz check fixtures/lemma2.proof
  lukasiewicz extend --seed seed.txt --vars p --depth 2 > trace.jsonl
  lukasiewicz audit trace.jsonl
  lukasiewicz fixtures
"""


def read_formula_set(path: str) -> List[Formula]:
    """One formula per line; blank lines and `#` comments are skipped."""
    formulas = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            formulas.append(parse(line))
    return formulas


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lukasiewicz",
        description="Exact decisions, proofs and maximal consistent sets for Łukasiewicz logic",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Report format (default: text)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="Evaluate a formula under a valuation")
    p.add_argument("formula")
    p.add_argument("--val", default="", help="name=num/den[,name=num/den...]")

    p = sub.add_parser("decide", help="Tautology (default) or satisfiability verdict")
    p.add_argument("formula")
    p.add_argument("--mode", choices=["taut", "sat1", "pos"], default="taut",
                   help="taut: value 1 everywhere; sat1: value 1 somewhere; pos: value > 0 somewhere")

    p = sub.add_parser("minmax", help="Exact minimum and maximum with witnesses")
    p.add_argument("formula")

    p = sub.add_parser("check", help="Check a proof file")
    p.add_argument("proof_file")

    sub.add_parser("verify-registry", help="Decide every registered scheme instance")

    p = sub.add_parser("consistent", help="Decide consistency of a finite formula set")
    p.add_argument("set_file")

    p = sub.add_parser("extend", help="Bounded Lindenbaum extension; JSON-lines trace on stdout")
    p.add_argument("--seed", required=True, help="Set file with the seed formulas")
    p.add_argument("--vars", required=True, help="Comma-separated generator variables")
    p.add_argument("--depth", type=int, required=True, help="Maximum number of connectives")
    p.add_argument("--nmax", type=int, default=None, help="Power bound recorded for later audits")

    p = sub.add_parser("audit", help="Audit maximality properties of a trace")
    p.add_argument("trace_file")
    p.add_argument("--nmax", type=int, default=None)

    p = sub.add_parser("probe", help="Compare canonical valuation and membership on a trace")
    p.add_argument("trace_file")

    p = sub.add_parser("extension", help="If phi fails to entail target, phi with !target must be consistent")
    p.add_argument("set_file")
    p.add_argument("target")

    p = sub.add_parser("half-seed", help="Extend {p & p, !(!p & !p)} and report what it decides about p")
    p.add_argument("--depth", type=int, default=2)

    p = sub.add_parser("fixtures", help="Check the derivation suite, bundled proof files and the registry")
    p.add_argument("--dir", default=None, help="Fixture directory (default: bundled fixtures/)")

    return parser


def dispatch(args: argparse.Namespace, bench: LogicWorkbench) -> int:
    reporter = ReportGenerator(args.format)
    engine, lab = bench.engine, bench.lab

    if args.command == "eval":
        f = parse(args.formula)
        value = evaluate(f, Valuation.parse(args.val))
        print(reporter.evaluation(format_formula(f), value))
        return 0 if value == ONE else 1

    if args.command == "decide":
        f = parse(args.formula)
        verdict = {
            "taut": engine.is_tautology,
            "sat1": engine.sat_at_one,
            "pos": engine.positively_satisfiable,
        }[args.mode](f)
        print(reporter.results(verdict))
        return 0 if verdict.affirmative else 1

    if args.command == "minmax":
        f = parse(args.formula)
        print(reporter.results(engine.min_value(f), engine.max_value(f)))
        return 0

    if args.command == "check":
        result = bench.check_file(Path(args.proof_file))
        print(result.render())
        return 0 if result.ok else 1

    if args.command == "verify-registry":
        report = bench.verify_registry()
        print(reporter.registry(report))
        return 0 if report.ok else 1

    if args.command == "consistent":
        verdict = lab.is_consistent(read_formula_set(args.set_file))
        print(reporter.results(verdict))
        print(CONSISTENCY_NOTE, file=sys.stderr)
        return 0 if verdict.consistent else 1

    if args.command == "extend":
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
        ext = bench.extend(read_formula_set(args.seed), names, args.depth)
        sys.stdout.write(dump_trace(ext, args.nmax or bench.settings.nmax))
        return 0 if not ext.gaps else 1

    if args.command == "audit":
        ext, n_max = load_trace(Path(args.trace_file).read_text(encoding="utf-8"))
        report = lab.audit_maximality(ext, args.nmax or n_max)
        print(reporter.audit(report))
        return 0 if report.total_violations == 0 else 1

    if args.command == "probe":
        ext, _ = load_trace(Path(args.trace_file).read_text(encoding="utf-8"))
        print(reporter.probe(lab.probe_truth_lemma(ext)))
        return 0

    if args.command == "extension":
        report = lab.check_extension_lemma(read_formula_set(args.set_file), parse(args.target))
        print(report.outcome)
        if report.premise_holds:
            print(f"witness {report.witness or '(empty)'} gives target {format_rational(report.target_value)}")
            print(report.extension.render())
        return 0 if report.outcome != "premise holds but extension inconsistent" else 1

    if args.command == "half-seed":
        report = lab.half_seed_report(args.depth)
        print(report.render())
        return 0

    if args.command == "fixtures":
        outcomes = bench.run_fixtures(Path(args.dir) if args.dir else None)
        registry = bench.verify_registry()
        print(reporter.fixtures(outcomes, registry))
        return 0 if registry.ok and all(o.ok for o in outcomes) else 1

    raise AssertionError(f"unhandled command {args.command}")


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = Settings.from_env()
    level = logging.DEBUG if args.verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        bench = LogicWorkbench(settings)
        code = dispatch(args, bench)
        logger.debug(f"metrics: {bench.get_metrics()}")
        return code
    except (LogicError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

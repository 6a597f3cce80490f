"""
Report Generator - renders verdicts, fixture, registry, audit and probe results.
Supports plain text tables and JSON.
"""

import json
import logging
from typing import List, Sequence

from pydantic import BaseModel

from models.schemas import AuditReport, FixtureOutcome, ProbeReport, RegistryReport
from tools.semantics import format_rational

logger = logging.getLogger(__name__)


class ReportGenerator:
    """Text and JSON rendering for the CLI. Every method returns a string."""

    def __init__(self, output_format: str = "text"):
        if output_format not in ("text", "json"):
            raise ValueError(f"unknown output format: {output_format}")
        self.output_format = output_format

    def _json(self, payload) -> str:
        return json.dumps(payload, indent=2, sort_keys=True, default=str)

    def evaluation(self, formula: str, value) -> str:
        if self.output_format == "json":
            return self._json({"formula": formula, "value": format_rational(value)})
        return format_rational(value)

    def results(self, *items: BaseModel) -> str:
        """Verdicts, optima and consistency answers: one render() line each, or JSON."""
        if self.output_format == "json":
            payloads = [item.model_dump(mode="json") for item in items]
            return self._json(payloads[0] if len(payloads) == 1 else payloads)
        return "\n".join(item.render() for item in items)

    def fixtures(self, outcomes: Sequence[FixtureOutcome], registry: RegistryReport) -> str:
        if self.output_format == "json":
            return self._json({
                "fixtures": [o.model_dump(mode="json") for o in outcomes],
                "registry": [e.model_dump(mode="json") for e in registry.entries],
            })
        width = max([len(o.name) for o in outcomes] + [len("registry")])
        lines = [f"{'fixture':<{width}}  result", f"{'-' * width}  ------"]
        for o in outcomes:
            detail = f"  {o.reason}" if o.reason else ""
            lines.append(f"{o.name:<{width}}  {'PASS' if o.ok else 'FAIL'}{detail}")
        failed = ", ".join(e.scheme_id for e in registry.failures)
        lines.append(f"{'registry':<{width}}  {'PASS' if registry.ok else 'FAIL'}" + (f"  {failed}" if failed else ""))
        return "\n".join(lines)

    def registry(self, report: RegistryReport) -> str:
        if self.output_format == "json":
            return self._json([e.model_dump(mode="json") for e in report.entries])
        return "\n".join(f"{e.scheme_id:<11} {e.kind:<6} {e.verdict}" for e in report.entries)

    def audit(self, report: AuditReport) -> str:
        if self.output_format == "json":
            payload = report.model_dump(mode="json")
            payload["total_violations"] = report.total_violations
            return self._json(payload)
        lines: List[str] = []
        sections = [
            ("conjunction membership", report.conjunction_violations),
            ("modus ponens closure", report.mp_violations),
            ("derivability closure", report.closure_violations),
        ]
        for title, violations in sections:
            lines.append(f"{title}: {len(violations)} violation(s)")
            lines.extend(f"  {v}" for v in violations)
        lines.append(
            f"powers (k <= {report.n_max}): {len(report.power_witnesses)} decided, "
            f"{len(report.power_undecided)} undecided"
        )
        lines.extend(f"  undecided: {f}" for f in report.power_undecided)
        return "\n".join(lines)

    def probe(self, report: ProbeReport) -> str:
        if self.output_format == "json":
            return self._json(report.model_dump(mode="json"))
        lines = [f"canonical valuation: {report.valuation or '(empty)'}"]
        for e in report.entries:
            marks = "".join("+" if ok else "-" for ok in (e.one_holds, e.zero_holds, e.half_holds))
            lines.append(f"  {marks}  {format_rational(e.value):>4}  {e.case:<11} {e.formula}")
        for case, counts in sorted(report.summary.items()):
            lines.append(f"{case}: {counts['hold']} hold, {counts['fail']} fail")
        return "\n".join(lines)

"""
Workbench - coordinates the decision engine, proof checker and consistency lab.
Owns the shared verdict cache and the session history the CLI reports from.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from engines.consistency_lab import ConsistencyLab, enumerate_fragment
from engines.decision_engine import DecisionEngine
from engines.proof_builder import fixture_suite
from engines.proof_checker import Proof, ProofChecker, load_proof
from models.schemas import FixtureOutcome, FragmentExtension, RegistryReport
from tools.config import Settings
from tools.errors import ProofFormatError
from tools.formula import Formula
from tools.memory_bank import MemoryBank
from tools.observability import ObservabilityLayer

logger = logging.getLogger(__name__)


class SessionState:
    """Chronological record of the operations run in one process."""

    def __init__(self):
        self.created_at = datetime.now()
        self.history: List[Dict[str, Any]] = []

    def add_event(self, component: str, event_type: str, data: Any):
        self.history.append({
            "timestamp": datetime.now().isoformat(),
            "component": component,
            "event": event_type,
            "data": data,
        })


class LogicWorkbench:
    """
    Wires the three engines around one MemoryBank:
    1. DecisionEngine - optima, tautology and satisfiability verdicts
    2. ProofChecker - proof validation, registry and hypothesis soundness
    3. ConsistencyLab - consistency, extensions, audits and probes
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.memory = MemoryBank(max_entries=self.settings.cache_size)
        self.obs = ObservabilityLayer(service_name="workbench")
        self.engine = DecisionEngine(memory=self.memory)
        self.checker = ProofChecker(self.engine)
        self.lab = ConsistencyLab(engine=self.engine)
        self.session = SessionState()
        logger.info(f"Workbench ready (cache={self.settings.cache_size}, nmax={self.settings.nmax})")

    # ─── proofs ──────────────────────────────────────────────────────────

    def check_file(self, path: Path):
        proof = load_proof(Path(path).read_text(encoding="utf-8"))
        result = self.checker.check(proof)
        self.session.add_event("proof_checker", "check", {"path": str(path), "ok": result.ok})
        return result

    def verify_registry(self) -> RegistryReport:
        report = self.checker.verify_registry()
        self.session.add_event("proof_checker", "verify_registry", {"failures": len(report.failures)})
        return report

    def _outcome(self, name: str, proof: Proof) -> FixtureOutcome:
        result = self.checker.check(proof)
        if not result.ok:
            return FixtureOutcome(name=name, ok=False, reason=f"line {result.line}: {result.reason}")
        sound = self.checker.hypothesis_sound(proof)
        return FixtureOutcome(
            name=name,
            ok=sound,
            conclusion=result.conclusion,
            reason="" if sound else "conclusion not entailed by hypotheses",
            hypothesis_sound=sound,
        )

    def run_fixtures(self, fixture_dir: Optional[Path] = None) -> List[FixtureOutcome]:
        """Generated derivation suite first, then every *.proof file in the fixture directory."""
        directory = Path(fixture_dir or self.settings.fixture_dir)
        if not directory.is_dir():
            raise FileNotFoundError(f"fixture directory not found: {directory}")

        outcomes: List[FixtureOutcome] = []
        with self.obs.trace("run_fixtures") as span:
            for name, proof in fixture_suite().items():
                outcomes.append(self._outcome(name, proof))
            for path in sorted(directory.glob("*.proof")):
                try:
                    proof = load_proof(path.read_text(encoding="utf-8"))
                except ProofFormatError as e:
                    outcomes.append(FixtureOutcome(name=path.name, ok=False, reason=str(e)))
                    continue
                outcomes.append(self._outcome(path.name, proof))
            span.set_attribute("failed", sum(1 for o in outcomes if not o.ok))

        self.session.add_event("proof_checker", "fixtures", {"total": len(outcomes)})
        return outcomes

    # ─── consistency ─────────────────────────────────────────────────────

    def extend(self, seed: Sequence[Formula], variables: Sequence[str], depth: int) -> FragmentExtension:
        with self.obs.trace("extend") as span:
            fragment = enumerate_fragment(variables, depth)
            span.set_attribute("fragment", len(fragment.formulas))
            ext = self.lab.lindenbaum_extend(seed, fragment)
        self.session.add_event("consistency_lab", "extend", {"accepted": len(ext.accepted)})
        return ext

    def get_metrics(self) -> Dict[str, Any]:
        return {
            "workbench": self.obs.get_metrics(),
            "decision_engine": self.engine.get_metrics(),
            "proof_checker": self.checker.obs.get_metrics(),
            "consistency_lab": self.lab.get_metrics(),
            "memory": self.memory.stats(),
            "session_events": len(self.session.history),
        }


"""
Consistency Lab - finite consistency, bounded Lindenbaum extension and
maximality audits over enumerated fragments.

Consistency is decided semantically: a finite set is consistent iff the
strong conjunction of its members takes a positive value somewhere, which by
soundness and completeness coincides with ⊬ ¬(φ1 & ⋯ & φn).
"""

import json
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from engines.decision_engine import DecisionEngine
from models.schemas import (
    AuditReport, ConsistencyVerdict, ExtensionLemmaReport, Fragment, FragmentExtension,
    HalfSeedReport, ProbeEntry, ProbeReport, TraceStep,
)
from tools.errors import (
    CanonicalValuationError, FormulaSyntaxError, InconsistentSeedError, TraceFormatError, ValuationError,
)
from tools.formula import Formula, Implies, Not, Prop, StrongConj, conjunction, power, size
from tools.memory_bank import MemoryBank
from tools.observability import ObservabilityLayer
from tools.parser import format_formula, parse
from tools.semantics import HALF, ONE, ZERO, Valuation, evaluate

logger = logging.getLogger(__name__)

CONSISTENCY_NOTE = (
    "consistency decided semantically: positive satisfiability of the strong conjunction"
)


def enumerate_fragment(variables: Sequence[str], depth: int) -> Fragment:
    """
    All formulas over `variables` with at most `depth` connectives (¬, &, →),
    ordered by size and then by printed form. Closed under subformulas.
    """
    if depth < 0:
        raise ValueError(f"fragment depth must be >= 0, got {depth}")
    names = sorted(set(variables))
    levels: List[List[Formula]] = [[Prop(n) for n in names]]
    for k in range(1, depth + 1):
        level: List[Formula] = [Not(f) for f in levels[k - 1]]
        for i in range(k):
            for a in levels[i]:
                for b in levels[k - 1 - i]:
                    level.append(StrongConj(a, b))
                    level.append(Implies(a, b))
        levels.append(level)
    formulas = sorted((f for level in levels for f in level), key=lambda f: (size(f), format_formula(f)))
    return Fragment(variables=names, depth=depth, formulas=formulas)


def canonical_valuation(ext: FragmentExtension) -> Valuation:
    """p ↦ 1 if p accepted, 0 if ¬p accepted, 1/2 otherwise."""
    accepted = set(ext.accepted)
    values = {}
    for name in ext.fragment.variables:
        p = Prop(name)
        if p in accepted and Not(p) in accepted:
            raise CanonicalValuationError(f"both {name} and !{name} accepted")
        values[name] = ONE if p in accepted else ZERO if Not(p) in accepted else HALF
    return Valuation(values)


def _case(f: Formula) -> str:
    if isinstance(f, Not):
        return "negation"
    if isinstance(f, StrongConj):
        return "conjunction"
    if isinstance(f, Implies):
        return "implication"
    return "atom"


class ConsistencyLab:
    """
    Runs consistency decisions, extensions and audits against a shared
    decision engine so repeated conjunction queries hit its cache.
    """

    def __init__(self, engine: Optional[DecisionEngine] = None, memory: Optional[MemoryBank] = None):
        self.engine = engine or DecisionEngine(memory)
        self.obs = ObservabilityLayer(service_name="consistency_lab")

    def is_consistent(self, gamma: Sequence[Formula]) -> ConsistencyVerdict:
        members = list(dict.fromkeys(gamma))
        if not members:
            return ConsistencyVerdict(consistent=True, witness=Valuation(), value=ONE)
        verdict = self.engine.positively_satisfiable(conjunction(members))
        if verdict.affirmative:
            return ConsistencyVerdict(consistent=True, witness=verdict.witness, value=verdict.value)
        return ConsistencyVerdict(consistent=False)

    # ─── extension ───────────────────────────────────────────────────────

    def lindenbaum_extend(self, seed: Sequence[Formula], fragment: Fragment) -> FragmentExtension:
        """
        Walk the fragment in order, keeping each formula whose addition leaves
        the accepted set consistent. Rejections that become consistently
        addable by the end are listed in `gaps`.
        """
        seed = list(dict.fromkeys(seed))
        if not self.is_consistent(seed).consistent:
            raise InconsistentSeedError(
                f"seed is inconsistent: {', '.join(format_formula(f) for f in seed)}"
            )

        with self.obs.trace("lindenbaum_extend") as span:
            accepted = list(seed)
            members = set(seed)
            trace: List[TraceStep] = []
            for index, f in enumerate(fragment.formulas, start=1):
                if f in members:
                    trace.append(TraceStep(index=index, formula=f, accepted=True, reason="seed"))
                    continue
                verdict = self.is_consistent(accepted + [f])
                if verdict.consistent:
                    accepted.append(f)
                    members.add(f)
                    trace.append(TraceStep(
                        index=index, formula=f, accepted=True, reason="consistent",
                        witness=verdict.witness, value=verdict.value,
                    ))
                else:
                    trace.append(TraceStep(index=index, formula=f, accepted=False, reason="inconsistent"))

            gaps = [
                step.formula for step in trace
                if not step.accepted and self.is_consistent(accepted + [step.formula]).consistent
            ]
            span.set_attribute("accepted", len(accepted))
            span.set_attribute("gaps", len(gaps))

        if gaps:
            logger.warning(f"Extension is not fragment-maximal: {[format_formula(g) for g in gaps]}")
        logger.info(f"Extended seed of {len(seed)} to {len(accepted)} of {len(fragment.formulas)} fragment formulas")
        return FragmentExtension(seed=seed, fragment=fragment, accepted=accepted, trace=trace, gaps=gaps)

    # ─── audits ──────────────────────────────────────────────────────────

    def _holds_in(self, ext: FragmentExtension, g: Formula, in_fragment: set, accepted: set) -> bool:
        """Membership for fragment formulas; consistent addability outside it."""
        if g in in_fragment:
            return g in accepted
        return self.is_consistent(list(ext.accepted) + [g]).consistent

    def audit_maximality(self, ext: FragmentExtension, n_max: int = 8) -> AuditReport:
        accepted = set(ext.accepted)
        in_fragment = set(ext.fragment.formulas)
        report = AuditReport(n_max=n_max)

        with self.obs.trace("audit_maximality") as span:
            for f in ext.fragment.formulas:
                text = format_formula(f)

                if isinstance(f, StrongConj) and f.left in in_fragment and f.right in in_fragment:
                    both = f.left in accepted and f.right in accepted
                    if (f in accepted) != both:
                        state = "accepted" if f in accepted else "rejected"
                        report.conjunction_violations.append(
                            f"{text}: {state}, conjuncts accepted={f.left in accepted},{f.right in accepted}"
                        )

                if (isinstance(f, Implies) and f in accepted and f.left in accepted
                        and f.right in in_fragment and f.right not in accepted):
                    report.mp_violations.append(f"{text}: antecedent accepted, consequent rejected")

                if f not in accepted and self.engine.entails(ext.accepted, f):
                    report.closure_violations.append(f"{text}: entailed by the accepted set, not accepted")

                for k in range(1, n_max + 1):
                    g = power(f, k)
                    if self._holds_in(ext, g, in_fragment, accepted) or self._holds_in(ext, Not(g), in_fragment, accepted):
                        report.power_witnesses[text] = k
                        break
                else:
                    report.power_undecided.append(text)

            span.set_attribute("violations", report.total_violations)
        return report

    def probe_truth_lemma(self, ext: FragmentExtension) -> ProbeReport:
        """Compare the canonical three-valued valuation with membership; reports, never asserts."""
        v = canonical_valuation(ext)
        accepted = set(ext.accepted)
        in_fragment = set(ext.fragment.formulas)
        entries: List[ProbeEntry] = []
        summary: Dict[str, Dict[str, int]] = {}
        for f in ext.fragment.formulas:
            value = evaluate(f, v)
            is_in = f in accepted
            neg_in = self._holds_in(ext, Not(f), in_fragment, accepted)
            entry = ProbeEntry(
                formula=f,
                case=_case(f),
                value=value,
                accepted=is_in,
                negation_accepted=neg_in,
                one_holds=(value == ONE) == is_in,
                zero_holds=(value == ZERO) == neg_in,
                half_holds=(value == HALF) == (not is_in and not neg_in),
            )
            entries.append(entry)
            counts = summary.setdefault(entry.case, {"hold": 0, "fail": 0})
            counts["hold" if entry.all_hold else "fail"] += 1
        return ProbeReport(valuation=v, entries=entries, summary=summary)

    def check_extension_lemma(self, phi: Sequence[Formula], target: Formula) -> ExtensionLemmaReport:
        """If some V gives all of phi value 1 and target less, phi ∪ {¬target} must be consistent."""
        low = self.engine.entailment_min(list(phi), target)
        if low is None or low.value == ONE:
            return ExtensionLemmaReport(premise_holds=False, outcome="premise not met")
        extension = self.is_consistent(list(phi) + [Not(target)])
        outcome = "extension consistent" if extension.consistent else "premise holds but extension inconsistent"
        if not extension.consistent:
            logger.error(f"Extension check failed for target {format_formula(target)}")
        return ExtensionLemmaReport(
            premise_holds=True,
            witness=low.witness,
            target_value=low.value,
            extension=extension,
            outcome=outcome,
        )

    def half_seed_report(self, depth: int = 2) -> HalfSeedReport:
        """Extend {p & p, ¬(¬p & ¬p)} and record whether p or ¬p ends up accepted."""
        p = Prop("p")
        seed = [StrongConj(p, p), Not(StrongConj(Not(p), Not(p)))]
        ext = self.lindenbaum_extend(seed, enumerate_fragment(["p"], depth))
        accepted = set(ext.accepted)
        return HalfSeedReport(
            seed=seed,
            atom="p",
            atom_accepted=p in accepted,
            negation_accepted=Not(p) in accepted,
            accepted=ext.accepted,
        )

    def get_metrics(self):
        return self.obs.get_metrics()


# ─── JSON-lines traces ───────────────────────────────────────────────────────

def dump_trace(ext: FragmentExtension, n_max: int) -> str:
    header = {
        "kind": "header",
        "seed": [format_formula(f) for f in ext.seed],
        "vars": ext.fragment.variables,
        "depth": ext.fragment.depth,
        "nmax": n_max,
    }
    lines = [json.dumps(header, sort_keys=True)]
    for step in ext.trace:
        record = {"kind": "step", **step.model_dump(mode="json", exclude_none=True)}
        lines.append(json.dumps(record, sort_keys=True))
    return "\n".join(lines) + "\n"


def load_trace(text: str) -> Tuple[FragmentExtension, int]:
    """Rebuild the extension (and its audit bound) from a trace written by dump_trace."""
    header = None
    steps: List[TraceStep] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
            kind = record.pop("kind", None)
            if kind == "header":
                header = record
            elif kind == "step":
                steps.append(TraceStep(**record))
            else:
                raise TraceFormatError(f"unknown record kind {kind!r}", line_no)
        except (json.JSONDecodeError, ValidationError, AttributeError, FormulaSyntaxError, ValuationError) as e:
            raise TraceFormatError(str(e).splitlines()[0], line_no) from None
    if header is None:
        raise TraceFormatError("missing header record")

    try:
        seed = [parse(s) for s in header["seed"]]
        fragment = Fragment(variables=header["vars"], depth=header["depth"], formulas=[s.formula for s in steps])
        n_max = int(header.get("nmax", 8))
    except (KeyError, TypeError, ValueError, ValidationError, FormulaSyntaxError) as e:
        raise TraceFormatError(f"bad header: {e}") from None
    accepted = list(seed)
    for step in steps:
        if step.accepted and step.formula not in accepted:
            accepted.append(step.formula)
    return FragmentExtension(seed=seed, fragment=fragment, accepted=accepted, trace=steps), n_max

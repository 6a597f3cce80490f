"""
Proof Checker - Hilbert-style proofs for Łukasiewicz logic.

The system has the BL axioms A1-A7, the Łukasiewicz axioms L1-L4, the double
negation axiom DNE and modus ponens as its only rule. Derived schemes L5-L15
(and the ↔-projection and self-implication helpers) may be cited as lemma
lines; the checker accepts them syntactically and reports them as cited, and
verify_registry() establishes their validity with the decision engine.

Proof file format (UTF-8, 1-based line numbers):

    hyp: <formula>
    <k>. <formula> ; axiom <ID> [name:=<formula>, ...]
    <k>. <formula> ; lemma <ID> [name:=<formula>, ...]
    <k>. <formula> ; hyp
    <k>. <formula> ; mp <i>,<j>        # i = premise X, j = X -> this line
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

from models.schemas import CheckResult, RegistryEntry, RegistryReport
from tools.errors import FormulaSyntaxError, ProofFormatError, SchemeError, TemplateError
from tools.formula import (
    BOTTOM, Binding, Formula, FormulaTemplate, Implies, Metavar, Not, Prop, StrongConj,
    equiv, instantiate, match_template, metavars, strong_disj,
)
from tools.observability import ObservabilityLayer
from tools.parser import format_formula, parse

logger = logging.getLogger(__name__)


class SchemeKind(str, Enum):
    AXIOM = "axiom"
    LEMMA = "lemma"


class SchemeId(str, Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    DNE = "DNE"
    L5 = "L5"
    L6 = "L6"
    L7 = "L7"
    L8 = "L8"
    L9 = "L9"
    L10 = "L10"
    L11 = "L11"
    L12 = "L12"
    L13 = "L13"
    L14 = "L14"
    L15 = "L15"
    IFF_ELIM_L = "IFF-ELIM-L"
    IFF_ELIM_R = "IFF-ELIM-R"
    SELF_IMP = "SELF-IMP"


phi, psi, chi = Metavar("phi"), Metavar("psi"), Metavar("chi")
phi1, phi2, psi1, psi2 = Metavar("phi1"), Metavar("phi2"), Metavar("psi1"), Metavar("psi2")

_imp = Implies
_and = StrongConj

REGISTRY: Dict[SchemeId, FormulaTemplate] = {
    SchemeId.A1: _imp(_imp(phi, psi), _imp(_imp(psi, chi), _imp(phi, chi))),
    SchemeId.A2: _imp(_and(phi, psi), phi),
    SchemeId.A3: _imp(_and(phi, psi), _and(psi, phi)),
    SchemeId.A4: _imp(_and(phi, _imp(phi, psi)), _and(psi, _imp(psi, phi))),
    SchemeId.A5: equiv(_imp(phi, _imp(psi, chi)), _imp(_and(phi, psi), chi)),
    SchemeId.A6: _imp(_imp(_imp(phi, psi), chi), _imp(_imp(_imp(psi, phi), chi), chi)),
    SchemeId.A7: _imp(BOTTOM, phi),
    SchemeId.L1: _imp(phi, _imp(psi, phi)),
    SchemeId.L2: _imp(_imp(phi, psi), _imp(_imp(psi, chi), _imp(phi, chi))),
    SchemeId.L3: _imp(_imp(Not(phi), Not(psi)), _imp(psi, phi)),
    SchemeId.L4: _imp(_imp(_imp(phi, psi), psi), _imp(_imp(psi, phi), phi)),
    SchemeId.DNE: _imp(Not(Not(phi)), phi),
    SchemeId.L5: equiv(Not(_and(phi, psi)), strong_disj(Not(phi), Not(psi))),
    SchemeId.L6: equiv(Not(strong_disj(phi, psi)), _and(Not(phi), Not(psi))),
    SchemeId.L7: equiv(strong_disj(phi, psi), _imp(Not(phi), psi)),
    SchemeId.L8: equiv(Not(Not(phi)), phi),
    SchemeId.L9: equiv(_imp(phi, BOTTOM), Not(phi)),
    SchemeId.L10: _imp(_and(phi, _imp(phi, psi)), psi),
    SchemeId.L11: _imp(_and(_imp(phi1, psi1), _imp(phi2, psi2)), _imp(_and(phi1, phi2), _and(psi1, psi2))),
    SchemeId.L12: _imp(phi, strong_disj(phi, psi)),
    SchemeId.L13: _imp(equiv(phi, psi), equiv(_imp(phi, chi), _imp(psi, chi))),
    SchemeId.L14: _imp(equiv(phi, psi), equiv(_imp(chi, phi), _imp(chi, psi))),
    SchemeId.L15: _imp(equiv(phi, psi), equiv(_and(phi, chi), _and(psi, chi))),
    SchemeId.IFF_ELIM_L: _imp(equiv(phi, psi), _imp(phi, psi)),
    SchemeId.IFF_ELIM_R: _imp(equiv(phi, psi), _imp(psi, phi)),
    SchemeId.SELF_IMP: _imp(phi, phi),
}

AXIOMS = frozenset({
    SchemeId.A1, SchemeId.A2, SchemeId.A3, SchemeId.A4, SchemeId.A5, SchemeId.A6, SchemeId.A7,
    SchemeId.L1, SchemeId.L2, SchemeId.L3, SchemeId.L4, SchemeId.DNE,
})


def scheme_kind(scheme_id: SchemeId) -> SchemeKind:
    return SchemeKind.AXIOM if scheme_id in AXIOMS else SchemeKind.LEMMA


def lookup_scheme(name: str) -> SchemeId:
    try:
        return SchemeId(name)
    except ValueError:
        raise SchemeError(f"unknown scheme id: {name}") from None


# ─── Proof objects ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class SchemeRef:
    kind: SchemeKind
    scheme: str
    binding: Dict[str, Formula] = field(default_factory=dict, hash=False)


@dataclass(frozen=True)
class MP:
    premise: int
    implication: int


Justification = Union[Hyp, SchemeRef, MP]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass
class Proof:
    hypotheses: List[Formula] = field(default_factory=list)
    lines: List[ProofLine] = field(default_factory=list)

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None


# ─── Checking ────────────────────────────────────────────────────────────────

def check_line(proof: Proof, k: int) -> Optional[str]:
    """Reason the 1-based line k is invalid, or None when it checks."""
    line = proof.lines[k - 1]
    just = line.justification
    if isinstance(just, Hyp):
        if line.formula not in proof.hypotheses:
            return "hypothesis not among the stated hypotheses"
        return None
    if isinstance(just, SchemeRef):
        try:
            scheme = lookup_scheme(just.scheme)
        except SchemeError as e:
            return str(e)
        if scheme_kind(scheme) is not just.kind:
            return f"{just.scheme} is registered as {scheme_kind(scheme).value}, cited as {just.kind.value}"
        template = REGISTRY[scheme]
        if just.binding:
            try:
                expected = instantiate(template, just.binding)
            except TemplateError as e:
                return str(e)
            if expected != line.formula:
                return f"formula is not the {just.scheme} instance for the stated binding"
        if match_template(template, line.formula) is None:
            return f"formula does not match scheme {just.scheme}"
        return None
    if isinstance(just, MP):
        for ref in (just.premise, just.implication):
            if not 1 <= ref < k:
                return f"mp cites line {ref}, which is not an earlier line"
        premise = proof.lines[just.premise - 1].formula
        implication = proof.lines[just.implication - 1].formula
        if not isinstance(implication, Implies):
            return f"line {just.implication} is not an implication"
        if implication.right != line.formula:
            return f"line {just.implication} does not conclude this line"
        if implication.left != premise:
            return f"line {just.premise} is not the antecedent of line {just.implication}"
        return None
    return f"unknown justification {just!r}"


def check_proof(proof: Proof) -> CheckResult:
    """Validate every line; the first failing line is reported."""
    if not proof.lines:
        return CheckResult(ok=False, reason="empty proof")
    cited: List[str] = []
    for k in range(1, len(proof.lines) + 1):
        reason = check_line(proof, k)
        if reason is not None:
            logger.debug(f"Proof rejected at line {k}: {reason}")
            return CheckResult(ok=False, line=k, reason=reason)
        just = proof.lines[k - 1].justification
        if isinstance(just, SchemeRef) and just.kind is SchemeKind.LEMMA:
            cited.append(f"{k}:{just.scheme}")
    return CheckResult(ok=True, conclusion=proof.conclusion, cited=cited)


class ProofChecker:
    """Checker plus the semantic cross-checks that need a decision engine."""

    def __init__(self, engine):
        self.engine = engine
        self.obs = ObservabilityLayer(service_name="proof_checker")

    def check(self, proof: Proof) -> CheckResult:
        with self.obs.trace("check_proof") as span:
            span.set_attribute("lines", len(proof.lines))
            result = check_proof(proof)
            span.set_attribute("ok", result.ok)
            return result

    def hypothesis_sound(self, proof: Proof) -> bool:
        """Every valuation giving all hypotheses value 1 gives the conclusion value 1."""
        with self.obs.trace("hypothesis_soundness"):
            return self.engine.entails(proof.hypotheses, proof.conclusion)

    def verify_registry(self) -> RegistryReport:
        """Instantiate each scheme with distinct fresh propositions and decide it."""
        report = RegistryReport()
        with self.obs.trace("verify_registry") as span:
            for scheme, template in REGISTRY.items():
                instance = instantiate(template, fresh_binding(template))
                verdict = self.engine.is_tautology(instance)
                report.entries.append(RegistryEntry(
                    scheme_id=scheme.value,
                    kind=scheme_kind(scheme).value,
                    instance=instance,
                    verdict=verdict.render(),
                    ok=verdict.affirmative,
                ))
            span.set_attribute("failures", len(report.failures))
        if report.failures:
            logger.warning(f"Registry schemes failed validation: {[e.scheme_id for e in report.failures]}")
        return report


FRESH_NAMES = ("p", "q", "r", "s", "t", "u")


def fresh_binding(template: FormulaTemplate, names: Sequence[str] = FRESH_NAMES) -> Binding:
    return {m: Prop(n) for m, n in zip(sorted(metavars(template)), names)}


# ─── Proof files ─────────────────────────────────────────────────────────────

_LINE = re.compile(r"^\s*(\d+)\.\s*(.*)$")
_SCHEME = re.compile(r"^(axiom|lemma)\s+([A-Za-z0-9\-]+)\s*(?:\[(.*)\])?\s*$")
_MP = re.compile(r"^mp\s+(\d+)\s*,\s*(\d+)\s*$")


def load_proof(text: str) -> Proof:
    """Read the line-oriented proof format; `#` starts a comment line."""
    proof = Proof()
    expected = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            if stripped.startswith("hyp:"):
                proof.hypotheses.append(parse(stripped[4:]))
                continue
            m = _LINE.match(stripped)
            if not m:
                raise ProofFormatError("expected `hyp:` or a numbered line", line_no)
            if int(m.group(1)) != expected:
                raise ProofFormatError(f"expected line number {expected}, found {m.group(1)}", line_no)
            body, sep, just_text = m.group(2).rpartition(";")
            if not sep:
                raise ProofFormatError("missing `; justification`", line_no)
            proof.lines.append(ProofLine(parse(body), _parse_justification(just_text.strip(), line_no)))
            expected += 1
        except FormulaSyntaxError as e:
            raise ProofFormatError(str(e), line_no) from None
    return proof


def _parse_justification(text: str, line_no: int) -> Justification:
    if text == "hyp":
        return Hyp()
    m = _MP.match(text)
    if m:
        return MP(int(m.group(1)), int(m.group(2)))
    m = _SCHEME.match(text)
    if m:
        binding: Dict[str, Formula] = {}
        for item in filter(None, (s.strip() for s in (m.group(3) or "").split(","))):
            name, sep, formula = item.partition(":=")
            if not sep:
                raise ProofFormatError(f"binding {item!r} is not name:=formula", line_no)
            binding[name.strip()] = parse(formula)
        return SchemeRef(SchemeKind(m.group(1)), m.group(2), binding)
    raise ProofFormatError(f"unknown justification {text!r}", line_no)


def dump_proof(proof: Proof) -> str:
    out = [f"hyp: {format_formula(h)}" for h in proof.hypotheses]
    for k, line in enumerate(proof.lines, start=1):
        just = line.justification
        if isinstance(just, Hyp):
            tail = "hyp"
        elif isinstance(just, MP):
            tail = f"mp {just.premise},{just.implication}"
        else:
            binding = ", ".join(f"{k2}:={format_formula(v)}" for k2, v in sorted(just.binding.items()))
            tail = f"{just.kind.value} {just.scheme} [{binding}]"
        out.append(f"{k}. {format_formula(line.formula)} ; {tail}")
    return "\n".join(out) + "\n"

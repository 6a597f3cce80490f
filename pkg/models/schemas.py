from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Optional

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PlainSerializer, model_validator

from tools.formula import _Node
from tools.parser import format_formula, parse
from tools.semantics import ONE, Valuation, evaluate, format_rational


def _as_formula(value: Any) -> Any:
    if isinstance(value, str):
        return parse(value)
    if not isinstance(value, _Node):
        raise ValueError(f"not a formula: {value!r}")
    return value


def _as_valuation(value: Any) -> Valuation:
    if isinstance(value, Valuation):
        return value
    if isinstance(value, str):
        return Valuation.parse(value)
    return Valuation(value)


FormulaField = Annotated[Any, AfterValidator(_as_formula), PlainSerializer(format_formula, return_type=str)]
Rational = Annotated[Any, AfterValidator(Fraction), PlainSerializer(format_rational, return_type=str)]
ValuationField = Annotated[Any, AfterValidator(_as_valuation), PlainSerializer(str, return_type=str)]


def _render_valuation(v: Optional[Valuation]) -> str:
    text = str(v) if v is not None else ""
    return text or "(empty)"


class VerdictKind(str, Enum):
    TAUTOLOGY      = "TAUT"
    COUNTEREXAMPLE = "CEX"
    SATISFIABLE    = "SAT"
    UNSATISFIABLE  = "UNSAT"


class Verdict(BaseModel):
    formula: FormulaField
    kind:    VerdictKind
    value:   Optional[Rational] = None
    witness: Optional[ValuationField] = None

    @model_validator(mode="after")
    def witness_reevaluates(self) -> "Verdict":
        if self.kind is VerdictKind.TAUTOLOGY and self.value is not None and self.value != ONE:
            raise ValueError("a tautology verdict carries value 1")
        if self.witness is not None and self.value is not None:
            actual = evaluate(self.formula, self.witness)
            if actual != self.value:
                raise ValueError(f"witness evaluates to {actual}, verdict carries {self.value}")
        return self

    @property
    def affirmative(self) -> bool:
        return self.kind in (VerdictKind.TAUTOLOGY, VerdictKind.SATISFIABLE)

    def render(self) -> str:
        if self.kind in (VerdictKind.TAUTOLOGY, VerdictKind.UNSATISFIABLE):
            return self.kind.value
        return f"{self.kind.value} value={format_rational(self.value)} at {_render_valuation(self.witness)}"


class OptimumResult(BaseModel):
    formula: FormulaField
    value:   Rational
    witness: ValuationField
    maximum: bool = False

    @model_validator(mode="after")
    def witness_reevaluates(self) -> "OptimumResult":
        if evaluate(self.formula, self.witness) != self.value:
            raise ValueError("optimum witness does not re-evaluate to the optimum")
        return self

    def render(self) -> str:
        label = "max" if self.maximum else "min"
        return f"{label}={format_rational(self.value)} at {_render_valuation(self.witness)}"


class ConsistencyVerdict(BaseModel):
    """Consistency is decided semantically: positive satisfiability of the conjunction."""
    consistent: bool
    witness:    Optional[ValuationField] = None
    value:      Optional[Rational] = None

    @model_validator(mode="after")
    def witness_positive(self) -> "ConsistencyVerdict":
        if self.consistent and (self.value is None or self.value <= 0):
            raise ValueError("a consistent verdict carries a witness value > 0")
        return self

    def render(self) -> str:
        if not self.consistent:
            return "INCONSISTENT"
        return f"CONSISTENT value={format_rational(self.value)} at {_render_valuation(self.witness)}"


class CheckResult(BaseModel):
    ok:         bool
    conclusion: Optional[FormulaField] = None
    line:       Optional[int] = Field(None, ge=1)
    reason:     str = ""
    cited:      List[str] = Field(default_factory=list)

    def render(self) -> str:
        if self.ok:
            cited = f" (cited: {', '.join(self.cited)})" if self.cited else ""
            return f"OK {format_formula(self.conclusion)}{cited}"
        return f"FAIL line {self.line}: {self.reason}"


class RegistryEntry(BaseModel):
    scheme_id: str
    kind:      str
    instance:  FormulaField
    verdict:   str
    ok:        bool


class RegistryReport(BaseModel):
    entries: List[RegistryEntry] = Field(default_factory=list)

    @property
    def failures(self) -> List[RegistryEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.failures


class FixtureOutcome(BaseModel):
    name:              str
    ok:                bool
    conclusion:        Optional[FormulaField] = None
    reason:            str = ""
    hypothesis_sound:  Optional[bool] = None


class TraceStep(BaseModel):
    index:    int = Field(..., ge=1)
    formula:  FormulaField
    accepted: bool
    reason:   str = ""
    witness:  Optional[ValuationField] = None
    value:    Optional[Rational] = None


class Fragment(BaseModel):
    variables: List[str]
    depth:     int = Field(..., ge=0)
    formulas:  List[FormulaField] = Field(default_factory=list)


class FragmentExtension(BaseModel):
    seed:     List[FormulaField]
    fragment: Fragment
    accepted: List[FormulaField] = Field(default_factory=list)
    trace:    List[TraceStep] = Field(default_factory=list)
    gaps:     List[FormulaField] = Field(default_factory=list)

    @model_validator(mode="after")
    def accepted_contains_seed(self) -> "FragmentExtension":
        missing = [f for f in self.seed if f not in self.accepted]
        if missing:
            raise ValueError(f"accepted set lost seed formulas: {[format_formula(f) for f in missing]}")
        return self


class AuditReport(BaseModel):
    n_max:                  int
    conjunction_violations: List[str] = Field(default_factory=list)
    mp_violations:          List[str] = Field(default_factory=list)
    closure_violations:     List[str] = Field(default_factory=list)
    power_witnesses:        Dict[str, int] = Field(default_factory=dict)
    power_undecided:        List[str] = Field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return len(self.conjunction_violations) + len(self.mp_violations) + len(self.closure_violations)


class ProbeEntry(BaseModel):
    formula:           FormulaField
    case:              str
    value:             Rational
    accepted:          bool
    negation_accepted: bool
    one_holds:         bool
    zero_holds:        bool
    half_holds:        bool

    @property
    def all_hold(self) -> bool:
        return self.one_holds and self.zero_holds and self.half_holds


class ProbeReport(BaseModel):
    valuation: ValuationField
    entries:   List[ProbeEntry] = Field(default_factory=list)
    summary:   Dict[str, Dict[str, int]] = Field(default_factory=dict)


class ExtensionLemmaReport(BaseModel):
    premise_holds:  bool
    witness:        Optional[ValuationField] = None
    target_value:   Optional[Rational] = None
    extension:      Optional[ConsistencyVerdict] = None
    outcome:        str

    model_config = ConfigDict(frozen=True)


class HalfSeedReport(BaseModel):
    """Which of an atom and its negation a bounded extension of the seed accepts."""
    seed:              List[FormulaField]
    atom:              str
    atom_accepted:     bool
    negation_accepted: bool
    accepted:          List[FormulaField] = Field(default_factory=list)

    def render(self) -> str:
        if self.atom_accepted:
            decided = f"{self.atom} accepted"
        elif self.negation_accepted:
            decided = f"!{self.atom} accepted"
        else:
            decided = f"neither {self.atom} nor !{self.atom} accepted"
        return f"seed {{{', '.join(format_formula(f) for f in self.seed)}}}: {decided}"

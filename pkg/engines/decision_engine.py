"""
Decision Engine - exact tautology, satisfiability and optimum decisions.

Each & and -> splits the piecewise-linear truth function into two affine
regimes; ¬ is affine and adds no split. A regime whose constraint set
has an empty interior is pruned before descending: the truth function is
continuous, so the closures of the full-dimensional regions still cover the
cube. Every region carries the 0 <= x <= 1 box for its variables, so regions
are closed polytopes and optima are attained at exact rational points.
A split whose expression is constant keeps only the regime that holds, and
regions are kept once each in canonical form, so the count tracks the cells of
the breakpoint arrangement rather than the number of connectives.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

from models.schemas import OptimumResult, Verdict, VerdictKind
from tools.formula import Bottom, Formula, Implies, Not, Prop, StrongConj, sorted_variables
from tools.linear import (
    Constraint, LinExpr, Relation, box_constraints, lp_feasible, lp_minimize, prune_redundant, simplify,
)
from tools.memory_bank import MemoryBank
from tools.observability import ObservabilityLayer
from tools.parser import format_formula
from tools.semantics import ONE, ZERO, Valuation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Region:
    """Within the feasible set of `constraints`, the formula's value equals `value`."""
    constraints: Tuple[Constraint, ...]
    value: LinExpr

    def contains(self, v) -> bool:
        return all(c.holds(v) for c in self.constraints)


def _feasible(cs: Sequence[Constraint]) -> bool:
    return lp_feasible(cs) is not None


def _full_dimensional(cs: Sequence[Constraint]) -> bool:
    """Non-empty interior: the system with every non-constant inequality made strict is feasible."""
    strict = [
        Constraint.gt(c.expr) if c.relation is Relation.GE and not c.expr.is_constant() else c
        for c in cs
    ]
    return lp_feasible(strict) is not None


def _region(cs: Sequence[Constraint], value: LinExpr) -> Region:
    """Canonical form: redundant inequalities dropped, constraints in a fixed order."""
    names = {k for c in cs for k, _ in c.expr.terms}
    if len(cs) > 2 * len(names) + 2:
        cs = prune_redundant(cs)
    return Region(tuple(sorted(cs, key=str)), value)


def _regimes(f: Formula, left: LinExpr, right: LinExpr) -> List[Tuple[Constraint, LinExpr]]:
    if isinstance(f, StrongConj):
        # max{0, a + b - 1}
        split = left + right - LinExpr.const(1)
        regimes = [(Constraint.ge(split), split), (Constraint.ge(-split), LinExpr.const(0))]
    else:
        # min{1, 1 - a + b}
        split = left - right
        regimes = [(Constraint.ge(split), LinExpr.const(1) - split), (Constraint.ge(-split), LinExpr.const(1))]
    if split.is_constant():
        return regimes[:1] if split.constant >= 0 else regimes[1:]
    return regimes


def linearize(f: Formula, memory: Optional[MemoryBank] = None) -> List[Region]:
    """Cover [0,1]^vars by distinct closed regions on which f is affine."""
    if memory is not None:
        cached = memory.get("regions", f)
        if cached is not None:
            return cached
    if isinstance(f, Prop):
        out = [Region(tuple(box_constraints([f.name])), LinExpr.var(f.name))]
    elif isinstance(f, Bottom):
        out = [Region((), LinExpr.const(0))]
    elif isinstance(f, Not):
        out = [Region(r.constraints, LinExpr.const(1) - r.value) for r in linearize(f.sub, memory)]
    elif isinstance(f, (StrongConj, Implies)):
        out = []
        seen: Set[Region] = set()
        rights = linearize(f.right, memory)
        for left in linearize(f.left, memory):
            for right in rights:
                base = left.constraints + right.constraints
                for split, value in _regimes(f, left.value, right.value):
                    cs = simplify(base + (split,))
                    if cs is None or not _full_dimensional(cs):
                        continue
                    region = _region(cs, value)
                    if region not in seen:
                        seen.add(region)
                        out.append(region)
    else:
        raise TypeError(f"not a formula: {f!r}")
    if memory is not None:
        memory.set("regions", f, out)
    return out


class DecisionEngine:
    """
    Complete decision procedure for Ł∞: minimum and maximum truth value,
    tautology, satisfiability at 1 and positive satisfiability.
    Results are cached per printed formula in the shared MemoryBank.
    """

    def __init__(self, memory: Optional[MemoryBank] = None):
        self.memory = memory or MemoryBank()
        self.obs = ObservabilityLayer(service_name="decision_engine")

    # ─── optima ──────────────────────────────────────────────────────────

    def min_value(self, f: Formula) -> OptimumResult:
        return self._optimum(f, maximum=False)

    def max_value(self, f: Formula) -> OptimumResult:
        return self._optimum(f, maximum=True)

    def _optimum(self, f: Formula, maximum: bool) -> OptimumResult:
        namespace = "max" if maximum else "min"
        key = format_formula(f)
        cached = self.memory.get(namespace, key)
        if cached is not None:
            return cached

        with self.obs.trace(f"{namespace}_value") as span:
            regions = linearize(f, self.memory)
            span.set_attribute("regions", len(regions))
            best: Optional[Tuple[Fraction, dict]] = None
            for region in regions:
                objective = -region.value if maximum else region.value
                found = lp_minimize(objective, region.constraints)
                if found is None:
                    continue
                value, witness = found
                if best is None or value < best[0]:
                    best = (value, witness)
            if best is None:
                raise RuntimeError(f"no feasible region for {key}")
            value = -best[0] if maximum else best[0]
            result = OptimumResult(formula=f, value=value, witness=Valuation(best[1]), maximum=maximum)
            span.set_attribute("value", str(value))

        self.memory.set(namespace, key, result)
        return result

    # ─── verdicts ────────────────────────────────────────────────────────

    def is_tautology(self, f: Formula) -> Verdict:
        """TAUT iff the minimum is exactly 1; otherwise the minimising counterexample."""
        low = self.min_value(f)
        if low.value == ONE:
            return Verdict(formula=f, kind=VerdictKind.TAUTOLOGY)
        return Verdict(formula=f, kind=VerdictKind.COUNTEREXAMPLE, value=low.value, witness=low.witness)

    def sat_at_one(self, f: Formula) -> Verdict:
        high = self.max_value(f)
        if high.value == ONE:
            return Verdict(formula=f, kind=VerdictKind.SATISFIABLE, value=ONE, witness=high.witness)
        return Verdict(formula=f, kind=VerdictKind.UNSATISFIABLE)

    def positively_satisfiable(self, f: Formula) -> Verdict:
        """Some valuation gives f a value > 0; the witness is a maximiser."""
        high = self.max_value(f)
        if high.value > ZERO:
            return Verdict(formula=f, kind=VerdictKind.SATISFIABLE, value=high.value, witness=high.witness)
        return Verdict(formula=f, kind=VerdictKind.UNSATISFIABLE)

    # ─── entailment ──────────────────────────────────────────────────────

    def models_of(self, hypotheses: Sequence[Formula]) -> List[Region]:
        """Closed regions covering exactly the valuations that give every hypothesis value 1."""
        key = tuple(dict.fromkeys(hypotheses))
        cached = self.memory.get("models", key)
        if cached is not None:
            return cached
        regions = [Region((), LinExpr.const(1))]
        for h in key:
            combined: List[Region] = []
            seen: Set[Region] = set()
            for r in regions:
                for s in linearize(h, self.memory):
                    cs = simplify(r.constraints + s.constraints + (Constraint.eq(s.value - LinExpr.const(1)),))
                    if cs is None or not _feasible(cs):
                        continue
                    region = _region(cs, r.value)
                    if region not in seen:
                        seen.add(region)
                        combined.append(region)
            regions = combined
            if not regions:
                break
        self.memory.set("models", key, regions)
        return regions

    def entailment_min(self, hypotheses: Sequence[Formula], f: Formula) -> Optional[OptimumResult]:
        """
        Minimum of f over the valuations that give every hypothesis value 1.
        None when no valuation satisfies all hypotheses.
        """
        with self.obs.trace("entailment_min") as span:
            models = self.models_of(hypotheses)
            span.set_attribute("regions", len(models))
            best: Optional[Tuple[Fraction, dict]] = None
            for model in models:
                for region in linearize(f, self.memory):
                    cs = simplify(model.constraints + region.constraints)
                    if cs is None:
                        continue
                    found = lp_minimize(region.value, cs)
                    if found is not None and (best is None or found[0] < best[0]):
                        best = found
        if best is None:
            return None
        point = {k: best[1].get(k, ZERO) for k in sorted_variables(list(hypotheses) + [f])}
        return OptimumResult(formula=f, value=best[0], witness=Valuation(point))

    def entails(self, hypotheses: Sequence[Formula], f: Formula) -> bool:
        """Every valuation giving all hypotheses value 1 gives f value 1."""
        low = self.entailment_min(hypotheses, f)
        return low is None or low.value == ONE

    def get_metrics(self):
        return self.obs.get_metrics()


_default_engine = DecisionEngine()


def min_value(f: Formula) -> OptimumResult:
    return _default_engine.min_value(f)


def max_value(f: Formula) -> OptimumResult:
    return _default_engine.max_value(f)


def is_tautology(f: Formula) -> Verdict:
    return _default_engine.is_tautology(f)


def sat_at_one(f: Formula) -> Verdict:
    return _default_engine.sat_at_one(f)


def positively_satisfiable(f: Formula) -> Verdict:
    return _default_engine.positively_satisfiable(f)

"""
Exact linear arithmetic over Fraction: affine expressions, constraints with
explicit strictness, and a Fourier-Motzkin core for feasibility and
minimisation.

Each round eliminates the variable that adds the fewest constraints, ties
broken by name. When a witness is read back, each variable takes its greatest
lower bound if that bound is non-strict, otherwise the midpoint of its bound
interval, which keeps witnesses reproducible run to run.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

OBJECTIVE = "$objective"


class Relation(str, Enum):
    GE = ">=0"
    GT = ">0"
    EQ = "=0"


@dataclass(frozen=True, init=False)
class LinExpr:
    """constant + Σ coefficient·variable, with zero coefficients dropped. Hashable."""
    constant: Fraction
    terms: Tuple[Tuple[str, Fraction], ...]

    def __init__(self, constant=Fraction(0), coefficients: Optional[Mapping[str, Fraction]] = None):
        cleaned = tuple((k, Fraction(v)) for k, v in sorted((coefficients or {}).items()) if v != 0)
        object.__setattr__(self, "constant", Fraction(constant))
        object.__setattr__(self, "terms", cleaned)

    @property
    def coefficients(self) -> Dict[str, Fraction]:
        return dict(self.terms)

    @classmethod
    def const(cls, value) -> "LinExpr":
        return cls(Fraction(value))

    @classmethod
    def var(cls, name: str) -> "LinExpr":
        return cls(Fraction(0), {name: Fraction(1)})

    def __add__(self, other: "LinExpr") -> "LinExpr":
        coeffs = dict(self.coefficients)
        for k, v in other.coefficients.items():
            coeffs[k] = coeffs.get(k, Fraction(0)) + v
        return LinExpr(self.constant + other.constant, coeffs)

    def __neg__(self) -> "LinExpr":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        return self + (-other)

    def scale(self, factor) -> "LinExpr":
        factor = Fraction(factor)
        return LinExpr(self.constant * factor, {k: v * factor for k, v in self.terms})

    def coefficient(self, name: str) -> Fraction:
        return next((v for k, v in self.terms if k == name), Fraction(0))

    def without(self, name: str) -> "LinExpr":
        return LinExpr(self.constant, {k: v for k, v in self.terms if k != name})

    def substitute(self, name: str, replacement: "LinExpr") -> "LinExpr":
        a = self.coefficient(name)
        if a == 0:
            return self
        return self.without(name) + replacement.scale(a)

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        return self.constant + sum((v * values[k] for k, v in self.terms), Fraction(0))

    @property
    def variables(self) -> List[str]:
        return [k for k, _ in self.terms]

    def is_constant(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        parts = [f"{v}*{k}" for k, v in self.terms]
        if self.constant != 0 or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts)


@dataclass(frozen=True)
class Constraint:
    expr: LinExpr
    relation: Relation

    @classmethod
    def ge(cls, expr: LinExpr) -> "Constraint":
        return cls(expr, Relation.GE)

    @classmethod
    def gt(cls, expr: LinExpr) -> "Constraint":
        return cls(expr, Relation.GT)

    @classmethod
    def eq(cls, expr: LinExpr) -> "Constraint":
        return cls(expr, Relation.EQ)

    def holds(self, values: Mapping[str, Fraction]) -> bool:
        value = self.expr.evaluate(values)
        if self.relation is Relation.GE:
            return value >= 0
        if self.relation is Relation.GT:
            return value > 0
        return value == 0

    def __str__(self) -> str:
        return f"{self.expr} {self.relation.value}"


def box_constraints(names: Iterable[str]) -> List[Constraint]:
    """0 <= x <= 1 for every name."""
    out: List[Constraint] = []
    for name in sorted(set(names)):
        x = LinExpr.var(name)
        out.append(Constraint.ge(x))
        out.append(Constraint.ge(LinExpr.const(1) - x))
    return out


# ─── Fourier-Motzkin ─────────────────────────────────────────────────────────

# A bound on x: (expression over the remaining variables, strict?)
Bound = Tuple[LinExpr, bool]


@dataclass
class _Step:
    variable: str
    substitution: Optional[LinExpr] = None
    lowers: List[Bound] = field(default_factory=list)
    uppers: List[Bound] = field(default_factory=list)


def simplify(cs: Iterable[Constraint]) -> Optional[List[Constraint]]:
    """
    Drop satisfied constant constraints and duplicates, keep only the tightest
    inequality per direction. Returns None when a constant constraint fails.
    """
    tightest: Dict[Tuple, Constraint] = {}
    equalities: Dict[Tuple, Constraint] = {}
    for c in cs:
        if c.expr.is_constant():
            if not c.holds({}):
                return None
            continue
        lead = abs(c.expr.terms[0][1])
        norm = c.expr.scale(1 / lead)
        direction = norm.terms
        if c.relation is Relation.EQ:
            equalities.setdefault((direction, norm.constant), Constraint.eq(norm))
            continue
        current = tightest.get(direction)
        candidate = Constraint(norm, c.relation)
        if current is None or _tighter(candidate, current):
            tightest[direction] = candidate
    return list(equalities.values()) + list(tightest.values())


def _tighter(a: Constraint, b: Constraint) -> bool:
    if a.expr.constant != b.expr.constant:
        return a.expr.constant < b.expr.constant
    return a.relation is Relation.GT and b.relation is Relation.GE


def _eliminate(cs: List[Constraint], name: str) -> Tuple[List[Constraint], _Step]:
    step = _Step(variable=name)
    for c in cs:
        a = c.expr.coefficient(name)
        if c.relation is Relation.EQ and a != 0:
            # x = -(rest)/a
            replacement = c.expr.without(name).scale(Fraction(-1) / a)
            step.substitution = replacement
            rest = [Constraint(d.expr.substitute(name, replacement), d.relation) for d in cs if d is not c]
            return rest, step

    kept: List[Constraint] = []
    for c in cs:
        a = c.expr.coefficient(name)
        if a == 0:
            kept.append(c)
            continue
        # a*x + rest (>|>=) 0
        bound = c.expr.without(name).scale(Fraction(-1) / a)
        strict = c.relation is Relation.GT
        if a > 0:
            step.lowers.append((bound, strict))
        else:
            step.uppers.append((bound, strict))
    for lo, lo_strict in step.lowers:
        for hi, hi_strict in step.uppers:
            relation = Relation.GT if (lo_strict or hi_strict) else Relation.GE
            kept.append(Constraint(hi - lo, relation))
    return kept, step


def _variables_of(cs: Iterable[Constraint]) -> List[str]:
    names = set()
    for c in cs:
        names.update(k for k, _ in c.expr.terms)
    return sorted(names)


def _elimination_cost(cs: Sequence[Constraint], name: str) -> int:
    """Growth in constraint count from eliminating `name`; substitutions are cheapest."""
    lowers = uppers = 0
    for c in cs:
        a = c.expr.coefficient(name)
        if a == 0:
            continue
        if c.relation is Relation.EQ:
            return -1 - len(cs)
        if a > 0:
            lowers += 1
        else:
            uppers += 1
    return lowers * uppers - lowers - uppers


def _project(cs: Sequence[Constraint], keep: Iterable[str] = ()) -> Tuple[Optional[List[Constraint]], List[_Step]]:
    """Eliminate every variable not in `keep`; None if a contradiction surfaces."""
    keep = set(keep)
    current = simplify(cs)
    steps: List[_Step] = []
    if current is None:
        return None, steps
    pending = [v for v in _variables_of(current) if v not in keep]
    while pending:
        name = min(pending, key=lambda v: (_elimination_cost(current, v), v))
        pending.remove(name)
        current, step = _eliminate(current, name)
        steps.append(step)
        current = simplify(current)
        if current is None:
            return None, steps
    return current, steps


def prune_redundant(cs: Sequence[Constraint]) -> List[Constraint]:
    """Drop inequalities implied by the remaining constraints. Equalities stay."""
    kept = list(cs)
    for c in list(kept):
        if c.relation is Relation.EQ:
            continue
        others = [d for d in kept if d is not c]
        violated = Constraint.gt(-c.expr) if c.relation is Relation.GE else Constraint.ge(-c.expr)
        if lp_feasible(others + [violated]) is None:
            kept = others
    return kept


def _choose(step: _Step, values: Mapping[str, Fraction]) -> Fraction:
    lows = [(b.evaluate(values), s) for b, s in step.lowers]
    highs = [(b.evaluate(values), s) for b, s in step.uppers]
    lo = max(lows, key=lambda t: (t[0], t[1])) if lows else None
    hi = min(highs, key=lambda t: (t[0], not t[1])) if highs else None
    if lo is not None and not lo[1]:
        return lo[0]
    if hi is not None and not hi[1] and lo is None:
        return hi[0]
    if lo is not None and hi is not None:
        return (lo[0] + hi[0]) / 2
    if lo is not None:
        return lo[0] + 1
    if hi is not None:
        return hi[0] - 1
    return Fraction(0)


def _back_substitute(steps: List[_Step], values: Dict[str, Fraction]) -> Dict[str, Fraction]:
    for step in reversed(steps):
        if step.substitution is not None:
            values[step.variable] = step.substitution.evaluate(_defaulted(step.substitution, values))
        else:
            values[step.variable] = _choose(step, values)
    return values


def _defaulted(expr: LinExpr, values: Dict[str, Fraction]) -> Dict[str, Fraction]:
    for name in expr.variables:
        values.setdefault(name, Fraction(0))
    return values


def lp_feasible(cs: Sequence[Constraint]) -> Optional[Dict[str, Fraction]]:
    """
    An exact point satisfying every constraint (strict ones included), or
    None when the system is infeasible.
    """
    remaining, steps = _project(cs)
    if remaining is None:
        return None
    point = _back_substitute(steps, {})
    for name in _variables_of(cs):
        point.setdefault(name, Fraction(0))
    if not all(c.holds(point) for c in cs):
        logger.error(f"Fourier-Motzkin witness failed re-check: {point}")
        return None
    return {k: v for k, v in sorted(point.items()) if not k.startswith("$")}


def lp_minimize(objective: LinExpr, cs: Sequence[Constraint]) -> Optional[Tuple[Fraction, Dict[str, Fraction]]]:
    """
    Exact minimum of `objective` over a closed (non-strict) feasible set, with
    a witness point. None if the set is empty or the objective is unbounded.
    """
    t = LinExpr.var(OBJECTIVE)
    system = list(cs) + [Constraint.eq(t - objective)]
    remaining, _ = _project(system, keep=[OBJECTIVE])
    if remaining is None:
        return None
    lowers = []
    for c in remaining:
        a = c.expr.coefficient(OBJECTIVE)
        if a > 0 and c.relation is not Relation.EQ:
            lowers.append(c.expr.without(OBJECTIVE).scale(Fraction(-1) / a).constant)
        elif c.relation is Relation.EQ:
            lowers.append(c.expr.without(OBJECTIVE).scale(Fraction(-1) / a).constant)
    if not lowers:
        return None
    best = max(lowers)
    witness = lp_feasible(list(cs) + [Constraint.eq(objective - LinExpr.const(best))])
    if witness is None:
        return None
    return best, witness


def lp_maximize(objective: LinExpr, cs: Sequence[Constraint]) -> Optional[Tuple[Fraction, Dict[str, Fraction]]]:
    result = lp_minimize(-objective, cs)
    if result is None:
        return None
    value, witness = result
    return -value, witness

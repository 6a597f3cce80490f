"""
Exact [0,1] semantics of Łukasiewicz logic over fractions.Fraction, plus the
finite grid {0, 1/n, ..., 1} used as a brute-force oracle.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from tools.errors import ValuationError
from tools.formula import Bottom, Formula, Implies, Not, Prop, StrongConj, fold, variables

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)


def format_rational(r: Fraction) -> str:
    """`num/den` in lowest terms; integers without `/1`."""
    return str(Fraction(r))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValuationError(f"not a rational number: {text!r}") from e


class Valuation(Mapping[str, Fraction]):
    """Immutable map from proposition names to exact values in [0,1]."""

    __slots__ = ("_values",)

    def __init__(self, values: Optional[Mapping[str, object]] = None, **kwargs: object):
        merged: Dict[str, Fraction] = {}
        for name, raw in {**(values or {}), **kwargs}.items():
            value = raw if isinstance(raw, Fraction) else Fraction(raw)
            if not ZERO <= value <= ONE:
                raise ValuationError(f"value of {name} outside [0,1]: {value}")
            merged[name] = value
        self._values = dict(sorted(merged.items()))

    @classmethod
    def parse(cls, text: str) -> "Valuation":
        """Read `p=1/2,q=1`; the empty string is the empty valuation."""
        values: Dict[str, Fraction] = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            name, sep, num = part.partition("=")
            if not sep or not name.strip():
                raise ValuationError(f"expected name=num/den, got {part!r}")
            values[name.strip()] = parse_rational(num)
        return cls(values)

    def __getitem__(self, name: str) -> Fraction:
        return self._values[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self) -> int:
        return hash(tuple(self._values.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return dict(self._values) == dict(other)
        return NotImplemented

    def __str__(self) -> str:
        return ",".join(f"{k}={format_rational(v)}" for k, v in self._values.items())

    def __repr__(self) -> str:
        return f"Valuation({self})"


def evaluate(f: Formula, v: Mapping[str, Fraction]) -> Fraction:
    """V(f) by the four clauses with V(⊥) = 0. Unbound names are errors."""
    def visit(node: Formula, kids: Tuple[Fraction, ...]) -> Fraction:
        if isinstance(node, Prop):
            try:
                return v[node.name]
            except KeyError:
                raise ValuationError(f"unbound proposition: {node.name}") from None
        if isinstance(node, Bottom):
            return ZERO
        if isinstance(node, Not):
            return ONE - kids[0]
        if isinstance(node, StrongConj):
            return max(ZERO, kids[0] + kids[1] - ONE)
        if isinstance(node, Implies):
            return min(ONE, ONE - kids[0] + kids[1])
        raise TypeError(f"not a formula: {node!r}")

    return fold(f, visit)


def is_true_under(f: Formula, v: Mapping[str, Fraction]) -> bool:
    return evaluate(f, v) == ONE


def grid_valuations(names: Iterable[str], n: int) -> Iterator[Valuation]:
    """All (n+1)^k valuations over {0, 1/n, ..., 1}, in lexicographic order."""
    if n < 1:
        raise ValuationError(f"grid denominator must be >= 1, got {n}")
    ordered = sorted(set(names))
    points = [Fraction(k, n) for k in range(n + 1)]
    for combo in itertools.product(points, repeat=len(ordered)):
        yield Valuation(dict(zip(ordered, combo)))


def grid_min(f: Formula, n: int) -> Tuple[Fraction, Valuation]:
    """Exact minimum of f over the n-grid with the first valuation attaining it."""
    best: Optional[Tuple[Fraction, Valuation]] = None
    for v in grid_valuations(variables(f), n):
        value = evaluate(f, v)
        if best is None or value < best[0]:
            best = (value, v)
            if value == ZERO:
                break
    return best

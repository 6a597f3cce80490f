"""
Formula core - primitive-only syntax trees for Łukasiewicz logic.

Stored formulas use five constructors only: Bottom, Prop, Not, StrongConj and
Implies. Derived connectives are expanded by the builders below (and by the
parser, which calls them), so matching, evaluation and the decision engine
see one canonical form. Templates add Metavar leaves for axiom schemes.
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple, TypeVar, Union

from tools.errors import PowerError, TemplateError

PROP_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class _Node:
    __slots__ = ()

    def __str__(self) -> str:
        from tools.parser import format_formula
        return format_formula(self)


@dataclass(frozen=True, slots=True)
class Bottom(_Node):
    pass


@dataclass(frozen=True, slots=True)
class Prop(_Node):
    name: str

    def __post_init__(self):
        if not PROP_NAME.match(self.name):
            raise ValueError(f"invalid proposition name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class Not(_Node):
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class StrongConj(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Metavar(_Node):
    """Schematic letter; lives only inside templates."""
    name: str


Formula = Union[Bottom, Prop, Not, StrongConj, Implies]
FormulaTemplate = Union[Bottom, Prop, Not, StrongConj, Implies, Metavar]
Binding = Dict[str, Formula]
T = TypeVar("T")

BOTTOM = Bottom()
TOP = Not(BOTTOM)


# ─── Derived connectives ─────────────────────────────────────────────────────

def strong_disj(a: FormulaTemplate, b: FormulaTemplate) -> FormulaTemplate:
    """a ⊻ b := ¬a → b"""
    return Implies(Not(a), b)


def weak_conj(a: FormulaTemplate, b: FormulaTemplate) -> FormulaTemplate:
    """a ∧ b := a & (a → b)"""
    return StrongConj(a, Implies(a, b))


def weak_disj(a: FormulaTemplate, b: FormulaTemplate) -> FormulaTemplate:
    """a ∨ b := ((a → b) → b) ∧ ((b → a) → a)"""
    return weak_conj(Implies(Implies(a, b), b), Implies(Implies(b, a), a))


def equiv(a: FormulaTemplate, b: FormulaTemplate) -> FormulaTemplate:
    """a ↔ b := (a → b) & (b → a)"""
    return StrongConj(Implies(a, b), Implies(b, a))


def conjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-associated strong conjunction; the empty conjunction is ⊤ = ¬⊥."""
    items = list(formulas)
    if not items:
        return TOP
    result = items[0]
    for f in items[1:]:
        result = StrongConj(result, f)
    return result


def disjunction(formulas: Iterable[Formula]) -> Formula:
    """Left-associated strong disjunction; the empty disjunction is ⊥."""
    items = list(formulas)
    if not items:
        return BOTTOM
    result = items[0]
    for f in items[1:]:
        result = strong_disj(result, f)
    return result


def power(f: Formula, n: int) -> Formula:
    """n-fold strong conjunction of f, associated to the left."""
    if n < 1:
        raise PowerError(f"power exponent must be >= 1, got {n}")
    return conjunction([f] * n)


# ─── Templates ───────────────────────────────────────────────────────────────

def instantiate(t: FormulaTemplate, b: Binding) -> Formula:
    """Replace every metavariable of t by its binding."""
    def visit(node: FormulaTemplate, kids: Tuple[Formula, ...]) -> Formula:
        if isinstance(node, Metavar):
            if node.name not in b:
                raise TemplateError(f"no binding for metavariable {node.name}")
            return b[node.name]
        if kids:
            return type(node)(*kids)
        return node

    return fold(t, visit)


def match_template(t: FormulaTemplate, f: Formula) -> Optional[Binding]:
    """
    Return the binding b with instantiate(t, b) == f, or None.

    A metavariable occurring twice must match equal subformulas. Note that
    match_template(t, instantiate(t, b)) returns b only when no two distinct
    metavariables are bound to formulas that the other occurrences make
    indistinguishable; the result is always a valid binding, just possibly
    not the one you started from.
    """
    binding: Binding = {}
    return binding if _match(t, f, binding) else None


def _match(t: FormulaTemplate, f: Formula, binding: Binding) -> bool:
    if isinstance(t, Metavar):
        bound = binding.get(t.name)
        if bound is None:
            binding[t.name] = f
            return True
        return bound == f
    if type(t) is not type(f):
        return False
    if isinstance(t, Not):
        return _match(t.sub, f.sub, binding)
    if isinstance(t, (StrongConj, Implies)):
        return _match(t.left, f.left, binding) and _match(t.right, f.right, binding)
    return t == f


def metavars(t: FormulaTemplate) -> Set[str]:
    found: Set[str] = set()
    for node in _walk(t):
        if isinstance(node, Metavar):
            found.add(node.name)
    return found


# ─── Structural utilities ────────────────────────────────────────────────────

def _children(node: FormulaTemplate):
    if isinstance(node, Not):
        return (node.sub,)
    if isinstance(node, (StrongConj, Implies)):
        return (node.left, node.right)
    return ()


def fold(f: FormulaTemplate, visit: Callable[[FormulaTemplate, Tuple[T, ...]], T]) -> T:
    """
    Bottom-up evaluation without recursion: visit(node, child_results) runs
    once per node occurrence, children first.
    """
    results: Dict[int, T] = {}
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        kids = _children(node)
        if expanded:
            results[id(node)] = visit(node, tuple(results[id(k)] for k in kids))
            continue
        stack.append((node, True))
        stack.extend((k, False) for k in reversed(kids))
    return results[id(f)]


def _walk(f: FormulaTemplate):
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.sub)
        elif isinstance(node, (StrongConj, Implies)):
            stack.append(node.right)
            stack.append(node.left)


def variables(f: Formula) -> Set[str]:
    return {node.name for node in _walk(f) if isinstance(node, Prop)}


def size(f: Formula) -> int:
    return sum(1 for _ in _walk(f))


def subformulas(f: Formula) -> Set[Formula]:
    return set(_walk(f))


def binary_connectives(f: Formula) -> int:
    return sum(1 for node in _walk(f) if isinstance(node, (StrongConj, Implies)))


def sorted_variables(formulas: Iterable[Formula]) -> List[str]:
    names: Set[str] = set()
    for f in formulas:
        names |= variables(f)
    return sorted(names)

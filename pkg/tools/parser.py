"""
Surface syntax for Łukasiewicz formulas: a lark LALR grammar plus the printer.

Precedence, tightest first:  !  &  (+)  /\\  \\/  ->(right)  <->
Sugar (+), /\\, \\/ and <-> is expanded while the tree is built.
"""

import logging
from typing import Tuple

from lark import Lark, Transformer
from lark.exceptions import (
    UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError,
)

from tools.errors import FormulaSyntaxError
from tools.formula import (
    BOTTOM, Bottom, Formula, FormulaTemplate, Implies, Metavar, Not, Prop, StrongConj,
    equiv, fold, strong_disj, weak_conj, weak_disj,
)

logger = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: equivalence

    ?equivalence: implication
        | equivalence "<->" implication      -> equiv

    ?implication: weak_disjunction
        | weak_disjunction "->" implication  -> implies

    ?weak_disjunction: weak_conjunction
        | weak_disjunction "\\/" weak_conjunction   -> weak_disj

    ?weak_conjunction: strong_disjunction
        | weak_conjunction "/\\" strong_disjunction -> weak_conj

    ?strong_disjunction: strong_conjunction
        | strong_disjunction "(+)" strong_conjunction -> strong_disj

    ?strong_conjunction: unary
        | strong_conjunction "&" unary       -> strong_conj

    ?unary: "!" unary                        -> negation
        | atom

    ?atom: "0"                               -> bottom
        | NAME                               -> prop
        | "(" equivalence ")"

    NAME: /[a-zA-Z][a-zA-Z0-9_]*/

    %import common.WS
    %ignore WS
"""


class _FormulaBuilder(Transformer):
    """Turns parse-tree nodes into primitive-only Formula objects."""

    def bottom(self, _items):
        return BOTTOM

    def prop(self, items):
        return Prop(str(items[0]))

    def negation(self, items):
        return Not(items[0])

    def strong_conj(self, items):
        return StrongConj(items[0], items[1])

    def implies(self, items):
        return Implies(items[0], items[1])

    def strong_disj(self, items):
        return strong_disj(items[0], items[1])

    def weak_conj(self, items):
        return weak_conj(items[0], items[1])

    def weak_disj(self, items):
        return weak_disj(items[0], items[1])

    def equiv(self, items):
        return equiv(items[0], items[1])


_parser = Lark(FORMULA_GRAMMAR, parser="lalr", transformer=_FormulaBuilder())


def parse(text: str) -> Formula:
    """Parse surface text into a primitive-only Formula."""
    try:
        return _parser.parse(text)
    except UnexpectedInput as e:
        raise _syntax_error(text, e) from None
    except VisitError as e:
        raise FormulaSyntaxError(str(e.orig_exc), 0, text) from None


def _syntax_error(text: str, e: UnexpectedInput) -> FormulaSyntaxError:
    if isinstance(e, UnexpectedEOF) or (isinstance(e, UnexpectedToken) and e.token.type == "$END"):
        pos = len(text)
        message = "unexpected end of input"
    elif isinstance(e, UnexpectedCharacters):
        pos = e.pos_in_stream
        message = f"unknown token {text[pos]!r}"
    else:
        pos = getattr(e, "pos_in_stream", None) or 0
        message = f"unexpected {getattr(e, 'token', 'input')!r}"
    if text.count("(") != text.count(")"):
        message = f"unbalanced parentheses ({message})"
    offset = len(text[:pos].encode("utf-8"))
    logger.debug(f"Parse failed at char {pos} / byte {offset}: {message}")
    return FormulaSyntaxError(message, offset, text)


# ─── Printer ─────────────────────────────────────────────────────────────────

def format_formula(f: FormulaTemplate) -> str:
    """Minimal-parenthesis text with parse(format_formula(f)) == f."""
    return fold(f, _format_node)


def _format_node(node: FormulaTemplate, kids: Tuple[str, ...]) -> str:
    if isinstance(node, Bottom):
        return "0"
    if isinstance(node, (Prop, Metavar)):
        return node.name
    if isinstance(node, Not):
        return "!" + _wrap(kids[0], isinstance(node.sub, (StrongConj, Implies)))
    if isinstance(node, StrongConj):
        left = _wrap(kids[0], isinstance(node.left, Implies))
        right = _wrap(kids[1], isinstance(node.right, (StrongConj, Implies)))
        return f"{left} & {right}"
    if isinstance(node, Implies):
        return f"{_wrap(kids[0], isinstance(node.left, Implies))} -> {kids[1]}"
    raise TypeError(f"not a formula: {node!r}")


def _wrap(text: str, needed: bool) -> str:
    return f"({text})" if needed else text

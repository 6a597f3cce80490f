"""
Parser Tests - precedence, sugar expansion, error offsets and printing.
"""

import pytest
from hypothesis import given

from tests.strategies import formulas
from tools.errors import FormulaSyntaxError, LogicError
from tools.formula import BOTTOM, Implies, Metavar, Not, Prop, StrongConj, equiv, strong_disj, weak_conj, weak_disj
from tools.parser import format_formula, parse

p, q, r = Prop("p"), Prop("q"), Prop("r")


class TestPrecedence:
    def test_conjunction_binds_tighter_than_implication(self):
        assert parse("p & q -> r") == Implies(StrongConj(p, q), r)

    def test_implication_is_right_associative(self):
        assert parse("p -> q -> r") == Implies(p, Implies(q, r))

    def test_conjunction_is_left_associative(self):
        assert parse("p & q & r") == StrongConj(StrongConj(p, q), r)

    def test_negation_binds_tightest(self):
        assert parse("!p & q") == StrongConj(Not(p), q)

    def test_parentheses(self):
        assert parse("!(p & q)") == Not(StrongConj(p, q))
        assert parse("(p -> q) -> r") == Implies(Implies(p, q), r)

    def test_bottom(self):
        assert parse("0 -> p") == Implies(BOTTOM, p)

    def test_whitespace_ignored(self):
        assert parse("  p->q ") == Implies(p, q)


class TestSugar:
    def test_strong_disjunction(self):
        assert parse("p (+) q") == strong_disj(p, q)

    def test_weak_conjunction(self):
        assert parse("p /\\ q") == weak_conj(p, q)

    def test_weak_disjunction(self):
        assert parse("p \\/ !p") == weak_disj(p, Not(p))

    def test_equivalence(self):
        assert parse("p <-> q") == equiv(p, q)

    def test_equivalence_binds_loosest(self):
        assert parse("p -> q <-> r") == equiv(Implies(p, q), r)

    def test_strong_disjunction_looser_than_conjunction(self):
        assert parse("p & q (+) r") == strong_disj(StrongConj(p, q), r)


class TestSyntaxErrors:
    def test_dangling_implication(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("p ->")
        assert exc.value.offset == 4

    def test_unknown_character(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("p $ q")
        assert exc.value.offset == 2

    def test_unbalanced_parentheses(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("(p & q")
        assert "unbalanced" in str(exc.value)

    def test_empty_input(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse("")
        assert exc.value.offset == 0

    def test_is_logic_error(self):
        with pytest.raises(LogicError):
            parse("p &")


class TestPrinter:
    def test_minimal_parentheses(self):
        assert format_formula(Implies(StrongConj(p, q), r)) == "p & q -> r"
        assert format_formula(Implies(Implies(p, q), r)) == "(p -> q) -> r"
        assert format_formula(Not(StrongConj(p, q))) == "!(p & q)"
        assert format_formula(StrongConj(p, StrongConj(q, r))) == "p & (q & r)"

    def test_bottom_prints_as_zero(self):
        assert format_formula(Implies(BOTTOM, p)) == "0 -> p"

    def test_str_uses_printer(self):
        assert str(Not(Not(p))) == "!!p"

    def test_metavariables_print_by_name(self):
        assert format_formula(Implies(Metavar("phi"), Metavar("psi"))) == "phi -> psi"

    @given(formulas)
    def test_printed_text_parses_back(self, f):
        assert parse(format_formula(f)) == f

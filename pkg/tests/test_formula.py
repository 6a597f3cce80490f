"""
Formula Core Tests - constructors, derived connectives, templates and
structural utilities.
"""

import pytest
from hypothesis import given

from tests.strategies import formulas
from tools.errors import PowerError, TemplateError
from tools.formula import (
    BOTTOM, TOP, Implies, Metavar, Not, Prop, StrongConj,
    binary_connectives, conjunction, disjunction, equiv, instantiate, match_template,
    metavars, power, size, sorted_variables, strong_disj, subformulas, variables, weak_conj, weak_disj,
)
from tools.parser import format_formula

p, q, r = Prop("p"), Prop("q"), Prop("r")
X, Y = Metavar("X"), Metavar("Y")


class TestConstructors:
    def test_structural_equality(self):
        assert StrongConj(p, Not(q)) == StrongConj(Prop("p"), Not(Prop("q")))
        assert Implies(p, q) != Implies(q, p)

    def test_hashable(self):
        assert len({Implies(p, q), Implies(p, q), Not(p)}) == 2

    def test_frozen(self):
        with pytest.raises(AttributeError):
            Not(p).sub = q

    def test_invalid_proposition_name(self):
        with pytest.raises(ValueError):
            Prop("1p")

    def test_top_is_negated_bottom(self):
        assert TOP == Not(BOTTOM)


class TestDerivedConnectives:
    def test_strong_disjunction(self):
        assert strong_disj(p, q) == Implies(Not(p), q)

    def test_weak_conjunction(self):
        assert weak_conj(p, q) == StrongConj(p, Implies(p, q))

    def test_weak_disjunction(self):
        expected = weak_conj(Implies(Implies(p, q), q), Implies(Implies(q, p), p))
        assert weak_disj(p, q) == expected

    def test_equivalence(self):
        assert equiv(p, q) == StrongConj(Implies(p, q), Implies(q, p))

    def test_conjunction_left_associated(self):
        assert conjunction([p, q, r]) == StrongConj(StrongConj(p, q), r)

    def test_empty_conjunction_is_top(self):
        assert conjunction([]) == TOP

    def test_single_conjunction(self):
        assert conjunction([q]) == q

    def test_disjunction(self):
        assert disjunction([p, q]) == strong_disj(p, q)
        assert disjunction([]) == BOTTOM


class TestPower:
    def test_power_one(self):
        assert power(p, 1) == p

    def test_power_three(self):
        assert power(p, 3) == StrongConj(StrongConj(p, p), p)

    def test_power_zero_rejected(self):
        with pytest.raises(PowerError):
            power(p, 0)

    def test_power_error_is_value_error(self):
        with pytest.raises(ValueError):
            power(p, -2)


class TestTemplates:
    def test_instantiate(self):
        assert instantiate(Implies(X, Y), {"X": p, "Y": Not(q)}) == Implies(p, Not(q))

    def test_instantiate_missing_binding(self):
        with pytest.raises(TemplateError):
            instantiate(Implies(X, Y), {"X": p})

    def test_match_binds_metavariables(self):
        assert match_template(Implies(X, Y), Implies(p, StrongConj(q, r))) == {"X": p, "Y": StrongConj(q, r)}

    def test_repeated_metavariable_must_agree(self):
        assert match_template(Implies(X, X), Implies(p, p)) == {"X": p}
        assert match_template(Implies(X, X), Implies(p, q)) is None

    def test_shape_mismatch(self):
        assert match_template(StrongConj(X, Y), Implies(p, q)) is None

    def test_bottom_in_template(self):
        assert match_template(Implies(BOTTOM, X), Implies(BOTTOM, q)) == {"X": q}
        assert match_template(Implies(BOTTOM, X), Implies(p, q)) is None

    def test_metavars(self):
        assert metavars(Implies(X, StrongConj(Y, X))) == {"X", "Y"}
        assert metavars(Implies(p, q)) == set()

    @given(formulas, formulas)
    def test_match_recovers_a_valid_binding(self, a, b):
        template = Implies(X, StrongConj(Y, X))
        f = instantiate(template, {"X": a, "Y": b})
        found = match_template(template, f)
        assert found is not None
        assert instantiate(template, found) == f


class TestStructure:
    def test_variables(self):
        assert variables(Implies(p, StrongConj(q, BOTTOM))) == {"p", "q"}

    def test_size_counts_nodes(self):
        assert size(StrongConj(p, Not(q))) == 4

    def test_binary_connectives(self):
        assert binary_connectives(Implies(Not(p), StrongConj(q, r))) == 2

    def test_subformulas(self):
        f = Implies(p, Not(p))
        assert subformulas(f) == {f, p, Not(p)}

    def test_sorted_variables(self):
        assert sorted_variables([Implies(r, p), q]) == ["p", "q", "r"]

    def test_deep_formula_does_not_recurse(self):
        f = p
        for _ in range(5000):
            f = Not(f)
        assert size(f) == 5001

    def test_deep_nesting_without_recursion(self):
        template = Metavar("A")
        for _ in range(5000):
            template = Not(template)
        f = instantiate(template, {"A": p})
        assert format_formula(f) == "!" * 5000 + "p"
        assert size(f) == 5001

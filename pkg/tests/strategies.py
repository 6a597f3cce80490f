"""
Hypothesis strategies for formulas and valuations.
"""


from hypothesis.strategies import builds, dictionaries, fractions, one_of, recursive, sampled_from

from tools.formula import BOTTOM, Implies, Not, Prop, StrongConj
from tools.semantics import Valuation

NAMES = ["p", "q", "r"]

atoms = sampled_from([BOTTOM] + [Prop(n) for n in NAMES])

formulas = recursive(
    atoms,
    lambda children: one_of(
        builds(Not, children),
        builds(StrongConj, children, children),
        builds(Implies, children, children),
    ),
    max_leaves=8,
)

small_formulas = recursive(
    sampled_from([Prop("p"), Prop("q")]),
    lambda children: one_of(
        builds(Not, children),
        builds(StrongConj, children, children),
        builds(Implies, children, children),
    ),
    max_leaves=4,
)

unit_values = fractions(min_value=0, max_value=1, max_denominator=12)

valuations = builds(
    Valuation,
    dictionaries(sampled_from(NAMES), unit_values, min_size=len(NAMES), max_size=len(NAMES)),
)

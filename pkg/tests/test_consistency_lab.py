"""
Consistency Lab Tests - finite consistency, fragment enumeration, bounded
extension, audits, the canonical valuation and trace files.
"""

import pytest
from hypothesis import given, settings
from hypothesis.strategies import lists

from engines.consistency_lab import (
    ConsistencyLab, canonical_valuation, dump_trace, enumerate_fragment, load_trace,
)
from models.schemas import FragmentExtension
from tests.strategies import small_formulas
from tools.errors import CanonicalValuationError, InconsistentSeedError, TraceFormatError
from tools.formula import BOTTOM, Not, Prop, StrongConj, subformulas
from tools.parser import format_formula, parse
from tools.semantics import HALF, ONE, ZERO, Valuation, evaluate

p, q, r = Prop("p"), Prop("q"), Prop("r")


class TestIsConsistent:
    def setup_method(self):
        self.lab = ConsistencyLab()

    def test_bottom(self):
        verdict = self.lab.is_consistent([BOTTOM])
        assert not verdict.consistent
        assert verdict.render() == "INCONSISTENT"

    def test_atom_and_negation(self):
        assert not self.lab.is_consistent([p, Not(p)]).consistent

    def test_half_seed(self):
        verdict = self.lab.is_consistent([parse("p & p"), parse("!( !p & !p )")])
        assert verdict.consistent
        assert verdict.value == ONE
        assert verdict.witness == Valuation({"p": 1})
        assert verdict.render() == "CONSISTENT value=1 at p=1"

    def test_empty_set(self):
        verdict = self.lab.is_consistent([])
        assert verdict.consistent
        assert verdict.value == ONE

    def test_duplicates_ignored(self):
        assert self.lab.is_consistent([p, p, p]).consistent

    @settings(max_examples=200, deadline=None)
    @given(lists(small_formulas, min_size=1, max_size=3), small_formulas)
    def test_inconsistency_is_monotone(self, s, g):
        if not self.lab.is_consistent(s).consistent:
            assert not self.lab.is_consistent(s + [g]).consistent


class TestEnumerateFragment:
    def test_sizes(self):
        assert enumerate_fragment(["p"], 0).formulas == [p]
        assert len(enumerate_fragment(["p"], 2).formulas) == 19
        assert len(enumerate_fragment(["p"], 3).formulas) == 112

    def test_order(self):
        printed = [format_formula(f) for f in enumerate_fragment(["p"], 1).formulas]
        assert printed == ["p", "!p", "p & p", "p -> p"]

    def test_variables_sorted_and_deduplicated(self):
        fragment = enumerate_fragment(["q", "p", "q"], 0)
        assert fragment.variables == ["p", "q"]
        assert fragment.formulas == [p, q]

    def test_closed_under_subformulas(self):
        formulas = set(enumerate_fragment(["p", "q"], 2).formulas)
        assert all(subformulas(f) <= formulas for f in formulas)

    def test_negative_depth(self):
        with pytest.raises(ValueError):
            enumerate_fragment(["p"], -1)


class TestLindenbaumExtend:
    def setup_method(self):
        self.lab = ConsistencyLab()
        self.fragment = enumerate_fragment(["p"], 2)

    def test_classical_seed(self):
        ext = self.lab.lindenbaum_extend([p], self.fragment)
        accepted = set(ext.accepted)
        assert {p, parse("p & p"), parse("!!p")} <= accepted
        assert Not(p) not in accepted
        assert ext.gaps == []
        assert self.lab.is_consistent(ext.accepted).consistent

    def test_square_seed_accepts_atom(self):
        ext = self.lab.lindenbaum_extend([parse("p & p")], self.fragment)
        assert p in ext.accepted
        assert Not(p) not in ext.accepted

    def test_inconsistent_seed(self):
        with pytest.raises(InconsistentSeedError):
            self.lab.lindenbaum_extend([BOTTOM], self.fragment)

    def test_trace_covers_fragment(self):
        ext = self.lab.lindenbaum_extend([p], self.fragment)
        assert [s.formula for s in ext.trace] == self.fragment.formulas
        assert ext.trace[0].reason == "seed"
        assert all(s.witness is not None for s in ext.trace if s.reason == "consistent")

    def test_rejections_justified(self):
        ext = self.lab.lindenbaum_extend([parse("p & p")], self.fragment)
        so_far = list(ext.seed)
        for step in ext.trace:
            if step.accepted:
                if step.formula not in so_far:
                    so_far.append(step.formula)
            else:
                assert not self.lab.is_consistent(so_far + [step.formula]).consistent


class TestAudit:
    def setup_method(self):
        self.lab = ConsistencyLab()
        self.fragment = enumerate_fragment(["p"], 2)

    def test_classical_extension_is_clean(self):
        ext = self.lab.lindenbaum_extend([p], self.fragment)
        report = self.lab.audit_maximality(ext, n_max=4)
        assert report.conjunction_violations == []
        assert report.total_violations == 0
        assert report.power_undecided == []

    def test_atom_decided_at_first_power(self):
        ext = self.lab.lindenbaum_extend([parse("p & p")], self.fragment)
        report = self.lab.audit_maximality(ext, n_max=4)
        assert report.power_witnesses["p"] == 1

    def test_planted_defect_caught(self):
        ext = self.lab.lindenbaum_extend([parse("p & p")], self.fragment)
        corrupted = FragmentExtension(
            seed=ext.seed,
            fragment=ext.fragment,
            accepted=[f for f in ext.accepted if f != p],
            trace=ext.trace,
        )
        report = self.lab.audit_maximality(corrupted, n_max=2)
        assert any(v.startswith("p & p:") for v in report.conjunction_violations)

    def test_unclosed_set_flagged(self):
        ext = FragmentExtension(seed=[p], fragment=enumerate_fragment(["p"], 1), accepted=[p])
        report = self.lab.audit_maximality(ext, n_max=2)
        assert "p -> p: entailed by the accepted set, not accepted" in report.closure_violations
        assert "p & p: entailed by the accepted set, not accepted" in report.closure_violations
        assert not any(v.startswith("!p:") for v in report.closure_violations)

    @pytest.mark.parametrize("seed", ["p", "p & p"])
    def test_depth_three_extension_is_clean(self, seed):
        ext = self.lab.lindenbaum_extend([parse(seed)], enumerate_fragment(["p"], 3))
        assert ext.gaps == []
        report = self.lab.audit_maximality(ext, n_max=8)
        assert report.total_violations == 0
        assert report.power_undecided == []
        assert all(k == 1 for k in report.power_witnesses.values())


class TestCanonicalValuation:
    def setup_method(self):
        self.fragment = enumerate_fragment(["p", "q", "r"], 1)

    def test_three_branches(self):
        ext = FragmentExtension(seed=[], fragment=self.fragment, accepted=[p, Not(q)])
        assert canonical_valuation(ext) == Valuation({"p": ONE, "q": ZERO, "r": HALF})

    def test_contradictory_membership(self):
        ext = FragmentExtension(seed=[], fragment=self.fragment, accepted=[p, Not(p)])
        with pytest.raises(CanonicalValuationError):
            canonical_valuation(ext)


class TestProbe:
    def setup_method(self):
        self.lab = ConsistencyLab()

    def test_classical_seed_all_hold(self):
        ext = self.lab.lindenbaum_extend([p], enumerate_fragment(["p"], 2))
        report = self.lab.probe_truth_lemma(ext)
        assert report.valuation == Valuation({"p": 1})
        assert all(e.all_hold for e in report.entries)
        assert all(counts["fail"] == 0 for counts in report.summary.values())

    def test_empty_seed_reports(self):
        ext = self.lab.lindenbaum_extend([], enumerate_fragment(["p"], 1))
        report = self.lab.probe_truth_lemma(ext)
        assert len(report.entries) == 4
        assert set(report.valuation.values()) <= {ZERO, HALF, ONE}
        assert set(report.summary) <= {"atom", "negation", "conjunction", "implication"}

    @pytest.mark.parametrize("depth", [0, 1, 2, 3])
    @pytest.mark.parametrize("seed", ["p", "!p", "p <-> !p"])
    def test_entries_match_direct_evaluation(self, depth, seed):
        ext = self.lab.lindenbaum_extend([parse(seed)], enumerate_fragment(["p"], depth))
        v = canonical_valuation(ext)
        accepted = set(ext.accepted)
        in_fragment = set(ext.fragment.formulas)
        report = self.lab.probe_truth_lemma(ext)
        assert [e.formula for e in report.entries] == ext.fragment.formulas
        for entry in report.entries:
            value = evaluate(entry.formula, v)
            is_in = entry.formula in accepted
            negation = Not(entry.formula)
            if negation in in_fragment:
                neg_in = negation in accepted
            else:
                neg_in = self.lab.is_consistent(ext.accepted + [negation]).consistent
            assert entry.value == value
            assert entry.one_holds == ((value == ONE) == is_in)
            assert entry.zero_holds == ((value == ZERO) == neg_in)
            assert entry.half_holds == ((value == HALF) == (not is_in and not neg_in))

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_classical_seed_holds_at_every_depth(self, depth):
        ext = self.lab.lindenbaum_extend([p], enumerate_fragment(["p"], depth))
        assert all(e.all_hold for e in self.lab.probe_truth_lemma(ext).entries)


class TestExtensionLemma:
    def setup_method(self):
        self.lab = ConsistencyLab()

    def test_premise_holds(self):
        report = self.lab.check_extension_lemma([p], q)
        assert report.premise_holds
        assert report.witness == Valuation({"p": 1, "q": 0})
        assert report.extension.consistent
        assert report.outcome == "extension consistent"

    def test_premise_not_met(self):
        report = self.lab.check_extension_lemma([p], p)
        assert not report.premise_holds
        assert report.outcome == "premise not met"

    def test_excluded_middle(self):
        report = self.lab.check_extension_lemma([], parse("p \\/ !p"))
        assert report.target_value == HALF
        assert report.extension.value == HALF

    @settings(max_examples=100, deadline=None)
    @given(lists(small_formulas, max_size=3), small_formulas)
    def test_never_inconsistent_when_premise_holds(self, phi, target):
        report = self.lab.check_extension_lemma(phi, target)
        assert report.outcome != "premise holds but extension inconsistent"


class TestHalfSeed:
    def test_report(self):
        report = ConsistencyLab().half_seed_report(depth=2)
        assert report.atom_accepted
        assert not report.negation_accepted
        assert report.render() == "seed {p & p, !(!p & !p)}: p accepted"


class TestTraceFiles:
    def setup_method(self):
        self.lab = ConsistencyLab()
        self.ext = self.lab.lindenbaum_extend([p], enumerate_fragment(["p"], 1))

    def test_dump_then_load(self):
        text = dump_trace(self.ext, 5)
        loaded, n_max = load_trace(text)
        assert n_max == 5
        assert loaded.accepted == self.ext.accepted
        assert loaded.fragment.formulas == self.ext.fragment.formulas
        assert text.splitlines()[0].startswith('{"depth": 1')

    def test_missing_header(self):
        body = "\n".join(dump_trace(self.ext, 5).splitlines()[1:])
        with pytest.raises(TraceFormatError):
            load_trace(body)

    def test_malformed_line(self):
        with pytest.raises(TraceFormatError) as exc:
            load_trace(dump_trace(self.ext, 5) + "not json\n")
        assert exc.value.line_no == len(self.ext.trace) + 2

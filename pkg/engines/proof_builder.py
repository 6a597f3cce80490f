"""
Proof Builder - emits checker-ready derivations.

ProofBuilder appends lines and computes each formula from its justification,
so generated proofs are correct by construction and check_proof confirms
them independently. The fixture suite encodes the completeness argument's
derivations at two hypotheses (n = m = 2).
"""

import logging
from typing import Dict, List, Sequence

from engines.proof_checker import (
    MP, REGISTRY, Hyp, Proof, ProofLine, SchemeId, SchemeRef, scheme_kind,
)
from tools.formula import BOTTOM, Formula, Implies, Not, Prop, StrongConj, instantiate, power

logger = logging.getLogger(__name__)


class ProofBuilder:
    """Line-by-line proof construction with derived-rule helpers."""

    def __init__(self, hypotheses: Sequence[Formula] = ()):
        self.proof = Proof(hypotheses=list(hypotheses))

    def formula(self, k: int) -> Formula:
        return self.proof.lines[k - 1].formula

    def add(self, formula: Formula, justification) -> int:
        self.proof.lines.append(ProofLine(formula, justification))
        return len(self.proof.lines)

    def hyp(self, f: Formula) -> int:
        if f not in self.proof.hypotheses:
            self.proof.hypotheses.append(f)
        return self.add(f, Hyp())

    def scheme(self, scheme_id: SchemeId, **binding: Formula) -> int:
        formula = instantiate(REGISTRY[scheme_id], binding)
        return self.add(formula, SchemeRef(scheme_kind(scheme_id), scheme_id.value, dict(binding)))

    def mp(self, premise: int, implication: int) -> int:
        imp = self.formula(implication)
        if not isinstance(imp, Implies) or imp.left != self.formula(premise):
            raise ValueError(f"lines {premise},{implication} do not fit modus ponens")
        return self.add(imp.right, MP(premise, implication))

    # ─── derived rules ───────────────────────────────────────────────────

    def iff_left(self, k: int) -> int:
        """From A ↔ B at line k, derive A → B."""
        a, b = _iff_sides(self.formula(k))
        return self.mp(k, self.scheme(SchemeId.IFF_ELIM_L, phi=a, psi=b))

    def iff_right(self, k: int) -> int:
        """From A ↔ B at line k, derive B → A."""
        a, b = _iff_sides(self.formula(k))
        return self.mp(k, self.scheme(SchemeId.IFF_ELIM_R, phi=a, psi=b))

    def chain(self, i: int, j: int) -> int:
        """From A → B (line i) and B → C (line j), derive A → C by A1."""
        ab, bc = self.formula(i), self.formula(j)
        a1 = self.scheme(SchemeId.A1, phi=ab.left, psi=ab.right, chi=bc.right)
        return self.mp(j, self.mp(i, a1))

    def replace(self, iff_line: int, scheme_id: SchemeId, chi: Formula, k: int) -> int:
        """
        Replacement by L13/L14/L15: with A ↔ B at iff_line and the left side
        of the scheme's conclusion at line k, derive its right side.
        """
        a, b = _iff_sides(self.formula(iff_line))
        inst = self.scheme(scheme_id, phi=a, psi=b, chi=chi)
        return self.mp(k, self.iff_left(self.mp(iff_line, inst)))

    def pairing(self, a: Formula, b: Formula) -> int:
        """⊢ b → (a → (a & b)) from A3 and the A5 instance read right to left."""
        a3 = self.scheme(SchemeId.A3, phi=b, psi=a)
        a5 = self.scheme(SchemeId.A5, phi=b, psi=a, chi=StrongConj(a, b))
        return self.mp(a3, self.iff_right(a5))

    def conjoin(self, i: int, j: int) -> int:
        a, b = self.formula(i), self.formula(j)
        pair = self.pairing(a, b)
        return self.mp(i, self.mp(j, pair))

    def splice(self, other: Proof) -> int:
        offset = len(self.proof.lines)
        for line in other.lines:
            just = line.justification
            if isinstance(just, MP):
                just = MP(just.premise + offset, just.implication + offset)
            elif isinstance(just, Hyp) and line.formula not in self.proof.hypotheses:
                self.proof.hypotheses.append(line.formula)
            self.add(line.formula, just)
        return len(self.proof.lines)

    def contrapose(self, k: int) -> int:
        """From A → B at line k, derive ¬B → ¬A."""
        f = self.formula(k)
        return self.mp(k, self.splice(contraposition_step(f.left, f.right)))

    def build(self) -> Proof:
        return self.proof


def _iff_sides(f: Formula):
    if (isinstance(f, StrongConj) and isinstance(f.left, Implies) and isinstance(f.right, Implies)
            and f.left.left == f.right.right and f.left.right == f.right.left):
        return f.left.left, f.left.right
    raise ValueError(f"not an equivalence: {f}")


def derive_conjunction(gamma: Sequence[Formula]) -> Proof:
    """
    Γ ⊢ φ1 & ⋯ & φn by folding the two-hypothesis template left to right:
    A3, the A5 direction, then the hypotheses and two modus ponens steps.
    """
    if not gamma:
        raise ValueError("derive_conjunction needs at least one formula")
    b = ProofBuilder(list(dict.fromkeys(gamma)))
    acc = gamma[0]
    acc_line = None
    for g in gamma[1:]:
        pair = b.pairing(acc, g)
        g_line = b.hyp(g)
        if acc_line is None:
            acc_line = b.hyp(acc)
        acc_line = b.mp(acc_line, b.mp(g_line, pair))
        acc = StrongConj(acc, g)
    if acc_line is None:
        b.hyp(acc)
    return b.build()


def contraposition_step(a: Formula, b: Formula) -> Proof:
    """⊢ (a → b) → (¬b → ¬a), through ¬¬a and ¬¬b."""
    nna, nnb = Not(Not(a)), Not(Not(b))
    pb = ProofBuilder()
    dne = pb.scheme(SchemeId.DNE, phi=a)
    weaken = pb.mp(dne, pb.scheme(SchemeId.A1, phi=nna, psi=a, chi=b))
    l8 = pb.scheme(SchemeId.L8, phi=b)
    swapped = pb.mp(l8, pb.scheme(SchemeId.A3, phi=Implies(nnb, b), psi=Implies(b, nnb)))
    strengthen = pb.iff_left(pb.mp(swapped, pb.scheme(SchemeId.L14, phi=b, psi=nnb, chi=nna)))
    double = pb.chain(weaken, strengthen)
    l3 = pb.scheme(SchemeId.L3, phi=Not(a), psi=Not(b))
    pb.chain(double, l3)
    return pb.build()


# ─── Fixtures ────────────────────────────────────────────────────────────────

P1, P2, Q, R, S = Prop("p1"), Prop("p2"), Prop("q"), Prop("r"), Prop("s")
GAMMA = StrongConj(P1, P2)


def _split_negated_conjunction(b: ProofBuilder, hyp_line: int, x: Formula) -> int:
    """From ¬((p1 & p2) & x) derive ¬(¬p1 ⊻ ¬p2) → ¬x, i.e. ¬p1 ⊻ ¬p2 ⊻ ¬x."""
    first = b.mp(hyp_line, b.iff_left(b.scheme(SchemeId.L5, phi=GAMMA, psi=x)))
    inner = b.contrapose(b.iff_left(b.scheme(SchemeId.L5, phi=P1, psi=P2)))
    flat = b.chain(inner, first)
    d = b.formula(flat).left.sub
    return b.mp(flat, b.iff_left(b.scheme(SchemeId.L7, phi=d, psi=Not(x))))


def _gather(b: ProofBuilder, k: int, y: Formula) -> int:
    """From ¬(¬p1 ⊻ ¬p2) → y derive (p1 & p2) → y by L6, L13, L8 and L11."""
    l6 = b.scheme(SchemeId.L6, phi=Not(P1), psi=Not(P2))
    negated = b.replace(l6, SchemeId.L13, y, k)
    intro = [b.iff_right(b.scheme(SchemeId.L8, phi=p)) for p in (P1, P2)]
    both = b.conjoin(*intro)
    l11 = b.scheme(SchemeId.L11, phi1=P1, psi1=Not(Not(P1)), phi2=P2, psi2=Not(Not(P2)))
    return b.chain(b.mp(both, l11), negated)


def pair_introduction() -> Proof:
    return derive_conjunction([Prop("p"), Prop("q")])


def negated_modus_ponens_weakening() -> Proof:
    """⊢ ¬(χ & ψ) → ¬(χ & (φ & (φ → ψ))) with χ = p1, φ = q, ψ = r."""
    b = ProofBuilder()
    self_imp = b.scheme(SchemeId.SELF_IMP, phi=P1)
    l10 = b.scheme(SchemeId.L10, phi=Q, psi=R)
    both = b.conjoin(self_imp, l10)
    l11 = b.scheme(SchemeId.L11, phi1=P1, psi1=P1, phi2=b.formula(l10).left, psi2=R)
    b.contrapose(b.mp(both, l11))
    return b.build()


def drop_true_conjunct() -> Proof:
    """From ¬((p1 & p2) & q) and q derive ¬(p1 & p2)."""
    b = ProofBuilder()
    h = b.hyp(Not(StrongConj(GAMMA, Q)))
    flat = _split_negated_conjunction(b, h, Q)
    nnq = b.mp(b.hyp(Q), b.iff_right(b.scheme(SchemeId.L8, phi=Q)))
    to_bottom = b.mp(nnq, b.iff_right(b.scheme(SchemeId.L9, phi=Not(Q))))
    iff = b.conjoin(to_bottom, b.scheme(SchemeId.A7, phi=Not(Q)))
    d = b.formula(flat).left
    absurd = b.replace(iff, SchemeId.L14, d, flat)
    gathered = _gather(b, absurd, BOTTOM)
    b.mp(gathered, b.iff_left(b.scheme(SchemeId.L9, phi=GAMMA)))
    return b.build()


def _negated_target_fixture(target: Formula) -> Proof:
    """From ¬((p1 & p2) & target) derive (p1 & p2) → ¬target."""
    b = ProofBuilder()
    h = b.hyp(Not(StrongConj(GAMMA, target)))
    _gather(b, _split_negated_conjunction(b, h, target), Not(target))
    return b.build()


def negated_square_to_implication() -> Proof:
    return _negated_target_fixture(power(Q, 2))


def negated_implication_to_implication() -> Proof:
    return _negated_target_fixture(Implies(R, S))


def negated_negation_to_implication() -> Proof:
    """From ¬((p1 & p2) & ¬q) derive (p1 & p2) → q."""
    b = ProofBuilder()
    h = b.hyp(Not(StrongConj(GAMMA, Not(Q))))
    flat = _split_negated_conjunction(b, h, Not(Q))
    l8 = b.scheme(SchemeId.L8, phi=Q)
    positive = b.replace(l8, SchemeId.L14, b.formula(flat).left, flat)
    _gather(b, positive, Q)
    return b.build()


FIXTURES = {
    "lemma2": pair_introduction,
    "lemma3-ii2": negated_modus_ponens_weakening,
    "lemma3-ii3": drop_true_conjunct,
    "lemma3-ii4": negated_square_to_implication,
    "theorem3-chain": negated_negation_to_implication,
    "theorem4-case3": negated_implication_to_implication,
}


def fixture_suite() -> Dict[str, Proof]:
    suite = {name: build() for name, build in FIXTURES.items()}
    logger.debug(f"Built {len(suite)} fixtures: {[(n, len(p.lines)) for n, p in suite.items()]}")
    return suite


def fixture_names() -> List[str]:
    return list(FIXTURES)

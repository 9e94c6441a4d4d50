import pytest

from conftest import D_AXIOM, FOUR_STEP, LOB, first_node
from provd.calculi import (
    ACCEPTED_KINDS,
    Annotation,
    Calculus,
    CutPolicy,
    ProofTree,
    RuleName,
    ViolationCode,
    check_inference,
    check_proof,
    principal_formula,
    render_proof,
)
from provd.components import proof_from_dict, proof_to_dict
from provd.errors import SerializationError
from provd.formula import BOT, Box, Sequent, SequentKind, Var, parse_formula, parse_sequent
from provd.prover import prove

p, q = Var("p"), Var("q")


def leaf(kind, f):
    return ProofTree(Sequent(kind, {f}, {f}), RuleName.INIT, annotation=Annotation(formula=f))


class TestCheckInference:
    def _d_axiom_step(self):
        bp, bq = Box(p), Box(q)
        both = parse_formula("box p | box q")
        conclusion = Sequent(SequentKind.D, {Box(both)}, {bp, bq})
        premise = ProofTree(Sequent(SequentKind.GL, {both, Box(both)}, {bp, bq}), RuleName.WEAK,
                            (leaf(SequentKind.GL, bp),))
        return ProofTree(conclusion, RuleName.DBOX_GL, (premise,),
                         Annotation(gamma=frozenset({both}), delta=frozenset({p, q})))

    def test_dbox_gl_in_dseq2(self):
        assert check_inference(self._d_axiom_step(), Calculus.DSEQ2) is None

    def test_dbox_gl_not_in_dseq3(self):
        violation = check_inference(self._d_axiom_step(), Calculus.DSEQ3)
        assert violation.code is ViolationCode.RULE_NOT_IN_CALCULUS

    def test_boxl_s_absorbs_gamma(self):
        node = ProofTree(Sequent(SequentKind.S, {Box(Box(p))}, {Box(p)}), RuleName.BOXL_S,
                         (leaf(SequentKind.S, Box(p)),))
        assert check_inference(node, Calculus.SSEQ) is None
        assert principal_formula(node) == Box(Box(p))

    def test_arrow_mismatch(self):
        node = ProofTree(Sequent(SequentKind.D, {p}, {p, q}), RuleName.WEAK, (leaf(SequentKind.GL, p),))
        assert check_inference(node, Calculus.DSEQ3).code is ViolationCode.ARROW_MISMATCH

    def test_arity_mismatch(self):
        node = ProofTree(Sequent(SequentKind.GL, {p}, {p}), RuleName.IMPR, ())
        assert check_inference(node, Calculus.GLSEQ).code is ViolationCode.ARITY_MISMATCH

    def test_bad_weakening(self):
        node = ProofTree(Sequent(SequentKind.GL, {q}, {q}), RuleName.WEAK, (leaf(SequentKind.GL, p),))
        violation = check_inference(node, Calculus.GLSEQ)
        assert violation.code is ViolationCode.SCHEMA_MISMATCH
        assert violation.formula == p

    def test_initial_sequents(self):
        assert check_inference(leaf(SequentKind.GL, p), Calculus.GLSEQ) is None
        bot = ProofTree(Sequent(SequentKind.GL, {BOT}, ()), RuleName.INIT_BOT)
        assert check_inference(bot, Calculus.GLSEQ) is None
        wide = ProofTree(Sequent(SequentKind.GL, {p, q}, {p}), RuleName.INIT)
        assert check_inference(wide, Calculus.GLSEQ).code is ViolationCode.SCHEMA_MISMATCH


class TestCheckProof:
    def test_d_axiom_cut_free_dseq2(self, d_axiom_proof_d2):
        report = check_proof(d_axiom_proof_d2, Calculus.DSEQ2, CutPolicy.NONE)
        assert report.valid and report.subformula_ok
        assert report.end_sequent == parse_sequent(f"=d> {D_AXIOM}")

    def test_four_step_cut_needs_policy(self, four_step_semi):
        assert not check_proof(four_step_semi, Calculus.DSEQ2, CutPolicy.NONE).valid
        report = check_proof(four_step_semi, Calculus.DSEQ2, CutPolicy.SEMI)
        assert report.valid
        assert report.cut_inventory
        assert all(c.boxed and c.in_subformulas for c in report.cut_inventory)
        assert all(c.kind is SequentKind.D for c in report.cut_inventory)

    def test_policy_violation_is_reported(self, four_step_semi):
        report = check_proof(four_step_semi, Calculus.DSEQ2, CutPolicy.NONE)
        assert any(v.code is ViolationCode.CUT_POLICY for v in report.violations)

    def test_wrong_calculus(self, four_step_semi):
        report = check_proof(four_step_semi, Calculus.DSEQ3)
        assert any(v.code is ViolationCode.RULE_NOT_IN_CALCULUS for v in report.violations)

    def test_consistency_in_dseq3(self):
        proof = prove(parse_sequent("=d> ~ box bot"), Calculus.DSEQ3).proof
        assert check_proof(proof, Calculus.DSEQ3, CutPolicy.NONE).valid

    def test_gl_end_sequent_stays_gl(self, lob_proof):
        report = check_proof(lob_proof, Calculus.DSEQ3)
        assert report.valid and report.conservativity_ok
        assert all(node.conclusion.kind is SequentKind.GL for node in lob_proof.nodes())

    def test_accepted_kinds(self):
        assert ACCEPTED_KINDS[Calculus.SSEQ] == {SequentKind.GL, SequentKind.S}
        assert SequentKind.S not in ACCEPTED_KINDS[Calculus.DSEQ2]


class TestRenderAndFiles:
    def test_render_starts_with_end_sequent(self, lob_proof):
        text = render_proof(lob_proof)
        first = text.splitlines()[0]
        assert first.startswith(f"=> {parse_formula(LOB)}")
        assert "[glbox]" in text

    def test_proof_file_round_trip(self, four_step_semi):
        data = proof_to_dict(four_step_semi, Calculus.DSEQ2)
        assert data["calculus"] == "dseq2"
        assert set(data["root"]) == {"seq", "rule", "ann", "premises"}
        loaded, calculus, meta = proof_from_dict(data)
        assert calculus is Calculus.DSEQ2 and meta == {}
        assert loaded.conclusion == parse_sequent(FOUR_STEP)
        assert check_proof(loaded, calculus, CutPolicy.SEMI).valid

    def test_unknown_rule(self):
        with pytest.raises(SerializationError, match="Unknown rule"):
            proof_from_dict({"calculus": "glseq", "root": {"seq": "p => p", "rule": "magic"}})

    def test_unknown_calculus(self):
        with pytest.raises(SerializationError):
            proof_from_dict({"calculus": "lk", "root": {"seq": "p => p", "rule": "init"}})

    def test_first_cut_is_on_boxed_subformula(self, four_step_semi):
        cut = first_node(four_step_semi, RuleName.CUT)
        assert cut.annotation.formula in {Box(Box(p)), Box(Box(Box(p))), Box(p)}


def step(text, rule, *premises, formula=None):
    annotation = Annotation(formula=parse_formula(formula)) if formula else None
    return ProofTree(parse_sequent(text), rule, premises, annotation)


def split_disjunction(arrow):
    """``box p | box q`` split into ``box p, box q`` by (->L) and (->R) at ``arrow``."""
    left = step(f"{arrow} box p, box q, ~ box p", RuleName.IMPR,
                step(f"box p {arrow} box p, box q, bot", RuleName.WEAK,
                     step(f"box p {arrow} box p", RuleName.INIT)))
    right = step(f"box q {arrow} box p, box q", RuleName.WEAK, step(f"box q {arrow} box q", RuleName.INIT))
    return step(f"box p | box q {arrow} box p, box q", RuleName.IMPL, left, right)


def d_axiom_tree(boxed_step):
    both = "box(box p | box q)"
    split = step(f"{both}, ~ box p =d> box q", RuleName.IMPL,
                 boxed_step,
                 step(f"{both}, bot =d> box q", RuleName.WEAK, step("bot =d>", RuleName.INIT_BOT)))
    return step(f"=d> {D_AXIOM}", RuleName.IMPR,
                step(f"{both} =d> box p | box q", RuleName.IMPR, split))


def d_axiom_tree_d2():
    inner = step("box p | box q, box(box p | box q) => box p, box q", RuleName.WEAK, split_disjunction("=>"))
    return d_axiom_tree(step("box(box p | box q) =d> box p, box q", RuleName.DBOX_GL, inner))


def d_axiom_tree_d3():
    inner = step("box(box p | box q) =s> box p, box q", RuleName.BOXL_S, split_disjunction("=s>"))
    return d_axiom_tree(step("box(box p | box q) =d> box p, box q", RuleName.DBOX_S, inner))


def boxed_step_d2(text, gamma):
    """``box gamma =d> box gamma`` shaped steps: init, weakening, (=>=d>box)."""
    return step(text, RuleName.DBOX_GL,
                step(f"{gamma}, box {gamma} => {gamma}", RuleName.WEAK, step(f"{gamma} => {gamma}", RuleName.INIT)))


def cut_on_box_box_p():
    return step("box box box p =d> box p", RuleName.CUT,
                boxed_step_d2("box box box p =d> box box p", "box box p"),
                boxed_step_d2("box box p =d> box p", "box p"),
                formula="box box p")


def cut_rejections(report):
    return [v for v in report.violations if v.code is ViolationCode.CUT_POLICY]


class TestHandBuiltProofs:
    def test_d_axiom_in_dseq2(self):
        proof = d_axiom_tree_d2()
        report = check_proof(proof, Calculus.DSEQ2, CutPolicy.NONE)
        assert report.valid, report.violations
        assert report.subformula_ok and not report.cut_inventory
        assert report.end_sequent == parse_sequent(f"=d> {D_AXIOM}")

    def test_d_axiom_in_dseq3(self):
        proof = d_axiom_tree_d3()
        report = check_proof(proof, Calculus.DSEQ3, CutPolicy.NONE)
        assert report.valid, report.violations
        assert report.subformula_ok

    def test_trees_stay_in_their_calculus(self):
        for proof, other, rule in ((d_axiom_tree_d2(), Calculus.DSEQ3, RuleName.DBOX_GL),
                                   (d_axiom_tree_d3(), Calculus.DSEQ2, RuleName.BOXL_S)):
            report = check_proof(proof, other)
            assert not report.valid
            assert {v.rule for v in report.violations if v.code is ViolationCode.RULE_NOT_IN_CALCULUS} >= {rule}

    def test_consistency_in_dseq2(self):
        proof = step("=d> ~ box bot", RuleName.IMPR,
                     step("box bot =d> bot", RuleName.WEAK,
                          step("box bot =d>", RuleName.DBOX_GL,
                               step("bot, box bot =>", RuleName.WEAK, step("bot =>", RuleName.INIT_BOT)))))
        assert check_proof(proof, Calculus.DSEQ2, CutPolicy.NONE).valid

    def test_consistency_in_dseq3(self):
        proof = step("=d> ~ box bot", RuleName.IMPR,
                     step("box bot =d> bot", RuleName.WEAK,
                          step("box bot =d>", RuleName.DBOX_S,
                               step("box bot =s>", RuleName.BOXL_S, step("bot =s>", RuleName.INIT_BOT)))))
        assert check_proof(proof, Calculus.DSEQ3, CutPolicy.NONE).valid

    def test_boxed_cut_is_semi_analytic(self):
        proof = cut_on_box_box_p()
        report = check_proof(proof, Calculus.DSEQ2, CutPolicy.SEMI)
        assert report.valid, report.violations
        (cut,) = report.cut_inventory
        assert cut.formula == parse_formula("box box p")
        assert cut.kind is SequentKind.D and cut.boxed and cut.in_subformulas

        rejected = cut_rejections(check_proof(proof, Calculus.DSEQ2, CutPolicy.NONE))
        assert [v.formula for v in rejected] == [parse_formula("box box p")]

    def test_broken_premise_is_caught(self):
        cut = cut_on_box_box_p()
        left, right = cut.premises
        broken = ProofTree(cut.conclusion, RuleName.CUT, (left, right.premises[0]), cut.annotation)
        report = check_proof(broken, Calculus.DSEQ2, CutPolicy.ANY)
        assert not report.valid
        assert report.violations[0].code is ViolationCode.ARROW_MISMATCH


class TestSemiAnalyticRejections:
    def test_unboxed_d_cut(self):
        proof = step("p =d> p", RuleName.CUT,
                     step("p =d> p", RuleName.INIT), step("p =d> p", RuleName.INIT), formula="p")
        assert check_proof(proof, Calculus.DSEQ2, CutPolicy.ANY).valid
        rejected = cut_rejections(check_proof(proof, Calculus.DSEQ2, CutPolicy.SEMI))
        assert [v.formula for v in rejected] == [p]

    def test_boxed_cut_outside_closure(self):
        proof = step("p =d> p", RuleName.CUT,
                     step("p =d> p, box q", RuleName.WEAK, step("p =d> p", RuleName.INIT)),
                     step("p, box q =d> p", RuleName.WEAK, step("p =d> p", RuleName.INIT)),
                     formula="box q")
        report = check_proof(proof, Calculus.DSEQ2, CutPolicy.SEMI)
        (cut,) = report.cut_inventory
        assert cut.boxed and not cut.in_subformulas
        assert [v.formula for v in cut_rejections(report)] == [Box(q)]

    @pytest.mark.parametrize("arrow,calculus", [("=>", Calculus.DSEQ2), ("=s>", Calculus.DSEQ3)])
    def test_cut_below_other_arrows(self, arrow, calculus):
        proof = step(f"box p {arrow} box p", RuleName.CUT,
                     step(f"box p {arrow} box p", RuleName.INIT), step(f"box p {arrow} box p", RuleName.INIT),
                     formula="box p")
        assert check_proof(proof, calculus, CutPolicy.ANY).valid
        rejected = cut_rejections(check_proof(proof, calculus, CutPolicy.SEMI))
        assert [v.formula for v in rejected] == [Box(p)]

import pytest

from conftest import FOUR_STEP, LOB, first_node
from provd.calculi import Annotation, Calculus, CutPolicy, ProofTree, RuleName, check_proof
from provd.errors import (
    ConfigurationMismatch,
    FormulaNotPresent,
    InputHasCuts,
    InvalidInputProof,
)
from provd.formula import Box, Implies, Sequent, SequentKind, parse_formula, parse_sequent
from provd.prover import prove
from provd.transforms import (
    RefSet,
    TransformLog,
    d2_to_d3,
    d3_to_d2,
    embed_gl_into_d,
    extract_ref_set,
    invert_impl_left,
    project_d_to_s,
    reduce_d_cut,
)

P = parse_formula


class TestEmbedding:
    @pytest.mark.parametrize("target", [Calculus.DSEQ2, Calculus.DSEQ3])
    def test_lob_as_d_theorem(self, lob_proof, target):
        out = embed_gl_into_d(lob_proof, target)
        assert out.conclusion == parse_sequent(f"=d> {LOB}")
        assert check_proof(out, target, CutPolicy.NONE).valid

    def test_rejects_non_gl(self, four_step_d3):
        with pytest.raises(InvalidInputProof):
            embed_gl_into_d(four_step_d3, Calculus.DSEQ3)

    def test_rejects_other_targets(self, lob_proof):
        with pytest.raises(InvalidInputProof):
            embed_gl_into_d(lob_proof, Calculus.SSEQ)


class TestProjection:
    def test_dseq3_to_sseq(self, four_step_d3):
        out = project_d_to_s(four_step_d3)
        assert out.conclusion == parse_sequent("box box box p =s> box p")
        assert check_proof(out, Calculus.SSEQ).valid

    def test_dseq2_to_sseq(self, d_axiom_proof_d2):
        out = project_d_to_s(d_axiom_proof_d2)
        assert out.conclusion.kind is SequentKind.S
        assert check_proof(out, Calculus.SSEQ, CutPolicy.NONE).valid


class TestInversion:
    def test_both_sides(self):
        proof = prove(parse_sequent("p -> q, p => q"), Calculus.GLSEQ).proof
        first, second = invert_impl_left(proof, P("p -> q"))
        assert first.conclusion == parse_sequent("p => q, p")
        assert second.conclusion == parse_sequent("q, p => q")
        for side in (first, second):
            assert check_proof(side, Calculus.GLSEQ).valid

    def test_through_initial_sequent(self):
        a = P("p -> q")
        proof = prove(Sequent(SequentKind.GL, {a}, {a}), Calculus.GLSEQ).proof
        first, second = invert_impl_left(proof, a)
        assert first.conclusion == Sequent(SequentKind.GL, (), {a, P("p")})
        assert second.conclusion == Sequent(SequentKind.GL, {P("q")}, {a})

    def test_formula_must_be_present(self, lob_proof):
        with pytest.raises(FormulaNotPresent):
            invert_impl_left(lob_proof, P("p -> q"))


class TestReflectionSets:
    def test_d_axiom_subtree(self, dbox_s_subtree):
        refs, proof = extract_ref_set(dbox_s_subtree)
        assert refs.sigma == {P("box p | box q")}
        assert proof.conclusion.kind is SequentKind.GL
        assert refs.ref <= proof.conclusion.left
        assert check_proof(proof, Calculus.GLSEQ).valid

    def test_ref_formulas(self):
        refs = RefSet(frozenset({P("p")}))
        assert refs.ref == {Implies(Box(P("p")), P("p"))}

    def test_rejects_cuts(self, four_step_semi):
        with pytest.raises(InputHasCuts):
            extract_ref_set(four_step_semi)


class TestD3ToD2:
    def test_d_axiom(self, d_axiom_proof):
        out = d3_to_d2(d_axiom_proof)
        assert out.conclusion == d_axiom_proof.conclusion
        report = check_proof(out, Calculus.DSEQ2, CutPolicy.SEMI)
        assert report.valid
        assert report.cut_inventory
        assert {c.formula for c in report.cut_inventory} == {P("box(box p | box q)")}

    def test_four_step(self, four_step_d3):
        out = d3_to_d2(four_step_d3)
        assert out.conclusion == parse_sequent(FOUR_STEP)
        assert check_proof(out, Calculus.DSEQ2, CutPolicy.SEMI).valid

    def test_rejects_cuts(self, four_step_semi):
        with pytest.raises(InputHasCuts):
            d3_to_d2(four_step_semi)


class TestD2ToD3:
    def test_four_step(self, four_step_semi):
        log = TransformLog()
        out = d2_to_d3(four_step_semi, log)
        assert out.conclusion == parse_sequent(FOUR_STEP)
        assert check_proof(out, Calculus.DSEQ3, CutPolicy.NONE).valid
        data = log.to_dict()
        assert data["reduced"] + data["reproved"] >= 1
        assert len(data["steps"]) == len(log.entries)

    def test_round_trip(self, d_axiom_proof):
        back = d2_to_d3(d3_to_d2(d_axiom_proof))
        assert back.conclusion == d_axiom_proof.conclusion
        assert check_proof(back, Calculus.DSEQ3, CutPolicy.NONE).valid

    def test_reduce_d_cut_needs_boxed_steps(self, four_step_semi):
        cut = first_node(four_step_semi, RuleName.CUT)
        with pytest.raises(ConfigurationMismatch):
            reduce_d_cut(cut)

    def test_reduce_d_cut_on_boxed_steps(self):
        phi = P("box box p")
        left = prove(parse_sequent("box box box p =d> box p, box box p"), Calculus.DSEQ3).proof
        right = prove(parse_sequent("box box box p, box box p =d> box p"), Calculus.DSEQ3).proof
        assert left.rule is RuleName.DBOX_S and right.rule is RuleName.DBOX_S
        cut = ProofTree(parse_sequent(FOUR_STEP), RuleName.CUT, (left, right), Annotation(formula=phi))
        reduced = reduce_d_cut(cut)
        assert reduced.conclusion == cut.conclusion
        assert check_proof(reduced, Calculus.DSEQ3).valid
        assert reduced.count(RuleName.CUT) == 1
        assert first_node(reduced, RuleName.CUT).conclusion.kind is SequentKind.S

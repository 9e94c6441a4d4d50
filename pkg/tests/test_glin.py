import pytest
from hypothesis import given, settings

from conftest import CONSISTENCY, D_AXIOM, LOB, REFLECTION, formulas
from provd.calculi import Calculus
from provd.formula import Sequent, SequentKind, Var, parse_formula
from provd.glin import (
    NatFrameModel,
    OmegaSearch,
    check_tail_soundness,
    gllin_valid,
    linearity_instance,
    nat_model_as_kripke,
    omega_refute_search,
    s_gllin_valid,
)
from provd.kripke import TailLimitModel, eval_at, eval_tail_limit
from provd.prover import prove

P = parse_formula


class TestGLLin:
    def test_linearity_valid(self):
        verdict = gllin_valid(linearity_instance(Var("p"), Var("q")), bound=6)
        assert verdict.valid and verdict.status == "valid-at-bound"
        assert verdict.bound == 6

    def test_linearity_not_in_gl(self):
        f = linearity_instance(Var("p"), Var("q"))
        assert not prove(Sequent(SequentKind.GL, (), {f}), Calculus.GLSEQ).provable

    def test_reflection_witness(self):
        verdict = gllin_valid(P(REFLECTION))
        assert verdict.status == "invalid"
        assert verdict.world == 0
        assert verdict.witness.size == 1
        assert verdict.witness.val[0] == {"p": False}
        assert not verdict.witness.evaluate(0, P(REFLECTION))

    def test_lob(self):
        assert gllin_valid(P(LOB)).valid


class TestSGLLin:
    @pytest.mark.parametrize("text", [REFLECTION, CONSISTENCY, D_AXIOM])
    def test_valid(self, text):
        assert s_gllin_valid(P(text)).valid

    def test_refuted_at_limit(self):
        verdict = s_gllin_valid(P("box p"))
        assert not verdict.valid
        assert isinstance(verdict.witness, TailLimitModel)
        assert verdict.world == "limit"
        assert not eval_tail_limit(verdict.witness, P("box p")).at_limit


class TestOmega:
    def test_reflection_refuted(self):
        result = omega_refute_search(P(REFLECTION))
        assert result.refuted and result.exhaustive
        assert result.status == "refuted"
        assert not eval_tail_limit(result.model, P(REFLECTION)).at_limit

    @pytest.mark.parametrize("text", [CONSISTENCY, D_AXIOM])
    def test_d_theorems_survive(self, text):
        result = omega_refute_search(P(text), prefix_len_max=2)
        assert not result.refuted
        assert result.status == "no-counterexample-found"
        assert result.examined > 0

    def test_sampling_above_var_bound(self):
        result = OmegaSearch(exhaustive_var_bound=0, samples=200, seed=3, verbose=0).refute(P("p"))
        assert result.refuted and not result.exhaustive

    def test_tail_soundness(self):
        assert check_tail_soundness(P(REFLECTION)) is None
        assert check_tail_soundness(P(D_AXIOM)) is None
        model = check_tail_soundness(P("p"))
        assert model is not None
        assert not eval_tail_limit(model, P("p")).eventually_always


class TestNatFrames:
    def test_negative_size(self):
        with pytest.raises(ValueError):
            NatFrameModel(-1)

    def test_truth_vector(self):
        m = NatFrameModel(2, {0: {"p": True}, 1: {"p": False}})
        assert list(m.truth(P("box p"))) == [True, True, False]


_NAT = NatFrameModel(3, {0: {"p": True}, 2: {"p": True, "q": True}})
_NAT_KRIPKE = nat_model_as_kripke(_NAT)


@given(formulas(("p", "q"), max_leaves=8))
@settings(max_examples=150, deadline=None)
def test_nat_frames_agree_with_kripke(f):
    for w in range(_NAT.size + 1):
        assert _NAT.evaluate(w, f) == eval_at(_NAT_KRIPKE, str(w), f)


@given(formulas(("p",), max_leaves=6))
@settings(max_examples=50, deadline=None)
def test_valid_at_bound_is_tail_sound(f):
    if gllin_valid(f).valid:
        assert check_tail_soundness(f, prefix_len_max=1) is None

import pytest
from hypothesis import strategies as st

from provd.calculi import Calculus, CutPolicy, RuleName
from provd.formula import BOT, Box, Implies, Var, parse_formula, parse_sequent
from provd.kripke import validate_model
from provd.prover import prove

# Formulas decided in several test modules
LOB = "box(box p -> p) -> box p"
K_AXIOM = "box(p -> q) -> box p -> box q"
D_AXIOM = "box(box p | box q) -> box p | box q"
CONSISTENCY = "~ box bot"
REFLECTION = "box p -> p"
FOUR_STEP = "box box box p =d> box p"


def formulas(names=("p", "q"), max_leaves=8):
    """Hypothesis strategy for core formulas."""
    leaves = st.one_of(st.just(BOT), st.sampled_from([Var(n) for n in names]))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(Box, sub), st.builds(Implies, sub, sub)),
        max_leaves=max_leaves,
    )


@pytest.fixture
def theorem_48_model():
    """Two worlds, x sees y, p false at y."""
    return validate_model(["x", "y"], [("x", "y")], {"x": {}, "y": {"p": False}})


@pytest.fixture(scope="session")
def d_axiom_proof():
    return prove(parse_sequent(f"=d> {D_AXIOM}"), Calculus.DSEQ3).proof


@pytest.fixture(scope="session")
def d_axiom_proof_d2():
    return prove(parse_sequent(f"=d> {D_AXIOM}"), Calculus.DSEQ2).proof


@pytest.fixture(scope="session")
def four_step_semi():
    return prove(parse_sequent(FOUR_STEP), Calculus.DSEQ2, CutPolicy.SEMI).proof


@pytest.fixture(scope="session")
def four_step_d3():
    return prove(parse_sequent(FOUR_STEP), Calculus.DSEQ3).proof


@pytest.fixture(scope="session")
def lob_proof():
    return prove(parse_sequent(f"=> {LOB}"), Calculus.GLSEQ).proof


def first_node(p, rule):
    return next(node for node in p.nodes() if node.rule is rule)


@pytest.fixture
def f():
    return parse_formula


@pytest.fixture
def dbox_s_subtree(d_axiom_proof):
    return first_node(d_axiom_proof, RuleName.DBOX_S).premises[0]

from .calculi import Calculus, CutPolicy, ProofTree, RuleName, check_proof, render_proof
from .formula import (
    Box,
    Implies,
    Sequent,
    SequentKind,
    Var,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)
from .fuzz import FuzzHarness, FuzzReport, fuzz_round
from .glin import (
    NatFrameModel,
    OmegaSearch,
    check_tail_soundness,
    gllin_valid,
    omega_refute_search,
    s_gllin_valid,
)
from .hilbert import (
    HilbertBuilder,
    HilbertProof,
    SystemId,
    check_hilbert_proof,
    derive_collapse_lemma,
    recognize_axiom,
    seq_proof_to_hilbert,
    translate_hilbert_d2_d,
)
from .kripke import (
    Countermodel,
    KripkeModel,
    TailLimitModel,
    build_tail_limit,
    eval_at,
    eval_tail_limit,
    validate_model,
)
from .prover import ProofSearch, Verdict, extract_countermodel, prove, saturate
from .transforms import (
    TransformLog,
    d2_to_d3,
    d3_to_d2,
    embed_gl_into_d,
    extract_ref_set,
    invert_impl_left,
    project_d_to_s,
    reduce_d_cut,
)
from .version import __version__

__all__ = [
    "Calculus", "CutPolicy", "ProofTree", "RuleName", "check_proof", "render_proof",
    "Box", "Implies", "Sequent", "SequentKind", "Var",
    "parse_formula", "parse_sequent", "print_formula", "print_sequent",
    "FuzzHarness", "FuzzReport", "fuzz_round",
    "NatFrameModel", "OmegaSearch", "check_tail_soundness", "gllin_valid",
    "omega_refute_search", "s_gllin_valid",
    "HilbertBuilder", "HilbertProof", "SystemId", "check_hilbert_proof",
    "derive_collapse_lemma", "recognize_axiom", "seq_proof_to_hilbert",
    "translate_hilbert_d2_d",
    "Countermodel", "KripkeModel", "TailLimitModel", "build_tail_limit", "eval_at",
    "eval_tail_limit", "validate_model",
    "ProofSearch", "Verdict", "extract_countermodel", "prove", "saturate",
    "TransformLog", "d2_to_d3", "d3_to_d2", "embed_gl_into_d", "extract_ref_set",
    "invert_impl_left", "project_d_to_s", "reduce_d_cut",
    "__version__",
]

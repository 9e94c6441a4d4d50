# examples/ex2_d_axiom_transforms.py


"""
Walks the D axiom  box(box p | box q) -> box p | box q  through the
proof transformations:

    1. Cut-free Dseq3 proof found by the prover
    2. Dseq3 -> Dseq2: the (=s>=d>box) steps become cuts on boxed
       reflection formulas
    3. Dseq2 -> Dseq3: the cuts are removed again
    4. D -> S projection
    5. Hilbert proofs in DH3, DH2 and DH

Every intermediate proof is re-checked and its size is reported.
"""

from provd import (
    Calculus,
    CutPolicy,
    RuleName,
    TransformLog,
    check_hilbert_proof,
    check_proof,
    d2_to_d3,
    d3_to_d2,
    parse_sequent,
    project_d_to_s,
    prove,
    seq_proof_to_hilbert,
    translate_hilbert_d2_d,
)

sequent = parse_sequent("=d> box(box p | box q) -> box p | box q")


def describe(label, p, calculus, policy=CutPolicy.ANY):
    report = check_proof(p, calculus, policy)
    n_nodes = sum(1 for _ in p.nodes())
    print(f"{label:32s} {calculus.value:6s} valid={report.valid} nodes={n_nodes} "
          f"cuts={p.count(RuleName.CUT)}")
    return report


# ---------- Sequent calculi ----------
print("\n========== Sequent proofs ==========")
d3 = prove(sequent, Calculus.DSEQ3).proof
describe("Found by search", d3, Calculus.DSEQ3, CutPolicy.NONE)

d2 = d3_to_d2(d3)
report = describe("Dseq3 -> Dseq2", d2, Calculus.DSEQ2, CutPolicy.SEMI)
for cut in report.cut_inventory:
    print(f"    cut on {cut.formula} (boxed={cut.boxed}, analytic={cut.in_subformulas})")

log = TransformLog()
back = d2_to_d3(d2, log)
describe("Dseq2 -> Dseq3", back, Calculus.DSEQ3, CutPolicy.NONE)
print(f"    {log.to_dict()['reduced']} cut(s) reduced, {log.to_dict()['reproved']} reproved")

s_proof = project_d_to_s(d3)
describe("D -> S", s_proof, Calculus.SSEQ)

# ---------- Hilbert systems ----------
print("\n========== Hilbert proofs ==========")
for label, proof in (
    ("DH3 from Dseq3", seq_proof_to_hilbert(d3, Calculus.DSEQ3)),
    ("DH2 from Dseq2", seq_proof_to_hilbert(d2, Calculus.DSEQ2)),
):
    print(f"{label:32s} {check_hilbert_proof(proof).summary()} ({len(proof)} lines)")

dh = translate_hilbert_d2_d(seq_proof_to_hilbert(d2, Calculus.DSEQ2), "dh")
print(f"{'DH from DH2':32s} {check_hilbert_proof(dh).summary()} ({len(dh)} lines)")

# examples/ex1_golden_formulas.py


"""
Decides a handful of well-known formulas of provability logic in every
calculus that accepts them, and prints one comparison table.

Formulas:
    - Lob's axiom                 box(box p -> p) -> box p
    - K                           box(p -> q) -> box p -> box q
    - Consistency                 ~box bot
    - The D axiom                 box(box p | box q) -> box p | box q
    - Reflection                  box p -> p

Each formula is read as a =>-, =s>- and =d>-sequent. The table shows
which logics prove it (GL, S, D) and, for unprovable cases, at which world
the extracted countermodel refutes it.
"""

import pandas as pd
from provd import Calculus, CutPolicy, Sequent, SequentKind, parse_formula, prove

formulas = {
    "Lob": "box(box p -> p) -> box p",
    "K": "box(p -> q) -> box p -> box q",
    "Consistency": "~ box bot",
    "D axiom": "box(box p | box q) -> box p | box q",
    "Reflection": "box p -> p",
}

# (sequent kind, calculus, cut policy) per logic
configurations = [
    ("GL", SequentKind.GL, Calculus.GLSEQ, CutPolicy.NONE),
    ("S", SequentKind.S, Calculus.SSEQ, CutPolicy.NONE),
    ("D (dseq2, analytic cuts)", SequentKind.D, Calculus.DSEQ2, CutPolicy.SEMI),
    ("D (dseq3)", SequentKind.D, Calculus.DSEQ3, CutPolicy.NONE),
]

rows = []
for name, text in formulas.items():
    print(f"\n========== {name}: {text} ==========")
    f = parse_formula(text)
    row = {"Formula": name}
    for label, kind, calculus, policy in configurations:
        verdict = prove(Sequent(kind, (), {f}), calculus, policy)
        if verdict.provable:
            row[label] = f"yes ({len(list(verdict.proof.nodes()))} nodes)"
        else:
            cm = verdict.countermodel()
            row[label] = f"no (refuted at {cm.world})"
        print(f"{label:28s} {row[label]}")
    rows.append(row)

# Display summary table
summary_df = pd.DataFrame(rows)
print("\n========== Verdicts ==========")
print(summary_df.to_string(index=False))

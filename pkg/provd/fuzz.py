# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Seeded cross-validation of prover, checker and semantics.

Each round draws random formulas, forms GL-, S- and D-sequents from them
and runs every prover configuration that accepts the sequent. Every proof
is re-checked by ``check_proof`` and every countermodel re-evaluated. The
verdicts are compared against each other:

- GL-sequents get the same verdict in all four calculi,
- Dseq2 with analytic cuts agrees with cut-free Dseq3,
- cut-free Dseq2 never proves what Dseq2 with analytic cuts refutes,
- a provable GL-sequent stays provable as a D-sequent, and a provable
  D-sequent stays provable as an S-sequent.

The formula of each GL-sequent is also decided over nat-frames at the
default bound and two worlds beyond it; the verdicts must agree, and a
GL-provable formula must not be refuted there.

Any disagreement is an anomaly of the report, never an exception.
"""

import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd

from provd.calculi import Calculus, CutPolicy, check_proof
from provd.config import load_defaults
from provd.errors import InternalInvariantError
from provd.formula import BOT, Box, Implies, Sequent, SequentKind, Var, print_formula, sequent_formula
from provd.glin import gllin_valid
from provd.prover import ProofSearch, extract_countermodel

logger = logging.getLogger(__name__)

_NAMES = ("p", "q", "r", "s", "t", "u")

# (kind, calculus, policy) configurations run on each sequent
CONFIGURATIONS = (
    (SequentKind.GL, Calculus.GLSEQ, CutPolicy.NONE),
    (SequentKind.GL, Calculus.SSEQ, CutPolicy.NONE),
    (SequentKind.GL, Calculus.DSEQ2, CutPolicy.NONE),
    (SequentKind.GL, Calculus.DSEQ2, CutPolicy.SEMI),
    (SequentKind.GL, Calculus.DSEQ3, CutPolicy.NONE),
    (SequentKind.S, Calculus.SSEQ, CutPolicy.NONE),
    (SequentKind.S, Calculus.DSEQ3, CutPolicy.NONE),
    (SequentKind.D, Calculus.DSEQ2, CutPolicy.NONE),
    (SequentKind.D, Calculus.DSEQ2, CutPolicy.SEMI),
    (SequentKind.D, Calculus.DSEQ3, CutPolicy.NONE),
)


def _label(kind, calculus, policy):
    return f"{kind.value}:{calculus.value}/{policy.value}"


def variable_names(n):
    return [_NAMES[i] if i < len(_NAMES) else f"p{i}" for i in range(n)]


class FormulaGenerator:
    """
    Random core formulas with a bounded number of connectives.

    A formula with ``n`` connectives is a box with probability
    ``box_weight``, otherwise an implication whose ``n - 1`` remaining
    connectives are split uniformly between its sides. Leaves are ``bot``
    with probability ``bottom_weight``, otherwise a variable.
    """

    def __init__(self, rng, names, box_weight=None, bottom_weight=None):
        cfg = load_defaults("fuzz", box_weight=box_weight, bottom_weight=bottom_weight)
        self.rng = rng
        self.names = list(names) or ["p"]
        self.box_weight = cfg["box_weight"]
        self.bottom_weight = cfg["bottom_weight"]

    def formula(self, max_connectives):
        n = int(self.rng.integers(0, max_connectives + 1))
        return self._build(n)

    def _build(self, n):
        if n == 0:
            if self.rng.random() < self.bottom_weight:
                return BOT
            return Var(self.names[int(self.rng.integers(0, len(self.names)))])
        if self.rng.random() < self.box_weight:
            return Box(self._build(n - 1))
        k = int(self.rng.integers(0, n))
        return Implies(self._build(k), self._build(n - 1 - k))


@dataclass
class FuzzCase:
    index: int
    left: list
    right: list
    verdicts: dict = field(default_factory=dict)
    proofs: int = 0
    proofs_ok: int = 0
    countermodels: int = 0
    countermodels_ok: int = 0
    gllin: bool = None
    anomalies: list = field(default_factory=list)


@dataclass
class FuzzReport:
    """Per-case records of one round plus their summed counts."""

    seed: int
    iterations: int
    size: int
    vars: int
    cases: list = field(default_factory=list)

    @property
    def summary(self):
        return {
            "cases": len(self.cases),
            "proofs": sum(c.proofs for c in self.cases),
            "proofs_ok": sum(c.proofs_ok for c in self.cases),
            "countermodels": sum(c.countermodels for c in self.cases),
            "countermodels_ok": sum(c.countermodels_ok for c in self.cases),
            "anomalies": sum(len(c.anomalies) for c in self.cases),
        }

    @property
    def anomalies(self):
        return [(c.index, a) for c in self.cases for a in c.anomalies]

    @property
    def ok(self):
        return not any(c.anomalies for c in self.cases)

    def to_dict(self):
        data = asdict(self)
        data["summary"] = self.summary
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_dataframe(self):
        """One row per case and configuration."""
        rows = []
        for case in self.cases:
            for label, provable in sorted(case.verdicts.items()):
                kind, config = label.split(":", 1)
                calculus, policy = config.split("/")
                rows.append({
                    "case": case.index,
                    "left": " , ".join(case.left),
                    "right": " , ".join(case.right),
                    "kind": kind,
                    "calculus": calculus,
                    "policy": policy,
                    "provable": provable,
                    "anomalies": len(case.anomalies),
                })
        columns = ["case", "left", "right", "kind", "calculus", "policy", "provable", "anomalies"]
        return pd.DataFrame(rows, columns=columns)

    def export_csv(self, filename="fuzz_report.csv"):
        self.to_dataframe().to_csv(filename, index=False)
        logger.info("Fuzz report exported to %s", filename)


class FuzzHarness:
    """
    Runs seeded fuzz rounds.

    Parameters:
        seed (int):
            Seed of the numpy generator; a round is a function of it.
        size (int):
            Maximum number of connectives per formula. 0 gives atoms only.
        n_vars (int):
            Number of propositional variables.
        verbose (int, optional):
            0 = silent, 1 = basic (default), 2+ = detailed.
    """

    def __init__(self, seed=1, size=10, n_vars=3, verbose=1):
        if size < 0 or n_vars < 1:
            raise ValueError(f"Need size >= 0 and at least one variable, got {size}, {n_vars}.")
        self.seed = seed
        self.size = size
        self.n_vars = n_vars
        self.verbose = verbose
        self.left_every = load_defaults("fuzz")["left_formula_every"]

    # ---------- Public API ----------
    def run(self, iterations):
        rng = np.random.default_rng(self.seed)
        gen = FormulaGenerator(rng, variable_names(self.n_vars))
        report = FuzzReport(self.seed, iterations, self.size, self.n_vars)

        for i in range(iterations):
            right = [gen.formula(self.size)]
            left = [gen.formula(self.size)] if self.left_every and i % self.left_every == 1 else []
            case = self.check_case(i, left, right)
            report.cases.append(case)
            if case.anomalies:
                logger.warning("Case %d: %s", i, "; ".join(case.anomalies))
            elif self.verbose >= 2:
                logger.debug("Case %d: %s", i, case.verdicts)
            if self.verbose >= 1 and (i + 1) % 50 == 0:
                logger.info("%d/%d cases checked", i + 1, iterations)

        if self.verbose >= 1:
            logger.info("Fuzz round done: %s", report.summary)
        return report

    def check_case(self, index, left, right):
        case = FuzzCase(
            index, [print_formula(f) for f in left], [print_formula(f) for f in right]
        )
        found = {}
        for kind, calculus, policy in CONFIGURATIONS:
            s = Sequent(kind, frozenset(left), frozenset(right))
            found[kind, calculus, policy] = self._decide(case, s, calculus, policy)
        self._compare(case, found)
        gl = Sequent(SequentKind.GL, frozenset(left), frozenset(right))
        gl_prov = found[SequentKind.GL, Calculus.GLSEQ, CutPolicy.NONE]
        self._check_gllin(case, sequent_formula(gl), gl_prov)
        return case

    # ---------- Internal helpers ----------
    def _decide(self, case, s, calculus, policy):
        label = _label(s.kind, calculus, policy)
        try:
            verdict = ProofSearch(calculus, policy, self_check=False, verbose=0).run(s)
        except InternalInvariantError as exc:
            case.anomalies.append(f"{label}: search failed: {exc}")
            return None

        case.verdicts[label] = verdict.provable
        if verdict.provable:
            case.proofs += 1
            report = check_proof(verdict.proof, calculus, policy)
            if report.valid and report.end_sequent == s:
                case.proofs_ok += 1
            else:
                case.anomalies.append(f"{label}: proof rejected by the checker")
        elif verdict.certificate is not None:
            case.countermodels += 1
            try:
                falsified = extract_countermodel(verdict.certificate).falsifies(s)
            except InternalInvariantError:
                falsified = False
            if falsified:
                case.countermodels_ok += 1
            else:
                case.anomalies.append(f"{label}: countermodel does not refute the sequent")
        elif not (s.kind is SequentKind.D and calculus is Calculus.DSEQ2 and policy is CutPolicy.NONE):
            case.anomalies.append(f"{label}: unprovable without a certificate")
        return verdict.provable

    @staticmethod
    def _check_gllin(case, f, gl_prov):
        verdict = gllin_valid(f)
        wider = gllin_valid(f, verdict.bound + 2)
        case.gllin = verdict.valid
        if verdict.valid != wider.valid:
            case.anomalies.append(
                f"GL_lin verdict changes between bounds {verdict.bound} and {wider.bound}"
            )
        if gl_prov and not verdict.valid:
            case.anomalies.append("GL-provable formula refuted on a nat-frame")

    @staticmethod
    def _compare(case, found):
        gl = {v for (kind, _, _), v in found.items() if kind is SequentKind.GL and v is not None}
        if len(gl) > 1:
            case.anomalies.append("GL-sequent verdicts differ between calculi")

        semi = found[SequentKind.D, Calculus.DSEQ2, CutPolicy.SEMI]
        cut_free = found[SequentKind.D, Calculus.DSEQ2, CutPolicy.NONE]
        d3 = found[SequentKind.D, Calculus.DSEQ3, CutPolicy.NONE]
        s_prov = found[SequentKind.S, Calculus.SSEQ, CutPolicy.NONE]
        gl_prov = found[SequentKind.GL, Calculus.GLSEQ, CutPolicy.NONE]

        if None not in (semi, d3) and semi != d3:
            case.anomalies.append("dseq2 with analytic cuts disagrees with cut-free dseq3")
        if cut_free and semi is False:
            case.anomalies.append("cut-free dseq2 proves what analytic dseq2 refutes")
        if gl_prov and d3 is False:
            case.anomalies.append("provable GL-sequent is unprovable as a D-sequent")
        if d3 and s_prov is False:
            case.anomalies.append("provable D-sequent is unprovable as an S-sequent")


def fuzz_round(seed, iterations=100, size=10, n_vars=3, verbose=0):
    """Run one seeded round; the report is a function of the arguments."""
    return FuzzHarness(seed, size, n_vars, verbose=verbose).run(iterations)

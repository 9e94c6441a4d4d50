# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Rule schemata of the four sequent calculi and the proof checker.

Membership of rules per calculus:

    glseq : LK on =>, glbox
    sseq  : LK on => and =s>, glbox, lift_s, boxl_s
    dseq2 : LK on => and =d>, glbox, dbox_gl
    dseq3 : LK on =>, =s> and =d>, glbox, lift_s, boxl_s, dbox_s

where LK = {init, init_bot, weak, impl, impr, cut} at the arrow of the
conclusion. The checker in this module is written independently of the
prover's rule application.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from provd.formula import (
    Bottom,
    Box,
    Implies,
    SequentKind,
    formula_key,
    print_sequent,
    subformula_closure,
)

logger = logging.getLogger(__name__)


class RuleName(Enum):
    INIT = "init"
    INIT_BOT = "init_bot"
    WEAK = "weak"
    IMPL = "impl"
    IMPR = "impr"
    CUT = "cut"
    GLBOX = "glbox"
    LIFT_S = "lift_s"
    BOXL_S = "boxl_s"
    DBOX_GL = "dbox_gl"
    DBOX_S = "dbox_s"


class Calculus(Enum):
    GLSEQ = "glseq"
    SSEQ = "sseq"
    DSEQ2 = "dseq2"
    DSEQ3 = "dseq3"


class CutPolicy(Enum):
    NONE = "none"
    SEMI = "semi"
    ANY = "any"


LK_RULES = (RuleName.INIT, RuleName.INIT_BOT, RuleName.WEAK,
            RuleName.IMPL, RuleName.IMPR, RuleName.CUT)

# (rule, conclusion arrow) -> premise arrows
MODAL_ARROWS = {
    RuleName.GLBOX: (SequentKind.GL, SequentKind.GL),
    RuleName.LIFT_S: (SequentKind.S, SequentKind.GL),
    RuleName.BOXL_S: (SequentKind.S, SequentKind.S),
    RuleName.DBOX_GL: (SequentKind.D, SequentKind.GL),
    RuleName.DBOX_S: (SequentKind.D, SequentKind.S),
}

ARITY = {
    RuleName.INIT: 0, RuleName.INIT_BOT: 0, RuleName.WEAK: 1, RuleName.IMPL: 2,
    RuleName.IMPR: 1, RuleName.CUT: 2, RuleName.GLBOX: 1, RuleName.LIFT_S: 1,
    RuleName.BOXL_S: 1, RuleName.DBOX_GL: 1, RuleName.DBOX_S: 1,
}


def _lk(kind):
    return {(rule, kind) for rule in LK_RULES}


_GL_PART = _lk(SequentKind.GL) | {(RuleName.GLBOX, SequentKind.GL)}
_S_PART = _lk(SequentKind.S) | {(RuleName.LIFT_S, SequentKind.S), (RuleName.BOXL_S, SequentKind.S)}

MEMBERSHIP = {
    Calculus.GLSEQ: frozenset(_GL_PART),
    Calculus.SSEQ: frozenset(_GL_PART | _S_PART),
    Calculus.DSEQ2: frozenset(_GL_PART | _lk(SequentKind.D) | {(RuleName.DBOX_GL, SequentKind.D)}),
    Calculus.DSEQ3: frozenset(
        _GL_PART | _S_PART | _lk(SequentKind.D) | {(RuleName.DBOX_S, SequentKind.D)}
    ),
}

# sequent kinds a calculus can prove
ACCEPTED_KINDS = {
    Calculus.GLSEQ: frozenset({SequentKind.GL}),
    Calculus.SSEQ: frozenset({SequentKind.GL, SequentKind.S}),
    Calculus.DSEQ2: frozenset({SequentKind.GL, SequentKind.D}),
    Calculus.DSEQ3: frozenset({SequentKind.GL, SequentKind.S, SequentKind.D}),
}


@dataclass(frozen=True)
class Annotation:
    """
    Optional instantiation data of a rule node.

    ``formula`` is the principal formula (impl, impr, boxl_s, init) or the
    cut formula. ``gamma``/``delta``/``phi`` record the unboxed Γ, Δ and φ
    of the modal rules.
    """

    formula: object = None
    gamma: frozenset = None
    delta: frozenset = None
    phi: object = None


@dataclass(frozen=True)
class ProofTree:
    conclusion: object
    rule: RuleName
    premises: tuple = ()
    annotation: Annotation = None

    def __post_init__(self):
        if not isinstance(self.premises, tuple):
            object.__setattr__(self, "premises", tuple(self.premises))

    def nodes(self):
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def count(self, rule):
        return sum(1 for node in self.nodes() if node.rule is rule)

    def weakened(self, left, right):
        """This proof followed by a weakening to ``left``/``right`` (if needed)."""
        c = self.conclusion
        left, right = frozenset(left), frozenset(right)
        if c.left == left and c.right == right:
            return self
        target = type(c)(c.kind, left, right)
        return ProofTree(target, RuleName.WEAK, (self,))


class ViolationCode(Enum):
    RULE_NOT_IN_CALCULUS = "RuleNotInCalculus"
    ARROW_MISMATCH = "ArrowMismatch"
    SCHEMA_MISMATCH = "SchemaMismatch"
    ARITY_MISMATCH = "ArityMismatch"
    CUT_POLICY = "CutPolicy"
    SUBFORMULA = "Subformula"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    rule: RuleName
    sequent: object
    message: str
    formula: object = None

    def __str__(self):
        extra = f" (formula: {self.formula})" if self.formula is not None else ""
        return f"[{self.code.value}] {self.rule.value} at '{self.sequent}': {self.message}{extra}"


# ---------- Schema checks ----------
def _unboxed(fs):
    return frozenset(f.inner for f in fs)


def _all_boxed(fs):
    return all(type(f) is Box for f in fs)


def _candidates(node, pool, shape=None):
    ann = node.annotation
    if ann is not None and ann.formula is not None:
        return [ann.formula]
    return sorted((f for f in pool if shape is None or type(f) is shape), key=formula_key)


def fits_impl(a, c, p1, p2):
    return (
        type(a) is Implies
        and a in c.left
        and p1.left | {a} == c.left
        and p2.left == p1.left | {a.right}
        and p1.right == c.right | {a.left}
        and p2.right == c.right
    )


def _fits_impr(a, c, p):
    if type(a) is not Implies or a not in c.right or p.left != c.left | {a.left}:
        return False
    return p.right in (c.right | {a.right}, (c.right - {a}) | {a.right})


def _fits_cut(phi, c, p1, p2):
    if phi not in p1.right or phi not in p2.left:
        return False
    lefts = (p1.left | (p2.left - {phi}), p1.left | p2.left)
    rights = ((p1.right - {phi}) | p2.right, p1.right | p2.right)
    return c.left in lefts and c.right in rights


def _fits_boxl(b, c, p):
    if type(b) is not Box or b not in c.left or p.right != c.right:
        return False
    return p.left in (c.left | {b.inner}, (c.left - {b}) | {b.inner})


def principal_formula(node):
    """The principal formula of an (->L), (->R) or (=s>boxL) step, reconstructed if not annotated."""
    c = node.conclusion
    prem = [p.conclusion for p in node.premises]
    if node.rule is RuleName.IMPL:
        pool, shape, fits = c.left, Implies, fits_impl
    elif node.rule is RuleName.IMPR:
        pool, shape, fits = c.right, Implies, _fits_impr
    elif node.rule is RuleName.BOXL_S:
        pool, shape, fits = c.left, Box, _fits_boxl
    else:
        return None
    for a in _candidates(node, pool, shape):
        if fits(a, c, *prem):
            return a
    return None


def cut_formula(node):
    """The formula a cut node cuts on, reconstructed if not annotated."""
    c = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    for phi in _candidates(node, p1.right & p2.left):
        if _fits_cut(phi, c, p1, p2):
            return phi
    return None


def _schema(node):
    """Return (message, formula) of the first schema failure, or None."""
    c = node.conclusion
    prem = [p.conclusion for p in node.premises]
    ann = node.annotation
    rule = node.rule

    if rule is RuleName.INIT:
        if len(c.left) == 1 and c.left == c.right:
            if ann is None or ann.formula is None or c.left == {ann.formula}:
                return None
        return "initial sequent must be exactly phi => phi", ann.formula if ann else None

    if rule is RuleName.INIT_BOT:
        if len(c.left) == 1 and type(next(iter(c.left))) is Bottom and not c.right:
            return None
        return "initial sequent must be exactly bot =>", None

    if rule is RuleName.WEAK:
        if prem[0].issubsequent(c):
            return None
        extra = sorted((prem[0].left - c.left) | (prem[0].right - c.right), key=formula_key)
        return "premise is not contained in the conclusion", extra[0]

    if rule is RuleName.IMPL:
        options = _candidates(node, c.left, Implies)
        if any(fits_impl(a, c, prem[0], prem[1]) for a in options):
            return None
        return "no principal implication on the left fits (->L)", options[0] if options else None

    if rule is RuleName.IMPR:
        options = _candidates(node, c.right, Implies)
        if any(_fits_impr(a, c, prem[0]) for a in options):
            return None
        return "no principal implication on the right fits (->R)", options[0] if options else None

    if rule is RuleName.CUT:
        if cut_formula(node) is not None:
            return None
        return "premises do not compose by cut", ann.formula if ann else None

    if rule is RuleName.GLBOX:
        if len(c.right) != 1 or not _all_boxed(c.right) or not _all_boxed(c.left):
            return "(GL=>) concludes box Gamma => box phi", None
        boxed = next(iter(c.right))
        gamma = _unboxed(c.left)
        if ann is not None and (
            (ann.gamma is not None and ann.gamma != gamma)
            or (ann.phi is not None and ann.phi != boxed.inner)
        ):
            return "annotation disagrees with the conclusion", ann.phi
        if prem[0].left == gamma | c.left | {boxed} and prem[0].right == {boxed.inner}:
            return None
        return "premise must be Gamma, box Gamma, box phi => phi", boxed

    if rule is RuleName.LIFT_S or rule is RuleName.DBOX_S:
        if rule is RuleName.DBOX_S and not (_all_boxed(c.left) and _all_boxed(c.right)):
            return "(=s>=d>box) needs boxed formulas on both sides", None
        if prem[0].left == c.left and prem[0].right == c.right:
            return None
        return "premise must carry the same formula sets", None

    if rule is RuleName.BOXL_S:
        options = _candidates(node, c.left, Box)
        if any(_fits_boxl(b, c, prem[0]) for b in options):
            return None
        return "no boxed formula on the left fits (=s>boxL)", options[0] if options else None

    if rule is RuleName.DBOX_GL:
        if not (_all_boxed(c.left) and _all_boxed(c.right)):
            return "(=d>box) needs boxed formulas on both sides", None
        gamma = _unboxed(c.left)
        if ann is not None and ann.gamma is not None and ann.gamma != gamma:
            return "annotation disagrees with the conclusion", None
        if prem[0].left == gamma | c.left and prem[0].right == c.right:
            return None
        return "premise must be Gamma, box Gamma => box Delta", None

    return f"unknown rule {rule}", None


def check_inference(node, calculus):
    """Validate one inference step. Returns ``None`` or a :class:`Violation`."""
    c = node.conclusion
    rule = node.rule

    def violation(code, message, formula=None):
        return Violation(code, rule, c, message, formula)

    if len(node.premises) != ARITY[rule]:
        return violation(
            ViolationCode.ARITY_MISMATCH,
            f"expected {ARITY[rule]} premise(s), got {len(node.premises)}",
        )

    if rule in MODAL_ARROWS:
        concl_kind, prem_kind = MODAL_ARROWS[rule]
        if c.kind is not concl_kind or node.premises[0].conclusion.kind is not prem_kind:
            return violation(
                ViolationCode.ARROW_MISMATCH,
                f"needs {prem_kind.arrow} above and {concl_kind.arrow} below",
            )
    elif any(p.conclusion.kind is not c.kind for p in node.premises):
        return violation(ViolationCode.ARROW_MISMATCH, "premises must share the conclusion's arrow")

    if (rule, c.kind) not in MEMBERSHIP[calculus]:
        return violation(
            ViolationCode.RULE_NOT_IN_CALCULUS,
            f"{rule.value} at {c.kind.arrow} is not a rule of {calculus.value}",
        )

    failure = _schema(node)
    if failure is not None:
        message, formula = failure
        return violation(ViolationCode.SCHEMA_MISMATCH, message, formula)
    return None


@dataclass(frozen=True)
class CutRecord:
    sequent: object
    formula: object
    kind: SequentKind
    boxed: bool
    in_subformulas: bool


@dataclass(frozen=True)
class ProofReport:
    valid: bool
    end_sequent: object
    violations: tuple
    cut_inventory: tuple
    subformula_ok: bool
    conservativity_ok: bool

    def summary(self):
        status = "valid" if self.valid else "invalid"
        return (
            f"{status}: {len(self.cut_inventory)} cut(s), "
            f"subformula property {'holds' if self.subformula_ok else 'fails'}"
        )


def check_proof(p, calculus, policy=CutPolicy.ANY):
    """
    Check every node of ``p`` against ``calculus`` and the cut ``policy``.

    Returns:
        ProofReport: ``valid`` is true iff every inference is schema-valid,
        every rule belongs to the calculus and every cut is admitted by the
        policy. Under ``CutPolicy.NONE`` the subformula property is also
        required.
    """
    end = p.conclusion
    universe = subformula_closure(end.formulas).formulas
    violations = []
    cuts = []
    subformula_ok = True
    kinds = set()
    non_s_rules = False

    for node in p.nodes():
        c = node.conclusion
        kinds.add(c.kind)
        if (node.rule, c.kind) not in MEMBERSHIP[Calculus.SSEQ]:
            non_s_rules = True
        if not c.formulas <= universe:
            subformula_ok = False

        found = check_inference(node, calculus)
        if found is not None:
            violations.append(found)
            continue

        if node.rule is RuleName.CUT:
            phi = cut_formula(node)
            in_sf = phi in subformula_closure(c.formulas).formulas
            record = CutRecord(c, phi, c.kind, type(phi) is Box, in_sf)
            cuts.append(record)
            if policy is CutPolicy.NONE:
                violations.append(Violation(
                    ViolationCode.CUT_POLICY, node.rule, c, "cuts are not allowed", phi))
            elif policy is CutPolicy.SEMI and not (
                record.kind is SequentKind.D and record.boxed and record.in_subformulas
            ):
                violations.append(Violation(
                    ViolationCode.CUT_POLICY, node.rule, c,
                    "only =d> cuts on boxed subformulas of the conclusion are allowed", phi))

    if policy is CutPolicy.NONE and not subformula_ok:
        violations.append(Violation(
            ViolationCode.SUBFORMULA, p.rule, end,
            "a formula outside the subformula closure of the end-sequent occurs"))

    conservativity_ok = True
    if end.kind is SequentKind.GL:
        conservativity_ok = kinds == {SequentKind.GL}
    elif end.kind is SequentKind.S:
        conservativity_ok = not non_s_rules

    report = ProofReport(
        valid=not violations,
        end_sequent=end,
        violations=tuple(violations),
        cut_inventory=tuple(cuts),
        subformula_ok=subformula_ok,
        conservativity_ok=conservativity_ok,
    )
    logger.debug("Checked proof of '%s' in %s: %s", end, calculus.value, report.summary())
    return report


def render_proof(p, sugar=False):
    """Indented text rendering, one sequent per line, conclusion first."""
    lines = []
    stack = [(p, 0)]
    while stack:
        node, depth = stack.pop()
        lines.append(f"{'  ' * depth}{print_sequent(node.conclusion, sugar)}    [{node.rule.value}]")
        stack.extend((q, depth + 1) for q in reversed(node.premises))
    return "\n".join(lines)

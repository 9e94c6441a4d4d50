# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Proof transformations between the four sequent calculi.

All functions take checked proofs and return proofs that are re-checked
before they are handed back; a failing re-check raises
:class:`~provd.errors.InternalInvariantError`. Weakenings introduced by
surgery sit directly above the inference that needs them.
"""

import logging
from dataclasses import dataclass, field
from itertools import product

from provd.calculi import (
    Annotation,
    Calculus,
    CutPolicy,
    ProofTree,
    RuleName,
    fits_impl,
    check_proof,
    cut_formula,
    principal_formula,
)
from provd.errors import (
    ConfigurationMismatch,
    FormulaNotPresent,
    InputHasCuts,
    InternalInvariantError,
    InvalidInputProof,
)
from provd.formula import Box, Implies, Sequent, SequentKind, formula_key
from provd.prover import prove

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefSet:
    """A set of formulas sigma and its reflection instances box sigma -> sigma."""

    sigma: frozenset = frozenset()

    @property
    def ref(self):
        return frozenset(Implies(Box(s), s) for s in self.sigma)

    def sorted_sigma(self):
        return sorted(self.sigma, key=formula_key)


@dataclass(frozen=True)
class LogEntry:
    sequent: Sequent
    action: str


@dataclass
class TransformLog:
    """
    Records how each =d> cut of a Dseq2 proof was removed: ``"reduced"``
    by the principal box reduction or ``"reproved"`` by proof search.
    """

    entries: list = field(default_factory=list)

    def record(self, sequent, action):
        self.entries.append(LogEntry(sequent, action))
        logger.debug("%s: %s", action, sequent)

    def count(self, action):
        return sum(1 for e in self.entries if e.action == action)

    def to_dict(self):
        return {
            "reduced": self.count("reduced"),
            "reproved": self.count("reproved"),
            "steps": [{"sequent": str(e.sequent), "action": e.action} for e in self.entries],
        }


# ---------- Helpers ----------
def _require_valid(p, calculus, policy=CutPolicy.ANY, what="input"):
    report = check_proof(p, calculus, policy)
    if not report.valid:
        raise InvalidInputProof(
            f"The {what} is not a valid {calculus.value} proof: {report.violations[0]}"
        )


def _ensure(p, calculus, policy, end, what):
    report = check_proof(p, calculus, policy)
    if not report.valid:
        raise InternalInvariantError(f"{what} produced an invalid proof: {report.violations[0]}")
    c = p.conclusion
    if c.left != end.left or c.right != end.right:
        raise InternalInvariantError(f"{what} changed the end-sequent to '{c}'.")
    return p


def _unbox(fs):
    return frozenset(f.inner for f in fs)


def _rekind(node, kind, premises):
    return ProofTree(node.conclusion.with_kind(kind), node.rule, premises, node.annotation)


def _unboxing_chain(node):
    """
    Replace ``Gamma, box Gamma => box Delta`` over (=d>box) by (=>=s>)
    followed by one (=s>boxL) per unboxed formula that is not already boxed
    on the left. Returns the S-proof of  box Gamma =s> box Delta.
    """
    premise = node.premises[0]
    boxed_left = node.conclusion.left
    current = ProofTree(premise.conclusion.with_kind(SequentKind.S), RuleName.LIFT_S, (premise,))
    left = current.conclusion.left
    for psi in sorted(_unbox(boxed_left), key=formula_key):
        if psi in boxed_left:
            continue
        left = left - {psi}
        current = ProofTree(
            Sequent(SequentKind.S, left, node.conclusion.right), RuleName.BOXL_S,
            (current,), Annotation(formula=Box(psi)),
        )
    return current


# ---------- GL into D ----------
def embed_gl_into_d(p, target):
    """
    Turn a GLseq proof of  Gamma => Delta  into a proof of  Gamma =d> Delta
    in ``target`` (dseq2 or dseq3).
    """
    if target not in (Calculus.DSEQ2, Calculus.DSEQ3):
        raise InvalidInputProof(f"Cannot embed into {target.value}; expected dseq2 or dseq3.")
    if p.conclusion.kind is not SequentKind.GL:
        raise InvalidInputProof(f"Expected a =>-sequent, got '{p.conclusion}'.")
    _require_valid(p, Calculus.GLSEQ)

    memo = {}

    def walk(node):
        found = memo.get(id(node))
        if found is not None:
            return found
        c = node.conclusion
        if node.rule is RuleName.GLBOX:
            gamma = _unbox(c.left)
            d_seq = c.with_kind(SequentKind.D)
            ann = Annotation(gamma=gamma, delta=_unbox(c.right))
            if target is Calculus.DSEQ2:
                out = ProofTree(d_seq, RuleName.DBOX_GL, (node.weakened(gamma | c.left, c.right),), ann)
            else:
                lifted = ProofTree(c.with_kind(SequentKind.S), RuleName.LIFT_S, (node,))
                out = ProofTree(d_seq, RuleName.DBOX_S, (lifted,), ann)
        else:
            out = _rekind(node, SequentKind.D, tuple(walk(q) for q in node.premises))
        memo[id(node)] = out
        return out

    result = walk(p)
    return _ensure(result, target, CutPolicy.ANY, p.conclusion, "GL embedding")


# ---------- D into S ----------
def _detect_d_calculus(p):
    for calculus in (Calculus.DSEQ3, Calculus.DSEQ2):
        if check_proof(p, calculus).valid:
            return calculus
    return None


def project_d_to_s(p):
    """Turn a Dseq2 or Dseq3 proof of  Gamma =d> Delta  into an Sseq proof of  Gamma =s> Delta."""
    if p.conclusion.kind is not SequentKind.D:
        raise InvalidInputProof(f"Expected a =d>-sequent, got '{p.conclusion}'.")
    if _detect_d_calculus(p) is None:
        _require_valid(p, Calculus.DSEQ3)

    memo = {}

    def walk(node):
        found = memo.get(id(node))
        if found is not None:
            return found
        if node.conclusion.kind is not SequentKind.D:
            out = node
        elif node.rule is RuleName.DBOX_S:
            out = node.premises[0]
        elif node.rule is RuleName.DBOX_GL:
            out = _unboxing_chain(node)
        else:
            out = _rekind(node, SequentKind.S, tuple(walk(q) for q in node.premises))
        memo[id(node)] = out
        return out

    result = walk(p)
    return _ensure(result, Calculus.SSEQ, CutPolicy.ANY, p.conclusion, "D-to-S projection")


# ---------- (->L) inversion ----------
def invert_impl_left(p, formula):
    """
    Invert (->L) on ``formula`` = a -> b, which must be on the left of the
    end-sequent of the GLseq proof ``p``.

    Returns:
        tuple: proofs of  Gamma => Delta, a  and of  b, Gamma => Delta, where
        Gamma is the end-sequent's left side without ``formula``.
    """
    if type(formula) is not Implies or formula not in p.conclusion.left:
        raise FormulaNotPresent(f"'{formula}' is not an implication on the left of '{p.conclusion}'.")
    _require_valid(p, Calculus.GLSEQ)

    a, b = formula.left, formula.right
    memo = {}

    def target(c, side):
        left = c.left - {formula}
        if side == 1:
            return Sequent(c.kind, left, c.right | {a})
        return Sequent(c.kind, left | {b}, c.right)

    def walk(node, side):
        key = (id(node), side)
        found = memo.get(key)
        if found is None:
            found = memo[key] = _invert_node(node, side)
        return found

    def _invert_node(node, side):
        c = node.conclusion
        goal = target(c, side)
        if formula not in c.left:
            return node.weakened(goal.left, goal.right)

        rule = node.rule
        if rule is RuleName.INIT:
            # {a -> b} => {a -> b}, rebuilt by (->R) over an initial sequent
            kept = a if side == 1 else b
            axiom = ProofTree(Sequent(c.kind, {kept}, {kept}), RuleName.INIT,
                              annotation=Annotation(formula=kept))
            top = axiom.weakened({a, kept}, {kept, b})
            if side == 1:
                below = Sequent(c.kind, (), {formula, a})
            else:
                below = Sequent(c.kind, {b}, {formula})
            return ProofTree(below, RuleName.IMPR, (top,), Annotation(formula=formula))

        if rule is RuleName.WEAK:
            return walk(node.premises[0], side).weakened(goal.left, goal.right)

        if rule is RuleName.IMPL:
            principal = principal_formula(node)
            prem = [q.conclusion for q in node.premises]
            if principal == formula or fits_impl(formula, c, *prem):
                chosen = node.premises[0] if side == 1 else node.premises[1]
                return walk(chosen, side).weakened(goal.left, goal.right)
            first = Sequent(c.kind, goal.left, goal.right | {principal.left})
            second = Sequent(c.kind, goal.left | {principal.right}, goal.right)
            p1 = walk(node.premises[0], side).weakened(first.left, first.right)
            p2 = walk(node.premises[1], side).weakened(second.left, second.right)
            return ProofTree(goal, RuleName.IMPL, (p1, p2), Annotation(formula=principal))

        if rule is RuleName.IMPR:
            principal = principal_formula(node)
            need = Sequent(c.kind, goal.left | {principal.left}, goal.right | {principal.right})
            q = walk(node.premises[0], side).weakened(need.left, need.right)
            return ProofTree(goal, RuleName.IMPR, (q,), Annotation(formula=principal))

        if rule is RuleName.CUT:
            phi = cut_formula(node)
            if phi == formula:
                return walk(node.premises[1], side).weakened(goal.left, goal.right)
            q1 = walk(node.premises[0], side)
            q2 = walk(node.premises[1], side)
            c1, c2 = q1.conclusion, q2.conclusion
            natural = Sequent(c.kind, c1.left | (c2.left - {phi}), (c1.right - {phi}) | c2.right)
            step = ProofTree(natural, RuleName.CUT, (q1, q2), Annotation(formula=phi))
            return step.weakened(goal.left, goal.right)

        raise InvalidInputProof(f"Cannot invert through {rule.value} at '{c}'.")

    results = []
    for side in (1, 2):
        out = walk(p, side)
        results.append(_ensure(out, Calculus.GLSEQ, CutPolicy.ANY, target(p.conclusion, side),
                               "(->L) inversion"))
    return tuple(results)


# ---------- Reflection sets ----------
def extract_ref_set(p):
    """
    Remove every (=s>boxL) from a cut-free Sseq proof of  Gamma =s> Delta.

    Returns:
        tuple: (RefSet, GLseq proof of  ref(Sigma), Gamma => Delta), where
        Sigma collects the unboxed principal formulas of the removed steps.
    """
    if p.count(RuleName.CUT):
        raise InputHasCuts(f"The Sseq proof of '{p.conclusion}' contains cuts.")
    _require_valid(p, Calculus.SSEQ)

    memo = {}

    def walk(node):
        found = memo.get(id(node))
        if found is None:
            found = memo[id(node)] = _extract_node(node)
        return found

    def _extract_node(node):
        c = node.conclusion
        if c.kind is SequentKind.GL:
            return frozenset(), node
        if node.rule is RuleName.LIFT_S:
            return frozenset(), node.premises[0]

        if node.rule is RuleName.BOXL_S:
            boxed = principal_formula(node)
            phi = boxed.inner
            inner_sigma, inner = walk(node.premises[0])
            sigma = inner_sigma | {phi}
            ref = RefSet(sigma).ref
            left = ref | c.left
            reflection = Implies(boxed, phi)
            axiom = ProofTree(Sequent(SequentKind.GL, {boxed}, {boxed}), RuleName.INIT,
                              annotation=Annotation(formula=boxed))
            p1 = axiom.weakened(left, c.right | {boxed})
            p2 = inner.weakened(left | {phi}, c.right)
            return sigma, ProofTree(Sequent(SequentKind.GL, left, c.right), RuleName.IMPL,
                                    (p1, p2), Annotation(formula=reflection))

        parts = [walk(q) for q in node.premises]
        sigma = frozenset().union(*(s for s, _ in parts))
        ref = RefSet(sigma).ref
        premises = tuple(
            proof.weakened(ref | q.conclusion.left, q.conclusion.right)
            for q, (_, proof) in zip(node.premises, parts)
        )
        conclusion = Sequent(SequentKind.GL, ref | c.left, c.right)
        return sigma, ProofTree(conclusion, node.rule, premises, node.annotation)

    sigma, proof = walk(p)
    refs = RefSet(sigma)
    end = Sequent(SequentKind.GL, refs.ref | p.conclusion.left, p.conclusion.right)
    _ensure(proof, Calculus.GLSEQ, CutPolicy.ANY, end, "Reflection-set extraction")
    return refs, proof


# ---------- Dseq3 into Dseq2 ----------
def _dbox_s_to_dseq2(node):
    """
    Replace (=s>=d>box) by (=d>box) steps joined by a cascade of cuts on the
    boxed reflection formulas.
    """
    c = node.conclusion
    refs, gl_proof = extract_ref_set(node.premises[0])
    sigma = refs.sorted_sigma()
    n = len(sigma)
    if n:
        logger.debug("Splitting '%s' over %d reflection formula(s)", c, n)

    # placement[i] is 1 when box sigma_i goes right, 2 when sigma_i goes left
    leaves = {}
    for placement in product((1, 2), repeat=n):
        proof = gl_proof
        for s, side in zip(sigma, placement):
            proof = invert_impl_left(proof, Implies(Box(s), s))[side - 1]
        extra_left = frozenset(Box(s) for s, side in zip(sigma, placement) if side == 2)
        extra_right = frozenset(Box(s) for s, side in zip(sigma, placement) if side == 1)
        d_left, d_right = c.left | extra_left, c.right | extra_right
        gamma = _unbox(d_left)
        premise = proof.weakened(gamma | d_left, d_right)
        leaves[placement] = ProofTree(
            Sequent(SequentKind.D, d_left, d_right), RuleName.DBOX_GL, (premise,),
            Annotation(gamma=gamma, delta=_unbox(d_right)),
        )

    def cascade(prefix):
        k = len(prefix)
        if k == n:
            return leaves[prefix]
        cut_on = Box(sigma[k])
        right = cascade(prefix + (1,))
        left = cascade(prefix + (2,))
        placed = list(zip(sigma, prefix))
        goal = Sequent(
            SequentKind.D,
            c.left | {Box(s) for s, side in placed if side == 2},
            c.right | {Box(s) for s, side in placed if side == 1},
        )
        return ProofTree(goal, RuleName.CUT, (right, left), Annotation(formula=cut_on))

    return cascade(())


def d3_to_d2(p):
    """Turn a cut-free Dseq3 proof into a Dseq2 proof whose cuts are all analytic."""
    if p.count(RuleName.CUT):
        raise InputHasCuts(f"The Dseq3 proof of '{p.conclusion}' contains cuts.")
    if p.conclusion.kind is SequentKind.S:
        raise InvalidInputProof(f"Dseq2 has no =s>-sequents: '{p.conclusion}'.")
    _require_valid(p, Calculus.DSEQ3)

    memo = {}

    def walk(node):
        found = memo.get(id(node))
        if found is not None:
            return found
        if node.conclusion.kind is SequentKind.GL:
            out = node
        elif node.rule is RuleName.DBOX_S:
            out = _dbox_s_to_dseq2(node)
        else:
            out = ProofTree(node.conclusion, node.rule, tuple(walk(q) for q in node.premises),
                            node.annotation)
        memo[id(node)] = out
        return out

    result = walk(p)
    return _ensure(result, Calculus.DSEQ2, CutPolicy.SEMI, p.conclusion, "Dseq3-to-Dseq2")


# ---------- Dseq2 into Dseq3 ----------
def reduce_d_cut(p):
    """
    Push a =d> cut whose premises both end in (=s>=d>box) up into a =s> cut
    under a single (=s>=d>box).

    Raises:
        ConfigurationMismatch: if ``p`` is not a cut of that shape.
    """
    if (
        p.rule is not RuleName.CUT
        or p.conclusion.kind is not SequentKind.D
        or len(p.premises) != 2
        or any(q.rule is not RuleName.DBOX_S for q in p.premises)
    ):
        raise ConfigurationMismatch(
            f"Expected a =d> cut over two (=s>=d>box) steps at '{p.conclusion}'."
        )
    phi = cut_formula(p)
    if phi is None or type(phi) is not Box:
        raise ConfigurationMismatch(f"The cut at '{p.conclusion}' is not on a boxed formula.")

    s1, s2 = (q.premises[0] for q in p.premises)
    c1, c2 = s1.conclusion, s2.conclusion
    s_cut = ProofTree(
        Sequent(SequentKind.S, c1.left | (c2.left - {phi}), (c1.right - {phi}) | c2.right),
        RuleName.CUT, (s1, s2), Annotation(formula=phi),
    )
    sc = s_cut.conclusion
    step = ProofTree(
        sc.with_kind(SequentKind.D), RuleName.DBOX_S, (s_cut,),
        Annotation(gamma=_unbox(sc.left), delta=_unbox(sc.right)),
    )
    return step.weakened(p.conclusion.left, p.conclusion.right)


def d2_to_d3(p, log=None):
    """
    Turn a Dseq2 proof (cut-free or with analytic cuts) into a cut-free
    Dseq3 proof. Cuts over two boxed steps are reduced and the resulting
    =s> cut is reproved in Sseq; every other cut is reproved in Dseq3.
    ``log`` (a :class:`TransformLog`) receives one entry per removed cut.
    """
    report = check_proof(p, Calculus.DSEQ2, CutPolicy.SEMI)
    if not report.valid:
        raise InvalidInputProof(
            f"The input is not a valid Dseq2 proof with analytic cuts: {report.violations[0]}"
        )
    log = log if log is not None else TransformLog()
    memo = {}

    def reprove(sequent, calculus):
        verdict = prove(sequent, calculus)
        if not verdict.provable:
            raise InternalInvariantError(f"'{sequent}' is derivable but {calculus.value} search fails.")
        return verdict.proof

    def walk(node):
        found = memo.get(id(node))
        if found is not None:
            return found
        c = node.conclusion
        if c.kind is not SequentKind.D:
            out = node
        elif node.rule is RuleName.DBOX_GL:
            out = ProofTree(c, RuleName.DBOX_S, (_unboxing_chain(node),),
                            Annotation(gamma=_unbox(c.left), delta=_unbox(c.right)))
        elif node.rule is RuleName.CUT:
            premises = tuple(walk(q) for q in node.premises)
            candidate = ProofTree(c, RuleName.CUT, premises, node.annotation)
            try:
                reduced = reduce_d_cut(candidate)
            except ConfigurationMismatch:
                log.record(c, "reproved")
                out = reprove(c, Calculus.DSEQ3)
            else:
                log.record(c, "reduced")
                # reduced is weak(dbox_s(cut_s)) or dbox_s(cut_s)
                top = reduced if reduced.rule is RuleName.DBOX_S else reduced.premises[0]
                s_proof = reprove(top.premises[0].conclusion, Calculus.SSEQ)
                rebuilt = ProofTree(top.conclusion, RuleName.DBOX_S, (s_proof,), top.annotation)
                out = rebuilt.weakened(c.left, c.right)
        else:
            out = ProofTree(c, node.rule, tuple(walk(q) for q in node.premises), node.annotation)
        memo[id(node)] = out
        return out

    result = walk(p)
    logger.info(
        "Dseq2-to-Dseq3 on '%s': %d cut(s) reduced, %d reproved",
        p.conclusion, log.count("reduced"), log.count("reproved"),
    )
    return _ensure(result, Calculus.DSEQ3, CutPolicy.NONE, p.conclusion, "Dseq2-to-Dseq3")

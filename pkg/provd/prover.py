# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Backward proof search for GLseq, Sseq, Dseq2 and Dseq3.

Every level works the same way. A sequent is first saturated by the
invertible rules, keeping the principal formula in the premises:

- (->R) and (->L) at every level,
- (=s>boxL) unboxing at the S level,
- for Dseq2 with analytic cuts, a cut on each boxed subformula of the
  end-sequent that is still missing, which places it left or right.

Each saturated branch that is not closed by an initial sequent is then
attacked with the one modal rule of its level, instantiated maximally:

- GL: (GL=>) on every boxed right formula in turn,
- S: (=>=s>) down to the same sets as a GL-sequent,
- D in Dseq2: (=d>box) to  Psi*, box Psi* => box Phi*,
- D in Dseq3: (=s>=d>box) to  box Psi* =s> box Phi*.

A failing branch yields a certificate from which a countermodel is read
off. Every rule application either enlarges the sequent or lowers its
arrow, so a branch never revisits a sequent and the search terminates.
"""

import logging
from dataclasses import dataclass
from enum import Enum

from provd.calculi import (
    ACCEPTED_KINDS,
    Annotation,
    Calculus,
    CutPolicy,
    ProofTree,
    RuleName,
    check_proof,
)
from provd.errors import (
    InternalInvariantError,
    PolicyUnsupported,
    SequentKindMismatch,
    WrongCertificateKind,
)
from provd.formula import (
    BOT,
    Box,
    Implies,
    Sequent,
    SequentKind,
    Var,
    formula_key,
    subformula_closure,
)
from provd.kripke import Countermodel, build_tail_limit, validate_model

logger = logging.getLogger(__name__)


class SaturationMode(Enum):
    IMP = "imp"
    IMP_BOXLEFT = "imp+boxleft"
    IMP_ANALYTIC_BOX = "imp+analytic-box"


class CertificateKind(Enum):
    GL = "GL"
    S = "S"
    D2 = "D2"
    D3 = "D3"


class FailureCertificate:
    kind = None


@dataclass(frozen=True, eq=False)
class GLCertificate(FailureCertificate):
    """A saturated unprovable GL-sequent and the failed (GL=>) attempts below it."""

    sequent: Sequent
    children: tuple = ()
    via: tuple = ()
    kind = CertificateKind.GL


@dataclass(frozen=True, eq=False)
class SCertificate(FailureCertificate):
    saturation: Sequent
    gl: GLCertificate
    kind = CertificateKind.S


@dataclass(frozen=True, eq=False)
class D2Certificate(FailureCertificate):
    saturation: Sequent
    psi_star: frozenset
    phi_star: frozenset
    gl: GLCertificate
    kind = CertificateKind.D2


@dataclass(frozen=True, eq=False)
class D3Certificate(FailureCertificate):
    saturation: Sequent
    psi_star: frozenset
    phi_star: frozenset
    s: SCertificate
    kind = CertificateKind.D3


@dataclass(frozen=True)
class Verdict:
    sequent: Sequent
    calculus: Calculus
    policy: CutPolicy
    provable: bool
    proof: ProofTree = None
    certificate: FailureCertificate = None

    def countermodel(self):
        if self.certificate is None:
            return None
        return extract_countermodel(self.certificate)


@dataclass(frozen=True)
class SaturationResult:
    """Open saturated branches, or the proof when every branch closes."""

    branches: tuple
    proof: ProofTree = None


@dataclass(frozen=True, eq=False)
class _Expansion:
    sequent: Sequent
    rule: RuleName = None
    annotation: Annotation = None
    children: tuple = ()
    closed: ProofTree = None

    @property
    def is_open(self):
        return self.rule is None and self.closed is None


def _unbox(fs):
    return frozenset(f.inner for f in fs)


def _close(s):
    """Initial sequent plus weakening, if ``s`` is closed."""
    common = s.left & s.right
    if common:
        phi = min(common, key=formula_key)
        axiom = ProofTree(Sequent(s.kind, {phi}, {phi}), RuleName.INIT,
                          annotation=Annotation(formula=phi))
        return axiom.weakened(s.left, s.right)
    if BOT in s.left:
        axiom = ProofTree(Sequent(s.kind, {BOT}, ()), RuleName.INIT_BOT)
        return axiom.weakened(s.left, s.right)
    return None


def _implication_step(s):
    """First unsaturated implication, right side before left side."""
    for a in sorted((f for f in s.right if type(f) is Implies), key=formula_key):
        if not (a.left in s.left and a.right in s.right):
            premise = Sequent(s.kind, s.left | {a.left}, s.right | {a.right})
            return RuleName.IMPR, a, (premise,)
    for a in sorted((f for f in s.left if type(f) is Implies), key=formula_key):
        if not (a.left in s.right or a.right in s.left):
            first = Sequent(s.kind, s.left, s.right | {a.left})
            second = Sequent(s.kind, s.left | {a.right}, s.right)
            return RuleName.IMPL, a, (first, second)
    return None


class ProofSearch:
    """
    One proof-search query. Owns its memo tables.

    Parameters:
        calculus (Calculus):
            The calculus to search in.
        policy (CutPolicy, optional):
            ``CutPolicy.NONE`` (default) or ``CutPolicy.SEMI`` (Dseq2 only).
        self_check (bool, optional):
            If True (default), emitted proofs are re-checked with the
            independent checker and countermodels re-verified.
        verbose (int, optional):
            0 = silent, 1 = basic (default), 2+ = detailed.
    """

    def __init__(self, calculus, policy=CutPolicy.NONE, self_check=True, verbose=1):
        if policy is CutPolicy.ANY:
            raise PolicyUnsupported("The prover never searches with unrestricted cuts.")
        if policy is CutPolicy.SEMI and calculus is not Calculus.DSEQ2:
            raise PolicyUnsupported(
                f"Analytic cuts are only searched in dseq2, not {calculus.value}."
            )
        self.calculus = calculus
        self.policy = policy
        self.self_check = self_check
        self.verbose = verbose
        self.universe = frozenset()
        self._expansions = {}
        self._results = {}
        self._active = set()

    # ---------- Public API ----------
    def run(self, s):
        if s.kind not in ACCEPTED_KINDS[self.calculus]:
            raise SequentKindMismatch(
                f"{self.calculus.value} does not prove {s.kind.arrow}-sequents ('{s}')."
            )
        self.universe = subformula_closure(s.formulas).boxed

        if s.kind is SequentKind.GL:
            outcome = self._gl(s)
        elif s.kind is SequentKind.S:
            outcome = self._s(s)
        elif self.calculus is Calculus.DSEQ2:
            outcome = self._d2(s)
        else:
            outcome = self._d3(s)

        if isinstance(outcome, ProofTree):
            verdict = Verdict(s, self.calculus, self.policy, True, proof=outcome)
            if self.self_check:
                report = check_proof(outcome, self.calculus, self.policy)
                if not report.valid:
                    raise InternalInvariantError(
                        f"Emitted proof of '{s}' fails the checker: {report.violations[0]}"
                    )
        else:
            verdict = Verdict(s, self.calculus, self.policy, False, certificate=outcome)
            if self.self_check and outcome is not None:
                extract_countermodel(outcome)

        if self.verbose >= 1:
            logger.info(
                "%s in %s (%s cuts): %s", s, self.calculus.value, self.policy.value,
                "provable" if verdict.provable else "unprovable",
            )
        return verdict

    def saturate(self, s, mode):
        self.universe = subformula_closure(s.formulas).boxed
        exp = self._expand(s, mode)
        leaves = self._open_leaves(exp)
        if leaves:
            return SaturationResult(tuple(leaf.sequent for leaf in leaves))
        return SaturationResult((), self._assemble(exp, {}))

    # ---------- Saturation ----------
    def _expand(self, s, mode):
        key = (s, mode)
        found = self._expansions.get(key)
        if found is not None:
            return found

        closed = _close(s)
        if closed is not None:
            exp = _Expansion(s, closed=closed)
        else:
            exp = self._expand_step(s, mode)
        self._expansions[key] = exp
        return exp

    def _expand_step(self, s, mode):
        step = _implication_step(s)
        if step is not None:
            rule, principal, premises = step
            children = tuple(self._expand(p, mode) for p in premises)
            return _Expansion(s, rule, Annotation(formula=principal), children)

        if mode is SaturationMode.IMP_BOXLEFT:
            for b in sorted(s.boxed_left(), key=formula_key):
                if b.inner not in s.left:
                    premise = Sequent(s.kind, s.left | {b.inner}, s.right)
                    return _Expansion(s, RuleName.BOXL_S, Annotation(formula=b),
                                      (self._expand(premise, mode),))

        if mode is SaturationMode.IMP_ANALYTIC_BOX:
            for b in sorted(self.universe - s.left - s.right, key=formula_key):
                right = Sequent(s.kind, s.left, s.right | {b})
                left = Sequent(s.kind, s.left | {b}, s.right)
                if self.verbose >= 2:
                    logger.debug("Analytic cut on %s below %s", b, s)
                return _Expansion(s, RuleName.CUT, Annotation(formula=b),
                                  (self._expand(right, mode), self._expand(left, mode)))

        return _Expansion(s)

    def _open_leaves(self, exp):
        leaves, stack, seen = [], [exp], set()
        while stack:
            node = stack.pop()
            if node.is_open:
                if node.sequent not in seen:
                    seen.add(node.sequent)
                    leaves.append(node)
            else:
                stack.extend(reversed(node.children))
        return leaves

    def _assemble(self, exp, leaf_proofs):
        if exp.closed is not None:
            return exp.closed
        if exp.is_open:
            return leaf_proofs[exp.sequent]
        premises = tuple(self._assemble(child, leaf_proofs) for child in exp.children)
        return ProofTree(exp.sequent, exp.rule, premises, exp.annotation)

    def _level(self, s, mode, descend):
        """Saturate ``s`` and close every open branch with ``descend``."""
        key = (s, mode)
        if key in self._results:
            return self._results[key]
        if key in self._active:
            raise InternalInvariantError(f"Search revisited '{s}' on its own branch.")
        self._active.add(key)
        try:
            exp = self._expand(s, mode)
            proofs = {}
            result = None
            for leaf in self._open_leaves(exp):
                out = descend(leaf.sequent)
                if not isinstance(out, ProofTree):
                    result = out if out is not None else _NO_CERTIFICATE
                    break
                proofs[leaf.sequent] = out
            if result is None:
                result = self._assemble(exp, proofs)
        finally:
            self._active.discard(key)
        self._results[key] = result
        return result

    # ---------- Levels ----------
    def _gl(self, s):
        return _strip(self._level(s, SaturationMode.IMP, self._gl_box))

    def _gl_box(self, s):
        boxed_left = s.boxed_left()
        gamma = _unbox(boxed_left)
        children, via = [], []
        for b in sorted(s.boxed_right(), key=formula_key):
            premise = Sequent(SequentKind.GL, gamma | boxed_left | {b}, {b.inner})
            out = self._gl(premise)
            if isinstance(out, ProofTree):
                step = ProofTree(
                    Sequent(SequentKind.GL, boxed_left, {b}), RuleName.GLBOX, (out,),
                    Annotation(gamma=gamma, phi=b.inner),
                )
                return step.weakened(s.left, s.right)
            children.append(out)
            via.append(b)
        if self.verbose >= 2:
            logger.debug("GL-saturated and unprovable: %s", s)
        return GLCertificate(s, tuple(children), tuple(via))

    def _s(self, s):
        return _strip(self._level(s, SaturationMode.IMP_BOXLEFT, self._s_lift))

    def _s_lift(self, s):
        out = self._gl(s.with_kind(SequentKind.GL))
        if isinstance(out, ProofTree):
            return ProofTree(s, RuleName.LIFT_S, (out,))
        return SCertificate(s, out)

    def _d2(self, s):
        mode = SaturationMode.IMP_ANALYTIC_BOX if self.policy is CutPolicy.SEMI else SaturationMode.IMP
        return _strip(self._level(s, mode, self._d2_box))

    def _d2_box(self, s):
        boxed_left, boxed_right = s.boxed_left(), s.boxed_right()
        psi_star, phi_star = _unbox(boxed_left), _unbox(boxed_right)
        out = self._gl(Sequent(SequentKind.GL, psi_star | boxed_left, boxed_right))
        if isinstance(out, ProofTree):
            step = ProofTree(
                Sequent(SequentKind.D, boxed_left, boxed_right), RuleName.DBOX_GL, (out,),
                Annotation(gamma=psi_star, delta=phi_star),
            )
            return step.weakened(s.left, s.right)
        if self.policy is CutPolicy.NONE:
            return None
        return D2Certificate(s, psi_star, phi_star, out)

    def _d3(self, s):
        return _strip(self._level(s, SaturationMode.IMP, self._d3_box))

    def _d3_box(self, s):
        boxed_left, boxed_right = s.boxed_left(), s.boxed_right()
        psi_star, phi_star = _unbox(boxed_left), _unbox(boxed_right)
        out = self._s(Sequent(SequentKind.S, boxed_left, boxed_right))
        if isinstance(out, ProofTree):
            step = ProofTree(
                Sequent(SequentKind.D, boxed_left, boxed_right), RuleName.DBOX_S, (out,),
                Annotation(gamma=psi_star, delta=phi_star),
            )
            return step.weakened(s.left, s.right)
        return D3Certificate(s, psi_star, phi_star, out)


# failure of cut-free Dseq2, which carries no certificate
_NO_CERTIFICATE = object()


def _strip(result):
    return None if result is _NO_CERTIFICATE else result


def prove(s, calculus, policy=CutPolicy.NONE, verbose=0):
    """
    Decide ``s`` in ``calculus``.

    Returns:
        Verdict: provable with a checked proof, or unprovable with a failure
        certificate (none for cut-free Dseq2, which is incomplete).
    """
    return ProofSearch(calculus, policy, verbose=verbose).run(s)


def saturate(s, mode):
    """Saturated open branches of ``s`` under ``mode``, or the closing proof."""
    return ProofSearch(Calculus.DSEQ3, verbose=0).saturate(s, SaturationMode(mode))


# ---------- Countermodels ----------
def build_gl_countermodel(cert):
    """
    Read a GL-model off a GL certificate. Worlds are the certificate's
    saturated sequents (``w0`` is the root), a world sees the worlds spawned
    below it, and p is true at w iff p is on the left of w.
    """
    if cert.kind is not CertificateKind.GL:
        raise WrongCertificateKind(f"Expected a GL certificate, got {cert.kind.value}.")

    names, nodes, rel = {}, [], set()
    queue = [cert]
    names[id(cert)] = "w0"
    while queue:
        node = queue.pop(0)
        nodes.append(node)
        for child in node.children:
            if id(child) not in names:
                names[id(child)] = f"w{len(names)}"
                queue.append(child)
            rel.add((names[id(node)], names[id(child)]))

    val = {
        names[id(node)]: {
            f.name: True for f in node.sequent.left if type(f) is Var
        }
        for node in nodes
    }
    model = validate_model([names[id(n)] for n in nodes], rel, val)

    for node in nodes:
        if not Countermodel(model, names[id(node)]).falsifies(node.sequent):
            raise InternalInvariantError(
                f"GL countermodel does not refute '{node.sequent}' at {names[id(node)]}."
            )
    return Countermodel(model, "w0")


def _atoms_true(fs):
    return {f.name: True for f in fs if type(f) is Var}


def extract_countermodel(cert):
    """
    Countermodel for any certificate kind. GL certificates give a plain
    GL-model; S and D certificates give a tail-limit model refuting the
    saturated sequent at its limit world.
    """
    match cert.kind:
        case CertificateKind.GL:
            return build_gl_countermodel(cert)
        case CertificateKind.S:
            base = build_gl_countermodel(cert.gl).model
            root = base.val["w0"]
            tm = build_tail_limit(base, "w0", (), root, root)
            refuted = cert.saturation
        case CertificateKind.D2:
            base = build_gl_countermodel(cert.gl).model
            tm = build_tail_limit(base, "w0", (), base.val["w0"], _atoms_true(cert.saturation.left))
            refuted = cert.saturation
        case CertificateKind.D3:
            base = build_gl_countermodel(cert.s.gl).model
            tail = _atoms_true(cert.s.saturation.left)
            tm = build_tail_limit(base, "w0", (), tail, _atoms_true(cert.saturation.left))
            refuted = cert.saturation
        case _:
            raise WrongCertificateKind(f"Unknown certificate kind {cert.kind!r}.")

    countermodel = Countermodel(tm, "limit")
    if not countermodel.falsifies(refuted):
        raise InternalInvariantError(f"Tail-limit countermodel does not refute '{refuted}'.")
    return countermodel

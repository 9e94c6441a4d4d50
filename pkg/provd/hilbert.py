# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Hilbert-style systems for GL, S and D and their GL_lin counterparts.

A proof is a list of lines; each line is an axiom instance, a modus
ponens step ``MP(imp, premise)`` (0-based line indices, ``imp`` proving
``premise -> formula``) or, in GLH and GL_lin only, a necessitation step.

Box-shaped axioms  /\\ box Gamma -> \\/ box Delta  carry their witnesses
Gamma and Delta; conjunctions and disjunctions are right-nested in
witness order, with top for the empty conjunction and bot for the empty
disjunction.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from provd.calculi import Calculus, CutPolicy, RuleName, check_proof, principal_formula
from provd.config import load_defaults
from provd.errors import (
    EmptyDelta,
    InternalInvariantError,
    InvalidInputProof,
    MalformedWitness,
    UnknownSystem,
)
from provd.formula import (
    BOT,
    Bottom,
    Box,
    Implies,
    Sequent,
    SequentKind,
    conj,
    conj2,
    disj,
    disj2,
    formula_key,
    propositional_atoms,
    sequent_formula,
    top,
)
from provd.glin import gllin_valid, s_gllin_valid
from provd.prover import prove, saturate
from provd.transforms import embed_gl_into_d

logger = logging.getLogger(__name__)


class Scheme(Enum):
    TAUT = "taut"
    K = "k"
    LOB = "lob"
    GLH_THEOREM = "glh-theorem"
    REFLECTION = "reflection"
    CONSISTENCY = "consistency"
    D_AXIOM = "d-axiom"
    D2_BOX = "d2-box"
    D3_BOX = "d3-box"
    L_THEOREM = "l-theorem"


class SystemId(Enum):
    GLH = "glh"
    SH = "sh"
    DH = "dh"
    DH2 = "dh2"
    DH3 = "dh3"
    GLLIN = "gllin"
    S_GLLIN = "s-gllin"
    D2_GLLIN = "d2-gllin"
    D3_GLLIN = "d3-gllin"

    @classmethod
    def coerce(cls, system):
        if isinstance(system, cls):
            return system
        try:
            return cls(str(system).lower())
        except ValueError:
            raise UnknownSystem(
                f"Unknown Hilbert system '{system}'. "
                f"Available: {', '.join(s.value for s in cls)}"
            ) from None

    @property
    def over_gllin(self):
        return self in (SystemId.GLLIN, SystemId.S_GLLIN, SystemId.D2_GLLIN, SystemId.D3_GLLIN)

    @property
    def schemes(self):
        return SCHEMES[self]

    @property
    def has_necessitation(self):
        return self in (SystemId.GLH, SystemId.GLLIN)


SCHEMES = {
    SystemId.GLH: (Scheme.TAUT, Scheme.K, Scheme.LOB),
    SystemId.SH: (Scheme.TAUT, Scheme.GLH_THEOREM, Scheme.REFLECTION),
    SystemId.DH: (Scheme.TAUT, Scheme.GLH_THEOREM, Scheme.CONSISTENCY, Scheme.D_AXIOM),
    SystemId.DH2: (Scheme.TAUT, Scheme.D2_BOX),
    SystemId.DH3: (Scheme.TAUT, Scheme.D3_BOX),
    SystemId.GLLIN: (Scheme.TAUT, Scheme.L_THEOREM),
    SystemId.S_GLLIN: (Scheme.TAUT, Scheme.L_THEOREM, Scheme.REFLECTION),
    SystemId.D2_GLLIN: (Scheme.TAUT, Scheme.D2_BOX),
    SystemId.D3_GLLIN: (Scheme.TAUT, Scheme.D3_BOX),
}

_WITNESSED = (Scheme.D2_BOX, Scheme.D3_BOX)


# ---------- Proof objects ----------
@dataclass(frozen=True)
class Axiom:
    scheme: Scheme
    gamma: tuple = None
    delta: tuple = None
    subproof: object = None


@dataclass(frozen=True)
class MP:
    imp: int
    premise: int


@dataclass(frozen=True)
class Nec:
    premise: int


@dataclass(frozen=True)
class HilbertLine:
    formula: object
    just: object


@dataclass(frozen=True)
class HilbertProof:
    system: SystemId
    lines: tuple

    def __len__(self):
        return len(self.lines)

    @property
    def final(self):
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class LineError:
    index: int
    message: str

    def __str__(self):
        return f"line {self.index}: {self.message}"


@dataclass(frozen=True)
class HilbertReport:
    valid: bool
    system: SystemId
    final: object
    errors: tuple = ()

    @property
    def first_error(self):
        return self.errors[0] if self.errors else None

    def summary(self):
        if self.valid:
            return f"valid {self.system.value} proof of {self.final}"
        return f"invalid {self.system.value} proof: {self.first_error}"


# ---------- Tautologies ----------
def _column(f, columns, rows, memo):
    found = memo.get(f)
    if found is not None:
        return found
    if type(f) is Bottom:
        out = np.zeros(rows, dtype=bool)
    elif type(f) is Implies:
        out = ~_column(f.left, columns, rows, memo) | _column(f.right, columns, rows, memo)
    else:
        out = columns[f]
    memo[f] = out
    return out


@lru_cache(maxsize=1)
def _table_limit():
    return load_defaults("hilbert")["taut_table_max_atoms"]


def is_tautology(f, max_table_atoms=None):
    """
    Classical validity of ``f`` with variables and boxed formulas as atoms.
    Up to ``max_table_atoms`` atoms a full truth table is computed; larger
    formulas are decided by propositional saturation.
    """
    if max_table_atoms is None:
        max_table_atoms = _table_limit()
    atoms = sorted(propositional_atoms(f), key=formula_key)
    n = len(atoms)
    if n > max_table_atoms:
        return not saturate(Sequent(SequentKind.GL, (), {f}), "imp").branches
    rows = 1 << n
    table = ((np.arange(rows)[:, None] >> np.arange(n)) & 1).astype(bool)
    columns = {a: table[:, i] for i, a in enumerate(atoms)}
    return bool(_column(f, columns, rows, {}).all())


# ---------- Scheme shapes ----------
def k_instance(a, b):
    return Implies(Box(Implies(a, b)), Implies(Box(a), Box(b)))


def lob_instance(a):
    return Implies(Box(Implies(Box(a), a)), Box(a))


def d_axiom_instance(a, b):
    both = disj2(Box(a), Box(b))
    return Implies(Box(both), both)


CONSISTENCY = Implies(Box(BOT), BOT)


def box_axiom_formula(gamma, delta):
    """/\\ box gamma -> \\/ box delta, in the given witness order."""
    return Implies(conj([Box(g) for g in gamma]), disj([Box(d) for d in delta]))


def _is_k(f):
    match f:
        case Implies(left=Box(inner=Implies(left=a, right=b)),
                     right=Implies(left=Box(inner=a2), right=Box(inner=b2))):
            return a == a2 and b == b2
    return False


def _is_lob(f):
    match f:
        case Implies(left=Box(inner=Implies(left=Box(inner=a), right=a2)), right=Box(inner=a3)):
            return a == a2 == a3
    return False


def _is_reflection(f):
    match f:
        case Implies(left=Box(inner=a), right=a2):
            return a == a2
    return False


def _is_d_axiom(f):
    match f:
        case Implies(left=Box(inner=x), right=y):
            match x:
                case Implies(left=Implies(left=Box(), right=Bottom()), right=Box()):
                    return x == y
    return False


# ---------- Recognition ----------
def _checked_subproof(subproof, system, formula, require_subproofs):
    if subproof.system is not system:
        return False
    if subproof.final != formula:
        return False
    return check_hilbert_proof(subproof, system, require_subproofs).valid


def _matches(f, scheme, system, gamma, delta, subproof, require_subproofs):
    match scheme:
        case Scheme.TAUT:
            return is_tautology(f)
        case Scheme.K:
            return _is_k(f)
        case Scheme.LOB:
            return _is_lob(f)
        case Scheme.REFLECTION:
            return _is_reflection(f)
        case Scheme.CONSISTENCY:
            return f == CONSISTENCY
        case Scheme.D_AXIOM:
            return _is_d_axiom(f)
        case Scheme.L_THEOREM:
            return gllin_valid(f).valid
        case Scheme.GLH_THEOREM:
            if subproof is not None:
                return _checked_subproof(subproof, SystemId.GLH, f, require_subproofs)
            if require_subproofs:
                return False
            return prove(Sequent(SequentKind.GL, (), {f}), Calculus.GLSEQ).provable

    if gamma is None or delta is None:
        raise MalformedWitness(f"Scheme {scheme.value} needs gamma and delta witnesses.")
    if f != box_axiom_formula(gamma, delta):
        raise MalformedWitness(
            f"'{f}' is not /\\ box Gamma -> \\/ box Delta for the declared witnesses."
        )
    boxed_gamma = {Box(g) for g in gamma}
    boxed_delta = {Box(d) for d in delta}

    if scheme is Scheme.D2_BOX:
        side = Sequent(SequentKind.GL, set(gamma) | boxed_gamma, boxed_delta)
        if system.over_gllin:
            return gllin_valid(sequent_formula(side)).valid
        if subproof is not None:
            return _checked_subproof(subproof, SystemId.GLH, sequent_formula(side), require_subproofs)
        if require_subproofs:
            return False
        return prove(side, Calculus.GLSEQ).provable

    side = Sequent(SequentKind.S, boxed_gamma, boxed_delta)
    if system.over_gllin:
        return s_gllin_valid(f).valid
    if subproof is not None:
        return _checked_subproof(subproof, SystemId.SH, sequent_formula(side), require_subproofs)
    if require_subproofs:
        return False
    return prove(side, Calculus.SSEQ).provable


def recognize_axiom(f, system, scheme=None, gamma=None, delta=None, subproof=None,
                    require_subproofs=False):
    """
    Identify the axiom scheme of ``system`` that ``f`` instantiates.

    Parameters:
        f (Formula):
            Candidate axiom.
        system (SystemId or str):
            Hilbert system.
        scheme (Scheme or str, optional):
            Restrict recognition to this scheme.
        gamma, delta (sequence of Formula, optional):
            Witnesses of box-shaped axioms.
        subproof (HilbertProof, optional):
            Explicit proof of a theorem axiom or of a side condition.
        require_subproofs (bool, optional):
            If True, theorem axioms and side conditions are only accepted
            with a valid ``subproof``.

    Returns:
        Scheme or None: the matching scheme.

    Raises:
        MalformedWitness: if a box-shaped scheme is requested and ``f`` does
        not have the declared shape.
    """
    system = SystemId.coerce(system)
    if scheme is not None:
        candidates = (Scheme(scheme),)
        if candidates[0] not in system.schemes:
            return None
    else:
        witnessed = gamma is not None and delta is not None
        candidates = tuple(s for s in system.schemes if witnessed or s not in _WITNESSED)

    for candidate in candidates:
        if _matches(f, candidate, system, gamma, delta, subproof, require_subproofs):
            return candidate
    return None


def check_hilbert_proof(p, system=None, require_subproofs=False):
    """
    Check every line of ``p`` in ``system`` (default: the proof's own).

    Returns:
        HilbertReport: ``errors`` lists every failing line in order.
    """
    system = SystemId.coerce(system if system is not None else p.system)
    errors = []
    if not p.lines:
        errors.append(LineError(0, "empty proof"))

    for i, line in enumerate(p.lines):
        f, just = line.formula, line.just
        match just:
            case Axiom(scheme=scheme, gamma=gamma, delta=delta, subproof=subproof):
                if scheme not in system.schemes:
                    errors.append(LineError(i, f"{scheme.value} is not an axiom scheme of {system.value}"))
                    continue
                try:
                    ok = _matches(f, scheme, system, gamma, delta, subproof, require_subproofs)
                except MalformedWitness as exc:
                    errors.append(LineError(i, str(exc)))
                    continue
                if not ok:
                    errors.append(LineError(i, f"'{f}' is not an instance of {scheme.value}"))
            case MP(imp=imp, premise=premise):
                if not (0 <= imp < i and 0 <= premise < i):
                    errors.append(LineError(i, f"modus ponens cites lines {imp}, {premise} not above it"))
                elif p.lines[imp].formula != Implies(p.lines[premise].formula, f):
                    errors.append(LineError(i, f"line {imp} is not line {premise} -> '{f}'"))
            case Nec(premise=premise):
                if not system.has_necessitation:
                    errors.append(LineError(i, f"{system.value} has no necessitation rule"))
                elif not 0 <= premise < i:
                    errors.append(LineError(i, f"necessitation cites line {premise} not above it"))
                elif f != Box(p.lines[premise].formula):
                    errors.append(LineError(i, f"'{f}' is not box of line {premise}"))
            case _:
                errors.append(LineError(i, f"unknown justification {just!r}"))

    report = HilbertReport(not errors, system, p.final, tuple(errors))
    logger.debug("Hilbert check: %s", report.summary())
    return report


def _self_check(proof, require_subproofs, what):
    report = check_hilbert_proof(proof, proof.system, require_subproofs)
    if not report.valid:
        raise InternalInvariantError(f"{what} built an invalid proof: {report.first_error}")
    return proof


# ---------- Builder ----------
class HilbertBuilder:
    """
    Accumulates a Hilbert proof line by line. Every method returns the
    index of the line proving its result; a formula proved once is reused.

    Parameters:
        system (SystemId):
            Target system.
        explicit (bool, optional):
            If True, theorem axioms carry sub-proofs found by the prover.
    """

    def __init__(self, system, explicit=False):
        self.system = SystemId.coerce(system)
        self.explicit = explicit
        self.lines = []
        self._known = {}

    def formula(self, i):
        return self.lines[i].formula

    def _push(self, formula, just, force=False):
        if not force:
            found = self._known.get(formula)
            if found is not None:
                return found
        self.lines.append(HilbertLine(formula, just))
        index = len(self.lines) - 1
        self._known.setdefault(formula, index)
        return index

    def axiom(self, formula, scheme, gamma=None, delta=None, subproof=None):
        if gamma is not None:
            gamma = tuple(gamma)
        if delta is not None:
            delta = tuple(delta)
        return self._push(formula, Axiom(Scheme(scheme), gamma, delta, subproof))

    def mp(self, imp, premise):
        f = self.formula(imp)
        if type(f) is not Implies or f.left != self.formula(premise):
            raise InternalInvariantError(f"Line {imp} does not apply to line {premise}.")
        return self._push(f.right, MP(imp, premise))

    def nec(self, premise):
        return self._push(Box(self.formula(premise)), Nec(premise))

    def taut(self, premises, conclusion):
        """``conclusion`` from the given lines by one tautology and modus ponens."""
        chained = conclusion
        for i in reversed(premises):
            chained = Implies(self.formula(i), chained)
        if not is_tautology(chained):
            raise InternalInvariantError(f"Not a tautology: {chained}")
        line = self.axiom(chained, Scheme.TAUT)
        for i in premises:
            line = self.mp(line, i)
        return line

    def chain(self, first, second):
        """a -> b and b -> c give a -> c."""
        a, c = self.formula(first).left, self.formula(second).right
        return self.taut([first, second], Implies(a, c))

    def glh_theorem(self, f):
        subproof = None
        if self.explicit:
            verdict = prove(Sequent(SequentKind.GL, (), {f}), Calculus.GLSEQ)
            if not verdict.provable:
                raise InternalInvariantError(f"'{f}' is used as a GL theorem but is not one.")
            subproof = seq_proof_to_hilbert(verdict.proof, Calculus.GLSEQ, explicit=True)
        return self.axiom(f, Scheme.GLH_THEOREM, subproof=subproof)

    def include(self, proof):
        """Splice ``proof`` in; returns the index of its final line."""
        mapping = []
        for line in proof.lines:
            just = line.just
            if type(just) is MP:
                just = MP(mapping[just.imp], mapping[just.premise])
            elif type(just) is Nec:
                just = Nec(mapping[just.premise])
            mapping.append(self._push(line.formula, just))
        return mapping[-1]

    def conclude(self, i):
        """Make line ``i`` the last line."""
        if i == len(self.lines) - 1:
            return i
        f = self.formula(i)
        identity = self.axiom(Implies(f, f), Scheme.TAUT)
        return self._push(f, MP(identity, i), force=True)

    def build(self):
        return HilbertProof(self.system, tuple(self.lines))

    # ---------- Derived GLH lemmas ----------
    def box_mono(self, imp_line):
        """a -> b gives box a -> box b."""
        f = self.formula(imp_line)
        boxed = self.nec(imp_line)
        k = self.axiom(k_instance(f.left, f.right), Scheme.K)
        return self.mp(k, boxed)

    def box_conj(self, items):
        """/\\ box items -> box /\\ items."""
        items = list(items)
        if not items:
            boxed_top = self.nec(self.taut([], top()))
            return self.taut([boxed_top], Implies(top(), Box(top())))
        if len(items) == 1:
            return self.taut([], Implies(Box(items[0]), Box(items[0])))
        x, rest = items[0], items[1:]
        tail = conj(rest)
        both = conj2(x, tail)
        inner = self.box_conj(rest)
        pair = self.box_mono(self.taut([], Implies(x, Implies(tail, both))))
        k = self.axiom(k_instance(tail, both), Scheme.K)
        return self.taut([pair, k, inner], Implies(conj([Box(y) for y in items]), Box(both)))

    def four(self, g):
        """box g -> box box g, by Lob on g & box g."""
        b = conj2(g, Box(g))
        to_boxed = self.box_mono(self.taut([], Implies(b, Box(g))))
        to_plain = self.box_mono(self.taut([], Implies(b, g)))
        step = self.taut([to_plain], Implies(g, Implies(Box(b), b)))
        lob = self.axiom(lob_instance(b), Scheme.LOB)
        return self.chain(self.chain(self.box_mono(step), lob), to_boxed)


# ---------- Sequent proofs to Hilbert proofs ----------
_SYSTEM_OF = {
    Calculus.GLSEQ: SystemId.GLH,
    Calculus.SSEQ: SystemId.SH,
    Calculus.DSEQ2: SystemId.DH2,
    Calculus.DSEQ3: SystemId.DH3,
}


def _calculus_of(p):
    kind = p.conclusion.kind
    if kind is SequentKind.GL:
        return Calculus.GLSEQ
    if kind is SequentKind.S:
        return Calculus.SSEQ
    if any(node.rule is RuleName.DBOX_S for node in p.nodes()):
        return Calculus.DSEQ3
    return Calculus.DSEQ2


class _Translation:
    def __init__(self, builder, explicit):
        self.b = builder
        self.explicit = explicit
        self._memo = {}

    def line(self, node):
        found = self._memo.get(id(node))
        if found is None:
            found = self._memo[id(node)] = self._translate(node)
        return found

    def _translate(self, node):
        b = self.b
        c = node.conclusion
        goal = sequent_formula(c, full=True)
        rule = node.rule

        if rule is RuleName.GLBOX:
            return self._glbox(node)

        if rule is RuleName.LIFT_S:
            sub = None
            if self.explicit:
                sub = seq_proof_to_hilbert(node.premises[0], Calculus.GLSEQ, explicit=True)
                sub = _full_form(sub, node.premises[0].conclusion)
            return b.axiom(goal, Scheme.GLH_THEOREM, subproof=sub)

        if rule is RuleName.BOXL_S:
            boxed = principal_formula(node)
            reflection = b.axiom(Implies(boxed, boxed.inner), Scheme.REFLECTION)
            return b.taut([reflection, self.line(node.premises[0])], goal)

        if rule in (RuleName.DBOX_GL, RuleName.DBOX_S):
            gamma = [f.inner for f in c.sorted_left()]
            delta = [f.inner for f in c.sorted_right()]
            sub = None
            if self.explicit:
                calculus = Calculus.GLSEQ if rule is RuleName.DBOX_GL else Calculus.SSEQ
                sub = seq_proof_to_hilbert(node.premises[0], calculus, explicit=True)
            scheme = Scheme.D2_BOX if rule is RuleName.DBOX_GL else Scheme.D3_BOX
            return b.axiom(goal, scheme, gamma, delta, sub)

        # LK rules: propositionally valid inferences on sequent formulas
        return b.taut([self.line(q) for q in node.premises], goal)

    def _glbox(self, node):
        b = self.b
        c = node.conclusion
        boxed_phi = next(iter(c.right))
        phi = boxed_phi.inner
        gamma = sorted({f.inner for f in c.left}, key=formula_key)
        items = sorted(set(gamma) | c.left, key=formula_key)
        d = conj(items)

        premise = self.line(node.premises[0])
        unlocked = b.taut([premise], Implies(d, Implies(boxed_phi, phi)))
        to_phi = b.chain(b.box_mono(unlocked), b.axiom(lob_instance(phi), Scheme.LOB))
        packed = b.box_conj(items)
        fours = [b.four(g) for g in gamma]
        spread = b.taut(fours, Implies(conj(c.sorted_left()), conj([Box(x) for x in items])))
        return b.chain(b.chain(spread, packed), to_phi)


def _full_form(proof, sequent):
    """Extend a proof of the display formula of ``sequent`` to its full formula."""
    full = sequent_formula(sequent, full=True)
    if proof.final == full:
        return proof
    b = HilbertBuilder(proof.system)
    b.conclude(b.taut([b.include(proof)], full))
    return b.build()


def seq_proof_to_hilbert(p, calculus=None, explicit=None):
    """
    Hilbert proof of the formula of the end-sequent of ``p``: GLseq gives
    GLH, Sseq gives SH, Dseq2 gives DH2 and Dseq3 gives DH3.

    Parameters:
        p (ProofTree):
            A valid sequent proof (cuts allowed).
        calculus (Calculus, optional):
            Calculus ``p`` is checked in; guessed from the proof if None.
        explicit (bool, optional):
            Attach sub-proofs to theorem axioms and side conditions.
            Defaults to ``require_subproofs`` of the packaged defaults.
    """
    if explicit is None:
        explicit = load_defaults("hilbert")["require_subproofs"]
    calculus = calculus or _calculus_of(p)
    report = check_proof(p, calculus, CutPolicy.ANY)
    if not report.valid:
        raise InvalidInputProof(f"Not a valid {calculus.value} proof: {report.violations[0]}")

    end = p.conclusion
    if end.kind is SequentKind.GL:
        system = SystemId.GLH
    elif end.kind is SequentKind.S:
        system = SystemId.SH
    else:
        system = _SYSTEM_OF[calculus]
    b = HilbertBuilder(system, explicit)
    last = _Translation(b, explicit).line(p)
    display = sequent_formula(end)
    if display != b.formula(last):
        last = b.taut([last], display)
    b.conclude(last)
    return _self_check(b.build(), explicit, "Sequent-to-Hilbert translation")


# ---------- D, DH2 ----------
def _collapse(b, delta):
    boxes = [Box(d) for d in delta]
    whole = disj(boxes)
    if len(delta) == 1:
        single = boxes[0]
        twice = disj2(single, single)
        widen = b.glh_theorem(Implies(Box(single), Box(twice)))
        split = b.axiom(d_axiom_instance(delta[0], delta[0]), Scheme.D_AXIOM)
        return b.taut([widen, split], Implies(Box(whole), whole))
    if len(delta) == 2:
        return b.axiom(d_axiom_instance(delta[0], delta[1]), Scheme.D_AXIOM)
    rest = disj(boxes[1:])
    lift = b.glh_theorem(Implies(Box(disj2(boxes[0], rest)), Box(disj2(boxes[0], Box(rest)))))
    split = b.axiom(d_axiom_instance(delta[0], rest), Scheme.D_AXIOM)
    inner = _collapse(b, delta[1:])
    return b.taut([lift, split, inner], Implies(Box(whole), whole))


def derive_collapse_lemma(delta, explicit=False):
    """
    DH proof of  box \\/ box delta -> \\/ box delta.

    Raises:
        EmptyDelta: if ``delta`` is empty.
    """
    delta = list(delta)
    if not delta:
        raise EmptyDelta("The collapse lemma needs at least one formula.")
    b = HilbertBuilder(SystemId.DH, explicit)
    b.conclude(_collapse(b, delta))
    return _self_check(b.build(), explicit, "Collapse lemma")


def _box_axiom_in_dh(b, f, gamma, delta, explicit):
    boxed_delta = disj([Box(d) for d in delta])
    lifted = b.glh_theorem(Implies(conj([Box(g) for g in gamma]), Box(boxed_delta)))
    if delta:
        collapse = b.include(derive_collapse_lemma(delta, explicit))
    else:
        collapse = b.axiom(CONSISTENCY, Scheme.CONSISTENCY)
    return b.taut([lifted, collapse], f)


def _theorem_in_dh2(f, kind, explicit):
    s = Sequent(kind, (), {f})
    if kind is SequentKind.GL:
        verdict = prove(s, Calculus.GLSEQ)
    else:
        verdict = prove(s, Calculus.DSEQ2, CutPolicy.SEMI)
    if not verdict.provable:
        raise InternalInvariantError(f"'{f}' is a DH axiom but its sequent is unprovable.")
    proof = verdict.proof
    if kind is SequentKind.GL:
        proof = embed_gl_into_d(proof, Calculus.DSEQ2)
    return seq_proof_to_hilbert(proof, Calculus.DSEQ2, explicit)


def translate_hilbert_d2_d(p, target, explicit=False):
    """
    Translate a DH2 proof into DH or a DH proof into DH2, keeping the final
    formula.

    Parameters:
        p (HilbertProof):
            Valid proof in DH2 or DH.
        target (SystemId or str):
            The other system.
    """
    target = SystemId.coerce(target)
    source = p.system
    if {source, target} != {SystemId.DH, SystemId.DH2}:
        raise InvalidInputProof(
            f"Can only translate between dh and dh2, not {source.value} -> {target.value}."
        )
    report = check_hilbert_proof(p, source)
    if not report.valid:
        raise InvalidInputProof(f"The {source.value} proof is invalid: {report.first_error}")

    b = HilbertBuilder(target, explicit)
    mapping = []
    for line in p.lines:
        f, just = line.formula, line.just
        if type(just) is MP:
            index = b.mp(mapping[just.imp], mapping[just.premise])
        elif just.scheme is Scheme.TAUT:
            index = b.axiom(f, Scheme.TAUT)
        elif just.scheme is Scheme.D2_BOX:
            index = _box_axiom_in_dh(b, f, just.gamma, just.delta, explicit)
        elif just.scheme is Scheme.GLH_THEOREM:
            index = b.include(_theorem_in_dh2(f, SequentKind.GL, explicit))
        else:
            index = b.include(_theorem_in_dh2(f, SequentKind.D, explicit))
        mapping.append(index)

    b.conclude(mapping[-1])
    proof = _self_check(b.build(), explicit, f"{source.value}-to-{target.value} translation")
    logger.info("Translated %d %s line(s) into %d %s line(s)",
                len(p), source.value, len(proof), target.value)
    return proof

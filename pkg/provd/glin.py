# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
GL over finite strict linear orders (GL_lin) and the omega-plus frame.

A nat-frame has worlds 0..n where w sees every w' < w. Along such an
order the truth of a formula at world w only depends on the valuation at
w and on a *box summary*: for each boxed subformula box phi, whether phi
held at every world below w. The searches here walk these summaries
instead of enumerating whole valuations.
"""

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from provd.config import load_defaults
from provd.errors import InternalInvariantError
from provd.formula import (
    Bottom,
    Box,
    Implies,
    Var,
    conj2,
    disj2,
    size,
    subformula_closure,
    variables,
)
from provd.kripke import build_tail_limit, eval_tail_limit, validate_model

logger = logging.getLogger(__name__)


class NatFrameModel:
    """
    Valuation on the nat-frame ``<{0, ..., size}, >``.

    Parameters:
        size (int):
            Index of the top world; the frame has ``size + 1`` worlds.
        val (dict):
            ``{world: {variable: bool}}`` with integer worlds; absent
            entries are false.
    """

    def __init__(self, size, val=None):
        if size < 0:
            raise ValueError(f"Nat-frame size must be >= 0, got {size}.")
        self.size = size
        val = val or {}
        self.val = {w: dict(val.get(w, {})) for w in range(size + 1)}
        self._cache = {}

    def __repr__(self):
        return f"NatFrameModel(size={self.size}, val={self.val})"

    def truth(self, f):
        """Truth vector of ``f`` over worlds 0..size."""
        found = self._cache.get(f)
        if found is not None:
            return found
        n = self.size + 1
        match f:
            case Var(name=name):
                out = np.array([bool(self.val[w].get(name, False)) for w in range(n)])
            case Bottom():
                out = np.zeros(n, dtype=bool)
            case Implies(left=a, right=b):
                out = ~self.truth(a) | self.truth(b)
            case Box(inner=a):
                below = np.logical_and.accumulate(self.truth(a))
                out = np.concatenate(([True], below[:-1]))
            case _:
                raise TypeError(f"Not a formula: {f!r}")
        self._cache[f] = out
        return out

    def evaluate(self, world, f):
        return bool(self.truth(f)[world])


def nat_model_as_kripke(m):
    """The nat-frame model as a :class:`~provd.kripke.KripkeModel` with worlds ``"0"``..``"n"``."""
    worlds = [str(w) for w in range(m.size + 1)]
    rel = [(str(u), str(v)) for u in range(m.size + 1) for v in range(u)]
    val = {str(w): dict(vals) for w, vals in m.val.items()}
    return validate_model(worlds, rel, val)


def linearity_instance(phi, psi):
    """box(box phi -> psi) | box(psi & box psi -> phi)"""
    return disj2(Box(Implies(Box(phi), psi)), Box(Implies(conj2(psi, Box(psi)), phi)))


class _Summary:
    """Subformula order and box-summary arithmetic for one formula."""

    def __init__(self, f):
        self.formula = f
        self.order = sorted(subformula_closure([f]).formulas, key=size)
        self.index = {g: i for i, g in enumerate(self.order)}
        self.boxed = [g for g in self.order if type(g) is Box]
        self.names = sorted(variables(f))
        self.root = self.index[f]
        self.initial = (True,) * len(self.boxed)

    def valuations(self):
        return product((False, True), repeat=len(self.names))

    def as_dict(self, valuation):
        return dict(zip(self.names, valuation))

    def local(self, valuation, state):
        truth = dict(zip(self.names, valuation))
        boxes = dict(zip(self.boxed, state))
        row = []
        for g in self.order:
            match g:
                case Var(name=name):
                    row.append(truth.get(name, False))
                case Bottom():
                    row.append(False)
                case Implies(left=a, right=b):
                    row.append((not row[self.index[a]]) or row[self.index[b]])
                case Box():
                    row.append(boxes[g])
        return row

    def step(self, state, row):
        return tuple(ok and row[self.index[g.inner]] for g, ok in zip(self.boxed, state))

    def settle(self, state, valuation):
        """Fixpoint of the summary along a constant tail."""
        while True:
            following = self.step(state, self.local(valuation, state))
            if following == state:
                return state
            state = following


@dataclass(frozen=True)
class GLinVerdict:
    valid: bool
    bound: int
    witness: object = None
    world: object = None

    @property
    def status(self):
        return "valid-at-bound" if self.valid else "invalid"


def default_bound(f):
    cfg = load_defaults("gllin")
    return max(cfg["min_bound"], len(subformula_closure([f])) + cfg["bound_offset"])


def _walk_levels(summary, bound):
    """
    Breadth-first over box summaries along worlds 0..bound. Yields
    ``(world, state, valuation, row, history)`` for each world visited,
    where ``history`` is the list of valuations for worlds 0..world.
    """
    frontier = {summary.initial: []}
    seen = {summary.initial}
    for w in range(bound + 1):
        following = {}
        for state, history in frontier.items():
            for valuation in summary.valuations():
                row = summary.local(valuation, state)
                path = history + [valuation]
                yield w, state, valuation, row, path
                nxt = summary.step(state, row)
                if nxt not in seen:
                    seen.add(nxt)
                    following[nxt] = path
        if not following:
            return
        frontier = following


def gllin_valid(f, bound=None):
    """
    Decide ``f`` on nat-frames with at most ``bound + 1`` worlds.

    Returns:
        GLinVerdict: ``valid`` (status ``"valid-at-bound"``) or the first
        refuting :class:`NatFrameModel` and world found, smallest world first.
    """
    bound = default_bound(f) if bound is None else bound
    summary = _Summary(f)
    for w, _, _, row, path in _walk_levels(summary, bound):
        if row[summary.root]:
            continue
        size_ = max(w, 1)
        val = {i: summary.as_dict(v) for i, v in enumerate(path)}
        witness = NatFrameModel(size_, val)
        if witness.evaluate(w, f):
            raise InternalInvariantError(f"Nat-frame witness does not refute '{f}' at {w}.")
        logger.debug("'%s' refuted at world %d of a size-%d nat-frame", f, w, size_)
        return GLinVerdict(False, bound, witness, w)
    return GLinVerdict(True, bound)


def s_gllin_valid(f, bound=None):
    """
    Truth of ``f`` at the limit of every strongly constant tail extension
    of a nat-frame model (attached at its top world) with at most
    ``bound + 1`` base worlds.

    Returns:
        GLinVerdict: the witness, if any, is a tail-limit model refuting
        ``f`` at ``"limit"``.
    """
    bound = default_bound(f) if bound is None else bound
    summary = _Summary(f)
    for w, state, _, row, path in _walk_levels(summary, bound):
        attached = summary.step(state, row)
        for constant in summary.valuations():
            settled = summary.settle(attached, constant)
            if summary.local(constant, settled)[summary.root]:
                continue
            base = nat_model_as_kripke(
                NatFrameModel(w, {i: summary.as_dict(v) for i, v in enumerate(path)})
            )
            c = summary.as_dict(constant)
            tm = build_tail_limit(base, str(w), (), c, c)
            if eval_tail_limit(tm, f).at_limit:
                raise InternalInvariantError(f"Strongly constant witness does not refute '{f}'.")
            return GLinVerdict(False, bound, tm, "limit")
    return GLinVerdict(True, bound)


@dataclass(frozen=True)
class OmegaResult:
    refuted: bool
    model: object = None
    examined: int = 0
    exhaustive: bool = True

    @property
    def status(self):
        return "refuted" if self.refuted else "no-counterexample-found"


class OmegaSearch:
    """
    Refutation search over omega-plus models: a single base world 0 with a
    tail t1, t2, ... below it and a limit world below the whole tail. The
    tail is an explicit prefix of ``0..prefix_len_max`` valuations followed
    by a constant valuation.

    Models are tried in ``itertools.product`` order of
    ``(base, prefix..., constant, limit)``, shorter prefixes first. With more
    than ``exhaustive_var_bound`` variables, ``samples`` models drawn from a
    seeded generator are tried instead.

    Parameters:
        prefix_len_max, exhaustive_var_bound, samples, seed (int, optional):
            Default to the ``"omega"`` section of the packaged defaults.
        verbose (int, optional):
            0 = silent, 1 = basic (default), 2+ = detailed.
    """

    def __init__(self, prefix_len_max=None, exhaustive_var_bound=None, samples=None,
                 seed=None, verbose=1):
        cfg = load_defaults(
            "omega", prefix_len_max=prefix_len_max, exhaustive_var_bound=exhaustive_var_bound,
            samples=samples, seed=seed,
        )
        self.prefix_len_max = cfg["prefix_len_max"]
        self.exhaustive_var_bound = cfg["exhaustive_var_bound"]
        self.samples = cfg["samples"]
        self.seed = cfg["seed"]
        self.verbose = verbose

    # ---------- Public API ----------
    def refute(self, f):
        """First model falsifying ``f`` at the limit."""
        return self._search(f, at_limit=True)

    def tail_soundness(self, f):
        """First model on which ``f`` is not eventually always true along the tail."""
        return self._search(f, at_limit=False)

    # ---------- Internals ----------
    def _model(self, summary, base, prefix, constant, limit):
        kripke = validate_model(["0"], (), {"0": summary.as_dict(base)})
        return build_tail_limit(
            kripke, "0", [summary.as_dict(v) for v in prefix],
            summary.as_dict(constant), summary.as_dict(limit),
        )

    def _fails(self, tm, f, at_limit):
        verdict = eval_tail_limit(tm, f)
        return not (verdict.at_limit if at_limit else verdict.eventually_always)

    def _search(self, f, at_limit):
        summary = _Summary(f)
        if len(summary.names) > self.exhaustive_var_bound:
            return self._sample(summary, f, at_limit)

        examined = 0
        valuations = list(summary.valuations())
        for length in range(self.prefix_len_max + 1):
            # (level, state) pairs from which no refutation exists
            dead = set()

            def descend(state, level, chosen):
                nonlocal examined
                if level == length:
                    for constant in valuations:
                        settled = summary.settle(state, constant)
                        for limit in valuations:
                            examined += 1
                            values = summary.local(limit if at_limit else constant, settled)
                            if not values[summary.root]:
                                return chosen + [constant, limit]
                    return None
                if (level, state) in dead:
                    return None
                for valuation in valuations:
                    row = summary.local(valuation, state)
                    found = descend(summary.step(state, row), level + 1, chosen + [valuation])
                    if found is not None:
                        return found
                dead.add((level, state))
                return None

            for base in valuations:
                row = summary.local(base, summary.initial)
                found = descend(summary.step(summary.initial, row), 0, [])
                if found is not None:
                    tm = self._model(summary, base, found[:-2], found[-2], found[-1])
                    if not self._fails(tm, f, at_limit):
                        raise InternalInvariantError(f"Omega-plus witness does not refute '{f}'.")
                    if self.verbose >= 1:
                        logger.info("'%s' refuted after %d model(s)", f, examined)
                    return OmegaResult(True, tm, examined, True)

        if self.verbose >= 1:
            logger.info("No counterexample to '%s' among %d model(s)", f, examined)
        return OmegaResult(False, None, examined, True)

    def _sample(self, summary, f, at_limit):
        rng = np.random.default_rng(self.seed)
        k = len(summary.names)
        for i in range(self.samples):
            length = int(rng.integers(0, self.prefix_len_max + 1))
            bits = rng.random((length + 3, k)) < 0.5
            rows = [tuple(bool(b) for b in r) for r in bits]
            tm = self._model(summary, rows[0], rows[1:-2], rows[-2], rows[-1])
            if self._fails(tm, f, at_limit):
                if self.verbose >= 1:
                    logger.info("'%s' refuted by sample %d", f, i)
                return OmegaResult(True, tm, i + 1, False)
        if self.verbose >= 2:
            logger.debug("No counterexample to '%s' among %d sample(s)", f, self.samples)
        return OmegaResult(False, None, self.samples, False)


def omega_refute_search(f, prefix_len_max=None, exhaustive_var_bound=None, verbose=0):
    return OmegaSearch(prefix_len_max, exhaustive_var_bound, verbose=verbose).refute(f)


def check_tail_soundness(f, prefix_len_max=None):
    """The first omega-plus model on which ``f`` fails eventually, or None."""
    result = OmegaSearch(prefix_len_max, verbose=0).tail_soundness(f)
    return result.model if result.refuted else None

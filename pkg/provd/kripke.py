# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Finite GL-models and their tail-limit extensions.

A tail-limit extension hangs an infinite descending chain t1, t2, ...
below a chosen base world t0 and puts a limit world t_omega below the
whole chain. Each t_i sees every t_j with j < i and every base successor
of t0. The tail is presented finitely: an explicit prefix of valuations
for t1..tk and one constant valuation for all later tail worlds.
"""

import logging
from dataclasses import dataclass

import numpy as np

from provd.errors import IrreflexivityViolation, UnknownWorld
from provd.formula import Bottom, Box, Implies, Var, subformula_closure, size

logger = logging.getLogger(__name__)


def _truth(valuation, name):
    return bool(valuation.get(name, False))


def same_valuation(a, b):
    """Compare two partial valuations, reading absent variables as false."""
    return all(_truth(a, v) == _truth(b, v) for v in set(a) | set(b))


class KripkeModel:
    """
    A finite GL-model. Build instances with :func:`validate_model`, which
    closes the relation transitively and rejects cycles.

    Parameters:
        worlds (sequence of str):
            World identifiers, in presentation order.
        rel (iterable of (str, str)):
            Accessibility pairs ``(u, v)`` meaning u sees v. Must already be
            transitive and irreflexive.
        val (dict):
            ``{world: {variable: bool}}``; absent variables are false.
    """

    def __init__(self, worlds, rel, val):
        self.worlds = tuple(worlds)
        self.rel = frozenset(rel)
        self.val = {w: dict(val.get(w, {})) for w in self.worlds}
        order = {w: i for i, w in enumerate(self.worlds)}
        succ = {w: [] for w in self.worlds}
        for u, v in self.rel:
            succ[u].append(v)
        self._succ = {w: tuple(sorted(vs, key=order.__getitem__)) for w, vs in succ.items()}
        self._cache = {}

    def __repr__(self):
        return f"KripkeModel(worlds={list(self.worlds)}, rel={sorted(self.rel)})"

    def __contains__(self, world):
        return world in self._succ

    def successors(self, world):
        self._require(world)
        return self._succ[world]

    def variables(self):
        return sorted({v for vals in self.val.values() for v in vals})

    def _require(self, world):
        if world not in self._succ:
            raise UnknownWorld(world, self.worlds)

    def evaluate(self, world, f):
        self._require(world)
        return self._eval(world, f)

    def _eval(self, w, f):
        key = (w, f)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        match f:
            case Var(name=name):
                result = _truth(self.val[w], name)
            case Bottom():
                result = False
            case Implies(left=a, right=b):
                result = (not self._eval(w, a)) or self._eval(w, b)
            case Box(inner=a):
                result = all(self._eval(v, a) for v in self._succ[w])
            case _:
                raise TypeError(f"Not a formula: {f!r}")
        self._cache[key] = result
        return result


def validate_model(worlds, rel, val=None):
    """
    Build a :class:`KripkeModel`, replacing ``rel`` by its transitive closure.

    Raises:
        UnknownWorld: if a pair or valuation mentions an undeclared world.
        IrreflexivityViolation: if the closure relates some world to itself.
    """
    worlds = list(dict.fromkeys(worlds))
    index = {w: i for i, w in enumerate(worlds)}
    val = val or {}
    for w in val:
        if w not in index:
            raise UnknownWorld(w, worlds)

    n = len(worlds)
    reach = np.zeros((n, n), dtype=bool)
    for u, v in rel:
        for w in (u, v):
            if w not in index:
                raise UnknownWorld(w, worlds)
        reach[index[u], index[v]] = True

    # Warshall
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])

    loops = np.flatnonzero(np.diag(reach))
    if loops.size:
        raise IrreflexivityViolation(worlds[int(loops[0])])

    closed = {(worlds[i], worlds[j]) for i, j in zip(*np.nonzero(reach))}
    return KripkeModel(worlds, closed, val)


def eval_at(m, w, f):
    """Kripke truth of ``f`` at world ``w`` of ``m``."""
    return m.evaluate(w, f)


@dataclass(frozen=True)
class LimitVerdict:
    at_limit: bool
    eventually_always: bool
    stabilization_index: int


class _TailRun:
    """
    Truth tables of every subformula of ``f`` along the tail.

    ``steps[i - 1]`` holds the truths at t_i. The run stops once the
    valuation is constant and the box summary no longer changes; from
    then on every tail world repeats the last row.
    """

    def __init__(self, tm, f):
        closure = subformula_closure([f])
        self.order = sorted(closure.formulas, key=size)
        boxed = [g for g in self.order if type(g) is Box]
        base, t0 = tm.base, tm.attach
        below = base.successors(t0)

        summary = {
            g: base.evaluate(t0, g.inner) and all(base.evaluate(x, g.inner) for x in below)
            for g in boxed
        }
        self.steps = []
        k = len(tm.tail_prefix)
        i = 1
        while True:
            row = self._local(tm.tail_valuation(i), summary)
            self.steps.append(row)
            following = {g: ok and row[g.inner] for g, ok in summary.items()}
            if i > k and following == summary:
                break
            summary = following
            i += 1

        self.summary = summary
        self.limit = self._local(tm.limit_val, summary)
        last = self.steps[-1]
        s = len(self.steps)
        while s > 1 and self.steps[s - 2] == last:
            s -= 1
        self.stabilization_index = s

    def _local(self, valuation, summary):
        row = {}
        for g in self.order:
            match g:
                case Var(name=name):
                    row[g] = _truth(valuation, name)
                case Bottom():
                    row[g] = False
                case Implies(left=a, right=b):
                    row[g] = (not row[a]) or row[b]
                case Box():
                    row[g] = summary[g]
        return row

    def at_tail(self, i):
        return self.steps[min(i, len(self.steps)) - 1]


class TailLimitModel:
    """
    A GL-model extended by a tail below ``attach`` and a limit world.

    Evaluation targets for :meth:`truth_at` are the base world ids,
    ``"t0"`` (the attachment world), ``"t<k>"`` for k >= 1, ``"t#"`` for the
    stabilized tail region and ``"limit"``. Base ids take precedence.
    """

    def __init__(self, base, attach, tail_prefix, tail_constant, limit_val):
        if attach not in base:
            raise UnknownWorld(attach, base.worlds)
        self.base = base
        self.attach = attach
        self.tail_prefix = tuple(dict(v) for v in tail_prefix)
        self.tail_constant = dict(tail_constant)
        self.limit_val = dict(limit_val)
        self._runs = {}

    def __repr__(self):
        return (
            f"TailLimitModel(attach={self.attach!r}, prefix={list(self.tail_prefix)}, "
            f"constant={self.tail_constant}, limit={self.limit_val})"
        )

    @property
    def constant(self):
        return all(same_valuation(v, self.tail_constant) for v in self.tail_prefix)

    @property
    def strongly_constant(self):
        return self.constant and same_valuation(self.limit_val, self.tail_constant)

    def tail_valuation(self, i):
        if i == 0:
            return self.base.val[self.attach]
        if i <= len(self.tail_prefix):
            return self.tail_prefix[i - 1]
        return self.tail_constant

    def variables(self):
        names = set(self.base.variables()) | set(self.tail_constant) | set(self.limit_val)
        for v in self.tail_prefix:
            names |= set(v)
        return sorted(names)

    def _run(self, f):
        run = self._runs.get(f)
        if run is None:
            run = self._runs[f] = _TailRun(self, f)
        return run

    def evaluate(self, f):
        run = self._run(f)
        return LimitVerdict(
            at_limit=run.limit[f],
            eventually_always=run.steps[-1][f],
            stabilization_index=run.stabilization_index,
        )

    def truth_at(self, world, f):
        if world in self.base:
            return self.base.evaluate(world, f)
        if world == "t0":
            return self.base.evaluate(self.attach, f)
        if world == "limit":
            return self._run(f).limit[f]
        if world == "t#":
            return self._run(f).steps[-1][f]
        if world.startswith("t") and world[1:].isdigit():
            return self._run(f).at_tail(int(world[1:]))[f]
        raise UnknownWorld(world, (*self.base.worlds, "t0", "t<k>", "t#", "limit"))


def build_tail_limit(base, attach, tail_prefix=(), tail_constant=None, limit_val=None):
    tm = TailLimitModel(base, attach, tail_prefix, tail_constant or {}, limit_val or {})
    logger.debug(
        "Tail-limit model at %s: constant=%s strongly_constant=%s",
        attach, tm.constant, tm.strongly_constant,
    )
    return tm


def eval_tail_limit(tm, f):
    """Truth of ``f`` at the limit and eventually along the tail."""
    return tm.evaluate(f)


@dataclass(frozen=True)
class Countermodel:
    """A model together with the world at which a sequent is refuted."""

    model: object
    world: str

    def truth(self, f):
        if isinstance(self.model, TailLimitModel):
            return self.model.truth_at(self.world, f)
        return self.model.evaluate(self.world, f)

    def falsifies(self, sequent):
        return all(self.truth(f) for f in sequent.left) and not any(
            self.truth(f) for f in sequent.right
        )

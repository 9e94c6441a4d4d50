# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
Formula and sequent syntax.

Formulas are built from four constructors only: ``Var``, ``Bottom``,
``Implies`` and ``Box``. The surface syntax accepts the usual sugar
(``~``, ``&``, ``|``, ``<->``, ``top``) and removes it while parsing:

    ~a      := a -> bot
    a | b   := (a -> bot) -> b
    a & b   := (a -> (b -> bot)) -> bot
    a <-> b := (a -> b) & (b -> a)
    top     := bot -> bot

Sequents carry one of three arrows: ``=>`` (GL), ``=s>`` (S) and
``=d>`` (D). Both sides are sets.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from provd.errors import FormulaSyntaxError, LexicalError, MissingArrow, UnbalancedParentheses


# ---------- Formula constructors ----------
class Formula:
    """Common base of the four formula constructors."""

    __slots__ = ()

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True, eq=False, repr=False)
class Var(Formula):
    name: str
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("var", self.name)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (type(other) is Var and self.name == other.name)

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, eq=False, repr=False)
class Bottom(Formula):
    def __hash__(self):
        return 0x0B07

    def __eq__(self, other):
        return type(other) is Bottom

    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True, eq=False, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("imp", self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Implies
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, eq=False, repr=False)
class Box(Formula):
    inner: Formula
    _hash: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("box", self.inner)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Box and self._hash == other._hash and self.inner == other.inner

    def __repr__(self):
        return f"Box({self.inner!r})"


BOT = Bottom()


def neg(f):
    return Implies(f, BOT)


def top():
    return Implies(BOT, BOT)


def disj2(a, b):
    return Implies(Implies(a, BOT), b)


def conj2(a, b):
    return Implies(Implies(a, Implies(b, BOT)), BOT)


def iff(a, b):
    return conj2(Implies(a, b), Implies(b, a))


def conj(items):
    """Right-nested conjunction; the empty conjunction is ``top``."""
    items = list(items)
    if not items:
        return top()
    result = items[-1]
    for item in reversed(items[:-1]):
        result = conj2(item, result)
    return result


def disj(items):
    """Right-nested disjunction; the empty disjunction is ``bot``."""
    items = list(items)
    if not items:
        return BOT
    result = items[-1]
    for item in reversed(items[:-1]):
        result = disj2(item, result)
    return result


def is_boxed(f):
    return type(f) is Box


def variables(f):
    """Set of variable names occurring in ``f``."""
    found = set()
    stack = [f]
    while stack:
        g = stack.pop()
        match g:
            case Var(name=name):
                found.add(name)
            case Implies(left=a, right=b):
                stack.extend((a, b))
            case Box(inner=a):
                stack.append(a)
    return found


def size(f):
    """Number of constructor occurrences."""
    match f:
        case Implies(left=a, right=b):
            return 1 + size(a) + size(b)
        case Box(inner=a):
            return 1 + size(a)
        case _:
            return 1


def modal_depth(f):
    match f:
        case Implies(left=a, right=b):
            return max(modal_depth(a), modal_depth(b))
        case Box(inner=a):
            return 1 + modal_depth(a)
        case _:
            return 0


def propositional_atoms(f):
    """Variables and maximal boxed subformulas: the atoms seen by truth tables."""
    atoms = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) is Implies:
            stack.extend((g.left, g.right))
        elif type(g) is not Bottom:
            atoms.add(g)
    return atoms


# ---------- Sequents ----------
class SequentKind(Enum):
    GL = "=>"
    S = "=s>"
    D = "=d>"

    @property
    def arrow(self):
        return self.value

    @classmethod
    def from_arrow(cls, arrow):
        for kind in cls:
            if kind.value == arrow:
                return kind
        raise MissingArrow(f"Unknown sequent arrow '{arrow}'.", arrow)


@dataclass(frozen=True)
class Sequent:
    kind: SequentKind
    left: frozenset = frozenset()
    right: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.left, frozenset):
            object.__setattr__(self, "left", frozenset(self.left))
        if not isinstance(self.right, frozenset):
            object.__setattr__(self, "right", frozenset(self.right))

    def __str__(self):
        return print_sequent(self)

    @property
    def formulas(self):
        return self.left | self.right

    def sorted_left(self):
        return sorted(self.left, key=formula_key)

    def sorted_right(self):
        return sorted(self.right, key=formula_key)

    def with_kind(self, kind):
        return Sequent(kind, self.left, self.right)

    def boxed_left(self):
        return frozenset(f for f in self.left if type(f) is Box)

    def boxed_right(self):
        return frozenset(f for f in self.right if type(f) is Box)

    def issubsequent(self, other):
        """True when both sides are contained in ``other``'s (weakening order)."""
        return self.left <= other.left and self.right <= other.right


def sequent_formula(s, full=False):
    """
    Formula reading of a sequent: ``conj(left) -> disj(right)``.

    With ``full=False`` an empty left side yields just ``disj(right)``;
    with ``full=True`` it yields ``top -> disj(right)``.
    """
    rhs = disj(s.sorted_right())
    if not s.left and not full:
        return rhs
    return Implies(conj(s.sorted_left()), rhs)


@dataclass(frozen=True)
class SubformulaClosure:
    formulas: frozenset
    boxed: frozenset

    def __contains__(self, f):
        return f in self.formulas

    def __len__(self):
        return len(self.formulas)


def subformula_closure(fs):
    seen = set()
    stack = list(fs)
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        match g:
            case Implies(left=a, right=b):
                stack.extend((a, b))
            case Box(inner=a):
                stack.append(a)
    formulas = frozenset(seen)
    return SubformulaClosure(formulas, frozenset(g for g in formulas if type(g) is Box))


# ---------- Parsing ----------
FORMULA_GRAMMAR = r"""
    ?formula: iff

    ?iff: imp
        | imp "<->" imp          -> iff_
    ?imp: disj
        | disj "->" imp          -> implies
    ?disj: conj
         | disj "|" conj         -> or_
    ?conj: unary
         | conj "&" unary        -> and_
    ?unary: "box" unary          -> box
          | "~" unary            -> neg
          | atom
    ?atom: "bot"                 -> bottom
         | "top"                 -> top
         | NAME                  -> var
         | "(" iff ")"

    sequent: side ARROW side
    side: [iff ("," iff)*]

    ARROW: "=>" | "=s>" | "=d>"
    NAME: /[a-z][a-z0-9_]*/

    %import common.WS
    %ignore WS
"""

_ARROW_RE = re.compile(r"=[sd]?>")


class _Desugar(Transformer):
    def var(self, items):
        return Var(str(items[0]))

    def bottom(self, _):
        return BOT

    def top(self, _):
        return top()

    def box(self, items):
        return Box(items[0])

    def neg(self, items):
        return neg(items[0])

    def implies(self, items):
        return Implies(items[0], items[1])

    def or_(self, items):
        return disj2(items[0], items[1])

    def and_(self, items):
        return conj2(items[0], items[1])

    def iff_(self, items):
        return iff(items[0], items[1])

    def side(self, items):
        return [f for f in items if f is not None]

    def sequent(self, items):
        left, arrow, right = items
        return Sequent(SequentKind.from_arrow(str(arrow)), left, right)


_PARSER = Lark(
    FORMULA_GRAMMAR,
    start=["formula", "sequent"],
    parser="lalr",
    transformer=_Desugar(),
)


def _check_parentheses(text):
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UnbalancedParentheses(
                    f"Unmatched ')' at position {pos} in '{text}'.", text, pos
                )
    if depth:
        raise UnbalancedParentheses(
            f"{depth} unclosed '(' in '{text}'.", text, len(text)
        )


def _parse(text, start):
    _check_parentheses(text)
    try:
        return _PARSER.parse(text, start=start)
    except UnexpectedCharacters as e:
        raise LexicalError(
            f"Unknown token at position {e.pos_in_stream} in '{text}': "
            f"{text[e.pos_in_stream]!r}",
            text,
            e.pos_in_stream,
        ) from None
    except UnexpectedEOF:
        raise FormulaSyntaxError(
            f"Unexpected end of input in '{text}'.", text, len(text)
        ) from None
    except UnexpectedInput as e:
        pos = getattr(e, "pos_in_stream", None)
        raise FormulaSyntaxError(
            f"Syntax error at position {pos} in '{text}'.", text, pos
        ) from None


def parse_formula(text):
    """
    Parse a formula and return its core (sugar-free) form.

    >>> parse_formula("~ box bot")
    Implies(Box(Bottom()), Bottom())
    """
    return _parse(text, "formula")


def parse_sequent(text):
    """Parse ``"<formulas> <arrow> <formulas>"``; duplicates collapse."""
    if not _ARROW_RE.search(text):
        raise MissingArrow(
            f"No sequent arrow ('=>', '=s>' or '=d>') in '{text}'.", text, None
        )
    return _parse(text, "sequent")


# ---------- Printing ----------
_IMP, _OR, _AND, _UNARY, _ATOM = 1, 2, 3, 4, 5

_ASCII = {"imp": " -> ", "or": " | ", "and": " & ", "box": "box", "neg": "~",
          "bot": "bot", "top": "top"}
_UNICODE = {"imp": " → ", "or": " ∨ ", "and": " ∧ ", "box": "□", "neg": "¬",
            "bot": "⊥", "top": "⊤"}


def _sugar_view(f):
    """Classify an implication for sugared display."""
    a, b = f.left, f.right
    if type(a) is Bottom and type(b) is Bottom:
        return "top", ()
    if type(b) is Bottom:
        if type(a) is Implies and type(a.right) is Implies and type(a.right.right) is Bottom:
            return "and", (a.left, a.right.left)
        return "neg", (a,)
    if type(a) is Implies and type(a.right) is Bottom and type(a.left) is not Bottom:
        return "or", (a.left, b)
    return "imp", (a, b)


def _flatten(f, shape):
    view, parts = _sugar_view(f) if type(f) is Implies else (None, ())
    if view != shape:
        return [f]
    return _flatten(parts[0], shape) + _flatten(parts[1], shape)


def _render(f, sugar, sym):
    match f:
        case Var(name=name):
            return name, _ATOM
        case Bottom():
            return sym["bot"], _ATOM
        case Box(inner=inner):
            text, level = _render(inner, sugar, sym)
            if level < _UNARY:
                return f"{sym['box']}({text})", _UNARY
            sep = " " if sym is _ASCII else ""
            return f"{sym['box']}{sep}{text}", _UNARY

    view, parts = _sugar_view(f) if sugar else ("imp", (f.left, f.right))
    if view == "top":
        return sym["top"], _ATOM
    if view == "neg":
        text, level = _render(parts[0], sugar, sym)
        return (sym["neg"] + (text if level >= _UNARY else f"({text})")), _UNARY
    if view in ("or", "and"):
        level_of = _OR if view == "or" else _AND
        pieces = []
        for item in _flatten(f, view):
            text, level = _render(item, sugar, sym)
            pieces.append(text if level > level_of else f"({text})")
        return sym[view].join(pieces), level_of

    ltext, llevel = _render(parts[0], sugar, sym)
    rtext, rlevel = _render(parts[1], sugar, sym)
    if llevel <= _IMP:
        ltext = f"({ltext})"
    if rlevel < _IMP:
        rtext = f"({rtext})"
    return f"{ltext}{sym['imp']}{rtext}", _IMP


@lru_cache(maxsize=200_000)
def print_formula(f, sugar=False, unicode=False):
    """
    Render ``f`` with minimal parentheses.

    The default output uses core connectives only and parses back to
    ``f``. ``sugar=True`` shows ``~ & | top`` where the core shape allows
    it; ``unicode=True`` switches to mathematical symbols. Both are for
    display.
    """
    return _render(f, sugar, _UNICODE if unicode else _ASCII)[0]


def formula_key(f):
    """Total order on formulas used for every deterministic iteration."""
    return print_formula(f)


def print_sequent(s, sugar=False, unicode=False):
    left = ", ".join(print_formula(f, sugar, unicode) for f in s.sorted_left())
    right = ", ".join(print_formula(f, sugar, unicode) for f in s.sorted_right())
    return " ".join(part for part in (left, s.kind.arrow, right) if part)

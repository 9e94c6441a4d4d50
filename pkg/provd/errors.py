# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""Exception hierarchy shared by all provd modules."""


class ProvdError(Exception):
    """Base class for every error raised by provd."""


# ---------- Syntax ----------
class FormulaSyntaxError(ProvdError, ValueError):
    def __init__(self, message, text="", position=None):
        super().__init__(message)
        self.text = text
        self.position = position


class LexicalError(FormulaSyntaxError):
    pass


class UnbalancedParentheses(FormulaSyntaxError):
    pass


class MissingArrow(FormulaSyntaxError):
    pass


# ---------- Models ----------
class ModelError(ProvdError, ValueError):
    pass


class IrreflexivityViolation(ModelError):
    def __init__(self, world):
        super().__init__(
            f"World '{world}' lies on an accessibility cycle; "
            "the frame is not transitive and irreflexive."
        )
        self.world = world


class UnknownWorld(ModelError, KeyError):
    def __init__(self, world, known=()):
        known_txt = ", ".join(sorted(map(str, known)))
        super().__init__(f"Unknown world '{world}'. Known worlds: {known_txt}")
        self.world = world

    def __str__(self):
        return self.args[0]


# ---------- Prover ----------
class ProverError(ProvdError, ValueError):
    pass


class PolicyUnsupported(ProverError):
    pass


class SequentKindMismatch(ProverError):
    pass


class WrongCertificateKind(ProverError):
    pass


# ---------- Hilbert systems ----------
class HilbertError(ProvdError, ValueError):
    pass


class MalformedWitness(HilbertError):
    pass


class EmptyDelta(HilbertError):
    pass


class UnknownSystem(HilbertError):
    pass


# ---------- Transformations ----------
class TransformError(ProvdError, ValueError):
    pass


class InvalidInputProof(TransformError):
    pass


class FormulaNotPresent(TransformError):
    pass


class InputHasCuts(TransformError):
    pass


class ConfigurationMismatch(TransformError):
    pass


# ---------- Artifacts ----------
class SerializationError(ProvdError, ValueError):
    pass


class InternalInvariantError(ProvdError, RuntimeError):
    """A self-check failed. This is a bug in provd, not an input problem."""

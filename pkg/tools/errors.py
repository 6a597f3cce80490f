"""
Error types shared by the Łukasiewicz workbench.
All of them derive from LogicError so the CLI can map them to exit code 2.
"""

from typing import Optional


class LogicError(Exception):
    """Base class for every input or usage error raised by the workbench."""


class FormulaSyntaxError(LogicError):
    """Surface text could not be parsed. `offset` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"syntax error at offset {offset}: {message}")


class TemplateError(LogicError):
    """Instantiating a template with an incomplete binding."""


class ValuationError(LogicError):
    """Unbound proposition, out-of-range value or malformed valuation text."""


class PowerError(LogicError, ValueError):
    """Non-positive exponent passed to power()."""


class SchemeError(LogicError):
    """Unknown axiom or lemma scheme identifier."""


class ProofFormatError(LogicError):
    """A proof file line could not be read."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{message}")


class InconsistentSeedError(LogicError):
    """Lindenbaum extension requested from an inconsistent seed."""


class CanonicalValuationError(LogicError):
    """Both p and ¬p accepted; the consistency oracle is broken."""


class TraceFormatError(ProofFormatError):
    """A JSON-lines extension trace could not be read."""

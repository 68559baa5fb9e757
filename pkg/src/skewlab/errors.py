"""Exception hierarchy shared by every skewlab module."""

from __future__ import annotations


class SkewlabError(Exception):
    """Base class for all errors raised by skewlab."""


class MalformedInput(SkewlabError, ValueError):
    """Tables with inconsistent dimensions or out-of-range entries."""


class ContractViolation(SkewlabError, ValueError):
    """An operation was called outside its precondition."""


class CapacityError(SkewlabError):
    """An exhaustive computation would exceed a hard size guard."""


class UnsupportedOperation(SkewlabError):
    """The requested arithmetic does not exist for these inputs (e.g. x^-1 without an automorphism)."""


class EndomorphismViolation(SkewlabError, ValueError):
    def __init__(self, law: str, witness: tuple[int, ...], message: str | None = None):
        self.law = law
        self.witness = witness
        super().__init__(message or f"map is not {law}: witness {witness}")


class NotUnital(EndomorphismViolation):
    """The map sends one to something other than one."""

    def __init__(self, image: int, one: int):
        super().__init__("unital", (one, image), f"map(one={one}) = {image} != one")


class NotHomomorphism(EndomorphismViolation):
    """The map fails additivity or multiplicativity."""


class ConfigurationError(SkewlabError):
    """A theorem or property identifier does not resolve."""


class DefinitionError(SkewlabError):
    """A definition file failed to parse or verify; carries line-precise diagnostics."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str = "<defs>"):
        self.line = line
        self.column = column
        self.source = source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")

"""
HBG - Error Hierarchy
=====================

Every failure the toolkit reports is an HbgError.  The classes carry the
structured fields the command line needs to print a precise diagnostic
(offending token, file and line, expected and evaluated words).
"""

from typing import Optional


class HbgError(ValueError):
    """Root of all toolkit errors."""


class WordSyntaxError(HbgError):
    """Malformed word expression (bad exponent, unbalanced bracket, stray token)."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


class UnknownGenerator(HbgError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"Unknown generator {token!r}")


class DuplicateGenerator(HbgError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Generator {name!r} declared twice")


class AlphabetMismatch(HbgError):
    def __init__(self, left, right):
        super().__init__(f"Words over different alphabets: {' '.join(left.names)} / {' '.join(right.names)}")


class ParseError(HbgError):
    """A presentation, script, manifest or goldens file that does not parse."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class DuplicateLabel(HbgError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"Relation label {label!r} used twice")


class GeneratorInTarget(HbgError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Replacement word for {name!r} contains {name!r}")


class UnknownRelation(HbgError):
    def __init__(self, ref: str):
        self.ref = ref
        super().__init__(f"Unknown relation {ref!r}")


class CertificateMismatch(HbgError):
    def __init__(self, expected: str, evaluated: str):
        self.expected = expected
        self.evaluated = evaluated
        super().__init__(f"Certificate evaluates to {evaluated!r}, expected {expected!r}")


class BadEliminationRelator(HbgError):
    def __init__(self, name: str, ref: str, occurrences: str):
        self.name = name
        self.ref = ref
        super().__init__(f"Relation {ref!r} cannot eliminate {name!r}: {occurrences}")


class NameClash(HbgError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Generator name {name!r} already in use")


class UnknownGroupName(HbgError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown group {name!r}")


class GroupTableError(HbgError):
    """A multiplication table that is not a group."""


class MissingAssignment(HbgError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"No image assigned to generator {name!r}")


class ScriptError(HbgError):
    """A Tietze move that failed during replay."""

    def __init__(self, index: int, line: Optional[int], cause: Exception):
        self.index = index
        self.line = line
        self.cause = cause
        at = f"move {index}" + (f" (line {line})" if line is not None else "")
        super().__init__(f"{at}: {cause}")


def locate(exc: HbgError, path: Optional[str], line: Optional[int]) -> HbgError:
    """Prefix an error's message with the file and line it came from."""
    if getattr(exc, "path", None) is not None or getattr(exc, "line", None) is not None:
        return exc
    exc.path = path
    exc.line = line
    where = f"{path}:{line}: " if path is not None else f"line {line}: "
    exc.args = (where + str(exc),)
    return exc

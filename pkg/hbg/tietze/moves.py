"""
HBG - Certified Tietze Moves
============================

A certificate is a list of factors (conjugator, relation, sign); it
evaluates to the product of conjugator * relator^sign.  Adding or removing
a relator requires a certificate that evaluates to that relator exactly,
not merely up to conjugacy.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from hbg.errors import BadEliminationRelator, CertificateMismatch, NameClash
from hbg.group.presentation import (
    Presentation,
    Relation,
    add_relation,
    find_relation,
    remove_relation,
    rename_generator,
    substitute_generator,
)
from hbg.group.word import (
    Word,
    conjugate,
    format_word,
    invert,
    multiply,
    power,
    relabel,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    ref: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Factor sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Certificate:
    factors: Tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __add__(self, other: "Certificate") -> "Certificate":
        return Certificate(self.factors + other.factors)


def evaluate_certificate(p: Presentation, cert: Certificate) -> Word:
    result = Word.identity(p.alphabet)
    for factor in cert.factors:
        relator = p.relations[find_relation(p, factor.ref)].relator
        if factor.sign < 0:
            relator = invert(relator)
        result = multiply(result, conjugate(factor.conjugator, relator))
    return result


def format_certificate(p: Presentation, cert: Certificate) -> str:
    """Certificate in the script's `(conj ; ref ; sign)` notation."""
    parts = []
    for factor in cert.factors:
        conj = "" if factor.conjugator.is_identity() else format_word(factor.conjugator)
        parts.append(f"({conj} ; {factor.ref} ; {'+' if factor.sign > 0 else '-'})")
    return " ".join(parts)


def _check(expected: Word, evaluated: Word) -> None:
    if expected != evaluated:
        raise CertificateMismatch(format_word(expected), format_word(evaluated))


def solve_for_generator(relator: Word, gen: int, ref: str = "?") -> Word:
    """
    For relator u g^e v with a single occurrence of g (e = +-1), the word
    (u^-1 v^-1)^e equal to g in the group.
    """
    positions = [i for i, (g, _) in enumerate(relator.syllables) if g == gen]
    name = relator.alphabet.names[gen]
    if len(positions) != 1 or abs(relator.syllables[positions[0]][1]) != 1:
        total = sum(abs(e) for g, e in relator.syllables if g == gen)
        raise BadEliminationRelator(name, ref, f"{total} occurrences, need exactly one")
    at = positions[0]
    u = Word(relator.alphabet, relator.syllables[:at])
    v = Word(relator.alphabet, relator.syllables[at + 1:])
    exp = relator.syllables[at][1]
    return power(multiply(invert(u), invert(v)), exp)


# ============ MOVES ============

@dataclass(frozen=True)
class AddRelator:
    label: Optional[str]
    relator: Word
    certificate: Certificate = field(default_factory=Certificate)
    kind = "addrel"

    def apply(self, p: Presentation) -> Presentation:
        _check(self.relator, evaluate_certificate(p, self.certificate))
        return add_relation(p, self.label, self.relator)

    def summary(self) -> str:
        return f"addrel {self.label}: {format_word(self.relator)}"


@dataclass(frozen=True)
class RemoveRelator:
    ref: str
    certificate: Certificate = field(default_factory=Certificate)
    kind = "delrel"

    def apply(self, p: Presentation) -> Presentation:
        index = find_relation(p, self.ref)
        removed = p.relations[index].relator
        rest = remove_relation(p, index)
        _check(removed, evaluate_certificate(rest, self.certificate))
        return rest

    def summary(self) -> str:
        return f"delrel {self.ref}"


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: Word
    kind = "addgen"

    def apply(self, p: Presentation) -> Presentation:
        if self.name in p.alphabet:
            raise NameClash(self.name)
        alphabet = p.alphabet.with_generator(self.name)
        same = {i: i for i in range(len(p.alphabet))}
        relations = tuple(
            Relation(r.label, relabel(r.relator, alphabet, same), r.line) for r in p.relations
        )
        new = Word.generator(alphabet, self.name)
        definition = relabel(self.definition, alphabet, same)
        extended = Presentation(alphabet, relations)
        return add_relation(extended, self.name, multiply(new, invert(definition)))

    def summary(self) -> str:
        return f"addgen {self.name} := {format_word(self.definition)}"


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    via: str
    kind = "delgen"

    def apply(self, p: Presentation) -> Presentation:
        gen = p.alphabet.id_of(self.name)
        index = find_relation(p, self.via)
        replacement = solve_for_generator(p.relations[index].relator, gen, self.via)
        logger.debug("Eliminating %s := %s", self.name, format_word(replacement))
        return substitute_generator(remove_relation(p, index), self.name, replacement)

    def summary(self) -> str:
        return f"delgen {self.name} via {self.via}"


@dataclass(frozen=True)
class RenameGenerator:
    old: str
    new: str
    kind = "rename"

    def apply(self, p: Presentation) -> Presentation:
        return rename_generator(p, self.old, self.new)

    def summary(self) -> str:
        return f"rename {self.old} -> {self.new}"


TietzeMove = Union[AddRelator, RemoveRelator, AddGenerator, RemoveGenerator, RenameGenerator]


def apply_move(p: Presentation, move: TietzeMove) -> Presentation:
    return move.apply(p)

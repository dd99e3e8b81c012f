"""
HBG - Finite Presentations
==========================

Named generators plus labeled relators, the `.pres` text format, canonical
form and generator substitution.

File format:

    # comment
    gens: a1 a2 d o t r
    rel S2: o d o d = a1^2 a2^2      equality, stored as lhs rhs^-1
    rel S4: a1 <-> a2                commuting pair, stored as [a1, a2]
    rel o^2                          bare relator, no label
"""

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from hbg.errors import (
    DuplicateLabel,
    GeneratorInTarget,
    HbgError,
    NameClash,
    ParseError,
    UnknownRelation,
    locate,
)
from hbg.group.word import (
    Alphabet,
    Letters,
    Word,
    canonical_letters,
    cyclic_reduce,
    format_word,
    letter_key,
    parse_relation_text,
    relabel,
    substitute,
)

_REL_LINE = re.compile(r"^rel\b\s*(?:(?P<label>[^\s:]*)\s*:)?\s*(?P<body>.*)$")


@dataclass(frozen=True)
class Relation:
    label: Optional[str]
    relator: Word
    line: Optional[int] = field(default=None, compare=False)

    @property
    def ref(self) -> str:
        return self.label if self.label is not None else "?"


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: Tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        seen = set()
        for relation in self.relations:
            if relation.relator.alphabet != self.alphabet:
                raise HbgError(f"Relation {relation.ref} is not over the presentation's generators")
            if relation.label is None:
                continue
            if relation.label in seen:
                raise DuplicateLabel(relation.label)
            seen.add(relation.label)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.alphabet.names

    def relators(self) -> List[Word]:
        return [r.relator for r in self.relations]

    def labels(self) -> List[Optional[str]]:
        return [r.label for r in self.relations]

    def ref_of(self, index: int) -> str:
        label = self.relations[index].label
        return label if label is not None else f"#{index}"


# ============ PARSING AND RENDERING ============

def parse_presentation(text: str, path: Optional[Union[str, Path]] = None) -> Presentation:
    source = str(path) if path is not None else None
    alphabet: Optional[Alphabet] = None
    relations: List[Relation] = []
    labels = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if alphabet is None:
                if not line.startswith("gens:"):
                    raise ParseError("expected 'gens:' as the first line", source, number)
                alphabet = Alphabet(tuple(line[len("gens:"):].split()))
                continue
            if line.startswith("gens:"):
                raise ParseError("second 'gens:' line", source, number)
            match = _REL_LINE.match(line)
            if not match:
                raise ParseError(f"expected 'rel', got {line.split()[0]!r}", source, number)
            label = match.group("label") or None
            body = match.group("body")
            if not body.strip():
                raise ParseError("empty relation", source, number)
            if label is not None and label in labels:
                raise DuplicateLabel(label)
            relator = parse_relation_text(body, alphabet)
        except HbgError as exc:
            raise locate(exc, source, number)
        if label is not None:
            labels.add(label)
        relations.append(Relation(label, relator, number))

    if alphabet is None:
        raise ParseError("no 'gens:' line", source, None)
    return Presentation(alphabet, tuple(relations))


def read_source(path: Union[str, Path]) -> str:
    """Text of a corpus file; undecodable bytes are a parse error, not a crash."""
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8 (byte {exc.start})", str(path)) from None


def load_presentation(path: Union[str, Path]) -> Presentation:
    path = Path(path)
    return parse_presentation(read_source(path), path)


def render_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    for relation in p.relations:
        body = format_word(relation.relator)
        lines.append(f"rel {relation.label}: {body}" if relation.label is not None else f"rel {body}")
    return "\n".join(lines) + "\n"


# ============ CANONICAL FORM ============

def canonicalize(p: Presentation) -> Presentation:
    """
    Cyclically reduced, least-rotation representatives; trivial and
    duplicate relators dropped; sorted.  Labels do not survive.
    """
    seen = set()
    cores: List[Letters] = []
    for relation in p.relations:
        core = canonical_letters(relation.relator)
        if core is None or core in seen:
            continue
        seen.add(core)
        cores.append(core)
    cores.sort(key=lambda c: [letter_key(x) for x in c])
    return Presentation(
        p.alphabet,
        tuple(Relation(None, Word.from_letters(p.alphabet, core)) for core in cores),
    )


def equal_canonical(p: Presentation, q: Presentation) -> bool:
    if p.generators != q.generators:
        return False
    left = [r.relator.syllables for r in canonicalize(p).relations]
    right = [r.relator.syllables for r in canonicalize(q).relations]
    return left == right


# ============ EDITING ============

def find_relation(p: Presentation, ref: str) -> int:
    """Index of a relation given by label or by `#index`."""
    if ref.startswith("#"):
        try:
            index = int(ref[1:])
        except ValueError:
            raise UnknownRelation(ref) from None
        if 0 <= index < len(p.relations):
            return index
        raise UnknownRelation(ref)
    for index, relation in enumerate(p.relations):
        if relation.label == ref:
            return index
    raise UnknownRelation(ref)


def add_relation(p: Presentation, label: Optional[str], relator: Word) -> Presentation:
    if label is not None and label in p.labels():
        raise DuplicateLabel(label)
    return Presentation(p.alphabet, p.relations + (Relation(label, relator),))


def remove_relation(p: Presentation, index: int) -> Presentation:
    return Presentation(p.alphabet, p.relations[:index] + p.relations[index + 1:])


def substitute_generator(p: Presentation, name: str, w: Word) -> Presentation:
    """Replace name by w in every relator and drop name from the generators."""
    gen = p.alphabet.id_of(name)
    if gen in w.generators():
        raise GeneratorInTarget(name)
    alphabet = p.alphabet.without(name)
    mapping = {old: (old if old < gen else old - 1) for old in range(len(p.alphabet)) if old != gen}
    relations = tuple(
        replace(r, relator=relabel(substitute(r.relator, gen, w), alphabet, mapping))
        for r in p.relations
    )
    return Presentation(alphabet, relations)


def rename_generator(p: Presentation, old: str, new: str) -> Presentation:
    if new in p.alphabet:
        raise NameClash(new)
    alphabet = p.alphabet.renamed(old, new)
    identity = {i: i for i in range(len(alphabet))}
    return Presentation(
        alphabet,
        tuple(replace(r, relator=relabel(r.relator, alphabet, identity)) for r in p.relations),
    )


# ============ STRUCTURE ============

def commuting_pairs(p: Presentation) -> Dict[Tuple[int, int], int]:
    """
    Generator pairs {x, y} declared commuting by some relator whose cyclic
    core is a commutator of the two single letters; first relation wins.
    """
    pairs: Dict[Tuple[int, int], int] = {}
    for index, relation in enumerate(p.relations):
        core = cyclic_reduce(relation.relator)[0].letters()
        if len(core) != 4:
            continue
        if core[0] == -core[2] and core[1] == -core[3] and abs(core[0]) != abs(core[1]):
            a, b = sorted((abs(core[0]) - 1, abs(core[1]) - 1))
            pairs.setdefault((a, b), index)
    return pairs


def tag_of(label: Optional[str]) -> str:
    return label.split(".", 1)[0] if label is not None else "#"


def tag_counts(p: Presentation) -> Dict[str, int]:
    return dict(Counter(tag_of(r.label) for r in p.relations))


def abelian_rows(relators: Sequence[Word], width: int) -> List[List[int]]:
    rows = []
    for w in relators:
        row = [0] * width
        for gen, exp in w.syllables:
            row[gen] += exp
        rows.append(row)
    return rows

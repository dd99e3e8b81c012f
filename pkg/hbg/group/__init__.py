# HBG - free-group words and finite presentations
from hbg.group.presentation import (
    Presentation,
    Relation,
    canonicalize,
    equal_canonical,
    load_presentation,
    parse_presentation,
    render_presentation,
    substitute_generator,
)
from hbg.group.word import (
    Alphabet,
    Word,
    commutator,
    conjugate,
    cyclic_reduce,
    format_word,
    invert,
    multiply,
    parse_word,
)

__all__ = [
    "Alphabet",
    "Presentation",
    "Relation",
    "Word",
    "canonicalize",
    "commutator",
    "conjugate",
    "cyclic_reduce",
    "equal_canonical",
    "format_word",
    "invert",
    "load_presentation",
    "multiply",
    "parse_presentation",
    "parse_word",
    "render_presentation",
    "substitute_generator",
]

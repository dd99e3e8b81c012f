"""
HBG - Free Group Words
======================

Words over a named generator alphabet.  A word is stored run-length as
(generator id, exponent) syllables and is always freely reduced, so
a1^40 a2^-40 is two syllables long whatever the exponents.

Expression grammar accepted by parse_word:

    expr    := product { '*' product }      h * g = h g h^-1, left-associative
    product := term { term }                juxtaposition is multiplication
    term    := atom [ '^' integer ]
    atom    := generator | '1' | '(' expr ')' | '[' expr ',' expr ']'

`[x,y]` is the commutator x y x^-1 y^-1.  `#` starts a comment.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from hbg.errors import (
    AlphabetMismatch,
    DuplicateGenerator,
    UnknownGenerator,
    WordSyntaxError,
)

GENERATOR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")

Syllable = Tuple[int, int]
Letters = Tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names; a generator's id is its position."""

    names: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index: Dict[str, int] = {}
        for position, name in enumerate(names):
            if not GENERATOR_NAME.fullmatch(name):
                raise WordSyntaxError("invalid generator name", 0, name)
            if name in index:
                raise DuplicateGenerator(name)
            index[name] = position
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def without(self, name: str) -> "Alphabet":
        return Alphabet(tuple(n for n in self.names if n != name))

    def with_generator(self, name: str) -> "Alphabet":
        return Alphabet(self.names + (name,))

    def renamed(self, old: str, new: str) -> "Alphabet":
        self.id_of(old)
        return Alphabet(tuple(new if n == old else n for n in self.names))


def free_reduce(syllables: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    out: List[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


def reduce_letters(letters: Iterable[int]) -> Letters:
    out: List[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def letter_key(letter: int) -> Tuple[int, int]:
    """Alphabet order, positive before negative."""
    return (abs(letter), 0 if letter > 0 else 1)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Build through the module functions, not directly."""

    alphabet: Alphabet
    syllables: Tuple[Syllable, ...] = ()

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, ())

    @classmethod
    def from_syllables(cls, alphabet: Alphabet, syllables: Iterable[Syllable]) -> "Word":
        return cls(alphabet, free_reduce(syllables))

    @classmethod
    def generator(cls, alphabet: Alphabet, name: str, exponent: int = 1) -> "Word":
        return cls.from_syllables(alphabet, [(alphabet.id_of(name), exponent)])

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[int]) -> "Word":
        return cls.from_syllables(alphabet, ((abs(x) - 1, 1 if x > 0 else -1) for x in letters))

    def letters(self) -> Letters:
        """Signed letters: +(id+1) for a generator, -(id+1) for its inverse."""
        out: List[int] = []
        for gen, exp in self.syllables:
            letter = gen + 1 if exp > 0 else -(gen + 1)
            out.extend([letter] * abs(exp))
        return tuple(out)

    def __len__(self) -> int:
        return sum(abs(exp) for _, exp in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def generators(self) -> List[int]:
        return sorted({gen for gen, _ in self.syllables})

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self) -> str:
        return format_word(self)


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(u.alphabet, v.alphabet)


def multiply(u: Word, v: Word) -> Word:
    _same_alphabet(u, v)
    return Word.from_syllables(u.alphabet, u.syllables + v.syllables)


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple((gen, -exp) for gen, exp in reversed(w.syllables)))


def conjugate(h: Word, g: Word) -> Word:
    """h * g = h g h^-1."""
    _same_alphabet(h, g)
    return Word.from_syllables(h.alphabet, h.syllables + g.syllables + invert(h).syllables)


def commutator(x: Word, y: Word) -> Word:
    _same_alphabet(x, y)
    return Word.from_syllables(
        x.alphabet, x.syllables + y.syllables + invert(x).syllables + invert(y).syllables
    )


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else invert(w)
    syllables: List[Syllable] = []
    for _ in range(abs(n)):
        syllables.extend(base.syllables)
    return Word.from_syllables(w.alphabet, syllables)


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator core conjugator^-1."""
    letters = w.letters()
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return (
        Word.from_letters(w.alphabet, letters[i:j + 1]),
        Word.from_letters(w.alphabet, letters[:i]),
    )


def exponent_sums(w: Word) -> List[int]:
    sums = [0] * len(w.alphabet)
    for gen, exp in w.syllables:
        sums[gen] += exp
    return sums


def substitute(w: Word, gen: int, replacement: Word) -> Word:
    """Replace every gen^e in w by replacement^e."""
    _same_alphabet(w, replacement)
    out: List[Syllable] = []
    for g, exp in w.syllables:
        if g == gen:
            out.extend(power(replacement, exp).syllables)
        else:
            out.append((g, exp))
    return Word.from_syllables(w.alphabet, out)


def relabel(w: Word, alphabet: Alphabet, mapping: Mapping[int, int]) -> Word:
    """Move w onto another alphabet through a generator id mapping."""
    return Word.from_syllables(alphabet, ((mapping[g], exp) for g, exp in w.syllables))


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    names = w.alphabet.names
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.syllables)


# ============ PARSER ============

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_-]*)|(?P<int>-?\d+)|(?P<op>[\^*()\[\],]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    text = text.split("#", 1)[0]
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, op: str) -> None:
        kind, value, at = self.take()
        if kind != "op" or value != op:
            raise WordSyntaxError(f"expected {op!r}", at, self.text)

    def starts_atom(self) -> bool:
        kind, value, _ = self.peek()
        return kind == "name" or (kind == "int" and value == "1") or (kind == "op" and value in "([")

    def parse(self) -> Word:
        if self.peek()[0] == "end":
            return Word.identity(self.alphabet)
        word = self.expr()
        kind, value, at = self.peek()
        if kind != "end":
            raise WordSyntaxError(f"unexpected {value!r}", at, self.text)
        return word

    def expr(self) -> Word:
        word = self.product()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            word = conjugate(word, self.product())
        return word

    def product(self) -> Word:
        if not self.starts_atom():
            kind, value, at = self.peek()
            raise WordSyntaxError(f"expected a generator, got {value or 'end of input'!r}", at, self.text)
        word = self.term()
        while self.starts_atom():
            word = multiply(word, self.term())
        return word

    def term(self) -> Word:
        word = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, at = self.take()
            if kind != "int":
                raise WordSyntaxError("malformed exponent", at, self.text)
            word = power(word, int(value))
        return word

    def atom(self) -> Word:
        kind, value, at = self.take()
        if kind == "name":
            if value not in self.alphabet:
                raise UnknownGenerator(value)
            return Word.generator(self.alphabet, value)
        if kind == "int":
            return Word.identity(self.alphabet)
        if value == "(":
            word = self.expr()
            self.expect(")")
            return word
        if value == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return commutator(left, right)
        raise WordSyntaxError(f"unexpected {value!r}", at, self.text)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse an expression into a freely reduced word over alphabet."""
    return _Parser(text, alphabet).parse()


def scan_generator_names(text: str) -> List[str]:
    """Generator-like tokens of an expression in order of first appearance."""
    seen: Dict[str, None] = {}
    for kind, value, _ in _tokenize(text):
        if kind == "name":
            seen.setdefault(value, None)
    return list(seen)


def parse_relation_text(text: str, alphabet: Alphabet) -> Word:
    """
    Parse `lhs = rhs` (relator lhs rhs^-1), `x <-> y` (relator [x,y]) or a
    bare relator expression.
    """
    body = text.split("#", 1)[0]
    if "<->" in body:
        left, right = body.split("<->", 1)
        if "<->" in right or "=" in right or "=" in left:
            raise WordSyntaxError("more than one relation operator", body.find("<->"), body)
        return commutator(parse_word(left, alphabet), parse_word(right, alphabet))
    if "=" in body:
        left, right = body.split("=", 1)
        if "=" in right:
            raise WordSyntaxError("more than one '='", len(left) + 1 + right.find("="), body)
        return multiply(parse_word(left, alphabet), invert(parse_word(right, alphabet)))
    return parse_word(body, alphabet)


def canonical_letters(w: Word) -> Optional[Letters]:
    """
    Least rotation of the cyclic core of w or of its inverse, or None for a
    word that is trivial up to conjugacy.
    """
    core = cyclic_reduce(w)[0].letters()
    if not core:
        return None
    best: Optional[Letters] = None
    best_key = None
    for candidate in (core, invert_letters(core)):
        for k in range(len(candidate)):
            rotation = candidate[k:] + candidate[:k]
            key = [letter_key(x) for x in rotation]
            if best is None or key < best_key:
                best, best_key = rotation, key
    return best

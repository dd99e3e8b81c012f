import unittest

from hbg.errors import AlphabetMismatch, DuplicateGenerator, UnknownGenerator, WordSyntaxError
from hbg.group.word import (
    Alphabet,
    Word,
    canonical_letters,
    commutator,
    cyclic_reduce,
    exponent_sums,
    format_word,
    free_reduce,
    invert,
    multiply,
    parse_relation_text,
    parse_word,
    scan_generator_names,
    substitute,
)

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def w(text, alphabet=ABC):
    return parse_word(text, alphabet)


class TestWordParsing(unittest.TestCase):
    def test_1_conjugation(self):
        """Check 1: h * g parses as h g h^-1."""
        self.assertEqual(format_word(parse_word("o * d", Alphabet(("o", "d")))), "o d o^-1")

    def test_2_conjugation_is_left_associative(self):
        """Check 2: a * b * c is (a * b) * c."""
        self.assertEqual(format_word(w("a * b * c")), "a b a^-1 c a b^-1 a^-1")
        self.assertEqual(w("a * (b * c)"), w("a b c b^-1 a^-1"))

    def test_3_commutator(self):
        """Check 3: [x, y] is x y x^-1 y^-1."""
        self.assertEqual(format_word(w("[a, b]")), "a b a^-1 b^-1")
        self.assertEqual(w("[a b, c]"), w("a b c b^-1 a^-1 c^-1"))

    def test_4_powers_and_identity(self):
        """Check 4: exponents merge and the identity prints as 1."""
        self.assertEqual(format_word(w("a^3 a^-1")), "a^2")
        self.assertEqual(format_word(w("(a b)^-2")), "b^-1 a^-1 b^-1 a^-1")
        self.assertTrue(w("1").is_identity())
        self.assertTrue(w("").is_identity())
        self.assertTrue(w("a b b^-1 a^-1").is_identity())
        self.assertEqual(format_word(w("1")), "1")

    def test_5_hyphenated_generator_names(self):
        """Check 5: names like d-11 are single generators."""
        alphabet = Alphabet(("d-11", "d12"))
        word = parse_word("d-11^-1 d12^2", alphabet)
        self.assertEqual(word.syllables, ((0, -1), (1, 2)))

    def test_6_syntax_errors(self):
        """Check 6: malformed expressions raise WordSyntaxError with a position."""
        for text in ("a^", "(a b", "[a, b", "a $ b", "a^b", "2 a", "a )"):
            with self.subTest(text=text):
                with self.assertRaises(WordSyntaxError) as ctx:
                    w(text)
                self.assertGreaterEqual(ctx.exception.position, 0)

    def test_7_unknown_generator(self):
        """Check 7: names outside the alphabet raise UnknownGenerator."""
        with self.assertRaises(UnknownGenerator) as ctx:
            w("a x")
        self.assertEqual(ctx.exception.token, "x")

    def test_8_relation_forms(self):
        """Check 8: 'lhs = rhs' is lhs rhs^-1 and 'x <-> y' is [x, y]."""
        self.assertEqual(parse_relation_text("a b = c", ABC), w("a b c^-1"))
        self.assertEqual(parse_relation_text("a <-> b c", ABC), w("[a, b c]"))
        self.assertEqual(parse_relation_text("a^2", ABC), w("a^2"))
        with self.assertRaises(WordSyntaxError):
            parse_relation_text("a = b = c", ABC)

    def test_9_scan_names(self):
        """Check 9: generator names are collected in order of first appearance."""
        self.assertEqual(scan_generator_names("o * d o^2 [t, o]"), ["o", "d", "t"])


class TestWordOperations(unittest.TestCase):
    def test_10_free_reduce(self):
        """Check 10: free reduction merges and cancels syllables."""
        self.assertEqual(free_reduce([(0, 1), (0, 2), (1, 1), (1, -1), (0, -3)]), ())
        self.assertEqual(free_reduce([(0, 1), (1, 0), (0, 1)]), ((0, 2),))

    def test_11_inverse(self):
        """Check 11: w w^-1 is the identity."""
        word = w("a b^2 c^-1 a")
        self.assertTrue(multiply(word, invert(word)).is_identity())
        self.assertEqual(invert(invert(word)), word)

    def test_12_cyclic_reduce(self):
        """Check 12: cyclic_reduce splits off the conjugating prefix."""
        core, conj = cyclic_reduce(w("a b c b^-1 a^-1"))
        self.assertEqual(core, w("c"))
        self.assertEqual(conj, w("a b"))
        core, conj = cyclic_reduce(w("b a b^-1 a^-1"))
        self.assertEqual(core, w("b a b^-1 a^-1"))
        self.assertTrue(conj.is_identity())

    def test_13_exponent_sums(self):
        """Check 13: exponent sums per generator."""
        self.assertEqual(exponent_sums(w("a b a^-3 c^2 b")), [-2, 2, 2])

    def test_14_substitute(self):
        """Check 14: substitution replaces every power of the generator."""
        result = substitute(w("a c^2 b c^-1"), 2, w("a b"))
        self.assertEqual(result, w("a a b a b b b^-1 a^-1"))

    def test_15_alphabet_checks(self):
        """Check 15: duplicate names and mixed alphabets are rejected."""
        with self.assertRaises(DuplicateGenerator):
            Alphabet(("a", "b", "a"))
        with self.assertRaises(AlphabetMismatch):
            multiply(Word.generator(AB, "a"), Word.generator(ABC, "a"))
        self.assertEqual(commutator(Word.generator(AB, "a"), Word.generator(AB, "b")), parse_word("[a, b]", AB))

    def test_16_canonical_letters(self):
        """Check 16: rotations and inverses share one canonical representative."""
        base = canonical_letters(w("a b c"))
        for text in ("b c a", "c a b", "c^-1 b^-1 a^-1", "a^-1 c^-1 b^-1", "b^-1 (a b c) b"):
            with self.subTest(text=text):
                self.assertEqual(canonical_letters(w(text)), base)
        self.assertIsNone(canonical_letters(w("a b a^-1 b^-1 b a b^-1 a^-1")))
        self.assertNotEqual(canonical_letters(w("a b")), canonical_letters(w("a b^-1")))


if __name__ == "__main__":
    unittest.main()

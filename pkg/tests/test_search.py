import unittest

from hbg.group.presentation import parse_presentation
from hbg.group.word import parse_relation_text, parse_word
from hbg.search.derive import (
    FOUND,
    REFUTED,
    UNKNOWN,
    DeriveStatus,
    SearchBudget,
    abelian_filter,
    certificate_key,
    commute_rest,
    derive,
    match_factor,
)
from hbg.tietze.moves import Certificate, Factor, evaluate_certificate, format_certificate

SMALL = "gens: a b c\nrel C: a <-> b\nrel R: a^2\nrel T: c^3 = b\n"


def factor_of(p, conj, ref, sign=1):
    return Factor(parse_word(conj, p.alphabet), ref, sign)


class TestCommutation(unittest.TestCase):
    def test_1_commute_rest(self):
        """Check 1: letters cancel across commuting neighbours only."""
        pairs = frozenset({(1, 2)})
        self.assertEqual(commute_rest((1, 2, -1), pairs), (2,))
        self.assertEqual(commute_rest((1, 3, -1), pairs), (1, 3, -1))
        self.assertEqual(commute_rest((1, 2, 2, -1, -2), pairs), (2,))
        self.assertEqual(commute_rest((1, -1, 3), pairs), (3,))

    def test_2_match_factor(self):
        """Check 2: a conjugate of a rotated relator is matched to its factor."""
        p = parse_presentation(SMALL)
        factor = match_factor(p, 1, parse_word("b a^2 b^-1", p.alphabet))
        self.assertEqual(factor.ref, "R")
        self.assertEqual(factor.sign, 1)
        self.assertEqual(factor.conjugator, parse_word("b", p.alphabet))

        inverse = match_factor(p, 0, parse_word("c b a b^-1 a^-1 c^-1", p.alphabet))
        self.assertEqual(inverse.sign, -1)
        self.assertEqual(
            evaluate_certificate(p, Certificate((inverse,))),
            parse_word("c b a b^-1 a^-1 c^-1", p.alphabet),
        )
        self.assertIsNone(match_factor(p, 1, parse_word("a^3", p.alphabet)))

    def test_3_abelian_filter(self):
        """Check 3: the abelian filter rules out words outside the relator lattice."""
        p = parse_presentation(SMALL)
        self.assertTrue(abelian_filter(p, parse_word("c^6 b^-2", p.alphabet)))
        self.assertTrue(abelian_filter(p, parse_word("b a b^-1 a", p.alphabet)))
        self.assertFalse(abelian_filter(p, parse_word("a", p.alphabet)))
        self.assertFalse(abelian_filter(p, parse_word("c^2", p.alphabet)))


class TestDerive(unittest.TestCase):
    def setUp(self):
        self.p = parse_presentation(SMALL)

    def target(self, text):
        return parse_relation_text(text, self.p.alphabet)

    def assertDerives(self, text, budget=None):
        target = self.target(text)
        result = derive(self.p, target, budget)
        self.assertEqual(result.status, FOUND, result.reason)
        self.assertEqual(evaluate_certificate(self.p, result.certificate), target)
        return result

    def test_4_conjugate_of_relator(self):
        """Check 4: a conjugate of one relator needs one essential factor."""
        result = self.assertDerives("b c a^2 c^-1 b^-1")
        self.assertEqual(result.depth, 1)

    def test_5_commutation_only(self):
        """Check 5: consequences of the commuting relations need no essential factor."""
        result = self.assertDerives("a b^2 a^-1 b^-2")
        self.assertEqual(result.depth, 0)
        self.assertGreater(len(result.certificate), 0)
        self.assertTrue(all(f.ref == "C" for f in result.certificate.factors))

    def test_6_identity(self):
        """Check 6: the identity has the empty certificate."""
        result = self.assertDerives("a a^-1")
        self.assertEqual(len(result.certificate), 0)

    def test_7_combined(self):
        """Check 7: several relators combine into one certificate."""
        result = self.assertDerives("c^6 = a^2 b^2")
        self.assertGreaterEqual(result.depth, 2)

    def test_8_refuted(self):
        """Check 8: words outside the abelian lattice are refuted without search."""
        result = derive(self.p, self.target("a"))
        self.assertEqual(result.status, REFUTED)
        self.assertIsNone(result.certificate)
        self.assertEqual(result.nodes, 0)

    def test_9_unknown_on_budget(self):
        """Check 9: running out of factors is unknown, never a refutation."""
        result = derive(self.p, self.target("c^6 = a^2 b^2"), SearchBudget(max_factors=1))
        self.assertEqual(result.status, UNKNOWN)
        self.assertIsNone(result.certificate)
        self.assertEqual(result.reason, "no certificate with at most 1 factors")

    def test_10_unknown_on_time(self):
        """Check 10: the time limit turns the result into unknown."""
        result = derive(self.p, self.target("a^2"), SearchBudget(time_limit=1e-9))
        self.assertEqual(result.status, UNKNOWN)
        self.assertEqual(result.reason, "time limit")

    def test_11_deterministic(self):
        """Check 11: repeated and parallel runs return the same certificate."""
        target = self.target("c^6 = a^2 b^2")
        first = derive(self.p, target)
        second = derive(self.p, target)
        parallel = derive(self.p, target, workers=2)
        text = format_certificate(self.p, first.certificate)
        self.assertEqual(format_certificate(self.p, second.certificate), text)
        self.assertEqual(format_certificate(self.p, parallel.certificate), text)

    def test_12_budget_validation(self):
        """Check 12: negative or empty bounds are rejected."""
        for kwargs in ({"max_factors": -1}, {"max_factors": 0}, {"max_conjugator_length": -1},
                       {"max_intermediate_length": 0}, {"time_limit": 0}, {"memo_entries": 0}):
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    SearchBudget(**kwargs)

    def test_13_least_certificate_wins(self):
        """Check 13: at the minimal depth the shortest conjugators win, then the smallest labels."""
        p = parse_presentation("gens: a b\nrel A: b a^2 b^-1\nrel B: a^2\n")
        result = derive(p, parse_word("a^2", p.alphabet))
        self.assertEqual(result.status, DeriveStatus.FOUND)
        self.assertEqual(result.depth, 1)
        self.assertEqual(len(result.certificate), 1)
        factor = result.certificate.factors[0]
        self.assertEqual((factor.ref, factor.sign, len(factor.conjugator)), ("B", 1, 0))
        self.assertEqual(format_certificate(p, result.certificate), format_certificate(
            p, derive(p, parse_word("a^2", p.alphabet), workers=2).certificate))

        twins = parse_presentation("gens: a\nrel Z: a^2\nrel Y: a^2\n")
        result = derive(twins, parse_word("a^2", twins.alphabet))
        self.assertEqual([f.ref for f in result.certificate.factors], ["Y"])

    def test_14_certificate_key(self):
        """Check 14: certificates order by factor count, conjugator length, then labels."""
        p = parse_presentation(SMALL)
        short = (factor_of(p, "", "R"),)
        conjugated = (factor_of(p, "b", "R"),)
        relabelled = (factor_of(p, "", "C"),)
        pair = (factor_of(p, "", "C"), factor_of(p, "", "C"))
        keys = [certificate_key(f) for f in (pair, conjugated, short, relabelled)]
        self.assertEqual(sorted(keys), [keys[3], keys[2], keys[1], keys[0]])
        self.assertEqual(certificate_key(()), (0, 0, ()))
        self.assertEqual(DeriveStatus("found"), FOUND)
        self.assertEqual(FOUND.value, "found")


if __name__ == "__main__":
    unittest.main()

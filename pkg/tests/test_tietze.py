import tempfile
import unittest
from pathlib import Path

from hbg.errors import (
    BadEliminationRelator,
    CertificateMismatch,
    NameClash,
    ParseError,
    UnknownRelation,
)
from hbg.group.presentation import equal_canonical, parse_presentation
from hbg.group.word import parse_word
from hbg.tietze.ledger import GENESIS, TranscriptLedger
from hbg.tietze.moves import (
    AddGenerator,
    AddRelator,
    Certificate,
    Factor,
    RemoveGenerator,
    RemoveRelator,
    RenameGenerator,
    apply_move,
    evaluate_certificate,
    format_certificate,
    solve_for_generator,
)
from hbg.tietze.script import parse_script, replay_script

SOURCE = "gens: a b\nrel R1: a <-> b\nrel R2: a^2\n"
TARGET = "gens: a b\nrel b a b^-1 a^-1\nrel a^-2\n"

GOOD_SCRIPT = """\
source s.pres
target t.pres
# conjugate of R2
addrel R3: b a^2 b^-1 by
    (b ; R2 ; +)
delrel R2 by (b^-1 ; R3 ; +)
addgen c := a b
delgen c via c
"""

BAD_SCRIPT = """\
source s.pres
target t.pres
addrel R3: a^2 by (b ; R2 ; +)
delrel R1
"""


def factor(p, conj, ref, sign=1):
    return Factor(parse_word(conj, p.alphabet), ref, sign)


class TestMoves(unittest.TestCase):
    def setUp(self):
        self.p = parse_presentation(SOURCE)

    def test_1_certificate_evaluation(self):
        """Check 1: a certificate multiplies conjugates of relators in order."""
        cert = Certificate((factor(self.p, "b", "R2"), factor(self.p, "", "R1", -1)))
        expected = parse_word("b a^2 b^-1 (a b a^-1 b^-1)^-1", self.p.alphabet)
        self.assertEqual(evaluate_certificate(self.p, cert), expected)
        self.assertEqual(format_certificate(self.p, cert), "(b ; R2 ; +) ( ; R1 ; -)")
        self.assertEqual(len(cert + cert), 4)

    def test_2_addrel_requires_exact_certificate(self):
        """Check 2: addrel accepts an exact certificate and rejects a conjugate."""
        relator = parse_word("b a^2 b^-1", self.p.alphabet)
        q = apply_move(self.p, AddRelator("R3", relator, Certificate((factor(self.p, "b", "R2"),))))
        self.assertEqual(q.labels(), ["R1", "R2", "R3"])
        with self.assertRaises(CertificateMismatch) as ctx:
            AddRelator("R3", parse_word("a^2", self.p.alphabet),
                       Certificate((factor(self.p, "b", "R2"),))).apply(self.p)
        self.assertEqual(ctx.exception.expected, "a^2")
        self.assertEqual(ctx.exception.evaluated, "b a^2 b^-1")

    def test_3_delrel_cannot_use_itself(self):
        """Check 3: delrel evaluates its certificate without the removed relation."""
        with self.assertRaises(UnknownRelation):
            RemoveRelator("R2", Certificate((factor(self.p, "", "R2"),))).apply(self.p)
        q = parse_presentation("gens: a b\nrel R1: a^2\nrel R2: b a^2 b^-1\n")
        r = RemoveRelator("R2", Certificate((factor(q, "b", "R1"),))).apply(q)
        self.assertEqual(r.labels(), ["R1"])

    def test_4_trivial_relator_needs_no_certificate(self):
        """Check 4: a relator that reduces to 1 is removed with the empty certificate."""
        q = parse_presentation("gens: a\nrel T: a a^-1\nrel a^3\n")
        self.assertEqual(RemoveRelator("T").apply(q).labels(), [None])

    def test_5_addgen_and_delgen(self):
        """Check 5: addgen appends a defining relator; delgen via it restores the presentation."""
        q = AddGenerator("c", parse_word("a b", self.p.alphabet)).apply(self.p)
        self.assertEqual(q.generators, ("a", "b", "c"))
        self.assertEqual(q.relations[-1].label, "c")
        self.assertEqual(q.relations[-1].relator, parse_word("c b^-1 a^-1", q.alphabet))
        back = RemoveGenerator("c", "c").apply(q)
        self.assertEqual(back, self.p)
        with self.assertRaises(NameClash):
            AddGenerator("a", parse_word("b", self.p.alphabet)).apply(self.p)

    def test_6_solve_for_generator(self):
        """Check 6: a single occurrence of g determines g."""
        alphabet = parse_presentation("gens: a b c\n").alphabet
        self.assertEqual(solve_for_generator(parse_word("a c b", alphabet), 2), parse_word("a^-1 b^-1", alphabet))
        self.assertEqual(solve_for_generator(parse_word("a c^-1 b", alphabet), 2), parse_word("b a", alphabet))
        for text in ("c a c", "a c^2", "a b"):
            with self.subTest(text=text):
                with self.assertRaises(BadEliminationRelator):
                    solve_for_generator(parse_word(text, alphabet), 2, "X")

    def test_7_rename(self):
        """Check 7: rename refuses a name already in use."""
        self.assertEqual(RenameGenerator("b", "t").apply(self.p).generators, ("a", "t"))
        with self.assertRaises(NameClash):
            RenameGenerator("b", "a").apply(self.p)


class TestScripts(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        (self.dir / "s.pres").write_text(SOURCE)
        (self.dir / "t.pres").write_text(TARGET)

    def tearDown(self):
        self.tmp.cleanup()

    def test_8_parse_continuations_and_refs(self):
        """Check 8: indented lines continue a move; #N references survive comment stripping."""
        script = parse_script(
            "source s.pres\ntarget t.pres\n"
            "addrel X: a^2 by   # a comment\n"
            "    (b ; #1 ; -)\n"
            "    ( ; R2 ; +)\n"
            "delrel #0\n",
            self.dir,
        )
        self.assertEqual(script.source, self.dir / "s.pres")
        self.assertEqual(len(script.moves), 2)
        first = script.moves[0]
        self.assertEqual(first.line, 3)
        self.assertEqual(first.args, ("X", "a^2"))
        self.assertEqual(first.factors, (("b", "#1", -1), ("", "R2", 1)))
        self.assertEqual(script.moves[1].args, ("#0",))

    def test_17_comments_after_hash_digits(self):
        """Check 17: "#" followed by digits and text is a comment; a bare "#N" is a reference."""
        script = parse_script(
            "source s.pres\ntarget t.pres\n"
            "#2nd pass over the squares\n"
            "addrel X: a^2 by (b ; #1 ; -) ( ; R2 ; +)  #2nd lantern\n"
            "delrel #0   #12x\n"
            "delrel X #3rd\n",
            self.dir,
        )
        self.assertEqual([m.line for m in script.moves], [4, 5, 6])
        self.assertEqual(script.moves[0].args, ("X", "a^2"))
        self.assertEqual(script.moves[0].factors, (("b", "#1", -1), ("", "R2", 1)))
        self.assertEqual(script.moves[1].args, ("#0",))
        self.assertEqual(script.moves[2].args, ("X",))

    def test_9_parse_errors(self):
        """Check 9: malformed scripts name the line."""
        cases = {
            "source s.pres\ntarget t.pres\nswap a b\n": 3,
            "source s.pres\ntarget t.pres\naddrel X: a by (a ; R1)\n": 3,
            "source s.pres\ntarget t.pres\n\ndelgen a\n": 4,
            "source s.pres\ntarget t.pres\naddrel a^2\n": 3,
            "source s.pres\ntarget t.pres\nrename a b\n": 3,
        }
        for text, line in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ParseError) as ctx:
                    parse_script(text, self.dir, "x.tietze")
                self.assertEqual(ctx.exception.line, line)
        with self.assertRaises(ParseError):
            parse_script("target t.pres\ndelrel R1\n", self.dir)

    def test_10_replay_verified(self):
        """Check 10: a correct script replays to its target and chains every move."""
        report = replay_script(parse_script(GOOD_SCRIPT, self.dir), check_invariants=True)
        self.assertTrue(report.verified)
        self.assertEqual([m.kind for m in report.moves], ["addrel", "delrel", "addgen", "delgen"])
        self.assertEqual([m.line for m in report.moves], [4, 6, 7, 8])
        self.assertTrue(all(m.status == "ok" for m in report.moves))
        self.assertEqual(report.head, report.moves[-1].digest)
        self.assertTrue(report.verify_chain())
        self.assertTrue(equal_canonical(report.final, parse_presentation(TARGET)))

    def test_11_replay_stops_at_first_failure(self):
        """Check 11: the first failing move is reported with its index and line."""
        report = replay_script(parse_script(BAD_SCRIPT, self.dir))
        self.assertFalse(report.verified)
        self.assertEqual(report.failed_at, 0)
        self.assertEqual(len(report.moves), 1)
        self.assertTrue(report.error.startswith("move 0 (line 3)"))
        self.assertIn("expected 'a^2'", report.error)
        self.assertEqual(report.head, GENESIS)
        self.assertEqual(report.final, parse_presentation(SOURCE))

    def test_12_stop_after(self):
        """Check 12: a partial replay is never reported as verified."""
        report = replay_script(parse_script(GOOD_SCRIPT, self.dir), stop_after=2)
        self.assertFalse(report.complete)
        self.assertFalse(report.verified)
        self.assertEqual(report.final.labels(), ["R1", "R3"])


class TestTranscriptLedger(unittest.TestCase):
    def setUp(self):
        self.ledger = TranscriptLedger()

    def tearDown(self):
        self.ledger.close()

    def test_13_genesis(self):
        """Check 13: an empty ledger's head is the genesis digest."""
        self.assertEqual(self.ledger.head(), "0" * 64)
        self.assertTrue(self.ledger.verify_chain())

    def test_14_chain_integrity(self):
        """Check 14: every digest covers the previous one."""
        first = self.ledger.log_move(0, "addrel X: a", "gens: a\nrel X: a\n")
        second = self.ledger.log_move(1, "delrel X", "gens: a\n")
        self.assertEqual(len(first), 64)
        self.assertEqual(second, TranscriptLedger.calculate_hash(first, "delrel X", "gens: a\n"))
        self.assertEqual(self.ledger.head(), second)
        self.assertEqual([e[0] for e in self.ledger.entries()], [0, 1])
        self.assertTrue(self.ledger.verify_chain())

    def test_15_tamper_detection(self):
        """Check 15: editing a recorded state breaks the chain."""
        self.ledger.log_move(0, "addrel X: a", "gens: a\nrel X: a\n")
        self.ledger.log_move(1, "delrel X", "gens: a\n")
        cursor = self.ledger.conn.cursor()
        cursor.execute("UPDATE transcript SET state = 'gens: b' WHERE move_index = 0")
        self.ledger.conn.commit()
        self.assertFalse(self.ledger.verify_chain())

    def test_16_file_backed(self):
        """Check 16: a file-backed ledger keeps its chain across connections."""
        with tempfile.TemporaryDirectory() as tmp:
            path = str(Path(tmp) / "transcript.db")
            with TranscriptLedger(path) as ledger:
                head = ledger.log_move(0, "rename a -> b", "gens: b\n")
            with TranscriptLedger(path) as ledger:
                self.assertEqual(ledger.head(), head)
                self.assertTrue(ledger.verify_chain())


if __name__ == "__main__":
    unittest.main()

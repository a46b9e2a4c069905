import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError

from geometry.constants import EXIT_INPUT_ERROR, EXIT_INVALID, EXIT_UNSUPPORTED
from geometry.tests.base import NoLoggingTestCase, fixture_path


class GtcCommandTestCase(NoLoggingTestCase):
    """
    Test cases for the gtc management command.
    """

    def gtc(self, *args) -> str:
        out = StringIO()
        call_command("gtc", *args, stdout=out)
        return out.getvalue()

    def gtc_exit(self, *args):
        """Run a command expected to exit non-zero; returns (exit code, output)."""
        out = StringIO()
        with self.assertRaises(SystemExit) as exit_info:
            call_command("gtc", *args, stdout=out)
        return exit_info.exception.code, out.getvalue()

    def test_check_valid(self):
        """A valid conjecture prints its verdict and exits 0."""
        output = self.gtc("check", "--theory", "m-wu", "--file", str(fixture_path("perpendiculars.sexp")))
        data = json.loads(output)
        self.assertEqual(data["status"], "valid")
        self.assertEqual(data["kernel"], "acf0")

    def test_check_invalid(self):
        """An invalid conjecture exits 1 with a counterexample."""
        code, output = self.gtc_exit("check", "--theory", "m-wu", "--file", str(fixture_path("isosceles.sexp")))
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("counterexample", json.loads(output))

    def test_check_pretty(self):
        """--pretty prints the status and the translation."""
        code, output = self.gtc_exit(
            "check", "--theory", "m-wu", "--file", str(fixture_path("isosceles.sexp")), "--pretty",
        )
        self.assertEqual(code, EXIT_INVALID)
        self.assertIn("INVALID", output)
        self.assertIn("translation:", output)
        self.assertIn("counterexample:", output)

    def test_check_unsupported(self):
        """Non-universal conjectures exit 2."""
        code, _ = self.gtc_exit(
            "check", "--theory", "pappus", "--formula", "(forall ((P Point)) (exists ((l Line)) (in P l)))",
        )
        self.assertEqual(code, EXIT_UNSUPPORTED)

    def test_input_errors(self):
        """Bad input raises CommandError with exit code 4."""
        cases = [
            ("check", "--theory", "affine", "--formula", "(forall ((P Point) (l Line)) (in P l))"),
            ("check", "--theory", "m-wu", "--formula", "(forall ((A Point)"),
            ("check", "--theory", "m-wu", "--file", str(fixture_path("missing.sexp"))),
            ("roundtrip", "--field", "p=6"),
            ("segments", "--op", "inverse", "1", "2"),
            ("segments", "--op", "add", "-1", "2"),
        ]
        for args in cases:
            with self.subTest(args=args):
                with self.assertRaises(CommandError) as error:
                    self.gtc(*args)
                self.assertEqual(error.exception.returncode, EXIT_INPUT_ERROR)

    def test_stm(self):
        """The synthetic Tarski machine reports its block limit."""
        code, output = self.gtc_exit(
            "stm", "--file", str(fixture_path("joining_line.sexp")), "--semantics", "unordered",
        )
        self.assertEqual(code, EXIT_UNSUPPORTED)
        self.assertIn("quantifier blocks", json.loads(output)["note"])

    def test_stm_ordered(self):
        """Ordered semantics decides the three-block incidence axiom and exits 0."""
        output = self.gtc("stm", "--file", str(fixture_path("joining_line_unique.sexp")), "--semantics", "ordered")
        data = json.loads(output)
        self.assertEqual(data["status"], "valid")
        self.assertEqual(data["kernel"], "rcf")

    def test_translate(self):
        """translate prints the field formula."""
        output = self.gtc("translate", "--formula", "(forall ((P Point) (l Line)) (in P l))")
        self.assertTrue(output.startswith("(forall"))
        self.assertIn("P.x", output)

    def test_roundtrip(self):
        """The round trip prints its report."""
        data = json.loads(self.gtc("roundtrip", "--field", "p=3"))
        self.assertTrue(data["ok"])
        self.assertEqual(data["size"], 3)

    def test_roundtrip_pretty(self):
        """--pretty summarizes the round trip."""
        output = self.gtc("roundtrip", "--field", f"cayley={fixture_path('gf4.txt')}", "--pretty")
        self.assertIn("ok", output)
        self.assertIn("field isomorphism", output)

    def test_axioms(self):
        """axioms prints the theory file."""
        output = self.gtc("axioms", "--theory", "pappus", "--n", "1")
        self.assertTrue(output.startswith("(theory pappus"))
        self.assertIn("(axiom Pappus", output)

    def test_segments(self):
        """segments prints the construction trace."""
        data = json.loads(self.gtc("segments", "--op", "mul", "2", "3/2"))
        self.assertEqual(data["operation"], "mul")
        self.assertEqual(data["result"], "3")
        self.assertTrue(data["steps"])

    def test_segments_pretty(self):
        """--pretty lists every step."""
        output = self.gtc("segments", "--op", "add", "1", "2", "--pretty")
        self.assertIn("add -> 3", output)
        self.assertIn("P3: (3, 0)", output)

"""
The gtc command line: geometric theorem checker and synthetic Tarski machine.

    manage.py gtc check --theory m-wu --file perpendiculars.sexp [--semantics ordered|unordered] [--budget N]
    manage.py gtc stm --file joining_line.sexp --semantics ordered
    manage.py gtc translate --scheme pp-hilbert --file f.sexp
    manage.py gtc roundtrip --field p=5 | --field cayley=gf4.txt
    manage.py gtc axioms --theory euclid
    manage.py gtc segments --op mul 2 3/2

Exit codes: 0 valid, 1 invalid, 2 unsupported fragment, 3 budget exceeded, 4 input error.
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from geometry.constants import (
    EXIT_INPUT_ERROR,
    EXIT_INVALID,
    EXIT_VALID,
    OUTPUT_JSON,
    OUTPUT_PRETTY,
    SCHEME_CHOICES,
    SEMANTICS_CHOICES,
    STATUS_EXIT_CODES,
    STATUS_VALID,
    THEORY_CHOICES,
)
from geometry.exceptions import GeometryError
from geometry.formulas.printer import print_formula
from geometry.segments.arithmetic import OPERATIONS, SegmentClass, run_construction
from geometry.serializers import VerdictSerializer
from geometry.services.check_service import Job, TheoremCheckService, Verdict
from geometry.services.roundtrip_service import RoundTripService
from geometry.services.theory_service import TheoryService


def _add_output_flags(parser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="output", action="store_const", const=OUTPUT_JSON, default=OUTPUT_JSON)
    group.add_argument("--pretty", dest="output", action="store_const", const=OUTPUT_PRETTY)


def _add_conjecture_source(parser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--file", help="File holding one s-expression formula")
    source.add_argument("--formula", help="The formula itself")


class Command(BaseCommand):
    help = "Checks universal geometric conjectures by translation into real or complex field arithmetic."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        check = actions.add_parser("check", help="Decide a conjecture against a catalog theory")
        check.add_argument("--theory", required=True, choices=THEORY_CHOICES)
        _add_conjecture_source(check)
        check.add_argument("--semantics", choices=SEMANTICS_CHOICES)
        check.add_argument("--scheme", choices=SCHEME_CHOICES)
        check.add_argument("--budget", type=int, help="Kernel budget (CH nodes or Groebner pairs)")
        _add_output_flags(check)

        stm = actions.add_parser("stm", help="Translate a sentence and decide it where the kernels can")
        _add_conjecture_source(stm)
        stm.add_argument("--semantics", choices=SEMANTICS_CHOICES)
        stm.add_argument("--budget", type=int)
        _add_output_flags(stm)

        translate = actions.add_parser("translate", help="Print the field translation of a formula")
        _add_conjecture_source(translate)
        translate.add_argument("--scheme", choices=SCHEME_CHOICES)

        roundtrip = actions.add_parser("roundtrip", help="Field -> plane -> ternary ring -> field")
        roundtrip.add_argument("--field", required=True, help="p=<prime> or cayley=<file>")
        for key in ("l0", "m0", "delta", "unit"):
            roundtrip.add_argument(f"--{key}", type=int)
        _add_output_flags(roundtrip)

        axioms = actions.add_parser("axioms", help="Export the axioms of a catalog theory")
        axioms.add_argument("--theory", required=True, choices=THEORY_CHOICES)
        axioms.add_argument("--n", type=int, default=0, help="Parameter for axiom schemes")

        segments = actions.add_parser("segments", help="Run a segment construction and print its trace")
        segments.add_argument("--op", required=True, choices=sorted(OPERATIONS))
        segments.add_argument("lengths", nargs="+", help="Nonnegative rational lengths, e.g. 3/2")
        _add_output_flags(segments)

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['action']}")
        try:
            code = handler(options)
        except (GeometryError, OSError, ValueError) as error:
            raise CommandError(str(error), returncode=EXIT_INPUT_ERROR)
        if code:
            sys.exit(code)

    # -- subcommands ------------------------------------------------------------

    def _conjecture(self, options):
        text = Path(options["file"]).read_text(encoding="utf-8") if options["file"] else options["formula"]
        return TheoremCheckService.parse_conjecture(text)

    def handle_check(self, options) -> int:
        job = Job(
            theory=options["theory"],
            conjecture=self._conjecture(options),
            semantics=options["semantics"],
            budget=options["budget"],
            scheme=options["scheme"],
        )
        verdict = TheoremCheckService.run_gtc(job)
        self._write_verdict(verdict, options["output"])
        return STATUS_EXIT_CODES[verdict.status]

    def handle_stm(self, options) -> int:
        verdict = TheoremCheckService.run_stm(self._conjecture(options), options["semantics"], options["budget"])
        self._write_verdict(verdict, options["output"])
        return STATUS_EXIT_CODES[verdict.status]

    def handle_translate(self, options) -> int:
        _, translation = TheoremCheckService.translate(self._conjecture(options), options["scheme"])
        self.stdout.write(print_formula(translation))
        return EXIT_VALID

    def handle_roundtrip(self, options) -> int:
        overrides = {key: options[key] for key in ("l0", "m0", "delta", "unit") if options[key] is not None}
        report = RoundTripService.run(options["field"], overrides)
        data = report.to_dict()
        if options["output"] == OUTPUT_PRETTY:
            style = self.style.SUCCESS if report.ok else self.style.ERROR
            self.stdout.write(style(f"{report.field}: {'ok' if report.ok else 'FAILED'} ({report.elapsed_ms} ms)"))
            self.stdout.write(f"  frame: {data['frame']}")
            self.stdout.write(f"  field isomorphism: {data['field_isomorphism']}")
            self.stdout.write(f"  plane isomorphism: {report.plane_isomorphism}")
        else:
            self.stdout.write(json.dumps(data, sort_keys=True))
        return EXIT_VALID if report.ok else EXIT_INVALID

    def handle_axioms(self, options) -> int:
        self.stdout.write(TheoryService.export_axioms(options["theory"], options["n"]), ending="")
        return EXIT_VALID

    def handle_segments(self, options) -> int:
        operands = [SegmentClass(Fraction(text)) for text in options["lengths"]]
        construction = run_construction(options["op"], *operands)
        if options["output"] == OUTPUT_PRETTY:
            self.stdout.write(self.style.SUCCESS(f"{construction.operation} -> {construction.result}"))
            for step in construction.steps:
                self.stdout.write(f"  {step.label}: {step.value}")
        else:
            self.stdout.write(json.dumps(construction.to_dict(), sort_keys=True))
        return EXIT_VALID

    # -- output -----------------------------------------------------------------

    def _write_verdict(self, verdict: Verdict, output: str) -> None:
        if output == OUTPUT_JSON:
            self.stdout.write(json.dumps(VerdictSerializer.to_dict(verdict), sort_keys=True))
            return
        style = self.style.SUCCESS if verdict.status == STATUS_VALID else self.style.WARNING
        self.stdout.write(style(verdict.status.upper()))
        for label in ("theory", "semantics", "scheme", "kernel"):
            value = getattr(verdict, label)
            if value:
                self.stdout.write(f"  {label}: {value}")
        self.stdout.write(f"  time: {verdict.time_ms} ms")
        if verdict.counterexample:
            self.stdout.write(f"  counterexample: {verdict.counterexample}")
        if verdict.witness:
            self.stdout.write(f"  witness: {verdict.witness}")
        if verdict.note:
            self.stdout.write(f"  note: {verdict.note}")
        self.stdout.write("  translation:")
        self.stdout.write(f"    {verdict.translation}")

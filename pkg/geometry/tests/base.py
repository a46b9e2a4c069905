"""
Base test case with logging disabled.
"""
import logging
from pathlib import Path

from django.test import SimpleTestCase

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def read_fixture(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


class NoLoggingTestCase(SimpleTestCase):
    """
    SimpleTestCase that disables logging to reduce test output noise.
    """

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        # Disable logging for tests
        logging.disable(logging.CRITICAL)

    @classmethod
    def tearDownClass(cls):
        super().tearDownClass()
        # Re-enable logging after tests
        logging.disable(logging.NOTSET)

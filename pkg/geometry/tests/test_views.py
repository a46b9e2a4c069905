from django.test import Client
from geometry.tests.base import NoLoggingTestCase, fixture_path, read_fixture
import json


class TheoremCheckViewTestCase(NoLoggingTestCase):
    """
    Test cases for the theorem checker endpoint.
    """

    def setUp(self):
        self.client = Client()
        self.check_url = '/api/v1/geometry/check'
        self.isosceles = read_fixture('isosceles.sexp')

    def test_check_without_theory_parameter(self):
        """Missing theory returns 400."""
        response = self.client.get(self.check_url, {'conjecture': self.isosceles})
        self.assertEqual(response.status_code, 400)
        data = json.loads(response.content)
        self.assertIn('Theory (theory) parameter is required', data['error'])

    def test_check_without_conjecture_parameter(self):
        """Missing conjecture returns 400."""
        response = self.client.get(self.check_url, {'theory': 'm-wu'})
        self.assertEqual(response.status_code, 400)
        data = json.loads(response.content)
        self.assertIn('Conjecture (conjecture) parameter is required', data['error'])

    def test_check_with_invalid_theory_parameter(self):
        """Theories outside the catalog return 400."""
        response = self.client.get(self.check_url, {'theory': 'projective', 'conjecture': self.isosceles})
        self.assertEqual(response.status_code, 400)
        self.assertIn('Invalid theory parameter', json.loads(response.content)['error'])

    def test_check_with_invalid_semantics_parameter(self):
        """Unknown semantics return 400."""
        response = self.client.get(self.check_url, {
            'theory': 'm-wu',
            'conjecture': self.isosceles,
            'semantics': 'fuzzy',
        })
        self.assertEqual(response.status_code, 400)
        self.assertIn('Invalid semantics parameter', json.loads(response.content)['error'])

    def test_check_with_invalid_budget_parameter(self):
        """Budgets must be positive whole numbers."""
        for budget, message in (('many', 'Invalid budget parameter'), ('0', 'Budget must be at least 1')):
            with self.subTest(budget=budget):
                response = self.client.get(self.check_url, {
                    'theory': 'm-wu',
                    'conjecture': self.isosceles,
                    'budget': budget,
                })
                self.assertEqual(response.status_code, 400)
                self.assertIn(message, json.loads(response.content)['error'])

    def test_check_with_malformed_conjecture(self):
        """Syntax errors are reported as 400."""
        response = self.client.get(self.check_url, {'theory': 'm-wu', 'conjecture': '(forall ((A Point)'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', json.loads(response.content))

    def test_check_with_unlicensed_theory(self):
        """Theories without the field reduction are rejected."""
        response = self.client.get(self.check_url, {
            'theory': 'affine',
            'conjecture': '(forall ((P Point) (l Line)) (in P l))',
        })
        self.assertEqual(response.status_code, 400)
        self.assertIn('not licensed', json.loads(response.content)['error'])

    def test_check_invalid_conjecture(self):
        """An invalid conjecture returns its counterexample."""
        response = self.client.get(self.check_url, {'theory': 'm-wu', 'conjecture': self.isosceles})
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['status'], 'invalid')
        self.assertEqual(data['kernel'], 'acf0')
        self.assertEqual(data['theory'], 'm-wu')
        self.assertEqual(set(data['counterexample']), {'A', 'B', 'C'})
        self.assertIn('time_ms', data)
        self.assertIn('translation', data)

    def test_check_post(self):
        """POST bodies are accepted like query strings."""
        response = self.client.post(self.check_url, {
            'theory': 'p-hilbert',
            'conjecture': '(forall ((A Point) (B Point)) (not (Be A B A)))',
            'semantics': 'ordered',
        })
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['status'], 'valid')
        self.assertEqual(data['kernel'], 'rcf')
        self.assertEqual(data['scheme'], 'pp-hilbert')

    def test_check_unsupported_fragment(self):
        """Non-universal conjectures come back as unsupported with a note."""
        response = self.client.get(self.check_url, {
            'theory': 'pappus',
            'conjecture': '(forall ((P Point)) (exists ((l Line)) (in P l)))',
        })
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['status'], 'unsupported-fragment')
        self.assertIn('note', data)


class AxiomsViewTestCase(NoLoggingTestCase):
    """
    Test cases for the axiom export endpoint.
    """

    def setUp(self):
        self.client = Client()
        self.axioms_url = '/api/v1/geometry/axioms'

    def test_axioms_without_theory_parameter(self):
        """Missing theory returns 400."""
        response = self.client.get(self.axioms_url)
        self.assertEqual(response.status_code, 400)
        self.assertIn('Theory (theory) parameter is required', json.loads(response.content)['error'])

    def test_axioms_with_negative_n(self):
        """n must not be negative."""
        response = self.client.get(self.axioms_url, {'theory': 'pappus', 'n': '-1'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('n must not be negative', json.loads(response.content)['error'])

    def test_axioms_export(self):
        """Labels and the theory text are returned."""
        response = self.client.get(self.axioms_url, {'theory': 'pappus', 'n': '2'})
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertEqual(data['theory'], 'pappus')
        self.assertEqual(data['labels'], ['I-1', 'I-2', 'I-3', 'ParAx', 'Pappus', 'InfLines(2)'])
        self.assertTrue(data['text'].startswith('(theory pappus'))

    def test_axioms_default_n(self):
        """Without n the schemes are instantiated at 0."""
        response = self.client.get(self.axioms_url, {'theory': 'field'})
        self.assertEqual(response.status_code, 200)
        self.assertIn('MulInv', json.loads(response.content)['labels'])


class RoundTripViewTestCase(NoLoggingTestCase):
    """
    Test cases for the coordinatization round trip endpoint.
    """

    def setUp(self):
        self.client = Client()
        self.roundtrip_url = '/api/v1/geometry/roundtrip'

    def test_roundtrip_without_field_parameter(self):
        """Missing field returns 400."""
        response = self.client.get(self.roundtrip_url)
        self.assertEqual(response.status_code, 400)
        self.assertIn('Field (field) parameter is required', json.loads(response.content)['error'])

    def test_roundtrip_with_invalid_field_parameter(self):
        """Malformed field specs return 400."""
        response = self.client.get(self.roundtrip_url, {'field': 'GF(5)'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('Invalid field parameter', json.loads(response.content)['error'])

    def test_roundtrip_with_composite_order(self):
        """p=6 is rejected by the service."""
        response = self.client.get(self.roundtrip_url, {'field': 'p=6'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', json.loads(response.content))

    def test_roundtrip_prime_field(self):
        """GF(5) closes the round trip."""
        response = self.client.get(self.roundtrip_url, {'field': 'p=5'})
        self.assertEqual(response.status_code, 200)
        data = json.loads(response.content)
        self.assertTrue(data['ok'])
        self.assertEqual(data['size'], 5)

    def test_roundtrip_cayley_field(self):
        """Cayley tables are read from the given file."""
        response = self.client.get(self.roundtrip_url, {'field': f"cayley={fixture_path('gf4.txt')}"})
        self.assertEqual(response.status_code, 200)
        self.assertTrue(json.loads(response.content)['ok'])

    def test_roundtrip_with_bad_frame(self):
        """Inconsistent frames return 400."""
        response = self.client.get(self.roundtrip_url, {'field': 'p=3', 'l0': '1', 'm0': '1'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', json.loads(response.content))

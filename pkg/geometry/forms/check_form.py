import logging
from django import forms
from geometry.constants import (
    SEMANTICS_CHOICES,
    THEORY_CHOICES,
    SCHEME_CHOICES,
)

logger = logging.getLogger(__name__)


class FirstErrorMixin:
    def get_error_message(self) -> str:
        """Extract first error message from form errors."""
        errors = self.errors.as_data()
        first_error_field = next(iter(errors))
        first_error = errors[first_error_field][0]
        error_message = first_error.messages[0]

        logger.warning(
            "Invalid request parameters",
            extra={
                "form": type(self).__name__,
                "errors": self.errors.get_json_data(),
            },
        )

        return error_message


class TheoremCheckForm(FirstErrorMixin, forms.Form):
    """
    Form for validating theorem check parameters.

    Validates:
    - theory: Required catalog theory name
    - conjecture: Required s-expression over the geometry vocabulary
    - semantics: Optional ordered or unordered (inferred when missing)
    - budget: Optional positive kernel budget
    """

    theory = forms.ChoiceField(
        required=True,
        choices=[(choice, choice) for choice in THEORY_CHOICES],
        error_messages={
            'required': 'Theory (theory) parameter is required',
            'invalid_choice': f'Invalid theory parameter. Must be one of: {", ".join(THEORY_CHOICES)}.',
        }
    )

    conjecture = forms.CharField(
        required=True,
        strip=True,
        error_messages={
            'required': 'Conjecture (conjecture) parameter is required',
        }
    )

    semantics = forms.ChoiceField(
        required=False,
        choices=[(choice, choice) for choice in SEMANTICS_CHOICES],
        error_messages={
            'invalid_choice': f'Invalid semantics parameter. Must be one of: {", ".join(SEMANTICS_CHOICES)}.',
        }
    )

    scheme = forms.ChoiceField(
        required=False,
        choices=[(choice, choice) for choice in SCHEME_CHOICES],
        error_messages={
            'invalid_choice': f'Invalid scheme parameter. Must be one of: {", ".join(SCHEME_CHOICES)}.',
        }
    )

    budget = forms.IntegerField(
        required=False,
        min_value=1,
        error_messages={
            'invalid': 'Invalid budget parameter. Must be a whole number.',
            'min_value': 'Budget must be at least 1.',
        }
    )

    def clean_semantics(self) -> str | None:
        """Normalize semantics parameter to lowercase."""
        semantics = self.cleaned_data.get('semantics')
        return semantics.lower() if semantics else None

    def clean_scheme(self) -> str | None:
        return self.cleaned_data.get('scheme') or None


class AxiomsForm(FirstErrorMixin, forms.Form):
    """
    Form for validating axiom export parameters.
    """

    theory = forms.ChoiceField(
        required=True,
        choices=[(choice, choice) for choice in THEORY_CHOICES],
        error_messages={
            'required': 'Theory (theory) parameter is required',
            'invalid_choice': f'Invalid theory parameter. Must be one of: {", ".join(THEORY_CHOICES)}.',
        }
    )

    n = forms.IntegerField(
        required=False,
        min_value=0,
        initial=0,
        error_messages={
            'invalid': 'Invalid n parameter. Must be a whole number.',
            'min_value': 'n must not be negative.',
        }
    )

    def clean_n(self) -> int:
        """Return n or 0."""
        n = self.cleaned_data.get('n')
        return n if n is not None else 0

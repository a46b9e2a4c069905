import logging
from django import forms
from geometry.forms.check_form import FirstErrorMixin
from geometry.services.roundtrip_service import FIELD_SPEC_PATTERN

logger = logging.getLogger(__name__)

FRAME_FIELDS = ("l0", "m0", "delta", "unit")


class RoundTripForm(FirstErrorMixin, forms.Form):
    """
    Form for validating round-trip parameters.

    Validates:
    - field: Required, "p=<prime>" or "cayley=<file>"
    - l0, m0, delta, unit: Optional frame element ids
    """

    field = forms.RegexField(
        required=True,
        regex=FIELD_SPEC_PATTERN,
        error_messages={
            'required': 'Field (field) parameter is required',
            'invalid': 'Invalid field parameter. Must be p=<prime> or cayley=<file>.',
        }
    )

    l0 = forms.IntegerField(required=False, min_value=0)
    m0 = forms.IntegerField(required=False, min_value=0)
    delta = forms.IntegerField(required=False, min_value=0)
    unit = forms.IntegerField(required=False, min_value=0)

    def frame_overrides(self) -> dict:
        """Frame ids that were given."""
        return {
            key: self.cleaned_data[key]
            for key in FRAME_FIELDS
            if self.cleaned_data.get(key) is not None
        }

import logging

from django.http import HttpRequest, JsonResponse
from django.views import View

from geometry.exceptions import GeometryError
from geometry.forms.roundtrip_form import RoundTripForm
from geometry.services.roundtrip_service import RoundTripService

logger = logging.getLogger(__name__)


class RoundTripView(View):
    """
    Coordinatization round trip for a finite field.

    Query parameters:
    - field (required): p=<prime> or cayley=<file>
    - l0, m0, delta, unit (optional): Frame overrides
    """

    def get(self, request: HttpRequest) -> JsonResponse:
        form = RoundTripForm(request.GET)
        if not form.is_valid():
            return JsonResponse({"error": form.get_error_message()}, status=400)

        try:
            report = RoundTripService.run(form.cleaned_data["field"], form.frame_overrides())
        except GeometryError as error:
            logger.warning("Round trip rejected", extra={"field": form.cleaned_data["field"], "error": str(error)})
            return JsonResponse({"error": str(error)}, status=400)

        logger.info("Round trip", extra={"field": report.field, "ok": report.ok})

        return JsonResponse(report.to_dict())

import logging

from django.http import HttpRequest, JsonResponse
from django.views import View

from geometry.forms.check_form import AxiomsForm
from geometry.services.theory_service import TheoryService

logger = logging.getLogger(__name__)


class AxiomsView(View):
    """
    Axiom export for a catalog theory.

    Query parameters:
    - theory (required): Catalog theory name
    - n (optional): Parameter for axiom schemes (default: 0)
    """

    def get(self, request: HttpRequest) -> JsonResponse:
        form = AxiomsForm(request.GET)
        if not form.is_valid():
            return JsonResponse({"error": form.get_error_message()}, status=400)

        name, n = form.cleaned_data["theory"], form.cleaned_data["n"]
        theory = TheoryService.get_theory(name, n)
        data = {
            "theory": name,
            "labels": list(theory.labels),
            "text": TheoryService.export_axioms(name, n),
        }

        logger.info("Axiom export", extra={"theory": name, "n": n, "axioms": len(data["labels"])})

        return JsonResponse(data)

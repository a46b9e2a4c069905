import logging

from django.http import HttpRequest, JsonResponse
from django.utils.decorators import method_decorator
from django.views import View
from django.views.decorators.csrf import csrf_exempt

from geometry.exceptions import GeometryError
from geometry.forms.check_form import TheoremCheckForm
from geometry.serializers import VerdictSerializer
from geometry.services.check_service import Job, TheoremCheckService

logger = logging.getLogger(__name__)


@method_decorator(csrf_exempt, name="dispatch")
class TheoremCheckView(View):
    """
    Checker endpoint: is a universal conjecture a consequence of a catalog theory?

    Parameters (query string for GET, form body for POST):
    - theory (required): Catalog theory name
    - conjecture (required): S-expression over the geometry vocabulary
    - semantics (optional): ordered or unordered
    - scheme (optional): Translation scheme override
    - budget (optional): Kernel budget
    """

    def get(self, request: HttpRequest) -> JsonResponse:
        return self._check(request.GET)

    def post(self, request: HttpRequest) -> JsonResponse:
        return self._check(request.POST)

    def _check(self, data) -> JsonResponse:
        """
        Validate the parameters, run the checker and serialize the verdict.

        Returns:
            JsonResponse: The verdict, or {"error": ...} with status 400 for bad input
        """
        form = TheoremCheckForm(data)
        if not form.is_valid():
            return JsonResponse({"error": form.get_error_message()}, status=400)

        try:
            job = Job(
                theory=form.cleaned_data["theory"],
                conjecture=TheoremCheckService.parse_conjecture(form.cleaned_data["conjecture"]),
                semantics=form.cleaned_data["semantics"],
                budget=form.cleaned_data["budget"],
                scheme=form.cleaned_data["scheme"],
            )
            verdict = TheoremCheckService.run_gtc(job)
        except GeometryError as error:
            logger.warning("Rejected conjecture", extra={"theory": form.cleaned_data["theory"], "error": str(error)})
            return JsonResponse({"error": str(error)}, status=400)

        logger.info(
            "Theorem check",
            extra={"theory": job.theory, "status": verdict.status, "time_ms": verdict.time_ms},
        )

        return JsonResponse(VerdictSerializer.to_dict(verdict))

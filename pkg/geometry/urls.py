from django.urls import path

from geometry.views.axioms import AxiomsView
from geometry.views.check import TheoremCheckView
from geometry.views.roundtrip import RoundTripView

urlpatterns = [
    path("check", TheoremCheckView.as_view(), name="geometry-check"),
    path("axioms", AxiomsView.as_view(), name="geometry-axioms"),
    path("roundtrip", RoundTripView.as_view(), name="geometry-roundtrip"),
]

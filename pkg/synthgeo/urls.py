"""
URL configuration for the synthgeo project.

All endpoints live under ``/api/v1/``; the geometry app mounts its checker,
axiom-export and round-trip views there.
"""

from django.urls import include, path

api_v1_urls = [
    path("geometry/", include("geometry.urls")),
]
urlpatterns = [
    path("api/v1/", include(api_v1_urls)),
]

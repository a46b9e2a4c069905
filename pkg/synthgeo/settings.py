"""
Django settings for the synthgeo project.

The project hosts a single app, ``geometry``, which checks universal theorems
of synthetic plane geometry by translating them into field arithmetic. The
engine keeps no persistent state, so no database is configured.
"""

import os
import sys
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    "SYNTHGEO_SECRET_KEY",
    "django-insecure-q2v!5k0_r8xg@3zj1c$w9m#p7t^e6f+u4yb-ld&hs*an=i(o)",
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get("SYNTHGEO_DEBUG", "1") == "1"

ALLOWED_HOSTS = ["localhost", "127.0.0.1", "testserver"]


# Application definition

INSTALLED_APPS = [
    "geometry",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "synthgeo.urls"

WSGI_APPLICATION = "synthgeo.wsgi.application"


# No models, no database.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Geometry engine budgets. Any key left out falls back to geometry.constants.
GEOMETRY = {
    "PRIME_BOUND": 97,
    "TRANSDUCTION_BUDGET": 1_000_000,
    "INVERSE_NESTING_BOUND": 8,
    "GROEBNER_PAIR_CAP": 100_000,
    "CH_NODE_CAP": 1_000_000,
    "DNF_DISJUNCT_CAP": 10_000,
    "CHART_SPLIT_LIMIT": 8,
    "SAMPLE_POINTS": 1000,
    "SAMPLE_HEIGHT": 10,
    "SAMPLE_SEED": 20240611,
    "ISOMORPHISM_BOUND": 11,
}

# Logging configuration
# Console output goes to stderr so the gtc command keeps stdout for JSON.
# Geometry logs are quieter during tests.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': sys.stderr,
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'INFO',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'geometry': {
            'handlers': ['console'],
            'level': 'WARNING' if 'test' in sys.argv else 'INFO',
            'propagate': False,
        },
    },
}

"""
Django settings for matroid_lab project.
Command-line only (management commands + Celery workers), env-driven config.
"""

from pathlib import Path
import os

# -------------------------------------------------------------------
# Base paths
# -------------------------------------------------------------------
BASE_DIR = Path(__file__).resolve().parent.parent

# -------------------------------------------------------------------
# Security & Debug (read from environment)
# -------------------------------------------------------------------
SECRET_KEY = os.environ.get("SECRET_KEY", "dev-secret-change-me")
DEBUG = os.environ.get("DEBUG", "False") == "True"

ALLOWED_HOSTS = []

# -------------------------------------------------------------------
# Applications
# -------------------------------------------------------------------
INSTALLED_APPS = [
    "Matroids",
    "Theorems",
]

# No database: every object is computed, nothing is stored.
DATABASES = {}

# -------------------------------------------------------------------
# Caches (the "minors" alias memoises has_minor flags by fingerprint)
# -------------------------------------------------------------------
CACHES = {
    "default": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
    },
    "minors": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
        "LOCATION": "matroid-minors",
        "TIMEOUT": None,
        "OPTIONS": {"MAX_ENTRIES": int(os.environ.get("MATROID_MEMO_ENTRIES", "200000"))},
    },
}

# -------------------------------------------------------------------
# Matroid kernel limits
# -------------------------------------------------------------------
MATROID_EXPLICIT_LIMIT = 16   # subset words of explicit basis families
MATROID_LAZY_LIMIT = 32       # columns of a RelaxedBinaryMatroid base
MATROID_SEARCH_BUDGET = int(os.environ.get("MATROID_SEARCH_BUDGET", "12"))
MATROID_CORPUS_MAX_ELEMENTS = int(os.environ.get("MATROID_CORPUS_MAX", "10"))
MATROID_PG_WITNESS_BUDGET = int(os.environ.get("MATROID_PG_WITNESS_BUDGET", "250000"))

# Re-check the exchange axiom after every operation returning a matroid.
MATROID_VALIDATE_RESULTS = os.environ.get("MATROID_VALIDATE_RESULTS", "False") == "True"

# -------------------------------------------------------------------
# Logging
# -------------------------------------------------------------------
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "Matroids": {"handlers": ["console"], "level": os.environ.get("MATROID_LOG_LEVEL", "WARNING")},
        "Theorems": {"handlers": ["console"], "level": os.environ.get("MATROID_LOG_LEVEL", "WARNING")},
    },
}

# -------------------------------------------------------------------
# Internationalization
# -------------------------------------------------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# -------------------------------------------------------------------
# Celery (runs tasks in-process unless REDIS_URL is set)
# -------------------------------------------------------------------
CELERY_BROKER_URL = os.environ.get("REDIS_URL", "")
CELERY_RESULT_BACKEND = os.environ.get("REDIS_URL", "")
CELERY_TASK_ALWAYS_EAGER = not CELERY_BROKER_URL
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_TIMEZONE = "UTC"

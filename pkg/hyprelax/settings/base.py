"""
Base settings for all environments.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent.parent
load_dotenv()

SECRET_KEY = os.environ.get('SECRET_KEY', 'hyprelax-offline-key')
DEBUG = True
ALLOWED_HOSTS = []

MY_APPS = [
    "apps.construction",
    "apps.dispersion",
    "apps.spectral",
    "apps.harness",
    "apps.cli",
]

THIRD_APPS = [
    "rest_framework",
]

INSTALLED_APPS = MY_APPS + THIRD_APPS

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'COERCE_DECIMAL_TO_STRING': False,
}

# No ORM models: every computation is a pure function of its inputs.
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Numerical defaults shared by the harness and the command line
HYPERBOLIZATION = {
    'CFL': float(os.getenv('HYP_CFL', 0.4)),
    'OUTPUT_DIR': os.getenv('HYP_OUTPUT_DIR', 'out'),
    'THREADS': int(os.getenv('HYP_THREADS', os.cpu_count() or 1)),
    'CENSUS_LIMIT': 10 ** 6,
    'REALITY_TOLERANCE': 1e-9,
    'STABILITY_TOLERANCE': 1e-8,
    'CONDITION_LIMIT': 1e8,
}

LOG_LEVEL = os.getenv('HYP_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}

"""
Django settings for ekquant_project.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-ekquant-local-key')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DEBUG', '0') == '1'

ALLOWED_HOSTS = ['*']

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.staticfiles',
    'rest_framework',
    'drf_yasg',
    'quantisation',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'ekquant_project.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'ekquant_project.wsgi.application'

# No persistent state: every object is rebuilt from fixture files.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Static files (CSS, JavaScript, Images)
STATIC_URL = '/static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
        'rest_framework.renderers.BrowsableAPIRenderer',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# Swagger settings
SWAGGER_SETTINGS = {
    'SECURITY_DEFINITIONS': {},
    'USE_SESSION_AUTH': False,
    'JSON_EDITOR': True,
    'SUPPORTED_SUBMIT_METHODS': ['get', 'post'],
    'OPERATIONS_SORTER': 'alpha',
    'TAGS_SORTER': 'alpha',
    'DOC_EXPANSION': 'list',
    'DEEP_LINKING': True,
}

REDOC_SETTINGS = {
    'LAZY_RENDERING': False,
}

# Engine defaults. Every key may be overridden with an EK_<KEY> environment
# variable and, per run, by command flags or API fields.
EK_QUANTISATION = {
    'HBAR_ORDER': int(os.environ.get('EK_HBAR_ORDER', 1)),
    'DEGREE_CAP': int(os.environ.get('EK_DEGREE_CAP', 2)),
    'ASSOCIATOR_C2': os.environ.get('EK_ASSOCIATOR_C2', '1/24'),
    'SEED': int(os.environ.get('EK_SEED', 0)),
    'MUTATIONS': int(os.environ.get('EK_MUTATIONS', 100)),
    'FIXTURE_DIRS': [
        Path(p) for p in os.environ.get('EK_FIXTURE_DIRS', '').split(os.pathsep) if p
    ] or [BASE_DIR / 'quantisation' / 'fixtures'],
    'ANTIPODE_MAX_TERMS': int(os.environ.get('EK_ANTIPODE_MAX_TERMS', 12)),
    'DY_ENUMERATION_MAX_DIM': int(os.environ.get('EK_DY_ENUMERATION_MAX_DIM', 3)),
    'DY_ENUMERATION_ROUNDS': int(os.environ.get('EK_DY_ENUMERATION_ROUNDS', 2)),
}

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
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
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
        'quantisation': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else os.environ.get('EK_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}

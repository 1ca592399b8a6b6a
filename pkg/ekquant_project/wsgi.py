"""
WSGI config for ekquant_project.

It exposes the WSGI callable as a module-level variable named ``application``.
The only HTTP surface is the suite runner API in the quantisation app.
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ekquant_project.settings')

application = get_wsgi_application()

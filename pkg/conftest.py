import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ekquant_project.settings')
django.setup()

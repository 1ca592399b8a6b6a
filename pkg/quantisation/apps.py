from django.apps import AppConfig


class QuantisationConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'quantisation'
    verbose_name = 'Truncated EK quantisation engine'

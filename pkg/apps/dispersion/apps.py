from django.apps import AppConfig


class DispersionConfig(AppConfig):
    name = "apps.dispersion"
    verbose_name = "Dispersion relations and mode evolution"

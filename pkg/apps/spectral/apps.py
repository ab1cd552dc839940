from django.apps import AppConfig


class SpectralConfig(AppConfig):
    name = "apps.spectral"
    verbose_name = "Periodic pseudospectral solver"

from django.apps import AppConfig


class ConstructionConfig(AppConfig):
    name = "apps.construction"
    verbose_name = "Hyperbolic relaxation construction"

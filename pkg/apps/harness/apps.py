from django.apps import AppConfig


class HarnessConfig(AppConfig):
    name = "apps.harness"
    verbose_name = "Convergence studies, censuses and presets"

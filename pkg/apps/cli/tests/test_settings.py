from django.apps import apps
from django.conf import settings
from django.test import SimpleTestCase

from utils.conf import DEFAULTS, hyp_setting


class SettingsTests(SimpleTestCase):
    """Tests for the project settings."""

    def test_no_orm_apps(self):
        """Test that only the project apps and the serializer framework are installed."""
        self.assertEqual(settings.INSTALLED_APPS, [
            'apps.construction', 'apps.dispersion', 'apps.spectral', 'apps.harness', 'apps.cli',
            'rest_framework',
        ])
        self.assertEqual(settings.DATABASES, {})
        for label in ('construction', 'dispersion', 'spectral', 'harness', 'cli'):
            self.assertIsNone(apps.get_app_config(label).models_module, label)

    def test_numerical_settings(self):
        """Test that every numerical setting has a default and is readable."""
        self.assertEqual(set(settings.HYPERBOLIZATION), set(DEFAULTS))
        for name in DEFAULTS:
            self.assertEqual(hyp_setting(name), settings.HYPERBOLIZATION[name])

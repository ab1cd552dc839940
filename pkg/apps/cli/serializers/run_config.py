"""
Flat run configuration shared by every command.

Config files and command-line flags use the same keys; flags override file
values. Unknown keys are rejected.
"""
import math

from rest_framework import serializers

from apps.harness.services.convergence import NORMS
from apps.harness.services.presets import PRESETS
from apps.spectral.services.initial import INITIAL_CONDITIONS
from apps.spectral.services.models import ModelKind
from apps.spectral.services.solver import AUTO
from apps.spectral.services.steppers import STEPPERS

COMMANDS = ('hyperbolize', 'dispersion', 'census', 'solve', 'converge', 'reproduce')


class TimeStepField(serializers.Field):
    """A positive float or the string 'auto'."""

    def to_internal_value(self, data):
        if data == AUTO:
            return AUTO
        try:
            value = float(data)
        except (TypeError, ValueError):
            raise serializers.ValidationError(f"Expected a positive number or '{AUTO}'.")
        if not (math.isfinite(value) and value > 0):
            raise serializers.ValidationError(f"Expected a positive number or '{AUTO}'.")
        return value

    def to_representation(self, value):
        return value


class RunConfigSerializer(serializers.Serializer):
    command = serializers.ChoiceField(choices=COMMANDS)

    # model
    model = serializers.ChoiceField(choices=[kind.value for kind in ModelKind], required=False)
    m = serializers.IntegerField(min_value=2, required=False)
    m_max = serializers.IntegerField(min_value=2, required=False)
    sigma0 = serializers.ChoiceField(choices=[-1, 1], required=False)
    alpha = serializers.ListField(child=serializers.FloatField(), required=False)
    kappa = serializers.FloatField(default=1.0)
    tau = serializers.FloatField(required=False)
    taus = serializers.ListField(child=serializers.FloatField(), required=False)

    # wavenumbers
    k = serializers.FloatField(required=False)
    k_min = serializers.FloatField(required=False)
    k_max = serializers.FloatField(required=False)
    k_points = serializers.IntegerField(min_value=1, default=201)

    # grid and time stepping
    x_left = serializers.FloatField(default=0.0)
    x_right = serializers.FloatField(default=2.0 * math.pi)
    n = serializers.IntegerField(min_value=8, default=64)
    stepper = serializers.ChoiceField(choices=sorted(STEPPERS), default='rk4')
    dt = TimeStepField(default=AUTO)
    T = serializers.FloatField(min_value=0.0, default=1.0)
    snapshots = serializers.ListField(child=serializers.FloatField(min_value=0.0), required=False)
    dealias = serializers.BooleanField(required=False, allow_null=True, default=None)
    hyperbolized = serializers.BooleanField(default=True)
    initial = serializers.ChoiceField(choices=sorted(INITIAL_CONDITIONS), default='gaussian')
    width = serializers.FloatField(default=1.0)
    soliton_alpha = serializers.FloatField(default=1.0)

    # harness
    preset = serializers.ChoiceField(choices=sorted(PRESETS), required=False)
    norm = serializers.ChoiceField(choices=NORMS, default='Linf')

    # output
    out = serializers.CharField(required=False)
    plot = serializers.BooleanField(default=False)
    threads = serializers.IntegerField(min_value=1, required=False)
    quiet = serializers.BooleanField(default=False)

    REQUIRED = {
        'hyperbolize': ('m', 'tau'),
        'dispersion': ('tau',),
        'census': ('m',),
        'solve': ('model',),
        'converge': ('model', 'taus'),
        'reproduce': ('preset',),
    }

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            raise serializers.ValidationError({'non_field_errors': ['Configuration must be a JSON object.']})
        unknown = sorted(set(data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError({key: ['Unknown configuration key.'] for key in unknown})
        return super().to_internal_value(data)

    def validate_tau(self, value):
        if not value > 0:
            raise serializers.ValidationError("tau must be positive.")
        return value

    def validate_taus(self, value):
        if any(not tau > 0 for tau in value):
            raise serializers.ValidationError("every tau must be positive.")
        return value

    def validate(self, data):
        command = data['command']
        missing = [key for key in self.REQUIRED[command] if data.get(key) is None]
        if command == 'dispersion' and data.get('m') is None and data.get('model') is None:
            missing.append('m')
        if missing:
            raise serializers.ValidationError({key: [f"Required by '{command}'."] for key in missing})
        if data.get('model') == ModelKind.GENERAL_LINEAR.value and data.get('m') is None:
            raise serializers.ValidationError({'m': ["Required by the general linear model."]})
        if data['x_right'] <= data['x_left']:
            raise serializers.ValidationError({'x_right': ["Must exceed x_left."]})
        if data.get('m_max') is not None and data.get('m') is not None and data['m_max'] < data['m']:
            raise serializers.ValidationError({'m_max': ["Must be at least m."]})
        return data

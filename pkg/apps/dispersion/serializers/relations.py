from rest_framework import serializers

from apps.construction.serializers.systems import HyperbolicSystemSerializer
from apps.dispersion.services.eigen import Spectrum


class SpectrumSerializer(serializers.Serializer):
    eigenvalues = serializers.SerializerMethodField()
    max_imag = serializers.FloatField(read_only=True)

    def get_eigenvalues(self, instance):
        return [{'re': float(value.real), 'im': float(value.imag)} for value in instance.eigenvalues]


class DispersionSweepSerializer(serializers.Serializer):
    """
    Sidecar document of a dispersion sweep: system (or catalog model), grid extent and verdict.

    A single-wavenumber sweep also carries its spectrum.
    """
    system = HyperbolicSystemSerializer(read_only=True, allow_null=True)
    model = serializers.CharField(read_only=True, allow_null=True)
    k_count = serializers.SerializerMethodField()
    k_min = serializers.SerializerMethodField()
    k_max = serializers.SerializerMethodField()
    branches = serializers.SerializerMethodField()
    tolerance = serializers.FloatField(read_only=True)
    max_imag = serializers.FloatField(read_only=True)
    stable = serializers.BooleanField(read_only=True)
    spectrum = serializers.SerializerMethodField()

    def get_k_count(self, instance):
        return len(instance.k_grid)

    def get_k_min(self, instance):
        return float(instance.k_grid.min())

    def get_k_max(self, instance):
        return float(instance.k_grid.max())

    def get_branches(self, instance):
        return int(instance.branches.shape[1])

    def get_spectrum(self, instance):
        if len(instance.k_grid) != 1:
            return None
        return SpectrumSerializer(Spectrum(instance.branches[0])).data

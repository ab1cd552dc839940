from rest_framework import serializers

from apps.construction.serializers.systems import SignedPermutationSerializer


class CensusReportSerializer(serializers.Serializer):
    m = serializers.IntegerField(read_only=True)
    sigma0 = serializers.IntegerField(read_only=True)
    total_candidates = serializers.IntegerField(read_only=True)
    low_k_pass = serializers.IntegerField(read_only=True)
    high_k_pass = serializers.IntegerField(read_only=True)
    full_pass = serializers.IntegerField(read_only=True)
    unique_stable = SignedPermutationSerializer(read_only=True, allow_null=True)
    matches_formula = serializers.BooleanField(read_only=True)


class ConvergenceReportSerializer(serializers.Serializer):
    model = serializers.CharField(read_only=True)
    tau_values = serializers.ListField(child=serializers.FloatField(), read_only=True)
    errors = serializers.ListField(child=serializers.FloatField(), read_only=True)
    fitted_order = serializers.FloatField(read_only=True)
    norm = serializers.CharField(read_only=True)
    T = serializers.FloatField(read_only=True)
    solution_norm = serializers.FloatField(read_only=True)

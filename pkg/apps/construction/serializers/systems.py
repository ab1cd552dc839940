from rest_framework import serializers

from apps.construction.services.permutations import SignedPermutation
from apps.construction.services.systems import (
    LinearModel,
    assemble_system,
    stable_permutation,
)
from utils.exceptions import HyperbolizationError
from utils.numbers import json_number


def matrix_document(matrix):
    return [[json_number(value) for value in row] for row in matrix]


class SignedPermutationSerializer(serializers.Serializer):
    """Signed permutation with 1-based targets."""
    target = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    sign = serializers.ListField(child=serializers.ChoiceField(choices=[-1, 1]), allow_empty=False)

    def to_representation(self, instance: SignedPermutation):
        return {
            'target': instance.one_based_target(),
            'sign': list(instance.sign),
            'dense': matrix_document(instance.dense()),
        }

    def validate(self, data):
        try:
            data['permutation'] = SignedPermutation.from_one_based(data['target'], data['sign'])
        except HyperbolizationError as exc:
            raise serializers.ValidationError({'P': exc.message})
        return data


class HyperbolicSystemSerializer(serializers.Serializer):
    """
    System document {m, sigma0, alpha, tau, P, A, B}.

    Reading recomputes A and B from the model and P, so matrices in the input
    are ignored.
    """
    m = serializers.IntegerField(min_value=2)
    sigma0 = serializers.ChoiceField(choices=[-1, 1])
    alpha = serializers.ListField(child=serializers.FloatField(), required=False, default=list)
    tau = serializers.FloatField()
    P = SignedPermutationSerializer(required=False)

    def to_representation(self, instance):
        return {
            'm': instance.m,
            'sigma0': instance.model.sigma0,
            'alpha': [json_number(value) for value in instance.model.alpha],
            'tau': instance.tau,
            'P': SignedPermutationSerializer(instance.P).data,
            'A': matrix_document(instance.A),
            'B': matrix_document(instance.B),
        }

    def validate_tau(self, value):
        if not value > 0:
            raise serializers.ValidationError("tau must be positive.")
        return value

    def validate(self, data):
        try:
            model = LinearModel(data['m'], data['sigma0'], tuple(data.get('alpha') or ()))
            P = data['P']['permutation'] if data.get('P') else stable_permutation(model.m, model.sigma0)
            data['system'] = assemble_system(model, P, data['tau'])
        except HyperbolizationError as exc:
            raise serializers.ValidationError({'model': exc.message})
        return data

    def create(self, validated_data):
        return validated_data['system']

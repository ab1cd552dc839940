from rest_framework import serializers


class SolveMetaSerializer(serializers.Serializer):
    """Run metadata of a solve: echoed configuration plus dt, step count and wall time."""
    model = serializers.CharField(source='config.model.name', read_only=True)
    hyperbolized = serializers.BooleanField(source='config.hyperbolized', read_only=True)
    tau = serializers.FloatField(source='config.tau', read_only=True, allow_null=True)
    kappa = serializers.FloatField(source='config.model.kappa', read_only=True)
    grid = serializers.SerializerMethodField()
    stepper = serializers.CharField(source='config.stepper', read_only=True)
    dt_requested = serializers.ReadOnlyField(source='config.dt')
    dt = serializers.FloatField(read_only=True)
    t_final = serializers.FloatField(source='config.t_final', read_only=True)
    snapshot_times = serializers.ListField(child=serializers.FloatField(), source='config.snapshot_times',
                                           read_only=True)
    dealias = serializers.BooleanField(source='config.dealias', read_only=True, allow_null=True)
    cfl = serializers.FloatField(source='config.cfl', read_only=True)
    reality_tolerance = serializers.FloatField(source='config.reality_tolerance', read_only=True)
    steps = serializers.IntegerField(read_only=True)
    wall_time = serializers.FloatField(read_only=True)

    def get_grid(self, instance):
        return instance.config.grid.as_dict()

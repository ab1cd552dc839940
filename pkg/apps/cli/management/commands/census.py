from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Exhaustive stability census of signed-permutation relaxations."
    command_name = 'census'

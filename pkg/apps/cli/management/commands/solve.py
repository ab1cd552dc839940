from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Pseudospectral solve of a catalog model or its hyperbolization."
    command_name = 'solve'

from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Reproduces one of the preset experiments into out/<preset>/."
    command_name = 'reproduce'

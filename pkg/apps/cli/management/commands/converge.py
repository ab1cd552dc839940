from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Hyperbolization error over a tau ladder and the fitted convergence order."
    command_name = 'converge'

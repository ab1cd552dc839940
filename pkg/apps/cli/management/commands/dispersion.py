from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Dispersion relation of a relaxation system over a wavenumber grid."
    command_name = 'dispersion'

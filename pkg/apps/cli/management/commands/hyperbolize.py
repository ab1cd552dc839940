from apps.cli.management.base import RunCommand


class Command(RunCommand):
    help = "Builds the stable hyperbolic relaxation of u_t + sum alpha_j d_x^j u + sigma0 d_x^m u = 0."
    command_name = 'hyperbolize'

import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from apps.cli.serializers.run_config import RunConfigSerializer
from apps.cli.services.runs import RUNNERS
from utils.exceptions import HyperbolizationError

logger = logging.getLogger(__name__)


def comma_floats(text):
    return [float(item) for item in str(text).split(',') if item.strip()]


# flag key -> argparse keyword arguments; every flag mirrors a config key
FLAGS = {
    'model': {'help': 'catalog model (heat, linear-kdv, kdv, nls, ch, ks, linear)'},
    'm': {'type': int, 'help': 'order of the top derivative'},
    'm_max': {'type': int, 'help': 'last order of a census range'},
    'sigma0': {'type': int, 'help': 'sign of the top derivative, +1 or -1'},
    'alpha': {'type': comma_floats, 'help': 'comma-separated alpha_0..alpha_{m-1}'},
    'kappa': {'type': float},
    'tau': {'type': float, 'help': 'relaxation time'},
    'taus': {'type': comma_floats, 'help': 'comma-separated descending relaxation times'},
    'k': {'type': float, 'help': 'single wavenumber'},
    'k_min': {'type': float},
    'k_max': {'type': float},
    'k_points': {'type': int},
    'x_left': {'type': float},
    'x_right': {'type': float},
    'n': {'type': int, 'help': 'grid points (power of two)'},
    'stepper': {'help': 'ssprk33, rk4 or imex'},
    'dt': {'help': "time step or 'auto'"},
    'T': {'type': float, 'help': 'final time'},
    'snapshots': {'type': comma_floats, 'help': 'comma-separated snapshot times'},
    'initial': {'help': 'gaussian, mode, soliton or ch-pulse'},
    'width': {'type': float},
    'soliton_alpha': {'type': float},
    'preset': {'help': 'heat, kdv, nls, ch, ks-solution or ks-error'},
    'norm': {'help': 'Linf or L2'},
    'out': {'help': 'output directory (default ./out)'},
    'threads': {'type': int, 'help': 'sweep parallelism (defaults to HYP_THREADS)'},
}


def load_config(path) -> dict:
    """Reads a JSON config file; a meta.json document is accepted through its 'config' entry."""
    if not path:
        return {}
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise CommandError(f"config file {path} does not exist", returncode=1)
    except json.JSONDecodeError as exc:
        raise CommandError(f"malformed config {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                           returncode=1)
    if isinstance(document, dict) and isinstance(document.get('config'), dict) and 'run' in document:
        document = document['config']
    if not isinstance(document, dict):
        raise CommandError(f"config {path} must hold a JSON object", returncode=1)
    return dict(document)


class RunCommand(BaseCommand):
    """Shared option handling: config file, flag overrides, validation and exit codes."""
    command_name = ''

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON config file (or a meta.json from an earlier run)')
        parser.add_argument('--quiet', action='store_true', default=None, help='log warnings only')
        parser.add_argument('--plot', action='store_true', default=None, help='also write plot.svg')
        parser.add_argument('--dealias', action='store_true', default=None)
        parser.add_argument('--no-dealias', action='store_false', dest='dealias', default=None)
        parser.add_argument('--original', action='store_false', dest='hyperbolized', default=None,
                            help='solve the original model instead of its hyperbolization')
        for key, kwargs in FLAGS.items():
            parser.add_argument('--' + key.replace('_', '-'), dest=key, default=None, **kwargs)

    def build_config(self, options) -> dict:
        raw = load_config(options.get('config'))
        for key in list(FLAGS) + ['quiet', 'plot', 'dealias', 'hyperbolized']:
            if options.get(key) is not None:
                raw[key] = options[key]
        if raw.setdefault('command', self.command_name) != self.command_name:
            raise CommandError(
                f"config is for '{raw['command']}', not '{self.command_name}'", returncode=1)
        serializer = RunConfigSerializer(data=raw)
        if not serializer.is_valid():
            raise CommandError(json.dumps(serializer.errors, sort_keys=True), returncode=1)
        return dict(serializer.validated_data)

    def handle(self, *args, **options):
        config = self.build_config(options)
        apps_logger = logging.getLogger('apps')
        previous_level = apps_logger.level
        if config['quiet']:
            apps_logger.setLevel(logging.WARNING)
        try:
            output = RUNNERS[self.command_name](config)
        except HyperbolizationError as exc:
            logger.error("%s failed: %s", self.command_name, exc.message)
            raise CommandError(json.dumps(exc.as_dict(), sort_keys=True, default=str),
                               returncode=exc.exit_code)
        finally:
            apps_logger.setLevel(previous_level)
        self.stdout.write(json.dumps(output.document, indent=2, sort_keys=True, default=str))

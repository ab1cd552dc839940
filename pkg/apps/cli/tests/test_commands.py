import csv
import io
import json
import tempfile
from pathlib import Path
from unittest import mock

from django.test import override_settings

from apps.cli.services.dispatch import parse_and_dispatch
from apps.dispersion.services.modes import mode_evolution
from utils.tests import NumericTestCase


class CommandTestCase(NumericTestCase):
    """Runs commands against a temporary output directory."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def run_command(self, *argv, config=None):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        arguments = list(argv) + ['--out', str(self.root), '--quiet']
        return parse_and_dispatch(arguments, config=config, stdout=self.stdout, stderr=self.stderr)

    def document(self):
        return json.loads(self.stdout.getvalue())

    def write_config(self, name, content):
        path = self.root / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return path


class HyperbolizeCommandTests(CommandTestCase):
    """Tests for the hyperbolize command."""

    def test_third_order(self):
        """Test that the third-order system is printed and written."""
        status = self.run_command('hyperbolize', '--m', '3', '--sigma0', '1', '--tau', '0.01')
        self.assertEqual(status, 0, self.stderr.getvalue())
        document = self.document()
        self.assertEqual(document['P']['dense'], [[0, -1], [1, 0]])
        self.assertEqual(document['tau'], 0.01)
        system = json.loads((self.root / 'hyperbolize' / 'system.json').read_text())
        self.assertEqual(system['A'], document['A'])
        self.assertTrue((self.root / 'hyperbolize' / 'meta.json').exists())

    def test_unbounded_model(self):
        """Test that an even order with the wrong sign exits with status 1."""
        status = self.run_command('hyperbolize', '--m', '2', '--sigma0', '1', '--tau', '0.1')
        self.assertEqual(status, 1)
        self.assertIn('InvalidModelError', self.stderr.getvalue())

    def test_flags_override_config(self):
        """Test that a flag wins over the same key in the config file."""
        path = self.write_config('config.json', {'command': 'hyperbolize', 'm': 3, 'tau': 0.5})
        status = self.run_command('hyperbolize', '--tau', '0.01', config=path)
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertEqual(self.document()['tau'], 0.01)


class ConfigErrorTests(CommandTestCase):
    """Tests for rejected configurations."""

    def test_unknown_key(self):
        """Test that unknown configuration keys exit with status 1."""
        path = self.write_config('config.json', {'command': 'census', 'm': 3, 'bogus': 1})
        self.assertEqual(self.run_command('census', config=path), 1)
        self.assertIn('bogus', self.stderr.getvalue())

    def test_malformed_json(self):
        """Test that a malformed file is reported with its position."""
        path = self.write_config('config.json', '{"command": "census",\n "m": }')
        self.assertEqual(self.run_command('census', config=path), 1)
        self.assertIn('line 2', self.stderr.getvalue())

    def test_missing_file(self):
        """Test that a missing config file exits with status 1."""
        self.assertEqual(self.run_command('census', config=self.root / 'absent.json'), 1)

    def test_command_mismatch(self):
        """Test that a config written for another command is refused."""
        path = self.write_config('config.json', {'command': 'census', 'm': 3})
        self.assertEqual(self.run_command('hyperbolize', '--tau', '0.1', config=path), 1)

    def test_missing_required_key(self):
        """Test that converge needs a tau ladder."""
        self.assertEqual(self.run_command('converge', '--model', 'heat'), 1)
        self.assertIn('taus', self.stderr.getvalue())

    def test_unknown_command(self):
        """Test that an unknown command exits with status 1."""
        stderr = io.StringIO()
        self.assertEqual(parse_and_dispatch(['bogus'], stderr=stderr), 1)
        self.assertEqual(parse_and_dispatch([], stderr=stderr), 1)

    def test_unknown_preset(self):
        """Test that an unknown preset exits with status 1."""
        self.assertEqual(self.run_command('reproduce', '--preset', 'burgers'), 1)


class CensusCommandTests(CommandTestCase):
    """Tests for the census command."""

    def test_third_order(self):
        """Test the census of m = 3."""
        status = self.run_command('census', '--m', '3')
        self.assertEqual(status, 0, self.stderr.getvalue())
        [report] = self.document()
        self.assertEqual(report['total_candidates'], 8)
        self.assertEqual(report['full_pass'], 1)
        self.assertTrue(report['matches_formula'])

    def test_range(self):
        """Test a census over a range of orders."""
        status = self.run_command('census', '--m', '2', '--m-max', '4')
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertEqual([report['total_candidates'] for report in self.document()], [2, 8, 48])
        census = json.loads((self.root / 'census' / 'census.json').read_text())
        self.assertEqual(len(census['reports']), 3)


class DispersionCommandTests(CommandTestCase):
    """Tests for the dispersion command."""

    def test_linear_model(self):
        """Test a sweep of the third-order relaxation over the default grid."""
        status = self.run_command('dispersion', '--m', '3', '--tau', '0.1')
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertTrue(self.document()['stable'])
        with (self.root / 'dispersion' / 'dispersion.csv').open(newline='') as handle:
            table = list(csv.reader(handle))
        self.assertEqual(table[0], ['k', 'branch', 're_omega', 'im_omega'])
        self.assertEqual(len(table) - 1, 200 * 3)

    def test_catalog_model(self):
        """Test a sweep of a catalog model over a linear grid."""
        status = self.run_command('dispersion', '--model', 'nls', '--tau', '0.1',
                                  '--k-min', '0', '--k-max', '5', '--k-points', '11')
        self.assertEqual(status, 0, self.stderr.getvalue())
        document = self.document()
        self.assertEqual(document['model'], 'nls')
        self.assertEqual(document['k_count'], 11)

    def test_single_wavenumber(self):
        """Test that one wavenumber prints its spectrum."""
        status = self.run_command('dispersion', '--m', '2', '--sigma0', '-1', '--tau', '0.1', '--k', '1')
        self.assertEqual(status, 0, self.stderr.getvalue())
        spectrum = self.document()['spectrum']
        self.assertEqual(len(spectrum['eigenvalues']), 2)
        self.assertLess(spectrum['max_imag'], 0.0)


class SolveCommandTests(CommandTestCase):
    """Tests for the solve command."""

    def test_solver_failure(self):
        """Test that a blown-up solve exits with status 2."""
        status = self.run_command('solve', '--model', 'heat', '--original', '--initial', 'mode',
                                  '--k', '4', '--n', '16', '--dt', '10', '--T', '1000')
        self.assertEqual(status, 2)
        self.assertIn('SolverInstabilityError', self.stderr.getvalue())

    def test_rerun_from_metadata(self):
        """Test that rerunning from meta.json writes byte-identical snapshots."""
        status = self.run_command('solve', '--model', 'kdv', '--tau', '0.1', '--n', '32', '--T', '0.1',
                                  '--snapshots', '0.05,0.1')
        self.assertEqual(status, 0, self.stderr.getvalue())
        snapshots = self.root / 'solve' / 'snapshots.csv'
        first = snapshots.read_bytes()
        self.assertEqual(self.document()['snapshot_times'], [0.05, 0.1])

        status = self.run_command('solve', config=self.root / 'solve' / 'meta.json')
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertEqual(snapshots.read_bytes(), first)


class ConvergeCommandTests(CommandTestCase):
    """Tests for the converge command."""

    def test_modal_fourth_order(self):
        """Test first-order convergence for the fourth-order model on one mode."""
        status = self.run_command('converge', '--model', 'linear', '--m', '4', '--k', '1', '--T', '0.5',
                                  '--taus', '1e-3,5e-4,2.5e-4,1.25e-4')
        self.assertEqual(status, 0, self.stderr.getvalue())
        document = self.document()
        self.assertBetween(document['fitted_order'], 0.85, 1.15)
        with (self.root / 'converge' / 'convergence.csv').open(newline='') as handle:
            table = list(csv.reader(handle))
        self.assertEqual(table[0], ['tau', 'error', 'norm', 'T', 'model'])
        self.assertEqual(len(table), 5)

    def test_unsorted_ladder(self):
        """Test that an ascending ladder exits with status 1."""
        status = self.run_command('converge', '--model', 'linear', '--m', '2', '--k', '1',
                                  '--taus', '1e-3,1e-2,1e-1')
        self.assertEqual(status, 1)


class ReproduceCommandTests(CommandTestCase):
    """Tests for the reproduce command."""

    def test_rerun_from_metadata(self):
        """Test that rerunning a preset from its meta.json writes byte-identical data."""
        status = self.run_command('reproduce', '--preset', 'heat')
        self.assertEqual(status, 0, self.stderr.getvalue())
        data = self.root / 'heat' / 'data.csv'
        first = data.read_bytes()
        meta = self.root / 'heat' / 'meta.json'
        self.assertEqual(json.loads(meta.read_text())['config']['preset'], 'heat')
        data.unlink()

        status = self.run_command('reproduce', config=meta)
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertEqual(data.read_bytes(), first)
        self.assertEqual(self.document()['preset'], 'heat')


class SettingsCommandTests(CommandTestCase):
    """Tests that numerical settings reach the services."""

    @override_settings(HYPERBOLIZATION={'REALITY_TOLERANCE': 1e-3})
    def test_reality_tolerance(self):
        """Test that the configured reality tolerance is used by the solve."""
        status = self.run_command('solve', '--model', 'heat', '--original', '--n', '16', '--T', '0.1')
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertEqual(self.document()['reality_tolerance'], 1e-3)

    @override_settings(HYPERBOLIZATION={'CONDITION_LIMIT': 0.0})
    def test_condition_limit(self):
        """Test that the configured condition limit is passed to every mode evolution."""
        with mock.patch('apps.harness.services.convergence.mode_evolution', wraps=mode_evolution) as evolution:
            status = self.run_command('converge', '--model', 'linear', '--m', '2', '--sigma0', '-1', '--k', '1',
                                      '--T', '0.5', '--taus', '1e-2,5e-3,2.5e-3')
        self.assertEqual(status, 0, self.stderr.getvalue())
        self.assertTrue(evolution.called)
        for call in evolution.call_args_list:
            self.assertEqual(call.kwargs['condition_limit'], 0.0)

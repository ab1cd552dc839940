"""
Command implementations: validated flat config in, documents and artifact files out.
"""
import logging
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, List, Optional

import numpy as np

from apps.construction.serializers.systems import HyperbolicSystemSerializer
from apps.construction.services.systems import LinearModel, hyperbolize
from apps.dispersion.serializers.relations import DispersionSweepSerializer
from apps.dispersion.services.relations import (
    catalog_dispersion_sweep,
    dispersion_sweep,
    sample_wavenumbers,
)
from apps.harness.serializers.reports import CensusReportSerializer, ConvergenceReportSerializer
from apps.harness.services.artifacts import (
    CONVERGENCE_HEADER,
    DISPERSION_HEADER,
    SNAPSHOT_HEADER,
    dispersion_rows,
    snapshot_rows,
    write_csv,
    write_json,
    write_plot,
)
from apps.harness.services.census import census, resolve_sigma0
from apps.harness.services.convergence import Problem, tau_sweep
from apps.harness.services.presets import reproduce
from apps.spectral.serializers.solver import SolveMetaSerializer
from apps.spectral.services.grid import ModeSum, PeriodicGrid
from apps.spectral.services.initial import initial_condition
from apps.spectral.services.models import ModelKind, ModelSpec
from apps.spectral.services.solver import SolveConfig, solve
from utils.conf import hyp_setting

logger = logging.getLogger(__name__)


@dataclass
class RunOutput:
    document: Any
    files: List[Path] = field(default_factory=list)


def config_echo(config: dict) -> dict:
    """The validated config as plain JSON values, omitting unset keys."""
    echo = {}
    for key, value in config.items():
        if value is None:
            continue
        echo[key] = list(value) if isinstance(value, (list, tuple)) else value
    return echo


def output_dir(config: dict, name: str) -> Path:
    return Path(config.get('out') or hyp_setting('OUTPUT_DIR')) / name


def build_linear_model(config: dict) -> LinearModel:
    m = config['m']
    sigma0 = config.get('sigma0')
    if sigma0 is None:
        sigma0 = resolve_sigma0(m, 'required')
    return LinearModel(m, sigma0, tuple(config.get('alpha') or ()))


def build_model(config: dict, tau: Optional[float] = None) -> ModelSpec:
    kind = config['model']
    linear_model = build_linear_model(config) if kind == ModelKind.GENERAL_LINEAR.value else None
    return ModelSpec(kind=kind, tau=tau, kappa=config['kappa'], linear_model=linear_model)


def build_grid(config: dict) -> PeriodicGrid:
    return PeriodicGrid(config['x_left'], config['x_right'], config['n'])


def initial_factory(config: dict):
    name = config['initial']
    params = {
        'gaussian': {'width': config['width']},
        'mode': {'k': config['k'] if config.get('k') is not None else 1.0},
        'soliton': {'alpha': config['soliton_alpha']},
        'ch-pulse': {},
    }[name]
    return partial(initial_condition, name, **params)


def wavenumber_grid(config: dict) -> np.ndarray:
    if config.get('k') is not None:
        return np.array([config['k']])
    if config.get('k_min') is not None and config.get('k_max') is not None:
        return np.linspace(config['k_min'], config['k_max'], config['k_points'])
    return sample_wavenumbers()


def run_hyperbolize(config: dict) -> RunOutput:
    system = hyperbolize(build_linear_model(config), config['tau'])
    document = HyperbolicSystemSerializer(system).data
    directory = output_dir(config, 'hyperbolize')
    files = [
        write_json(directory / 'system.json', document),
        write_json(directory / 'meta.json', {'config': config_echo(config), 'run': {'system': document}}),
    ]
    return RunOutput(document, files)


def run_dispersion(config: dict) -> RunOutput:
    k_grid = wavenumber_grid(config)
    threads = config.get('threads') or hyp_setting('THREADS')
    tolerance = hyp_setting('STABILITY_TOLERANCE')
    if config.get('model') and config['model'] != ModelKind.GENERAL_LINEAR.value:
        sweep = catalog_dispersion_sweep(build_model(config), k_grid, config['tau'], tolerance)
    else:
        system = hyperbolize(build_linear_model(config), config['tau'])
        sweep = dispersion_sweep(system, k_grid, tolerance, threads=threads)
    document = DispersionSweepSerializer(sweep).data
    directory = output_dir(config, 'dispersion')
    files = [
        write_csv(directory / 'dispersion.csv', DISPERSION_HEADER, dispersion_rows(sweep)),
        write_json(directory / 'meta.json', {'config': config_echo(config), 'run': document}),
    ]
    if config['plot']:
        curves = {f"branch {index}": sweep.branches[:, index].real for index in range(sweep.branches.shape[1])}
        files.append(write_plot(directory / 'plot.svg', sweep.k_grid, curves,
                                title='dispersion relation', xlabel='k', ylabel='Re omega'))
    return RunOutput(document, files)


def run_census(config: dict) -> RunOutput:
    m_values = range(config['m'], (config.get('m_max') or config['m']) + 1)
    rule = config['sigma0'] if config.get('sigma0') is not None else 'required'
    reports = census(m_values, rule)
    document = [CensusReportSerializer(report).data for report in reports]
    directory = output_dir(config, 'census')
    files = [
        write_json(directory / 'census.json', {'reports': document}),
        write_json(directory / 'meta.json', {'config': config_echo(config), 'run': {'reports': document}}),
    ]
    return RunOutput(document, files)


def run_solve(config: dict) -> RunOutput:
    grid = build_grid(config)
    hyperbolized = config['hyperbolized']
    model = build_model(config, tau=config.get('tau') if hyperbolized else None)
    solve_config = SolveConfig(
        model=model,
        hyperbolized=hyperbolized,
        grid=grid,
        stepper=config['stepper'],
        dt=config['dt'],
        t_final=config['T'],
        snapshot_times=tuple(config.get('snapshots') or ()),
        dealias=config.get('dealias'),
        cfl=hyp_setting('CFL'),
        reality_tolerance=hyp_setting('REALITY_TOLERANCE'),
    )
    result = solve(solve_config, initial_factory(config)(grid))
    document = SolveMetaSerializer(result).data
    directory = output_dir(config, 'solve')
    files = [
        write_csv(directory / 'snapshots.csv', SNAPSHOT_HEADER, snapshot_rows(result.snapshots)),
        write_json(directory / 'meta.json', {'config': config_echo(config), 'run': document}),
    ]
    if config['plot']:
        curves = {f"t={state.time:g}": state.q0 for state in result.snapshots}
        files.append(write_plot(directory / 'plot.svg', grid.nodes, curves, title=f"{model.name} q_0"))
    return RunOutput(document, files)


def run_converge(config: dict) -> RunOutput:
    model = build_model(config)
    limits = {'reality_tolerance': hyp_setting('REALITY_TOLERANCE'),
              'condition_limit': hyp_setting('CONDITION_LIMIT')}
    if config['model'] == ModelKind.GENERAL_LINEAR.value and config.get('k') is not None:
        problem = Problem(model=model, initial=ModeSum((config['k'],), (1.0,)), T=config['T'], **limits)
    else:
        problem = Problem(model=model, initial=initial_factory(config), T=config['T'],
                          grid=build_grid(config), stepper=config['stepper'],
                          dealias=config.get('dealias'), cfl=hyp_setting('CFL'), **limits)
    report = tau_sweep(problem, config['taus'], config['norm'], threads=config.get('threads'))
    document = ConvergenceReportSerializer(report).data
    directory = output_dir(config, 'converge')
    rows = ((row['tau'], row['error'], row['norm'], row['T'], row['model']) for row in report.rows())
    files = [
        write_csv(directory / 'convergence.csv', CONVERGENCE_HEADER, rows),
        write_json(directory / 'meta.json', {'config': config_echo(config), 'run': document}),
    ]
    if config['plot']:
        files.append(write_plot(directory / 'plot.svg', np.log10(report.tau_values),
                                {'log10 error': np.log10(report.errors)},
                                title=f"{report.model}: fitted order {report.fitted_order:.3f}",
                                xlabel='log10 tau', ylabel='log10 error'))
    return RunOutput(document, files)


def run_reproduce(config: dict) -> RunOutput:
    out = Path(config.get('out') or hyp_setting('OUTPUT_DIR'))
    bundle = reproduce(config['preset'], out_dir=out, plot=config['plot'], threads=config.get('threads'),
                       config=config_echo(config))
    document = {'preset': bundle.preset, 'files': [str(path) for path in bundle.files],
                'members': bundle.meta['run']['members']}
    return RunOutput(document, bundle.files)


RUNNERS = {
    'hyperbolize': run_hyperbolize,
    'dispersion': run_dispersion,
    'census': run_census,
    'solve': run_solve,
    'converge': run_converge,
    'reproduce': run_reproduce,
}

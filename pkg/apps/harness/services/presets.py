"""
One-command reproduction of the reference experiments.

Each preset fixes a model, grid, initial condition, relaxation ladder and
time stepper, and writes ``data.csv``, ``meta.json`` and optionally
``plot.svg`` to ``<out>/<preset>/``.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from apps.harness.services.artifacts import SERIES_HEADER, field_rows, write_csv, write_json, write_plot
from apps.harness.services.convergence import Problem, error_norm, recommended_tau
from apps.spectral.services.grid import PeriodicGrid
from apps.spectral.services.initial import initial_condition
from apps.spectral.services.models import catalog_model
from utils.conf import hyp_setting
from utils.exceptions import UnknownPresetError
from utils.numbers import format_float

logger = logging.getLogger(__name__)

ORIGINAL = 'original'
HYPERBOLIZED = 'hyperbolized'
ERROR = 'error'


@dataclass(frozen=True)
class Preset:
    name: str
    model: str
    x_left: float
    x_right: float
    n: int
    T: float
    inverse_taus: Tuple[float, ...]
    stepper: str
    initial: str
    snapshot_times: Tuple[float, ...] = ()
    reference_stepper: Optional[str] = None
    initial_params: Tuple[Tuple[str, float], ...] = ()
    kappa: float = 1.0
    series: Tuple[str, ...] = (ORIGINAL, HYPERBOLIZED, ERROR)
    description: str = ''

    @property
    def taus(self) -> Tuple[float, ...]:
        return tuple(1.0 / value for value in self.inverse_taus)

    @property
    def grid(self) -> PeriodicGrid:
        return PeriodicGrid(self.x_left, self.x_right, self.n)

    def problem(self) -> Problem:
        return Problem(
            model=catalog_model(self.model, kappa=self.kappa),
            initial=partial(initial_condition, self.initial, **dict(self.initial_params)),
            T=self.T,
            grid=self.grid,
            stepper=self.stepper,
            reference_stepper=self.reference_stepper,
            snapshot_times=self.snapshot_times,
            cfl=hyp_setting('CFL'),
            reality_tolerance=hyp_setting('REALITY_TOLERANCE'),
            condition_limit=hyp_setting('CONDITION_LIMIT'),
        )

    def as_dict(self) -> dict:
        document = asdict(self)
        document['initial_params'] = dict(self.initial_params)
        document['taus'] = list(self.taus)
        return document


PRESETS = {preset.name: preset for preset in (
    Preset(
        name='heat', model='heat', x_left=-16.0, x_right=16.0, n=128, T=1.0,
        inverse_taus=(10.0, 100.0, 1000.0), stepper='rk4', initial='gaussian',
        description='heat equation against its hyperbolization, Gaussian data',
    ),
    Preset(
        name='kdv', model='kdv', x_left=-16.0, x_right=16.0, n=128, T=2.0,
        inverse_taus=(10.0, 100.0, 1000.0), stepper='rk4', initial='gaussian',
        description='KdV against its hyperbolization, Gaussian data',
    ),
    Preset(
        name='nls', model='nls', x_left=-16.0, x_right=16.0, n=256, T=2.0,
        inverse_taus=(10.0, 100.0, 1000.0), stepper='rk4', initial='soliton',
        initial_params=(('alpha', 1.0),),
        description='focusing NLS soliton sqrt(2 alpha) exp(ix) sech(sqrt(alpha) x), alpha = 1',
    ),
    Preset(
        name='ch', model='ch', x_left=-10.0, x_right=50.0, n=512, T=10.0,
        inverse_taus=(25.0, 50.0, 100.0), stepper='ssprk33', initial='ch-pulse',
        series=(ORIGINAL, HYPERBOLIZED),
        description='Camassa-Holm pulse steepening into a right-moving peakon',
    ),
    Preset(
        name='ks-solution', model='ks', x_left=-20.0 * np.pi, x_right=20.0 * np.pi, n=256, T=50.0,
        inverse_taus=(50.0, 100.0, 400.0), stepper='rk4', reference_stepper='imex', initial='gaussian',
        snapshot_times=(0.0, 10.0, 20.0, 30.0, 40.0, 50.0), series=(ORIGINAL, HYPERBOLIZED),
        description='Kuramoto-Sivashinsky solution from Gaussian data',
    ),
    Preset(
        name='ks-error', model='ks', x_left=-20.0 * np.pi, x_right=20.0 * np.pi, n=256, T=50.0,
        inverse_taus=(50.0, 100.0, 400.0), stepper='rk4', reference_stepper='imex', initial='gaussian',
        snapshot_times=(10.0, 20.0, 30.0, 40.0, 50.0), series=(ERROR,),
        description='pointwise hyperbolization error for Kuramoto-Sivashinsky',
    ),
)}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; choose one of {sorted(PRESETS)}",
                                 preset=name) from None


@dataclass
class Bundle:
    preset: str
    directory: Path
    files: List[Path] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def tau_label(tau: float) -> str:
    return f"tau={format_float(tau)}"


def reproduce(name: str, out_dir=None, plot: bool = True, threads: Optional[int] = None,
              config: Optional[dict] = None) -> Bundle:
    """Runs a preset and writes its artifact bundle."""
    preset = get_preset(name)
    out_dir = Path(out_dir or hyp_setting('OUTPUT_DIR'))
    threads = threads or hyp_setting('THREADS')
    directory = out_dir / preset.name
    problem = preset.problem()
    grid = preset.grid
    started = time.perf_counter()

    logger.info("reproducing preset %s", preset.name)
    reference = problem.reference
    taus = preset.taus

    def member(tau):
        return problem.hyperbolized(tau)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(taus))) as executor:
            runs = list(executor.map(member, taus))
    else:
        runs = [member(tau) for tau in taus]

    rows = []
    if ORIGINAL in preset.series:
        for t, values in zip(problem.times, reference):
            rows.extend(field_rows(ORIGINAL, t, grid.nodes, values))
    for tau, (values_per_time, _) in zip(taus, runs):
        for t, values, exact in zip(problem.times, values_per_time, reference):
            if HYPERBOLIZED in preset.series:
                rows.extend(field_rows(f"{HYPERBOLIZED}[{tau_label(tau)}]", t, grid.nodes, values))
            if ERROR in preset.series:
                rows.extend(field_rows(f"{ERROR}[{tau_label(tau)}]", t, grid.nodes, values - exact))

    bundle = Bundle(preset=preset.name, directory=directory)
    bundle.files.append(write_csv(directory / 'data.csv', SERIES_HEADER, rows))

    u0 = problem.initial_on(grid)
    members = []
    for tau, (values_per_time, result) in zip(taus, runs):
        members.append({
            'tau': tau,
            'dt': result.dt if result else None,
            'steps': result.steps if result else None,
            'error_Linf': error_norm(values_per_time[-1] - reference[-1], 'Linf', grid.dx),
            'error_L2': error_norm(values_per_time[-1] - reference[-1], 'L2', grid.dx),
        })
    reference_dt = problem.reference_time_step() if problem.model.is_nonlinear else None
    bundle.meta = {
        'config': dict(config or {'command': 'reproduce', 'preset': preset.name, 'out': str(out_dir),
                                  'plot': plot}),
        'run': {
            'preset': preset.as_dict(),
            'reference': {'kind': 'refined solve' if problem.model.is_nonlinear else 'exact',
                          'n': grid.n * 2 if problem.model.is_nonlinear else grid.n,
                          'dt': reference_dt},
            'recommended_tau': recommended_tau(u0, grid, problem.model.base_model.m),
            'members': members,
            'wall_time': time.perf_counter() - started,
        },
    }
    bundle.files.append(write_json(directory / 'meta.json', bundle.meta))

    if plot:
        curves = {ORIGINAL: reference[-1]}
        for tau, (values_per_time, _) in zip(taus, runs):
            curves[f"{HYPERBOLIZED} {tau_label(tau)}"] = values_per_time[-1]
        bundle.files.append(write_plot(directory / 'plot.svg', grid.nodes, curves,
                                       title=f"{preset.description} (t={format_float(problem.times[-1])})"))
    logger.info("preset %s written to %s", preset.name, directory)
    return bundle

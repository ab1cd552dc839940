"""
Writers for run artifacts: CSV tables, JSON sidecars and SVG plots.

CSV numbers use the shortest round-trip decimal so identical runs give
byte-identical files.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Mapping, Sequence

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from utils.numbers import format_float  # noqa: E402

logger = logging.getLogger(__name__)

SERIES_HEADER = ('series', 't', 'x', 're', 'im')
SNAPSHOT_HEADER = ('t', 'x', 'component', 're', 'im')
DISPERSION_HEADER = ('k', 'branch', 're_omega', 'im_omega')
CONVERGENCE_HEADER = ('tau', 'error', 'norm', 'T', 'model')


def ensure_dir(path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    logger.debug("wrote %s", path)
    return path


def write_json(path, document: Mapping) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + '\n', encoding='utf-8')
    logger.debug("wrote %s", path)
    return path


def field_rows(series: str, t: float, x: np.ndarray, values: np.ndarray):
    values = np.asarray(values, dtype=complex)
    for position, value in zip(x, values):
        yield series, float(t), float(position), float(value.real), float(value.imag)


def snapshot_rows(snapshots):
    """Rows t,x,component,re,im for a list of solver States."""
    for state in snapshots:
        for component, values in enumerate(state.components):
            for position, value in zip(state.grid.nodes, values):
                yield float(state.time), float(position), component, float(value.real), float(value.imag)


def dispersion_rows(sweep):
    for k, branches in zip(sweep.k_grid, sweep.branches):
        for branch, omega in enumerate(branches):
            yield float(k), branch, float(omega.real), float(omega.imag)


def write_plot(path, x: np.ndarray, curves: Dict[str, np.ndarray], title: str = '',
               xlabel: str = 'x', ylabel: str = 'u') -> Path:
    """Line plot of the real parts of ``curves``; the SVG carries no timestamp."""
    path = Path(path)
    ensure_dir(path.parent)
    with matplotlib.rc_context({'svg.hashsalt': 'hyprelax'}):
        figure, axes = plt.subplots(figsize=(8, 4.5))
        try:
            for label, values in curves.items():
                axes.plot(x, np.real(values), label=label, linewidth=1.2)
            axes.set_title(title)
            axes.set_xlabel(xlabel)
            axes.set_ylabel(ylabel)
            if curves:
                axes.legend(fontsize='small')
            figure.tight_layout()
            figure.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(figure)
    logger.debug("wrote %s", path)
    return path

"""
experiment_flow/runner.py
~~~~~~~~~~~~~~~~~~~~~~

Runs a configured experiment end to end: schedule, noise model, multiverse
evolution from |0…0⟩, trace export.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from config import Settings, settings
from experiment_flow.schedules import build_schedule
from gatekit import apply_gate
from models import ExperimentConfig, NoiseChannel, NoiseModel
from multiverse import (
    MultiverseResult,
    Schedule,
    run_multiverse,
    sample_run_noise,
    suppress_channel,
    suppression_ladder,
)
from qstate import StateVector, basis_state
from utils.errors import ConfigError
from utils.trace_export import write_trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RunReport:
    label: str
    nq: int
    schedule: Schedule
    model: NoiseModel
    result: MultiverseResult
    path: Path


def output_path(config: ExperimentConfig, app_settings: Optional[Settings] = None) -> Path:
    if config.out:
        return Path(config.out)
    app_settings = app_settings or settings
    name = f"{config.experiment.value}_seed{config.seed}.{config.format.value}"
    return Path(app_settings.output_dir) / name


def _stage_path(base: Path, label: str, fmt: str) -> Path:
    stem = base.with_suffix("") if base.suffix else base
    return stem.with_name(f"{stem.name}_{label}.{fmt}")


def _base_model(config: ExperimentConfig) -> NoiseModel:
    try:
        return config.noise_model()
    except ValidationError as e:
        raise ConfigError(f"invalid noise model: {e}") from e


def configured_model(config: ExperimentConfig) -> NoiseModel:
    """Noise model with the config's suppression list applied."""
    model = _base_model(config)
    for channel in config.suppress:
        if channel not in model.channels:
            logger.warning(f"channel {channel.value} is not enabled; nothing to suppress")
            continue
        model = suppress_channel(model, channel)
    return model


def run_experiment(config: ExperimentConfig, app_settings: Optional[Settings] = None) -> RunReport:
    nq, schedule = build_schedule(config)
    model = configured_model(config)
    logger.info(f"running {config.experiment.value}: nq={nq} steps={len(schedule)} seed={config.seed}")
    result = run_multiverse(
        basis_state(nq, 0),
        schedule,
        model,
        workers=config.workers,
        fidelity_method=config.fidelity_method,
    )
    path = write_trace(result.trace, output_path(config, app_settings), config.format)
    return RunReport(label="run", nq=nq, schedule=schedule, model=model, result=result, path=path)


def run_suppression_ladder(
    config: ExperimentConfig,
    app_settings: Optional[Settings] = None,
) -> List[RunReport]:
    """
    One run per ladder stage (full, no-x, no-x-y, …), all replaying the same
    frozen noise events. `config.suppress` sets the order; by default x, y, z, general.
    """
    nq, schedule = build_schedule(config)
    full = _base_model(config)
    order: Sequence[NoiseChannel] = config.suppress or tuple(NoiseChannel)
    events = sample_run_noise(full, nq, len(schedule))
    base = output_path(config, app_settings)

    reports = []
    for label, model in suppression_ladder(full, order):
        logger.info(f"suppression stage {label}: suppressed={sorted(c.value for c in model.suppressed)}")
        result = run_multiverse(
            basis_state(nq, 0),
            schedule,
            model,
            workers=config.workers,
            fidelity_method=config.fidelity_method,
            events=events,
        )
        path = write_trace(result.trace, _stage_path(base, label, config.format.value), config.format)
        reports.append(RunReport(label=label, nq=nq, schedule=schedule, model=model, result=result, path=path))
    return reports


def noiseless_output(config: ExperimentConfig) -> Tuple[int, StateVector]:
    """The algorithm gates of the schedule applied to |0…0⟩ with no noise."""
    nq, schedule = build_schedule(config)
    psi = basis_state(nq, 0)
    for op in schedule.algorithm_ops():
        psi = apply_gate(op.gate, op.qubits, psi)
    return nq, psi

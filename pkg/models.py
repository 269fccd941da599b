"""
models.py
~~~~~~~~~~~~~~~~~~~~~~

Pydantic data layer for the multiverse simulator.

• `NoiseChannel`        – enum of the noise operators a path can be hit with
• `Hit`, `NoiseEvent`   – frozen records of sampled noise (held fixed for a run)
• `NoiseModel`          – probabilities, path count, enabled/suppressed channels, seed
• `ExperimentConfig`    – one validated experiment description (file + CLI overrides)
"""

from __future__ import annotations

import enum
import math
from typing import FrozenSet, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.constants import DEFAULT_PATHS, DEFAULT_STEPS, WEIGHT_TOL

# --------------------------------------------------------------------------- #
# Enum helpers                                                                #
# --------------------------------------------------------------------------- #
class NoiseChannel(str, enum.Enum):
    x = "x"
    y = "y"
    z = "z"
    general = "general"


class ExperimentKind(str, enum.Enum):
    mv1 = "mv1"
    mv2 = "mv2"
    mvn = "mvn"
    custom = "custom"


class TraceFormat(str, enum.Enum):
    csv = "csv"
    json = "json"


class FidelityMethod(str, enum.Enum):
    exact = "exact"
    approx = "approx"


DEFAULT_CHANNELS = frozenset({NoiseChannel.x, NoiseChannel.y, NoiseChannel.z})


def parse_channels(raw) -> FrozenSet[NoiseChannel]:
    """Accept "x,y,z", an iterable of names, or NoiseChannel members."""
    if raw is None:
        return frozenset()
    if isinstance(raw, str):
        raw = [item for item in raw.replace(" ", "").split(",") if item]
    return frozenset(NoiseChannel(str(getattr(item, "value", item)).lower()) for item in raw)


# --------------------------------------------------------------------------- #
# Noise records                                                               #
# --------------------------------------------------------------------------- #
class Hit(BaseModel):
    """One single-qubit noise operator striking one qubit."""
    model_config = ConfigDict(frozen=True)

    qubit: int = Field(ge=1)
    channel: NoiseChannel
    # (theta, nx, ny, nz) for the general-rotation channel
    rotation: Optional[Tuple[float, float, float, float]] = None


class NoiseEvent(BaseModel):
    """The noise acting on one path at one step, for branch s=1 (one hit) or s=2 (two hits)."""
    model_config = ConfigDict(frozen=True)

    step: int = Field(ge=1)
    path: int = Field(ge=1)
    branch: int = Field(ge=1, le=2)
    hits: Tuple[Hit, ...]

    @model_validator(mode="after")
    def _check_hits(self) -> "NoiseEvent":
        if len(self.hits) != self.branch:
            raise ValueError(f"branch {self.branch} event must carry {self.branch} hit(s), got {len(self.hits)}")
        return self


# --------------------------------------------------------------------------- #
# Noise model                                                                 #
# --------------------------------------------------------------------------- #
class NoiseModel(BaseModel):
    """
    Storage/noise probabilities for the path ensemble.

    The ideal path has weight `p`; each of the `n_paths` noisy paths has weight
    `epsilon / n_paths`, split into a single-hit branch (`p1`) and a double-hit
    branch (`p2`).
    """
    model_config = ConfigDict(frozen=True)

    p: float = Field(default=0.8, ge=0.0, le=1.0)
    epsilon: float = Field(default=0.2, ge=0.0, le=1.0)
    p1: float = Field(default=0.95, ge=0.0, le=1.0)
    p2: float = Field(default=0.05, ge=0.0, le=1.0)
    n_paths: int = Field(default=DEFAULT_PATHS, ge=1)
    channels: FrozenSet[NoiseChannel] = DEFAULT_CHANNELS
    suppressed: FrozenSet[NoiseChannel] = frozenset()
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="before")
    @classmethod
    def _fill_complements(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if "p" in data and "epsilon" not in data:
            data["epsilon"] = 1.0 - float(data["p"])
        elif "epsilon" in data and "p" not in data:
            data["p"] = 1.0 - float(data["epsilon"])
        if "p1" in data and "p2" not in data:
            data["p2"] = 1.0 - float(data["p1"])
        elif "p2" in data and "p1" not in data:
            data["p1"] = 1.0 - float(data["p2"])
        return data

    @field_validator("channels", "suppressed", mode="before")
    @classmethod
    def _parse_channels(cls, value):
        return parse_channels(value)

    @model_validator(mode="after")
    def _check_probabilities(self) -> "NoiseModel":
        if not math.isclose(self.p + self.epsilon, 1.0, abs_tol=WEIGHT_TOL):
            raise ValueError(f"p + epsilon must equal 1 (got {self.p} + {self.epsilon})")
        if not math.isclose(self.p1 + self.p2, 1.0, abs_tol=WEIGHT_TOL):
            raise ValueError(f"p1 + p2 must equal 1 (got {self.p1} + {self.p2})")
        if not self.is_noiseless and not self.channels:
            raise ValueError("a noisy model needs at least one enabled channel")
        if not self.suppressed <= self.channels:
            raise ValueError("only enabled channels can be suppressed")
        return self

    @property
    def is_noiseless(self) -> bool:
        return self.epsilon == 0.0

    @property
    def active_channels(self) -> FrozenSet[NoiseChannel]:
        return self.channels - self.suppressed

    def branch_weight(self, branch: int) -> float:
        """Ensemble weight epsilon * p_s / n_paths of one path's branch."""
        p_s = self.p1 if branch == 1 else self.p2
        return self.epsilon * p_s / self.n_paths


# --------------------------------------------------------------------------- #
# Experiment configuration                                                    #
# --------------------------------------------------------------------------- #
class ExperimentConfig(BaseModel):
    """A fully merged experiment description (defaults < file < command line)."""
    model_config = ConfigDict(frozen=True)

    experiment: ExperimentKind = ExperimentKind.mv1
    nq: Optional[int] = Field(default=None, ge=1)
    steps: Optional[int] = Field(default=None, ge=1)
    interlude: int = Field(default=1, ge=0)
    paths: int = Field(default=DEFAULT_PATHS, ge=1)
    p: float = Field(default=0.8, ge=0.0, le=1.0)
    p1: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    channels: FrozenSet[NoiseChannel] = DEFAULT_CHANNELS
    suppress: Tuple[NoiseChannel, ...] = ()
    seed: int = Field(default=0, ge=0, lt=2**64)
    format: TraceFormat = TraceFormat.csv
    out: Optional[str] = None
    circuit: Optional[str] = None
    fidelity_method: FidelityMethod = FidelityMethod.exact
    workers: int = Field(default=1, ge=1)

    @field_validator("channels", mode="before")
    @classmethod
    def _parse_channels(cls, value):
        return parse_channels(value)

    @field_validator("suppress", mode="before")
    @classmethod
    def _parse_suppress(cls, value):
        if value is None:
            return ()
        if isinstance(value, str):
            value = [item for item in value.replace(" ", "").split(",") if item]
        ordered = []
        for item in value:
            channel = NoiseChannel(str(getattr(item, "value", item)).lower())
            if channel not in ordered:
                ordered.append(channel)
        return tuple(ordered)

    @model_validator(mode="after")
    def _check_register(self) -> "ExperimentConfig":
        if self.experiment is ExperimentKind.mv1 and self.nq not in (None, 1):
            raise ValueError("mv1 is a one-qubit experiment (nq=1)")
        if self.experiment is ExperimentKind.mv2 and self.nq not in (None, 2):
            raise ValueError("mv2 is a two-qubit experiment (nq=2)")
        if self.experiment is ExperimentKind.mvn and self.nq is not None and self.nq < 2:
            raise ValueError("mvn needs at least two qubits")
        if self.experiment is ExperimentKind.custom and not self.circuit:
            raise ValueError("custom experiments need a circuit")
        if self.p < 1.0 and not self.channels:
            raise ValueError("a noisy experiment (p < 1) needs at least one enabled channel")
        return self

    @property
    def qubit_count(self) -> int:
        if self.nq is not None:
            return self.nq
        return {ExperimentKind.mv1: 1, ExperimentKind.mv2: 2, ExperimentKind.mvn: 5}.get(self.experiment, 1)

    @property
    def total_steps(self) -> int:
        return self.steps if self.steps is not None else DEFAULT_STEPS[self.experiment.value]

    def noise_model(self) -> NoiseModel:
        """Build the NoiseModel; mv1 defaults to single hits only (p2=0)."""
        p1 = self.p1
        if p1 is None:
            p1 = 1.0 if self.experiment is ExperimentKind.mv1 else 0.95
        return NoiseModel(
            p=self.p,
            p1=p1,
            n_paths=self.paths,
            channels=self.channels,
            seed=self.seed,
        )


__all__ = [
    "NoiseChannel",
    "ExperimentKind",
    "TraceFormat",
    "FidelityMethod",
    "DEFAULT_CHANNELS",
    "parse_channels",
    "Hit",
    "NoiseEvent",
    "NoiseModel",
    "ExperimentConfig",
]

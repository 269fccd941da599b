"""
multiverse.py
~~~~~~~~~~~~~~~~~~~~~~

Ensemble-of-paths noise engine.

• Each step evolves the ensemble density matrix as

      ρ_{n+1} = Ω_A ( p·ρ_n + Σ_k Σ_s (ε·p_s/n_p) Ω_ks ρ_n Ω_ks† ) Ω_A†

  where Ω_ks is the noise on path k, branch s (s=1 one hit, s=2 two hits on
  distinct qubits) and Ω_A the algorithm gate of the step (if any).
• Noise events are sampled from a per-(step, path) substream of the model
  seed, so sampling order never depends on worker count. They are drawn once
  per run and frozen; channel suppression turns hits into identities without
  touching the random stream, so suppressed reruns are paired with the full run.
• `povm_decomposition` expresses one storage step as a Kraus list.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

import densitylab
from densitylab import DensityMatrix
from gatekit import GateMatrix, conjugate_density, pauli, rotation, sample_rotation_parameters
from models import FidelityMethod, Hit, NoiseChannel, NoiseEvent, NoiseModel
from qstate import StateVector
from utils.errors import ScheduleError

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------- #
# Schedule                                                                    #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, eq=False)
class AlgorithmOp:
    """An algorithm gate Ω_A on specific qubits (first qubit = control for CNOT)."""
    gate: GateMatrix
    qubits: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.gate.name}{''.join(str(q) for q in self.qubits)}"


@dataclass(frozen=True)
class NoiseOnly:
    """A step with no algorithm gate: the ensemble just sits in storage."""

    @property
    def label(self) -> str:
        return "N"


Step = Union[AlgorithmOp, NoiseOnly]


@dataclass(frozen=True)
class Schedule:
    steps: Tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self, nq: int) -> "Schedule":
        for index, step in enumerate(self.steps, start=1):
            if isinstance(step, AlgorithmOp):
                if step.gate.arity != len(step.qubits):
                    raise ScheduleError(f"step {index}: {step.gate.name} needs {step.gate.arity} qubit(s)")
                if len(set(step.qubits)) != len(step.qubits) or any(not 1 <= q <= nq for q in step.qubits):
                    raise ScheduleError(f"step {index}: qubits {step.qubits} invalid for nq={nq}")
        return self

    def algorithm_ops(self) -> List[AlgorithmOp]:
        return [step for step in self.steps if isinstance(step, AlgorithmOp)]


# --------------------------------------------------------------------------- #
# Metrics                                                                     #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, eq=False)
class StepMetrics:
    step: int
    label: str
    fidelity: float
    purity: float
    entropy: float
    eigenvalues: np.ndarray
    polarization: np.ndarray                      # (nq, 3) rows Px, Py, Pz
    correlation: Dict[Tuple[int, int], np.ndarray]  # (q1, q2) -> 3x3


@dataclass
class MetricsTrace:
    """One record per schedule step; `initial` describes ρ0 before step 1."""
    nq: int
    initial: StepMetrics
    records: List[StepMetrics] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(record, name) for record in self.records])


@dataclass(frozen=True, eq=False)
class MultiverseResult:
    trace: MetricsTrace
    final: DensityMatrix
    events: Tuple[Tuple[NoiseEvent, ...], ...]


def compute_metrics(
    rho: DensityMatrix,
    rho0: DensityMatrix,
    step: int,
    label: str,
    fidelity_method: FidelityMethod = FidelityMethod.exact,
) -> StepMetrics:
    if fidelity_method is FidelityMethod.approx:
        fid = densitylab.fidelity_approx(rho, rho0)
    else:
        fid = densitylab.fidelity(rho, rho0)
    bloch = densitylab.bloch_data(rho)
    return StepMetrics(
        step=step,
        label=label,
        fidelity=fid,
        purity=densitylab.purity(rho),
        entropy=densitylab.entropy(rho),
        eigenvalues=densitylab.eigenvalues(rho),
        polarization=np.array([bloch.polarization[q] for q in range(1, rho.nq + 1)]).reshape(rho.nq, 3),
        correlation=bloch.correlation,
    )


# --------------------------------------------------------------------------- #
# Noise sampling                                                              #
# --------------------------------------------------------------------------- #
_PAULI_OF = {NoiseChannel.x: 1, NoiseChannel.y: 2, NoiseChannel.z: 3}


def _substream(seed: int, step: int, path: int) -> np.random.Generator:
    """Independent generator keyed by (seed, step, path)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(step, path)))


def _draw_hit(rng: np.random.Generator, qubit: int, channels: Sequence[NoiseChannel]) -> Hit:
    # always consume the same variates so suppression never shifts the stream
    channel = channels[int(rng.integers(len(channels)))]
    params = sample_rotation_parameters(rng)
    return Hit(
        qubit=qubit,
        channel=channel,
        rotation=params if channel is NoiseChannel.general else None,
    )


def sample_noise_operators(model: NoiseModel, nq: int, step: int) -> List[NoiseEvent]:
    """
    Noise events for every path at one step: per path a single-hit (s=1) and a
    double-hit (s=2) event. Deterministic in (seed, step, path).
    """
    if model.is_noiseless:
        return []
    channels = [channel for channel in NoiseChannel if channel in model.channels]
    events = []
    for path in range(1, model.n_paths + 1):
        rng = _substream(model.seed, step, path)
        # draw order per path: single-hit qubit, double-hit pair, then the hits themselves
        single = int(rng.permutation(nq)[0]) + 1
        order = rng.permutation(nq)
        # one-qubit registers have no second qubit: both hits land on qubit 1
        double = (int(order[0]) + 1, int(order[1]) + 1) if nq > 1 else (1, 1)
        events.append(NoiseEvent(step=step, path=path, branch=1, hits=(_draw_hit(rng, single, channels),)))
        events.append(NoiseEvent(
            step=step,
            path=path,
            branch=2,
            hits=tuple(_draw_hit(rng, q, channels) for q in double),
        ))
    logger.debug(f"sampled {len(events)} noise events for step {step}")
    return events


def sample_run_noise(model: NoiseModel, nq: int, n_steps: int) -> Tuple[Tuple[NoiseEvent, ...], ...]:
    """Frozen event stream for a whole run, indexed by step − 1."""
    return tuple(tuple(sample_noise_operators(model, nq, step)) for step in range(1, n_steps + 1))


def hit_gate(hit: Hit) -> GateMatrix:
    if hit.channel is NoiseChannel.general:
        theta, nx, ny, nz = hit.rotation
        return rotation(theta, (nx, ny, nz))
    return pauli(_PAULI_OF[hit.channel])


def _is_silent(hit: Hit, model: NoiseModel) -> bool:
    # silence is a property of the model, never of the frozen event
    return hit.channel in model.suppressed


def _live_hits(event: NoiseEvent, model: NoiseModel) -> List[Hit]:
    return [hit for hit in event.hits if not _is_silent(hit, model)]


# --------------------------------------------------------------------------- #
# Evolution                                                                   #
# --------------------------------------------------------------------------- #
def _noisy_copy(rho: DensityMatrix, hits: Sequence[Hit]) -> np.ndarray:
    for hit in hits:
        rho = conjugate_density(hit_gate(hit), (hit.qubit,), rho)
    return rho.entries


def evolve_step(
    rho_n: DensityMatrix,
    algo: Optional[AlgorithmOp],
    events: Sequence[NoiseEvent],
    model: NoiseModel,
    executor: Optional[Executor] = None,
) -> DensityMatrix:
    """
    One step of the ensemble recurrence. Written as ρ + Σ w (ΩρΩ† − ρ), which
    equals p·ρ + Σ w ΩρΩ† because the weights sum to ε; identity events then
    contribute exactly nothing.
    """
    # (weight, hits) for every path branch that actually moves ρ
    live = []
    for event in events:
        weight = model.branch_weight(event.branch)
        hits = _live_hits(event, model)
        if weight > 0.0 and hits:
            live.append((weight, hits))

    base = rho_n.entries
    mixed = np.array(base)
    if live:
        mapper = executor.map if executor is not None else map
        noisy = list(mapper(lambda item: _noisy_copy(rho_n, item[1]), live))
        # ordered reduction: identical for any executor
        for (weight, _), matrix in zip(live, noisy):
            mixed += weight * (matrix - base)

    result = DensityMatrix(rho_n.nq, mixed)
    if algo is not None:
        result = conjugate_density(algo.gate, algo.qubits, result)
    return result.validate()


def run_multiverse(
    initial: StateVector,
    schedule: Schedule,
    model: NoiseModel,
    workers: int = 1,
    fidelity_method: FidelityMethod = FidelityMethod.exact,
    events: Optional[Sequence[Sequence[NoiseEvent]]] = None,
) -> MultiverseResult:
    """
    Evolve |initial⟩⟨initial| through the schedule, recording metrics after
    every step. Pass `events` to replay a frozen stream under another model.
    """
    initial.validate()
    nq = initial.nq
    schedule.validate(nq)
    # frozen for the whole run; a replay brings its own stream
    if events is None:
        events = sample_run_noise(model, nq, len(schedule))
    if len(events) != len(schedule):
        raise ScheduleError(f"event stream covers {len(events)} steps, schedule has {len(schedule)}")

    # fidelity is always measured against the starting state
    rho0 = densitylab.pure_density(initial)
    rho = rho0
    trace = MetricsTrace(nq=nq, initial=compute_metrics(rho0, rho0, 0, "init", fidelity_method))
    logger.info(
        f"multiverse run: nq={nq} steps={len(schedule)} paths={model.n_paths} "
        f"p={model.p:g} suppressed={sorted(c.value for c in model.suppressed)} workers={workers}"
    )

    # a single worker maps inline, no pool
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()
    with pool as executor:
        for step, item in enumerate(schedule.steps, start=1):
            algo = item if isinstance(item, AlgorithmOp) else None
            rho = evolve_step(rho, algo, events[step - 1], model, executor)
            trace.records.append(compute_metrics(rho, rho0, step, item.label, fidelity_method))

    last = trace.records[-1] if trace.records else trace.initial
    logger.info(f"run finished: fidelity={last.fidelity:.6g} purity={last.purity:.6g} entropy={last.entropy:.6g}")
    return MultiverseResult(trace=trace, final=rho, events=tuple(tuple(step) for step in events))


# --------------------------------------------------------------------------- #
# Channel suppression                                                         #
# --------------------------------------------------------------------------- #
def suppress_channel(model: NoiseModel, channel) -> NoiseModel:
    """Turn every hit on `channel` into the identity; the event stream is unchanged."""
    channel = NoiseChannel(getattr(channel, "value", channel))
    if channel not in model.channels or channel in model.suppressed:
        return model
    return model.model_copy(update={"suppressed": model.suppressed | {channel}})


def suppression_ladder(
    model: NoiseModel,
    order: Sequence[NoiseChannel] = (NoiseChannel.x, NoiseChannel.y, NoiseChannel.z, NoiseChannel.general),
) -> List[Tuple[str, NoiseModel]]:
    """[("full", model), ("no-x", …), ("no-x-y", …), …] over the enabled channels in `order`."""
    ladder = [("full", model)]
    removed: List[str] = []
    current = model
    for channel in order:
        channel = NoiseChannel(getattr(channel, "value", channel))
        if channel not in model.channels:
            continue  # disabled channels get no rung
        current = suppress_channel(current, channel)
        removed.append(channel.value)
        ladder.append(("no-" + "-".join(removed), current))
    return ladder


# --------------------------------------------------------------------------- #
# Kraus form                                                                  #
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, eq=False)
class KrausOperator:
    """coefficient · Ω_last ⋯ Ω_first, each factor a one-qubit gate on one qubit."""
    coefficient: float
    factors: Tuple[Tuple[GateMatrix, int], ...] = ()

    def conjugate(self, rho: DensityMatrix) -> DensityMatrix:
        for gate, qubit in self.factors:
            rho = conjugate_density(gate, (qubit,), rho)
        return DensityMatrix(rho.nq, self.coefficient ** 2 * rho.entries)

    def dense(self, nq: int) -> np.ndarray:
        """Full 2^nq×2^nq matrix, for small-register checks only."""
        matrix = np.eye(2 ** nq, dtype=np.complex128)
        for gate, qubit in self.factors:
            # 1 ⊗ … ⊗ Ω on qubit ⊗ … ⊗ 1, qubit 1 most significant
            full = np.kron(np.kron(np.eye(2 ** (qubit - 1)), gate.entries), np.eye(2 ** (nq - qubit)))
            matrix = full @ matrix
        return self.coefficient * matrix


def povm_decomposition(model: NoiseModel, events: Sequence[NoiseEvent]) -> List[KrausOperator]:
    """{√p·1} ∪ {√(ε·p_s/n_p)·Ω_ks}; suppressed hits are dropped from their products."""
    # ideal path first: no factors, weight p
    kraus = [KrausOperator(coefficient=math.sqrt(model.p))]
    for event in events:
        weight = model.branch_weight(event.branch)
        if weight <= 0.0:
            continue
        # an all-silent event still keeps its weight as an identity operator
        factors = tuple((hit_gate(hit), hit.qubit) for hit in _live_hits(event, model))
        kraus.append(KrausOperator(coefficient=math.sqrt(weight), factors=factors))
    return kraus


def apply_kraus(kraus: Sequence[KrausOperator], rho: DensityMatrix) -> DensityMatrix:
    total = np.zeros_like(rho.entries)
    for op in kraus:
        total = total + op.conjugate(rho).entries
    return DensityMatrix(rho.nq, total)

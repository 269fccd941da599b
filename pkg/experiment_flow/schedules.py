"""
experiment_flow/schedules.py
~~~~~~~~~~~~~~~~~~~~~~

Schedule builders for the standard experiments and for custom circuits.

• mv1: H1 | N | H1                           (one qubit, Hadamards at steps 1 and 3)
• mv2: H1 | N | CNOT12 | N | CNOT12 | N | H1  (Bell state, then inverse Bell)
• mvn: H1 | N | CNOT12 | N | CNOT13 | … | CNOT1n
• custom: "h:1; noise; cnot:1,2; cphase(1.5708):1,2; toffoli:1,2,3"

Algorithm ops are separated by `interlude` noise-only steps; a noise tail
then pads the schedule to the requested number of steps.
"""

from __future__ import annotations

import logging
import re
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import gatekit
from gatekit import GateMatrix
from models import ExperimentConfig, ExperimentKind
from multiverse import AlgorithmOp, NoiseOnly, Schedule, Step
from utils.errors import ScheduleError

logger = logging.getLogger(__name__)

_STEP_PATTERN = re.compile(r"^(?P<gate>[a-z]+)(?:\((?P<arg>[^)]*)\))?(?::(?P<qubits>[\d,\s]+))?$")

_NOISE_WORDS = {"noise", "n"}

_GATE_FACTORIES: Dict[str, Callable[..., GateMatrix]] = {
    "h": gatekit.hadamard,
    "i": lambda: gatekit.pauli(0),
    "x": lambda: gatekit.pauli(1),
    "y": lambda: gatekit.pauli(2),
    "z": lambda: gatekit.pauli(3),
    "cnot": gatekit.cnot,
    "cphase": gatekit.controlled_phase,
    "toffoli": gatekit.toffoli,
}


def interleave(ops: Sequence[AlgorithmOp], interlude: int) -> List[Step]:
    steps: List[Step] = []
    for index, op in enumerate(ops):
        if index:
            steps.extend(NoiseOnly() for _ in range(interlude))
        steps.append(op)
    return steps


def pad_with_noise(steps: Sequence[Step], total: Optional[int]) -> Schedule:
    steps = list(steps)
    if total is not None:
        if total < len(steps):
            raise ScheduleError(f"{total} steps is shorter than the {len(steps)}-step algorithm")
        steps.extend(NoiseOnly() for _ in range(total - len(steps)))
    return Schedule(tuple(steps))


def storage_schedule(steps: int) -> Schedule:
    return Schedule(tuple(NoiseOnly() for _ in range(steps)))


def mv1_schedule(steps: Optional[int] = None, interlude: int = 1) -> Schedule:
    h = gatekit.hadamard()
    return pad_with_noise(interleave([AlgorithmOp(h, (1,)), AlgorithmOp(h, (1,))], interlude), steps)


def mv2_schedule(steps: Optional[int] = None, interlude: int = 1) -> Schedule:
    h, cx = gatekit.hadamard(), gatekit.cnot()
    ops = [AlgorithmOp(h, (1,)), AlgorithmOp(cx, (1, 2)), AlgorithmOp(cx, (1, 2)), AlgorithmOp(h, (1,))]
    return pad_with_noise(interleave(ops, interlude), steps)


def mvn_schedule(nq: int, steps: Optional[int] = None, interlude: int = 1) -> Schedule:
    if nq < 2:
        raise ScheduleError("the Hadamard + CNOT chain needs at least two qubits")
    cx = gatekit.cnot()
    ops = [AlgorithmOp(gatekit.hadamard(), (1,))] + [AlgorithmOp(cx, (1, k)) for k in range(2, nq + 1)]
    return pad_with_noise(interleave(ops, interlude), steps)


def parse_circuit(text: str) -> Tuple[List[Step], int]:
    """Parse a custom circuit; returns the steps and the highest qubit referenced."""
    steps: List[Step] = []
    highest = 1
    for raw in text.split(";"):
        token = raw.strip().lower()
        if not token:
            continue
        if token in _NOISE_WORDS:
            steps.append(NoiseOnly())
            continue
        match = _STEP_PATTERN.match(token)
        if match is None or match["gate"] not in _GATE_FACTORIES:
            raise ScheduleError(f"cannot parse circuit step {raw.strip()!r}")
        factory = _GATE_FACTORIES[match["gate"]]
        try:
            gate = factory(float(match["arg"])) if match["arg"] else factory()
        except (TypeError, ValueError) as e:
            raise ScheduleError(f"bad argument in circuit step {raw.strip()!r}: {e}") from e
        if not match["qubits"]:
            raise ScheduleError(f"circuit step {raw.strip()!r} names no qubits")
        qubits = tuple(int(q) for q in match["qubits"].replace(" ", "").split(",") if q)
        steps.append(AlgorithmOp(gate, qubits))
        highest = max(highest, *qubits)
    return steps, highest


def build_schedule(config: ExperimentConfig) -> Tuple[int, Schedule]:
    """(nq, schedule) for an experiment configuration."""
    kind = config.experiment
    if kind is ExperimentKind.mv1:
        return 1, mv1_schedule(config.total_steps, config.interlude)
    if kind is ExperimentKind.mv2:
        return 2, mv2_schedule(config.total_steps, config.interlude)
    if kind is ExperimentKind.mvn:
        nq = config.qubit_count
        return nq, mvn_schedule(nq, config.total_steps, config.interlude)

    steps, highest = parse_circuit(config.circuit or "")
    nq = config.nq or highest
    # without an explicit length the default tail never truncates a long circuit
    total = config.steps if config.steps is not None else max(len(steps), config.total_steps)
    schedule = pad_with_noise(steps, total).validate(nq)
    logger.debug(f"custom circuit: {len(schedule)} steps on {nq} qubit(s)")
    return nq, schedule

"""
eccodes.py
~~~~~~~~~~~~~~~~~~~~~~

Three-qubit repetition codes run as explicit circuits on state vectors.

• Bit-flip code: α|0⟩+β|1⟩ → α|000⟩+β|111⟩ (CNOT 1→2, CNOT 1→3).
• Syndrome: ancillas on qubits 4 and 5 collect the parities Z₁Z₂ and Z₂Z₃,
  are measured, the implicated code qubit gets σ_x, then the ancillas are
  projected away.
• Phase-flip code: the same circuits conjugated by Hadamards on qubits 1–3,
  so a σ_z error is corrected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from gatekit import cnot, hadamard, op1, op2, pauli
from models import NoiseChannel
from qstate import StateVector, basis_state, discard_qubits, measure_qubit, tensor_product
from utils.constants import DEFINITE_TOL, NORM_TOL
from utils.errors import DimensionError, UncorrectableError

logger = logging.getLogger(__name__)

# (ancilla 4, ancilla 5) -> struck code qubit
SYNDROME_TABLE = {(0, 0): None, (1, 0): 1, (1, 1): 2, (0, 1): 3}

CODE_QUBITS = (1, 2, 3)
ANCILLAS = (4, 5)


@dataclass(frozen=True)
class Syndrome:
    bits: Tuple[int, int]
    # Born probability of each ancilla outcome; 1.0 when the error is definite
    probabilities: Tuple[float, float] = field(default=(1.0, 1.0), compare=False)

    @property
    def is_definite(self) -> bool:
        return all(abs(p - 1.0) <= DEFINITE_TOL for p in self.probabilities)

    @property
    def struck_qubit(self) -> Optional[int]:
        return SYNDROME_TABLE[self.bits]


@dataclass(frozen=True, eq=False)
class CorrectionResult:
    state: StateVector
    syndrome: Syndrome

    @property
    def corrected_qubit(self) -> Optional[int]:
        return self.syndrome.struck_qubit


def _require(psi: StateVector, nq: int) -> None:
    if psi.nq != nq:
        raise DimensionError(f"expected a {nq}-qubit state, got nq={psi.nq}")
    psi.validate()


def _hadamard_code(psi: StateVector) -> StateVector:
    h = hadamard()
    for qubit in CODE_QUBITS:
        psi = op1(h, qubit, psi)
    return psi


def logical_fidelity(a: StateVector, b: StateVector) -> float:
    """|⟨a|b⟩|, blind to global phase."""
    return float(abs(np.vdot(a.amps, b.amps)))


def apply_error(psi: StateVector, channel, qubit: int) -> StateVector:
    """Apply σ_x / σ_y / σ_z to one qubit (test and demo helper)."""
    channel = NoiseChannel(getattr(channel, "value", channel))
    component = {NoiseChannel.x: 1, NoiseChannel.y: 2, NoiseChannel.z: 3}[channel]
    return op1(pauli(component), qubit, psi)


# ----- Bit-flip code --------------------------------------------------------
def encode_bitflip(psi: StateVector) -> StateVector:
    _require(psi, 1)
    state = tensor_product(psi, basis_state(2, 0))
    state = op2(cnot(), 1, 2, state)
    return op2(cnot(), 1, 3, state)


def decode_bitflip(psi: StateVector) -> StateVector:
    _require(psi, 3)
    state = op2(cnot(), 1, 3, psi)
    state = op2(cnot(), 1, 2, state)
    return discard_qubits(state, (2, 3))


def _in_code_space(psi: StateVector) -> bool:
    weight = abs(psi.amps[0]) ** 2 + abs(psi.amps[7]) ** 2
    return abs(weight - 1.0) <= NORM_TOL


def syndrome_and_correct_bitflip(psi: StateVector, rng: np.random.Generator) -> CorrectionResult:
    _require(psi, 3)
    gate = cnot()
    state = tensor_product(psi, basis_state(2, 0))
    state = op2(gate, 1, 4, state)
    state = op2(gate, 2, 4, state)
    state = op2(gate, 2, 5, state)
    state = op2(gate, 3, 5, state)

    bits, probs = [], []
    for ancilla in ANCILLAS:
        outcome = measure_qubit(state, ancilla, rng)
        state = outcome.collapsed
        bits.append(outcome.bit)
        probs.append(outcome.probability)
    syndrome = Syndrome(bits=(bits[0], bits[1]), probabilities=(probs[0], probs[1]))
    if not syndrome.is_definite:
        logger.warning(f"ancilla outcomes were not definite: p={syndrome.probabilities}")

    struck = syndrome.struck_qubit
    if struck is not None:
        state = op1(pauli(1), struck, state)
    corrected = discard_qubits(state, ANCILLAS)
    if not _in_code_space(corrected):
        raise UncorrectableError(f"state left the code space after syndrome {syndrome.bits}")
    logger.debug(f"bit-flip syndrome {syndrome.bits} -> corrected qubit {struck}")
    return CorrectionResult(state=corrected, syndrome=syndrome)


# ----- Phase-flip code ------------------------------------------------------
def encode_phaseflip(psi: StateVector) -> StateVector:
    return _hadamard_code(encode_bitflip(psi))


def decode_phaseflip(psi: StateVector) -> StateVector:
    _require(psi, 3)
    return decode_bitflip(_hadamard_code(psi))


def syndrome_and_correct_phaseflip(psi: StateVector, rng: np.random.Generator) -> CorrectionResult:
    _require(psi, 3)
    result = syndrome_and_correct_bitflip(_hadamard_code(psi), rng)
    return CorrectionResult(state=_hadamard_code(result.state), syndrome=result.syndrome)

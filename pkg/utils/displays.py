"""
utils/displays.py
~~~~~~~~~~~~~~~~~~~~~~

Text renderings of states and schedules.

• `dirac_form`      – Σ C_n|bits⟩ with 5 significant digits
• `amplitude_table` – index, label, magnitude, phase per nonzero amplitude
• `ascii_circuit`   – one wire per qubit, time left to right
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

import numpy as np

from multiverse import AlgorithmOp, Schedule
from qstate import StateVector, decimal_to_bits

_TERM = re.compile(r"\s*([+-]?)\s*(\([^)]*\)|[0-9.]+(?:e[+-]?\d+)?i?)\|([01]+)⟩")


# ----- Dirac form -----------------------------------------------------------
def _format_amplitude(c: complex, tolerance: float) -> str:
    if abs(c.imag) < tolerance:
        return f"{c.real:#.5g}"
    if abs(c.real) < tolerance:
        return f"{c.imag:#.5g}i"
    return f"({c.real:#.5g}{c.imag:+#.5g}i)"


def dirac_form(psi: StateVector, tolerance: float = 1e-10) -> str:
    terms = []
    for n, c in enumerate(psi.amps):
        if abs(c) < tolerance:
            continue
        text = f"{_format_amplitude(complex(c), tolerance)}|{decimal_to_bits(n, psi.nq)}⟩"
        if not terms:
            terms.append(text)
        elif text.startswith("-"):
            terms.append(f" - {text[1:]}")
        else:
            terms.append(f" + {text}")
    return "".join(terms) if terms else "0"


def parse_dirac_form(text: str) -> Dict[int, complex]:
    """Decimal index -> amplitude, read back from `dirac_form` output."""
    result: Dict[int, complex] = {}
    for sign, value, bits in _TERM.findall(text):
        if value.startswith("("):
            amplitude = complex(value[1:-1].replace("i", "j"))
        elif value.endswith("i"):
            amplitude = complex(0.0, float(value[:-1]))
        else:
            amplitude = complex(float(value), 0.0)
        result[int(bits, 2)] = -amplitude if sign == "-" else amplitude
    return result


# ----- Amplitudes -----------------------------------------------------------
def amplitude_rows(psi: StateVector, tolerance: float = 1e-10) -> List[Tuple[int, str, float, float]]:
    """(index, bit label, magnitude, phase in (−π, π]) for each nonzero amplitude."""
    rows = []
    for n, c in enumerate(psi.amps):
        magnitude = float(abs(c))
        if magnitude < tolerance:
            continue
        phase = float(np.angle(c))
        if phase <= -np.pi:
            phase = float(np.pi)
        rows.append((n, str(decimal_to_bits(n, psi.nq)), magnitude, phase))
    return rows


def amplitude_table(psi: StateVector, tolerance: float = 1e-10) -> str:
    width = max(5, psi.nq)
    lines = [f"{'index':>6}  {'label':>{width}}  {'magnitude':>10}  {'phase':>10}"]
    for n, label, magnitude, phase in amplitude_rows(psi, tolerance):
        lines.append(f"{n:>6}  {label:>{width}}  {magnitude:>10.6g}  {phase:>10.6g}")
    return "\n".join(lines)


# ----- Circuits -------------------------------------------------------------
def _symbols(op: AlgorithmOp) -> Dict[int, str]:
    name = op.gate.name
    if name == "CNOT":
        return {op.qubits[0]: "●", op.qubits[1]: "⊕"}
    if name == "TOFFOLI":
        return {op.qubits[0]: "●", op.qubits[1]: "●", op.qubits[2]: "⊕"}
    if name == "CPHASE":
        return {op.qubits[0]: "●", op.qubits[1]: "P"}
    mark = name if len(name) == 1 else "U"
    return {q: mark for q in op.qubits}


def ascii_circuit(schedule: Schedule, nq: int) -> str:
    width = len(f"q{nq}")
    wires = {q: [f"{f'q{q}':<{width}}: ─"] for q in range(1, nq + 1)}
    for step in schedule.steps:
        marks = _symbols(step) if isinstance(step, AlgorithmOp) else {q: "N" for q in wires}
        for q, cells in wires.items():
            cells.append(f"{marks.get(q, '─')}──")
    return "\n".join("".join(cells) for cells in wires.values())

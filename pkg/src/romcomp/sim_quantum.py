"""Exact single-qubit semantics: per-assignment unitaries and readout.

Rotation gates use the closed forms Z^t = diag(1, e^(i*pi*t)) and
X^t = H Z^t H, so X and Z themselves come out exact and half-integer powers
match their textbook matrices to machine precision.

Readout is projective: the final state must sit on a computational basis
state up to a scalar phase, because a per-assignment global phase carries no
information when the conditioning bits are classical.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .boolfunc import TruthTable
from .program import (
    QUANTUM,
    DyadicExponent,
    DyadicGate,
    Gate,
    KindMismatchError,
    RomProgram,
    UnitaryGate,
)

# |amplitude|^2 above this counts as a definite basis-state outcome.
OUTCOME_THRESHOLD = 1e-9


class NonClassicalOutput(Exception):
    """The program left the qubit in superposition for some assignment."""

    def __init__(self, assignment: int, amplitudes: tuple[complex, complex]) -> None:
        p0 = abs(amplitudes[0]) ** 2
        super().__init__(
            f"assignment {assignment}: output is not a basis state "
            f"(|amp0|^2 = {p0:.6f})"
        )
        self.assignment = assignment
        self.amplitudes = amplitudes


@dataclass(frozen=True, slots=True)
class Unitary2:
    """A 2x2 complex matrix [[a, b], [c, d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "Unitary2":
        return cls(1.0, 0.0, 0.0, 1.0)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjoint(self) -> "Unitary2":
        return Unitary2(
            self.a.conjugate(), self.c.conjugate(),
            self.b.conjugate(), self.d.conjugate(),
        )

    def apply(self, amp0: complex, amp1: complex) -> tuple[complex, complex]:
        return (self.a * amp0 + self.b * amp1, self.c * amp0 + self.d * amp1)

    def max_entry_distance(self, other: "Unitary2") -> float:
        return max(
            abs(self.a - other.a), abs(self.b - other.b),
            abs(self.c - other.c), abs(self.d - other.d),
        )

    def unitarity_residual(self) -> float:
        return (self @ self.adjoint()).max_entry_distance(Unitary2.identity())

    def scaled(self, factor: complex) -> "Unitary2":
        return Unitary2(factor * self.a, factor * self.b, factor * self.c, factor * self.d)


def gate_matrix(axis: str, exponent: DyadicExponent) -> Unitary2:
    """Matrix of X**t or Z**t for dyadic t."""
    phase = cmath.exp(1j * cmath.pi * exponent.value)
    if axis == "Z":
        return Unitary2(1.0, 0.0, 0.0, phase)
    if axis == "X":
        # H diag(1, phase) H, written out.
        p = (1 + phase) / 2
        m = (1 - phase) / 2
        return Unitary2(p, m, m, p)
    raise ValueError(f"axis must be X or Z, got {axis!r}")


def matrix_of_gate(gate: Gate) -> Unitary2:
    if isinstance(gate, DyadicGate):
        return gate_matrix(gate.axis, gate.exponent)
    if isinstance(gate, UnitaryGate):
        a, b, c, d = gate.entries
        return Unitary2(a, b, c, d)
    raise KindMismatchError("classical gate has no matrix")


def _require_quantum(program: RomProgram) -> None:
    if program.space.kind != QUANTUM:
        raise KindMismatchError("expected a quantum program")


def unitary_of(program: RomProgram, assignment: int) -> Unitary2:
    """Product of the active gates; later instructions multiply on the left."""
    _require_quantum(program)
    if not 0 <= assignment < program.space.num_assignments:
        raise ValueError(f"assignment {assignment} out of range")
    result = Unitary2.identity()
    for inst in program.instructions:
        if inst.control is None or assignment >> (inst.control - 1) & 1:
            result = matrix_of_gate(inst.gate) @ result
    return result


def extract_boolean(program: RomProgram) -> TruthTable:
    """The boolean function read out from |0> over every assignment.

    Raises NonClassicalOutput if any assignment ends away from the basis.
    """
    _require_quantum(program)
    steps = [
        (0 if inst.control is None else 1 << (inst.control - 1), matrix_of_gate(inst.gate))
        for inst in program.instructions
    ]
    packed = 0
    for assignment in range(program.space.num_assignments):
        amp0, amp1 = complex(1.0), complex(0.0)
        for mask, mat in steps:
            if not mask or assignment & mask:
                amp0, amp1 = (mat.a * amp0 + mat.b * amp1, mat.c * amp0 + mat.d * amp1)
        p1 = amp1.real * amp1.real + amp1.imag * amp1.imag
        if p1 >= 1.0 - OUTCOME_THRESHOLD:
            packed |= 1 << assignment
        elif p1 > OUTCOME_THRESHOLD:
            raise NonClassicalOutput(assignment, (amp0, amp1))
    return TruthTable.from_int(program.space.num_rom_bits, packed)

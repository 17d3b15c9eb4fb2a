"""Machine-neutral IR for ROM-conditioned reversible gate programs.

A program acts on a small writable register (1-3 bits or one qubit) and may
condition each gate on the value of exactly one read-only input bit (a "ROM
bit").  ROM bits are never written: the instruction set simply has no way to
target them.  Instructions are stored first-applied-first.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

CLASSICAL = "classical"
QUANTUM = "quantum"

# Max entrywise deviation of U*U^dagger from the identity tolerated for raw
# unitary gates.
UNITARITY_TOL = 1e-12


class ProgramError(ValueError):
    """A program or one of its parts failed validation."""


class KindMismatchError(ProgramError):
    """A classical program was given to a quantum routine or vice versa."""


@dataclass(frozen=True, slots=True)
class RomSpace:
    """Shape of a program: ROM width, writable width, machine kind."""

    num_rom_bits: int
    num_writable: int
    kind: str

    def __post_init__(self) -> None:
        if self.num_rom_bits < 1:
            raise ProgramError(f"need at least one ROM bit, got {self.num_rom_bits}")
        if self.num_writable not in (1, 2, 3):
            raise ProgramError(f"writable width must be 1, 2 or 3, got {self.num_writable}")
        if self.kind not in (CLASSICAL, QUANTUM):
            raise ProgramError(f"unknown machine kind {self.kind!r}")
        if self.kind == QUANTUM and self.num_writable != 1:
            raise ProgramError("the quantum backend has exactly one writable qubit")

    @property
    def num_states(self) -> int:
        return 1 << self.num_writable

    @property
    def num_assignments(self) -> int:
        return 1 << self.num_rom_bits


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection on {0, ..., S-1}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ProgramError(f"not a permutation of 0..{n - 1}: {self.images}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @classmethod
    def from_cycles(cls, size: int, cycles: tuple[tuple[int, ...], ...]) -> "Permutation":
        """Build from disjoint cycles; unlisted states are fixed."""
        images = list(range(size))
        for cycle in cycles:
            for pos, state in enumerate(cycle):
                images[state] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def apply(self, state: int) -> int:
        return self.images[state]

    def then(self, other: "Permutation") -> "Permutation":
        """Composition in application order: self first, then other."""
        return Permutation(tuple(other.images[s] for s in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for src, dst in enumerate(self.images):
            inv[dst] = src
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(dst == src for src, dst in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its smallest element."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(cycle))
        return tuple(out)


@dataclass(frozen=True, slots=True)
class DyadicExponent:
    """A rotation exponent t = num / 2**log2den, kept in lowest terms, |t| <= 2."""

    num: int
    log2den: int = 0

    def __post_init__(self) -> None:
        if self.log2den < 0:
            raise ProgramError("log2den must be non-negative")
        num, log2den = self.num, self.log2den
        while log2den > 0 and num % 2 == 0:
            num //= 2
            log2den -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2den", log2den)
        if abs(num) > (2 << log2den):
            raise ProgramError(f"|{num}/2^{log2den}| exceeds 2")

    @property
    def value(self) -> float:
        # Dyadic rationals of this size are exact in double precision.
        return self.num / (1 << self.log2den)

    def __neg__(self) -> "DyadicExponent":
        return DyadicExponent(-self.num, self.log2den)

    def __add__(self, other: "DyadicExponent") -> "DyadicExponent":
        k = max(self.log2den, other.log2den)
        num = (self.num << (k - self.log2den)) + (other.num << (k - other.log2den))
        return DyadicExponent(num, k)

    def halved(self) -> "DyadicExponent":
        return DyadicExponent(self.num, self.log2den + 1)

    def __str__(self) -> str:
        if self.log2den == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.log2den}"


AXIS_X = "X"
AXIS_Z = "Z"


@dataclass(frozen=True, slots=True)
class PermutationGate:
    """A classical reversible gate: a permutation of the writable states."""

    perm: Permutation

    def inverse(self) -> "PermutationGate":
        return PermutationGate(self.perm.inverse())


@dataclass(frozen=True, slots=True)
class DyadicGate:
    """A single-qubit rotation X**t or Z**t with dyadic exponent t."""

    axis: str
    exponent: DyadicExponent

    def __post_init__(self) -> None:
        if self.axis not in (AXIS_X, AXIS_Z):
            raise ProgramError(f"axis must be X or Z, got {self.axis!r}")

    def inverse(self) -> "DyadicGate":
        return DyadicGate(self.axis, -self.exponent)


@dataclass(frozen=True, slots=True)
class UnitaryGate:
    """An arbitrary single-qubit gate, four row-major complex entries."""

    entries: tuple[complex, complex, complex, complex]

    def __post_init__(self) -> None:
        a, b, c, d = self.entries
        # Entrywise residual of U*U^dagger against the identity.
        residual = max(
            abs(a * a.conjugate() + b * b.conjugate() - 1),
            abs(a * c.conjugate() + b * d.conjugate()),
            abs(c * a.conjugate() + d * b.conjugate()),
            abs(c * c.conjugate() + d * d.conjugate() - 1),
        )
        if residual > UNITARITY_TOL:
            raise ProgramError(f"matrix is not unitary (residual {residual:.3e})")

    def inverse(self) -> "UnitaryGate":
        a, b, c, d = self.entries
        return UnitaryGate(
            (a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate())
        )


Gate = PermutationGate | DyadicGate | UnitaryGate


@dataclass(frozen=True, slots=True)
class Instruction:
    """One gate, optionally conditioned on a single ROM bit (1-based index)."""

    gate: Gate
    control: int | None = None

    def __post_init__(self) -> None:
        if self.control is not None and self.control < 1:
            raise ProgramError(f"ROM indices are 1-based, got control {self.control}")

    def inverse(self) -> "Instruction":
        return Instruction(self.gate.inverse(), self.control)


@dataclass(frozen=True, slots=True)
class RomProgram:
    """A time-ordered instruction sequence over a fixed RomSpace."""

    space: RomSpace
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        for pos, inst in enumerate(self.instructions):
            if isinstance(inst.gate, PermutationGate):
                if self.space.kind != CLASSICAL:
                    raise KindMismatchError(f"classical gate at {pos} in a quantum program")
                if inst.gate.perm.size != self.space.num_states:
                    raise ProgramError(
                        f"gate at {pos} acts on {inst.gate.perm.size} states, "
                        f"space has {self.space.num_states}"
                    )
            else:
                if self.space.kind != QUANTUM:
                    raise KindMismatchError(f"quantum gate at {pos} in a classical program")
            if inst.control is not None and inst.control > self.space.num_rom_bits:
                raise ProgramError(
                    f"control u_{inst.control} at {pos} exceeds {self.space.num_rom_bits} ROM bits"
                )

    def __len__(self) -> int:
        return len(self.instructions)


def rom_call_count(program: RomProgram) -> int:
    """Number of controlled instructions; uncontrolled gates are free."""
    return sum(1 for inst in program.instructions if inst.control is not None)


def concat(a: RomProgram, b: RomProgram) -> RomProgram:
    if a.space != b.space:
        raise ProgramError(f"cannot concatenate programs over {a.space} and {b.space}")
    return RomProgram(a.space, a.instructions + b.instructions)


def inverse(program: RomProgram) -> RomProgram:
    """Reversed instruction order with every gate inverted."""
    return RomProgram(
        program.space,
        tuple(inst.inverse() for inst in reversed(program.instructions)),
    )


def assignment_bit(assignment: int, index: int) -> int:
    """Value of ROM bit u_index (1-based) in an assignment mask."""
    return (assignment >> (index - 1)) & 1


def assignment_bits(assignment: int, num_rom_bits: int) -> tuple[int, ...]:
    """An assignment mask unpacked as (u_1, ..., u_j)."""
    return tuple((assignment >> i) & 1 for i in range(num_rom_bits))

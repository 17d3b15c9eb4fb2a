"""Classical compilers: two-bit register machines and width-5 branching programs.

The two-bit constructions use four gates: a NOT on either register and a
CNOT between the registers, each conditioned on one ROM bit.  A product of
ROM bits is accumulated by a doubling recursion that alternates which
register holds the partial product; steering the base case picks where the
result lands.

The three-bit construction goes through Barrington's theorem: a depth-d
AND/OR/NOT circuit becomes a width-5 permutation branching program of length
at most 4^d that walks the workspace through the identity (circuit false) or
a chosen 5-cycle (circuit true).  Flipping the first writable bit is the
state permutation (0 1)(2 3)(4 5)(6 7), which factors into four 5-cycles;
running the branching program once per factor, embedded into the 8 states,
flips the bit exactly when the circuit accepts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .boolfunc import Anf, ParseError, TruthTable
from .program import (
    CLASSICAL,
    Instruction,
    Permutation,
    PermutationGate,
    RomProgram,
    RomSpace,
)

# Two-register gate tables; register 1 is the low state bit.
NOT_REG1 = Permutation((1, 0, 3, 2))
NOT_REG2 = Permutation((2, 3, 0, 1))
CNOT_INTO_REG1 = Permutation((0, 1, 3, 2))
CNOT_INTO_REG2 = Permutation((0, 3, 2, 1))


def not_gate(register: int, rom_bit: int | None) -> Instruction:
    """NOT on one register, optionally conditioned on a ROM bit."""
    if register not in (1, 2):
        raise ValueError(f"register must be 1 or 2, got {register}")
    return Instruction(
        PermutationGate(NOT_REG1 if register == 1 else NOT_REG2), rom_bit
    )


def cnot_gate(target: int, rom_bit: int | None) -> Instruction:
    """XOR the other register into ``target``, conditioned on a ROM bit."""
    if target not in (1, 2):
        raise ValueError(f"target must be 1 or 2, got {target}")
    return Instruction(
        PermutationGate(CNOT_INTO_REG1 if target == 1 else CNOT_INTO_REG2), rom_bit
    )


def _monomial_block(variables: list[int], target: int) -> list[Instruction]:
    """Operator-ordered gates XOR-ing the product of ``variables`` into
    register ``target`` while restoring the other register."""
    if len(variables) == 1:
        return [not_gate(target, variables[0])]
    other = 3 - target
    inner = _monomial_block(variables[:-1], other)
    bracket = cnot_gate(target, variables[-1])
    return [bracket] + inner + [bracket] + inner


def monomial_into_register(variables: list[int], target: int, num_rom_bits: int) -> RomProgram:
    """Two-bit program computing one conjunction into a chosen register."""
    if target not in (1, 2):
        raise ValueError(f"target register must be 1 or 2, got {target}")
    if len(set(variables)) != len(variables):
        raise ValueError(f"duplicate variables in {variables}")
    for v in variables:
        if not 1 <= v <= num_rom_bits:
            raise ValueError(f"variable u_{v} out of range for {num_rom_bits} ROM bits")
    space = RomSpace(num_rom_bits, 2, CLASSICAL)
    if not variables:
        return RomProgram(space, (not_gate(target, None),))
    ops = _monomial_block(list(variables), target)
    return RomProgram(space, tuple(reversed(ops)))


def and_sequence(m: int, num_rom_bits: int) -> tuple[RomProgram, int]:
    """Program XOR-ing u_1 u_2 ... u_m into one register, and that register.

    The result register alternates with m: odd m lands in register 1, even m
    in register 2, with the other register restored on every start state.
    """
    if not 1 <= m <= num_rom_bits:
        raise ValueError(f"m must be in 1..{num_rom_bits}, got {m}")
    result_register = 1 if m % 2 else 2
    program = monomial_into_register(list(range(1, m + 1)), result_register, num_rom_bits)
    return program, result_register


def compile_pair(f1: Anf, f2: Anf, num_rom_bits: int) -> RomProgram:
    """Two-bit program computing (f1, f2) into registers (1, 2)."""
    if f1.num_vars != num_rom_bits or f2.num_vars != num_rom_bits:
        raise ValueError("component arities must match num_rom_bits")
    space = RomSpace(num_rom_bits, 2, CLASSICAL)
    instructions: list[Instruction] = []
    for anf, register in ((f1, 1), (f2, 2)):
        for mask in sorted(anf.monomials):
            vars_ = [v + 1 for v in range(num_rom_bits) if mask >> v & 1]
            instructions.extend(
                monomial_into_register(vars_, register, num_rom_bits).instructions
            )
    return RomProgram(space, tuple(instructions))


# ---------------------------------------------------------------------------
# Boolean circuits and Barrington's construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class InputNode:
    index: int


@dataclass(frozen=True, slots=True)
class NotNode:
    child: "CircuitNode"


@dataclass(frozen=True, slots=True)
class AndNode:
    left: "CircuitNode"
    right: "CircuitNode"


@dataclass(frozen=True, slots=True)
class OrNode:
    left: "CircuitNode"
    right: "CircuitNode"


CircuitNode = InputNode | NotNode | AndNode | OrNode


def circuit_depth(node: CircuitNode) -> int:
    """Longest path to an input, counting AND/OR nodes only."""
    if isinstance(node, InputNode):
        return 0
    if isinstance(node, NotNode):
        return circuit_depth(node.child)
    return 1 + max(circuit_depth(node.left), circuit_depth(node.right))


def circuit_inputs(node: CircuitNode) -> set[int]:
    if isinstance(node, InputNode):
        return {node.index}
    if isinstance(node, NotNode):
        return circuit_inputs(node.child)
    return circuit_inputs(node.left) | circuit_inputs(node.right)


def eval_circuit(node: CircuitNode, assignment: int) -> int:
    if isinstance(node, InputNode):
        return assignment >> (node.index - 1) & 1
    if isinstance(node, NotNode):
        return 1 - eval_circuit(node.child, assignment)
    if isinstance(node, AndNode):
        return eval_circuit(node.left, assignment) & eval_circuit(node.right, assignment)
    return eval_circuit(node.left, assignment) | eval_circuit(node.right, assignment)


def balanced_and_circuit(num_inputs: int) -> CircuitNode:
    """AND of x1..xn as a balanced tree of depth ceil(log2 n)."""
    if num_inputs < 1:
        raise ValueError("need at least one input")

    def build(lo: int, hi: int) -> CircuitNode:
        if hi - lo == 1:
            return InputNode(lo)
        mid = (lo + hi + 1) // 2
        return AndNode(build(lo, mid), build(mid, hi))

    return build(1, num_inputs + 1)


def parse_circuit(text: str) -> CircuitNode:
    """Parse prefix form like ``(and (or x1 x2) (not x3))``."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    for raw in text.replace("(", " ( ").replace(")", " ) ").split():
        found = text.find(raw if raw not in "()" else raw, pos)
        tokens.append((raw, found if found >= 0 else pos))
        pos = (found if found >= 0 else pos) + len(raw)
    cursor = 0

    def parse() -> CircuitNode:
        nonlocal cursor
        if cursor >= len(tokens):
            raise ParseError("unexpected end of circuit", len(text))
        token, at = tokens[cursor]
        cursor += 1
        if token == "(":
            if cursor >= len(tokens):
                raise ParseError("unexpected end of circuit", len(text))
            op, op_at = tokens[cursor]
            cursor += 1
            if op == "not":
                node: CircuitNode = NotNode(parse())
            elif op in ("and", "or"):
                left, right = parse(), parse()
                node = AndNode(left, right) if op == "and" else OrNode(left, right)
            else:
                raise ParseError(f"expected and/or/not, got {op!r}", op_at)
            if cursor >= len(tokens) or tokens[cursor][0] != ")":
                raise ParseError("expected ')'", tokens[cursor - 1][1])
            cursor += 1
            return node
        if token == ")":
            raise ParseError("unexpected ')'", at)
        if token.startswith("x") and token[1:].isdigit() and int(token[1:]) >= 1:
            return InputNode(int(token[1:]))
        raise ParseError(f"expected a variable like x1, got {token!r}", at)

    node = parse()
    if cursor != len(tokens):
        raise ParseError("trailing input after circuit", tokens[cursor][1])
    return node


def anf_to_circuit(anf: Anf) -> CircuitNode:
    """Rewrite an XOR-of-AND form over the AND/OR/NOT basis.

    XOR is expanded as a(!b) + (!a)b over a balanced tree, so depth grows by
    a constant factor per XOR level; fine at CLI scale.
    """
    x1 = InputNode(1)
    if not anf.monomials:
        return AndNode(x1, NotNode(x1))

    def xor(a: CircuitNode, b: CircuitNode) -> CircuitNode:
        return OrNode(AndNode(a, NotNode(b)), AndNode(NotNode(a), b))

    def tree(nodes: list[CircuitNode]) -> CircuitNode:
        if len(nodes) == 1:
            return nodes[0]
        mid = (len(nodes) + 1) // 2
        return xor(tree(nodes[:mid]), tree(nodes[mid:]))

    terms: list[CircuitNode] = []
    for mask in sorted(anf.monomials):
        if mask == 0:
            terms.append(OrNode(x1, NotNode(x1)))
            continue
        vars_ = [InputNode(v + 1) for v in range(anf.num_vars) if mask >> v & 1]

        def and_tree(nodes: list[CircuitNode]) -> CircuitNode:
            if len(nodes) == 1:
                return nodes[0]
            mid = (len(nodes) + 1) // 2
            return AndNode(and_tree(nodes[:mid]), and_tree(nodes[mid:]))

        terms.append(and_tree(vars_))
    return tree(terms)


@dataclass(frozen=True, slots=True)
class BranchingProgram:
    """Width-k permutation branching program: each step applies one of two
    permutations of the workspace depending on one ROM bit."""

    steps: tuple[tuple[int, Permutation, Permutation], ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def evaluate(self, assignment: int, width: int = 5) -> Permutation:
        result = Permutation.identity(width)
        for bit, if0, if1 in self.steps:
            result = result.then(if1 if assignment >> (bit - 1) & 1 else if0)
        return result


def _is_five_cycle(perm: Permutation) -> bool:
    cycles = perm.cycles()
    return perm.size == 5 and len(cycles) == 1 and len(cycles[0]) == 5


@lru_cache(maxsize=None)
def _commutator_pair(target: Permutation) -> tuple[Permutation, Permutation]:
    """Lexicographically first 5-cycles (s, t) with t' s' t s = target,
    composing in application order (s first)."""
    five_cycles = [
        p for p in map(Permutation, itertools.permutations(range(5))) if _is_five_cycle(p)
    ]
    for sigma in five_cycles:
        for tau in five_cycles:
            comm = sigma.then(tau).then(sigma.inverse()).then(tau.inverse())
            if comm == target:
                return sigma, tau
    raise ValueError(f"no 5-cycle commutator decomposition for {target}")


def barrington(circuit: CircuitNode, rho: Permutation) -> BranchingProgram:
    """Branching program of length <= 4^depth that applies ``rho`` exactly
    when the circuit accepts and fixes every state otherwise.

    AND compiles to a commutator of recursively computed 5-cycles; NOT folds
    a fixup permutation into the final step (costing no length); OR goes
    through De Morgan.
    """
    if not _is_five_cycle(rho):
        raise ValueError("rho must be a 5-cycle")

    def rec(node: CircuitNode, target: Permutation) -> list[tuple[int, Permutation, Permutation]]:
        if isinstance(node, InputNode):
            return [(node.index, Permutation.identity(5), target)]
        if isinstance(node, NotNode):
            steps = rec(node.child, target.inverse())
            bit, if0, if1 = steps[-1]
            steps[-1] = (bit, if0.then(target), if1.then(target))
            return steps
        if isinstance(node, OrNode):
            rewritten = NotNode(AndNode(NotNode(node.left), NotNode(node.right)))
            return rec(rewritten, target)
        sigma, tau = _commutator_pair(target)
        return (
            rec(node.left, sigma)
            + rec(node.right, tau)
            + rec(node.left, sigma.inverse())
            + rec(node.right, tau.inverse())
        )

    return BranchingProgram(tuple(rec(circuit, rho)))


# Flipping writable bit 1 of three is the state permutation
# (0 1)(2 3)(4 5)(6 7); these four 5-cycles compose to it in time order
# (first tuple applied first).  Each touches only five of the eight states.
BIT_FLIP_FIVE_CYCLES: tuple[tuple[int, ...], ...] = (
    (0, 1, 2, 5, 4),
    (0, 4, 5, 3, 2),
    (4, 5, 6, 1, 0),
    (4, 0, 1, 7, 6),
)

BIT_FLIP_PERMUTATION = Permutation.from_cycles(8, ((0, 1), (2, 3), (4, 5), (6, 7)))


def five_cycle_on_support(cycle: tuple[int, ...]) -> tuple[Permutation, tuple[int, ...]]:
    """Relabel a 5-cycle over arbitrary state labels onto {0..4}.

    Returns the dense permutation and the sorted support used as the
    relabeling table.
    """
    support = tuple(sorted(cycle))
    position = {state: pos for pos, state in enumerate(support)}
    images = list(range(5))
    for pos, state in enumerate(cycle):
        images[position[state]] = position[cycle[(pos + 1) % len(cycle)]]
    return Permutation(tuple(images)), support


def embed_permutation(perm: Permutation, support: tuple[int, ...], size: int) -> Permutation:
    """Extend a permutation of ``support`` to ``size`` states, fixing the rest."""
    images = list(range(size))
    for pos, state in enumerate(support):
        images[state] = support[perm.images[pos]]
    return Permutation(tuple(images))


def circuit_to_three_bit(circuit: CircuitNode, num_rom_bits: int) -> RomProgram:
    """Three-bit program XOR-ing a circuit's value into writable bit 1.

    Runs Barrington's construction once per 5-cycle factor of the bit-flip
    permutation, embedding each branching-program step into the 8 states.
    A step (if0, if1) becomes an uncontrolled if0 followed by the controlled
    difference if1 * if0^-1, so it costs at most one ROM call.
    """
    for index in circuit_inputs(circuit):
        if index > num_rom_bits:
            raise ValueError(f"circuit reads x{index} but space has {num_rom_bits} ROM bits")
    space = RomSpace(num_rom_bits, 3, CLASSICAL)
    instructions: list[Instruction] = []
    for cycle in BIT_FLIP_FIVE_CYCLES:
        rho, support = five_cycle_on_support(cycle)
        for bit, if0, if1 in barrington(circuit, rho).steps:
            always = embed_permutation(if0, support, 8)
            conditional = embed_permutation(if0.inverse().then(if1), support, 8)
            if not always.is_identity():
                instructions.append(Instruction(PermutationGate(always), None))
            if not conditional.is_identity():
                instructions.append(Instruction(PermutationGate(conditional), bit))
    return RomProgram(space, tuple(instructions))


def and_barrington(num_rom_bits: int) -> RomProgram:
    """Three-bit program computing the AND of all ROM bits into bit 1."""
    return circuit_to_three_bit(balanced_and_circuit(num_rom_bits), num_rom_bits)


def one_bit_reachable(num_rom_bits: int, max_controls: int = 1) -> set[TruthTable]:
    """Closure of the functions a one-writable-bit machine can compute.

    The only reversible one-bit gate is NOT, so the generators are "toggle
    everywhere" and "toggle where a product of up to max_controls ROM bits is
    1".  Enumerated as a breadth-first closure from the constant-0 function.
    """
    if num_rom_bits > 4:
        raise ValueError("closure enumeration is exhaustive; capped at 4 ROM bits")
    if max_controls < 1:
        raise ValueError("max_controls must be at least 1")
    length = 1 << num_rom_bits
    generators = []
    for mask in range(1 << num_rom_bits):
        if bin(mask).count("1") <= max_controls:
            pattern = 0
            for u in range(length):
                if u & mask == mask:
                    pattern |= 1 << u
            generators.append(pattern)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for packed in frontier:
            for gen in generators:
                child = packed ^ gen
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return {TruthTable.from_int(num_rom_bits, packed) for packed in seen}

import itertools
import random

import pytest

from romcomp import (
    BIT_FLIP_FIVE_CYCLES,
    BIT_FLIP_PERMUTATION,
    AndNode,
    Anf,
    InputNode,
    NotNode,
    OrNode,
    ParseError,
    Permutation,
    and_barrington,
    balanced_and_circuit,
    barrington,
    circuit_depth,
    circuit_to_three_bit,
    cnot_gate,
    compile_pair,
    embed_permutation,
    eval_circuit,
    evaluate,
    extract_function,
    five_cycle_on_support,
    monomial_into_register,
    not_gate,
    one_bit_reachable,
    parse_circuit,
    rom_call_count,
    and_sequence,
    truth_table_of,
)
from romcomp.synth_classical import anf_to_circuit


def and_bits(u, m):
    return 1 if u & ((1 << m) - 1) == (1 << m) - 1 else 0


# ---------------------------------------------------------------------------
# Two-register gates and the doubling sequence
# ---------------------------------------------------------------------------


def test_gate_tables():
    assert not_gate(1, 1).gate.perm.images == (1, 0, 3, 2)
    assert not_gate(2, 1).gate.perm.images == (2, 3, 0, 1)
    assert cnot_gate(1, 1).gate.perm.images == (0, 1, 3, 2)
    assert cnot_gate(2, 1).gate.perm.images == (0, 3, 2, 1)
    with pytest.raises(ValueError):
        not_gate(3, 1)
    with pytest.raises(ValueError):
        cnot_gate(0, 1)


def test_gates_inactive_control():
    from romcomp import RomProgram, RomSpace

    for inst in (not_gate(1, 1), not_gate(2, 1), cnot_gate(1, 1), cnot_gate(2, 1)):
        prog = RomProgram(RomSpace(1, 2, "classical"), (inst,))
        from romcomp import permutation_of

        assert permutation_of(prog, 0).is_identity()


def test_and_sequence_base():
    prog, register = and_sequence(1, 1)
    assert register == 1
    assert len(prog) == 1
    assert prog.instructions[0] == not_gate(1, 1)


def test_and_sequence_two_vars():
    prog, register = and_sequence(2, 2)
    assert register == 2
    assert rom_call_count(prog) == 4
    for u in range(4):
        for alpha in range(2):
            for beta in range(2):
                start = alpha | beta << 1
                end = evaluate(prog, u, start)
                assert end & 1 == alpha
                assert end >> 1 == beta ^ (and_bits(u, 2))


def test_and_sequence_three_vars_lands_in_register_one():
    prog, register = and_sequence(3, 3)
    assert register == 1
    for u in range(8):
        for start in range(4):
            end = evaluate(prog, u, start)
            assert end & 1 == (start & 1) ^ and_bits(u, 3)
            assert end >> 1 == start >> 1


@pytest.mark.parametrize("m", range(1, 8))
def test_and_sequence_counts_and_involution(m):
    prog, register = and_sequence(m, m)
    assert register == (1 if m % 2 else 2)
    assert rom_call_count(prog) == 3 * 2 ** (m - 1) - 2
    from romcomp import concat

    doubled = concat(prog, prog)
    for u in range(1 << m):
        for start in range(4):
            assert evaluate(doubled, u, start) == start


def test_and_sequence_range_errors():
    with pytest.raises(ValueError):
        and_sequence(0, 2)
    with pytest.raises(ValueError):
        and_sequence(3, 2)


def test_monomial_into_register_steering():
    for target in (1, 2):
        for vars_ in ([2], [1, 3], [2, 3, 1]):
            prog = monomial_into_register(vars_, target, 3)
            mask = sum(1 << (v - 1) for v in vars_)
            for u in range(8):
                product = 1 if u & mask == mask else 0
                for start in range(4):
                    end = evaluate(prog, u, start)
                    got_target = (end >> (target - 1)) & 1
                    want_target = ((start >> (target - 1)) & 1) ^ product
                    other = 2 - target
                    assert got_target == want_target
                    assert (end >> other) & 1 == (start >> other) & 1


def test_monomial_constant_one():
    prog = monomial_into_register([], 2, 2)
    assert rom_call_count(prog) == 0
    for u in range(4):
        assert evaluate(prog, u, 0) == 2


def test_compile_pair_empty():
    prog = compile_pair(Anf(2, frozenset()), Anf(2, frozenset()), 2)
    vf = extract_function(prog)
    assert all(bit == 0 for table in vf.components for bit in table.bits)


def test_compile_pair_worked_example():
    f1 = Anf(3, frozenset({0b001, 0b100}))
    f2 = Anf(3, frozenset({0b001, 0b011}))
    vf = extract_function(compile_pair(f1, f2, 3))
    assert vf.components == (truth_table_of(f1), truth_table_of(f2))


def test_compile_pair_random_and_call_bound():
    rng = random.Random(17)
    for _ in range(100):
        masks1 = frozenset(rng.sample(range(16), rng.randrange(5)))
        masks2 = frozenset(rng.sample(range(16), rng.randrange(5)))
        f1, f2 = Anf(4, masks1), Anf(4, masks2)
        prog = compile_pair(f1, f2, 4)
        vf = extract_function(prog)
        assert vf.components == (truth_table_of(f1), truth_table_of(f2))
        bound = (len(masks1) + len(masks2)) * (3 * 2 ** 3 - 2)
        assert rom_call_count(prog) <= bound


# ---------------------------------------------------------------------------
# Circuits and Barrington's construction
# ---------------------------------------------------------------------------

RHO = Permutation((1, 2, 3, 4, 0))


def test_circuit_parsing_and_eval():
    circuit = parse_circuit("(and (or x1 x2) (not x3))")
    assert circuit_depth(circuit) == 2
    for u in range(8):
        u1, u2, u3 = u & 1, u >> 1 & 1, u >> 2 & 1
        assert eval_circuit(circuit, u) == (u1 | u2) & (1 - u3)
    assert parse_circuit("x4") == InputNode(4)


def test_circuit_parse_errors():
    for bad in ("", "(and x1)", "(nand x1 x2)", "x0", "(and x1 x2) x3", "(and x1 x2"):
        with pytest.raises(ParseError):
            parse_circuit(bad)


def test_balanced_and_depth():
    for n, d in ((1, 0), (2, 1), (3, 2), (4, 2), (7, 3), (8, 3)):
        circuit = balanced_and_circuit(n)
        assert circuit_depth(circuit) == d
        for u in range(1 << n):
            assert eval_circuit(circuit, u) == and_bits(u, n)


def test_barrington_single_input():
    bp = barrington(InputNode(1), RHO)
    assert bp.length == 1
    bit, if0, if1 = bp.steps[0]
    assert (bit, if0.is_identity(), if1) == (1, True, RHO)


def test_barrington_requires_five_cycle():
    with pytest.raises(ValueError):
        barrington(InputNode(1), Permutation((1, 0, 2, 3, 4)))


def check_theorem_contract(circuit, num_bits, rho=RHO):
    bp = barrington(circuit, rho)
    assert bp.length <= 4 ** circuit_depth(circuit)
    for u in range(1 << num_bits):
        got = bp.evaluate(u)
        if eval_circuit(circuit, u):
            assert got == rho
        else:
            assert got.is_identity()
    return bp


def test_barrington_and_of_two():
    bp = check_theorem_contract(AndNode(InputNode(1), InputNode(2)), 2)
    assert bp.length <= 4


def test_barrington_not_adds_no_length():
    bp = check_theorem_contract(NotNode(InputNode(1)), 1)
    assert bp.length == 1


def test_barrington_small_circuit_zoo():
    circuits = [
        OrNode(InputNode(1), InputNode(2)),
        AndNode(OrNode(InputNode(1), InputNode(2)), NotNode(InputNode(3))),
        OrNode(AndNode(InputNode(1), InputNode(2)), AndNode(InputNode(3), InputNode(1))),
        NotNode(AndNode(NotNode(InputNode(1)), OrNode(InputNode(2), InputNode(3)))),
        balanced_and_circuit(8),
    ]
    for circuit in circuits:
        bits = max(node for node in _inputs(circuit))
        check_theorem_contract(circuit, bits)


def _inputs(circuit):
    from romcomp.synth_classical import circuit_inputs

    return circuit_inputs(circuit)


def test_barrington_every_five_cycle_target():
    circuit = AndNode(InputNode(1), InputNode(2))
    five_cycles = [
        p
        for p in map(Permutation, itertools.permutations(range(5)))
        if len(p.cycles()) == 1 and len(p.cycles()[0]) == 5
    ]
    assert len(five_cycles) == 24
    for rho in five_cycles:
        check_theorem_contract(circuit, 2, rho)


def test_bit_flip_cycle_product():
    # The four 5-cycles, applied first-tuple-first, give (0 1)(2 3)(4 5)(6 7).
    product = Permutation.identity(8)
    for cycle in BIT_FLIP_FIVE_CYCLES:
        rho, support = five_cycle_on_support(cycle)
        product = product.then(embed_permutation(rho, support, 8))
    assert product == BIT_FLIP_PERMUTATION


def test_embedding_fixes_complement():
    for cycle in BIT_FLIP_FIVE_CYCLES:
        rho, support = five_cycle_on_support(cycle)
        embedded = embed_permutation(rho, support, 8)
        outside = set(range(8)) - set(support)
        assert all(embedded.apply(s) == s for s in outside)


def test_and_barrington_instructions_fix_inactive_states():
    # Each instruction of the three-bit AND program touches only the five
    # states of the cycle it was generated from.
    for cycle in BIT_FLIP_FIVE_CYCLES:
        rho, support = five_cycle_on_support(cycle)
        bp = barrington(balanced_and_circuit(3), rho)
        outside = set(range(8)) - set(support)
        for _, if0, if1 in bp.steps:
            for perm in (if0, if1):
                embedded = embed_permutation(perm, support, 8)
                assert all(embedded.apply(s) == s for s in outside)


@pytest.mark.parametrize("j", range(1, 7))
def test_and_barrington_extracts_and(j):
    prog = and_barrington(j)
    vf = extract_function(prog)
    assert vf.components[0].bits == tuple(and_bits(u, j) for u in range(1 << j))
    assert all(bit == 0 for bit in vf.components[1].bits)
    assert all(bit == 0 for bit in vf.components[2].bits)
    depth = (j - 1).bit_length()
    assert rom_call_count(prog) <= 4 * 4 ** depth


def test_circuit_to_three_bit_general():
    circuit = parse_circuit("(or (and x1 x2) (not x3))")
    prog = circuit_to_three_bit(circuit, 3)
    vf = extract_function(prog)
    assert vf.components[0].bits == tuple(eval_circuit(circuit, u) for u in range(8))


def test_anf_to_circuit():
    anf = Anf(3, frozenset({0b000, 0b011, 0b100}))
    circuit = anf_to_circuit(anf)
    want = truth_table_of(anf)
    for u in range(8):
        assert eval_circuit(circuit, u) == want.bits[u]
    # Constant-0 circuit from the empty form.
    zero = anf_to_circuit(Anf(2, frozenset()))
    assert all(eval_circuit(zero, u) == 0 for u in range(4))


# ---------------------------------------------------------------------------
# One writable bit reaches only the affine functions
# ---------------------------------------------------------------------------


def affine_tables(j):
    out = set()
    for mask in range(1 << j):
        for const in (0, 1):
            bits = tuple(
                (bin(u & mask).count("1") + const) % 2 for u in range(1 << j)
            )
            out.add(bits)
    return out


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_one_bit_closure_is_affine(j):
    reachable = {t.bits for t in one_bit_reachable(j)}
    assert len(reachable) == 2 ** (j + 1)
    assert reachable == affine_tables(j)


def test_one_bit_closure_excludes_and():
    for j in (2, 3):
        reachable = {t.bits for t in one_bit_reachable(j)}
        and_table = tuple(and_bits(u, j) for u in range(1 << j))
        assert and_table not in reachable


def test_one_bit_closure_with_wider_controls():
    # Controls of width up to k reach exactly the degree-<=-k forms.
    reachable = {t.bits for t in one_bit_reachable(3, max_controls=2)}
    assert len(reachable) == 2 ** (1 + 3 + 3)
    and3 = tuple(and_bits(u, 3) for u in range(8))
    assert and3 not in reachable
    assert len({t.bits for t in one_bit_reachable(3, max_controls=3)}) == 256

"""Exhaustive search for minimal-ROM-call two-bit programs.

A two-bit program hitting a per-assignment target from start state 0 is
searched as a path in "signature" space: the signature is the vector, over
all 2^j ROM assignments, of the state currently reached from 0.  Uncontrolled
gates are free, so signatures are identified up to a uniform relabeling of
the four states: any free gate can be absorbed into that relabeling, and the
one trailing free gate is restored when the witness is rebuilt.  Each search
move is therefore a single controlled step (ROM index, non-identity
permutation), and breadth-first order makes the first hit a certificate that
no cheaper program exists.

When the target is invariant under permuting the ROM bits (the all-bits AND
is), signatures are additionally identified up to bit relabeling, which cuts
the explored space roughly by j!.  Witness reconstruction undoes both
identifications: state relabelings become free uncontrolled gates and bit
relabelings are pushed through the remaining moves by conjugation.

Levels are expanded as bulk numpy operations over the whole frontier; only
the sorted signature set of each level is kept, and the witness path is
recovered backwards by inverting moves over the orbit of the hit signature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .program import (
    CLASSICAL,
    Instruction,
    Permutation,
    PermutationGate,
    RomProgram,
    RomSpace,
)

_STATES = 4


class NotFoundWithinDepth(Exception):
    """No program within the depth bound reaches the target."""

    def __init__(self, max_depth: int) -> None:
        super().__init__(f"no program with at most {max_depth} ROM calls reaches the target")
        self.max_depth = max_depth


@dataclass(frozen=True, slots=True)
class SearchTarget:
    """Required final state (from start 0) for every ROM assignment."""

    num_rom_bits: int
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.targets) != 1 << self.num_rom_bits:
            raise ValueError("need one target state per ROM assignment")
        if any(not 0 <= t < _STATES for t in self.targets):
            raise ValueError("target states must be in 0..3")

    @classmethod
    def all_bits_and(cls, num_rom_bits: int) -> "SearchTarget":
        """Register 1 ends as the AND of all ROM bits, register 2 as 0."""
        length = 1 << num_rom_bits
        return cls(num_rom_bits, tuple(1 if u == length - 1 else 0 for u in range(length)))


@dataclass(frozen=True, slots=True)
class SearchResult:
    minimal_rom_calls: int
    witness: RomProgram
    nodes_expanded: int


def conjectured_minimal_calls(num_rom_bits: int) -> int:
    """Conjectured minimal ROM calls for the all-bits AND target, iterating
    the recurrence that adds 2^floor(j/2) per extra bit, from 1 at j = 1."""
    if num_rom_bits < 1:
        raise ValueError("num_rom_bits must be positive")
    calls = 1
    for j in range(2, num_rom_bits + 1):
        calls += 1 << (j // 2)
    return calls


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _relabel(vector: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First-occurrence state relabeling.

    Returns the relabeled vector and the full map old-state -> new-state
    (unseen states getting the remaining labels in increasing order).
    """
    mapping = [-1] * _STATES
    nxt = 0
    out = []
    for v in vector:
        if mapping[v] < 0:
            mapping[v] = nxt
            nxt += 1
        out.append(mapping[v])
    for v in range(_STATES):
        if mapping[v] < 0:
            mapping[v] = nxt
            nxt += 1
    return tuple(out), tuple(mapping)


def _encode(vector: tuple[int, ...]) -> int:
    enc = 0
    for pos, v in enumerate(vector):
        enc |= v << (2 * pos)
    return enc


def _decode(enc: int, length: int) -> tuple[int, ...]:
    return tuple((enc >> (2 * pos)) & 3 for pos in range(length))


def _gather_tables(num_rom_bits: int, enable: bool) -> list[tuple[int, ...]]:
    """Position maps canon-index -> source-index, one per ROM-bit relabeling.

    Table g for bit map pi satisfies: canonical[m] = vector[g[m]] where bit
    pi[b] of m equals bit b of g[m].  Without symmetry only the identity map
    is used.
    """
    length = 1 << num_rom_bits
    perms = itertools.permutations(range(num_rom_bits)) if enable else [tuple(range(num_rom_bits))]
    tables = []
    for pi in perms:
        gather = [0] * length
        for src in range(length):
            dst = 0
            for b in range(num_rom_bits):
                if src >> b & 1:
                    dst |= 1 << pi[b]
            gather[dst] = src
        tables.append(tuple(gather))
    return tables


def _canonize(
    vector: tuple[int, ...], gathers: list[tuple[int, ...]]
) -> tuple[int, tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Minimal encoding over bit relabelings and state relabelings.

    Returns (encoding, canonical vector, winning gather table, state map).
    """
    best_enc = -1
    best = None
    for gather in gathers:
        permuted = tuple(vector[g] for g in gather)
        relabeled, mapping = _relabel(permuted)
        enc = _encode(relabeled)
        if best_enc < 0 or enc < best_enc:
            best_enc = enc
            best = (relabeled, gather, mapping)
    assert best is not None
    return best_enc, best[0], best[1], best[2]


class _TablePipeline:
    """Precomputed lookup tables for bulk work on packed signatures.

    A signature vector packs into (2 * L)-bit integers, split into a low and
    a high half of at most 8 positions each.  Position permutations and
    controlled moves act independently on the halves, so each becomes two
    table lookups; the first-occurrence relabeling is a scan, so the halves
    compose through a tiny automaton over appearance orders (sequences of
    distinct states, 65 of them).
    """

    def __init__(self, length: int, gathers: list[tuple[int, ...]],
                 moves: list[tuple[int, tuple[int, ...]]]) -> None:
        self.length = length
        self.low_width = min(length, 8)
        self.high_width = length - self.low_width
        self.low_mask = np.uint32((1 << (2 * self.low_width)) - 1)
        self.low_bits = np.uint32(2 * self.low_width)

        orders = self._appearance_orders()
        order_id = {order: idx for idx, order in enumerate(orders)}
        self.scan_low = self._scan_table(self.low_width, order_id)
        self.scan_high = self._scan_table(self.high_width, order_id)
        size = len(orders)
        self.compose = np.empty((size, size), dtype=np.uint8)
        for a, first in enumerate(orders):
            for b, second in enumerate(orders):
                merged = list(first) + [v for v in second if v not in first]
                self.compose[a, b] = order_id[tuple(merged)]
        perms = list(itertools.permutations(range(_STATES)))
        perm_id = {p: idx for idx, p in enumerate(perms)}
        self.order_perm = np.empty(size, dtype=np.uint8)
        for idx, order in enumerate(orders):
            full = list(order) + [v for v in range(_STATES) if v not in order]
            label = [0] * _STATES
            for rank, value in enumerate(full):
                label[value] = rank
            self.order_perm[idx] = perm_id[tuple(label)]
        self.relabel_low = self._value_map_table(perms, self.low_width)
        self.relabel_high = self._value_map_table(perms, self.high_width)

        self.gather_low = []
        self.gather_high = []
        for gather in gathers:
            self.gather_low.append(self._gather_table(gather, 0))
            self.gather_high.append(self._gather_table(gather, 1))
        self.move_low = []
        self.move_high = []
        for index, perm in moves:
            self.move_low.append(self._move_table(index, perm, 0))
            self.move_high.append(self._move_table(index, perm, 1))

    @staticmethod
    def _appearance_orders() -> list[tuple[int, ...]]:
        out = [()]
        for size in range(1, _STATES + 1):
            out.extend(itertools.permutations(range(_STATES), size))
        return out

    def _scan_table(self, width: int, order_id: dict) -> np.ndarray:
        """Appearance-order id of every packed half, scanned low position first."""
        table = np.empty(1 << (2 * width), dtype=np.uint8)
        for packed in range(table.shape[0]):
            seen: list[int] = []
            for pos in range(width):
                value = packed >> (2 * pos) & 3
                if value not in seen:
                    seen.append(value)
            table[packed] = order_id[tuple(seen)]
        return table

    @staticmethod
    def _value_map_table(perms: list[tuple[int, ...]], width: int) -> np.ndarray:
        """relabel_.flat[perm_id << 2*width | half] = half with values mapped."""
        half = np.arange(1 << (2 * width), dtype=np.uint32)
        table = np.empty((len(perms), half.shape[0]), dtype=np.uint32)
        for idx, perm in enumerate(perms):
            lut = np.array(perm, dtype=np.uint32)
            acc = np.zeros_like(half)
            for pos in range(width):
                acc |= lut[(half >> np.uint32(2 * pos)) & np.uint32(3)] << np.uint32(2 * pos)
            table[idx] = acc
        return table

    def _gather_table(self, gather: tuple[int, ...], half: int) -> np.ndarray:
        """Contribution of one source half to the position-permuted packed value."""
        width = self.high_width if half else self.low_width
        base = self.low_width if half else 0
        src = np.arange(1 << (2 * width), dtype=np.uint32)
        acc = np.zeros_like(src)
        for dst_pos, src_pos in enumerate(gather):
            if base <= src_pos < base + width:
                acc |= ((src >> np.uint32(2 * (src_pos - base))) & np.uint32(3)) << np.uint32(
                    2 * dst_pos
                )
        return acc

    def _move_table(self, index: int, perm: tuple[int, ...], half: int) -> np.ndarray:
        """One half of a controlled move: apply perm where the ROM bit is set."""
        width = self.high_width if half else self.low_width
        base = self.low_width if half else 0
        src = np.arange(1 << (2 * width), dtype=np.uint32)
        lut = np.array(perm, dtype=np.uint32)
        acc = np.zeros_like(src)
        for pos in range(width):
            values = (src >> np.uint32(2 * pos)) & np.uint32(3)
            if (base + pos) >> (index - 1) & 1:
                values = lut[values]
            acc |= values << np.uint32(2 * pos)
        return acc

    def split(self, encs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return encs & self.low_mask, encs >> self.low_bits

    def apply_move(self, encs: np.ndarray, move_idx: int) -> np.ndarray:
        low, high = self.split(encs)
        return self.move_low[move_idx][low] | (
            self.move_high[move_idx][high] << self.low_bits
        )

    def canonize(self, encs: np.ndarray) -> np.ndarray:
        low, high = self.split(encs)
        best: np.ndarray | None = None
        for g_low, g_high in zip(self.gather_low, self.gather_high):
            gathered = g_low[low] | g_high[high]
            glow = gathered & self.low_mask
            ghigh = gathered >> self.low_bits
            order = self.compose[self.scan_low[glow], self.scan_high[ghigh]]
            perm_id = self.order_perm[order]
            candidate = self.relabel_low[perm_id, glow] | (
                self.relabel_high[perm_id, ghigh] << self.low_bits
            )
            if best is None:
                best = candidate
            else:
                np.minimum(best, candidate, out=best)
        assert best is not None
        return best


_PIPELINES: dict[tuple[int, int], _TablePipeline] = {}


def _pipeline_for(
    length: int, gathers: list[tuple[int, ...]], moves: list[tuple[int, tuple[int, ...]]]
) -> _TablePipeline:
    key = (length, len(gathers))
    if key not in _PIPELINES:
        _PIPELINES[key] = _TablePipeline(length, gathers, moves)
    return _PIPELINES[key]


def _moves(num_rom_bits: int) -> list[tuple[int, tuple[int, ...]]]:
    """(ROM index, permutation images) in lexicographic order."""
    perms = [p for p in itertools.permutations(range(_STATES)) if p != (0, 1, 2, 3)]
    return [(i, p) for i in range(1, num_rom_bits + 1) for p in perms]


def _apply_move(
    vector: tuple[int, ...], move: tuple[int, tuple[int, ...]]
) -> tuple[int, ...]:
    index, perm = move
    mask = 1 << (index - 1)
    return tuple(perm[v] if pos & mask else v for pos, v in enumerate(vector))


def _symmetric_target(target: SearchTarget, gathers: list[tuple[int, ...]]) -> bool:
    return all(
        tuple(target.targets[g] for g in gather) == target.targets for gather in gathers
    )


# ---------------------------------------------------------------------------
# Breadth-first level expansion
# ---------------------------------------------------------------------------


def minimal_program(
    target: SearchTarget, max_depth: int, use_symmetry: bool | None = None
) -> SearchResult:
    """Breadth-first search for a cheapest program meeting the target.

    ``use_symmetry`` defaults to auto-detection: ROM-bit relabeling is used
    exactly when the target is invariant under it.  ``nodes_expanded`` counts
    the signatures whose outgoing moves were generated.
    """
    j = target.num_rom_bits
    if j > 4:
        raise ValueError("the exhaustive search is capped at 4 ROM bits")
    sym_gathers = _gather_tables(j, True)
    if use_symmetry is None:
        use_symmetry = _symmetric_target(target, sym_gathers)
    elif use_symmetry and not _symmetric_target(target, sym_gathers):
        raise ValueError("symmetry pruning requires a bit-relabeling-invariant target")
    gathers = sym_gathers if use_symmetry else _gather_tables(j, False)

    length = 1 << j
    start = (0,) * length
    start_enc = _canonize(start, gathers)[0]
    target_enc = _canonize(target.targets, gathers)[0]
    moves = _moves(j)

    if start_enc == target_enc:
        witness = _reconstruct(target, [], gathers)
        return SearchResult(0, witness, 0)

    pipeline = _pipeline_for(length, gathers, moves)
    visited = np.array([start_enc], dtype=np.uint32)
    level_sets = [visited]
    frontier = visited
    nodes_expanded = 0

    for depth in range(1, max_depth + 1):
        nodes_expanded += frontier.shape[0]
        collected: list[np.ndarray] = []
        collected_size = 0
        hit = False
        for move_idx in range(len(moves)):
            encs = np.unique(pipeline.canonize(pipeline.apply_move(frontier, move_idx)))
            if np.any(encs == np.uint32(target_enc)):
                hit = True
                break
            pos = np.searchsorted(visited, encs)
            pos[pos >= len(visited)] = len(visited) - 1
            fresh = encs[visited[pos] != encs]
            if fresh.size:
                collected.append(fresh)
                collected_size += fresh.size
            if collected_size > 16_000_000:
                collected = [np.unique(np.concatenate(collected))]
                collected_size = collected[0].size
        if hit:
            path = _walk_back(target, target_enc, depth, level_sets, moves, gathers)
            witness = _reconstruct(target, path, gathers)
            return SearchResult(depth, witness, nodes_expanded)
        if not collected:
            break
        level = np.unique(np.concatenate(collected))
        level_sets.append(level)
        visited = np.union1d(visited, level)
        frontier = level
    raise NotFoundWithinDepth(max_depth)


def _orbit(vector: tuple[int, ...], gathers: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """All vectors equivalent to ``vector`` under the active identifications."""
    seen = set()
    for gather in gathers:
        permuted = tuple(vector[g] for g in gather)
        for relabel in itertools.permutations(range(_STATES)):
            seen.add(tuple(relabel[v] for v in permuted))
    return sorted(seen)


def _walk_back(
    target: SearchTarget,
    final_enc: int,
    depth: int,
    level_sets: list[np.ndarray],
    moves: list[tuple[int, tuple[int, ...]]],
    gathers: list[tuple[int, ...]],
) -> list[tuple[int, tuple[int, ...]]]:
    """Recover a deterministic move path from the per-level signature sets.

    Walking backwards, a predecessor of the current class is the canonical
    form of an inverse move applied to some member of the class orbit; each
    candidate is verified forward before being accepted, and the smallest
    (signature, move index) pair wins.
    """
    length = 1 << target.num_rom_bits
    inverse_luts = [tuple(_invert(perm)) for _, perm in moves]
    path: list[tuple[int, tuple[int, ...]]] = []
    cur_enc = final_enc
    for level in range(depth, 0, -1):
        prev = level_sets[level - 1]
        cur_vec = _decode(cur_enc, length)
        best: tuple[int, int] | None = None
        for variant in _orbit(cur_vec, gathers):
            for move_idx, (index, _) in enumerate(moves):
                candidate = _apply_move(variant, (index, inverse_luts[move_idx]))
                cand_enc, cand_vec, _, _ = _canonize(candidate, gathers)
                if best is not None and (cand_enc, move_idx) >= best:
                    continue
                at = int(np.searchsorted(prev, np.uint32(cand_enc)))
                if at >= len(prev) or int(prev[at]) != cand_enc:
                    continue
                forward = _canonize(_apply_move(cand_vec, moves[move_idx]), gathers)[0]
                if forward == cur_enc:
                    best = (cand_enc, move_idx)
        if best is None:
            raise AssertionError("level sets lost the predecessor of a hit signature")
        path.append(moves[best[1]])
        cur_enc = best[0]
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# Witness reconstruction
# ---------------------------------------------------------------------------


def _reconstruct(
    target: SearchTarget,
    moves: list[tuple[int, tuple[int, ...]]],
    gathers: list[tuple[int, ...]],
) -> RomProgram:
    """Turn a canonical-space move path into a real program hitting the target.

    Tracks the accumulated state relabeling H (real value -> canon value) and
    position map realpos (canon position -> real position).  Each canon move
    is conjugated back through both before being emitted; state relabelings
    chosen by canonization reappear as a single free fixup gate at the end.
    """
    j = target.num_rom_bits
    length = 1 << j
    space = RomSpace(j, 2, CLASSICAL)
    instructions: list[Instruction] = []

    canon_vec = (0,) * length
    state_map = tuple(range(_STATES))  # real value -> canon value
    realpos = tuple(range(length))  # canon position -> real position
    real_vec = [0] * length

    for move in moves:
        index, perm = move
        inv_map = _invert(state_map)
        # H^-1 . perm . H: conjugate the canon-space move back to real values.
        real_perm = tuple(inv_map[perm[state_map[x]]] for x in range(_STATES))
        real_index = realpos[1 << (index - 1)].bit_length()
        instructions.append(
            Instruction(PermutationGate(Permutation(real_perm)), real_index)
        )
        mask = 1 << (real_index - 1)
        for pos in range(length):
            if pos & mask:
                real_vec[pos] = real_perm[real_vec[pos]]

        raw = _apply_move(canon_vec, move)
        _, canon_vec, gather, relabel_map = _canonize(raw, gathers)
        state_map = tuple(relabel_map[v] for v in state_map)
        realpos = tuple(realpos[g] for g in gather)

    # Final free permutation lining the reached states up with the target.
    fixup = _mapping_to_permutation(tuple(real_vec), target.targets)
    if not fixup.is_identity():
        instructions.append(Instruction(PermutationGate(fixup), None))
        real_vec = [fixup.images[v] for v in real_vec]
    if tuple(real_vec) != target.targets:
        raise AssertionError("witness reconstruction failed to meet the target")
    return RomProgram(space, tuple(instructions))


def _invert(mapping: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(mapping)
    for src, dst in enumerate(mapping):
        inv[dst] = src
    return tuple(inv)


def _mapping_to_permutation(reached: tuple[int, ...], wanted: tuple[int, ...]) -> Permutation:
    """The state permutation g with g(reached[u]) = wanted[u], extended to a
    bijection by pairing leftover states in increasing order."""
    images = [-1] * _STATES
    for got, want in zip(reached, wanted):
        if images[got] < 0:
            images[got] = want
        elif images[got] != want:
            raise AssertionError("reached states are not a relabeling of the target")
    used = {v for v in images if v >= 0}
    spare = [v for v in range(_STATES) if v not in used]
    for state in range(_STATES):
        if images[state] < 0:
            images[state] = spare.pop(0)
    return Permutation(tuple(images))

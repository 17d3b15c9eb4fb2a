"""JSON wire format for ROM programs.

This is the contract between the CLI, the simulators and the compilers:

    {"num_rom_bits": j, "num_writable": n, "kind": "classical" | "quantum",
     "instructions": [{"control": i | null, "gate": <gate>}, ...]}

where <gate> is one of

    {"perm": [s0, s1, ...]}                       classical permutation
    {"axis": "X" | "Z", "num": p, "log2den": k}   dyadic rotation X^t / Z^t
    {"matrix": [[re, im], [re, im], [re, im], [re, im]]}   raw unitary, row-major
"""

from __future__ import annotations

import json
from typing import Any

from .program import (
    CLASSICAL,
    QUANTUM,
    DyadicExponent,
    DyadicGate,
    Gate,
    Instruction,
    Permutation,
    PermutationGate,
    ProgramError,
    RomProgram,
    RomSpace,
    UnitaryGate,
)


class ProgramFormatError(ProgramError):
    """The JSON document does not follow the program wire format."""


def gate_to_dict(gate: Gate) -> dict[str, Any]:
    if isinstance(gate, PermutationGate):
        return {"perm": list(gate.perm.images)}
    if isinstance(gate, DyadicGate):
        return {"axis": gate.axis, "num": gate.exponent.num, "log2den": gate.exponent.log2den}
    return {"matrix": [[z.real, z.imag] for z in gate.entries]}


def program_to_dict(program: RomProgram) -> dict[str, Any]:
    return {
        "num_rom_bits": program.space.num_rom_bits,
        "num_writable": program.space.num_writable,
        "kind": program.space.kind,
        "instructions": [
            {"control": inst.control, "gate": gate_to_dict(inst.gate)}
            for inst in program.instructions
        ],
    }


def dumps(program: RomProgram, indent: int | None = None) -> str:
    return json.dumps(program_to_dict(program), indent=indent)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ProgramFormatError(message)


def gate_from_dict(data: Any) -> Gate:
    _require(isinstance(data, dict), f"gate must be an object, got {type(data).__name__}")
    if "perm" in data:
        images = data["perm"]
        _require(isinstance(images, list) and all(isinstance(s, int) for s in images),
                 "perm must be a list of integers")
        return PermutationGate(Permutation(tuple(images)))
    if "axis" in data:
        _require(isinstance(data.get("num"), int) and isinstance(data.get("log2den"), int),
                 "dyadic gate needs integer num and log2den")
        return DyadicGate(data["axis"], DyadicExponent(data["num"], data["log2den"]))
    if "matrix" in data:
        rows = data["matrix"]
        _require(
            isinstance(rows, list) and len(rows) == 4
            and all(isinstance(e, list) and len(e) == 2 for e in rows),
            "matrix must be four [re, im] pairs",
        )
        entries = tuple(complex(float(re), float(im)) for re, im in rows)
        return UnitaryGate(entries)  # type: ignore[arg-type]
    raise ProgramFormatError(f"unrecognized gate object with keys {sorted(data)}")


def program_from_dict(data: Any) -> RomProgram:
    _require(isinstance(data, dict), "program must be a JSON object")
    for key in ("num_rom_bits", "num_writable", "kind", "instructions"):
        _require(key in data, f"program is missing {key!r}")
    _require(data["kind"] in (CLASSICAL, QUANTUM), f"unknown kind {data['kind']!r}")
    space = RomSpace(data["num_rom_bits"], data["num_writable"], data["kind"])
    raw = data["instructions"]
    _require(isinstance(raw, list), "instructions must be a list")
    instructions = []
    for pos, item in enumerate(raw):
        _require(isinstance(item, dict) and "gate" in item,
                 f"instruction {pos} must be an object with a gate")
        control = item.get("control")
        _require(control is None or isinstance(control, int),
                 f"instruction {pos}: control must be an integer or null")
        instructions.append(Instruction(gate_from_dict(item["gate"]), control))
    return RomProgram(space, tuple(instructions))


def loads(text: str) -> RomProgram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProgramFormatError(f"invalid JSON: {exc}") from exc
    return program_from_dict(data)

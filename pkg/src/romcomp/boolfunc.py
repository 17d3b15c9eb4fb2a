"""Truth tables, the XOR-of-AND normal form, and conversions between them.

Table index convention, shared with the program IR: variable u_1 is the least
significant bit of the index, so entry ``bits[u]`` is the function value at
the assignment whose mask is ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(ValueError):
    """Bad textual input; carries the character position of the problem."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True, slots=True)
class TruthTable:
    num_vars: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if len(self.bits) != 1 << self.num_vars:
            raise ValueError(
                f"table for {self.num_vars} vars needs {1 << self.num_vars} entries, "
                f"got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("table entries must be 0 or 1")

    @classmethod
    def constant(cls, num_vars: int, value: int) -> "TruthTable":
        return cls(num_vars, (value,) * (1 << num_vars))

    @classmethod
    def from_int(cls, num_vars: int, packed: int) -> "TruthTable":
        """Unpack from an integer whose bit u is the entry at assignment u."""
        return cls(num_vars, tuple((packed >> u) & 1 for u in range(1 << num_vars)))

    def to_int(self) -> int:
        packed = 0
        for u, b in enumerate(self.bits):
            packed |= b << u
        return packed

    def value(self, assignment: int) -> int:
        return self.bits[assignment]

    def to_bit_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def to_hex(self) -> str:
        """Bit sequence read as a big-endian binary numeral, in hex."""
        length = 1 << self.num_vars
        numeral = 0
        for b in self.bits:
            numeral = (numeral << 1) | b
        return format(numeral, f"0{max(1, (length + 3) // 4)}x")

    @classmethod
    def from_bit_string(cls, text: str) -> "TruthTable":
        for pos, ch in enumerate(text):
            if ch not in "01":
                raise ParseError(f"expected 0 or 1, got {ch!r}", pos)
        length = len(text)
        if length < 2 or length & (length - 1):
            raise ParseError(f"table length {length} is not a power of two >= 2", 0)
        return cls(length.bit_length() - 1, tuple(int(ch) for ch in text))

    @classmethod
    def from_hex(cls, text: str, num_vars: int) -> "TruthTable":
        length = 1 << num_vars
        expected = max(1, (length + 3) // 4)
        if len(text) != expected:
            raise ParseError(f"hex table for {num_vars} vars needs {expected} digits", 0)
        try:
            numeral = int(text, 16)
        except ValueError:
            bad = next(pos for pos, ch in enumerate(text) if ch not in "0123456789abcdefABCDEF")
            raise ParseError(f"invalid hex digit {text[bad]!r}", bad) from None
        if numeral >= 1 << length:
            raise ParseError(f"hex value too large for {length} table bits", 0)
        return cls(num_vars, tuple((numeral >> (length - 1 - u)) & 1 for u in range(length)))


@dataclass(frozen=True, slots=True)
class Anf:
    """XOR of conjunctions: each monomial is a bitmask of variable indices.

    The zero mask is the constant-1 monomial; an empty set is the constant 0.
    """

    num_vars: int
    monomials: frozenset[int]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for mask in self.monomials:
            if mask < 0 or mask >= 1 << self.num_vars:
                raise ValueError(f"monomial mask {mask} out of range for {self.num_vars} vars")

    @classmethod
    def from_var_lists(cls, num_vars: int, monomials: list[list[int]]) -> "Anf":
        masks = set()
        for vars_ in monomials:
            mask = 0
            for v in vars_:
                mask |= 1 << (v - 1)
            masks.add(mask)
        return cls(num_vars, frozenset(masks))

    def var_lists(self) -> list[list[int]]:
        """Monomials as sorted 1-based variable lists, smallest mask first."""
        out = []
        for mask in sorted(self.monomials):
            out.append([v + 1 for v in range(self.num_vars) if (mask >> v) & 1])
        return out


@dataclass(frozen=True, slots=True)
class VectorFunction:
    num_vars: int
    components: tuple[TruthTable, ...]

    def __post_init__(self) -> None:
        for table in self.components:
            if table.num_vars != self.num_vars:
                raise ValueError("all components must share num_vars")


def anf_of(table: TruthTable) -> Anf:
    """Monomial set of a table, via the binary Moebius (Zhegalkin) transform."""
    coeffs = list(table.bits)
    length = len(coeffs)
    step = 1
    while step < length:
        for idx in range(length):
            if idx & step:
                coeffs[idx] ^= coeffs[idx ^ step]
        step <<= 1
    return Anf(table.num_vars, frozenset(m for m in range(length) if coeffs[m]))


def truth_table_of(anf: Anf) -> TruthTable:
    """Evaluate each monomial as a conjunction and XOR the results."""
    length = 1 << anf.num_vars
    packed = 0
    for mask in anf.monomials:
        pattern = 0
        for u in range(length):
            if u & mask == mask:
                pattern |= 1 << u
        packed ^= pattern
    return TruthTable.from_int(anf.num_vars, packed)


def count_functions(num_vars: int, num_outputs: int) -> int:
    """Number of boolean functions from num_vars bits to num_outputs bits."""
    if num_vars < 1 or num_outputs < 1:
        raise ValueError("both widths must be positive")
    return 2 ** (num_outputs * 2**num_vars)


def parse_monomials(text: str, num_vars: int | None = None) -> Anf:
    """Parse a monomial list like ``1,1.2`` (u1 XOR u1u2).

    Monomials are comma-separated; each is a dot-joined list of 1-based
    variable indices.  The bare token ``0`` denotes the constant-1 monomial.
    An empty string is the constant 0.  Defaults num_vars to the largest
    index present (minimum 1).
    """
    masks: set[int] = set()
    max_var = 1
    if text.strip():
        pos = 0
        for chunk in text.split(","):
            token = chunk.strip()
            if token == "0":
                mask = 0
            elif not token:
                raise ParseError("empty monomial", pos)
            else:
                mask = 0
                sub = pos
                for part in token.split("."):
                    if not part.isdigit() or int(part) < 1:
                        raise ParseError(f"expected a variable index, got {part!r}", sub)
                    var = int(part)
                    if mask >> (var - 1) & 1:
                        raise ParseError(f"variable {var} repeated in monomial", sub)
                    mask |= 1 << (var - 1)
                    max_var = max(max_var, var)
                    sub += len(part) + 1
            if mask in masks:
                raise ParseError(f"duplicate monomial {token!r}", pos)
            masks.add(mask)
            pos += len(chunk) + 1
    if num_vars is None:
        num_vars = max_var
    return Anf(num_vars, frozenset(masks))


def format_monomials(anf: Anf) -> str:
    """Inverse of parse_monomials, smallest mask first."""
    parts = []
    for vars_ in anf.var_lists():
        parts.append("0" if not vars_ else ".".join(str(v) for v in vars_))
    return ",".join(parts)


def parse_table(text: str, num_vars: int | None = None) -> TruthTable:
    """Parse a truth table, as a 0/1 string or as big-endian hex.

    A string of 0/1 characters whose length is a power of two (>= 2) is read
    as the bit sequence itself; anything else is read as hex, with num_vars
    inferred from the digit count unless given.  A leading ``0x`` forces hex.
    """
    if text.startswith(("0x", "0X")):
        return _table_from_hex(text[2:], num_vars)
    if text and all(ch in "01" for ch in text):
        length = len(text)
        if length >= 2 and not (length & (length - 1)):
            table = TruthTable.from_bit_string(text)
            if num_vars is not None and table.num_vars != num_vars:
                raise ParseError(
                    f"bit string has {table.num_vars} vars, expected {num_vars}", 0
                )
            return table
    return _table_from_hex(text, num_vars)


def _table_from_hex(text: str, num_vars: int | None) -> TruthTable:
    if not text:
        raise ParseError("empty table", 0)
    if num_vars is None:
        total_bits = 4 * len(text)
        if total_bits & (total_bits - 1):
            raise ParseError(
                f"cannot infer num_vars from {len(text)} hex digits; pass it explicitly", 0
            )
        num_vars = total_bits.bit_length() - 1
    return TruthTable.from_hex(text, num_vars)

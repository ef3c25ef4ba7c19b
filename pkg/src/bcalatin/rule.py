"""Boolean functions as truth tables, bipermutive rules and algebraic normal form.

Truth tables are stored as Python integers: bit ``v`` holds the value of the
function on the input whose MSB-first integer value is ``v`` (``x1`` is the
most significant input). With this order the integer *is* the Wolfram code,
so rule 90 at arity 3 is ``x1 ^ x3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import ContractError, NotBipermutiveError

MAX_ARITY = 8


def _check_bits(bits: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ContractError(f"configuration entries must be 0 or 1, got {bits!r}")
    return out


def bits_to_int(bits: Sequence[int]) -> int:
    """MSB-first integer value of a bit sequence."""
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def int_to_bits(value: int, length: int) -> tuple[int, ...]:
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


@dataclass(frozen=True)
class TruthTable:
    """A ``k``-variable Boolean function (``0 <= k <= 8``).

    Arity 0 is a constant and only appears as the generator of a diameter-2
    bipermutive rule.
    """

    arity: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_ARITY:
            raise ContractError(f"arity must be in [0, {MAX_ARITY}], got {self.arity}")
        if not 0 <= self.bits < (1 << self.size):
            raise ContractError(
                f"truth table {self.bits} does not fit in {self.size} bits"
            )

    @property
    def size(self) -> int:
        return 1 << self.arity

    def __getitem__(self, index: int) -> int:
        return (self.bits >> index) & 1

    def __call__(self, *xs: int) -> int:
        return eval_table(self, xs)

    def values(self) -> list[int]:
        return [(self.bits >> v) & 1 for v in range(self.size)]

    @classmethod
    def from_function(cls, arity: int, fn) -> TruthTable:
        """Tabulate ``fn(x1, ..., xk)`` over all inputs."""
        bits = 0
        for v in range(1 << arity):
            if fn(*int_to_bits(v, arity)) & 1:
                bits |= 1 << v
        return cls(arity, bits)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> TruthTable:
        arity = len(values).bit_length() - 1
        if len(values) != 1 << arity:
            raise ContractError(f"table length {len(values)} is not a power of two")
        return cls(arity, sum((int(b) & 1) << v for v, b in enumerate(values)))

    @classmethod
    def constant(cls, arity: int, value: int) -> TruthTable:
        return cls(arity, ((1 << (1 << arity)) - 1) if value else 0)

    @classmethod
    def from_wolfram(cls, code: int, arity: int = 3) -> TruthTable:
        return cls(arity, code)

    @property
    def wolfram(self) -> WolframCode:
        return WolframCode(self.bits, self.arity)

    def to_hex(self) -> str:
        """Hex string, lowest-index bit least significant (rule 90 -> ``"5a"``)."""
        width = max(1, self.size // 4)
        return format(self.bits, f"0{width}x")

    @classmethod
    def from_hex(cls, text: str, arity: int) -> TruthTable:
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        try:
            value = int(text, 16)
        except ValueError:
            raise ContractError(f"not a hexadecimal truth table: {text!r}") from None
        return cls(arity, value)

    def complement(self) -> TruthTable:
        return TruthTable(self.arity, self.bits ^ ((1 << self.size) - 1))

    def reversed_inputs(self) -> TruthTable:
        """The function ``(x1, ..., xk) -> f(xk, ..., x1)``."""
        k = self.arity
        bits = 0
        for v in range(self.size):
            if (self.bits >> v) & 1:
                rv = int(format(v, f"0{k}b")[::-1], 2) if k else 0
                bits |= 1 << rv
        return TruthTable(k, bits)


@dataclass(frozen=True)
class WolframCode:
    value: int
    arity: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << (1 << self.arity)):
            raise ContractError(
                f"Wolfram code {self.value} out of range for arity {self.arity}"
            )

    def to_table(self) -> TruthTable:
        return TruthTable(self.arity, self.value)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class BipermutiveRule:
    """``f(x1, ..., xd) = x1 ^ g(x2, ..., x_{d-1}) ^ xd`` stored as ``(d, g)``."""

    diameter: int
    generator: TruthTable

    def __post_init__(self):
        if self.diameter < 2:
            raise ContractError(f"diameter must be >= 2, got {self.diameter}")
        if self.generator.arity != self.diameter - 2:
            raise ContractError(
                f"generator of a diameter-{self.diameter} rule needs arity "
                f"{self.diameter - 2}, got {self.generator.arity}"
            )

    @classmethod
    def from_generator(cls, generator: TruthTable) -> BipermutiveRule:
        return cls(generator.arity + 2, generator)

    @property
    def table(self) -> TruthTable:
        return expand(self)


def eval_table(table: TruthTable, inputs: Sequence[int]) -> int:
    """Evaluate ``table`` on ``(x1, ..., xk)``."""
    xs = _check_bits(inputs)
    if len(xs) != table.arity:
        raise ContractError(
            f"expected {table.arity} inputs, got {len(xs)}"
        )
    return (table.bits >> bits_to_int(xs)) & 1


def is_bipermutive(table: TruthTable) -> bool:
    """True iff flipping ``x1`` and flipping ``xd`` each always flip the output."""
    d = table.arity
    if d < 2:
        raise ContractError(f"bipermutivity needs arity >= 2, got {d}")
    return _first_violation(table) is None


def _first_violation(table: TruthTable) -> str | None:
    d = table.arity
    left = 1 << (d - 1)
    bits = table.bits
    for v in range(table.size):
        if not v & left and ((bits >> v) ^ (bits >> (v | left))) & 1 == 0:
            return "left"
    for v in range(table.size):
        if not v & 1 and ((bits >> v) ^ (bits >> (v | 1))) & 1 == 0:
            return "right"
    return None


def extract_generator(table: TruthTable) -> BipermutiveRule:
    """Recover ``g`` from a bipermutive ``f`` via ``g(m) = f(0, m, 0)``.

    Raises NotBipermutiveError naming the first side (``left`` = ``x1``,
    ``right`` = ``xd``) on which permutivity fails.
    """
    d = table.arity
    if d < 2:
        raise ContractError(f"bipermutivity needs arity >= 2, got {d}")
    side = _first_violation(table)
    if side is not None:
        raise NotBipermutiveError(
            f"rule {table.bits} (arity {d}) is not {side}-permutive", side
        )
    k = d - 2
    g = 0
    for m in range(1 << k):
        g |= ((table.bits >> (m << 1)) & 1) << m
    return BipermutiveRule(d, TruthTable(k, g))


def expand(rule: BipermutiveRule) -> TruthTable:
    d = rule.diameter
    g = rule.generator.bits
    mid = (1 << (d - 2)) - 1
    bits = 0
    for v in range(1 << d):
        x1 = v >> (d - 1)
        xd = v & 1
        if x1 ^ ((g >> ((v >> 1) & mid)) & 1) ^ xd:
            bits |= 1 << v
    return TruthTable(d, bits)


# --- algebraic normal form -------------------------------------------------

class DegreeClass(str, Enum):
    CONSTANT = "constant"
    LINEAR = "linear"
    AFFINE = "affine"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True)
class Anf:
    """ANF coefficients; bit ``m`` is the coefficient of the monomial whose
    variables are the set bits of ``m`` (``x1`` is the most significant bit,
    matching the truth-table index order)."""

    arity: int
    coefficients: int

    @property
    def degree(self) -> int:
        c = self.coefficients
        return max((bin(m).count("1") for m in range(1 << self.arity) if (c >> m) & 1),
                   default=0)

    def monomials(self) -> list[tuple[int, ...]]:
        """Set monomials as tuples of 1-based variable indices, in mask order."""
        k = self.arity
        out = []
        for m in range(1 << k):
            if (self.coefficients >> m) & 1:
                out.append(tuple(j + 1 for j in range(k) if (m >> (k - 1 - j)) & 1))
        return out

    def to_table(self) -> TruthTable:
        return TruthTable(self.arity, moebius(self.coefficients, self.arity))

    def __str__(self) -> str:
        terms = ["".join(f"x{j}" for j in mono) or "1" for mono in self.monomials()]
        return "^".join(terms) if terms else "0"


def moebius(word: int, arity: int) -> int:
    """Binary Moebius transform of a ``2**arity``-bit word (an involution)."""
    size = 1 << arity
    step = 1
    while step < size:
        # mask of positions whose bit `step` is clear, replicated across the word
        block = ((1 << step) - 1)
        lo = 0
        for start in range(0, size, 2 * step):
            lo |= block << start
        word ^= (word & lo) << step
        step <<= 1
    return word


def anf(table: TruthTable) -> Anf:
    return Anf(table.arity, moebius(table.bits, table.arity))


def degree_class(table: TruthTable) -> DegreeClass:
    form = anf(table)
    deg = form.degree
    if deg == 0:
        return DegreeClass.CONSTANT
    if deg >= 2:
        return DegreeClass.NONLINEAR
    return DegreeClass.AFFINE if form.coefficients & 1 else DegreeClass.LINEAR


_TERM_SPLIT = re.compile(r"\s*(?:\^|\+|⊕)\s*")
_VAR = re.compile(r"x(\d+)")


def parse_anf(expr: str, arity: int) -> TruthTable:
    """Parse an XOR of monomials such as ``"x1^x3^x1*x4"`` or ``"x1 + x2x3 + 1"``.

    Variables are ``x1..xk``; a monomial is a juxtaposition (optionally with
    ``*``) of variables, or the constant ``0``/``1``.
    """
    text = expr.strip()
    if not text:
        raise ContractError("empty ANF expression")
    coeffs = 0
    for term in _TERM_SPLIT.split(text):
        term = term.replace("*", "").replace(" ", "")
        if term in ("0", ""):
            if term == "":
                raise ContractError(f"empty term in {expr!r}")
            continue
        if term == "1":
            coeffs ^= 1
            continue
        if _VAR.sub("", term):
            raise ContractError(f"cannot parse monomial {term!r} in {expr!r}")
        mask = 0
        for idx in _VAR.findall(term):
            j = int(idx)
            if not 1 <= j <= arity:
                raise ContractError(f"variable x{j} out of range for arity {arity}")
            mask |= 1 << (arity - j)
        coeffs ^= 1 << mask
    return Anf(arity, coeffs).to_table()

"""No-boundary and periodic-boundary one-dimensional binary CA.

Cells are numbered 1..n in docstrings; in code they are 0-based. A
configuration's integer encoding is MSB-first, cell 1 leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import ContractError, ResourceLimitError
from .rule import BipermutiveRule, TruthTable, _check_bits, bits_to_int, expand, int_to_bits

DEFAULT_CAP = 24


@dataclass(frozen=True)
class BitConfig:
    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", _check_bits(self.bits))
        if not self.bits:
            raise ContractError("a configuration needs at least one cell")

    @property
    def length(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __add__(self, other: BitConfig) -> BitConfig:
        """Concatenation ``x || y``."""
        return BitConfig(self.bits + tuple(other))

    def __xor__(self, other: Sequence[int]) -> BitConfig:
        other = tuple(other)
        if len(other) != len(self.bits):
            raise ContractError("xor of configurations of different lengths")
        return BitConfig(tuple(a ^ b for a, b in zip(self.bits, other)))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def to_int(self) -> int:
        return bits_to_int(self.bits)

    def rotate_left(self, steps: int = 1) -> BitConfig:
        s = steps % len(self.bits)
        return BitConfig(self.bits[s:] + self.bits[:s])

    @classmethod
    def from_str(cls, text: str) -> BitConfig:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ContractError(f"configuration must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value: int, length: int) -> BitConfig:
        return cls(int_to_bits(value, length))

    @classmethod
    def zeros(cls, length: int) -> BitConfig:
        return cls((0,) * length)


ConfigLike = Union[BitConfig, Sequence[int], str]


def as_config(x: ConfigLike) -> BitConfig:
    if isinstance(x, BitConfig):
        return x
    if isinstance(x, str):
        return BitConfig.from_str(x)
    return BitConfig(tuple(x))


@dataclass(frozen=True)
class PbcaMap:
    """The periodic CA with local rule ``rule`` on ``size`` cells."""

    rule: TruthTable
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ContractError(f"PBCA size must be >= 1, got {self.size}")

    def __call__(self, x: ConfigLike) -> BitConfig:
        return pbca_eval(self, x)


def nbca_eval(rule: TruthTable, x: ConfigLike) -> BitConfig:
    """Cell ``i`` of the output is ``rule(x_i, ..., x_{i+d-1})``, i = 1..n-d+1."""
    x = as_config(x)
    d, n = rule.arity, len(x)
    if n < d:
        raise ContractError(f"NBCA needs at least {d} cells, got {n}")
    bits = x.bits
    return BitConfig(tuple(
        (rule.bits >> bits_to_int(bits[i:i + d])) & 1 for i in range(n - d + 1)
    ))


def pbca_eval(pbca: PbcaMap, x: ConfigLike) -> BitConfig:
    """Cell ``i`` reads the window ``x_i, ..., x_{i+k-1}`` with indices mod n.

    Windows longer than the configuration wrap around more than once.
    """
    x = as_config(x)
    n, k = pbca.size, pbca.rule.arity
    if len(x) != n:
        raise ContractError(f"configuration has {len(x)} cells, map expects {n}")
    bits = x.bits
    table = pbca.rule.bits
    return BitConfig(tuple(
        (table >> bits_to_int([bits[(i + j) % n] for j in range(k)])) & 1
        for i in range(n)
    ))


def diagonal_map(rule: BipermutiveRule, x: ConfigLike) -> BitConfig:
    """``T(x) = F(x || x)`` for the NBCA ``F`` of the expanded rule."""
    x = as_config(x)
    if len(x) != rule.diameter - 1:
        raise ContractError(
            f"diagonal map of a diameter-{rule.diameter} rule takes "
            f"{rule.diameter - 1} cells, got {len(x)}"
        )
    return nbca_eval(expand(rule), x + x)


def _check_cap(n: int, cap: int):
    if n > cap:
        raise ResourceLimitError(
            f"exhaustive check over 2^{n} configurations exceeds the cap of 2^{cap}"
        )


def _cell_windows(xs: np.ndarray, size: int, arity: int, cell: int) -> np.ndarray:
    """Window index of ``cell`` (0-based) for every configuration in ``xs``."""
    full = (1 << size) - 1
    if arity <= size:
        rot = ((xs << cell) | (xs >> (size - cell))) & full if cell else xs
        return rot >> (size - arity)
    out = np.zeros_like(xs)
    for j in range(arity):
        out = (out << 1) | ((xs >> (size - 1 - (cell + j) % size)) & 1)
    return out


@lru_cache(maxsize=64)
def window_indices(size: int, arity: int) -> np.ndarray:
    """``W[x, i]`` = integer value of the periodic window of cell ``i`` in ``x``.

    Shape ``(2**size, size)``. Depends only on the geometry, not on the rule.
    """
    xs = np.arange(1 << size, dtype=np.int64)
    out = np.stack([_cell_windows(xs, size, arity, i) for i in range(size)], axis=1)
    out.setflags(write=False)
    return out


def _images(table: TruthTable, size: int) -> np.ndarray:
    xs = np.arange(1 << size, dtype=np.int64)
    lut = np.array(table.values(), dtype=np.int64)
    images = np.zeros_like(xs)
    for i in range(size):
        images = (images << 1) | lut[_cell_windows(xs, size, table.arity, i)]
    return images


def is_invertible(pbca: PbcaMap, cap: int = DEFAULT_CAP) -> bool:
    """Whether the PBCA is a bijection on its ``2**size`` configurations.

    Every image is marked in an occupancy bitmap; the map is bijective iff no
    slot stays empty.
    """
    n = pbca.size
    _check_cap(n, cap)
    seen = np.zeros(1 << n, dtype=bool)
    seen[_images(pbca.rule, n)] = True
    return bool(seen.all())


def diagonal_is_permutation(rule: BipermutiveRule, cap: int = DEFAULT_CAP) -> bool:
    """Whether ``x -> F(x || x)`` permutes ``F_2^(d-1)``, checked on the NBCA itself."""
    m = rule.diameter - 1
    _check_cap(m, cap)
    seen = set()
    for v in range(1 << m):
        y = diagonal_map(rule, BitConfig.from_int(v, m)).to_int()
        if y in seen:
            return False
        seen.add(y)
    return True

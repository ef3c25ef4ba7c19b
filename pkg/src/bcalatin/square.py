"""Latin squares generated by NBCA, transversals and orthogonal mates.

Rows, columns and symbols are 1-based as in the usual presentation of a
Latin square of order ``N`` over ``[N]``; the labeling between
``F_2^(d-1)`` and ``[N]`` is the MSB-first binary value plus one.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .ca import DEFAULT_CAP, BitConfig, ConfigLike, as_config, nbca_eval
from .errors import ContractError, ResourceLimitError
from .rule import BipermutiveRule, TruthTable, expand, is_bipermutive

MAX_SQUARE_DIAMETER = 8
MAX_DECOMPOSITION_ORDER = 16
DEFAULT_BUDGET = 10**8


def coord_encode(x: ConfigLike) -> int:
    x = as_config(x)
    return x.to_int() + 1


def coord_decode(symbol: int, length: int) -> BitConfig:
    if not 1 <= symbol <= 1 << length:
        raise ContractError(f"symbol {symbol} outside [1, {1 << length}]")
    return BitConfig.from_int(symbol - 1, length)


@dataclass(frozen=True, eq=False)
class LatinSquareGrid:
    """An ``N x N`` grid over ``[N]``.

    ``verified`` is False only for grids built from non-bipermutive rules,
    which need not be Latin.
    """

    cells: np.ndarray
    verified: bool = True

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int64)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1] or cells.shape[0] == 0:
            raise ContractError(f"expected a non-empty square matrix, got shape {cells.shape}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def order(self) -> int:
        return self.cells.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int(self.cells[i - 1, j - 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinSquareGrid) and np.array_equal(self.cells, other.cells)

    def rows(self) -> list[list[int]]:
        return self.cells.tolist()

    def to_csv(self) -> str:
        return "".join(",".join(map(str, row)) + "\n" for row in self.rows())

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "cells": self.rows()})

    def to_pgm(self) -> bytes:
        """Binary PGM, symbol ``k`` mapped linearly onto 0..255."""
        n = self.order
        if n == 1:
            gray = np.zeros((1, 1), dtype=np.uint8)
        else:
            gray = np.rint((self.cells - 1) * 255 / (n - 1)).astype(np.uint8)
        return f"P5\n{n} {n}\n255\n".encode() + gray.tobytes()


@dataclass(frozen=True)
class CoordSet:
    """``N`` cells with pairwise distinct rows and pairwise distinct columns."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(i), int(j)) for i, j in self.pairs)
        rows = [i for i, _ in pairs]
        cols = [j for _, j in pairs]
        if len(set(rows)) != len(rows):
            raise ContractError("coordinate set repeats a row")
        if len(set(cols)) != len(cols):
            raise ContractError("coordinate set repeats a column")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def diagonal_coords(order: int) -> CoordSet:
    return CoordSet(tuple((i, i) for i in range(1, order + 1)))


def _square_inputs(d: int) -> np.ndarray:
    m = d - 1
    return np.arange(1 << (2 * m), dtype=np.int64)


def build_square(rule: TruthTable | BipermutiveRule) -> LatinSquareGrid:
    """``S(i, j) = phi(F(psi(i) || psi(j)))`` for the NBCA ``F`` of ``rule``."""
    if isinstance(rule, BipermutiveRule):
        rule = expand(rule)
    d = rule.arity
    if not 2 <= d <= MAX_SQUARE_DIAMETER:
        raise ContractError(f"square construction needs 2 <= d <= {MAX_SQUARE_DIAMETER}, got {d}")
    m = d - 1
    width = 2 * m
    xs = _square_inputs(d)
    lut = np.array(rule.values(), dtype=np.int64)
    mask = (1 << d) - 1
    out = np.zeros_like(xs)
    for i in range(m):
        out = (out << 1) | lut[(xs >> (width - d - i)) & mask]
    n = 1 << m
    return LatinSquareGrid((out + 1).reshape(n, n), verified=is_bipermutive(rule))


def _is_perm_rows(cells: np.ndarray) -> bool:
    n = cells.shape[0]
    return bool((np.sort(cells, axis=1) == np.arange(1, n + 1)).all())


def is_latin(grid: LatinSquareGrid) -> bool:
    cells = grid.cells
    return _is_perm_rows(cells) and _is_perm_rows(cells.T)


def are_orthogonal(a: LatinSquareGrid, b: LatinSquareGrid) -> bool:
    n = a.order
    if b.order != n:
        raise ContractError(f"orders differ: {n} vs {b.order}")
    keys = ((a.cells - 1) * n + (b.cells - 1)).ravel()
    if keys.min() < 0 or keys.max() >= n * n:
        return False
    seen = np.zeros(n * n, dtype=bool)
    seen[keys] = True
    return bool(seen.all())


def is_transversal(grid: LatinSquareGrid, coords: CoordSet | Iterable[tuple[int, int]]) -> bool:
    if not isinstance(coords, CoordSet):
        coords = CoordSet(tuple(coords))
    n = grid.order
    if len(coords) != n:
        raise ContractError(f"a transversal of an order-{n} square has {n} cells, got {len(coords)}")
    for i, j in coords:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ContractError(f"cell ({i}, {j}) outside the {n}x{n} grid")
    symbols = sorted(grid[i, j] for i, j in coords)
    return symbols == list(range(1, n + 1))


def shifted_diagonal_is_transversal(
    rule: BipermutiveRule, shift: ConfigLike, cap: int = DEFAULT_CAP
) -> bool:
    """Whether ``x -> F(x || x ^ c)`` permutes ``F_2^(d-1)``.

    Equivalently the cells ``(phi(x), phi(x ^ c))`` form a transversal.
    """
    c = as_config(shift)
    m = rule.diameter - 1
    if len(c) != m:
        raise ContractError(f"shift must have {m} cells, got {len(c)}")
    if m > cap:
        raise ResourceLimitError(f"2^{m} configurations exceed the cap of 2^{cap}")
    table = expand(rule)
    seen = set()
    for v in range(1 << m):
        x = BitConfig.from_int(v, m)
        y = nbca_eval(table, x + (x ^ c)).to_int()
        if y in seen:
            return False
        seen.add(y)
    return True


def shifted_diagonal_coords(order: int, shift: ConfigLike) -> CoordSet:
    c = as_config(shift).to_int()
    return CoordSet(tuple((x + 1, (x ^ c) + 1) for x in range(order)))


# --- disjoint transversals -------------------------------------------------

class DecompositionStatus(str, Enum):
    FOUND = "found"
    NONE = "none"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TransversalDecomposition:
    classes: tuple[CoordSet, ...]

    @property
    def order(self) -> int:
        return len(self.classes)


@dataclass
class DecompositionResult:
    status: DecompositionStatus
    nodes: int
    decomposition: TransversalDecomposition | None = None

    @property
    def found(self) -> bool:
        return self.status is DecompositionStatus.FOUND


class _BudgetExhausted(Exception):
    pass


def find_disjoint_decomposition(
    grid: LatinSquareGrid, budget: int = DEFAULT_BUDGET
) -> DecompositionResult:
    """Search for ``N`` disjoint transversals covering the grid.

    Posed as exact cover: choosing class ``k`` for cell ``(i, j)`` covers the
    items (cell i j), (row i, class k), (column j, class k) and
    (symbol S(i, j), class k). Algorithm X always branches on the item with
    fewest remaining options, first in a fixed order on ties, so node order
    is deterministic. In row 1, class ``k`` is pinned to column ``k``, which
    removes the relabeling symmetry. ``budget`` bounds the number of
    tentative choices; running out gives UNKNOWN, never NONE.
    """
    n = grid.order
    if n > MAX_DECOMPOSITION_ORDER:
        raise ResourceLimitError(
            f"decomposition search is capped at order {MAX_DECOMPOSITION_ORDER}, got {n}"
        )
    sym = (grid.cells - 1).tolist()
    options: dict[tuple[int, int, int], tuple] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i == 0 and j != k:
                    continue
                options[i, j, k] = (("cell", i, j), ("row", i, k), ("col", j, k),
                                    ("sym", sym[i][j], k))
    items: dict[tuple, set] = {}
    for opt, its in options.items():
        for it in its:
            items.setdefault(it, set()).add(opt)
    # a symbol missing from the grid leaves its items uncoverable
    for s in range(n):
        for k in range(n):
            items.setdefault(("sym", s, k), set())

    chosen: list[tuple[int, int, int]] = []
    nodes = 0

    def select(opt):
        removed = []
        for it in options[opt]:
            for other in items[it]:
                for jt in options[other]:
                    if jt != it:
                        items[jt].discard(other)
            removed.append(items.pop(it))
        return removed

    def deselect(opt, removed):
        for it in reversed(options[opt]):
            items[it] = removed.pop()
            for other in items[it]:
                for jt in options[other]:
                    if jt != it:
                        items[jt].add(other)

    def search() -> bool:
        nonlocal nodes
        if not items:
            return True
        target = min(items, key=lambda it: len(items[it]))
        for opt in sorted(items[target]):
            if nodes >= budget:
                raise _BudgetExhausted
            nodes += 1
            removed = select(opt)
            chosen.append(opt)
            if search():
                return True
            chosen.pop()
            deselect(opt, removed)
        return False

    try:
        ok = search()
    except _BudgetExhausted:
        return DecompositionResult(DecompositionStatus.UNKNOWN, nodes)
    if not ok:
        return DecompositionResult(DecompositionStatus.NONE, nodes)
    cells: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, k in sorted(chosen):
        cells[k].append((i + 1, j + 1))
    classes = tuple(CoordSet(tuple(c)) for c in cells)
    return DecompositionResult(DecompositionStatus.FOUND, nodes, TransversalDecomposition(classes))


def validate_decomposition(decomp: TransversalDecomposition, grid: LatinSquareGrid | None = None):
    n = decomp.order
    covered = set()
    for cls in decomp.classes:
        if len(cls) != n:
            raise ContractError(f"class has {len(cls)} cells, expected {n}")
        for i, j in cls:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ContractError(f"cell ({i}, {j}) outside the {n}x{n} grid")
            covered.add((i, j))
        if grid is not None and not is_transversal(grid, cls):
            raise ContractError("a class is not a transversal of the square")
    if len(covered) != n * n:
        raise ContractError("classes do not partition the grid")


def mate_from_decomposition(
    decomp: TransversalDecomposition, grid: LatinSquareGrid | None = None
) -> LatinSquareGrid:
    """Square giving symbol ``k`` to every cell of class ``k``."""
    validate_decomposition(decomp, grid)
    n = decomp.order
    cells = np.zeros((n, n), dtype=np.int64)
    for k, cls in enumerate(decomp.classes, start=1):
        for i, j in cls:
            cells[i - 1, j - 1] = k
    return LatinSquareGrid(cells)


def decomposition_from_square(mate: LatinSquareGrid) -> TransversalDecomposition:
    """Symbol classes of ``mate``; a decomposition of any square orthogonal to it."""
    n = mate.order
    classes = []
    for k in range(1, n + 1):
        rows, cols = np.nonzero(mate.cells == k)
        classes.append(CoordSet(tuple(zip((rows + 1).tolist(), (cols + 1).tolist()))))
    return TransversalDecomposition(tuple(classes))


def mask_pbm(order: int, coords: Iterable[tuple[int, int]]) -> bytes:
    """Plain PBM bitmap with 1 (black) on the given cells."""
    mask = np.zeros((order, order), dtype=np.uint8)
    for i, j in coords:
        mask[i - 1, j - 1] = 1
    buf = io.StringIO()
    buf.write(f"P1\n{order} {order}\n")
    for row in mask:
        buf.write(" ".join(map(str, row.tolist())) + "\n")
    return buf.getvalue().encode()


def grid_from_rows(rows: Sequence[Sequence[int]]) -> LatinSquareGrid:
    return LatinSquareGrid(np.array(rows, dtype=np.int64))

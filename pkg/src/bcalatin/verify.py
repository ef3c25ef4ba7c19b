"""Exhaustive equivalence suites behind ``bcalatin verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ca import PbcaMap, diagonal_is_permutation, is_invertible
from .errors import ContractError
from .rule import BipermutiveRule, TruthTable, is_bipermutive
from .search import complement_violations, enumerate_invertible, reversal_violations
from .square import build_square, is_latin

SUITE_RANGES = {
    "lemma1": (2, 4),
    "theorem1": (2, 5),
    "closure": (3, 6),
}


@dataclass
class SuiteResult:
    name: str
    diameter: int
    checked: int
    passed: bool
    counterexample: str | None = None

    def lines(self) -> list[str]:
        out = [
            f"property: {self.name}",
            f"diameter: {self.diameter}",
            f"checked: {self.checked}",
            f"result: {'pass' if self.passed else 'fail'}",
        ]
        if self.counterexample is not None:
            out.append(f"counterexample: {self.counterexample}")
        return out


def _check_range(name: str, d: int):
    lo, hi = SUITE_RANGES[name]
    if not lo <= d <= hi:
        raise ContractError(f"{name} suite runs for {lo} <= d <= {hi}, got d={d}")


def verify_lemma1(d: int) -> SuiteResult:
    """Latin iff bipermutive, over every truth table of arity ``d``."""
    _check_range("lemma1", d)
    total = 1 << (1 << d)
    for code in range(total):
        table = TruthTable(d, code)
        if is_latin(build_square(table)) != is_bipermutive(table):
            return SuiteResult("lemma1", d, code + 1, False, f"rule {code}")
    return SuiteResult("lemma1", d, total, True)


def _pbca_route(generator: TruthTable) -> bool:
    return is_invertible(PbcaMap(generator, generator.arity + 1))


def verify_theorem1(
    d: int, invertibility: Callable[[TruthTable], bool] | None = None
) -> SuiteResult:
    """Diagonal transversal iff invertible PBCA, over every generator of arity ``d - 2``.

    ``invertibility`` replaces the PBCA side of the comparison; it exists so
    the suite's ability to report a failure can itself be tested.
    """
    _check_range("theorem1", d)
    oracle = invertibility or _pbca_route
    k = d - 2
    total = 1 << (1 << k)
    for code in range(total):
        g = TruthTable(k, code)
        if diagonal_is_permutation(BipermutiveRule(d, g)) != oracle(g):
            return SuiteResult("theorem1", d, code + 1, False, f"generator {code}")
    return SuiteResult("theorem1", d, total, True)


def verify_closure(d: int) -> SuiteResult:
    """Complement and input-reversal closure of the invertible generator set."""
    _check_range("closure", d)
    report = enumerate_invertible(d)
    n = len(report.invertible_codes)
    bad = complement_violations(report)
    if bad:
        return SuiteResult("closure", d, n, False, f"complement of generator {bad[0]}")
    bad = reversal_violations(report)
    if bad:
        return SuiteResult("closure", d, n, False, f"reversal of generator {bad[0]}")
    return SuiteResult("closure", d, n, True)


SUITES = {
    "lemma1": verify_lemma1,
    "theorem1": verify_theorem1,
    "closure": verify_closure,
}

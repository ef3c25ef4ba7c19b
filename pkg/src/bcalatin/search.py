"""Exhaustive search for generating functions that induce invertible PBCA.

For diameter ``d`` every generator ``g`` of ``d - 2`` variables is tested
for invertibility of its PBCA on ``d - 1`` cells. A generator is identified
by its truth-table integer (its *code*).
"""

from __future__ import annotations

import json
import logging
import os
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .ca import PbcaMap, is_invertible, window_indices
from .errors import ContractError
from .rule import DegreeClass, TruthTable, degree_class

log = logging.getLogger(__name__)

MIN_DIAMETER = 3
MAX_DIAMETER = 7
CHUNK_SIZE = 1 << 12
CHECKPOINT_EVERY = 1 << 24
CSV_HEADER = "diameter,total,invertible,constant,linear,affine,nonlinear,wall_time_ms"


@dataclass
class SearchReport:
    diameter: int
    total_generators: int
    invertible_codes: list[int]
    class_counts: dict[str, int]
    wall_time: float = 0.0  # seconds

    @property
    def arity(self) -> int:
        return self.diameter - 2

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "diameter": self.diameter,
            "total": self.total_generators,
            "invertible": [str(c) for c in self.invertible_codes],
            "classes": {cls.value: self.class_counts.get(cls.value, 0) for cls in DegreeClass},
        }
        if include_time:
            out["wall_time_ms"] = round(self.wall_time * 1000)
        return out

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time))

    @classmethod
    def from_json(cls, text: str) -> SearchReport:
        data = json.loads(text)
        return cls(
            diameter=data["diameter"],
            total_generators=data["total"],
            invertible_codes=[int(c) for c in data["invertible"]],
            class_counts=dict(data["classes"]),
            wall_time=data.get("wall_time_ms", 0) / 1000,
        )

    def csv_row(self) -> str:
        c = self.class_counts
        return ",".join(str(v) for v in (
            self.diameter, self.total_generators, len(self.invertible_codes),
            c.get("constant", 0), c.get("linear", 0), c.get("affine", 0),
            c.get("nonlinear", 0), round(self.wall_time * 1000),
        ))

    def summary(self) -> str:
        return (f"d={self.diameter} invertible={len(self.invertible_codes)} "
                f"nonlinear={self.class_counts.get('nonlinear', 0)}")


def _check_diameter(d: int):
    if not MIN_DIAMETER <= d <= MAX_DIAMETER:
        raise ContractError(f"diameter must be in [{MIN_DIAMETER}, {MAX_DIAMETER}], got {d}")


def scan_range(start: int, stop: int, d: int) -> list[int]:
    """Codes in ``[start, stop)`` whose PBCA on ``d - 1`` cells is bijective."""
    k, n = d - 2, d - 1
    codes = np.arange(start, stop, dtype=np.uint64)
    # each output cell of a bijection is balanced, and cell 1 reads g on k
    # distinct cells, so g itself must be balanced
    codes = codes[np.bitwise_count(codes) == (1 << (k - 1))]
    if codes.size == 0:
        return []
    windows = window_indices(n, k).astype(np.uint64)
    bits = (codes[:, None, None] >> windows[None, :, :]) & np.uint64(1)
    weights = np.uint64(1) << np.arange(n - 1, -1, -1, dtype=np.uint64)
    images = (bits * weights).sum(axis=2)
    images.sort(axis=1)
    ok = (images == np.arange(1 << n, dtype=np.uint64)).all(axis=1)
    return codes[ok].tolist()


def classify(codes: Iterable[int], arity: int) -> dict[str, int]:
    counts = Counter(degree_class(TruthTable(arity, c)).value for c in codes)
    return {cls.value: counts.get(cls.value, 0) for cls in DegreeClass}


def _load_checkpoint(path: Path, d: int) -> tuple[int, list[int]]:
    data = json.loads(path.read_text())
    if data["diameter"] != d:
        raise ContractError(f"checkpoint {path} is for d={data['diameter']}, not d={d}")
    return data["next_code"], [int(c) for c in data["invertible"]]


def _save_checkpoint(path: Path, d: int, next_code: int, found: list[int]):
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({
        "diameter": d, "next_code": next_code, "invertible": [str(c) for c in found],
    }))
    os.replace(tmp, path)


def enumerate_invertible(
    d: int,
    jobs: int = 1,
    chunk_size: int = CHUNK_SIZE,
    checkpoint: str | os.PathLike | None = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
    resume: bool = False,
    progress: Callable[[int, int], None] | None = None,
) -> SearchReport:
    """Test every generator of ``d - 2`` variables.

    The code range is cut into contiguous chunks which may be scanned by
    ``jobs`` threads; results are concatenated in chunk order, so the report
    does not depend on ``jobs``. With ``checkpoint`` set, progress is saved
    every ``checkpoint_every`` codes and ``resume`` continues from the file.
    """
    _check_diameter(d)
    if jobs < 1:
        raise ContractError(f"jobs must be >= 1, got {jobs}")
    total = 1 << (1 << (d - 2))
    t0 = time.perf_counter()

    ckpt = Path(checkpoint) if checkpoint is not None else None
    next_code, found = 0, []
    if ckpt is not None and resume and ckpt.exists():
        next_code, found = _load_checkpoint(ckpt, d)
        log.info("resuming d=%d at code %d with %d hits", d, next_code, len(found))
    block = checkpoint_every if ckpt is not None else total

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        while next_code < total:
            stop = min(total, next_code + block)
            starts = range(next_code, stop, chunk_size)
            if jobs == 1:
                parts = [scan_range(s, min(s + chunk_size, stop), d) for s in starts]
            else:
                parts = pool.map(lambda s: scan_range(s, min(s + chunk_size, stop), d), starts)
            for part in parts:
                found.extend(part)
            next_code = stop
            if ckpt is not None:
                _save_checkpoint(ckpt, d, next_code, found)
            if progress is not None:
                progress(next_code, total)

    return SearchReport(
        diameter=d,
        total_generators=total,
        invertible_codes=found,
        class_counts=classify(found, d - 2),
        wall_time=time.perf_counter() - t0,
    )


def filter_by_class(report: SearchReport, cls: DegreeClass | str) -> list[int]:
    cls = DegreeClass(cls)
    return [c for c in report.invertible_codes
            if degree_class(TruthTable(report.arity, c)) is cls]


@dataclass
class SpotCheck:
    passed: bool
    checked: int
    counterexample: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _verify_code(code: int, d: int) -> bool:
    return is_invertible(PbcaMap(TruthTable(d - 2, code), d - 1))


def spot_check(report: SearchReport, samples: int = 64, seed: int = 0) -> SpotCheck:
    """Re-verify random listed and unlisted codes with the scalar PBCA checker.

    When ``samples`` covers a whole population (listed or unlisted), every
    member of it is checked.
    """
    d = report.diameter
    listed = report.invertible_codes
    if any(a >= b for a, b in zip(listed, listed[1:])):
        return SpotCheck(False, 0, reason="invertible codes are not strictly increasing")
    if sum(report.class_counts.values()) != len(listed):
        return SpotCheck(False, 0, reason="class counts do not sum to the number of codes")
    rng = random.Random(seed)
    checked = 0

    picks = listed if samples >= len(listed) else rng.sample(listed, samples)
    for code in picks:
        checked += 1
        if not _verify_code(code, d):
            return SpotCheck(False, checked, code, f"listed code {code} is not invertible")

    listed_set = set(listed)
    unlisted_count = report.total_generators - len(listed_set)
    if samples >= unlisted_count:
        others = (c for c in range(report.total_generators) if c not in listed_set)
    else:
        chosen: list[int] = []
        seen = set()
        while len(chosen) < samples:
            c = rng.randrange(report.total_generators)
            if c not in listed_set and c not in seen:
                seen.add(c)
                chosen.append(c)
        others = iter(chosen)
    for code in others:
        checked += 1
        if _verify_code(code, d):
            return SpotCheck(False, checked, code, f"unlisted code {code} is invertible")
    return SpotCheck(True, checked)


def complement_violations(report: SearchReport) -> list[int]:
    """Listed codes whose complement ``g ^ 1`` is missing."""
    k = report.arity
    listed = set(report.invertible_codes)
    return [c for c in report.invertible_codes
            if TruthTable(k, c).complement().bits not in listed]


def reversal_violations(report: SearchReport) -> list[int]:
    """Listed codes whose input-reversed function is missing."""
    k = report.arity
    listed = set(report.invertible_codes)
    return [c for c in report.invertible_codes
            if TruthTable(k, c).reversed_inputs().bits not in listed]

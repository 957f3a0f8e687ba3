"""Exhaustive censuses of n x n sign matrices.

Plain mode walks all 2^(n^2) matrices. Symmetry-reduced mode walks only the
2^((n-1)^2) matrices whose first row and column are all +1 and multiplies
every tally by the orbit size 2^(2n-1): row/column sign flips act freely and
each orbit contains exactly one such normal form, while |det| is invariant.

Determinants come from batched LAPACK LU with integer rounding. That is exact
here because every determinant of an n x n sign matrix is a multiple of
2^(n-1) while the floating error stays far below half that quantum at n <= 7;
the rounding is guarded per batch (distance-to-integer and divisibility
checks, plus a direct comparison against the exact determinant on one matrix
per batch) and any offender is recomputed exactly.
"""
from __future__ import annotations

import math
import os
import struct
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import bareiss_det
from .errors import CrossCheckError, LimitExceeded
from .limits import cap

MODE_PLAIN = "plain"
MODE_SYMMETRIC = "symmetry_reduced"

DEFAULT_BATCH = 1 << 16
CHECKPOINT_EVERY = 1 << 26

_CHECKPOINT_VERSION = 1
_MODE_CODES = {MODE_PLAIN: 0, MODE_SYMMETRIC: 1}


@dataclass
class CensusRecord:
    """Exact tallies for one full census."""

    n: int
    total: int
    singular_count: int
    sum_det_sq: int
    det_abs_histogram: dict[int, int]
    mode: str
    wall_time: float = 0.0

    @property
    def exact_pn(self) -> Fraction:
        return Fraction(self.singular_count, self.total)

    def validate(self) -> None:
        """Arithmetic self-checks; raises CrossCheckError on any failure."""
        if self.singular_count > self.total:
            raise CrossCheckError("singular count exceeds total")
        if self.det_abs_histogram.get(0, 0) != self.singular_count:
            raise CrossCheckError("histogram zero bin disagrees with singular count")
        if sum(self.det_abs_histogram.values()) != self.total:
            raise CrossCheckError("histogram mass disagrees with total")
        expected = math.factorial(self.n) * self.total
        if self.sum_det_sq != expected:
            raise CrossCheckError(
                f"sum of squared determinants {self.sum_det_sq} != n!*2^(n^2) = {expected}"
            )


@dataclass
class _Tally:
    processed: int = 0
    singular: int = 0
    sum_det_sq: int = 0
    histogram: Counter = field(default_factory=Counter)

    def merge(self, other: "_Tally") -> None:
        self.processed += other.processed
        self.singular += other.singular
        self.sum_det_sq += other.sum_det_sq
        self.histogram.update(other.histogram)


def _matrices_plain(indices: np.ndarray, n: int) -> np.ndarray:
    """Map enumeration indices to matrices; bit k of the index is entry (k//n, k%n)."""
    shifts = np.arange(n * n, dtype=np.uint64)
    bits = (indices[:, None] >> shifts[None, :]) & np.uint64(1)
    return (1.0 - 2.0 * bits.astype(np.float64)).reshape(-1, n, n)


def _matrices_symmetric(indices: np.ndarray, n: int) -> np.ndarray:
    """Normal forms: all +1 first row/column, free (n-1)^2 inner entries."""
    k = (n - 1) * (n - 1)
    shifts = np.arange(k, dtype=np.uint64)
    bits = (indices[:, None] >> shifts[None, :]) & np.uint64(1)
    mats = np.ones((len(indices), n, n))
    mats[:, 1:, 1:] = (1.0 - 2.0 * bits.astype(np.float64)).reshape(-1, n - 1, n - 1)
    return mats


def _batch_dets(mats: np.ndarray, n: int) -> np.ndarray:
    """Exact integer determinants of a batch of sign matrices."""
    dets = np.linalg.det(mats)
    rounded = np.rint(dets)
    quantum = 1 << (n - 1)
    bad = np.abs(dets - rounded) > 0.01
    if n > 1:
        bad |= (rounded.astype(np.int64) % quantum) != 0
    out = rounded.astype(np.int64)
    for i in np.nonzero(bad)[0]:
        out[i] = bareiss_det([[int(x) for x in row] for row in mats[i]])
    return out


def _scan_range(lo: int, hi: int, n: int, mode: str, batch: int) -> _Tally:
    build = _matrices_plain if mode == MODE_PLAIN else _matrices_symmetric
    tally = _Tally()
    for start in range(lo, hi, batch):
        stop = min(start + batch, hi)
        idx = np.arange(start, stop, dtype=np.uint64)
        mats = build(idx, n)
        dets = _batch_dets(mats, n)
        # one exact cross-check per batch
        first = bareiss_det([[int(x) for x in row] for row in mats[0]])
        if first != int(dets[0]):
            raise CrossCheckError(
                f"fast determinant path disagrees with exact value at index {start}"
            )
        tally.processed += stop - start
        tally.singular += int((dets == 0).sum())
        tally.sum_det_sq += int((dets * dets).sum())
        values, counts = np.unique(np.abs(dets), return_counts=True)
        for v, c in zip(values, counts):
            tally.histogram[int(v)] += int(c)
    return tally


def _scan_parallel(total: int, n: int, mode: str, threads: int, batch: int) -> _Tally:
    # fixed-size chunks independent of the worker count keep results identical
    chunk = max(batch, 1) * 4
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    tally = _Tally()
    if threads <= 1 or len(ranges) == 1:
        for lo, hi in ranges:
            tally.merge(_scan_range(lo, hi, n, mode, batch))
        return tally
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(lambda r: _scan_range(r[0], r[1], n, mode, batch), ranges):
            tally.merge(part)
    return tally


# ---------------------------------------------------------------------------
# Checkpointing (single-worker runs; n=7 takes hours)
# ---------------------------------------------------------------------------


def _write_checkpoint(path: str, n: int, mode: str, tally: _Tally) -> None:
    items = sorted(tally.histogram.items())
    blob = struct.pack(
        "<BBBQQQI",
        _CHECKPOINT_VERSION,
        n,
        _MODE_CODES[mode],
        tally.processed,
        tally.singular,
        tally.sum_det_sq,
        len(items),
    )
    blob += b"".join(struct.pack("<QQ", v, c) for v, c in items)
    tmp = f"{path}.tmp-{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, path)


def _read_checkpoint(path: str, n: int, mode: str) -> _Tally:
    with open(path, "rb") as fh:
        blob = fh.read()
    version, cn, cmode, processed, singular, sumsq, hist_len = struct.unpack_from(
        "<BBBQQQI", blob
    )
    if version != _CHECKPOINT_VERSION or cn != n or cmode != _MODE_CODES[mode]:
        raise ValueError(f"checkpoint {path} does not match this census")
    tally = _Tally(processed=processed, singular=singular, sum_det_sq=sumsq)
    offset = struct.calcsize("<BBBQQQI")
    for _ in range(hist_len):
        v, c = struct.unpack_from("<QQ", blob, offset)
        tally.histogram[v] = c
        offset += 16
    return tally


def _scan_with_checkpoint(
    total: int, n: int, mode: str, batch: int, path: str, every: int
) -> _Tally:
    tally = _Tally()
    if os.path.exists(path):
        tally = _read_checkpoint(path, n, mode)
    last_saved = tally.processed
    while tally.processed < total:
        hi = min(tally.processed + batch, total)
        tally.merge(_scan_range(tally.processed, hi, n, mode, batch))
        if tally.processed - last_saved >= every:
            _write_checkpoint(path, n, mode, tally)
            last_saved = tally.processed
    _write_checkpoint(path, n, mode, tally)
    return tally


# ---------------------------------------------------------------------------
# Public censuses
# ---------------------------------------------------------------------------


def census_plain(
    n: int,
    threads: int = 1,
    batch: int = DEFAULT_BATCH,
    checkpoint_path: str | None = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> CensusRecord:
    """Walk all 2^(n^2) sign matrices and tally exact determinant statistics."""
    limit = cap("PLAIN_N_CAP")
    if not 1 <= n <= limit:
        raise LimitExceeded(f"plain census supports 1 <= n <= {limit}, got {n}")
    started = time.perf_counter()
    total = 1 << (n * n)
    if checkpoint_path is not None:
        if threads > 1:
            raise ValueError("checkpointing requires a single worker")
        tally = _scan_with_checkpoint(
            total, n, MODE_PLAIN, batch, checkpoint_path, checkpoint_every
        )
    else:
        tally = _scan_parallel(total, n, MODE_PLAIN, threads, batch)
    record = CensusRecord(
        n=n,
        total=total,
        singular_count=tally.singular,
        sum_det_sq=tally.sum_det_sq,
        det_abs_histogram=dict(sorted(tally.histogram.items())),
        mode=MODE_PLAIN,
        wall_time=time.perf_counter() - started,
    )
    record.validate()
    return record


def census_symmetric(
    n: int,
    threads: int = 1,
    allow_n7: bool = False,
    batch: int = DEFAULT_BATCH,
    checkpoint_path: str | None = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> CensusRecord:
    """Census via sign-flip normal forms; identical tallies to census_plain."""
    limit = cap("SYMMETRIC_N_CAP")
    if allow_n7:
        limit = max(limit, 7)
    if n < 2:
        raise ValueError("symmetry-reduced census needs n >= 2")
    if n > limit:
        hint = " (pass allow_n7 to enable n=7)" if n == 7 else ""
        raise LimitExceeded(f"symmetry-reduced census capped at n={limit}{hint}")
    started = time.perf_counter()
    reduced_total = 1 << ((n - 1) * (n - 1))
    if checkpoint_path is not None:
        if threads > 1:
            raise ValueError("checkpointing requires a single worker")
        tally = _scan_with_checkpoint(
            reduced_total, n, MODE_SYMMETRIC, batch, checkpoint_path, checkpoint_every
        )
    else:
        tally = _scan_parallel(reduced_total, n, MODE_SYMMETRIC, threads, batch)
    orbit = 1 << (2 * n - 1)
    record = CensusRecord(
        n=n,
        total=1 << (n * n),
        singular_count=tally.singular * orbit,
        sum_det_sq=tally.sum_det_sq * orbit,
        det_abs_histogram={
            v: c * orbit for v, c in sorted(tally.histogram.items())
        },
        mode=MODE_SYMMETRIC,
        wall_time=time.perf_counter() - started,
    )
    record.validate()
    return record

"""Hyperplane concentration: count sign vectors orthogonal to an integer normal.

Three independent routes to the same quantity M = |{x in {+-1}^n : a.x = 0}|
and its probability M / 2^n:

* dp      -- exact dynamic programming over the full distribution of a.x;
* mitm    -- exact meet-in-the-middle over sorted half-sums, good for
             coefficients far beyond the DP range;
* fourier -- cosine-sum inversion of the characteristic function over Z/QZ,
             floating point, alias-free once Q exceeds the coefficient mass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import NormalVector
from .errors import AliasError, LimitExceeded
from .limits import cap

FOURIER_CHUNK = 1 << 16
FLOAT_TOLERANCE = 1e-9  # worst-case rounding for Q <= 1e7 stays well below this

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class AtomSpectrum:
    """Exact distribution of a.x over all 2^n sign vectors x."""

    n: int
    counts: dict[int, int]  # attainable sum -> count (only nonzero counts)

    @property
    def zero_count(self) -> int:
        return self.counts.get(0, 0)

    @property
    def max_count(self) -> int:
        return max(self.counts.values())


@dataclass(frozen=True)
class ConcentrationResult:
    """M and M/2^n for one normal, tagged with the method that produced it."""

    normal: NormalVector
    method: str
    m_count: int | None          # exact for dp/mitm, None for fourier
    probability: Fraction | None  # exact for dp/mitm, None for fourier
    prob_float: float
    modulus: int | None = None   # fourier only

    @property
    def n(self) -> int:
        return self.normal.n


def atom_spectrum(a: NormalVector, sum_cap: int | None = None) -> AtomSpectrum:
    """Exact counts of every attainable weighted sum, by prefix-sum DP."""
    limit = sum_cap if sum_cap is not None else cap("DP_SUM_CAP")
    radius = a.sum_abs
    if radius > limit:
        raise LimitExceeded(f"coefficient mass {radius} exceeds DP cap {limit}")
    if a.n <= 62:
        counts = _spectrum_dp_int64(a.coeffs, radius)
    else:
        counts = _spectrum_dp_python(a.coeffs, radius)
    return AtomSpectrum(a.n, counts)


def _spectrum_dp_int64(coeffs: Sequence[int], radius: int) -> dict[int, int]:
    # counts fit in int64 for n <= 62 (each is at most 2^n)
    size = 2 * radius + 1
    table = np.zeros(size, dtype=np.int64)
    table[radius] = 1
    span = 0
    for c in coeffs:
        shift = abs(c)
        new = np.zeros(size, dtype=np.int64)
        lo, hi = radius - span, radius + span + 1
        if shift == 0:
            new[lo:hi] = 2 * table[lo:hi]
        else:
            new[lo - shift : hi - shift] += table[lo:hi]
            new[lo + shift : hi + shift] += table[lo:hi]
        table = new
        span += shift
    return {
        int(s - radius): int(v) for s, v in enumerate(table) if v
    }


def _spectrum_dp_python(coeffs: Sequence[int], radius: int) -> dict[int, int]:
    size = 2 * radius + 1
    table = [0] * size
    table[radius] = 1
    span = 0
    for c in coeffs:
        shift = abs(c)
        new = [0] * size
        for s in range(radius - span, radius + span + 1):
            v = table[s]
            if v:
                if shift == 0:
                    new[s] += 2 * v
                else:
                    new[s - shift] += v
                    new[s + shift] += v
        table = new
        span += shift
    return {s - radius: v for s, v in enumerate(table) if v}


def count_mitm(a: NormalVector) -> int:
    """Exact orthogonal-vector count by matching negated sorted half-sums.

    Works for arbitrarily large coefficients; dimension capped because both
    halves are enumerated in full.
    """
    limit = cap("MITM_N_CAP")
    if a.n > limit:
        raise LimitExceeded(f"meet-in-the-middle capped at n={limit}, got {a.n}")
    mid = (a.n + 1) // 2
    left, right = a.coeffs[:mid], a.coeffs[mid:]
    if a.sum_abs < _INT64_SAFE:
        return _mitm_int64(left, right)
    return _mitm_python(left, right)


def _half_sums_int64(coeffs: Sequence[int]) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for c in coeffs:
        sums = np.concatenate([sums + c, sums - c])
    return sums


def _mitm_int64(left: Sequence[int], right: Sequence[int]) -> int:
    lv, lc = np.unique(_half_sums_int64(left), return_counts=True)
    rv, rc = np.unique(-_half_sums_int64(right), return_counts=True)
    _, li, ri = np.intersect1d(lv, rv, assume_unique=True, return_indices=True)
    return sum(int(lc[i]) * int(rc[j]) for i, j in zip(li, ri))


def _half_sums_python(coeffs: Sequence[int]) -> list[int]:
    sums = [0]
    for c in coeffs:
        sums = [s + c for s in sums] + [s - c for s in sums]
    sums.sort()
    return sums


def _mitm_python(left: Sequence[int], right: Sequence[int]) -> int:
    ls = _half_sums_python(left)
    rs = sorted(-s for s in _half_sums_python(right))
    total = 0
    i = j = 0
    while i < len(ls) and j < len(rs):
        if ls[i] < rs[j]:
            i += 1
        elif ls[i] > rs[j]:
            j += 1
        else:
            value = ls[i]
            run_i = i
            while run_i < len(ls) and ls[run_i] == value:
                run_i += 1
            run_j = j
            while run_j < len(rs) and rs[run_j] == value:
                run_j += 1
            total += (run_i - i) * (run_j - j)
            i, j = run_i, run_j
    return total


def choose_modulus(a: NormalVector) -> int:
    """Least alias-free modulus: attainable sums live in [-S, S], so Q = S + 1."""
    return a.sum_abs + 1


def fourier_probability(
    a: NormalVector,
    q: int | None = None,
    q_cap: int | None = None,
    chunk: int = FOURIER_CHUNK,
    threads: int = 1,
) -> float:
    """Concentration via the cosine identity (1/Q) sum_i prod_j cos(2 pi i a_j / Q).

    Averaging the characteristic function of a.x over Q-th roots of unity
    keeps only sums divisible by Q; with Q > sum |a_j| the only such sum is 0.
    """
    if q is None:
        q = choose_modulus(a)
    if q <= a.sum_abs:
        raise AliasError(
            f"modulus {q} <= coefficient mass {a.sum_abs}: aliased sums would count"
        )
    limit = q_cap if q_cap is not None else cap("FOURIER_Q_CAP")
    if q > limit:
        raise LimitExceeded(f"modulus {q} exceeds cap {limit}")
    residues = [c % q for c in a.coeffs]

    def chunk_sum(lo: int) -> float:
        i = np.arange(lo, min(lo + chunk, q), dtype=np.int64)
        prod = np.ones(len(i))
        for r in residues:
            # reduce i*r mod q in integers first: keeps cos arguments small
            prod *= np.cos((2.0 * math.pi / q) * ((i * r) % q))
        return float(prod.sum())

    starts = range(0, q, chunk)
    if threads <= 1:
        partials = [chunk_sum(lo) for lo in starts]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(chunk_sum, starts))
    return math.fsum(partials) / q


def littlewood_offord_bound(n: int) -> Fraction:
    """Largest possible concentration when every coefficient is nonzero."""
    return Fraction(math.comb(n, n // 2), 1 << n)


def concentration(
    a: NormalVector,
    method: str = "auto",
    q: int | None = None,
    threads: int = 1,
) -> ConcentrationResult:
    """Concentration of a normal by the requested route (auto: dp or mitm)."""
    if method == "auto":
        dp_work = a.n * (2 * a.sum_abs + 1)
        if a.sum_abs <= cap("DP_SUM_CAP") and (dp_work <= 1 << 22 or a.n > cap("MITM_N_CAP")):
            method = "dp"
        else:
            method = "mitm"
    if method == "dp":
        m = atom_spectrum(a).zero_count
    elif method == "mitm":
        m = count_mitm(a)
    elif method == "fourier":
        value = fourier_probability(a, q=q, threads=threads)
        return ConcentrationResult(
            normal=a,
            method="fourier",
            m_count=None,
            probability=None,
            prob_float=value,
            modulus=q if q is not None else choose_modulus(a),
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    prob = Fraction(m, 1 << a.n)
    return ConcentrationResult(
        normal=a, method=method, m_count=m, probability=prob, prob_float=float(prob)
    )

"""Exact integer linear algebra and sign-vector primitives.

Sign vectors are bit-packed (bit j set means entry j is -1), determinants are
computed over unbounded Python integers with fraction-free (Bareiss)
elimination, and randomness comes from counter-addressable Philox streams so
that any partition of work across workers reproduces the same values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DependentRows

MAX_DIMENSION = 64

# Stream-id namespaces; keeps independent subsystems off each other's words.
DOMAIN_GENERAL = 0
DOMAIN_PRIMES = 1
DOMAIN_MONTECARLO = 2
DOMAIN_HYPERPLANES = 3


@dataclass(frozen=True)
class SignVector:
    """Vector with entries in {+1, -1}; bit j of ``bits`` set means entry j = -1."""

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIMENSION:
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("bits outside the valid range for this dimension")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "SignVector":
        bits = 0
        for j, e in enumerate(entries):
            if e == -1:
                bits |= 1 << j
            elif e != 1:
                raise ValueError(f"entry {e!r} is not +1 or -1")
        return cls(len(entries), bits)

    def entry(self, j: int) -> int:
        return -1 if (self.bits >> j) & 1 else 1

    def entries(self) -> tuple[int, ...]:
        return tuple(-1 if (self.bits >> j) & 1 else 1 for j in range(self.n))

    def negated(self) -> "SignVector":
        return SignVector(self.n, self.bits ^ ((1 << self.n) - 1))


@dataclass(frozen=True)
class SignMatrix:
    """Square matrix of sign vectors (one per row)."""

    rows: tuple[SignVector, ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("empty matrix")
        if any(r.n != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]]) -> "SignMatrix":
        return cls(tuple(SignVector.from_entries(r) for r in entries))

    @classmethod
    def from_words(cls, n: int, words: Sequence[int]) -> "SignMatrix":
        mask = (1 << n) - 1
        return cls(tuple(SignVector(n, int(w) & mask) for w in words))

    def entries(self) -> list[list[int]]:
        return [list(r.entries()) for r in self.rows]

    def column(self, j: int) -> SignVector:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r.bits >> j) & 1:
                bits |= 1 << i
        return SignVector(self.n, bits)

    def transpose(self) -> "SignMatrix":
        return SignMatrix(tuple(self.column(j) for j in range(self.n)))


@dataclass(frozen=True)
class NormalVector:
    """Primitive integer hyperplane normal: gcd 1, first nonzero entry positive.

    Construction canonicalizes, so two normals describe the same hyperplane
    exactly when they compare equal.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        g = 0
        for c in coeffs:
            g = math.gcd(g, abs(c))
        if g == 0:
            raise ValueError("all coefficients are zero")
        coeffs = tuple(c // g for c in coeffs)
        for c in coeffs:
            if c:
                if c < 0:
                    coeffs = tuple(-x for x in coeffs)
                break
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def sum_abs(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def dot(self, v: SignVector) -> int:
        return sum(c * e for c, e in zip(self.coeffs, v.entries()))


# ---------------------------------------------------------------------------
# Deterministic randomness
# ---------------------------------------------------------------------------

_WORDS_PER_BLOCK = 4  # Philox-4x64 emits four 64-bit words per counter block


def stream_id(domain: int, index: int = 0) -> int:
    """Combine a subsystem domain with a local index into one stream id."""
    if not 0 <= index < (1 << 48):
        raise ValueError("stream index out of range")
    return (domain << 48) | index


@dataclass(frozen=True)
class Seed:
    """Master seed for a whole run; all randomness derives from it.

    A (master, stream, position) triple addresses one 64-bit word, so any
    split of work across workers that assigns disjoint positions reproduces
    bit-identical results regardless of the worker count.
    """

    master: int

    def __post_init__(self):
        if not 0 <= self.master < (1 << 64):
            raise ValueError("master seed must be an unsigned 64-bit integer")

    def stream(self, sid: int) -> "WordStream":
        return WordStream(self.master, sid)


class WordStream:
    """Counter-addressable stream of uniform 64-bit words."""

    def __init__(self, master: int, sid: int):
        self._key = np.array([master, sid], dtype=np.uint64)
        self._pos = 0

    def words_at(self, start: int, count: int) -> np.ndarray:
        """Words at absolute positions [start, start+count), independent of history."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        if count == 0:
            return np.empty(0, dtype=np.uint64)
        block, offset = divmod(start, _WORDS_PER_BLOCK)
        gen = np.random.Philox(key=self._key)
        if block:
            gen.advance(block)  # one advance step skips a 4-word block
        return gen.random_raw(offset + count)[offset:]

    def take(self, count: int) -> np.ndarray:
        """Next ``count`` words from the cursor."""
        out = self.words_at(self._pos, count)
        self._pos += count
        return out


def random_sign_vector(n: int, rng: WordStream) -> SignVector:
    """Uniform sign vector; consumes exactly one 64-bit word."""
    word = int(rng.take(1)[0])
    return SignVector(n, word & ((1 << n) - 1))


def random_sign_matrix(n: int, rng: WordStream) -> SignMatrix:
    """Uniform sign matrix; consumes exactly n words (one per row)."""
    return SignMatrix.from_words(n, rng.take(n))


# ---------------------------------------------------------------------------
# Exact determinants
# ---------------------------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination.

    All divisions are exact (Sylvester identity); intermediate entries are
    minors of the input, so magnitudes stay within the Hadamard bound.
    """
    n = len(rows)
    m = [[int(x) for x in row] for row in rows]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_exact(m: SignMatrix) -> int:
    """Exact determinant of a sign matrix."""
    return bareiss_det(m.entries())


def hadamard_bound_sq(n: int) -> int:
    """n**n, the square of the Hadamard determinant bound for sign matrices."""
    return n**n


def det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant of an integer matrix modulo an odd prime p."""
    n = len(rows)
    m = [[x % p for x in row] for row in rows]
    det = 1
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return 0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        v = m[k][k]
        det = det * v % p
        inv = pow(v, -1, p)
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                row_i = m[i]
                row_k = m[k]
                for j in range(k, n):
                    row_i[j] = (row_i[j] - f * row_k[j]) % p
    return det % p


_SMALL_PRIME_LIMIT = 46341  # > sqrt(2^31)
_small_primes: list[int] = []


def _sieve_small_primes() -> list[int]:
    if not _small_primes:
        sieve = bytearray(b"\x01") * (_SMALL_PRIME_LIMIT + 1)
        sieve[:2] = b"\x00\x00"
        for p in range(2, int(_SMALL_PRIME_LIMIT**0.5) + 1):
            if sieve[p]:
                start = p * p
                sieve[start :: p] = b"\x00" * len(range(start, _SMALL_PRIME_LIMIT + 1, p))
        _small_primes.extend(i for i, v in enumerate(sieve) if v)
    return _small_primes


def _is_prime_u31(x: int) -> bool:
    if x < 2:
        return False
    for p in _sieve_small_primes():
        if p * p > x:
            return True
        if x % p == 0:
            return x == p
    return True


def draw_screen_primes(seed: Seed, count: int = 3) -> tuple[int, ...]:
    """Draw distinct odd primes from [2^30, 2^31), deterministically per seed."""
    rng = seed.stream(stream_id(DOMAIN_PRIMES))
    primes: list[int] = []
    while len(primes) < count:
        for w in rng.take(16):
            candidate = (1 << 30) | (int(w) & ((1 << 30) - 1)) | 1
            if candidate not in primes and _is_prime_u31(candidate):
                primes.append(candidate)
                if len(primes) == count:
                    break
    return tuple(primes)


def is_singular_fast(m: SignMatrix, primes: Sequence[int]) -> bool:
    """Exact singularity test: modular screen with an exact fallback.

    A nonzero residue certifies a nonzero determinant. When every residue is
    zero and the prime product exceeds twice the Hadamard bound, the
    determinant must be zero outright; otherwise fall back to the exact
    determinant. Either way the answer is exact.
    """
    n = m.n
    if not primes:
        raise ValueError("need at least one screening prime")
    if len(set(primes)) != len(primes):
        raise ValueError("screening primes must be distinct")
    for p in primes:
        if p <= 2 * n or p % 2 == 0 or not _is_prime_u31(p):
            raise ValueError(f"{p} is not an odd prime above 2n")
    entries = m.entries()
    product = 1
    for p in primes:
        if det_mod(entries, p) != 0:
            return False
        product *= p
    if product * product > 4 * hadamard_bound_sq(n):
        return True  # |det| < product and det ≡ 0 mod product
    return bareiss_det(entries) == 0


# ---------------------------------------------------------------------------
# Hyperplane normals
# ---------------------------------------------------------------------------


def normal_from_rows(rows: Sequence[SignVector]) -> NormalVector:
    """Canonical primitive normal of the hyperplane spanned by n-1 sign vectors.

    Equivalent to the vector of signed cofactors along an appended row,
    reduced by the gcd and sign-normalized; computed via one fraction-free
    elimination plus exact rational back-substitution. Raises DependentRows
    when the rows have rank below n-1.
    """
    if not rows:
        raise ValueError("need at least one row")
    n = rows[0].n
    if len(rows) != n - 1 or any(r.n != n for r in rows):
        raise ValueError(f"expected {n - 1} rows of dimension {n}")

    m = [list(r.entries()) for r in rows]
    height = n - 1
    pivot_cols: list[int] = []
    row = 0
    prev = 1
    for col in range(n):
        if row == height:
            break
        pivot_row = None
        for i in range(row, height):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != row:
            m[row], m[pivot_row] = m[pivot_row], m[row]
        pivot = m[row][col]
        for i in range(row + 1, height):
            factor = m[i][col]
            row_i = m[i]
            row_p = m[row]
            for j in range(col + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_p[j]) // prev
            row_i[col] = 0
        prev = pivot
        pivot_cols.append(col)
        row += 1
    if row < height:
        raise DependentRows(f"rows have rank {row} < {height}")

    free_col = next(c for c in range(n) if c not in pivot_cols)
    x: list[Fraction] = [Fraction(0)] * n
    x[free_col] = Fraction(1)
    for r_idx in range(height - 1, -1, -1):
        col = pivot_cols[r_idx]
        acc = Fraction(0)
        for j in range(col + 1, n):
            if x[j]:
                acc += m[r_idx][j] * x[j]
        x[col] = -acc / m[r_idx][col]

    denom_lcm = 1
    for v in x:
        denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in x]
    normal = NormalVector(tuple(ints))
    for r in rows:
        if normal.dot(r) != 0:
            raise AssertionError("kernel extraction lost exact orthogonality")
    return normal

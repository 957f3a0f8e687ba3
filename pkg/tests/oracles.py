"""Independent brute-force oracles used by the test suite.

Deliberately naive: recursive Laplace expansion, full enumeration, Fraction
arithmetic. Nothing here shares code with the package implementation.
"""
import itertools
from fractions import Fraction


def laplace_det(m):
    """Recursive cofactor expansion along the first row."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * laplace_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def all_sign_matrices(n):
    for bits in range(1 << (n * n)):
        yield [
            [-1 if (bits >> (i * n + j)) & 1 else 1 for j in range(n)]
            for i in range(n)
        ]


def all_sign_vectors(n):
    return [
        tuple(-1 if (bits >> j) & 1 else 1 for j in range(n))
        for bits in range(1 << n)
    ]


def zero_count_brute(coeffs):
    """Number of sign vectors orthogonal to the coefficient vector."""
    n = len(coeffs)
    return sum(
        1
        for x in all_sign_vectors(n)
        if sum(c * e for c, e in zip(coeffs, x)) == 0
    )


def spectrum_brute(coeffs):
    """Exact distribution of the weighted sum over all sign vectors."""
    n = len(coeffs)
    out = {}
    for x in all_sign_vectors(n):
        s = sum(c * e for c, e in zip(coeffs, x))
        out[s] = out.get(s, 0) + 1
    return out


def cofactor_normal_brute(rows):
    """Signed cofactors of the (n-1) x n row stack, reduced and sign-fixed."""
    import math

    n = len(rows[0])
    cof = []
    for j in range(n):
        minor = [[r[c] for c in range(n) if c != j] for r in rows]
        d = laplace_det(minor) if n > 1 else 1
        cof.append(d if j % 2 == 0 else -d)
    g = 0
    for c in cof:
        g = math.gcd(g, abs(c))
    if g == 0:
        return None
    cof = [c // g for c in cof]
    for c in cof:
        if c:
            if c < 0:
                cof = [-x for x in cof]
            break
    return tuple(cof)


def lazy_zero_atom_brute(coeffs, half_probs):
    """P(sum of weighted lazy steps = 0); half_probs = (p_0, p_1, ..., p_s)."""
    s = len(half_probs) - 1
    steps = range(-s, s + 1)
    total = Fraction(0)
    for ys in itertools.product(steps, repeat=len(coeffs)):
        if sum(c * y for c, y in zip(coeffs, ys)) == 0:
            w = Fraction(1)
            for y in ys:
                w *= half_probs[abs(y)]
            total += w
    return total


def pair_event_brute(m):
    """Two rows or two columns equal up to sign."""
    n = len(m)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i] == m[j] or m[i] == [-x for x in m[j]]:
                return True
    cols = [[m[i][j] for i in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if cols[i] == cols[j] or cols[i] == [-x for x in cols[j]]:
                return True
    return False


# Frozen values computed with the oracles above (and, for n >= 5, with an
# independent normalized enumeration script) before the implementation was
# written. Keys: n -> (singular_count, sum_det_sq, {|det|: count}).
CENSUS_EXPECTED = {
    1: (0, 2, {1: 2}),
    2: (8, 32, {0: 8, 2: 8}),
    3: (320, 3072, {0: 320, 4: 192}),
    4: (43264, 1572864, {0: 43264, 8: 21504, 16: 768}),
    5: (
        22003712,
        4026531840,
        {0: 22003712, 16: 10260480, 32: 1228800, 48: 61440},
    ),
    6: (
        43090149376,
        49478023249920,
        {
            0: 43090149376,
            32: 19871170560,
            64: 4972216320,
            96: 592773120,
            128: 178421760,
            160: 14745600,
        },
    ),
}

# n -> exact probability that some row pair or column pair is equal up to sign.
PAIR_EVENT_EXPECTED = {
    1: Fraction(0),
    2: Fraction(1, 2),
    3: Fraction(5, 8),
    4: Fraction(169, 256),
}

# n -> (distinct hyperplane count, sum of concentrations, P_n)
HYPERPLANE_SUM_EXPECTED = {
    2: (2, Fraction(1), Fraction(1, 2)),
    3: (6, Fraction(3), Fraction(5, 8)),
    4: (20, Fraction(9), Fraction(169, 256)),
}

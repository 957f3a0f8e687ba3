"""Core primitives: packed vectors, exact determinants, normals, RNG streams."""
import math

import numpy as np
import pytest

from signlab import (
    DependentRows,
    NormalVector,
    Seed,
    SignMatrix,
    SignVector,
    det_exact,
    draw_screen_primes,
    is_singular_fast,
    normal_from_rows,
    random_sign_matrix,
    random_sign_vector,
)
from signlab.core import bareiss_det, det_mod, stream_id

from oracles import cofactor_normal_brute, laplace_det


def test_sign_vector_round_trip():
    v = SignVector.from_entries([1, -1, -1, 1])
    assert v.bits == 0b0110
    assert v.entries() == (1, -1, -1, 1)
    assert v.entry(0) == 1 and v.entry(2) == -1
    assert v.negated().entries() == (-1, 1, 1, -1)


def test_sign_vector_validation():
    with pytest.raises(ValueError):
        SignVector.from_entries([1, 0])
    with pytest.raises(ValueError):
        SignVector(2, 4)  # bit above position n-1
    with pytest.raises(ValueError):
        SignVector(0, 0)


def test_sign_matrix_transpose_and_columns():
    m = SignMatrix.from_entries([[1, -1], [1, 1]])
    assert m.column(0).entries() == (1, 1)
    assert m.column(1).entries() == (-1, 1)
    assert m.transpose().entries() == [[1, 1], [-1, 1]]
    with pytest.raises(ValueError):
        SignMatrix.from_entries([[1, 1], [1, 1], [1, -1]])


def test_det_exact_small_examples():
    assert det_exact(SignMatrix.from_entries([[1, 1], [1, 1]])) == 0
    assert det_exact(SignMatrix.from_entries([[1, 1], [1, -1]])) == -2
    assert det_exact(SignMatrix.from_entries([[1, 1, 1], [1, 1, -1], [1, -1, 1]])) == -4


def test_det_exact_matches_laplace_oracle():
    seed = Seed(101)
    for n in range(1, 7):
        rng = seed.stream(stream_id(0, n))
        for _ in range(40):
            m = random_sign_matrix(n, rng)
            assert det_exact(m) == laplace_det(m.entries())


def test_det_transpose_invariance():
    rng = Seed(7).stream(0)
    for _ in range(60):
        m = random_sign_matrix(6, rng)
        assert det_exact(m) == det_exact(m.transpose())


def test_det_sign_flip_covariance():
    rng = Seed(8).stream(0)
    for n in range(2, 9):
        m = random_sign_matrix(n, rng)
        d = det_exact(m)
        for i in range(n):
            flipped = m.entries()
            flipped[i] = [-x for x in flipped[i]]
            assert det_exact(SignMatrix.from_entries(flipped)) == -d
        for j in range(n):
            flipped = m.entries()
            for row in flipped:
                row[j] = -row[j]
            assert det_exact(SignMatrix.from_entries(flipped)) == -d


def test_hadamard_bound():
    rng = Seed(9).stream(0)
    for n in range(1, 9):
        for _ in range(30):
            m = random_sign_matrix(n, rng)
            assert abs(det_exact(m)) ** 2 <= n**n


def test_bareiss_on_general_integers():
    m = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    assert bareiss_det(m) == laplace_det(m)
    m2 = [[0, 2], [5, 7]]
    assert bareiss_det(m2) == -10


def test_det_mod_agrees_with_exact():
    rng = Seed(10).stream(0)
    p = 1009
    for _ in range(50):
        m = random_sign_matrix(7, rng)
        assert det_mod(m.entries(), p) == det_exact(m) % p


def test_is_singular_fast_examples():
    assert is_singular_fast(SignMatrix.from_entries([[1, 1], [1, 1]]), [1009, 2003, 3001])
    assert not is_singular_fast(SignMatrix.from_entries([[1, 1], [1, -1]]), [1009])


def test_is_singular_fast_validates_primes():
    m = SignMatrix.from_entries([[1, 1], [1, -1]])
    with pytest.raises(ValueError):
        is_singular_fast(m, [])
    with pytest.raises(ValueError):
        is_singular_fast(m, [1009, 1009])
    with pytest.raises(ValueError):
        is_singular_fast(m, [4])  # <= 2n
    with pytest.raises(ValueError):
        is_singular_fast(m, [1001])  # 7 * 11 * 13


def test_is_singular_fast_matches_det_exact():
    seed = Seed(20260809)
    primes = draw_screen_primes(seed)
    rng = seed.stream(stream_id(0, 99))
    hits = 0
    for _ in range(10_000):
        m = random_sign_matrix(10, rng)
        singular = is_singular_fast(m, primes)
        hits += singular
        assert singular == (det_exact(m) == 0)
    assert hits > 0  # singular 10x10 matrices do occur in 10^4 draws


def test_draw_screen_primes_properties():
    primes = draw_screen_primes(Seed(5), count=3)
    assert len(set(primes)) == 3
    for p in primes:
        assert 1 << 30 <= p < 1 << 31 and p % 2 == 1
    assert primes == draw_screen_primes(Seed(5), count=3)
    assert primes != draw_screen_primes(Seed(6), count=3)


def test_normal_vector_canonicalization():
    assert NormalVector((2, -2, 0)).coeffs == (1, -1, 0)
    assert NormalVector((-3, 6)).coeffs == (1, -2)
    assert NormalVector((0, -5)).coeffs == (0, 1)
    with pytest.raises(ValueError):
        NormalVector((0, 0, 0))


def test_normal_from_rows_examples():
    assert normal_from_rows([SignVector.from_entries([1, 1])]).coeffs == (1, -1)
    rows = [SignVector.from_entries([1, 1, 1]), SignVector.from_entries([1, 1, -1])]
    assert normal_from_rows(rows).coeffs == (1, -1, 0)
    dep = [SignVector.from_entries([1, 1, 1]), SignVector.from_entries([-1, -1, -1])]
    with pytest.raises(DependentRows):
        normal_from_rows(dep)


def test_normal_from_rows_matches_cofactor_oracle():
    seed = Seed(77)
    for n in range(2, 7):
        rng = seed.stream(stream_id(0, 1000 + n))
        found = 0
        while found < 25:
            rows = [random_sign_vector(n, rng) for _ in range(n - 1)]
            expected = cofactor_normal_brute([list(r.entries()) for r in rows])
            if expected is None:
                with pytest.raises(DependentRows):
                    normal_from_rows(rows)
                continue
            got = normal_from_rows(rows)
            assert got.coeffs == expected
            assert all(got.dot(r) == 0 for r in rows)
            found += 1


def test_rng_partition_independence():
    s = Seed(123456789)
    st = s.stream(42)
    full = st.words_at(0, 64)
    # any split of positions reproduces the same words
    for start in (0, 1, 3, 4, 17, 63):
        part = s.stream(42).words_at(start, 64 - start)
        assert (part == full[start:]).all()
    # sequential take() walks the same positions
    st2 = s.stream(42)
    seq = np.concatenate([st2.take(k) for k in (1, 2, 3, 10, 48)])
    assert (seq == full).all()


def test_rng_streams_and_seeds_independent():
    a = Seed(1).stream(0).words_at(0, 8)
    b = Seed(1).stream(1).words_at(0, 8)
    c = Seed(2).stream(0).words_at(0, 8)
    assert not (a == b).all()
    assert not (a == c).all()


def test_random_sign_matrix_deterministic():
    m1 = random_sign_matrix(8, Seed(3).stream(5))
    m2 = random_sign_matrix(8, Seed(3).stream(5))
    assert m1 == m2


def test_random_sign_entries_unbiased():
    # CLT guard at 4 sigma: per-entry mean within 0.02 over 1e5 samples
    rng = Seed(31337).stream(stream_id(0, 8))
    words = rng.take(100_000)
    bits = (words[:, None] >> np.arange(8, dtype=np.uint64)) & np.uint64(1)
    means = 1.0 - 2.0 * bits.astype(float).mean(axis=0)
    assert np.all(np.abs(means) < 0.02)


def test_stream_id_namespacing():
    assert stream_id(2, 5) != stream_id(3, 5)
    assert stream_id(2, 5) != stream_id(2, 6)
    with pytest.raises(ValueError):
        stream_id(0, 1 << 48)

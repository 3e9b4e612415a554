"""Matrix algebra over GF(q): rank, kernel, inverse, GL sampling."""

import json
import random

import pytest

from muxnet import GF, FieldMatrix, enumerate_gl, random_matrix, sample_full_rank, sample_gl
from muxnet.errors import ShapeError, SingularMatrix
from muxnet.matrix import gl_order

CHI2_CRIT_DF5 = 20.515  # alpha = 0.001


# ---------------------------------------------------------
# rank
# ---------------------------------------------------------

def test_rank_identity():
    assert FieldMatrix.identity(GF(2), 3).rank() == 3


def test_rank_zero_matrix():
    assert FieldMatrix.zeros(GF(3), 2, 4).rank() == 0


def test_rank_repeated_row():
    assert FieldMatrix(GF(2), [[1, 0], [1, 0]]).rank() == 1


# ---------------------------------------------------------
# kernel
# ---------------------------------------------------------

def test_kernel_of_identity_is_empty():
    k = FieldMatrix.identity(GF(2), 2).kernel()
    assert k.ncols == 0 and k.nrows == 2


def test_kernel_of_zero_row_is_full():
    k = FieldMatrix.zeros(GF(2), 1, 2).kernel()
    assert k.ncols == 2


def test_kernel_single_constraint():
    M = FieldMatrix(GF(2), [[1, 0]])
    k = M.kernel()
    assert k.as_tuples() == ((0,), (1,))  # basis {(0,1)^T}


def test_kernel_columns_are_annihilated_and_independent():
    rng = random.Random(7)
    for q in (2, 3, 4, 9):
        f = GF(q)
        for _ in range(30):
            M = random_matrix(f, rng.randrange(1, 5), rng.randrange(1, 6), rng)
            K = M.kernel()
            assert M.rank() + K.ncols == M.ncols
            if K.ncols:
                prod = M @ K
                assert all(v == 0 for row in prod.rows_list() for v in row)
                assert K.rank() == K.ncols


# ---------------------------------------------------------
# inverse and solve
# ---------------------------------------------------------

def test_inverse_identity():
    eye = FieldMatrix.identity(GF(5), 3)
    assert eye.inverse() == eye


def test_inverse_involution_swap():
    swap = FieldMatrix(GF(2), [[0, 1], [1, 0]])
    assert swap.inverse() == swap


def test_inverse_unipotent():
    M = FieldMatrix(GF(2), [[1, 1], [0, 1]])
    Minv = M.inverse()
    assert Minv == M  # self-inverse over GF(2)
    assert M @ Minv == FieldMatrix.identity(GF(2), 2)


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrix):
        FieldMatrix(GF(2), [[1, 0], [1, 0]]).inverse()
    with pytest.raises(SingularMatrix):
        FieldMatrix(GF(3), [[1, 2], [2, 1]]).solve([1, 0])


def test_inverse_roundtrip_random():
    rng = random.Random(11)
    for q in (2, 3, 5, 9, 16):
        f = GF(q)
        for _ in range(25):
            n = rng.randrange(1, 6)
            M = sample_gl(n, f, rng)
            Minv = M.inverse()
            eye = FieldMatrix.identity(f, n)
            assert M @ Minv == eye
            assert Minv @ M == eye


def test_solve_matches_inverse():
    rng = random.Random(13)
    f = GF(7)
    for _ in range(30):
        n = rng.randrange(1, 5)
        M = sample_gl(n, f, rng)
        b = [f.rand(rng) for _ in range(n)]
        x = M.solve(b)
        assert M.mul_vector(x) == b


def test_shape_errors():
    f = GF(2)
    with pytest.raises(ShapeError):
        FieldMatrix(f, [[1, 0], [1]])
    with pytest.raises(ShapeError):
        FieldMatrix(f, [[1, 0]]) @ FieldMatrix(f, [[1, 0]])
    with pytest.raises(ShapeError):
        FieldMatrix(f, [[1, 0]]).inverse()
    with pytest.raises(ShapeError):
        FieldMatrix.identity(f, 2).solve([1])


# ---------------------------------------------------------
# GL sampling
# ---------------------------------------------------------

def test_gl1_gf2_is_the_singleton():
    rng = random.Random(3)
    for _ in range(50):
        assert sample_gl(1, GF(2), rng).as_tuples() == ((1,),)


def test_gl_sampler_always_invertible():
    rng = random.Random(5)
    for q in (2, 3):
        f = GF(q)
        for _ in range(100):
            assert sample_gl(2, f, rng).is_invertible()


def test_gl22_sampling_uniform_chi2():
    rng = random.Random(20210907)
    members = enumerate_gl(2, GF(2))
    assert len(members) == 6
    counts = {m.as_tuples(): 0 for m in members}
    n = 6000
    for _ in range(n):
        counts[sample_gl(2, GF(2), rng).as_tuples()] += 1
    expected = n / 6
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 <= CHI2_CRIT_DF5


def test_enumerate_gl_orders():
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert len(enumerate_gl(2, GF(3))) == 48
    assert len({m.as_tuples() for m in enumerate_gl(3, GF(2))}) == gl_order(3, 2) == 168


def test_sample_full_rank_rectangular():
    rng = random.Random(17)
    for _ in range(50):
        M = sample_full_rank(GF(2), 2, 4, rng)
        assert M.rank() == 2
    with pytest.raises(ShapeError):
        sample_full_rank(GF(2), 3, 2, rng)


# ---------------------------------------------------------
# serialization
# ---------------------------------------------------------

def test_json_roundtrip():
    f = GF(4)
    M = FieldMatrix(f, [[0, 1, 2], [3, 1, 0]])
    doc = M.to_json()
    assert doc == {"rows": 2, "cols": 3, "q": 4, "entries": [0, 1, 2, 3, 1, 0]}
    back = FieldMatrix.from_json(json.loads(json.dumps(doc)))
    assert back == M

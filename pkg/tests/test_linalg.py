import random
from fractions import Fraction

import pytest

from fanoscope.linalg import (LinalgError, det, hnf, identity,
                              index_in_saturation, kernel_basis, lex_positive,
                              mat_mul, primitive, snf)


def test_hnf_identity():
    h, u = hnf(identity(3))
    assert h == identity(3) and u == identity(3)


def test_hnf_small():
    a = [[2, 4], [1, 3]]
    h, u = hnf(a)
    assert mat_mul(u, a) == h
    assert abs(det(u)) == 1
    # convention: pivots positive, entries above reduced into [0, pivot)
    assert h == [[1, 1], [0, 2]]


def test_hnf_zero_rows():
    h, u = hnf([[1, 2], [0, 0], [2, 4]])
    assert h[-1] == [0, 0]
    assert mat_mul(u, [[1, 2], [0, 0], [2, 4]]) == h


def test_snf_examples():
    s, u, v = snf([[2, 0], [0, 3]])
    assert [s[0][0], s[1][1]] == [1, 6]
    s, _, _ = snf(identity(3))
    assert s == identity(3)
    s, _, _ = snf([[0]])
    assert s == [[0]]


def test_kernel_basis():
    assert len(kernel_basis([[1, 1, 1]])) == 2
    assert kernel_basis([[1, 0], [0, 1]]) == []
    ker = kernel_basis([[1, -1, 0], [0, 1, -1]])
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == v[1] == v[2] != 0


def test_saturation_index():
    assert index_in_saturation([2, 2], [[1, 1]]) == 2
    assert index_in_saturation([3, 6, 9], [[1, 2, 3]]) == 3
    assert index_in_saturation([2, 4], [[1, 2], [0, 4]]) == 2
    with pytest.raises(LinalgError, match="not in span"):
        index_in_saturation([1, 0], [[0, 1]])


def test_saturation_property():
    rng = random.Random(11)
    for _ in range(50):
        w = [rng.randrange(-5, 6) for _ in range(3)]
        if not any(w):
            continue
        w = list(primitive(w))
        k = rng.randrange(1, 9)
        assert index_in_saturation([k * x for x in w], [w]) == k


def test_normal_form_properties_random():
    rng = random.Random(5)
    for _ in range(150):
        m = rng.randrange(1, 4)
        n = rng.randrange(1, 4)
        a = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        h, u = hnf(a)
        assert mat_mul(u, a) == h
        assert abs(det(u)) == 1
        s, us, vs = snf(a)
        assert mat_mul(mat_mul(us, a), vs) == s
        assert abs(det(us)) == 1 and abs(det(vs)) == 1
        diag = [s[i][i] for i in range(min(m, n))]
        for i in range(len(diag) - 1):
            if diag[i]:
                assert diag[i + 1] % diag[i] == 0
            else:
                assert diag[i + 1] == 0
        ker = kernel_basis([[Fraction(x) for x in row] for row in a])
        for vec in ker:
            for row in a:
                assert sum(f * x for f, x in zip(vec, row)) == 0


def test_primitive_and_sign():
    assert primitive((2, 4, 6)) == (1, 2, 3)
    assert primitive((Fraction(1, 2), Fraction(-1, 3), 0)) == (3, -2, 0)
    assert lex_positive((0, -2, 1)) == (0, 2, -1)

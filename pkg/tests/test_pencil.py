import numpy as np
import pytest

from sympencil import (
    INF,
    MinimalPair,
    Pencil,
    SingularTransformError,
    StructureDescriptor,
    SymmetricPencil,
    as_complex_matrix,
    build_L,
    build_block,
    congruence,
    descriptor_to_pencil,
    evaluate,
    frobenius_inner,
    generic_kcf,
    GenericComponent,
    normal_rank,
    strict_equivalence,
)


def _eval_rank(p, point=0.37 - 0.21j):
    return np.linalg.matrix_rank(evaluate(p, point))


def test_as_complex_matrix_is_readonly_copy():
    data = [[1, 2], [3, 4]]
    M = as_complex_matrix(data)
    assert M.dtype == np.complex128 and not M.flags.writeable
    with pytest.raises(ValueError):
        as_complex_matrix([[1, np.nan]])


def test_pencil_shape_mismatch():
    with pytest.raises(ValueError):
        Pencil(np.eye(2), np.eye(3))


def test_symmetric_pencil_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymmetricPencil([[0, 1], [0, 0]], np.eye(2))


def test_evaluate_constant_pencil():
    p = Pencil(np.zeros((2, 2)), np.eye(2))
    np.testing.assert_array_equal(evaluate(p, 5), np.eye(2))


def test_evaluate_M1_at_zero():
    M1 = build_block(MinimalPair(1))
    expected = np.zeros((3, 3))
    expected[1, 2] = expected[2, 1] = 1
    np.testing.assert_array_equal(evaluate(M1, 0), expected)


def test_evaluate_at_infinity_is_leading_coefficient():
    P = SymmetricPencil(np.diag([1, 1, 0]), np.diag([-1, -2, 0]))
    np.testing.assert_array_equal(evaluate(P, INF), np.diag([1, 1, 0]))


def test_frobenius_inner():
    rng = np.random.default_rng(0)
    p = Pencil(rng.standard_normal((3, 2)), rng.standard_normal((3, 2)))
    val = frobenius_inner(p, p)
    assert val.imag == 0 and val.real == pytest.approx(p.norm() ** 2)
    I2, Z2 = np.eye(2), np.zeros((2, 2))
    assert frobenius_inner(Pencil(I2, Z2), Pencil(Z2, I2)) == 0
    # two unit entries in each coefficient of the explicit 3x3 block
    M1 = build_block(MinimalPair(1))
    assert frobenius_inner(M1, M1) == 4


def test_congruence_identity_and_permutation():
    s = SymmetricPencil(np.diag([1, 1, 0]), np.diag([-1, -2, 0]))
    assert congruence(s, np.eye(3)) == s
    swap = np.eye(3)[[1, 0, 2]]
    assert congruence(s, swap) == SymmetricPencil(np.diag([1, 1, 0]), np.diag([-2, -1, 0]))


def test_congruence_preserves_rank():
    K1 = descriptor_to_pencil(generic_kcf(GenericComponent(3, 2, 1)))
    W = np.random.default_rng(4).standard_normal((3, 3))
    s = congruence(K1, W)
    assert isinstance(s, SymmetricPencil)
    assert _eval_rank(s) == 2 == normal_rank(s)


def test_congruence_strict_rejects_singular():
    s = SymmetricPencil(np.eye(2), np.zeros((2, 2)))
    with pytest.raises(SingularTransformError):
        congruence(s, np.array([[1, 1], [1, 1]]), strict=True)


def test_strict_equivalence():
    L1 = build_L(1)
    assert strict_equivalence(L1, np.eye(1), np.eye(2)) == L1
    rng = np.random.default_rng(2)
    q = strict_equivalence(L1, rng.standard_normal((1, 1)) + 2, rng.standard_normal((2, 2)))
    assert _eval_rank(q) == 1 == normal_rank(q)
    with pytest.raises(SingularTransformError):
        strict_equivalence(L1, np.zeros((1, 1)), np.eye(2))


def test_pencil_arithmetic():
    p = Pencil(np.eye(2), np.ones((2, 2)))
    assert (p + p) == p * 2
    assert (p - p) == Pencil.zeros(2, 2)
    assert p.transpose().transpose() == p
    assert p.reversal().reversal() == p
    assert p.allclose(p + Pencil(1e-15 * np.eye(2), np.zeros((2, 2))))


def test_zero_size_pencils():
    assert descriptor_to_pencil(StructureDescriptor(())).shape == (0, 0)
    assert build_L(0).shape == (0, 1)

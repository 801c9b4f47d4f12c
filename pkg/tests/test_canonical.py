import numpy as np
import pytest

from sympencil import (
    INF,
    AnonymousJordan,
    GenericComponent,
    JordanFinite,
    JordanInfinite,
    LeftMinimal,
    MinimalPair,
    RightMinimal,
    StructureDescriptor,
    SymmetricPencil,
    build_L,
    build_block,
    descriptor_to_pencil,
    direct_sum,
    evaluate,
    generic_kcf,
    weyr_eigenvalue,
    weyr_minimal,
)

Q_EXAMPLE = SymmetricPencil(
    [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
)


def test_block_validation():
    with pytest.raises(ValueError):
        MinimalPair(-1)
    with pytest.raises(ValueError):
        JordanFinite(0, 1.0)
    with pytest.raises(ValueError):
        JordanInfinite(0)


def test_build_L():
    L1 = build_L(1)
    np.testing.assert_array_equal(L1.A, [[1, 0]])
    np.testing.assert_array_equal(L1.B, [[0, 1]])
    assert build_L(0).shape == (0, 1)
    L2 = build_L(2)
    assert L2.shape == (2, 3) and np.linalg.matrix_rank(evaluate(L2, 1)) == 2


def test_build_small_blocks():
    assert build_block(MinimalPair(0)) == SymmetricPencil.zeros(1)
    assert build_block(JordanFinite(1, 3 + 1j)) == SymmetricPencil([[1]], [[-(3 + 1j)]])
    assert build_block(JordanInfinite(1)) == SymmetricPencil([[0]], [[1]])


def test_jordan_two_at_zero():
    J = build_block(JordanFinite(2, 0))
    np.testing.assert_array_equal(J.A, [[0, 1], [1, 0]])
    np.testing.assert_array_equal(J.B, [[1, 0], [0, 0]])


def test_jordan_infinite_three():
    J = build_block(JordanInfinite(3))
    np.testing.assert_array_equal(J.A, np.fliplr(np.eye(3, k=1)))
    np.testing.assert_array_equal(J.B, np.fliplr(np.eye(3)))


@pytest.mark.parametrize("block", [MinimalPair(2), JordanFinite(4, 0.5j), JordanInfinite(3)])
def test_blocks_are_symmetric(block):
    p = build_block(block)
    assert isinstance(p, SymmetricPencil) and p.shape == block.shape


def test_direct_sum():
    assert direct_sum([]).shape == (0, 0)
    s = direct_sum([build_block(MinimalPair(1)), build_block(JordanFinite(1, 3))])
    assert s.shape == (4, 4) and np.linalg.matrix_rank(evaluate(s, 0.3 + 0.7j)) == 3
    P = direct_sum([build_block(JordanFinite(1, 1)), build_block(JordanFinite(1, 2)), build_block(MinimalPair(0))])
    assert P == SymmetricPencil(np.diag([1, 1, 0]), np.diag([-1, -2, 0]))


def test_descriptor_to_pencil():
    assert descriptor_to_pencil(StructureDescriptor((MinimalPair(0),))) == SymmetricPencil.zeros(1)
    assert descriptor_to_pencil(generic_kcf(GenericComponent(3, 2, 1))) == Q_EXAMPLE
    with pytest.raises(ValueError):
        descriptor_to_pencil(GenericComponent(3, 2, 0).bundle_descriptor())


def test_descriptor_canonical_order_and_summary():
    d = StructureDescriptor((JordanInfinite(1), JordanFinite(1, 2), MinimalPair(0), MinimalPair(2), JordanFinite(2, 2)))
    assert d.blocks == (MinimalPair(2), MinimalPair(0), JordanFinite(2, 2), JordanFinite(1, 2), JordanInfinite(1))
    assert d.n == 10 and d.rank == 8 and d.degree_sum == 2
    assert d.num_distinct_eigenvalues == 2 and d.simple_eigenvalue_count() == 1


def test_non_symmetric_descriptor():
    d = StructureDescriptor((RightMinimal(1), LeftMinimal(0)))
    assert not d.is_symmetric and d.shape == (2, 2)
    assert descriptor_to_pencil(d).shape == (2, 2)


def test_generic_component_validation():
    with pytest.raises(ValueError):
        GenericComponent(1, 0, 0)
    with pytest.raises(ValueError):
        GenericComponent(3, 3, 0)
    with pytest.raises(ValueError):
        GenericComponent(3, 2, 2)
    assert len(GenericComponent.all_for(7, 5)) == 3


def test_generic_kcf_examples():
    assert generic_kcf(GenericComponent(3, 2, 1)) == StructureDescriptor((MinimalPair(1),))
    d = generic_kcf(GenericComponent(3, 2, 0), [1, 2])
    assert d == StructureDescriptor((MinimalPair(0), JordanFinite(1, 1), JordanFinite(1, 2)))
    c = GenericComponent(7, 4, 2)
    assert (c.alpha, c.s) == (0, 2)
    assert generic_kcf(c) == StructureDescriptor((MinimalPair(1), MinimalPair(1), MinimalPair(0)))
    with pytest.raises(ValueError):
        generic_kcf(GenericComponent(3, 2, 0), [1])
    with pytest.raises(ValueError):
        generic_kcf(GenericComponent(3, 2, 0), [1, 1])


def test_generic_kcf_size_and_rank():
    for n in range(2, 9):
        for r in range(1, n):
            for c in GenericComponent.all_for(n, r):
                d = generic_kcf(c, rng=np.random.default_rng(0))
                assert d.n == n and d.rank == r


def test_weyr_minimal():
    assert weyr_minimal(StructureDescriptor((MinimalPair(1), MinimalPair(0)))) == (2, 1)
    assert weyr_minimal(StructureDescriptor((JordanFinite(2, 1),))) == ()
    for n in range(2, 9):
        for r in range(1, n):
            for c in GenericComponent.all_for(n, r):
                expected = (n - r,) * (c.alpha + 1) + ((c.s,) if c.s else ())
                assert weyr_minimal(c.bundle_descriptor()) == expected


def test_weyr_eigenvalue():
    assert weyr_eigenvalue(StructureDescriptor((JordanFinite(1, 5), JordanFinite(1, 7))), 5) == (1,)
    d = StructureDescriptor((JordanFinite(3, 0.5), JordanFinite(1, 0.5)))
    assert weyr_eigenvalue(d, 0.5) == (2, 1, 1)
    assert weyr_eigenvalue(StructureDescriptor((JordanInfinite(2),)), INF) == (1, 1)
    assert weyr_eigenvalue(d, 9) == ()


def test_bundle_level():
    a = StructureDescriptor((MinimalPair(0), JordanFinite(2, 1), JordanFinite(1, 3)))
    b = StructureDescriptor((MinimalPair(0), JordanFinite(2, -4j), JordanFinite(1, 0)))
    c = StructureDescriptor((MinimalPair(0), JordanFinite(2, 1), JordanFinite(1, 1)))
    assert a.same_bundle(b) and not a.same_orbit(b)
    assert not a.same_bundle(c)
    bundle = a.to_bundle()
    assert bundle.level == "bundle"
    assert all(isinstance(x, (MinimalPair, AnonymousJordan)) for x in bundle.blocks)
    # infinity is one more anonymous eigenvalue
    d = StructureDescriptor((MinimalPair(0), JordanInfinite(2), JordanFinite(1, 3)))
    assert a.same_bundle(d)


def test_same_orbit_tolerance():
    a = StructureDescriptor((JordanFinite(1, 1.0),))
    assert a.same_orbit(StructureDescriptor((JordanFinite(1, 1.0 + 1e-9),)))
    assert not a.same_orbit(StructureDescriptor((JordanFinite(1, 1.001),)))

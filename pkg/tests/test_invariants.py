import numpy as np
from hypothesis import given, settings, strategies as st

from sympencil import (
    GenericComponent,
    MinimalPair,
    Pencil,
    SeededSampler,
    anti_triangular,
    antitriangular_witness,
    codim_orbit_numeric,
    congruence,
    degenerate_jordan_finite,
    descriptor_to_pencil,
    evaluate,
    extract_structure,
    frobenius_inner,
    generic_kcf,
    normal_rank,
    random_symmetric_structure,
    strict_equivalence,
    weyr_minimal,
)

seeds = st.integers(0, 2**32 - 1)


def _well_conditioned(rng, n, cap=100.0):
    return SeededSampler(0, cond_cap=cap).invertible(n, rng)


@given(seeds, st.integers(1, 6))
def test_congruence_composes(seed, n):
    rng = np.random.default_rng(seed)
    s = descriptor_to_pencil(random_symmetric_structure(n, rng))
    W1, W2 = _well_conditioned(rng, n), _well_conditioned(rng, n)
    lhs = congruence(congruence(s, W1), W2)
    rhs = congruence(s, W1 @ W2)
    assert (lhs - rhs).norm() <= 1e-12 * max(s.norm(), 1.0) * np.linalg.norm(W1) ** 2 * np.linalg.norm(W2) ** 2


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_frobenius_inner_hermitian(seed, m, n):
    rng = np.random.default_rng(seed)

    def rand():
        return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))

    p, q = Pencil(rand(), rand()), Pencil(rand(), rand())
    assert np.isclose(frobenius_inner(p, q), np.conj(frobenius_inner(q, p)))
    assert frobenius_inner(p, p).real > 0


@given(seeds, st.integers(1, 4))
def test_strict_equivalence_evaluation(seed, n):
    rng = np.random.default_rng(seed)
    p = Pencil(rng.standard_normal((n, n)), rng.standard_normal((n, n)))
    U, V = _well_conditioned(rng, n), _well_conditioned(rng, n)
    z = complex(rng.standard_normal(), rng.standard_normal())
    lhs = evaluate(strict_equivalence(p, U, V), z)
    rhs = np.linalg.solve(U, evaluate(p, z)) @ V
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * max(np.linalg.norm(rhs), 1.0) * np.linalg.cond(U)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8))
def test_extraction_sum_rule_and_pairing(seed, n):
    rng = np.random.default_rng(seed)
    d = random_symmetric_structure(n, rng)
    s = congruence(descriptor_to_pencil(d), _well_conditioned(rng, n))
    got = extract_structure(s)
    assert got.is_symmetric and got.left_minimal_indices() == got.right_minimal_indices()
    total = sum(2 * b.d + 1 if isinstance(b, MinimalPair) else b.size for b in got.blocks)
    assert total == n
    assert normal_rank(s) == n - len(got.right_minimal_indices())


def test_descriptor_rank_bookkeeping():
    rng = np.random.default_rng(8)
    for _ in range(30):
        d = random_symmetric_structure(int(rng.integers(1, 10)), rng)
        s = descriptor_to_pencil(d)
        assert np.array_equal(s.A, s.A.T) and np.array_equal(s.B, s.B.T)
        assert normal_rank(s) == d.n - len(d.right_minimal_indices())
        parts = list(weyr_minimal(d))
        assert parts == sorted(parts, reverse=True)


def test_generic_kcf_degree_bookkeeping():
    for n in range(2, 11):
        for r in range(1, n):
            for c in GenericComponent.all_for(n, r):
                d = generic_kcf(c, rng=np.random.default_rng(0))
                assert d.n == n
                assert sum(d.right_minimal_indices()) + sum(d.left_minimal_indices()) == 2 * c.a


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 6))
def test_codim_congruence_invariant(seed, n):
    rng = np.random.default_rng(seed)
    s = descriptor_to_pencil(random_symmetric_structure(n, rng))
    assert codim_orbit_numeric(congruence(s, _well_conditioned(rng, n, cap=50))) == codim_orbit_numeric(s)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.complex_numbers(max_magnitude=2), st.floats(1e-6, 1e-1))
def test_degeneration_property(size, mu, t):
    s = degenerate_jordan_finite(size, mu, t)
    eigs = np.linalg.eigvals(np.linalg.solve(s.A, -s.B))
    gaps = [abs(x - y) for i, x in enumerate(eigs) for y in eigs[i + 1 :]]
    if gaps and min(gaps) <= 1e-10:
        return  # measure-zero collision set
    got = extract_structure(s)
    assert got.simple_eigenvalue_count() == size == got.num_distinct_eigenvalues


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 9))
def test_anti_triangular_residual(seed, n):
    rng = np.random.default_rng(seed)
    d = random_symmetric_structure(n, rng)
    W0 = _well_conditioned(rng, n)
    s = congruence(descriptor_to_pencil(d), W0)
    form = anti_triangular(s, antitriangular_witness(d, W0), d)
    assert form.residual <= 1e-10
    c, rho, w = form.sizes
    Z = form.assembled()
    assert not Z.A[c:, c + rho :].any() and not Z.B[c:, c + rho :].any()
    assert not Z.A[c + rho :, c:].any() and not Z.B[c + rho :, c:].any()

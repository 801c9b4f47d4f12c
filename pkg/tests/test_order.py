import pytest

from sympencil import (
    GenericComponent,
    JordanFinite,
    MinimalPair,
    StructureDescriptor,
    candidate_components,
    closure_obstruction,
    minimal_index_condition,
    obstruction_table,
)


def test_small_case_asymmetry():
    K0, K1 = GenericComponent(3, 2, 0), GenericComponent(3, 2, 1)
    ob = closure_obstruction(K0, K1)
    assert ob.kind == "minimal-index-majorization"
    assert ob.evidence == {"eps_contained": (1, 1), "eps_container": (1,)}
    ob = closure_obstruction(K1, K0)
    assert ob.kind == "simple-eigenvalue-multiplicity"
    assert (ob.evidence["simple_needed"], ob.evidence["simple_available"]) == (2, 0)


def test_direction_of_obstruction():
    for n in range(2, 9):
        for r in range(1, n):
            for (a, ap), ob in obstruction_table(n, r).items():
                expected = "minimal-index-majorization" if ap > a else "simple-eigenvalue-multiplicity"
                assert ob.kind == expected and ob


def test_invalid_pairs():
    with pytest.raises(ValueError):
        closure_obstruction(GenericComponent(3, 2, 0), GenericComponent(3, 2, 0))
    with pytest.raises(ValueError):
        closure_obstruction(GenericComponent(4, 2, 0), GenericComponent(3, 2, 1))


def test_candidates_contain_own_component():
    for n in range(2, 8):
        for r in range(1, n):
            for c in GenericComponent.all_for(n, r):
                assert c in candidate_components(c.bundle_descriptor(), n, r)


def test_candidates_example_pencil():
    d = StructureDescriptor((MinimalPair(0), JordanFinite(1, 1), JordanFinite(1, 2)))
    assert candidate_components(d, 3, 2) == {GenericComponent(3, 2, 0)}


def test_candidates_zero_pencil():
    zero = StructureDescriptor((MinimalPair(0),) * 3)
    assert candidate_components(zero, 3, 2) == {GenericComponent(3, 2, 0), GenericComponent(3, 2, 1)}


def test_candidates_rank_bound_and_size():
    full = StructureDescriptor((JordanFinite(1, 0), JordanFinite(1, 1), JordanFinite(1, 2)))
    assert candidate_components(full, 3, 2) == frozenset()
    with pytest.raises(ValueError):
        candidate_components(full, 4, 2)


def test_minimal_index_condition_lower_rank():
    # rank 2 < 3, so an extra minimal index is allowed by the test
    d = StructureDescriptor((MinimalPair(1), MinimalPair(0)))
    assert all(minimal_index_condition(d, c) for c in GenericComponent.all_for(4, 3))

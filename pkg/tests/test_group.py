import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from s4bell.exceptions import InvalidTranspositionError
from s4bell.group import (
    Permutation,
    adjacent_factorization,
    compose,
    conjugacy_classes,
    generate_group,
    symmetric_group,
    transposition_matrix,
)

T = Permutation.transposition
E = Permutation.identity()

perms = st.permutations([1, 2, 3, 4]).map(lambda p: Permutation(tuple(p)))


def test_compose_examples():
    assert compose(T(1, 2), T(1, 2)) == E
    assert compose(E, T(3, 4)) == T(3, 4)
    # (12) o (23): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    assert compose(T(1, 2), T(2, 3)).images == (2, 3, 1, 4)
    assert compose(T(1, 2), T(2, 3)) == Permutation.from_cycles((1, 2, 3))


@given(perms, perms, perms)
def test_compose_associative(p, q, r):
    assert compose(compose(p, q), r) == compose(p, compose(q, r))


@given(perms)
def test_inverse_and_identity(p):
    assert compose(p, p.inverse()) == E
    assert compose(p.inverse(), p) == E
    assert compose(E, p) == p == compose(p, E)


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2, 3))


def test_generate_group():
    assert len(generate_group([T(1, 2), T(2, 3), T(3, 4)])) == 24
    assert generate_group([]) == {E}
    assert generate_group([T(1, 2)]) == {E, T(1, 2)}


def test_conjugacy_classes_match_brute_force():
    G = sorted(symmetric_group())
    # oracle: orbit of each x under conjugation, computed from raw image tuples
    def conj(g, x):
        ginv = [0] * 4
        for k, v in enumerate(g.images):
            ginv[v - 1] = k + 1
        return tuple(g.images[x.images[ginv[k] - 1] - 1] for k in range(4))

    oracle = {frozenset(conj(g, x) for g in G) for x in G}
    got = {frozenset(p.images for p in c) for c in conjugacy_classes(G)}
    assert got == oracle
    assert sorted(len(c) for c in got) == [1, 3, 6, 6, 8]
    assert any(c == {E} for c in conjugacy_classes(G))


def test_transposition_matrices_printed_values():
    assert np.array_equal(transposition_matrix(1, 2), np.diag([1.0, 1.0, -1.0]))
    r8 = np.sqrt(8.0)
    np.testing.assert_allclose(
        transposition_matrix(3, 4),
        [[-1 / 3, r8 / 3, 0], [r8 / 3, 1 / 3, 0], [0, 0, 1]],
        atol=1e-15,
    )


@pytest.mark.parametrize("pair", [(2, 2), (0, 1), (3, 5), (4, 1)])
def test_transposition_matrix_rejects_bad_pairs(pair):
    with pytest.raises(InvalidTranspositionError):
        transposition_matrix(*pair)


def test_transposition_matrix_read_only():
    with pytest.raises(ValueError):
        transposition_matrix(1, 2)[0, 0] = 5.0


@given(perms)
def test_bubble_sort_factorization_multiplies_back(p):
    prod = E
    for pair in adjacent_factorization(p):
        assert pair[1] == pair[0] + 1
        prod = compose(prod, T(*pair))
    assert prod == p


def test_representation_identity_and_transpositions(rep):
    assert len(rep) == 24
    assert np.array_equal(rep[E], np.eye(3))
    for i, j in itertools.combinations(range(1, 5), 2):
        np.testing.assert_allclose(rep[T(i, j)], transposition_matrix(i, j), atol=1e-12)


def test_three_cycle_factorization_independent(rep):
    # (123) = (12)(23) = (13)(12)
    a = transposition_matrix(1, 2) @ transposition_matrix(2, 3)
    b = transposition_matrix(1, 3) @ transposition_matrix(1, 2)
    np.testing.assert_allclose(a, b, atol=1e-12)
    np.testing.assert_allclose(rep[Permutation.from_cycles((1, 2, 3))], a, atol=1e-12)


def test_homomorphism_all_pairs(rep):
    assert rep.homomorphism_defect() <= 1e-10


def test_orthogonal_with_sign_determinant(rep):
    for g in rep:
        m = rep[g]
        assert np.abs(m.T @ m - np.eye(3)).max() <= 1e-12
        assert abs(np.linalg.det(m) - g.sign) <= 1e-12


def test_characters_constant_on_classes(rep):
    for cls in conjugacy_classes(rep.elements):
        chars = [rep.character(g) for g in cls]
        assert max(chars) - min(chars) <= 1e-10


def test_faithful(rep):
    mats = rep.matrices()
    for a, b in itertools.combinations(range(24), 2):
        assert np.abs(mats[a] - mats[b]).max() > 0.1

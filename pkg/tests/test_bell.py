import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from s4bell.bell import (
    ORBIT_SEED_PAIRS,
    LEVEL_TOL,
    ProductState,
    build_X,
    closed_form_lambda_max,
    dense_levels,
    eigenvalues_dense,
    eigenvalues_schur,
    orbit_probability_sum,
    quantum_bound,
    reduced_densities,
    scalar_state,
    seeds_from_labels,
)
from s4bell.decomp import DIMS, IRREPS
from s4bell.exceptions import InvalidStateError, LabelNotFoundError

mpmath.mp.dps = 50
LAMBDA_MAX = float(
    mpmath.mpf(24) / 81 * (3 + mpmath.sqrt(3)) ** 2 + mpmath.mpf(8) / 81 * (3 + 4 * mpmath.sqrt(2)) ** 2
)

unit9 = arrays(np.float64, 9, elements=st.floats(-1, 1)).filter(
    lambda v: np.linalg.norm(v) > 1e-3
).map(lambda v: v / np.linalg.norm(v))


@pytest.fixture(scope="module")
def seeds(orbit):
    return seeds_from_labels(orbit, ORBIT_SEED_PAIRS)


@pytest.fixture(scope="module")
def X(seeds, rep):
    return build_X(seeds, rep)


def test_extended_precision_value():
    assert abs(closed_form_lambda_max() - LAMBDA_MAX) <= 1e-12
    assert f"{LAMBDA_MAX:.9f}" == "14.036349633"


def test_product_state(orbit):
    s = ProductState(orbit[(1, 1)], orbit[(8, 2)])
    np.testing.assert_allclose(s.kron, np.kron(orbit[(1, 1)], orbit[(8, 2)]))
    assert abs(np.linalg.norm(s.kron) - 1) <= 1e-12
    with pytest.raises(InvalidStateError):
        ProductState([1, 1, 0], [1, 0, 0])


def test_single_seed_trace(seeds, rep):
    for s in seeds:
        assert abs(np.trace(build_X([s], rep).matrix) - 24) <= 1e-8


def test_two_seed_operator(X):
    m = X.matrix
    assert abs(np.trace(m) - 48) <= 1e-8
    assert np.abs(m - m.T).max() <= 1e-12
    assert np.linalg.eigvalsh(m).min() >= -1e-9


def test_commutes_with_group(X, rep):
    for k in rep.kron_squares():
        assert np.abs(X.matrix @ k - k @ X.matrix).max() <= 1e-9


def test_schur_single_seed_values(orbit, rep):
    first = eigenvalues_schur(seeds_from_labels(orbit, [ORBIT_SEED_PAIRS[0]]), rep)
    second = eigenvalues_schur(seeds_from_labels(orbit, [ORBIT_SEED_PAIRS[1]]), rep)
    assert abs(first.per_component["D0"] - 24 / 81 * (3 + np.sqrt(3)) ** 2) <= 1e-12
    assert abs(second.per_component["D0"] - 8 / 81 * (3 + 4 * np.sqrt(2)) ** 2) <= 1e-12


def test_schur_matches_dense(seeds, X, rep):
    schur = eigenvalues_schur(seeds, rep)
    levels = dense_levels(X)
    assert len(levels) == 4
    for name in IRREPS:
        match = [lv for lv in levels if abs(lv.value - schur.per_component[name]) <= 1e-9]
        assert len(match) == 1 and match[0].multiplicity == DIMS[name]
    dense = eigenvalues_dense(X)
    for name in IRREPS:
        assert abs(dense.per_component[name] - schur.per_component[name]) <= 1e-9
    assert abs(dense.lambda_max - schur.lambda_max) <= 1e-9


def test_dense_eigensolver_residual(X):
    w, v = X.eigh()
    for k in range(9):
        assert np.linalg.norm(X.matrix @ v[:, k] - w[k] * v[:, k]) <= 1e-10


def test_level_grouping_tolerance():
    assert LEVEL_TOL == 1e-8


def test_trace_identity(seeds, rep):
    rep_ = eigenvalues_schur(seeds, rep)
    assert abs(rep_.trace() - 48) <= 1e-8


def test_quantum_bound(orbit, rep):
    r = quantum_bound(orbit, rep)
    assert r.optimal_component == "D0"
    assert abs(r.lambda_max - LAMBDA_MAX) <= 1e-9
    assert round(r.lambda_max, 3) == 14.036
    np.testing.assert_allclose(r.optimal_state, scalar_state())
    rho_a, rho_b = reduced_densities(r.optimal_state)
    assert np.abs(rho_a - np.eye(3) / 3).max() <= 1e-10
    assert np.abs(rho_b - np.eye(3) / 3).max() <= 1e-10


def test_rayleigh_consistency(X, seeds, rep):
    chi = scalar_state()
    assert abs(X.expectation(chi) - LAMBDA_MAX) <= 1e-9
    assert abs(np.linalg.norm(X.matrix @ chi - LAMBDA_MAX * chi)) <= 1e-8
    assert abs(orbit_probability_sum(chi, seeds, rep) - X.expectation(chi)) <= 1e-9


@settings(max_examples=100)
@given(unit9)
def test_expectation_equals_probability_sum(X, seeds, rep, chi):
    assert abs(X.expectation(chi) - orbit_probability_sum(chi, seeds, rep)) <= 1e-9
    assert X.expectation(chi) <= LAMBDA_MAX + 1e-9


def test_non_d0_maximum_reports_eigenvector(orbit, rep):
    # a seed with m . m' = 0 has no trivial component
    seeds = seeds_from_labels(orbit, [((1, 0), (1, 1))])
    r = eigenvalues_schur(seeds, rep)
    assert r.per_component["D0"] <= 1e-12
    X1 = build_X(seeds, rep)
    assert abs(X1.expectation(r.optimal_state) - r.lambda_max) <= 1e-9


def test_unknown_seed_label(orbit, rep):
    with pytest.raises(LabelNotFoundError):
        quantum_bound(orbit, rep, [((9, 0), (1, 1))])


def test_build_x_needs_seeds(rep):
    with pytest.raises(ValueError):
        build_X([], rep)

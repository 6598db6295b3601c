import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from s4bell.decomp import (
    BLOCK_SLICES,
    DIMS,
    IRREPS,
    block_mask,
    cg_matrix,
    closed_form_components,
    components_from_spin,
    irrep_blocks,
    match_blocks,
    off_block_defect,
    project_closed_form,
    project_via_cg,
    spin_decompose,
)
from s4bell.group import Permutation

unit = arrays(np.float64, 3, elements=st.floats(-1, 1)).filter(
    lambda v: np.linalg.norm(v) > 1e-3
).map(lambda v: v / np.linalg.norm(v))


def random_units(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_last_row():
    r = 1 / np.sqrt(3)
    np.testing.assert_allclose(cg_matrix()[8], [r, 0, 0, 0, r, 0, 0, 0, r], atol=1e-15)


def test_orthogonal():
    C = cg_matrix()
    assert np.abs(C @ C.T - np.eye(9)).max() <= 1e-12


def test_block_sizes_for_transposition(rep):
    C = cg_matrix()
    d = rep[Permutation.transposition(1, 2)]
    k = C @ np.kron(d, d) @ C.T
    assert np.abs(k[~block_mask()]).max() <= 1e-10
    assert [s.stop - s.start for s in BLOCK_SLICES] == [3, 3, 2, 1]


def test_block_diagonal_for_all_elements(rep):
    assert off_block_defect(rep) <= 1e-10


def test_block_assignment_by_characters(rep):
    blocks = match_blocks(rep)
    assert {k: (s.start, s.stop) for k, s in blocks.items()} == {
        "D": (0, 3), "D~": (3, 6), "D2": (6, 8), "D0": (8, 9),
    }
    assert irrep_blocks() == blocks


def test_trivial_and_sign_twisted_blocks(rep, rng):
    C = cg_matrix()
    # basis of the D~ rows relative to the cross-product coordinates, fitted from samples
    m, n = random_units(rng, 50), random_units(rng, 50)
    y = np.array([(C @ np.kron(a, b))[3:6] for a, b in zip(m, n)])
    x = np.array([closed_form_components(a, b)["D~"] for a, b in zip(m, n)])
    Q = np.linalg.lstsq(x, y, rcond=None)[0].T
    assert np.abs(Q @ Q.T - np.eye(3)).max() <= 1e-12
    for g in rep:
        k = C @ np.kron(rep[g], rep[g]) @ C.T
        assert abs(k[8, 8] - 1) <= 1e-10
        assert np.abs(k[0:3, 0:3] - rep[g]).max() <= 1e-10
        assert np.abs(k[3:6, 3:6] - g.sign * Q @ rep[g] @ Q.T).max() <= 1e-10
        if g.cycle_type() == (2, 1, 1):
            assert abs(np.trace(k[3:6, 3:6]) + np.trace(k[0:3, 0:3])) <= 1e-10


def test_d0_norm_for_e1():
    e1 = np.array([1.0, 0, 0])
    assert abs(project_closed_form(e1, e1).norms_squared["D0"] - 1 / 3) <= 1e-15
    y = cg_matrix() @ np.kron(e1, e1)
    assert abs(y[8] ** 2 - 1 / 3) <= 1e-15
    assert abs(project_via_cg(e1, e1).norms_squared["D0"] - 1 / 3) <= 1e-15


@given(unit)
def test_cross_component_vanishes_on_diagonal(v):
    assert project_closed_form(v, v).norms_squared["D~"] <= 1e-30


@settings(max_examples=200)
@given(unit, unit)
def test_completeness(m, n):
    assert abs(project_via_cg(m, n).total() - 1) <= 1e-10
    assert abs(project_closed_form(m, n).total() - 1) <= 1e-10


def test_closed_form_matches_cg_route(rng):
    for m, n in zip(random_units(rng, 1000), random_units(rng, 1000)):
        a, b = project_closed_form(m, n), project_via_cg(m, n)
        for k in IRREPS:
            assert abs(a.norms_squared[k] - b.norms_squared[k]) <= 1e-12


def test_d_component_rows_match_cg_rows(rng):
    # the three-dimensional D formulas reproduce the first three CG rows verbatim
    C = cg_matrix()
    for m, n in zip(random_units(rng, 100), random_units(rng, 100)):
        np.testing.assert_allclose(closed_form_components(m, n)["D"], C[:3] @ np.kron(m, n), atol=1e-12)


def test_orbit_members_d0(orbit):
    for la in orbit:
        for lb in orbit:
            got = project_closed_form(orbit[la], orbit[lb]).norms_squared["D0"]
            assert abs(got - (orbit[la] @ orbit[lb]) ** 2 / 3) <= 1e-12


def test_dims():
    assert DIMS == {"D": 3, "D~": 3, "D2": 2, "D0": 1}


def test_spin_decompose_e1():
    e1 = np.array([1.0, 0, 0])
    sd = spin_decompose(e1, e1)
    np.testing.assert_allclose(sd.Delta, np.eye(3) / 3, atol=1e-15)
    np.testing.assert_allclose(sd.A, 0, atol=1e-15)
    np.testing.assert_allclose(sd.S, np.diag([2 / 3, -1 / 3, -1 / 3]), atol=1e-15)


@given(unit, unit)
def test_spin_decompose_invariants(m, n):
    sd = spin_decompose(m, n)
    assert np.abs(sd.reconstruct() - np.outer(m, n)).max() <= 1e-12
    assert abs(np.trace(sd.S)) <= 1e-12
    assert np.abs(sd.S - sd.S.T).max() <= 1e-15
    assert np.abs(sd.A + sd.A.T).max() <= 1e-15
    np.testing.assert_allclose(sd.Delta, (m @ n) / 3 * np.eye(3), atol=1e-15)


def test_antisymmetric_part_convention():
    m, n = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    sd = spin_decompose(m, n)
    # eps_123 = +1: A_12 = (m x n)_3 / 2
    assert sd.A[0, 1] == pytest.approx(0.5)


def test_spin_components_match_direct_formulas(rng):
    for m, n in zip(random_units(rng, 500), random_units(rng, 500)):
        direct = closed_form_components(m, n)
        from_s = components_from_spin(spin_decompose(m, n).S)
        np.testing.assert_allclose(from_s["D2"], direct["D2"], atol=1e-12)
        np.testing.assert_allclose(from_s["D"], direct["D"], atol=1e-12)

"""The group-averaged operator X and its spectrum.

The maximum eigenvalue of X bounds the sum of orbit probabilities over all
bipartite states. It is computed two ways: per irreducible component from
the projection norms of the seeds (exact when every irrep appears once), and
by a dense symmetric eigensolve of the 9x9 matrix.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import sqrt

import numpy as np

from .decomp import DIMS, IRREPS, cg_matrix, irrep_blocks, project_via_cg
from .exceptions import InvalidStateError
from .group import GROUP_ORDER, Representation, build_representation
from .orbit import LabeledOrbit, as_unit_vector

LEVEL_TOL = 1e-8

#: Seeds of the two diagonal orbits: ((i, alpha), (i', alpha')).
ORBIT_SEED_PAIRS = (((1, 1), (8, 2)), ((6, 2), (8, 2)))


@dataclass(frozen=True)
class ProductState:
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "left", as_unit_vector(self.left))
        object.__setattr__(self, "right", as_unit_vector(self.right))

    @cached_property
    def kron(self) -> np.ndarray:
        return np.kron(self.left, self.right)


@dataclass(frozen=True)
class BellOperator:
    matrix: np.ndarray
    n_seeds: int

    def eigh(self):
        return np.linalg.eigh(self.matrix)

    def expectation(self, state) -> float:
        chi = as_state(state)
        return float(chi @ self.matrix @ chi)


def build_X(seeds: Sequence[ProductState], rep: Representation) -> BellOperator:
    """Sum over seeds and all g of the projector onto (D(g) (x) D(g)) seed."""
    if not seeds:
        raise ValueError("need at least one seed")
    kron_sq = rep.kron_squares()
    images = np.concatenate([kron_sq @ s.kron for s in seeds])  # (24 n, 9)
    return BellOperator(matrix=images.T @ images, n_seeds=len(seeds))


@dataclass(frozen=True)
class SpectralReport:
    per_component: dict[str, float]
    lambda_max: float
    optimal_component: str
    optimal_state: np.ndarray = field(repr=False)

    def trace(self) -> float:
        return sum(DIMS[k] * v for k, v in self.per_component.items())


def scalar_state() -> np.ndarray:
    """(1/sqrt 3) sum_k e_k (x) e_k, the state spanning the trivial component."""
    return np.eye(3).reshape(9) / sqrt(3.0)


def eigenvalues_schur(seeds: Sequence[ProductState], rep: Representation | None = None) -> SpectralReport:
    """Eigenvalue on component s: sum over seeds of |G|/d_s times the squared projection norm."""
    per = dict.fromkeys(IRREPS, 0.0)
    for s in seeds:
        proj = project_via_cg(s.left, s.right)
        for k in IRREPS:
            per[k] += GROUP_ORDER / DIMS[k] * proj.norms_squared[k]
    best = max(IRREPS, key=per.__getitem__)
    if best == "D0":
        state = scalar_state()
    else:
        # degenerate level: any unit vector of the eigenspace will do
        rep = build_representation() if rep is None else rep
        state = np.linalg.eigh(build_X(seeds, rep).matrix)[1][:, -1]
    return SpectralReport(per, per[best], best, state)


@dataclass(frozen=True)
class Level:
    value: float
    multiplicity: int


def dense_levels(op: BellOperator, tol: float = LEVEL_TOL) -> list[Level]:
    """Distinct eigenvalues (ascending) with multiplicities, grouping values within ``tol``."""
    w = np.linalg.eigvalsh(op.matrix)
    levels: list[list[float]] = []
    for x in w:
        if levels and x - levels[-1][-1] <= tol:
            levels[-1].append(x)
        else:
            levels.append([x])
    return [Level(float(np.mean(g)), len(g)) for g in levels]


def eigenvalues_dense(op: BellOperator) -> SpectralReport:
    """Per-component eigenvalues read from the dense solve via the CG block projectors."""
    w, v = op.eigh()
    C = cg_matrix()
    per = {}
    for name, s in irrep_blocks().items():
        basis = C[s].T  # columns span the component
        per[name] = float(np.trace(basis.T @ op.matrix @ basis)) / DIMS[name]
    best = max(per, key=per.__getitem__)
    return SpectralReport(per, float(w[-1]), best, v[:, -1])


def seeds_from_labels(orbit: LabeledOrbit, seed_pairs) -> list[ProductState]:
    return [ProductState(orbit[tuple(left)], orbit[tuple(right)]) for left, right in seed_pairs]


def quantum_bound(
    orbit: LabeledOrbit, rep: Representation, seed_pairs=ORBIT_SEED_PAIRS
) -> SpectralReport:
    """Maximal eigenvalue of X summed over the given labeled seeds."""
    return eigenvalues_schur(seeds_from_labels(orbit, seed_pairs), rep)


def closed_form_lambda_max() -> float:
    return 24 / 81 * (3 + sqrt(3.0)) ** 2 + 8 / 81 * (3 + 4 * sqrt(2.0)) ** 2


def as_state(state, tol: float = 1e-10) -> np.ndarray:
    chi = np.asarray(state, dtype=float).reshape(-1)
    if chi.shape != (9,):
        raise InvalidStateError(f"expected 9 components, got {chi.shape}")
    if abs(np.linalg.norm(chi) - 1.0) > tol:
        raise InvalidStateError(f"state is not unit (norm {np.linalg.norm(chi):.6g})")
    return chi


def reduced_densities(state) -> tuple[np.ndarray, np.ndarray]:
    """Partial traces (over B, over A) of a real 3x3 bipartite pure state."""
    m = as_state(state).reshape(3, 3)
    return m @ m.T, m.T @ m


def orbit_probability_sum(state, seeds: Sequence[ProductState], rep: Representation) -> float:
    """sum over seeds and g of |<g, phi, psi | chi>|^2, without forming X."""
    chi = as_state(state)
    kron_sq = rep.kron_squares()
    return float(sum(np.sum((kron_sq @ s.kron @ chi) ** 2) for s in seeds))

"""Clebsch-Gordan structure of D (x) D = D + D~ + D2 + D0."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import sqrt

import numpy as np

from .group import Representation, build_representation
from .orbit import as_unit_vector

IRREPS = ("D", "D~", "D2", "D0")
DIMS = {"D": 3, "D~": 3, "D2": 2, "D0": 1}

_R2, _R3, _R6 = sqrt(2.0), sqrt(3.0), sqrt(6.0)
_A = sqrt(2.0 / 3.0)

_C = np.array(
    [
        [_A, 0, 0, 0, -1 / _R6, 0, 0, 0, -1 / _R6],
        [0, -1 / _R6, 0, -1 / _R6, 1 / _R3, 0, 0, 0, -1 / _R3],
        [0, 0, -1 / _R6, 0, 0, -1 / _R3, -1 / _R6, -1 / _R3, 0],
        [0, 1 / _R2, 0, -1 / _R2, 0, 0, 0, 0, 0],
        [0, 0, 1 / _R2, 0, 0, 0, -1 / _R2, 0, 0],
        [0, 0, 0, 0, 0, 1 / _R2, 0, -1 / _R2, 0],
        [0, 1 / _R3, 0, 1 / _R3, 1 / _R6, 0, 0, 0, -1 / _R6],
        [0, 0, 1 / _R3, 0, 0, -1 / _R6, 1 / _R3, -1 / _R6, 0],
        [1 / _R3, 0, 0, 0, 1 / _R3, 0, 0, 0, 1 / _R3],
    ]
)
_C.setflags(write=False)

# row ranges of the diagonal blocks, top to bottom
BLOCK_SLICES = (slice(0, 3), slice(3, 6), slice(6, 8), slice(8, 9))


def cg_matrix() -> np.ndarray:
    """The 9x9 orthogonal change of basis from the product basis (read-only)."""
    return _C


def block_mask() -> np.ndarray:
    mask = np.zeros((9, 9), dtype=bool)
    for s in BLOCK_SLICES:
        mask[s, s] = True
    return mask


def off_block_defect(rep: Representation) -> float:
    """Largest |entry| outside the 3+3+2+1 pattern of C (D(g)(x)D(g)) C^T over all g."""
    mask = block_mask()
    conj = _C @ rep.kron_squares() @ _C.T
    return float(np.abs(conj[:, ~mask]).max())


def irrep_characters(rep: Representation) -> dict[str, np.ndarray]:
    """Characters of the four components, from D alone, in element order."""
    chi = np.array([rep.character(g) for g in rep])
    sgn = np.array([g.sign for g in rep], dtype=float)
    return {
        "D": chi,
        "D~": sgn * chi,
        "D2": chi**2 - chi * (1 + sgn) - 1,
        "D0": np.ones_like(chi),
    }


def match_blocks(rep: Representation, tol: float = 1e-10) -> dict[str, slice]:
    """Assign each diagonal block of the CG basis to an irrep by comparing characters."""
    conj = _C @ rep.kron_squares() @ _C.T
    chars = irrep_characters(rep)
    mapping = {}
    for s in BLOCK_SLICES:
        traces = np.trace(conj[:, s, s], axis1=1, axis2=2)
        hits = [
            name
            for name, chi in chars.items()
            if DIMS[name] == s.stop - s.start and np.abs(traces - chi).max() <= tol
        ]
        if len(hits) != 1:
            raise ValueError(f"block {s} matches irreps {hits}")
        mapping[hits[0]] = s
    return mapping


@lru_cache(maxsize=1)
def irrep_blocks() -> dict[str, slice]:
    return match_blocks(build_representation())


@dataclass(frozen=True)
class IrrepProjection:
    norms_squared: dict[str, float]
    dims: dict[str, int] = field(default_factory=lambda: dict(DIMS))

    def total(self) -> float:
        return sum(self.norms_squared.values())


def closed_form_components(m, mp) -> dict[str, np.ndarray]:
    """Component vectors of m (x) m' in each irrep, from the explicit bilinear formulas."""
    m, mp = np.asarray(m, dtype=float), np.asarray(mp, dtype=float)
    m1, m2, m3 = m
    n1, n2, n3 = mp
    return {
        "D0": np.array([m @ mp / _R3]),
        "D2": np.array(
            [
                (m1 * n3 + m3 * n1) / _R3 - (m2 * n3 + m3 * n2) / _R6,
                (m1 * n2 + m2 * n1) / _R3 + (m2 * n2 - m3 * n3) / _R6,
            ]
        ),
        "D~": np.cross(m, mp) / _R2,
        "D": np.array(
            [
                _A * m1 * n1 - (m2 * n2 + m3 * n3) / _R6,
                (m2 * n2 - m3 * n3) / _R3 - (m1 * n2 + m2 * n1) / _R6,
                -(m2 * n3 + m3 * n2) / _R3 - (m1 * n3 + m3 * n1) / _R6,
            ]
        ),
    }


def project_closed_form(phi, psi) -> IrrepProjection:
    comps = closed_form_components(as_unit_vector(phi), as_unit_vector(psi))
    return IrrepProjection({k: float(v @ v) for k, v in comps.items()})


def project_via_cg(phi, psi) -> IrrepProjection:
    y = _C @ np.kron(as_unit_vector(phi), as_unit_vector(psi))
    blocks = irrep_blocks()
    return IrrepProjection({k: float(y[s] @ y[s]) for k, s in blocks.items()})


@dataclass(frozen=True)
class SpinDecomposition:
    S: np.ndarray
    A: np.ndarray
    Delta: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.S + self.A + self.Delta


_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k], _EPS[_j, _i, _k] = 1.0, -1.0


def spin_decompose(m, mprime) -> SpinDecomposition:
    """Split the outer product m m'^T into spin-2, spin-1 and spin-0 parts."""
    m, mp = as_unit_vector(m), as_unit_vector(mprime)
    dot = float(m @ mp)
    outer = np.outer(m, mp)
    S = 0.5 * (outer + outer.T) - dot / 3 * np.eye(3)
    # A_ij = 1/2 (m x m')_k eps_kij
    A = 0.5 * np.einsum("k,kij->ij", np.cross(m, mp), _EPS)
    return SpinDecomposition(S=S, A=A, Delta=dot / 3 * np.eye(3))


def components_from_spin(S: np.ndarray) -> dict[str, np.ndarray]:
    """D2 and D components as linear combinations of the symmetric traceless part."""
    return {
        "D2": np.array(
            [
                2 / _R3 * S[0, 2] - _A * S[1, 2],
                2 / _R3 * S[0, 1] + (S[1, 1] - S[2, 2]) / _R6,
            ]
        ),
        "D": np.array(
            [
                sqrt(1.5) * S[0, 0],
                -_A * S[0, 1] + (S[1, 1] - S[2, 2]) / _R3,
                -_A * S[0, 2] - 2 / _R3 * S[1, 2],
            ]
        ),
    }

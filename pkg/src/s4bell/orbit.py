"""Orbits of the representation in R^3, stabilizers, and the labeled 24-vector orbit."""
from __future__ import annotations

import csv
import io
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from . import fixtures
from .exceptions import (
    InvalidBasisError,
    InvalidStateError,
    LabelingMismatchError,
    LabelNotFoundError,
    NoBasisPartitionError,
)
from .group import GROUP_ORDER, Permutation, Representation, compose

DEDUP_TOL = 1e-9
ORTHO_TOL = 1e-9

Label = tuple[int, int]  # (observable index 1..8, outcome 0..2)


def as_unit_vector(v, tol: float = 1e-12) -> np.ndarray:
    """Validate and return ``v`` as a float array of shape (3,) with unit norm."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise InvalidStateError(f"expected a 3-vector, got shape {a.shape}")
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > tol:
        raise InvalidStateError(f"vector is not unit (norm {norm:.6g})")
    return a


def generate_orbit(rep: Representation, start, tol: float = DEDUP_TOL) -> list[np.ndarray]:
    """Distinct images ``D(g) start``, in group-element order."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = as_unit_vector(start)
    orbit: list[np.ndarray] = []
    for g in rep:
        v = rep[g] @ x
        if not any(np.abs(v - w).max() <= tol for w in orbit):
            orbit.append(v)
    return orbit


@dataclass(frozen=True)
class Stabilizer:
    elements: frozenset[Permutation]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_subgroup(self) -> bool:
        return all(
            compose(p, q) in self.elements and p.inverse() in self.elements
            for p in self.elements
            for q in self.elements
        )


def stabilizer(rep: Representation, v, tol: float = DEDUP_TOL) -> Stabilizer:
    x = as_unit_vector(v)
    return Stabilizer(frozenset(g for g in rep if np.abs(rep[g] @ x - x).max() <= tol))


class LabeledOrbit(Mapping):
    """The 24-vector orbit, labeled by (observable i, outcome alpha).

    Indexing with a label returns the vector; ``triple(i)`` returns the
    orthonormal basis of observable ``i`` as rows of a 3x3 array.
    """

    def __init__(self, vectors: Mapping[Label, np.ndarray]):
        arr = np.empty((8, 3, 3))
        for (i, alpha), v in vectors.items():
            arr[i - 1, alpha] = v
        if len(vectors) != 24:
            raise ValueError(f"need 24 labeled vectors, got {len(vectors)}")
        arr.setflags(write=False)
        self._arr = arr

    def __getitem__(self, label: Label) -> np.ndarray:
        i, alpha = label
        if not (1 <= i <= 8 and 0 <= alpha <= 2):
            raise LabelNotFoundError(f"no orbit vector labeled {label!r}")
        return self._arr[i - 1, alpha]

    def __iter__(self) -> Iterator[Label]:
        return ((i, a) for i in range(1, 9) for a in range(3))

    def __len__(self) -> int:
        return 24

    def triple(self, i: int) -> np.ndarray:
        if not 1 <= i <= 8:
            raise LabelNotFoundError(f"no observable {i}")
        return self._arr[i - 1]

    def as_array(self) -> np.ndarray:
        """Shape (8, 3, 3): [i - 1, alpha, component]."""
        return self._arr

    def label_of(self, v, tol: float = DEDUP_TOL) -> Label | None:
        hits = np.nonzero(np.abs(self._arr - np.asarray(v)).max(axis=2) <= tol)
        if len(hits[0]) != 1:
            return None
        return int(hits[0][0]) + 1, int(hits[1][0])

    def action(self, rep: Representation, g: Permutation) -> dict[Label, Label]:
        """The label permutation induced by ``g``; raises if any image leaves the orbit."""
        mapping = {}
        for label in self:
            image = self.label_of(rep[g] @ self[label])
            if image is None:
                raise LabelingMismatchError(f"D({g}) maps {label} outside the orbit")
            mapping[label] = image
        return mapping

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "alpha", "v1", "v2", "v3"])
        for i, alpha in self:
            w.writerow([i, alpha, *(f"{c:.17g}" for c in self[(i, alpha)])])
        return buf.getvalue()


def _triangles(vectors: Sequence[np.ndarray], tol: float) -> list[tuple[int, int, int]]:
    n = len(vectors)
    gram = np.abs(np.array(vectors) @ np.array(vectors).T)
    neighbours = [
        {j for j in range(n) if j != k and gram[k, j] < tol} for k in range(n)
    ]
    for k, nb in enumerate(neighbours):
        if len(nb) != 2:
            raise NoBasisPartitionError(
                f"vector {k} is orthogonal to {len(nb)} others; expected exactly 2"
            )
    triangles, used = [], set()
    for k in range(n):
        if k in used:
            continue
        a, b = sorted(neighbours[k])
        if neighbours[a] != {k, b} or neighbours[b] != {k, a}:
            raise NoBasisPartitionError(f"orthogonality graph is not triangles at vector {k}")
        triangles.append((k, a, b))
        used |= {k, a, b}
    return triangles


def partition_into_bases(
    orbit: Sequence[np.ndarray],
    fixture: Mapping[Label, Sequence[float]] | None = None,
    tol: float = ORTHO_TOL,
) -> LabeledOrbit:
    """Split a 24-vector orbit into 8 orthonormal triples and label it.

    The orthogonality graph must be exactly 8 disjoint triangles; labels are
    then read off by matching every vector to ``fixture`` (default: the
    published reference table), and each matched triple must share one
    observable index.
    """
    fixture = fixtures.APPENDIX_A if fixture is None else fixture
    triangles = _triangles(orbit, tol)
    if len(orbit) != 24 or len(triangles) != 8:
        raise NoBasisPartitionError(f"found {len(triangles)} triangles, expected 8")

    ref_labels = list(fixture)
    ref = np.array([fixture[lab] for lab in ref_labels], dtype=float)
    labeled: dict[Label, np.ndarray] = {}
    for tri in triangles:
        labels = []
        for k in tri:
            hits = np.nonzero(np.abs(ref - orbit[k]).max(axis=1) <= tol)[0]
            if len(hits) != 1:
                raise LabelingMismatchError(
                    f"orbit vector {np.round(orbit[k], 6)} matches {len(hits)} reference entries"
                )
            labels.append(ref_labels[hits[0]])
        if len({i for i, _ in labels}) != 1:
            raise LabelingMismatchError(f"orthonormal triple spans observables {labels}")
        for lab, k in zip(labels, tri):
            labeled[lab] = orbit[k]
    if len(labeled) != 24:
        raise LabelingMismatchError("reference labels were not matched one-to-one")
    return LabeledOrbit(labeled)


def standard_orbit(rep: Representation, fixture=None) -> LabeledOrbit:
    """The labeled orbit of (1, 1, 1)/sqrt(3)."""
    start = np.ones(3) / np.sqrt(3.0)
    orbit = generate_orbit(rep, start)
    if len(orbit) != GROUP_ORDER:
        raise NoBasisPartitionError(f"orbit of the start vector has {len(orbit)} elements")
    return partition_into_bases(orbit, fixture)


@dataclass(frozen=True)
class Observable:
    matrix: np.ndarray
    values: tuple[float, ...]
    eigenvectors: np.ndarray  # rows


def observable_from_basis(triple, values, tol: float = 1e-10) -> Observable:
    """Observable with eigenvector ``triple[k]`` for eigenvalue ``values[k]``."""
    basis = np.asarray(triple, dtype=float)
    if basis.shape != (3, 3):
        raise InvalidBasisError(f"expected three 3-vectors, got shape {basis.shape}")
    if np.abs(basis @ basis.T - np.eye(3)).max() > tol:
        raise InvalidBasisError("basis vectors are not orthonormal")
    values = tuple(float(x) for x in values)
    if len(values) != 3:
        raise InvalidBasisError("need one value per basis vector")
    matrix = sum(val * np.outer(vec, vec) for val, vec in zip(values, basis))
    return Observable(matrix=matrix, values=values, eigenvectors=basis.copy())

"""The symmetric group S4 and its faithful 3-dimensional orthogonal representation."""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .exceptions import InvalidTranspositionError, RepresentationInconsistencyError

N_POINTS = 4
GROUP_ORDER = 24


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1, 2, 3, 4}; ``images[k - 1]`` is the image of ``k``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, N_POINTS + 1)):
            raise ValueError(f"not a permutation of 1..{N_POINTS}: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls) -> Permutation:
        return cls(tuple(range(1, N_POINTS + 1)))

    @classmethod
    def transposition(cls, i: int, j: int) -> Permutation:
        _check_pair(i, j)
        images = list(range(1, N_POINTS + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, *cycles: Iterable[int]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles((1, 2, 3))`` sends 1->2->3->1."""
        images = list(range(1, N_POINTS + 1))
        for cycle in cycles:
            cycle = list(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __matmul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * N_POINTS
        for k, img in enumerate(self.images, start=1):
            inv[img - 1] = k
        return Permutation(tuple(inv))

    @property
    def sign(self) -> int:
        inversions = sum(
            1
            for a in range(N_POINTS)
            for b in range(a + 1, N_POINTS)
            if self.images[a] > self.images[b]
        )
        return -1 if inversions % 2 else 1

    def cycle_type(self) -> tuple[int, ...]:
        seen, lengths = set(), []
        for start in range(1, N_POINTS + 1):
            if start in seen:
                continue
            k, n = start, 0
            while k not in seen:
                seen.add(k)
                k = self(k)
                n += 1
            lengths.append(n)
        return tuple(sorted(lengths, reverse=True))

    def __str__(self) -> str:
        cycles, seen = [], set()
        for start in range(1, N_POINTS + 1):
            if start in seen or self(start) == start:
                seen.add(start)
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(str(k))
                k = self(k)
            cycles.append("(" + "".join(cyc) + ")")
        return "".join(cycles) or "e"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``: apply ``q`` first, then ``p``."""
    return Permutation(tuple(p.images[k - 1] for k in q.images))


def generate_group(generators: Iterable[Permutation]) -> frozenset[Permutation]:
    """Closure of ``generators`` under composition (breadth-first)."""
    generators = list(generators)
    elements = {Permutation.identity()}
    frontier = list(elements)
    while frontier:
        fresh = []
        for p in frontier:
            for g in generators:
                q = compose(p, g)
                if q not in elements:
                    elements.add(q)
                    fresh.append(q)
        frontier = fresh
    return frozenset(elements)


def symmetric_group() -> frozenset[Permutation]:
    adjacent = [Permutation.transposition(k, k + 1) for k in range(1, N_POINTS)]
    return generate_group(adjacent)


def conjugacy_classes(group: Iterable[Permutation]) -> list[frozenset[Permutation]]:
    """Partition ``group`` into conjugacy classes, ordered by their smallest element."""
    group = sorted(group)
    remaining = set(group)
    classes = []
    for x in group:
        if x not in remaining:
            continue
        cls = frozenset(compose(compose(g, x), g.inverse()) for g in group)
        remaining -= cls
        classes.append(cls)
    return classes


def _check_pair(i, j):
    if not (1 <= i < j <= N_POINTS):
        raise InvalidTranspositionError(f"need 1 <= i < j <= {N_POINTS}, got ({i}, {j})")


_S2, _S3, _S6, _S8 = sqrt(2.0), sqrt(3.0), sqrt(6.0), sqrt(8.0)

_TRANSPOSITIONS = {
    (1, 2): [[1, 0, 0], [0, 1, 0], [0, 0, -1]],
    (1, 3): [[1, 0, 0], [0, -1 / 2, -_S3 / 2], [0, -_S3 / 2, 1 / 2]],
    (1, 4): [
        [-1 / 3, -_S2 / 3, -_S6 / 3],
        [-_S2 / 3, 5 / 6, -_S3 / 6],
        [-_S6 / 3, -_S3 / 6, 1 / 2],
    ],
    (2, 3): [[1, 0, 0], [0, -1 / 2, _S3 / 2], [0, _S3 / 2, 1 / 2]],
    (2, 4): [
        [-1 / 3, -_S2 / 3, _S6 / 3],
        [-_S2 / 3, 5 / 6, _S3 / 6],
        [_S6 / 3, _S3 / 6, 1 / 2],
    ],
    (3, 4): [[-1 / 3, _S8 / 3, 0], [_S8 / 3, 1 / 3, 0], [0, 0, 1]],
}


def _frozen(m) -> np.ndarray:
    a = np.array(m, dtype=float)
    a.setflags(write=False)
    return a


def transposition_matrix(i: int, j: int) -> np.ndarray:
    """The representation matrix of the transposition (i j), read-only."""
    _check_pair(i, j)
    return _frozen(_TRANSPOSITIONS[(i, j)])


def adjacent_factorization(p: Permutation) -> list[tuple[int, int]]:
    """Factor ``p`` into adjacent transpositions by bubble sort.

    Returns ``[t1, ..., tk]`` with ``p = t1 o t2 o ... o tk``.
    """
    images = list(p.images)
    swaps = []
    for sweep in range(N_POINTS - 1, 0, -1):
        for k in range(sweep):
            if images[k] > images[k + 1]:
                # right-multiplying by (k+1 k+2) swaps these two positions
                images[k], images[k + 1] = images[k + 1], images[k]
                swaps.append((k + 1, k + 2))
    # p o s1 o ... o sk = e, so p = sk o ... o s1
    return swaps[::-1]


def _product(factors: Iterable[tuple[int, int]]) -> np.ndarray:
    m = np.eye(3)
    for i, j in factors:
        m = m @ transposition_matrix(i, j)
    return m


class Representation(Mapping):
    """Map from each element of S4 to its 3x3 orthogonal matrix."""

    def __init__(self, table: Mapping[Permutation, np.ndarray]):
        self._table = {p: _frozen(m) for p, m in table.items()}
        self._order = sorted(self._table)

    def __getitem__(self, p: Permutation) -> np.ndarray:
        return self._table[p]

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._table)

    @property
    def elements(self) -> list[Permutation]:
        return list(self._order)

    def matrices(self) -> np.ndarray:
        """All matrices stacked in element order, shape (24, 3, 3)."""
        return np.stack([self._table[p] for p in self._order])

    def kron_squares(self) -> np.ndarray:
        """D(g) (x) D(g) for every g, shape (24, 9, 9)."""
        return np.stack([np.kron(m, m) for m in self.matrices()])

    def character(self, p: Permutation) -> float:
        return float(np.trace(self._table[p]))

    def homomorphism_defect(self) -> float:
        """Largest entrywise violation of D(pq) = D(p)D(q) over all pairs."""
        worst = 0.0
        for p in self._order:
            for q in self._order:
                diff = self._table[compose(p, q)] - self._table[p] @ self._table[q]
                worst = max(worst, float(np.abs(diff).max()))
        return worst


def build_representation(tol: float = 1e-10) -> Representation:
    """Extend the transposition matrices to all of S4.

    Each element gets the product of its bubble-sort factorization. An
    independent word (found by breadth-first search over all six
    transpositions) is multiplied out as well; the two must agree.
    """
    all_transpositions = list(_TRANSPOSITIONS)
    words = {Permutation.identity(): []}
    frontier = [Permutation.identity()]
    while frontier:
        fresh = []
        for p in frontier:
            for pair in all_transpositions:
                q = compose(p, Permutation.transposition(*pair))
                if q not in words:
                    words[q] = words[p] + [pair]
                    fresh.append(q)
        frontier = fresh

    table = {}
    for p, word in words.items():
        m = _product(adjacent_factorization(p))
        other = _product(word)
        if np.abs(m - other).max() > tol:
            raise RepresentationInconsistencyError(
                f"factorizations of {p} disagree by {np.abs(m - other).max():.3g}"
            )
        table[p] = m
    table[Permutation.identity()] = np.eye(3)
    return Representation(table)

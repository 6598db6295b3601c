"""The 48-term inequality and its classical (deterministic-strategy) bound.

A deterministic strategy fixes one outcome per observable on each side; its
coefficient c(sigma) counts how many of the 48 terms it satisfies. The
classical bound is the maximum of c over all 3**16 strategies, found here by
exhaustive enumeration with exact integer counts.
"""
from __future__ import annotations

import os
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import fixtures
from .bell import as_state
from .exceptions import GraphStructureError, InequalityFixtureMismatchError, OrbitClosureError
from .group import Representation
from .orbit import LabeledOrbit

N_OBS = 8
N_OUT = 3
N_SIDE = N_OUT**N_OBS  # 6561 strategies per party
N_STRATEGIES = N_SIDE * N_SIDE
MAX_C = 16
_CHUNK = 256


class OrbitTerm(NamedTuple):
    a_index: int
    a_outcome: int
    b_index: int
    b_outcome: int
    source: str = ""

    @property
    def key(self) -> tuple[int, int, int, int]:
        return self.a_index, self.a_outcome, self.b_index, self.b_outcome


def diagonal_orbit(
    orbit: LabeledOrbit, rep: Representation, seed, source: str = ""
) -> list[OrbitTerm]:
    """Labels of (D(g) (x) D(g)) applied to the seed product state, for all g.

    ``seed`` is ``((i, alpha), (i', alpha'))``. Returned terms are sorted and
    deduplicated.
    """
    (i, a), (j, b) = seed
    left, right = orbit[(i, a)], orbit[(j, b)]
    terms = set()
    for g in rep:
        m = rep[g]
        la, lb = orbit.label_of(m @ left), orbit.label_of(m @ right)
        if la is None or lb is None:
            raise OrbitClosureError(f"D({g}) maps seed {seed} outside the labeled orbit")
        terms.add(OrbitTerm(*la, *lb, source))
    return sorted(terms)


def inequality_terms(
    orbit: LabeledOrbit | None = None, rep: Representation | None = None
) -> list[OrbitTerm]:
    """All 48 terms, in published order.

    With ``orbit`` and ``rep`` given, the terms are regenerated from the two
    seeds and must coincide with the transcribed fixture.
    """
    published = [OrbitTerm(*t) for t in fixtures.INEQUALITY_TERMS]
    if orbit is None or rep is None:
        return published
    for source, (i, a, j, b) in fixtures.ORBIT_SEEDS.items():
        generated = set(diagonal_orbit(orbit, rep, ((i, a), (j, b)), source))
        expected = {t for t in published if t.source == source}
        if generated != expected:
            raise InequalityFixtureMismatchError(
                f"{source}: generated-only {sorted(generated - expected)}, "
                f"fixture-only {sorted(expected - generated)}"
            )
    return published


@dataclass(frozen=True)
class Strategy:
    """Deterministic outcome assignment, f_A[s - 1] and f_B[t - 1] in {0, 1, 2}."""

    f_A: tuple[int, ...]
    f_B: tuple[int, ...]

    def __post_init__(self):
        for name in ("f_A", "f_B"):
            f = tuple(int(x) for x in getattr(self, name))
            if len(f) != N_OBS or any(x not in (0, 1, 2) for x in f):
                raise ValueError(f"{name} must be {N_OBS} outcomes in {{0,1,2}}, got {f}")
            object.__setattr__(self, name, f)

    @classmethod
    def from_indices(cls, alice: int, bob: int) -> Strategy:
        return cls(decode(alice), decode(bob))

    @property
    def indices(self) -> tuple[int, int]:
        return encode(self.f_A), encode(self.f_B)


def encode(outcomes: Sequence[int]) -> int:
    """Base-3 index with the outcome for observable 1 as the least significant digit."""
    return sum(int(x) * N_OUT**k for k, x in enumerate(outcomes))


def decode(index: int) -> tuple[int, ...]:
    if not 0 <= index < N_SIDE:
        raise ValueError(f"strategy index out of range: {index}")
    return tuple((index // N_OUT**k) % N_OUT for k in range(N_OBS))


def coefficient_c(sigma: Strategy, terms: Iterable[OrbitTerm] | None = None) -> int:
    """Number of terms satisfied by ``sigma``, checked term by term."""
    terms = inequality_terms() if terms is None else terms
    return sum(
        1
        for t in terms
        if sigma.f_A[t.a_index - 1] == t.a_outcome and sigma.f_B[t.b_index - 1] == t.b_outcome
    )


def win_matrices(terms: Iterable[OrbitTerm] | None = None) -> np.ndarray:
    """W[s, t, alpha, beta] = multiplicity of term (s+1, alpha; t+1, beta), as uint8."""
    terms = inequality_terms() if terms is None else terms
    W = np.zeros((N_OBS, N_OBS, N_OUT, N_OUT), dtype=np.uint8)
    for t in terms:
        W[t.a_index - 1, t.b_index - 1, t.a_outcome, t.b_outcome] += 1
    return W


def coefficient_c_lookup(sigma: Strategy, W: np.ndarray | None = None) -> int:
    """c(sigma) as a sum of win-matrix entries over the 64 (s, t) pairs."""
    W = win_matrices() if W is None else W
    return int(sum(W[s, t, sigma.f_A[s], sigma.f_B[t]] for s in range(N_OBS) for t in range(N_OBS)))


_DIGITS = (np.arange(N_SIDE)[:, None] // N_OUT ** np.arange(N_OBS)) % N_OUT  # (6561, 8)


def _alice_tables(W: np.ndarray) -> np.ndarray:
    """g[a, 3t + beta] = sum_s W[s, t, f_A(s), beta] for every Alice strategy a."""
    g = np.zeros((N_SIDE, N_OBS * N_OUT), dtype=np.uint8)
    for s in range(N_OBS):
        # W[s] is (t, alpha, beta); pick alpha per Alice strategy
        g += W[s].transpose(1, 0, 2)[_DIGITS[:, s]].reshape(N_SIDE, -1)
    return g


@dataclass(frozen=True)
class CoefficientHistogram:
    counts: tuple[int, ...]  # counts[c] for c = 0..16

    def __post_init__(self):
        if len(self.counts) != MAX_C + 1:
            raise ValueError("histogram needs 17 bins")

    def __getitem__(self, c: int) -> int:
        return self.counts[c]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def max_c(self) -> int:
        return max(c for c, n in enumerate(self.counts) if n)

    def to_csv(self) -> str:
        return "c,count\n" + "".join(f"{c},{n}\n" for c, n in enumerate(self.counts))

    def compare_table_1(self) -> list[tuple[int, int, int, bool]]:
        """(c, published, computed, equal) for the published bins and the implied bin 0."""
        rows = [(0, fixtures.TABLE_1_IMPLIED_ZERO, self.counts[0])]
        rows += [(c, n, self.counts[c]) for c, n in fixtures.TABLE_1.items()]
        return [(c, pub, got, pub == got) for c, pub, got in rows]


@dataclass(frozen=True)
class EnumerationResult:
    histogram: CoefficientHistogram
    maximizers: tuple[tuple[int, int], ...]  # (alice index, bob index) with c == max

    @property
    def optimal_strategies(self) -> list[Strategy]:
        return [Strategy.from_indices(a, b) for a, b in self.maximizers]


def _scan(g: np.ndarray, lo: int, hi: int, target: int):
    """Histogram and argmax positions for Alice strategies lo..hi-1 against all of Bob."""
    hist = np.zeros(MAX_C + 1, dtype=np.int64)
    hits = []
    bob_cols = np.arange(N_OBS) * N_OUT + _DIGITS  # (6561, 8)
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        block = g[start:stop]
        scores = np.zeros((stop - start, N_SIDE), dtype=np.uint8)
        for t in range(N_OBS):
            scores += block[:, bob_cols[:, t]]
        hist += np.bincount(scores.ravel(), minlength=MAX_C + 1)
        a, b = np.nonzero(scores >= target)
        hits.extend(zip((a + start).tolist(), b.tolist(), scores[a, b].tolist()))
    return hist, hits


def default_workers() -> int:
    return os.cpu_count() or 1


def enumerate_strategies(
    terms: Iterable[OrbitTerm] | None = None, workers: int = 1, keep_at_least: int = 14
) -> EnumerationResult:
    """Exact histogram of c over all 3**16 deterministic strategies.

    Alice strategies are split into ``workers`` contiguous ranges, each with
    a private histogram; the merge is integer addition, so the result does not
    depend on the worker count. Strategies scoring at least ``keep_at_least``
    are collected and those attaining the overall maximum are returned.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    W = win_matrices(terms)
    g = _alice_tables(W)
    bounds = np.linspace(0, N_SIDE, workers + 1).astype(int)
    ranges = list(zip(bounds[:-1], bounds[1:]))
    if workers == 1:
        parts = [_scan(g, lo, hi, keep_at_least) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _scan(g, *r, keep_at_least), ranges))
    hist = np.zeros(MAX_C + 1, dtype=np.int64)
    hits = []
    for h, found in parts:
        hist += h
        hits.extend(found)
    histogram = CoefficientHistogram(tuple(int(n) for n in hist))
    best = histogram.max_c
    maximizers = tuple(sorted((a, b) for a, b, c in hits if c == best))
    return EnumerationResult(histogram, maximizers)


def classical_histogram(workers: int = 1) -> CoefficientHistogram:
    return enumerate_strategies(workers=workers).histogram


Vertex = tuple[str, int, int]  # ("A" | "B", observable, outcome)


def constraint_graph_cycles(terms: Iterable[OrbitTerm] | None = None) -> list[list[Vertex]]:
    """Decompose the term graph into cycles.

    Vertices are Alice labels and Bob labels; each term is one edge. Every
    vertex must have degree 2, so the graph is a disjoint union of cycles;
    each must have length 6. Cycles start at their smallest Alice vertex and
    alternate A, B, A, ...
    """
    terms = list(inequality_terms() if terms is None else terms)
    adj: dict[Vertex, list[tuple[Vertex, int]]] = {}
    for k, t in enumerate(terms):
        a, b = ("A", t.a_index, t.a_outcome), ("B", t.b_index, t.b_outcome)
        adj.setdefault(a, []).append((b, k))
        adj.setdefault(b, []).append((a, k))
    degrees = Counter(len(v) for v in adj.values())
    if set(degrees) != {2}:
        raise GraphStructureError(f"vertex degrees {dict(degrees)}; expected all 2")

    cycles, seen_edges = [], set()
    for start in sorted(v for v in adj if v[0] == "A"):
        if any(k in seen_edges for _, k in adj[start]):
            continue
        cycle, prev_edge, v = [start], None, start
        while True:
            nxt, k = next((w, k) for w, k in adj[v] if k != prev_edge)
            seen_edges.add(k)
            if nxt == start:
                break
            cycle.append(nxt)
            prev_edge, v = k, nxt
        cycles.append(cycle)
    if len(seen_edges) != len(terms) or any(len(c) != 6 for c in cycles):
        raise GraphStructureError(f"cycle lengths {[len(c) for c in cycles]}; expected all 6")
    return cycles


def term_amplitudes(state, orbit: LabeledOrbit, terms: Iterable[OrbitTerm] | None = None) -> np.ndarray:
    """<x^i_alpha (x) x^i'_alpha' | state> for each term."""
    chi = as_state(state)
    terms = inequality_terms() if terms is None else terms
    return np.array(
        [np.kron(orbit[(t.a_index, t.a_outcome)], orbit[(t.b_index, t.b_outcome)]) @ chi for t in terms]
    )


def quantum_value_S(state, orbit: LabeledOrbit, terms: Iterable[OrbitTerm] | None = None) -> float:
    """Quantum value of the 48-term probability sum in a pure bipartite state."""
    return float(np.sum(term_amplitudes(state, orbit, terms) ** 2))

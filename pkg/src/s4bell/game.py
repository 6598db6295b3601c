"""The two-player nonlocal game defined by the inequality terms.

The referee draws questions s, t in 1..8 uniformly (64 equally likely
pairs); Alice answers alpha and Bob beta in {0, 1, 2}. They win when
(s, alpha; t, beta) is one of the 48 terms. Question pairs with no listed
term cannot be won.
"""
from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fixtures
from .classical import N_OBS, OrbitTerm, Strategy, inequality_terms, term_amplitudes
from .exceptions import WinTableMismatchError
from .orbit import LabeledOrbit

N_QUESTIONS = N_OBS * N_OBS

Pair = tuple[int, int]


@dataclass(frozen=True)
class WinTable:
    wins: Mapping[Pair, frozenset[Pair]]  # (s, t) -> {(alice_out, bob_out)}; absent keys lose

    def __getitem__(self, st: Pair) -> frozenset[Pair]:
        return self.wins.get(st, frozenset())

    def winning_pairs(self) -> int:
        return sum(len(v) for v in self.wins.values())

    def nonempty_keys(self) -> list[Pair]:
        return sorted(k for k, v in self.wins.items() if v)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "t", "alice_out", "bob_out"])
        for s, t in self.nonempty_keys():
            for a, b in sorted(self.wins[(s, t)]):
                w.writerow([s, t, a, b])
        return buf.getvalue()

    def to_text(self) -> str:
        """Compact ``st | ab, ab`` layout, one row per question pair."""
        return "".join(
            f"{s}{t} | {', '.join(f'{a}{b}' for a, b in sorted(self.wins[(s, t)]))}\n"
            for s, t in self.nonempty_keys()
        )


def build_win_table(terms: Iterable[OrbitTerm] | None = None, fixture=None) -> WinTable:
    terms = inequality_terms() if terms is None else terms
    wins: dict[Pair, set[Pair]] = {}
    for t in terms:
        wins.setdefault((t.a_index, t.b_index), set()).add((t.a_outcome, t.b_outcome))
    table = {k: frozenset(v) for k, v in wins.items()}
    expected = fixtures.TABLE_2 if fixture is None else fixture
    if table != dict(expected):
        diff = sorted(set(table.items()) ^ set(dict(expected).items()))
        raise WinTableMismatchError(f"win table differs from reference at {diff}")
    return WinTable(table)


def classical_win_probability(sigma: Strategy, table: WinTable) -> Fraction:
    won = sum(
        (sigma.f_A[s - 1], sigma.f_B[t - 1]) in table[(s, t)]
        for s in range(1, N_OBS + 1)
        for t in range(1, N_OBS + 1)
    )
    return Fraction(won, N_QUESTIONS)


def quantum_win_probability(state, orbit: LabeledOrbit, table: WinTable) -> float:
    """Win probability when both players measure their observables on a shared pure state."""
    terms = [
        OrbitTerm(s, a, t, b)
        for (s, t), pairs in sorted(table.wins.items())
        for a, b in sorted(pairs)
    ]
    return float(np.sum(term_amplitudes(state, orbit, terms) ** 2)) / N_QUESTIONS

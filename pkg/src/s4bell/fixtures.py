"""Published reference data, transcribed by hand.

Everything here is ground truth that the computed objects are checked
against; nothing in this module is derived from the other modules.
"""
from __future__ import annotations

from math import sqrt

import numpy as np

_R2, _R3, _R6 = sqrt(2.0), sqrt(3.0), sqrt(6.0)

#: Vertices of the regular tetrahedron orbit of (1, 0, 0), keyed by vertex number.
TETRAHEDRON = {
    1: (-1 / 3, -_R2 / 3, -_R6 / 3),
    2: (-1 / 3, -_R2 / 3, _R6 / 3),
    3: (-1 / 3, sqrt(8.0) / 3, 0.0),
    4: (1.0, 0.0, 0.0),
}

# (i, alpha) -> unit 3-vector; closed forms evaluated in double precision.
APPENDIX_A: dict[tuple[int, int], tuple[float, float, float]] = {
    (1, 0): (_R3 / 3, _R3 / 3, -_R3 / 3),
    (1, 1): (_R3 / 3, 0.5 * (1 - _R3 / 3), 0.5 * (1 + _R3 / 3)),
    (1, 2): (_R3 / 3, -0.5 * (1 + _R3 / 3), -0.5 * (1 - _R3 / 3)),
    (2, 0): ((-3 * _R2 - _R3 - _R6) / 9, (-3 + 5 * _R3 - 2 * _R6) / 18, (-1 - 2 * _R2 + _R3) / 6),
    (2, 1): ((-_R3 + 2 * _R6) / 9, (9 - _R3 - 2 * _R6) / 18, -(1 + 2 * _R2 + _R3) / 6),
    (2, 2): ((3 * _R2 - _R3 - _R6) / 9, -(3 + 2 * _R3 + _R6) / 9, (1 - _R2) / 3),
    (3, 0): ((3 * _R2 - _R3 - _R6) / 9, (3 + 5 * _R3 - 2 * _R6) / 18, (1 + 2 * _R2 + _R3) / 6),
    (3, 1): ((-_R3 + 2 * _R6) / 9, -(9 + _R3 + 2 * _R6) / 18, (1 + 2 * _R2 - _R3) / 6),
    (3, 2): (-(3 * _R2 + _R3 + _R6) / 9, (3 - 2 * _R3 - _R6) / 9, (-1 + _R2) / 3),
    (4, 0): ((3 * _R2 - _R3 - _R6) / 9, (3 - _R3 + 4 * _R6) / 18, (3 + _R3) / 6),
    (4, 1): ((-_R3 + 2 * _R6) / 9, (_R3 + 2 * _R6) / 9, -_R3 / 3),
    (4, 2): (-(3 * _R2 + _R3 + _R6) / 9, (-3 - _R3 + 4 * _R6) / 18, (-3 + _R3) / 6),
    (5, 0): ((-_R3 + 2 * _R6) / 9, (9 - _R3 - 2 * _R6) / 18, (1 + 2 * _R2 + _R3) / 6),
    (5, 1): (-(3 * _R2 + _R3 + _R6) / 9, (-3 + 5 * _R3 - 2 * _R6) / 18, (1 + 2 * _R2 - _R3) / 6),
    (5, 2): ((3 * _R2 - _R3 - _R6) / 9, -(3 + 2 * _R3 + _R6) / 9, (-1 + _R2) / 3),
    (6, 0): (-(3 * _R2 + _R3 + _R6) / 9, (-3 - _R3 + 4 * _R6) / 18, (3 - _R3) / 6),
    (6, 1): ((3 * _R2 - _R3 - _R6) / 9, (3 - _R3 + 4 * _R6) / 18, -(3 + _R3) / 6),
    (6, 2): ((-_R3 + 2 * _R6) / 9, (_R3 + 2 * _R6) / 9, _R3 / 3),
    (7, 0): ((3 * _R2 - _R3 - _R6) / 9, (3 + 5 * _R3 - 2 * _R6) / 18, -(1 + 2 * _R2 + _R3) / 6),
    (7, 1): ((-_R3 + 2 * _R6) / 9, -(9 + _R3 + 2 * _R6) / 18, (-1 - 2 * _R2 + _R3) / 6),
    (7, 2): (-(3 * _R2 + _R3 + _R6) / 9, (3 - 2 * _R3 - _R6) / 9, (1 - _R2) / 3),
    (8, 0): (_R3 / 3, -0.5 * (1 + _R3 / 3), 0.5 * (1 - _R3 / 3)),
    (8, 1): (_R3 / 3, 0.5 * (1 - _R3 / 3), -0.5 * (1 + _R3 / 3)),
    (8, 2): (_R3 / 3, _R3 / 3, _R3 / 3),
}


def appendix_a_array() -> np.ndarray:
    """The 24 reference vectors as an (8, 3, 3) array indexed [i - 1, alpha, component]."""
    out = np.empty((8, 3, 3))
    for (i, alpha), v in APPENDIX_A.items():
        out[i - 1, alpha] = v
    return out


# Inequality terms (a_index, a_outcome, b_index, b_outcome) in printed order.
# The first 24 come from the second diagonal orbit, the last 24 from the first.
_EQ12 = """
1 0 4 1  1 1 5 0  1 2 7 1  2 0 4 2  2 1 8 1  2 2 5 2  3 0 4 0  3 1 8 0
3 2 7 2  4 0 3 0  4 1 1 0  4 2 2 0  5 0 1 1  5 1 6 0  5 2 2 2  6 0 5 1
6 1 7 0  6 2 8 2  7 0 6 1  7 1 1 2  7 2 3 2  8 0 3 1  8 1 2 1  8 2 6 2
1 0 8 1  1 1 8 2  1 2 8 0  2 0 7 2  2 1 7 0  2 2 7 1  3 0 5 0  3 1 5 2
3 2 5 1  4 0 6 2  4 1 6 1  4 2 6 0  5 0 3 0  5 1 3 2  5 2 3 1  6 0 4 2
6 1 4 1  6 2 4 0  7 0 2 1  7 1 2 2  7 2 2 0  8 0 1 2  8 1 1 0  8 2 1 1
"""
_flat = [int(tok) for tok in _EQ12.split()]
INEQUALITY_TERMS: tuple[tuple[int, int, int, int, str], ...] = tuple(
    (*_flat[4 * k: 4 * k + 4], "O2" if k < 24 else "O1") for k in range(48)
)
del _flat

#: Seeds (a_index, a_outcome, b_index, b_outcome) of the two diagonal orbits.
ORBIT_SEEDS = {"O1": (1, 1, 8, 2), "O2": (6, 2, 8, 2)}

CLASSICAL_BOUND = 14

#: Published histogram of c(sigma) for c = 1..16. Bin 0 is not printed.
TABLE_1 = {
    1: 327_600,
    2: 1_494_180,
    3: 4_141_080,
    4: 7_754_904,
    5: 9_832_752,
    6: 9_010_692,
    7: 5_984_856,
    8: 2_966_364,
    9: 1_094_688,
    10: 314_712,
    11: 72_720,
    12: 12_410,
    13: 1_584,
    14: 144,
    15: 0,
    16: 0,
}

#: Bin 0 as implied by the published table: 3**16 minus the printed bins.
TABLE_1_IMPLIED_ZERO = 3**16 - sum(TABLE_1.values())

# "st | alice bob, ..." rows of the published win table.
_TABLE_2 = """
14 01; 15 10; 17 21; 18 01 12 20; 24 02; 25 22; 27 02 10 21; 28 11;
34 00; 35 00 12 21; 37 22; 38 10; 41 10; 42 20; 43 00; 46 02 11 20;
51 01; 52 22; 53 00 12 21; 56 10; 64 02 11 20; 65 01; 67 10; 68 22;
71 12; 72 01 12 20; 73 22; 76 01; 81 02 10 21; 82 11; 83 01; 86 22
"""


def _parse_table_2() -> dict[tuple[int, int], frozenset[tuple[int, int]]]:
    rows = {}
    for row in _TABLE_2.split(";"):
        key, *pairs = row.split()
        rows[(int(key[0]), int(key[1]))] = frozenset((int(p[0]), int(p[1])) for p in pairs)
    return rows


TABLE_2 = _parse_table_2()

#: Deterministic strategy achieving c = 14 (also the published optimal game strategy).
OPTIMAL_STRATEGY = {
    "f_A": (2, 2, 1, 2, 1, 0, 2, 0),
    "f_B": (2, 0, 2, 2, 2, 0, 1, 0),
}

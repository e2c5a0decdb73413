"""Published reference data (class counts, cell census, weights, adjacency matrices), transcribed verbatim."""

_T0 = [
    [0, 0, 0, 0, 0, 2, 4, 1, 0, 0, 0, 4, 4, 0, 0, 3, 4, 4, 4, 0],
    [0, 0, 0, 0, 0, 0, 9, 0, 0, 0, 0, 0, 0, 6, 0, 9, 3, 3, 0, 0],
    [0, 0, 0, 0, 0, 0, 3, 0, 6, 0, 0, 0, 0, 0, 6, 3, 1, 3, 0, 8],
    [0, 0, 0, 0, 0, 3, 0, 0, 0, 2, 6, 0, 0, 1, 3, 3, 0, 0, 6, 6],
    [0, 0, 0, 0, 0, 0, 0, 0, 6, 0, 6, 0, 3, 0, 0, 0, 0, 4, 3, 8],
]
_T1 = [
    ([1, 0, 0, 2, 0], [1, 0, 0, 2, 0]),
    ([1, 1, 1, 0, 0], [1, 1, 1, 0, 0]),
    ([3, 0, 0, 0, 0], [3, 0, 0, 0, 0]),
    ([0, 0, 1, 0, 2], [0, 0, 1, 0, 2]),
    ([0, 0, 0, 3, 0], [0, 0, 0, 3, 0]),
    ([0, 0, 0, 1, 2], [0, 0, 0, 1, 2]),
    ([3, 0, 0, 0, 0], [0, 2, 0, 1, 0]),
    ([1, 0, 0, 0, 2], [0, 0, 2, 1, 0]),
    ([0, 2, 0, 1, 0], [3, 0, 0, 0, 0]),
    ([0, 0, 2, 1, 0], [1, 0, 0, 0, 2]),
]
_T2 = [
    [3, 4, 4, 4, 0, 2, 4, 1, 0, 0, 0, 0, 0, 4, 4],
    [9, 3, 3, 0, 0, 0, 9, 0, 0, 0, 0, 6, 0, 0, 0],
    [3, 1, 3, 0, 8, 0, 3, 0, 6, 0, 0, 0, 6, 0, 0],
    [3, 0, 0, 6, 6, 3, 0, 0, 0, 2, 6, 1, 3, 0, 0],
    [0, 0, 4, 3, 8, 0, 0, 0, 6, 0, 6, 0, 0, 0, 3],
]

ENHANCED_2_2_11 = _T0 + [a + [0] * 10 + b for a, b in _T1] + [r + [0] * 5 for r in _T2]
ENHANCED_2_2_11_BLOCKS = [5, 10, 5]

ENHANCED_3_2_3 = [
    [0, 0, 9, 27, 27, 45, 81, 189, 81, 54],
    [0, 0, 0, 0, 63, 0, 63, 252, 63, 72],
    [3, 0, 0, 0, 0, 6, 9, 0, 15, 0],
    [3, 0, 0, 0, 0, 3, 3, 9, 9, 6],
    [1, 2, 0, 0, 0, 0, 3, 12, 7, 8],
    [15, 0, 6, 9, 0, 0, 0, 0, 3, 0],
    [9, 6, 3, 3, 9, 0, 0, 0, 3, 0],
    [7, 8, 0, 3, 12, 0, 0, 0, 1, 2],
    [81, 54, 45, 81, 189, 9, 27, 27, 0, 0],
    [63, 72, 0, 63, 252, 0, 0, 63, 0, 0],
]
ENHANCED_3_2_3_BLOCKS = [2, 3, 3, 2]

_L1 = [
    [2, 0, 0, 4, 0],
    [2, 2, 2, 0, 0],
    [6, 0, 0, 0, 0],
    [0, 0, 2, 0, 4],
    [0, 0, 0, 6, 0],
    [0, 0, 0, 2, 4],
    [3, 2, 0, 1, 0],
    [1, 0, 2, 1, 2],
]
LITTLE_2_2_11 = [
    [3, 4, 4, 4, 0, 2, 4, 1, 0, 0, 0, 4, 4],
    [9, 3, 3, 0, 0, 0, 9, 0, 0, 0, 0, 6, 0],
    [3, 1, 3, 0, 8, 0, 3, 0, 6, 0, 0, 0, 6],
    [3, 0, 0, 6, 6, 3, 0, 0, 0, 2, 6, 1, 3],
    [0, 0, 4, 3, 8, 0, 0, 0, 6, 0, 6, 0, 3],
] + [r + [0] * 8 for r in _L1]
LITTLE_2_2_11_BLOCKS = [5, 8]

LITTLE_3_2_3 = [
    [81, 54, 54, 108, 216],
    [63, 72, 0, 63, 315],
    [18, 0, 6, 9, 0],
    [12, 6, 3, 3, 9],
    [8, 10, 0, 3, 12],
]
LITTLE_3_2_3_BLOCKS = [2, 3]

# regular blocks with their degree and spectrum
REGULAR_3_3_2 = [[8, 32, 0], [4, 4, 32], [0, 12, 28]]
REGULAR_3_2_3 = [[6, 9, 0], [3, 3, 9], [0, 3, 12]]

# class counts h_r and quotient counts hbar_r
CLASS_COUNTS = {
    (2, 2, 7): {"h": [2, 4, 2], "hbar": [2, 4]},
    (2, 2, 11): {"h": [5, 10, 5], "hbar": [5, 8], "ramified": 6, "etale": 4},
    (3, 2, 3): {"h": [2, 3, 3, 2], "hbar": [2, 3]},
    (1, 2, 11): {"h": [2, 2]},
}

CELL_COUNTS_2_2_7 = {(0,): 2, (1,): 4, (2,): 2, (1, 0): 7, (2, 0): 9, (2, 1): 7, (2, 1, 0): 16}

# weight multisets; the printed (1,0) and (2,0) rows are exchanged here
WEIGHTS_2_2_7 = {
    (0,): [32, 48],
    (1,): [16, 16, 8, 96],
    (2,): [32, 48],
    (1, 0): [8, 16, 8, 8, 32, 4, 16],
    (2, 0): [8, 8, 32, 16, 8, 8, 12, 12, 48],
    (2, 1): [8, 16, 8, 16, 8, 4, 32],
    (2, 1, 0): [4, 8, 8, 16, 8, 8, 8, 8, 4, 32, 16, 4, 4, 4, 8, 16],
}

MASSES_2_2_7 = {
    (0,): "5/96", (1,): "25/96", (2,): "5/96",
    (1, 0): "25/32", (2, 0): "25/32", (2, 1): "25/32", (2, 1, 0): "75/32",
}

# little complex census: type -> (regular, half)
LITTLE_CENSUS_2_2_7 = {(0,): (2, 0), (1,): (0, 4), (1, 0): (7, 0), (2, 0): (2, 5), (2, 1, 0): (4, 8)}

ISOTROPIC_COUNTS_2 = {(1, 0): 3, (2, 0): 15, (2, 1): 15, (3, 0): 135, (3, 1): 315, (3, 2): 63}

REGULAR_BLOCK_SPECTRA = {
    "3_3_2": {"matrix": REGULAR_3_3_2, "k": 40, "ramanujan": True},
    "3_2_3": {"matrix": REGULAR_3_2_3, "k": 15, "ramanujan": False},
}

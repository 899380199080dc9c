"""Published coefficient and determinant sequences used as expected values.

All of these are transcribed from the displayed tables for the q-deformed
metallic numbers, Catalan and Motzkin series; nothing here is computed.
"""

GOLDEN = [1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283, 5373, -12735,
          30372, -72832, 175502, -424748, 1032004]

SILVER = [1, 1, 0, 0, 1, 0, -2, 1, 4, -5, -7, 18, 7, -55, 18, 146, -155, -322, 692,
          476, -2446, 307]

BRONZE = [1, 1, 1, 0, 0, 0, 1, 0, -1, -2, 2, 4, 1, -11, -7, 15, 34, -17, -83, -38,
          189, 215, -260]

CATALAN = [1, 1, 2, 5, 14, 42]
MOTZKIN = [1, 1, 2, 4, 9, 21, 51]

# shifted Hankel determinant rows, keyed by shift
GOLDEN_WALL = {
    0: [1, 1, 1, 0, -1, -1, -1, 0],
    1: [1, 0, -1, 1, -1, 0, 1, -1],
    2: [1, 1, 1, 0, -1, -1, -1, 0],
    3: [1, -1, 0, 0, -1, 1, 0, 0],
}
GOLDEN_ROW4 = [1, 2, 0, -2, -3, -4, 0, 4, 5, 6, 0, -6, -7, -8, 0, 8]

SILVER_WALL = {
    0: [1, 1, -1, -1, 1, 0, -1, 0, 0, 1, 0, -1],
    1: [1, 1, 0, -1, 0, 0, -1, 0, 1, 1, -1, -1],
    2: [1, 0, 0, -1, 0, 1, -1, -1, 1, 1, -1, 0],
    3: [1, 0, -1, -1, 1, 1, -1, -1, 0, 1, 0, 0],
}
SILVER_ROW4 = [1, 1, -2, -1, 2, -1, -2, 1, 1, 0, 0, 0]

BRONZE_WALL = {
    0: [1, 1, 0, -1, -1, 1, 1, 0, -1, -1, 0, 0, 1, 0, 0, 0, 1, 0, 0, -1, -1, 0, 1, 1],
    1: [1, 1, -1, 0, 1, -1, 0, 0, -1, 0, 0, 0, -1, 0, 0, -1, 1, 0, -1, 1, 1, -1, 0, 1],
    2: [1, 1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 1, 1, 0, -1, -1, 1, 1, 0, -1, -1, 1, 1, 0],
    3: [1, 0, 0, 0, 1, 0, 0, 1, -1, 0, 1, -1, -1, 1, 0, -1, 1, 1, -1, 0, 1, -1, 0, 0],
    4: [1, 0, 0, -1, -1, 0, 1, 1, -1, -1, 0, 1, 1, -1, -1, 0, 1, 1, 0, 0, -1, 0, 0, 0],
}
BRONZE_ROW5 = [1, 0, -1, 2, 1, -1, 1, 0, -1, 0, 0, -1, 0, 1, -1, 1, 2, -1, 0, 1, 0, 0, 0, 0]

PLATINUM_WALL = {
    0: [1, 1, 0, 0, 1, 1, -1, 0, 1, 0, -1, -1, 1],
    1: [1, 1, 0, -1, 0, 1, -1, -1, 0, 0, -1, -1, 0],
    2: [1, 1, -1, 0, 0, 1, -1, 0, 0, 0, -1, 0, 0],
    3: [1, 1, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0],
    4: [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, -1, 0, 0],
    5: [1, 0, 0, 0, 1, 1, 0, 0, 1, 1, -1, 0, 1],
}

MOTZKIN_ROW1 = [1, 1, 0, -1, -1, 0]  # repeats
MOTZKIN_ROW2 = [1, 2, 2, 3, 4, 4, 5, 6, 6]

# (anti)periods: (p, sign) with D[n + p] = sign * D[n]
PERIODS = {1: (4, -1), 2: (12, 1), 3: (24, -1), 4: (40, 1)}

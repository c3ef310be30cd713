"""Published reference tables of the coefficients a_{S,n,k,m}.

Each row is (first m, values for consecutive m); blank reference cells
lie below the first admissible position and are omitted here.
"""

REFERENCE_TABLES = {
    (3, (1, 2)): {
        "mmax": 15,
        1: (1, [1, 3, 3, 7, 6, 9, 8, 15, 9, 18, 12, 21, 14, 24, 18]),
        2: (3, [1, 2, 6, 12, 20, 30, 48, 66, 90, 124, 154, 204, 240]),
        3: (7, [1, 3, 7, 15, 30, 49, 87, 132, 210]),
        4: (12, [1, 2, 6, 12]),
    },
    (4, (1, 3)): {
        "mmax": 16,
        1: (1, [1, 2, 4, 4, 6, 8, 8, 8, 13, 12, 12, 16, 14, 16, 24, 16]),
        2: (4, [1, 2, 4, 8, 14, 18, 28, 40, 52, 70, 88, 104, 140]),
        3: (9, [1, 2, 4, 8, 14, 24, 40, 56]),
        4: (16, [1]),
    },
    (5, (1, 4)): {
        "mmax": 16,
        1: (1, [1, 2, 3, 5, 5, 7, 7, 10, 10, 10, 12, 17, 13, 15, 15, 21]),
        2: (5, [1, 2, 4, 6, 10, 16, 20, 26, 38, 50, 62, 74]),
        3: (11, [1, 2, 3, 5, 9, 15]),
    },
    (5, (2, 3)): {
        "mmax": 16,
        1: (2, [1, 1, 2, 0, 5, 1, 5, 3, 5, 0, 11, 1, 9, 5, 10]),
        2: (5, [1, 0, 2, 2, 4, 6, 10, 8, 16, 18, 22, 30]),
        3: (12, [1, 1, 2, 4, 5]),
    },
    (6, (1, 5)): {
        "mmax": 16,
        1: (1, [1, 2, 3, 4, 6, 6, 8, 8, 9, 12, 12, 12, 14, 16, 18, 16]),
        2: (6, [1, 2, 4, 6, 8, 12, 18, 22, 28, 36, 48]),
        3: (13, [1, 2, 3, 4]),
    },
}


def entries(table):
    """Yield (k, m, value) for every printed cell."""
    for k, row in table.items():
        if k == "mmax":
            continue
        start, values = row
        for i, v in enumerate(values):
            yield k, start + i, v

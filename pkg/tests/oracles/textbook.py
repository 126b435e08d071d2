"""Textbook linear programs with their published optimal values.

Maximization problems are stored as written; ``as_min`` negates them for
the solver, which always minimizes.
"""
from __future__ import annotations

import math

INF = math.inf


def _transport():
    supply = [35, 50, 40]
    demand = [45, 20, 30, 30]
    cost = [[8, 6, 10, 9], [9, 12, 13, 7], [14, 9, 16, 5]]
    c = [cost[i][j] for i in range(3) for j in range(4)]
    A, senses, b = [], [], []
    for i in range(3):
        A.append([1 if k // 4 == i else 0 for k in range(12)])
        senses.append("<=")
        b.append(supply[i])
    for j in range(4):
        A.append([1 if k % 4 == j else 0 for k in range(12)])
        senses.append(">=")
        b.append(demand[j])
    return c, A, senses, b


def _sailco():
    # x_t regular, y_t overtime, i_t end inventory for four quarters
    demand, start = [40, 60, 75, 25], 10
    c = [400] * 4 + [450] * 4 + [20] * 4
    A, senses, b = [], [], []
    for t in range(4):
        row = [0] * 12
        row[t] = row[4 + t] = 1
        row[8 + t] = -1
        if t:
            row[8 + t - 1] = 1
        A.append(row)
        senses.append("=")
        b.append(demand[t] - (start if t == 0 else 0))
    bounds = [(0, 40)] * 4 + [(0, INF)] * 8
    return c, A, senses, b, bounds


def _post_office():
    need = [17, 13, 15, 19, 14, 16, 11]
    A = [[1 if (j - i) % 7 < 5 else 0 for i in range(7)] for j in range(7)]
    return [1] * 7, A, [">="] * 7, need


def _assignment():
    cost = [[9, 2, 7], [6, 4, 3], [5, 8, 1]]
    c = [cost[i][j] for i in range(3) for j in range(3)]
    A = [[1 if k // 3 == i else 0 for k in range(9)] for i in range(3)]
    A += [[1 if k % 3 == j else 0 for k in range(9)] for j in range(3)]
    return c, A, ["="] * 6, [1] * 6


def _max_flow():
    # arcs: s-a 3, s-b 2, a-b 1, a-t 2, b-t 3; maximize flow out of s
    c = [1, 1, 0, 0, 0]
    A = [[1, 0, -1, -1, 0], [0, 1, 1, 0, -1]]
    bounds = [(0, 3), (0, 2), (0, 1), (0, 2), (0, 3)]
    return c, A, ["=", "="], [0, 0], bounds


def problems():
    out = [
        ("wyndor_glass", "max", [3, 5], [[1, 0], [0, 2], [3, 2]], ["<="] * 3, [4, 12, 18], None, 36),
        ("reddy_mikks", "max", [5, 4], [[6, 4], [1, 2], [-1, 1], [0, 1]], ["<="] * 4, [24, 6, 1, 2], None, 21),
        ("giapetto", "max", [3, 2], [[2, 1], [1, 1], [1, 0]], ["<="] * 3, [100, 80, 40], None, 180),
        ("dorian_auto", "min", [50, 100], [[7, 2], [2, 12]], [">=", ">="], [28, 24], None, 320),
        (
            "dakota_furniture",
            "max",
            [60, 30, 20],
            [[8, 6, 1], [4, 2, 1.5], [2, 1.5, 0.5], [0, 1, 0]],
            ["<="] * 4,
            [48, 20, 8, 5],
            None,
            280,
        ),
        (
            "klee_minty_3",
            "max",
            [100, 10, 1],
            [[1, 0, 0], [20, 1, 0], [200, 20, 1]],
            ["<="] * 3,
            [1, 100, 10000],
            None,
            10000,
        ),
        (
            "diet",
            "min",
            [50, 20, 30, 80],
            [[400, 200, 150, 500], [3, 2, 0, 0], [2, 2, 4, 4], [2, 4, 1, 5]],
            [">="] * 4,
            [500, 6, 10, 8],
            None,
            90,
        ),
        ("powerco_transport", "min", *_transport(), None, 1020),
        ("three_resource", "max", [5, 4, 3], [[2, 3, 1], [4, 1, 2], [3, 4, 2]], ["<="] * 3, [5, 11, 8], None, 13),
        (
            "beale_cycling",
            "min",
            [-0.75, 20, -0.5, 6],
            [[0.25, -8, -1, 9], [0.5, -12, -0.5, 3], [0, 0, 1, 0]],
            ["<="] * 3,
            [0, 0, 1],
            None,
            -1.25,
        ),
        ("square_system", "min", [1, 1], [[1, 2], [3, 1]], ["=", "="], [4, 7], None, 3),
        (
            "radiation_therapy",
            "min",
            [0.4, 0.5],
            [[0.3, 0.1], [0.5, 0.5], [0.6, 0.4]],
            ["<=", "=", ">="],
            [2.7, 6, 6],
            None,
            5.25,
        ),
        ("farmer_jones", "max", [30, 100], [[1, 1], [4, 10], [10, 0]], ["<=", "<=", ">="], [7, 40, 30], None, 370),
        ("sailco_inventory", "min", *_sailco(), 78450),
        ("post_office", "min", *_post_office(), None, 67 / 3),
        ("assignment_3x3", "min", *_assignment(), None, 9),
        ("max_flow", "max", *_max_flow(), 5),
        ("free_variable", "min", [1, 1], [[1, 2], [1, -1]], [">=", ">="], [4, -5], [(-INF, INF), (0, INF)], 1),
        ("shifted_bounds", "max", [2, 3], [[1, 1]], ["<="], [5], [(1, 4), (-1, 3)], 13),
        ("degenerate_vertex", "max", [5, 2], [[1, 1], [1, -1]], ["<=", "<="], [6, 0], None, 21),
    ]
    return [
        {"name": n, "sense": s, "c": c, "A": A, "senses": se, "b": b, "bounds": bd, "optimum": opt}
        for n, s, c, A, se, b, bd, opt in out
    ]


def as_min(p):
    """(c, lb, ub, optimum) for the minimization form of problem ``p``."""
    n = len(p["c"])
    bounds = p["bounds"] or [(0, INF)] * n
    sign = -1.0 if p["sense"] == "max" else 1.0
    return [sign * v for v in p["c"]], [lo for lo, _ in bounds], [hi for _, hi in bounds], sign * p["optimum"]

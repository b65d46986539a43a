"""Shared deterministic random generators for the test suite."""

import random
from fractions import Fraction

from nilmat.exactmat import RMatrix, MatrixError, ZERO, ONE
from nilmat.qflag import FlagFrame, iso_backward


def rng(seed):
    return random.Random(seed)


def rand_fraction(r, lo=-3, hi=3, max_den=4):
    return Fraction(r.randint(lo, hi), r.randint(1, max_den))


def rand_matrix(r, rows, cols=None, lo=-3, hi=3, max_den=4):
    cols = rows if cols is None else cols
    return RMatrix(
        [[rand_fraction(r, lo, hi, max_den) for _ in range(cols)] for _ in range(rows)]
    )


def rand_nonneg_matrix(r, n, density=0.6, hi=3, max_den=3):
    return RMatrix(
        [
            [
                Fraction(r.randint(1, hi), r.randint(1, max_den))
                if r.random() < density
                else ZERO
                for _ in range(n)
            ]
            for _ in range(n)
        ]
    )


def rand_nonsingular(r, n, lo=-3, hi=3, max_den=2):
    while True:
        m = rand_matrix(r, n, lo=lo, hi=hi, max_den=max_den)
        try:
            m.inverse()
        except MatrixError:
            continue
        return m


def rand_frame(r, n, dims=None):
    """Random frame: all-ones column plus small-integer zero-sum columns."""
    while True:
        cols = [[ONE] * n]
        for _ in range(n - 1):
            body = [Fraction(r.randint(-3, 3)) for _ in range(n - 1)]
            cols.append(body + [-sum(body, ZERO)])
        try:
            return FlagFrame(
                RMatrix(cols).transpose(),
                dims if dims is not None else range(1, n),
            )
        except MatrixError:
            continue


def rand_q_matrix(r, frame, lo=-2, hi=2, max_den=2):
    """Random member of the unit-sum semigroup, via the frame embedding."""
    return iso_backward(rand_matrix(r, frame.n - 1, lo=lo, hi=hi, max_den=max_den), frame)


def rand_block_upper(r, frame, density=0.7, lo=-2, hi=2, max_den=2):
    """Random reduced matrix respecting the frame's block pattern."""
    size = frame.n - 1
    rows = [[ZERO] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if frame.block_of(i + 1) < frame.block_of(j + 1) and r.random() < density:
                rows[i][j] = rand_fraction(r, lo, hi, max_den)
    return RMatrix(rows)


def rand_pattern_supported(r, pattern, hi=3, max_den=3, density=0.8):
    """Random nonnegative matrix supported inside a Boolean pattern."""
    n = pattern.n
    rows = [[ZERO] * n for _ in range(n)]
    for i, j in pattern.bits():
        if r.random() < density:
            rows[i][j] = Fraction(r.randint(1, hi), r.randint(1, max_den))
    return RMatrix(rows)

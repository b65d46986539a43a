"""Maximal nilpotent structure in the semigroup of nonnegative matrices.

Subsemigroups are represented by their Boolean support patterns. A linear
order on {1..n} labels the class-n case, an ordered partition into k
blocks the class-k case; everything element-level reduces to a membership
test against the pattern.
"""

import math

from .boolrel import BoolMatrix, nilpotency_index
from .exactmat import RMatrix, MatrixError, ONE, ZERO

KINDS = ("omega", "m0", "m0plus")


class LinearOrder:
    """A linear order on {1..n}, listed from smallest to largest."""

    __slots__ = ("seq",)

    def __init__(self, seq):
        seq = tuple(int(x) for x in seq)
        n = len(seq)
        if n < 1 or sorted(seq) != list(range(1, n + 1)):
            raise MatrixError(f"not a permutation of 1..{n}: {seq}")
        self.seq = seq

    @classmethod
    def parse(cls, text):
        return cls(int(part) for part in text.split(","))

    @property
    def n(self):
        return len(self.seq)

    def positions(self):
        """Map element -> 0-based slot in the order."""
        return {e: t for t, e in enumerate(self.seq)}

    def __str__(self):
        return ",".join(str(x) for x in self.seq)

    def __eq__(self, other):
        return isinstance(other, LinearOrder) and self.seq == other.seq

    def __hash__(self):
        return hash(self.seq)

    def __repr__(self):
        return f"LinearOrder({self.seq})"


class OrderedPartition:
    """Ordered sequence of disjoint nonempty blocks covering {1..n}."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(set(int(x) for x in b))) for b in blocks)
        if not blocks or any(not b for b in blocks):
            raise MatrixError("blocks must be nonempty")
        flat = [x for b in blocks for x in b]
        n = len(flat)
        if sorted(flat) != list(range(1, n + 1)):
            raise MatrixError(f"blocks must partition 1..{n}: {blocks}")
        self.blocks = blocks

    @classmethod
    def parse(cls, text):
        """Parse "1,3|2" into blocks ({1,3}, {2})."""
        return cls(part.split(",") for part in text.split("|"))

    @classmethod
    def _trusted(cls, blocks):
        # fast path for enumeration, where blocks are sorted, disjoint and
        # covering by construction
        self = object.__new__(cls)
        self.blocks = blocks
        return self

    @classmethod
    def singletons(cls, order):
        return cls((x,) for x in order.seq)

    @property
    def n(self):
        return sum(len(b) for b in self.blocks)

    @property
    def k(self):
        return len(self.blocks)

    def block_indices(self):
        """Map element -> 1-based index of its block."""
        out = {}
        for idx, block in enumerate(self.blocks, start=1):
            for x in block:
                out[x] = idx
        return out

    def __str__(self):
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, OrderedPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"OrderedPartition({self.blocks})"


def pattern_from_order(order):
    """Support pattern of the subsemigroup labelled by a linear order.

    Bit (k, l) is set exactly when k comes before l, so the pattern has
    n(n-1)/2 bits and is the strict upper triangle after relabelling.
    """
    pos = order.positions()
    n = order.n
    pairs = [
        (i - 1, j - 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and pos[i] < pos[j]
    ]
    pattern = BoolMatrix.from_pairs(n, pairs)
    assert pattern.bit_count() == n * (n - 1) // 2
    return pattern


def pattern_from_partition(partition):
    """Support pattern of the class-k subsemigroup labelled by an ordered
    partition: bit (i, j) is set when i's block comes strictly before j's."""
    bidx = partition.block_indices()
    n = partition.n
    pairs = [
        (i - 1, j - 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if bidx[i] < bidx[j]
    ]
    return BoolMatrix.from_pairs(n, pairs)


def membership(a, pattern, kind="omega"):
    """Does the matrix lie in the pattern's subsemigroup of the ambient?

    kind "omega" requires nonnegative entries, "m0" at most one nonzero
    per row and per column, "m0plus" both. On top of the ambient test the
    support must sit inside the pattern.
    """
    if kind not in KINDS:
        raise MatrixError(f"unknown semigroup kind: {kind!r}")
    if not a.is_square or a.rows != pattern.n:
        raise MatrixError("matrix size must match the pattern size")
    if kind in ("omega", "m0plus"):
        if any(x < 0 for row in a.to_rows() for x in row):
            return False
    if kind in ("m0", "m0plus"):
        for i in range(a.rows):
            if sum(1 for x in a.row(i) if x != 0) > 1:
                return False
        for j in range(a.cols):
            if sum(1 for x in a.column(j) if x != 0) > 1:
                return False
    return all(pattern.has_bit(i, j) for i, j in a.nonzero_positions())


def count_max_nilpotent(n, k):
    """Number of maximal nilpotent subsemigroups of class k, i.e. the
    number of surjections from an n-set onto k ordered blocks, by
    inclusion-exclusion. k = n gives n!."""
    if not (1 <= k <= n):
        raise MatrixError(f"need 1 <= k <= n, got k={k}, n={n}")
    return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k))


def iter_ordered_partitions(n, k):
    """All ordered partitions of {1..n} into k nonempty blocks.

    Canonical order: blocks hold sorted contents and partitions come out
    lexicographically by the vector (block index of 1, ..., block index
    of n)."""
    if not (1 <= k <= n):
        raise MatrixError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > 10:
        raise MatrixError("partition enumeration limited to n <= 10")
    assign = [0] * n

    def rec(i, used_mask):
        if i == n:
            blocks = [[] for _ in range(k)]
            for elem0, b in enumerate(assign):
                blocks[b - 1].append(elem0 + 1)
            yield OrderedPartition._trusted(tuple(tuple(b) for b in blocks))
            return
        remaining = n - i - 1
        for b in range(1, k + 1):
            mask = used_mask | (1 << b)
            if k - mask.bit_count() > remaining:
                continue
            assign[i] = b
            yield from rec(i + 1, mask)

    yield from rec(0, 0)


def enumerate_partitions(n, k):
    return list(iter_ordered_partitions(n, k))


def nilpotency_class(a):
    """Least k with a^k equal to the zero matrix, or None.

    The ambient here is the nonnegative matrices, whose zero element is
    the zero matrix; any nilpotent member dies by the n-th power.
    """
    if not a.is_square:
        raise MatrixError("nilpotency class defined for square matrices")
    if any(x < 0 for row in a.to_rows() for x in row):
        raise MatrixError("nilpotency class here is relative to the nonnegative ambient")
    p = a
    for k in range(1, a.rows + 1):
        if p.is_zero():
            return k
        p = p * a
    return None


def pattern_class(pattern):
    """Nilpotency class of the full pattern subsemigroup, computed as the
    least Boolean power of the pattern that vanishes."""
    k = nilpotency_index(pattern)
    if k is None:
        raise MatrixError("pattern has a directed cycle, so no nilpotency class")
    return k


def monomial_conjugator(order1, order2):
    """Permutation matrix M whose conjugation X -> M^-1 X M carries the
    first order's pattern onto the second's.

    M has a one at (i, j) exactly when j is the image of i under the
    permutation sending the t-th element of order1 to the t-th element
    of order2."""
    if order1.n != order2.n:
        raise MatrixError("orders live on different ground sets")
    n = order1.n
    image = {order1.seq[t]: order2.seq[t] for t in range(n)}
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][image[i] - 1] = ONE
    return RMatrix(rows)


def nilpotent_nonzero_count(a):
    """Count the nonzero entries of a nilpotent nonnegative matrix.

    The count never exceeds n(n-1)/2 because the support of a nilpotent
    nonnegative matrix fits inside a strict triangle after relabelling.
    """
    if not a.is_square:
        raise MatrixError("nonzero count defined for square matrices")
    if any(x < 0 for row in a.to_rows() for x in row):
        raise MatrixError("matrix must be nonnegative")
    n = a.rows
    if not (a ** n).is_zero():
        raise MatrixError("matrix is not nilpotent")
    count = a.count_nonzero()
    assert count <= n * (n - 1) // 2
    return count


def is_unit(a):
    """Is the matrix invertible inside the nonnegative ambient, i.e. a
    monomial matrix with positive entries? Equivalent to having an
    inverse that is again nonnegative."""
    if not a.is_square:
        raise MatrixError("unit test defined for square matrices")
    if any(x < 0 for row in a.to_rows() for x in row):
        raise MatrixError("unit test defined on nonnegative matrices")
    for i in range(a.rows):
        if sum(1 for x in a.row(i) if x != 0) != 1:
            return False
    for j in range(a.cols):
        if sum(1 for x in a.column(j) if x != 0) != 1:
            return False
    return True

"""Exact integer matrix algebra: rank, kernel lattices, lattice index, circuits.

Everything in this module is arbitrary-precision integer (or rational)
arithmetic; no floating point is used anywhere. Degree formulas and circuit
data downstream rely on these quantities being exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import RankDeficient, TooManyColumns

CIRCUIT_COLUMN_GUARD = 24


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix stored as a tuple of row tuples."""

    rows: tuple

    def __post_init__(self):
        if len(self.rows) < 1:
            raise ValueError("matrix needs at least one row")
        width = len(self.rows[0])
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for x in r:
                if not isinstance(x, int):
                    raise ValueError("entries must be ints")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.num_cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def submatrix_columns(self, cols) -> "IntMatrix":
        return IntMatrix(tuple(tuple(r[j] for j in cols) for r in self.rows))

    def matvec(self, v) -> tuple:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]


def as_int_matrix(data) -> IntMatrix:
    if isinstance(data, IntMatrix):
        return data
    return IntMatrix.from_rows(data)


@dataclass(frozen=True)
class CircuitData:
    """Circuits of an integer matrix together with their relation vectors.

    ``circuits`` holds 1-based column index sets; ``circuit_vectors[i]`` is
    the primitive integer relation supported exactly on ``circuits[i]``, sign
    normalized so its first nonzero entry is positive. ``coloops`` are the
    1-based columns lying in no circuit.
    """

    circuits: tuple
    circuit_vectors: tuple
    coloops: tuple
    cl_count: int


def rank_rational(matrix) -> int:
    """Exact rank over Q via fraction-free (Bareiss) elimination."""
    m = as_int_matrix(matrix).to_lists()
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, nrows):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for i in range(row + 1, nrows):
            lead = m[i][col]
            piv = m[row][col]
            for j in range(col, ncols):
                m[i][j] = (piv * m[i][j] - lead * m[row][j]) // prev
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def _column_hermite(matrix):
    """Column-style Hermite reduction A*U = H with U unimodular.

    Returns ``(H, U, rank)`` where the first ``rank`` columns of H form a
    column-echelon basis of the column lattice of A and the remaining columns
    of U generate the integer kernel lattice of A.
    """
    A = as_int_matrix(matrix)
    d, n = A.num_rows, A.num_cols
    H = [list(r) for r in A.rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op_sub(j, c, q):
        # column_j -= q * column_c
        for i in range(d):
            H[i][j] -= q * H[i][c]
        for i in range(n):
            U[i][j] -= q * U[i][c]

    def col_swap(j, c):
        for i in range(d):
            H[i][j], H[i][c] = H[i][c], H[i][j]
        for i in range(n):
            U[i][j], U[i][c] = U[i][c], U[i][j]

    def col_negate(c):
        for i in range(d):
            H[i][c] = -H[i][c]
        for i in range(n):
            U[i][c] = -U[i][c]

    c = 0
    for i in range(d):
        if c == n:
            break
        while True:
            nonzero = [j for j in range(c, n) if H[i][j] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: abs(H[i][j]))
            if j0 != c:
                col_swap(j0, c)
            done = True
            for j in range(c + 1, n):
                if H[i][j] != 0:
                    q = H[i][j] // H[i][c]
                    col_op_sub(j, c, q)
                    if H[i][j] != 0:
                        done = False
            if done:
                break
        if c < n and H[i][c] != 0:
            if H[i][c] < 0:
                col_negate(c)
            c += 1
    return H, U, c


def kernel_lattice_basis(matrix) -> IntMatrix:
    """Basis of the saturated integer kernel lattice {m in Z^n : A m = 0}.

    Returns an n x (n - rank) matrix whose columns are primitive and generate
    the kernel lattice. The column count may be zero.
    """
    A = as_int_matrix(matrix)
    _, U, rank = _column_hermite(A)
    n = A.num_cols
    basis_rows = tuple(tuple(U[i][j] for j in range(rank, n)) for i in range(n))
    return IntMatrix(basis_rows)


def lattice_index(matrix) -> int:
    """Index of the column lattice of A inside Z^d (product of HNF pivots)."""
    A = as_int_matrix(matrix)
    H, _, rank = _column_hermite(A)
    d = A.num_rows
    if rank < d:
        raise RankDeficient(f"matrix has rank {rank} < {d} rows")
    index = 1
    # column echelon: pivot of column c sits in some row; pivots are the
    # first nonzero entries going down, and the staircase is square here.
    c = 0
    for i in range(d):
        if c < rank and H[i][c] != 0:
            index *= abs(H[i][c])
            c += 1
    return index


def _primitive_kernel_vector(sub: IntMatrix) -> tuple:
    """The primitive kernel vector of a matrix with nullity one."""
    K = kernel_lattice_basis(sub)
    cols = K.num_cols
    if cols != 1:
        raise ValueError(f"expected nullity 1, got {cols}")
    v = [K.rows[i][0] for i in range(K.num_rows)]
    g = 0
    for x in v:
        g = gcd(g, x)
    v = [x // g for x in v]
    for x in v:
        if x != 0:
            if x < 0:
                v = [-y for y in v]
            break
    return tuple(v)


def circuits(matrix) -> CircuitData:
    """All circuits (minimal dependent column sets) of an integer matrix.

    Enumerates column subsets breadth-first by size, pruning supersets of
    circuits already found; a pruned-survivor subset S is a circuit exactly
    when rank(A_S) = |S| - 1. Results are ordered lexicographically.
    """
    A = as_int_matrix(matrix)
    n = A.num_cols
    if n > CIRCUIT_COLUMN_GUARD:
        raise TooManyColumns(f"{n} columns exceeds guard {CIRCUIT_COLUMN_GUARD}")
    r = rank_rational(A)
    found = []
    vectors = []
    for size in range(1, r + 2):
        for subset in itertools.combinations(range(n), size):
            sset = set(subset)
            if any(set(c) <= sset for c in found):
                continue
            sub = A.submatrix_columns(subset)
            if rank_rational(sub) == size - 1:
                found.append(subset)
                vec = _primitive_kernel_vector(sub)
                full = [0] * n
                for idx, j in enumerate(subset):
                    full[j] = vec[idx]
                vectors.append(tuple(full))
    in_circuit = set()
    for c in found:
        in_circuit.update(c)
    coloops = tuple(j + 1 for j in range(n) if j not in in_circuit)
    circuits_1based = tuple(tuple(j + 1 for j in c) for c in found)
    return CircuitData(
        circuits=circuits_1based,
        circuit_vectors=tuple(vectors),
        coloops=coloops,
        cl_count=len(coloops),
    )

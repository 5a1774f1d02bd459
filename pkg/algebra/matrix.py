"""
Matrix Module for the Linear Code Distance Search

Dense matrices over a GaloisField with Gauss-Jordan reduction, column
permutation and row-weight queries, plus the permutation helpers the search
engines use.

A permutation is a 1-D integer array x of length n. Permuting the columns of a
matrix by x puts source column x[i] at position i, and compose(x, y) is the
permutation with permute_columns(permute_columns(m, y), x) equal to
permute_columns(m, compose(x, y)).
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from algebra.finite_field import GaloisField

logger = logging.getLogger("algebra.matrix")


class MatrixError(ValueError):
    """Base class for matrix and permutation errors"""


class LengthMismatchError(MatrixError):
    def __init__(self, expected, found):
        super().__init__(f"length mismatch: expected {expected}, found {found}")
        self.expected = expected
        self.found = found


class AllRowsZeroError(MatrixError):
    pass


class GFMatrix:
    """Immutable dense k x n matrix of packed field elements"""

    def __init__(self, field: GaloisField, data):
        """
        Validate and store the entries

        Args:
            field (GaloisField): Field the entries belong to
            data: Nested sequence or 2-D array of integers in [0, q)
        """
        array = np.array(data, dtype=np.int64)
        if array.ndim != 2 or 0 in array.shape:
            raise MatrixError(f"expected a non-empty 2-D matrix, got shape {array.shape}")
        if array.min() < 0 or array.max() >= field.q:
            raise MatrixError(f"entries must lie in [0, {field.q})")
        array.setflags(write=False)
        self.field = field
        self.data = array

    @classmethod
    def _wrap(cls, field, array):
        # Entries already known to be valid.
        matrix = cls.__new__(cls)
        array.setflags(write=False)
        matrix.field = field
        matrix.data = array
        return matrix

    @classmethod
    def identity(cls, field: GaloisField, k: int, n: int = None) -> "GFMatrix":
        """k x n matrix with an identity block on the left and zero columns after it"""
        n = k if n is None else n
        return cls._wrap(field, np.eye(k, n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def row(self, index: int) -> np.ndarray:
        return self.data[index].copy()

    def with_row(self, word) -> "GFMatrix":
        """Copy of the matrix with one extra row stacked below"""
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.cols,):
            raise LengthMismatchError(self.cols, word.size)
        return GFMatrix(self.field, np.vstack([self.data, word]))

    def tolist(self) -> List[List[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"GFMatrix(GF({self.field.q}), {self.rows}x{self.cols})"


def _reduce(field: GaloisField, data: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination, left to right, topmost nonzero pivot"""
    work = np.array(data, dtype=field.dtype)
    k, n = work.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == k:
            break
        if not work[row, col]:
            candidates = np.flatnonzero(work[row:, col])
            if candidates.size == 0:
                continue
            top = row + int(candidates[0])
            work[[row, top]] = work[[top, row]]
        lead = int(work[row, col])
        if lead != 1:
            work[row, col:] = field.compact_scale(field.inv(lead), work[row, col:])
        factors = work[:, col].copy()
        factors[row] = 0
        if factors.any():
            # Line s of multiples is s times the pivot row; a zero factor leaves its row as is.
            multiples = field.compact_multiples(work[row, col:])
            block = work[:, col:]
            if field.p == 2:
                np.bitwise_xor(block, multiples[factors], out=block)
            else:
                block[...] = field.compact_sub(block, multiples[factors])
        pivots.append(col)
        row += 1
    return work.astype(np.int64), pivots


def rref(m: GFMatrix) -> Tuple[GFMatrix, int]:
    """
    Reduced row echelon form

    Args:
        m (GFMatrix): Matrix to reduce

    Returns:
        tuple: (RREF matrix, rank)
    """
    reduced, pivots = _reduce(m.field, m.data)
    return GFMatrix._wrap(m.field, reduced), len(pivots)


def rref_pivots(m: GFMatrix) -> Tuple[GFMatrix, List[int]]:
    """RREF together with its pivot columns"""
    reduced, pivots = _reduce(m.field, m.data)
    return GFMatrix._wrap(m.field, reduced), pivots


def rank(m: GFMatrix) -> int:
    return rref(m)[1]


def permute_columns(m: GFMatrix, x) -> GFMatrix:
    """
    Reorder the columns of a matrix

    Args:
        m (GFMatrix): Source matrix
        x: Permutation of length m.cols

    Returns:
        GFMatrix: Matrix whose column i is column x[i] of m
    """
    x = as_permutation(x, m.cols)
    return GFMatrix._wrap(m.field, m.data[:, x])


def row_weights(m: GFMatrix) -> np.ndarray:
    return np.count_nonzero(m.data, axis=1)


def min_row_weight(m: GFMatrix) -> Tuple[int, int]:
    """
    Smallest Hamming weight among the nonzero rows

    Returns:
        tuple: (weight, index of the first row attaining it)

    Raises:
        AllRowsZeroError: When every row is zero
    """
    weights = row_weights(m)
    nonzero = weights[weights > 0]
    if nonzero.size == 0:
        raise AllRowsZeroError("matrix has no nonzero row")
    weight = int(nonzero.min())
    return weight, int(np.flatnonzero(weights == weight)[0])


def mat_vec_mul(v, m: GFMatrix) -> np.ndarray:
    """Row vector times matrix over the field"""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (m.rows,):
        raise LengthMismatchError(m.rows, v.size)
    return m.field.sum_rows(m.field.mul_array(v[:, None], m.data))


def as_permutation(x, n: int = None) -> np.ndarray:
    """
    Validate a permutation

    Args:
        x: Sequence of distinct integers 0..len(x) - 1
        n (int, optional): Required length

    Returns:
        np.ndarray: The permutation as an int64 array
    """
    array = np.asarray(x, dtype=np.int64)
    if array.ndim != 1:
        raise MatrixError("a permutation must be one-dimensional")
    if n is not None and array.size != n:
        raise LengthMismatchError(n, array.size)
    if not np.array_equal(np.sort(array), np.arange(array.size)):
        raise MatrixError(f"not a permutation: {array.tolist()}")
    return array


def identity_permutation(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def compose(x, y) -> np.ndarray:
    """Composition with compose(x, y)[i] = y[x[i]]"""
    x = as_permutation(x)
    y = as_permutation(y, x.size)
    return y[x]


def inverse(x) -> np.ndarray:
    x = as_permutation(x)
    result = np.empty_like(x)
    result[x] = np.arange(x.size)
    return result


def swap_positions(x, i: int, j: int) -> np.ndarray:
    """Left composition with the transposition (i, j)"""
    result = np.array(x, dtype=np.int64)
    result[i], result[j] = result[j], result[i]
    return result


def transposition(n: int, i: int, j: int) -> np.ndarray:
    return swap_positions(identity_permutation(n), i, j)


def permutation_from_one_based(values: Sequence[int]) -> np.ndarray:
    return as_permutation([value - 1 for value in values])

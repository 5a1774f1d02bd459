"""
Linear Code Module for the Linear Code Distance Search

This module wraps a full-rank generator matrix as a linear code and provides
the two fitness maps used by the search engines, the exact brute-force
distance oracle, the error capability and the general minimum-weight decoder.
"""

import itertools
import logging
import os
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from algebra.finite_field import GaloisField
from algebra.matrix import (
    GFMatrix,
    LengthMismatchError,
    as_permutation,
    mat_vec_mul,
    min_row_weight,
    permute_columns,
    rank,
    rref_pivots,
)

logger = logging.getLogger("codes.linear_code")

DEFAULT_ENUMERATION_CAP = 2 ** 24

# Largest block of combinations materialised at once by the oracle.
SPAN_BLOCK = 4096


class CodeError(ValueError):
    """Base class for linear code errors"""


class RankDeficientError(CodeError):
    def __init__(self, rank_found, rows):
        super().__init__(f"generator has rank {rank_found} but {rows} rows")
        self.rank = rank_found


class ZeroMessageError(CodeError):
    def __init__(self):
        super().__init__("the zero message has no defined fitness")


class TooLargeError(CodeError):
    def __init__(self, size, cap):
        super().__init__(f"enumeration needs {size} messages, cap is {cap}")
        self.size = size


class BackendFailureError(CodeError):
    pass


class DegenerateDimensionsError(CodeError):
    pass


def hamming_weight(v) -> int:
    return int(np.count_nonzero(v))


@dataclass(frozen=True)
class Codeword:
    """A word of F_q^n with its cached Hamming weight"""

    entries: Tuple[int, ...]
    weight: int

    @classmethod
    def from_vector(cls, v) -> "Codeword":
        entries = tuple(int(value) for value in np.asarray(v).ravel())
        return cls(entries, sum(1 for value in entries if value))

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class DistanceBound:
    """Upper bound on the minimum distance, certified by a witness codeword"""

    d: int
    witness: Codeword
    exact: bool = False


@dataclass(frozen=True)
class Decoding:
    codeword: Codeword
    error: Codeword
    error_detected: bool


class LinearCode:
    """Linear [n, k]_q code given by a full-rank generator matrix"""

    def __init__(self, generator: GFMatrix):
        """
        Validate the generator

        Args:
            generator (GFMatrix): k x n matrix of rank k

        Raises:
            RankDeficientError: When the rows are linearly dependent
        """
        reduced, pivots = rref_pivots(generator)
        if len(pivots) != generator.rows:
            raise RankDeficientError(len(pivots), generator.rows)
        self.generator = generator
        self.field: GaloisField = generator.field
        self.k, self.n = generator.shape
        self.q = self.field.q
        self._reduced = reduced
        self._pivots = np.array(pivots, dtype=np.int64)

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.k}]_{self.q})"

    def encode(self, message) -> np.ndarray:
        return mat_vec_mul(message, self.generator)

    def _word(self, word) -> np.ndarray:
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            raise LengthMismatchError(self.n, word.size)
        return word

    def contains(self, word) -> bool:
        """Membership by reducing the word against the RREF rows"""
        word = self._word(word)
        if word.min() < 0 or word.max() >= self.q:
            return False
        combination = mat_vec_mul(word[self._pivots], self._reduced)
        return not np.any(self.field.sub_array(word, combination))

    def extended(self, word) -> GFMatrix:
        """Generator with the word stacked below it"""
        return self.generator.with_row(self._word(word))


def code_new(generator: GFMatrix) -> LinearCode:
    return LinearCode(generator)


def random_code(field: GaloisField, k: int, n: int, rng: np.random.Generator) -> LinearCode:
    """
    Draw a uniformly random full-rank k x n generator

    Args:
        field (GaloisField): Field of the entries
        k (int): Dimension
        n (int): Length
        rng (np.random.Generator): Source of randomness

    Returns:
        LinearCode: The code spanned by the drawn matrix
    """
    if not 1 <= k <= n:
        raise DegenerateDimensionsError(f"need 1 <= k <= n, got k={k}, n={n}")
    while True:
        generator = GFMatrix(field, rng.integers(0, field.q, size=(k, n)))
        if rank(generator) == k:
            return LinearCode(generator)


def fitness_order(code: LinearCode, x) -> Tuple[int, Codeword]:
    """
    Minimum row weight of the RREF of the column-permuted generator

    Args:
        code (LinearCode): The code
        x: Permutation of length n

    Returns:
        tuple: (weight, witness codeword of C with that weight)
    """
    x = as_permutation(x, code.n)
    reduced, _ = rref_pivots(permute_columns(code.generator, x))
    weight, index = min_row_weight(reduced)
    witness = np.empty(code.n, dtype=np.int64)
    witness[x] = reduced.data[index]
    return weight, Codeword.from_vector(witness)


def fitness_discrete(code: LinearCode, message) -> Tuple[int, Codeword]:
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (code.k,):
        raise LengthMismatchError(code.k, message.size)
    if not message.any():
        raise ZeroMessageError()
    word = code.encode(message)
    return hamming_weight(word), Codeword.from_vector(word)


def enumeration_size(code: LinearCode) -> int:
    return (code.q ** code.k - 1) // (code.q - 1)


def _span(field: GaloisField, rows: np.ndarray, n: int) -> np.ndarray:
    """All q^len(rows) combinations of the rows, one per line"""
    span = np.zeros((1, n), dtype=np.int64)
    for row in rows:
        scaled = field.multiples(row)
        span = field.add_array(span[None, :, :], scaled[:, None, :]).reshape(-1, n)
    return span


def brute_force_distance(code: LinearCode, cap: Optional[int] = None) -> DistanceBound:
    """
    Exact minimum distance by enumeration

    Visits one message per scalar class: the first nonzero coordinate is 1, the
    rest range over F_q. Stops early once a weight-1 word is found.

    Args:
        code (LinearCode): The code
        cap (int, optional): Largest enumeration allowed. Defaults to the
            BRUTE_FORCE_CAP environment variable or 2**24.

    Returns:
        DistanceBound: Exact distance with a minimum-weight witness

    Raises:
        TooLargeError: When (q^k - 1) / (q - 1) exceeds the cap
    """
    if cap is None:
        cap = int(os.environ.get("BRUTE_FORCE_CAP", DEFAULT_ENUMERATION_CAP))
    size = enumeration_size(code)
    if size > cap:
        raise TooLargeError(size, cap)

    field = code.field
    generator = code.generator.data
    inner_rows = 0
    while code.q ** (inner_rows + 1) <= SPAN_BLOCK:
        inner_rows += 1

    best_weight = code.n + 1
    best_word = None
    for lead in range(code.k):
        tail = generator[lead + 1:]
        split = max(0, len(tail) - inner_rows)
        outer, inner = tail[:split], tail[split:]
        inner_span = _span(field, inner, code.n)
        for coefficients in itertools.product(range(code.q), repeat=len(outer)):
            base = generator[lead]
            if len(outer):
                base = field.add_array(base, mat_vec_mul(coefficients, GFMatrix._wrap(field, outer)))
            block = field.add_array(inner_span, base[None, :])
            weights = np.count_nonzero(block, axis=1)
            index = int(np.argmin(weights))
            if weights[index] < best_weight:
                best_weight = int(weights[index])
                best_word = block[index].copy()
                if best_weight == 1:
                    break
        if best_weight == 1:
            break

    logger.debug(f"Brute force over {size} messages of {code}: d = {best_weight}")
    return DistanceBound(best_weight, Codeword.from_vector(best_word), exact=True)


def brute_force_backend(code: LinearCode) -> DistanceBound:
    return brute_force_distance(code)


def error_capability(d: int) -> int:
    """Number of errors a code of minimum distance d always corrects"""
    if d < 1:
        raise CodeError(f"minimum distance must be at least 1, got {d}")
    return (d - 1) // 2


def decode(
    code: LinearCode,
    received,
    mincw: Callable[[LinearCode], DistanceBound] = brute_force_backend,
) -> Decoding:
    """
    Decode a received word through a minimum-weight codeword search

    The received word is stacked under the generator; a minimum-weight word e
    of the extended code gives the decoded codeword y - e. When the weight of e
    is at most the error capability of the code, the result is the unique
    nearest codeword.

    Args:
        code (LinearCode): The code
        received: Received word of length n
        mincw (callable): Distance backend returning a DistanceBound

    Returns:
        Decoding: Decoded codeword, error pattern and whether an error was seen

    Raises:
        BackendFailureError: When no scalar multiple of the backend witness
            brings the received word back into the code
    """
    received = code._word(received)
    if code.contains(received):
        zero = Codeword.from_vector(np.zeros(code.n, dtype=np.int64))
        return Decoding(Codeword.from_vector(received), zero, error_detected=False)

    extended = LinearCode(code.extended(received))
    bound = mincw(extended)
    witness = bound.witness.as_array()
    field = code.field
    for scalar in range(1, code.q):
        error = field.mul_array(scalar, witness)
        candidate = field.sub_array(received, error)
        if code.contains(candidate):
            logger.debug(f"Decoded with an error of weight {hamming_weight(error)}")
            return Decoding(Codeword.from_vector(candidate), Codeword.from_vector(error), error_detected=True)
    raise BackendFailureError(f"backend witness of weight {bound.d} does not lead back into the code")

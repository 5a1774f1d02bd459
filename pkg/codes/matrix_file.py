"""
Matrix File Module for the Linear Code Distance Search

Reads and writes the plain-text generator matrix format described in
codes/matrix_format.md, and checks candidate codewords against a stored code.
"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.finite_field import FieldError, GaloisField, prime_power
from algebra.matrix import GFMatrix, LengthMismatchError, rank
from codes.linear_code import hamming_weight

logger = logging.getLogger("codes.matrix_file")


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownFieldOrderError(ValueError):
    def __init__(self, q):
        super().__init__(f"no finite field of order {q}")
        self.q = q


def _records(text: str) -> List[Tuple[int, List[str]]]:
    records = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            records.append((number, content.split()))
    return records


def _integers(number: int, tokens: List[str], what: str) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(number, f"{what} must be integers, got {' '.join(tokens)!r}")


def parse_matrix_text(text: str) -> GFMatrix:
    """
    Parse a generator matrix from its text form

    Args:
        text (str): Content in the matrix file format

    Returns:
        GFMatrix: The k x n matrix over the field named in the header

    Raises:
        ParseError: On a malformed line, with its 1-based number
        UnknownFieldOrderError: When q is not a prime power
    """
    records = _records(text)
    if not records:
        raise ParseError(0, "no header line")

    header_line, header = records[0]
    if len(header) != 3:
        raise ParseError(header_line, "header must be 'q n k'")
    q, n, k = _integers(header_line, header, "header values")
    split = prime_power(q)
    if split is None:
        raise UnknownFieldOrderError(q)
    if not 1 <= k <= n:
        raise ParseError(header_line, f"need 1 <= k <= n, got n={n}, k={k}")

    rows = records[1:]
    modulus = None
    modulus_line = header_line
    if rows and rows[0][1][0] == "poly":
        modulus_line, tokens = rows[0]
        if len(tokens) != 2:
            raise ParseError(modulus_line, "expected 'poly <packed modulus>'")
        modulus = _integers(modulus_line, tokens[1:], "modulus")[0]
        rows = rows[1:]

    try:
        field = GaloisField(split[0], split[1], modulus)
    except FieldError as e:
        raise ParseError(modulus_line, str(e))

    if len(rows) != k:
        last_line = rows[-1][0] if rows else modulus_line
        raise ParseError(last_line, f"expected {k} matrix rows, found {len(rows)}")

    entries = []
    for number, tokens in rows:
        values = _integers(number, tokens, "matrix entries")
        if len(values) != n:
            raise ParseError(number, f"expected {n} entries, found {len(values)}")
        if any(not 0 <= value < q for value in values):
            raise ParseError(number, f"entries must lie in [0, {q})")
        entries.append(values)
    return GFMatrix(field, entries)


def parse_matrix_file(path: str) -> GFMatrix:
    with open(path, encoding="utf-8") as f:
        matrix = parse_matrix_text(f.read())
    logger.info(f"Loaded a {matrix.rows}x{matrix.cols} matrix over GF({matrix.field.q}) from {path}")
    return matrix


def format_matrix_file(matrix: GFMatrix, comment: Optional[str] = None) -> str:
    """Text form of a matrix, readable back with parse_matrix_text"""
    field = matrix.field
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{field.q} {matrix.cols} {matrix.rows}")
    lines.append(f"poly {field.modulus}")
    lines.extend(" ".join(str(value) for value in row) for row in matrix.tolist())
    return "\n".join(lines) + "\n"


def write_matrix_file(matrix: GFMatrix, path: str, comment: Optional[str] = None) -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_matrix_file(matrix, comment))
    logger.info(f"Saved a {matrix.rows}x{matrix.cols} matrix to {path}")
    return path


def parse_word(literal: Union[str, Sequence[int]]) -> np.ndarray:
    """A word given as a list of packed integers or a whitespace/comma separated string"""
    if isinstance(literal, str):
        tokens = literal.replace(",", " ").split()
        try:
            return np.array([int(token) for token in tokens], dtype=np.int64)
        except ValueError:
            raise ParseError(1, f"word must contain integers, got {literal!r}")
    return np.asarray(literal, dtype=np.int64)


def verify_codeword(matrix_path: str, codeword: Union[str, Sequence[int]]) -> dict:
    """
    Check a word against the code stored in a matrix file

    Membership is a rank test: stacking a codeword under G leaves the rank at k.

    Args:
        matrix_path (str): Path of the generator matrix file
        codeword: The word, as a sequence or a literal string

    Returns:
        dict: {"member": bool, "weight": int}
    """
    generator = parse_matrix_file(matrix_path)
    return verify_against(generator, parse_word(codeword))


def verify_against(generator: GFMatrix, word) -> dict:
    word = np.asarray(word, dtype=np.int64)
    if word.shape != (generator.cols,):
        raise LengthMismatchError(generator.cols, word.size)
    if word.min() < 0 or word.max() >= generator.field.q:
        return {"member": False, "weight": hamming_weight(word)}
    member = rank(generator.with_row(word)) == rank(generator)
    return {"member": bool(member), "weight": hamming_weight(word)}

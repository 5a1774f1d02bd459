"""
Finite Field Module for the Linear Code Distance Search

This module builds GF(p^r) from an irreducible polynomial and provides
table-backed arithmetic through a primitive element.

Elements are packed integers: the polynomial-basis coordinates written as
base-p digits with the constant term in the least significant digit. For
p = 2 this is the usual bit pattern, so 0b101 is a^2 + 1.
"""

import logging
from functools import lru_cache, reduce
from typing import List, Optional, Tuple

import numpy as np

logger = logging.getLogger("algebra.finite_field")

MAX_ORDER = 2 ** 16

# Full q x q add/mul tables are built up to this order, exp/log lookups above it.
TABLE_ORDER_LIMIT = 256

# Default moduli for characteristic 2, packed as bit patterns.
BINARY_MODULI = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
}


class FieldError(ValueError):
    """Base class for finite field construction and arithmetic errors"""


class NonPrimeError(FieldError):
    def __init__(self, p):
        super().__init__(f"characteristic {p} is not prime")
        self.p = p


class ReducibleModulusError(FieldError):
    def __init__(self, modulus, p, r):
        super().__init__(f"modulus {modulus} is not an irreducible monic polynomial of degree {r} over GF({p})")
        self.modulus = modulus


class NoPrimitiveElementError(FieldError):
    pass


class ZeroInverseError(FieldError, ZeroDivisionError):
    def __init__(self):
        super().__init__("0 has no multiplicative inverse")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    divisor = 2
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 1
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """
    Split a field order into characteristic and degree

    Args:
        q (int): Candidate field order

    Returns:
        tuple: (p, r) with q = p^r, or None when q is not a prime power
    """
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    r = 0
    rest = q
    while rest % p == 0:
        rest //= p
        r += 1
    return (p, r) if rest == 1 else None


def _digits(value: int, p: int, length: Optional[int] = None) -> List[int]:
    digits = []
    while value:
        value, digit = divmod(value, p)
        digits.append(digit)
    if length is not None:
        digits.extend([0] * (length - len(digits)))
    return digits


def _pack(digits: List[int], p: int) -> int:
    value = 0
    for digit in reversed(digits):
        value = value * p + digit
    return value


def _trim(digits: List[int]) -> List[int]:
    end = len(digits)
    while end and digits[end - 1] == 0:
        end -= 1
    return digits[:end]


def _poly_rem(numerator: List[int], divisor: List[int], p: int) -> List[int]:
    """Remainder of little-endian digit polynomials over GF(p)"""
    remainder = _trim(list(numerator))
    divisor = _trim(divisor)
    lead_inverse = pow(divisor[-1], p - 2, p)
    while len(remainder) >= len(divisor):
        shift = len(remainder) - len(divisor)
        factor = remainder[-1] * lead_inverse % p
        for i, coefficient in enumerate(divisor):
            remainder[shift + i] = (remainder[shift + i] - factor * coefficient) % p
        remainder = _trim(remainder)
    return remainder


def _binary_mulmod(a: int, b: int, modulus: int) -> int:
    degree = modulus.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if (a >> degree) & 1:
            a ^= modulus
    return result


def _poly_mulmod(a: int, b: int, modulus_digits: List[int], p: int) -> int:
    if p == 2:
        return _binary_mulmod(a, b, _pack(modulus_digits, 2))
    a_digits = _digits(a, p)
    b_digits = _digits(b, p)
    if not a_digits or not b_digits:
        return 0
    product = [0] * (len(a_digits) + len(b_digits) - 1)
    for i, x in enumerate(a_digits):
        if x:
            for j, y in enumerate(b_digits):
                product[i + j] = (product[i + j] + x * y) % p
    return _pack(_poly_rem(product, modulus_digits, p), p)


def is_irreducible(modulus: int, p: int, r: int) -> bool:
    """
    Check a packed polynomial for irreducibility over GF(p)

    Trial division by every monic polynomial of degree 1 to r // 2.

    Args:
        modulus (int): Packed polynomial
        p (int): Prime characteristic
        r (int): Expected degree

    Returns:
        bool: True for a monic irreducible polynomial of degree r
    """
    digits = _digits(modulus, p)
    if len(digits) != r + 1 or digits[-1] != 1:
        return False
    for degree in range(1, r // 2 + 1):
        for tail in range(p ** degree):
            divisor = _digits(tail, p, degree) + [1]
            if not _poly_rem(digits, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, r: int) -> int:
    """
    Default modulus used when none is given

    Characteristic 2 uses the fixed table above (a^2+a+1 for GF(4), a^3+a+1 for
    GF(8)). Other characteristics take the first irreducible monic polynomial in
    packed order, so GF(9) gets x^2 + 1.
    """
    if p == 2 and r in BINARY_MODULI:
        return BINARY_MODULI[r]
    if r == 1:
        return p
    for candidate in range(p ** r, 2 * p ** r):
        if is_irreducible(candidate, p, r):
            return candidate
    raise FieldError(f"no irreducible polynomial of degree {r} over GF({p})")


class GaloisField:
    """Finite field GF(p^r) with exp/log tables over a primitive element"""

    def __init__(self, p: int, r: int = 1, modulus: Optional[int] = None):
        """
        Build the field and its arithmetic tables

        Args:
            p (int): Prime characteristic
            r (int): Extension degree, at least 1
            modulus (int, optional): Packed irreducible polynomial of degree r.
                Defaults to default_modulus(p, r).
        """
        if not is_prime(p):
            raise NonPrimeError(p)
        if r < 1:
            raise FieldError(f"extension degree must be at least 1, got {r}")
        q = p ** r
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, r)
        if not is_irreducible(modulus, p, r):
            raise ReducibleModulusError(modulus, p, r)

        self.p = p
        self.r = r
        self.q = q
        self.modulus = modulus
        # Smallest unsigned type holding every element.
        self.dtype = np.uint8 if q <= 256 else np.uint16
        self._modulus_digits = _digits(modulus, p)

        powers, self.primitive = self._find_primitive()
        self.exp_table = np.array(powers, dtype=np.int64)
        self.log_table = np.full(q, -1, dtype=np.int64)
        self.log_table[self.exp_table] = np.arange(q - 1)

        elements = np.arange(q, dtype=np.int64)
        self._neg_table = self._digitwise(np.zeros_like(elements), elements, sign=-1)
        # Entry 0 is unused.
        self._inv_table = np.zeros(q, dtype=np.int64)
        self._inv_table[1:] = self.exp_table[(q - 1 - self.log_table[1:]) % (q - 1)]
        self._mul_table = None
        self._add_table = None
        # Same products and differences stored in self.dtype, for row elimination.
        self._compact_mul = None
        self._compact_sub = None
        if q <= TABLE_ORDER_LIMIT:
            self._mul_table = self._mul_by_logs(elements[:, None], elements[None, :])
            self._add_table = self._digitwise(elements[:, None], elements[None, :])
            self._compact_mul = self._mul_table.astype(self.dtype)
            self._compact_sub = self._digitwise(elements[:, None], elements[None, :], sign=-1).astype(self.dtype)
        tables = (
            self.exp_table, self.log_table, self._neg_table, self._inv_table,
            self._mul_table, self._add_table, self._compact_mul, self._compact_sub,
        )
        for table in tables:
            if table is not None:
                table.setflags(write=False)

        logger.debug(f"Built GF({q}) with modulus {modulus} and primitive element {self.primitive}")

    def _find_primitive(self):
        candidates = range(2, self.q) if self.q > 2 else [1]
        for candidate in candidates:
            powers = [1]
            current = candidate
            while current not in (0, 1) and len(powers) < self.q:
                powers.append(current)
                current = _poly_mulmod(current, candidate, self._modulus_digits, self.p)
            if current == 1 and len(powers) == self.q - 1:
                return powers, candidate
        raise NoPrimitiveElementError(f"no primitive element found for GF({self.q}) with modulus {self.modulus}")

    def _digitwise(self, a, b, sign=1):
        """Digit-wise a + sign * b of packed elements mod p"""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        result = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.r):
            digit_a = (a // place) % self.p
            digit_b = (b // place) % self.p
            result += ((digit_a + sign * digit_b) % self.p) * place
            place *= self.p
        return result

    def _mul_by_logs(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        product = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, product)

    def __eq__(self, other):
        if not isinstance(other, GaloisField):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"GaloisField(p={self.p}, r={self.r}, modulus={self.modulus})"

    def add(self, a: int, b: int) -> int:
        return int(self.add_array(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_array(a, b))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_array(a, b))

    def neg(self, a: int) -> int:
        return int(self._neg_table[a])

    def inv(self, a: int) -> int:
        """
        Multiplicative inverse

        Raises:
            ZeroInverseError: When a is 0
        """
        if a == 0:
            raise ZeroInverseError()
        return int(self._inv_table[a])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp_table[(self.log_table[a] * e) % (self.q - 1)])

    def add_array(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digitwise(a, b)

    def sub_array(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.add_array(a, self._neg_table[b])

    def mul_array(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_by_logs(a, b)

    def multiples(self, row):
        """
        Every scalar multiple of a row

        Args:
            row (array): Vector of field elements

        Returns:
            array: q x len(row) array whose line s is s * row
        """
        row = np.asarray(row, dtype=np.int64)
        return self.mul_array(np.arange(self.q, dtype=np.int64)[:, None], row[None, :])

    def compact_scale(self, scalar: int, row) -> np.ndarray:
        """scalar * row, in self.dtype"""
        if self._compact_mul is not None:
            return self._compact_mul[scalar][row]
        return self._mul_by_logs(scalar, row).astype(self.dtype)

    def compact_multiples(self, row) -> np.ndarray:
        """multiples(row) in self.dtype, read straight from the product table when there is one"""
        if self._compact_mul is not None:
            return self._compact_mul[:, row]
        return self.multiples(row).astype(self.dtype)

    def compact_sub(self, a, b) -> np.ndarray:
        """a - b, in self.dtype"""
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._compact_sub is not None:
            return self._compact_sub[a, b]
        return self._digitwise(a, b, sign=-1).astype(self.dtype)

    def sum_rows(self, rows):
        """Field sum of the rows of a 2-D array"""
        rows = np.asarray(rows, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(rows, axis=0)
        return reduce(self.add_array, rows)


def field_new(p: int, r: int = 1, modulus: Optional[int] = None) -> GaloisField:
    """
    Construct GF(p^r)

    Args:
        p (int): Prime characteristic
        r (int): Extension degree
        modulus (int, optional): Packed irreducible polynomial

    Returns:
        GaloisField: The constructed field
    """
    return GaloisField(p, r, modulus)


def field_of_order(q: int, modulus: Optional[int] = None) -> GaloisField:
    split = prime_power(q)
    if split is None:
        raise FieldError(f"{q} is not a prime power")
    return GaloisField(split[0], split[1], modulus)

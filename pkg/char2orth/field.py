"""
Exact arithmetic for the coefficient fields of characteristic 2

Elements are plain Python values without wrapper objects; the field object passed
alongside them decides how they are interpreted:

- GF2m elements are ints < 2**m (polynomial residues modulo the field modulus)
- F2t elements are reduced fractions (num, den) of GF(2)[t] polynomials held as ints

Zero and one are always ``field.zero`` and ``field.one``. Addition is XOR on
residues and fraction addition on rational functions.
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DivisionByZero, FieldError, FieldMismatch, FieldOverflow, InfiniteField, NotASquare, Undecidable
from .models import FieldKind

logger = logging.getLogger(__name__)

MAX_BINARY_DEGREE = 16
MAX_POLY_DEGREE = 64

# least irreducible polynomial of each degree, as bit codes
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
}

Element = Any


# GF(2)[t] polynomials as ints

def poly_degree(p: int) -> int:
    """Degree of p, with deg 0 = -1."""
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    ret = 0
    while b:
        if b & 1:
            ret ^= a
        a <<= 1
        b >>= 1
    return ret


def poly_divmod(p: int, m: int) -> Tuple[int, int]:
    if m == 0:
        raise DivisionByZero("polynomial division by zero")
    mn = poly_degree(m)
    quot = 0
    pn = poly_degree(p)
    while pn >= mn:
        shift = pn - mn
        quot |= 1 << shift
        p ^= m << shift
        pn = poly_degree(p)
    return quot, p


def poly_mod(p: int, m: int) -> int:
    return poly_divmod(p, m)[1]


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_extgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = poly_divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 ^ clmul(q, x1)
        y0, y1 = y1, y0 ^ clmul(q, y1)
    return a, x0, y0


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree up to deg(p)/2."""
    n = poly_degree(p)
    if n < 1:
        return False
    for d in range(2, 1 << (n // 2 + 1)):
        if poly_mod(p, d) == 0:
            return False
    return True


def _even_bits(p: int) -> int:
    """Compress bits 0, 2, 4, ... of p into bits 0, 1, 2, ..."""
    ret, i = 0, 0
    while p:
        if p & 1:
            ret |= 1 << i
        p >>= 2
        i += 1
    return ret


_ODD_BITS = int("a" * 64, 16)


def _only_even_bits(p: int) -> bool:
    return p & _ODD_BITS == 0


def poly_format(p: int, var: str = "t") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if (p >> i) & 1:
            if i == 0:
                terms.append("1")
            elif i == 1:
                terms.append(var)
            else:
                terms.append(f"{var}^{i}")
    return "+".join(terms)


class Field(ABC):
    """Interface shared by the supported fields"""

    kind: FieldKind
    zero: Element
    one: Element

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @property
    @abstractmethod
    def generator(self) -> Element:
        pass

    @property
    @abstractmethod
    def k2_degree(self) -> int:
        """Dimension of k over the subfield of squares."""

    @abstractmethod
    def add(self, a: Element, b: Element) -> Element:
        pass

    @abstractmethod
    def mul(self, a: Element, b: Element) -> Element:
        pass

    @abstractmethod
    def inv(self, a: Element) -> Element:
        pass

    @abstractmethod
    def sqrt(self, a: Element) -> Element:
        pass

    @abstractmethod
    def k2_coordinates(self, a: Element) -> Tuple[Element, ...]:
        """Coordinates (h_0, ..., ) with a = sum h_i^2 * basis_i over the k^2-basis."""

    @abstractmethod
    def elements(self) -> Iterator[Element]:
        pass

    @abstractmethod
    def format(self, a: Element) -> str:
        pass

    @abstractmethod
    def code(self, a: Element) -> Any:
        """JSON-friendly canonical code of an element."""

    @abstractmethod
    def random_element(self, rng: random.Random, max_degree: int = 8) -> Element:
        pass

    @abstractmethod
    def from_poly(self, p: int) -> Element:
        """Image of a GF(2)[t] polynomial."""

    # derived operations

    @property
    def is_finite(self) -> bool:
        return self.kind == FieldKind.BINARY_EXT

    def is_zero(self, a: Element) -> bool:
        return a == self.zero

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def square(self, a: Element) -> Element:
        return self.mul(a, a)

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            n >>= 1
            a = self.square(a)
        return r

    def sum(self, values) -> Element:
        ret = self.zero
        for v in values:
            ret = self.add(ret, v)
        return ret

    def is_square(self, a: Element) -> bool:
        try:
            self.sqrt(a)
            return True
        except NotASquare:
            return False

    def square_class_coordinates(self, a: Element) -> Tuple[Element, Element]:
        """(h0, h1) with a = h0^2 + t*h1^2; h1 = 0 over a perfect field."""
        coords = self.k2_coordinates(a)
        if len(coords) == 1:
            return coords[0], self.zero
        return coords[0], coords[1]

    def k2_linear_rank(self, elems: Sequence[Element]) -> int:
        """Dimension over k^2 of the span of elems."""
        if not elems:
            return 0
        return linalg.rank(self, [self.k2_coordinates(a) for a in elems])

    def k2_span_equal(self, first: Sequence[Element], second: Sequence[Element]) -> bool:
        r1 = self.k2_linear_rank(first)
        r2 = self.k2_linear_rank(second)
        return r1 == r2 and self.k2_linear_rank(list(first) + list(second)) == r1

    def enumerate(self) -> List[Element]:
        return list(self.elements())

    @property
    def order(self) -> int:
        raise InfiniteField(f"{self.name} is infinite")

    def trace(self, a: Element) -> int:
        raise Undecidable(f"no absolute trace on {self.name}")

    def artin_schreier_class(self, a: Element) -> Element:
        raise Undecidable(f"Artin-Schreier classes are not decided over {self.name}")

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(f"field mismatch: {self.name} vs {other.name}")


@dataclass(frozen=True)
class GF2m(Field):
    """GF(2^m) = GF(2)[t]/(modulus), elements as ints."""

    m: int
    modulus: int

    kind = FieldKind.BINARY_EXT
    zero = 0
    one = 1

    def __post_init__(self):
        if not 1 <= self.m <= MAX_BINARY_DEGREE:
            raise FieldError(f"GF(2^m) needs 1 <= m <= {MAX_BINARY_DEGREE}, got m={self.m}")
        if poly_degree(self.modulus) != self.m or not is_irreducible(self.modulus):
            raise FieldError(f"modulus {poly_format(self.modulus)} is not an irreducible polynomial of degree {self.m}")

    @property
    def name(self) -> str:
        if self.m in DEFAULT_MODULI and DEFAULT_MODULI[self.m] == self.modulus:
            return f"gf{1 << self.m}"
        return f"gf{1 << self.m}:{self.modulus}"

    @property
    def generator(self) -> int:
        # t itself, or 1 in GF(2)
        return 2 if self.m > 1 else 1

    @property
    def k2_degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return 1 << self.m

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mulx(self, a: int) -> int:
        a <<= 1
        if a >> self.m:
            a ^= self.modulus
        return a

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a & b
        ret = 0
        for i in range(poly_degree(b), -1, -1):
            ret = self.mulx(ret)
            if (b >> i) & 1:
                ret ^= a
        return ret

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self.name}")
        return self.pow(a, (1 << self.m) - 2)

    def sqrt(self, a: int) -> int:
        return self.pow(a, 1 << (self.m - 1))

    def k2_coordinates(self, a: int) -> Tuple[int]:
        return (self.sqrt(a),)

    def elements(self) -> Iterator[int]:
        return iter(range(1 << self.m))

    def format(self, a: int) -> str:
        return poly_format(a)

    def code(self, a: int) -> int:
        return a

    def random_element(self, rng: random.Random, max_degree: int = 8) -> int:
        return rng.randrange(1 << self.m)

    def from_poly(self, p: int) -> int:
        return poly_mod(p, self.modulus)

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.m):
            t ^= x
            x = self.square(x)
        return t

    def artin_schreier_class(self, a: int) -> int:
        """Canonical representative of a + {x^2 + x}: 0 or the least element of trace 1."""
        if self.trace(a) == 0:
            return 0
        return self._trace_one

    @cached_property
    def _trace_one(self) -> int:
        return next(x for x in range(1, 1 << self.m) if self.trace(x) == 1)


@dataclass(frozen=True)
class F2t(Field):
    """The rational function field GF(2)(t), elements as reduced (num, den)."""

    kind = FieldKind.RAT_FUNC
    zero = (0, 1)
    one = (1, 1)

    @property
    def name(self) -> str:
        return "f2t"

    @property
    def generator(self) -> Tuple[int, int]:
        return (2, 1)

    @property
    def k2_degree(self) -> int:
        return 2

    def make(self, num: int, den: int) -> Tuple[int, int]:
        if den == 0:
            raise DivisionByZero("zero denominator")
        if num == 0:
            return self.zero
        g = poly_gcd(num, den)
        if g != 1:
            num = poly_divmod(num, g)[0]
            den = poly_divmod(den, g)[0]
        if max(poly_degree(num), poly_degree(den)) > MAX_POLY_DEGREE:
            raise FieldOverflow(f"degree exceeds {MAX_POLY_DEGREE}")
        return (num, den)

    def add(self, a, b):
        if a[1] == b[1]:
            return self.make(a[0] ^ b[0], a[1])
        return self.make(clmul(a[0], b[1]) ^ clmul(b[0], a[1]), clmul(a[1], b[1]))

    def mul(self, a, b):
        if a[0] == 0 or b[0] == 0:
            return self.zero
        g1 = poly_gcd(a[0], b[1])
        g2 = poly_gcd(b[0], a[1])
        num = clmul(poly_divmod(a[0], g1)[0], poly_divmod(b[0], g2)[0])
        den = clmul(poly_divmod(a[1], g2)[0], poly_divmod(b[1], g1)[0])
        return self.make(num, den)

    def inv(self, a):
        if a[0] == 0:
            raise DivisionByZero("inverse of zero in f2t")
        return (a[1], a[0])

    def sqrt(self, a):
        num, den = a
        if not (_only_even_bits(num) and _only_even_bits(den)):
            raise NotASquare(f"{self.format(a)} is not a square in f2t")
        return (_even_bits(num), _even_bits(den))

    def k2_coordinates(self, a):
        num, den = a
        p = clmul(num, den)
        even = _even_bits(p)
        odd = _even_bits(p >> 1)
        return (self.make(even, den), self.make(odd, den))

    def elements(self):
        raise InfiniteField("f2t cannot be enumerated")

    def format(self, a) -> str:
        num, den = a
        if den == 1:
            return poly_format(num)
        n, d = poly_format(num), poly_format(den)
        if "+" in n:
            n = f"({n})"
        if "+" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def code(self, a) -> str:
        return self.format(a)

    def random_element(self, rng: random.Random, max_degree: int = 8):
        num = rng.randrange(1 << (max_degree + 1))
        den = rng.randrange(1, 1 << (max_degree + 1))
        return self.make(num, den)

    def from_poly(self, p: int):
        return self.make(p, 1)


def binary_field(m: int, modulus: Optional[int] = None) -> GF2m:
    if modulus is None:
        modulus = DEFAULT_MODULI.get(m)
        if modulus is None:
            # least irreducible of degree m
            modulus = next(p for p in range(1 << m, 1 << (m + 1)) if is_irreducible(p))
    return GF2m(m, modulus)


GF2 = binary_field(1)
GF4 = binary_field(2)
GF8 = binary_field(3)
GF16 = binary_field(4)
RATFUNC = F2t()

"""Arithmetic in GF(2), its extensions GF(2^k) for k <= 16, and GF(2)[x].

Polynomials over GF(2) are stored as integers: bit ``i`` is the coefficient of
``x^i``.  Field elements of GF(2^k) are integers below ``2^k`` read the same
way, as residues modulo the field's modulus.

Vectors and matrix rows elsewhere in the package are packed with ``k`` bits
per entry (entry ``j`` in bits ``k*j .. k*j+k-1``).  Addition of packed rows is
XOR for every ``k``; :meth:`BinaryField.scale_packed` multiplies all entries of
a packed row by one scalar without unpacking it.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, Iterator

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    PolynomialSyntaxError,
    ReducibleModulus,
    ZeroPolynomial,
)

MAX_DEGREE = 16

# Conway polynomials for p = 2, which are primitive; the class of x generates
# the multiplicative group.  Bit masks, low bit = constant term.
DEFAULT_MODULI = {
    1: 0b11,                    # x + 1
    2: 0b111,                   # x^2 + x + 1
    3: 0b1011,                  # x^3 + x + 1
    4: 0b10011,                 # x^4 + x + 1
    5: 0b100101,                # x^5 + x^2 + 1
    6: 0b1011011,               # x^6 + x^4 + x^3 + x + 1
    7: 0b10000011,              # x^7 + x + 1
    8: 0b100011101,             # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,            # x^9 + x^4 + 1
    10: 0b10001101111,          # x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    11: 0b100000000101,         # x^11 + x^2 + 1
    12: 0b1000011101011,        # x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    13: 0b10000000011011,       # x^13 + x^4 + x^3 + x + 1
    14: 0b100000010101001,      # x^14 + x^7 + x^5 + x^3 + 1
    15: 0b1000000000110101,     # x^15 + x^5 + x^4 + x^2 + 1
    16: 0b10000000000101101,    # x^16 + x^5 + x^3 + x^2 + 1
}


# ---------------------------------------------------------------------------
# raw carry-less helpers on ints

def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _cldivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise DivisionByZero("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _clmod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _clgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _clmod(a, b)
    return a


_SPREAD = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]


def _clsquare(a: int) -> int:
    r = 0
    shift = 0
    while a:
        r |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def _clpowmod(a: int, e: int, m: int) -> int:
    r = 1
    a = _clmod(a, m)
    while e:
        if e & 1:
            r = _clmod(_clmul(r, a), m)
        e >>= 1
        if e:
            a = _clmod(_clsquare(a), m)
    return _clmod(r, m)


# ---------------------------------------------------------------------------
# Poly2

_TERM_RE = re.compile(r"^(?:(1)|x(?:\^(\d+))?|(0))$")


@total_ordering
@dataclass(frozen=True)
class Poly2:
    """A polynomial over GF(2); ``bits`` holds the coefficients, low degree first."""

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient bits must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Poly2":
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Poly2":
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def x(cls) -> "Poly2":
        return cls(0b10)

    @classmethod
    def one(cls) -> "Poly2":
        return cls(1)

    @classmethod
    def parse(cls, text: str) -> "Poly2":
        """Parse ``"x^6+x^5+x+1"`` style text.  Repeated terms cancel mod 2."""
        s = text.replace(" ", "")
        if not s:
            raise PolynomialSyntaxError("empty polynomial text")
        bits = 0
        for term in s.split("+"):
            m = _TERM_RE.match(term)
            if m is None:
                raise PolynomialSyntaxError(f"bad term {term!r} in {text!r}")
            if m.group(1):
                bits ^= 1
            elif m.group(3):
                continue
            else:
                bits ^= 1 << (int(m.group(2)) if m.group(2) else 1)
        return cls(bits)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.degree + 1))

    def is_zero(self) -> bool:
        return self.bits == 0

    def sort_key(self) -> tuple[int, int]:
        return (self.degree, self.bits)

    def __lt__(self, other: "Poly2") -> bool:
        return self.sort_key() < other.sort_key()

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        return Poly2(_clmul(self.bits, other.bits))

    def __pow__(self, e: int) -> "Poly2":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r, a = 1, self.bits
        while e:
            if e & 1:
                r = _clmul(r, a)
            a = _clsquare(a)
            e >>= 1
        return Poly2(r)

    def __divmod__(self, other: "Poly2") -> tuple["Poly2", "Poly2"]:
        q, r = _cldivmod(self.bits, other.bits)
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: "Poly2") -> "Poly2":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly2") -> "Poly2":
        if other.bits == 0:
            raise DivisionByZero("polynomial division by zero")
        return Poly2(_clmod(self.bits, other.bits))

    def gcd(self, other: "Poly2") -> "Poly2":
        return Poly2(_clgcd(self.bits, other.bits))

    def derivative(self) -> "Poly2":
        # d/dx x^i = i x^(i-1): only odd exponents survive mod 2
        odd_mask = sum(1 << i for i in range(1, self.bits.bit_length(), 2))
        return Poly2((self.bits & odd_mask) >> 1)

    def sqrt(self) -> "Poly2":
        """Square root of a polynomial with only even exponents."""
        r, i, b = 0, 0, self.bits
        while b:
            if b & 1:
                if i & 1:
                    raise ValueError(f"{self} is not a square")
                r |= 1 << (i // 2)
            b >>= 1
            i += 1
        return Poly2(r)

    def powmod(self, e: int, m: "Poly2") -> "Poly2":
        return Poly2(_clpowmod(self.bits, e, m.bits))

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Poly2({self})"


CYCLOTOMIC_7 = Poly2(0b1111111)


# ---------------------------------------------------------------------------
# irreducibility and factorization

@lru_cache(maxsize=None)
def irreducibles_of_degree(d: int) -> tuple[Poly2, ...]:
    """All irreducible polynomials of degree ``d`` over GF(2), in canonical order."""
    if d < 1:
        return ()
    out = []
    for bits in range(1 << d, 1 << (d + 1)):
        if _trial_division_irreducible(bits):
            out.append(Poly2(bits))
    return tuple(out)


def _trial_division_irreducible(bits: int) -> bool:
    deg = bits.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in irreducibles_of_degree(d):
            if _clmod(bits, q.bits) == 0:
                return False
    return True


def is_irreducible(p: Poly2) -> bool:
    """Trial division by every irreducible of degree at most ``deg(p)/2``."""
    return _trial_division_irreducible(p.bits)


def _squarefree_parts(f: Poly2) -> list[tuple[Poly2, int]]:
    """Musser's squarefree decomposition in characteristic 2."""
    if f.degree <= 0:
        return []
    out: list[tuple[Poly2, int]] = []
    d = f.derivative()
    if d.is_zero():
        return [(g, 2 * m) for g, m in _squarefree_parts(f.sqrt())]
    c = f.gcd(d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, 2 * m) for g, m in _squarefree_parts(c.sqrt()))
    return out


def _distinct_degree(f: Poly2) -> list[tuple[Poly2, int]]:
    out = []
    x = Poly2.x()
    h = x
    i = 1
    while f.degree >= 2 * i:
        h = Poly2(_clmod(_clsquare(h.bits), f.bits))
        g = f.gcd(h + x)
        if g.degree > 0:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(g: Poly2, d: int) -> list[Poly2]:
    """Split a squarefree product of degree-``d`` irreducibles.

    Trace-map splitting with candidates drawn from an RNG seeded by ``g``, so
    the result is deterministic.
    """
    if g.degree == d:
        return [g]
    rng = random.Random(g.bits)
    while True:
        a = rng.getrandbits(g.degree) | 2
        t = s = _clmod(a, g.bits)
        for _ in range(d - 1):
            t = _clmod(_clsquare(t), g.bits)
            s ^= t
        h = Poly2(_clgcd(g.bits, s))
        if 0 < h.degree < g.degree:
            return _equal_degree(h, d) + _equal_degree(g // h, d)


def poly_factor_gf2(p: Poly2) -> list[tuple[Poly2, int]]:
    """Factor ``p`` into irreducibles over GF(2).

    Returns ``(factor, multiplicity)`` pairs sorted by degree, then by
    coefficient bits.  Constants factor as the empty list.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    counts: dict[Poly2, int] = {}
    for part, mult in _squarefree_parts(p):
        for block, d in _distinct_degree(part):
            for q in _equal_degree(block, d):
                counts[q] = counts.get(q, 0) + mult
    return sorted(counts.items(), key=lambda fm: fm[0].sort_key())


def format_factorization(factors: Iterable[tuple[Poly2, int]]) -> str:
    parts = []
    for f, m in factors:
        parts.append(f"({f})" + (f"^{m}" if m > 1 else ""))
    return "".join(parts) or "1"


# ---------------------------------------------------------------------------
# prime factorizations of 2^d - 1, used for multiplicative orders

@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def poly_order(f: Poly2) -> int:
    """Multiplicative order of x modulo the irreducible ``f`` (f != x)."""
    d = f.degree
    if d < 1 or f.bits & 1 == 0:
        raise ValueError(f"order undefined for {f}")
    n = (1 << d) - 1
    for q in prime_factors(n):
        while n % q == 0 and _clpowmod(0b10, n // q, f.bits) == 1:
            n //= q
    return n


# ---------------------------------------------------------------------------
# fields

@dataclass(frozen=True)
class BinaryField:
    """GF(2^degree) realised as GF(2)[x] / (modulus)."""

    degree: int
    modulus: Poly2

    @property
    def order(self) -> int:
        return 1 << self.degree

    @property
    def mask(self) -> int:
        return (1 << self.degree) - 1

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], int]:
        k, q = self.degree, self.order
        if k == 1:
            return [1, 1], [0, 0], 1
        gen = next(g for g in range(2, q) if self._mult_order(g) == q - 1)
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = v
            log[v] = i
            v = _clmod(_clmul(v, gen), self.modulus.bits)
        return exp, log, gen

    def _mult_order(self, g: int) -> int:
        n = self.order - 1
        for p in prime_factors(n):
            while n % p == 0 and _clpowmod(g, n // p, self.modulus.bits) == 1:
                n //= p
        return n

    @property
    def generator(self) -> int:
        """A fixed generator of the multiplicative group (the class of x for default moduli)."""
        return self._tables[2]

    def element(self, bits: int) -> "FieldElement":
        return FieldElement(bits, self)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return 1
        exp, log, _ = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.degree == 1:
            return 1
        exp, log, _ = self._tables
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> range:
        return range(self.order)

    # -- packed rows ------------------------------------------------------

    @lru_cache(maxsize=64)
    def low_mask(self, n: int) -> int:
        """Mask selecting bit 0 of each of ``n`` packed entries."""
        m = 0
        for j in range(n):
            m |= 1 << (self.degree * j)
        return m

    @cached_property
    def _scale_plan(self) -> list[tuple[tuple[int, int], ...]]:
        # For scalar c: the (s, t) pairs with bit t of c*x^s set.
        k = self.degree
        plan = []
        for c in range(self.order):
            pairs = []
            for s in range(k):
                m = _clmod(_clmul(c, 1 << s), self.modulus.bits)
                for t in range(k):
                    if (m >> t) & 1:
                        pairs.append((s, t))
            plan.append(tuple(pairs))
        return plan

    def scale_packed(self, row: int, c: int, n: int) -> int:
        """Multiply every entry of the packed ``n``-entry row by ``c``."""
        if c == 0 or row == 0:
            return 0
        if c == 1:
            return row
        low = self.low_mask(n)
        out = 0
        for s, t in self._scale_plan[c]:
            plane = (row >> s) & low
            out ^= plane << t
        return out

    def pack(self, entries: Iterable[int]) -> int:
        k = self.degree
        out = 0
        for j, e in enumerate(entries):
            if not 0 <= e < self.order:
                raise ValueError(f"entry {e} not in GF({self.order})")
            out |= e << (k * j)
        return out

    def unpack(self, row: int, n: int) -> list[int]:
        k, m = self.degree, self.mask
        return [(row >> (k * j)) & m for j in range(n)]

    def entry(self, row: int, j: int) -> int:
        return (row >> (self.degree * j)) & self.mask

    def __str__(self) -> str:
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def _make_field(k: int, modulus_bits: int) -> BinaryField:
    return BinaryField(k, Poly2(modulus_bits))


def field_make(k: int, modulus: Poly2 | None = None) -> BinaryField:
    """Return GF(2^k), with the default modulus when none is given.

    Identical (k, modulus) pairs return the same object.
    """
    if not 1 <= k <= MAX_DEGREE:
        raise DegreeMismatch(f"field degree {k} outside 1..{MAX_DEGREE}")
    if modulus is None:
        modulus = Poly2(DEFAULT_MODULI[k])
    if modulus.degree != k:
        raise DegreeMismatch(f"modulus {modulus} has degree {modulus.degree}, expected {k}")
    if not is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus} is reducible over GF(2)")
    return _make_field(k, modulus.bits)


GF2 = field_make(1)
GF8 = field_make(3)


def field_of_order(q: int) -> BinaryField:
    k = q.bit_length() - 1
    if q < 2 or q != 1 << k:
        raise DegreeMismatch(f"{q} is not a power of 2")
    return field_make(k)


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`BinaryField`."""

    bits: int
    field: BinaryField

    def __post_init__(self):
        if not 0 <= self.bits < self.field.order:
            raise ValueError(f"{self.bits} is not reduced in {self.field}")

    def _check(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.bits ^ other.bits, self.field)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.mul(self.bits, other.bits), self.field)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.bits), self.field)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field.pow(self.bits, e), self.field)

    def __bool__(self) -> bool:
        return self.bits != 0

    def multiplicative_order(self) -> int:
        if self.bits == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return self.field._mult_order(self.bits)

    def __str__(self) -> str:
        return str(Poly2(self.bits)) if self.field.degree > 1 else str(self.bits)


def gf_arith(op: str, a: FieldElement, b: FieldElement | int | None, F: BinaryField) -> FieldElement:
    """Dispatch one of ``add``, ``mul``, ``inv``, ``pow`` on elements of ``F``."""
    for x in (a, b):
        if isinstance(x, FieldElement) and x.field != F:
            raise FieldMismatch(f"operand lives in {x.field}, not {F}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# polynomials over GF(2^k), packed like matrix rows (k bits per coefficient)

@dataclass(frozen=True)
class FieldPoly:
    field: BinaryField
    packed: int

    @property
    def degree(self) -> int:
        if self.packed == 0:
            return -1
        return (self.packed.bit_length() - 1) // self.field.degree

    def coeff(self, i: int) -> int:
        return self.field.entry(self.packed, i)

    @property
    def coeffs(self) -> list[int]:
        return self.field.unpack(self.packed, self.degree + 1)

    @classmethod
    def from_coeffs(cls, F: BinaryField, coeffs: Iterable[int]) -> "FieldPoly":
        return cls(F, F.pack(coeffs))

    def is_zero(self) -> bool:
        return self.packed == 0

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        return FieldPoly(self.field, self.packed ^ other.packed)

    def scale(self, c: int) -> "FieldPoly":
        return FieldPoly(self.field, self.field.scale_packed(self.packed, c, self.degree + 1))

    def shift(self, n: int) -> "FieldPoly":
        return FieldPoly(self.field, self.packed << (self.field.degree * n))

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        out = 0
        F, k = self.field, self.field.degree
        n = other.degree + 1
        for i, c in enumerate(self.coeffs):
            if c:
                out ^= F.scale_packed(other.packed, c, n) << (k * i)
        return FieldPoly(F, out)

    def monic(self) -> "FieldPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeff(self.degree)))

    def __divmod__(self, other: "FieldPoly") -> tuple["FieldPoly", "FieldPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        lead_inv = F.inv(other.coeff(other.degree))
        q = FieldPoly(F, 0)
        r = self
        while r.degree >= other.degree:
            shift = r.degree - other.degree
            c = F.mul(r.coeff(r.degree), lead_inv)
            term = FieldPoly.from_coeffs(F, [0] * shift + [c])
            q = q + term
            r = r + other.scale(c).shift(shift)
        return q, r

    def __mod__(self, other: "FieldPoly") -> "FieldPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FieldPoly") -> "FieldPoly":
        return divmod(self, other)[0]

    def gcd(self, other: "FieldPoly") -> "FieldPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "FieldPoly") -> "FieldPoly":
        return ((self * other) // self.gcd(other)).monic()

    def to_poly2(self) -> Poly2:
        if self.field.degree != 1:
            raise DegreeMismatch("only GF(2) polynomials convert to Poly2")
        return Poly2(self.packed)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        F = self.field
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            if c == 1:
                terms.append(mono or "1")
            else:
                cs = f"({Poly2(c)})".replace("x", "g")
                terms.append(cs + ("*" + mono if mono else ""))
        return "+".join(terms) + f" over {F}"


def iter_polys(max_degree: int) -> Iterator[Poly2]:
    """Every nonzero polynomial of degree at most ``max_degree``."""
    for bits in range(1, 1 << (max_degree + 1)):
        yield Poly2(bits)

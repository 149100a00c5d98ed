"""Exact fields: the rationals and prime fields F_p.

Rational elements are plain :class:`fractions.Fraction` values.  Prime-field
elements are :class:`Fp` instances carrying a residue in ``[0, p)``.  Both
support the usual operators with each other's kind excluded, and mix freely
with Python ints, so the map formulas elsewhere are written once for either
field.

Field spec strings are ``q`` or ``fp:<decimal prime>``.
"""

from fractions import Fraction
import math

from .errors import DivisionByZero, NotASquare, UnsupportedField, UsageError
from .rng import below, between

MERSENNE61 = 2**61 - 1

# Deterministic for n < 3.3e24; beyond that a strong probable-prime test.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n):
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """Element of a prime field, stored as its canonical residue."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        self.value = value % field.p
        self.field = field

    def _other(self, other):
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise TypeError("elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value + o, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value - o, self.field)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o - self.value, self.field)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(self.value * o, self.field)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("inverse of zero")
        return Fp(pow(self.value, -1, self.field.p), self.field)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        o %= self.field.p
        if o == 0:
            raise DivisionByZero("division by zero")
        return Fp(self.value * pow(o, -1, self.field.p), self.field)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Fp(o, self.field) / self

    def __neg__(self):
        return Fp(-self.value, self.field)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, p={self.field.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field Q, elements are :class:`fractions.Fraction`."""

    kind = "q"
    characteristic = 0

    def __init__(self, bound=999):
        self.bound = bound

    @property
    def spec(self):
        return "q"

    def __call__(self, value):
        if isinstance(value, Fp):
            raise TypeError("cannot coerce a prime-field element into Q")
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng):
        """Ratio of integers in ``[-bound, bound]``, denominator nonzero."""
        num = between(rng, -self.bound, self.bound)
        den = between(rng, -self.bound, self.bound - 1)
        if den >= 0:
            den += 1
        return Fraction(num, den)

    def is_square(self, a):
        raise UnsupportedField("is_square is only defined for prime fields")

    def sqrt(self, a):
        raise UnsupportedField("sqrt is only defined for prime fields")

    def rational_sqrt(self, a):
        """Exact square root of a rational perfect square, else ``None``."""
        a = Fraction(a)
        if a < 0:
            return None
        n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if n * n == a.numerator and d * d == a.denominator:
            return Fraction(n, d)
        return None

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational element {text!r}") from exc

    @staticmethod
    def format(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def canonical(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The prime field F_p for an odd prime ``p > 3``."""

    kind = "fp"

    def __init__(self, p=MERSENNE61):
        p = int(p)
        if p <= 3 or not is_prime(p):
            raise UsageError(f"modulus must be a prime > 3, got {p}")
        self.p = p
        self._zero = Fp(0, self)
        self._one = Fp(1, self)

    @property
    def characteristic(self):
        return self.p

    @property
    def spec(self):
        return f"fp:{self.p}"

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.field.p != self.p:
                raise TypeError("element of a different prime field")
            return value
        if isinstance(value, Fraction):
            return Fp(value.numerator, self) / value.denominator
        return Fp(int(value), self)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def random(self, rng):
        return Fp(below(rng, self.p), self)

    def is_square(self, a):
        """Euler's criterion; zero counts as a square."""
        v = self(a).value
        return v == 0 or pow(v, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """The square root whose residue is at most ``(p - 1) / 2``."""
        v = self(a).value
        if v == 0:
            return self._zero
        if not self.is_square(v):
            raise NotASquare(f"{v} is not a square mod {self.p}")
        r = _sqrt_mod(v, self.p)
        if r > (self.p - 1) // 2:
            r = self.p - r
        return Fp(r, self)

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                return self(Fraction(text))
            return Fp(int(text), self)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad F_{self.p} element {text!r}") from exc

    @staticmethod
    def format(x):
        return str(x.value)

    def canonical(self, x):
        return self(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def _sqrt_mod(a, p):
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def parse_field(spec):
    """Parse ``q`` or ``fp:<prime>``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational"):
        return RationalField()
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError as exc:
            raise UsageError(f"bad field spec {spec!r}") from exc
        return PrimeField(p)
    raise UsageError(f"field spec must be 'q' or 'fp:<prime>', got {spec!r}")


def arith(op, a, b=None):
    """Apply a named field operation; ``b`` may be an element or an int."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a
    if op == "pow":
        if a == 0 and b < 0:
            raise DivisionByZero("negative power of zero")
        return a**b
    raise ValueError(f"unknown operation {op!r}")


def format_value(field, x):
    """Text form of an element, or of a tuple of elements."""
    if isinstance(x, tuple):
        return [format_value(field, v) for v in x]
    return field.format(x)


DEFAULT_FIELD = PrimeField(MERSENNE61)

"""Parameter curves: the Jacobi quartic with its group law, and the
Weierstrass curve used by the Landau-Lifshits map.

Jacobi quartic:      A^2 = a^4 + k a^2 + 1, identity e = (0, 1), -(a, A) = (-a, A).
Weierstrass curve:   A^2 + a^3 + alpha a + beta = 0   (note the sign convention).

Only membership, sampling and (for the quartic) the group law are provided;
degenerate pairs are the caller's business to resample.
"""

from dataclasses import dataclass, field as dc_field

from .errors import DegenerateDenominator, ParamsOffCurve, SamplingExhausted, UsageError
from .fields import PrimeField
from .rng import coin


@dataclass(frozen=True)
class CurvePoint:
    a: object
    A: object
    curve: object = dc_field(repr=False)

    def __iter__(self):
        return iter((self.a, self.A))

    def __str__(self):
        f = self.curve.field
        return f"({f.format(self.a)}, {f.format(self.A)})"


def _sqrt_or_none(field, v):
    if isinstance(field, PrimeField):
        return field.sqrt(v) if field.is_square(v) else None
    return field.rational_sqrt(v)


class _Curve:
    kind = ""

    def point(self, a, A):
        """Validated point; raises :class:`ParamsOffCurve` if not on the curve."""
        a, A = self.field(a), self.field(A)
        if not self.contains((a, A)):
            raise ParamsOffCurve(f"({self.field.format(a)}, {self.field.format(A)}) is not on {self.spec}")
        return CurvePoint(a, A, self)

    def _rhs(self, a):
        raise NotImplementedError

    def _sample(self, rng, retry_cap, accept=None):
        for _ in range(retry_cap):
            a = self.field.random(rng)
            root = _sqrt_or_none(self.field, self._rhs(a))
            if root is None:
                continue
            A = -root if coin(rng) else root
            if accept is not None and not accept(a, A):
                continue
            return CurvePoint(a, A, self)
        raise SamplingExhausted(f"no point on {self.spec} after {retry_cap} draws")

    def sample_pair(self, rng, retry_cap=256, accept=None):
        """Both roots ``(a, +A)`` and ``(a, -A)`` over one abscissa."""
        p = self._sample(rng, retry_cap, accept)
        return p, CurvePoint(p.a, -p.A, self)


@dataclass(frozen=True, eq=True)
class JacobiQuartic(_Curve):
    field: object
    k: object

    kind = "jacobi"

    def __post_init__(self):
        object.__setattr__(self, "k", self.field(self.k))

    @property
    def spec(self):
        return f"jacobi:k={self.field.format(self.k)}"

    @property
    def identity(self):
        return CurvePoint(self.field.zero, self.field.one, self)

    def _rhs(self, a):
        a2 = a * a
        return a2 * a2 + self.k * a2 + 1

    def contains(self, pt):
        a, A = pt
        return A * A - self._rhs(a) == 0

    def add(self, p, q):
        a, A = p
        b, B = q
        ab = a * b
        den = 1 - ab * ab
        if den == 0:
            raise DegenerateDenominator("1 - a^2 b^2")
        c = (a * B + b * A) / den
        C = ((A * B + self.k * ab) * (1 + ab * ab) + 2 * ab * (a * a + b * b)) / (den * den)
        return CurvePoint(c, C, self)

    def neg(self, p):
        return CurvePoint(-p.a, p.A, self)

    def sample(self, rng, retry_cap=256):
        """Draw ``a`` until ``a^4 + k a^2 + 1`` is a square; sign of ``A`` from one bit."""
        return self._sample(rng, retry_cap)


@dataclass(frozen=True, eq=True)
class WeierstrassCurve(_Curve):
    field: object
    alpha: object
    beta: object

    kind = "weierstrass"

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.field(self.alpha))
        object.__setattr__(self, "beta", self.field(self.beta))

    @property
    def spec(self):
        f = self.field
        return f"weierstrass:alpha={f.format(self.alpha)},beta={f.format(self.beta)}"

    def _rhs(self, a):
        return -(a * a * a + self.alpha * a + self.beta)

    def contains(self, pt):
        a, A = pt
        return A * A + a * a * a + self.alpha * a + self.beta == 0

    def sample(self, rng, retry_cap=256, ll_regular=False):
        """Rejection sampling; ``ll_regular`` additionally rejects ``a = 0`` and ``A = 0``."""
        accept = (lambda a, A: a != 0 and A != 0) if ll_regular else None
        return self._sample(rng, retry_cap, accept)


def parse_curve(spec, field):
    """``jacobi:k=<elem>`` or ``weierstrass:alpha=<elem>,beta=<elem>``."""
    kind, _, rest = spec.strip().partition(":")
    kind = kind.lower()
    try:
        kv = dict(item.split("=", 1) for item in rest.split(",") if item)
    except ValueError as exc:
        raise UsageError(f"bad curve spec {spec!r}") from exc
    kv = {k.strip().lower(): v for k, v in kv.items()}
    if kind == "jacobi" and set(kv) == {"k"}:
        return JacobiQuartic(field, field.parse(kv["k"]))
    if kind == "weierstrass" and set(kv) == {"alpha", "beta"}:
        return WeierstrassCurve(field, field.parse(kv["alpha"]), field.parse(kv["beta"]))
    raise UsageError(f"curve spec must be 'jacobi:k=<e>' or 'weierstrass:alpha=<e>,beta=<e>', got {spec!r}")


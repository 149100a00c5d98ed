"""Parametric Yang-Baxter maps and the quad-graph constructions behind them.

Catalog (registry id, site arity, parameter space):

    adler      scalar  scalar       R(u,v) = (v + c, u - c),  c = (a-b)/(u+v)
    f3         scalar  scalar       R(x,y) = (y (a1+xy)/(a2+xy), x (a2+xy)/(a1+xy))
    kdv_lift   pair    scalar       lift of the discrete potential KdV equation
    kn         pair    jacobi       lifted discrete Krichever-Novikov (Q4) equation
    ll         pair    weierstrass  discrete Landau-Lifshits two-field map

A map object is built against a field (and a curve for ``kn``/``ll``) and
applied as ``m.apply(a, b, x, y) -> (p, q)`` where ``a``, ``b`` are the two
parameters.  Every vanishing denominator raises :class:`SingularInput`.

Two-field quad rules ``F1, F2`` act on the 6-point scheme

    (u_G, v_G) = (F1(u_A, u_B, v_D; a, b), F2(v_A, u_B, v_D; a, b))

and lift to YB maps through the vertex wiring

    (x1, x2) = (u_B, v_A)   (y1, y2) = (u_A, v_D)
    (p1, p2) = (u_G, v_D)   (q1, q2) = (u_B, v_G)

i.e. ``R((x1,x2),(y1,y2)) = ((F1(y1,x1,y2), y2), (x1, F2(x2,x1,y2)))``.
"""

from dataclasses import dataclass
from typing import Callable

from .curves import CurvePoint, JacobiQuartic, WeierstrassCurve
from .errors import BadArity, ParamsOffCurve, SingularInput, UsageError
from .fields import DEFAULT_FIELD


def _nonzero(value, where):
    if value == 0:
        raise SingularInput(where)
    return value


def sigma(x, y):
    return y, x


def sample_param(space, field, curve, rng, retry_cap=256):
    if space == "scalar":
        return field.random(rng)
    if space == "jacobi":
        return curve.sample(rng, retry_cap)
    if space == "weierstrass":
        return curve.sample(rng, retry_cap, ll_regular=True)
    raise ValueError(space)


# --- closed-form building blocks -------------------------------------------


def kn_F(x, y, z, a, b):
    """The discrete KN equation solved for its third vertex.

    Returns ``w`` with ``kn_quad_residual(x, y, w, z, a, b) == 0``.
    """
    (a_, A), (b_, B) = a, b
    t = 1 - a_ * a_ * b_ * b_
    s = a_ * B - b_ * A
    num = t * (b_ * z - a_ * y) * x + s * (y * z - a_ * b_)
    den = s * (a_ * b_ * y * z - 1) * x + t * (a_ * z - b_ * y)
    return num / _nonzero(den, "kn_F denominator")


def kn_quad_residual(x, y, w, z, a, b):
    """Q4 quad equation (curve-parametrised form) on ``(f_A, f_B, f_G, f_D) = (x, y, w, z)``."""
    (a_, A), (b_, B) = a, b
    t = _nonzero(1 - a_ * a_ * b_ * b_, "1 - a^2 b^2")
    return (
        a_ * (x * y + w * z)
        - b_ * (x * z + w * y)
        - (a_ * B - b_ * A) / t * (x * w + y * z - a_ * b_ * (1 + w * x * y * z))
    )


def ll_s(m, a, b):
    """``s_m = B a^(m-1) + A b^(m-1)``; ``m = 0`` divides by ``a`` and ``b``."""
    (a_, A), (b_, B) = a, b
    if m == 0:
        return B / _nonzero(a_, "a") + A / _nonzero(b_, "b")
    return B * a_ ** (m - 1) + A * b_ ** (m - 1)


def ll_coeffs(y, z, a, b, curve):
    """``(K, L, M, N)`` of the LL map, with ``K, N`` recovered from ``K - N`` and ``K + N``."""
    alpha, beta = curve.alpha, curve.beta
    a_, b_ = a.a, b.a
    s0, s1, s2, s3, s4 = (ll_s(m, a, b) for m in range(5))
    k_minus_n = 2 * s2 * y * z - (alpha * s1 + s3) * (y - z) - 2 * alpha * s2 - 4 * beta * s1
    k_plus_n = (y + z) * (a_ * b_ * (alpha * s0 + 3 * s2) + 4 * beta * s1 + 3 * alpha * s2 + s4) / _nonzero(
        a_ - b_, "a - b"
    )
    L = s3 * y * z + (alpha * s2 + 2 * beta * s1) * (y - z) + 4 * beta * s2 - alpha * alpha * s1
    M = s1 * y * z + s2 * (y - z) - s3
    K = (k_plus_n + k_minus_n) / 2
    N = (k_plus_n - k_minus_n) / 2
    return K, L, M, N


def ll_F1(x, y, z, a, b, curve):
    K, L, M, N = ll_coeffs(y, z, a, b, curve)
    return (K * x - L) / _nonzero(M * x + N, "M x + N")


def ll_F2(x, y, z, a, b, curve):
    K, L, M, N = ll_coeffs(y, z, a, b, curve)
    return (K * x + L) / _nonzero(N - M * x, "N - M x")


# --- catalog maps -----------------------------------------------------------


class YBMap:
    """Base class for a two-parameter map ``R_(a,b)`` on sites ``x, y``."""

    id = ""
    arity = "scalar"
    param_space = "scalar"
    curve_kind = None
    has_lax = False
    expect_degenerate = False
    properties = ("yb", "unitarity", "degeneracy")

    def __init__(self, field=None, curve=None):
        if self.curve_kind is None:
            if curve is not None:
                raise UsageError(f"map {self.id!r} takes scalar parameters; no curve expected")
            self.field = field if field is not None else DEFAULT_FIELD
        else:
            cls = JacobiQuartic if self.curve_kind == "jacobi" else WeierstrassCurve
            if not isinstance(curve, cls):
                raise UsageError(f"map {self.id!r} needs a {self.curve_kind} curve, got {curve!r}")
            self.field = curve.field
        self.curve = curve

    def __repr__(self):
        return f"<{type(self).__name__} {self.id} over {self.field.spec}>"

    def check_site(self, x):
        if self.arity == "pair":
            if not (isinstance(x, tuple) and len(x) == 2):
                raise BadArity(f"{self.id} expects pair sites, got {x!r}")
        elif isinstance(x, tuple):
            raise BadArity(f"{self.id} expects scalar sites, got {x!r}")

    def check_param(self, a):
        if self.curve is None:
            return
        if not isinstance(a, CurvePoint) or a.curve != self.curve or not self.curve.contains(a):
            raise ParamsOffCurve(f"{self.id} parameter {a!r} is not a point of {self.curve.spec}")

    def apply(self, a, b, x, y):
        self.check_param(a)
        self.check_param(b)
        self.check_site(x)
        self.check_site(y)
        return self._apply(a, b, x, y)

    __call__ = apply

    def _apply(self, a, b, x, y):
        raise NotImplementedError

    def sample_param(self, rng, retry_cap=256):
        return sample_param(self.param_space, self.field, self.curve, rng, retry_cap)

    def sample_site(self, rng):
        f = self.field
        if self.arity == "pair":
            return (f.random(rng), f.random(rng))
        return f.random(rng)


class Adler(YBMap):
    id = "adler"

    def _apply(self, a, b, u, v):
        c = (a - b) / _nonzero(u + v, "u + v")
        return v + c, u - c


class F3(YBMap):
    id = "f3"
    has_lax = True
    properties = ("yb", "unitarity", "lax", "degeneracy")

    def _apply(self, a1, a2, x, y):
        xy = x * y
        d1 = _nonzero(a1 + xy, "alpha1 + x y")
        d2 = _nonzero(a2 + xy, "alpha2 + x y")
        return y * d1 / d2, x * d2 / d1


class KdVLift(YBMap):
    id = "kdv_lift"
    arity = "pair"
    expect_degenerate = True

    def _apply(self, a, b, x, y):
        (x1, x2), (y1, y2) = x, y
        c = (a - b) / _nonzero(x1 - y2, "x1 - y2")
        return (y1 + c, y2), (x1, x2 + c)


class KN(YBMap):
    id = "kn"
    arity = "pair"
    param_space = "jacobi"
    curve_kind = "jacobi"
    has_lax = True
    expect_degenerate = True

    properties = ("yb", "unitarity", "lax", "degeneracy", "expand-spot")

    def _apply(self, a, b, x, y):
        _nonzero(1 - a.a * a.a * b.a * b.a, "1 - a^2 b^2")
        (x_, X), (y_, Y) = x, y
        return (kn_F(y_, x_, Y, a, b), Y), (x_, kn_F(X, x_, Y, a, b))


class LL(YBMap):
    id = "ll"
    arity = "pair"
    param_space = "weierstrass"
    curve_kind = "weierstrass"
    has_lax = True
    expect_degenerate = True

    properties = ("yb", "unitarity", "lax", "degeneracy", "expand-spot")

    def _apply(self, a, b, x, y):
        _nonzero(a.a - b.a, "a - b")
        _nonzero(a.a * b.a, "a b")
        _nonzero(a.A * b.A, "A B")
        (x_, X), (y_, Y) = x, y
        return (ll_F1(y_, x_, Y, a, b, self.curve), Y), (x_, ll_F2(X, x_, Y, a, b, self.curve))


MAPS = {cls.id: cls for cls in (Adler, F3, KdVLift, KN, LL)}


def make_map(map_id, field=None, curve=None):
    try:
        cls = MAPS[map_id]
    except KeyError:
        raise UsageError(f"unknown map {map_id!r}; choose from {', '.join(MAPS)}") from None
    return cls(field, curve)


def registry():
    """One row per catalog map: id, arity, parameter space, available properties."""
    rows = []
    for map_id, cls in MAPS.items():
        rows.append(
            {
                "id": map_id,
                "arity": cls.arity,
                "params": cls.param_space,
                "properties": list(cls.properties),
            }
        )
    return rows


# --- mutation controls ------------------------------------------------------


class _AdlerMutant(Adler):
    id = "adler"

    def _apply(self, a, b, u, v):
        c = (a + b) / _nonzero(u + v, "u + v")
        return v + c, u - c


class _F3Mutant(F3):
    def _apply(self, a1, a2, x, y):
        xy = x * y
        d1 = _nonzero(a1 + xy, "alpha1 + x y")
        d2 = _nonzero(a2 + xy, "alpha2 + x y")
        return y * d2 / d1, x * d2 / d1


class _KdVLiftMutant(KdVLift):
    def _apply(self, a, b, x, y):
        (x1, x2), (y1, y2) = x, y
        c = (a + b) / _nonzero(x1 - y2, "x1 - y2")
        return (y1 + c, y2), (x1, x2 + c)


class _KNMutant(KN):
    def _apply(self, a, b, x, y):
        _nonzero(1 - a.a * a.a * b.a * b.a, "1 - a^2 b^2")
        (x_, X), (y_, Y) = x, y
        return (kn_F(y_, x_, Y, a, b), Y), (x_, kn_F(X, x_, Y, b, a))


class _LLMutant(LL):
    def _apply(self, a, b, x, y):
        _nonzero(a.a - b.a, "a - b")
        _nonzero(a.a * b.a, "a b")
        _nonzero(a.A * b.A, "A B")
        (x_, X), (y_, Y) = x, y
        return (ll_F1(y_, x_, Y, a, b, self.curve), Y), (x_, ll_F1(X, x_, Y, a, b, self.curve))


_MUTANTS = {
    "adler": _AdlerMutant,
    "f3": _F3Mutant,
    "kdv_lift": _KdVLiftMutant,
    "kn": _KNMutant,
    "ll": _LLMutant,
}


def make_mutant(map_id, field=None, curve=None):
    """A deliberately corrupted copy of a catalog map, used as a negative control.

    adler, kdv_lift: ``a - b -> a + b``; f3: first output uses the wrong ratio;
    kn: second output swaps ``a, b``; ll: second output uses ``F1`` instead of ``F2``.
    """
    return _MUTANTS[map_id](field, curve)


# --- quad rules, lift, three-site maps --------------------------------------


@dataclass(frozen=True)
class QuadRule:
    """Two-field quad rule ``(u_G, v_G) = (f1(u_A,u_B,v_D;a,b), f2(v_A,u_B,v_D;a,b))``."""

    name: str
    f1: Callable
    f2: Callable
    param_space: str = "scalar"
    field: object = DEFAULT_FIELD
    curve: object = None

    @property
    def single_field(self):
        return self.f1 is self.f2

    @property
    def properties(self):
        props = ["yb", "braid", "involution"]
        if self.single_field:
            props.append("diagonal")
        return props

    def sample_param(self, rng, retry_cap=256):
        return sample_param(self.param_space, self.field, self.curve, rng, retry_cap)


def kdv_phi(uA, uB, vD, a, b):
    """Discrete potential KdV: ``u_A + (a - b) / (u_B - v_D)``."""
    return uA + (a - b) / _nonzero(uB - vD, "u_B - v_D")


def kdv_rule(field=None):
    return QuadRule("kdv", kdv_phi, kdv_phi, "scalar", field if field is not None else DEFAULT_FIELD)


def kn_rule(curve):
    return QuadRule("kn", kn_F, kn_F, "jacobi", curve.field, curve)


def ll_rule(curve):
    def f1(x, y, z, a, b):
        return ll_F1(x, y, z, a, b, curve)

    def f2(x, y, z, a, b):
        return ll_F2(x, y, z, a, b, curve)

    return QuadRule("ll", f1, f2, "weierstrass", curve.field, curve)


def swapped_f2_rule(rule):
    """Mutation control: ``F2`` gets its parameters in the wrong order."""

    def f2(x, y, z, a, b):
        return rule.f2(x, y, z, b, a)

    return QuadRule(rule.name + "~swap", rule.f1, f2, rule.param_space, rule.field, rule.curve)


RULES = {"kdv": "scalar", "kn": "jacobi", "ll": "weierstrass"}


def make_rule(rule_id, field=None, curve=None):
    if rule_id == "kdv":
        if curve is not None:
            raise UsageError("rule 'kdv' takes scalar parameters; no curve expected")
        return kdv_rule(field)
    if rule_id == "kn":
        if not isinstance(curve, JacobiQuartic):
            raise UsageError(f"rule 'kn' needs a jacobi curve, got {curve!r}")
        return kn_rule(curve)
    if rule_id == "ll":
        if not isinstance(curve, WeierstrassCurve):
            raise UsageError(f"rule 'll' needs a weierstrass curve, got {curve!r}")
        return ll_rule(curve)
    raise UsageError(f"unknown rule {rule_id!r}; choose from {', '.join(RULES)}")


class LiftedMap(YBMap):
    """The YB map obtained from a two-field quad rule by the 6-point wiring."""

    arity = "pair"
    expect_degenerate = True

    def __init__(self, rule):
        self.rule = rule
        self.id = f"lift({rule.name})"
        self.param_space = rule.param_space
        self.field = rule.field
        self.curve = rule.curve

    def _apply(self, a, b, x, y):
        (x1, x2), (y1, y2) = x, y
        return (self.rule.f1(y1, x1, y2, a, b), y2), (x1, self.rule.f2(x2, x1, y2, a, b))


def lift(rule):
    return LiftedMap(rule)


def three_site(rule, a, b):
    """The flip ``(D, A, B) -> (D, G, B)`` for parameters ``(a, b)``.

    Pair sites use ``F1, F2``; scalar sites use ``F1`` alone (the single-field
    reduction).
    """

    def flip(triple):
        d, m, e = triple
        if isinstance(m, tuple):
            (uD, vD), (uA, vA), (uB, _vB) = d, m, e
            return d, (rule.f1(uA, uB, vD, a, b), rule.f2(vA, uB, vD, a, b)), e
        return d, rule.f1(m, e, d, a, b), e

    return flip


def braid_step(rule, sites, params, j):
    """Flip the staircase at interior site ``j``.

    ``params[i]`` sits on the edge between ``sites[i]`` and ``sites[i+1]``.
    The flip uses ``(a, b) = (params[j], params[j-1])`` and exchanges those
    two edge parameters.
    """
    sites, params = list(sites), list(params)
    left, right = params[j - 1], params[j]
    sites[j - 1 : j + 2] = three_site(rule, right, left)(tuple(sites[j - 1 : j + 2]))
    params[j - 1], params[j] = right, left
    return tuple(sites), tuple(params)


# --- discrete KdV: symmetry projection --------------------------------------


def kdv_quad_map(x, y, z, a, b):
    """``(x, y, z) -> (x, y + (a - b)/(x - z), z)``."""
    return x, y + (a - b) / _nonzero(x - z, "x - z"), z


def kdv_braid(u, v, a, b):
    """The KdV flip projected to the translation invariants ``u = y - x, v = z - y``."""
    c = (a - b) / _nonzero(u + v, "u + v")
    return u - c, v + c


def kdv_projection_check(x, y, z, a, b, field=None):
    """True iff projecting the KdV flip on ``(x, y, z)`` gives ``kdv_braid(u, v)``,
    the flip agrees with the single-field three-site map on ``(z, y, x)``, and
    ``sigma . kdv_braid`` equals the Adler map.
    """
    u, v = y - x, z - y
    x2, y2, z2 = kdv_quad_map(x, y, z, a, b)
    projected = (y2 - x2, z2 - y2)
    z3, y3, x3 = three_site(kdv_rule(field), a, b)((z, y, x))
    adler = Adler(field).apply(a, b, u, v)
    return (
        projected == kdv_braid(u, v, a, b)
        and (x3, y3, z3) == (x2, y2, z2)
        and sigma(*kdv_braid(u, v, a, b)) == adler
    )

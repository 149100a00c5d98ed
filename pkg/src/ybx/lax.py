"""Lax matrices of the f3, kn and ll maps and the identities built on them.

Each Lax matrix is handled as ``L = rho^(-1/2) W``.  Only ``W`` and ``rho``
are ever computed.  Refactorization is checked projectively: the two
products must be proportional with a factor ``mu`` satisfying
``mu^2 rho(p) rho(q) = rho(x) rho(y)``, so no square root is needed.

Products of several factors are written right to left: for
``factors = [(x1, a1), (x2, a2), ...]`` the product is
``W(xn; an) ... W(x2; a2) W(x1; a1)``.
"""

from dataclasses import dataclass, field as dc_field

from .curves import CurvePoint
from .errors import (
    InsufficientSpectralPoints,
    MuSquareFailure,
    NotRankOne,
    ProportionalityFailure,
    SingularInput,
    SingularVandermonde,
    UsageError,
    ZeroRho,
    ZeroVector,
)


@dataclass(frozen=True)
class Matrix2:
    e11: object
    e12: object
    e21: object
    e22: object

    def __matmul__(self, o):
        return Matrix2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    def scale(self, c):
        return Matrix2(c * self.e11, c * self.e12, c * self.e21, c * self.e22)

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def entry(self, i, j):
        return self.entries()[2 * (i - 1) + (j - 1)]

    def apply(self, v):
        return (self.e11 * v[0] + self.e12 * v[1], self.e21 * v[0] + self.e22 * v[1])

    def is_zero(self):
        return all(e == 0 for e in self.entries())


def dyad(col, row):
    return Matrix2(col[0] * row[0], col[0] * row[1], col[1] * row[0], col[1] * row[1])


@dataclass(frozen=True)
class LaxValue:
    W: Matrix2
    rho: object


# --- the three Lax matrices -------------------------------------------------


def f3_lax(x, alpha, lam, curve=None):
    return LaxValue(Matrix2(x * x, lam * x, x, alpha), 1)


def kn_lax(x, a, lam, curve=None):
    (x_, X), (a_, A), (l, L) = x, a, lam
    den = 1 - a_ * a_ * l * l
    if den == 0:
        raise SingularInput("1 - a^2 lambda^2")
    t = (a_ * L - A * l) / den
    W = Matrix2(
        -l * X - x_ * t,
        a_ * (1 + l * x_ * X * t),
        -a_ * (x_ * X + l * t),
        l * x_ + X * t,
    )
    return LaxValue(W, kn_rho(x, a))


def kn_rho(x, a):
    (x_, X), (a_, A) = x, a
    return (x_ * x_ * X * X + 1) * a_ * a_ - x_ * x_ - X * X + 2 * A * x_ * X


def ll_r(x, a, curve):
    (x_, X), (a_, A) = x, a
    if A == 0:
        raise SingularInput("2 A")
    return (x_ * X + a_ * (x_ - X) + curve.alpha + 2 * a_ * a_) / (2 * A)


def ll_rho(x, a, curve):
    (x_, X), (a_, A) = x, a
    r = ll_r(x, a, curve)
    return 2 * A * (r * r + x_ - X + a_)


def ll_lax(x, a, lam, curve):
    (x_, X), (a_, A), (l, L) = x, a, lam
    r = ll_r(x, a, curve)
    g = L + A
    d = l - a_
    W = Matrix2(
        g * r + d * (l + a_ - X),
        g * (l + x_ - X) - d * (l + 2 * a_) * r - 2 * A * d,
        g - d * r,
        -g * r - d * (l + a_ + x_),
    )
    return LaxValue(W, 2 * A * (r * r + x_ - X + a_))


LAX = {"f3": f3_lax, "kn": kn_lax, "ll": ll_lax}


def _lax_fn(ybmap):
    try:
        return LAX[ybmap.id]
    except KeyError:
        raise UsageError(f"map {ybmap.id!r} has no Lax matrix") from None


def lax_eval(ybmap, x, a, lam):
    """``W`` and ``rho`` of ``ybmap`` at site ``x``, parameter ``a``, spectral point ``lam``."""
    value = _lax_fn(ybmap)(x, a, lam, ybmap.curve)
    if value.rho == 0:
        raise ZeroRho()
    return value


def sample_spectral(ybmap, rng, retry_cap=256):
    if ybmap.curve is None:
        return ybmap.field.random(rng)
    return ybmap.curve.sample(rng, retry_cap)


def product(ybmap, factors, lam):
    """``W(xn;an,lam) ... W(x1;a1,lam)`` and the product of the ``rho`` values."""
    fn = _lax_fn(ybmap)
    M, rho = None, 1
    for x, a in factors:
        v = fn(x, a, lam, ybmap.curve)
        M = v.W if M is None else v.W @ M
        rho = rho * v.rho
    return M, rho


# --- refactorization --------------------------------------------------------


def proportional(u, v):
    """All 2x2 minors of the pair of 4-vectors vanish."""
    n = len(u)
    return all(u[i] * v[j] - u[j] * v[i] == 0 for i in range(n) for j in range(i + 1, n))


def _ratio(u, v):
    for ui, vi in zip(u, v):
        if vi != 0:
            return ui / vi
    return None


@dataclass
class RefactorResult:
    mus: list
    mu_squared: object
    lams: list = dc_field(default_factory=list)


def refactor_check(ybmap, x, y, a, b, lams, pq=None):
    """Check ``W(y;b) W(x;a) = mu W(p;a) W(q;b)`` at every spectral point.

    ``(p, q)`` defaults to ``ybmap.apply(a, b, x, y)``.  For f3 ``mu`` must be 1.
    Raises :class:`ProportionalityFailure` or :class:`MuSquareFailure` naming
    the offending spectral point.
    """
    p, q = pq if pq is not None else ybmap.apply(a, b, x, y)
    mus = []
    mu_sq = None
    for lam in lams:
        wx, wy = lax_eval(ybmap, x, a, lam), lax_eval(ybmap, y, b, lam)
        wp, wq = lax_eval(ybmap, p, a, lam), lax_eval(ybmap, q, b, lam)
        lhs = (wy.W @ wx.W).entries()
        rhs = (wp.W @ wq.W).entries()
        if ybmap.id == "f3":
            if lhs != rhs:
                raise ProportionalityFailure(lam, lhs, rhs)
            mus.append(1)
            continue
        mu = _ratio(lhs, rhs)
        if mu is None or not proportional(lhs, rhs):
            raise ProportionalityFailure(lam, lhs, rhs)
        left = mu * mu * wp.rho * wq.rho
        right = wx.rho * wy.rho
        if left != right:
            raise MuSquareFailure(lam, left, right)
        if mu_sq is not None and mu * mu != mu_sq:
            raise MuSquareFailure(lam, mu * mu, mu_sq)
        mu_sq = mu * mu
        mus.append(mu)
    return RefactorResult(mus, mu_sq if mu_sq is not None else 1, list(lams))


# --- rank-one spectral points -----------------------------------------------


@dataclass(frozen=True)
class LLSpectralPoint:
    lambda0: object
    Lambda0: object
    calA: object


def ll_spectral_point(curve, a):
    """Third intersection of the tangent at ``a`` with the curve, reflected.

    ``calA = -(3a^2 + alpha)/(2A)`` is the tangent slope,
    ``lambda0 = -2a - calA^2`` and ``Lambda0 = -A - calA (lambda0 - a)``.
    """
    a_, A = a
    if A == 0:
        raise SingularInput("2 A")
    calA = -(3 * a_ * a_ + curve.alpha) / (2 * A)
    l0 = -2 * a_ - calA * calA
    return LLSpectralPoint(l0, -A - calA * (l0 - a_), calA)


def right_kernel(M):
    """A spanning vector of the kernel of a rank-one 2x2 matrix."""
    if M.is_zero():
        raise ZeroVector("zero matrix has a 2-dimensional kernel")
    if M.det() != 0:
        raise NotRankOne("matrix is invertible")
    if M.e11 != 0 or M.e12 != 0:
        return (-M.e12, M.e11)
    return (-M.e22, M.e21)


def _parallel(u, v):
    return u[0] * v[1] - u[1] * v[0] == 0


def rank1_check(ybmap, x, a):
    """Evaluate ``W`` at the map's rank-one spectral point.

    kn: ``lam = a`` and ``W = a [1, x]^T [-X, 1]``.
    ll: ``lam = lambda0(a)``; the kernel is spanned by ``[calA (a+X) - 2A, a+X]``
    and ``W = (lambda0 - a)/(2A) [-(2A - calA (a-x)), a-x]^T [a+X, 2A - calA (a+X)]``.
    Returns ``(kernel_vector, matches)``.
    """
    x_, X = x
    a_, A = a
    if ybmap.id == "kn":
        W = kn_lax(x, a, a).W
        kernel = right_kernel(W)
        expected = dyad((1, x_), (-X, 1)).scale(a_)
        return kernel, W == expected and _parallel(kernel, (1, X))
    if ybmap.id == "ll":
        sp = ll_spectral_point(ybmap.curve, a)
        lam = CurvePoint(sp.lambda0, sp.Lambda0, ybmap.curve)
        W = ll_lax(x, a, lam, ybmap.curve).W
        kernel = right_kernel(W)
        span_vec = (sp.calA * (a_ + X) - 2 * A, a_ + X)
        expected = dyad((-(2 * A - sp.calA * (a_ - x_)), a_ - x_), (a_ + X, 2 * A - sp.calA * (a_ + X)))
        expected = expected.scale((sp.lambda0 - a_) / (2 * A))
        annihilated = W.apply(span_vec) == (0, 0)
        return kernel, annihilated and _parallel(kernel, span_vec) and W == expected
    raise UsageError(f"no rank-one spectral point for map {ybmap.id!r}")


# --- lambda expansion -------------------------------------------------------


def solve_vandermonde(xs, ys):
    """Coefficients ``c`` with ``sum_k c[k] x^k = y`` at every node (Newton form)."""
    n = len(xs)
    if len(set(xs)) != n:
        raise SingularVandermonde("interpolation nodes are not distinct")
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [0] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (t - xs[i]) + dd[i]
        shifted = [0] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] = coeffs[0] + dd[i]
    return coeffs


@dataclass
class LambdaExpansion:
    """Coefficients ``S[(i, j, k, l)]`` of the cleared product in ``lam^k Lam^l``."""

    map_id: str
    n_factors: int
    kmax: int
    coeffs: dict
    holdout_ok: bool = True

    def S(self, i, j, k, l):
        return self.coeffs.get((i, j, k, l), 0)

    def evaluate(self, i, j, lam, Lam):
        total = 0
        for (ii, jj, k, l), c in self.coeffs.items():
            if (ii, jj) == (i, j):
                total = total + c * lam**k * Lam**l
        return total

    def nonzero(self):
        return {key: c for key, c in self.coeffs.items() if c != 0}


def degree_bound(map_id, n):
    if map_id == "kn":
        return 3 * n
    if map_id == "ll":
        return 2 * n
    raise UsageError(f"lambda expansion is defined for kn and ll, not {map_id!r}")


def cleared_product(ybmap, factors, lam):
    """The product with its spectral denominators removed.

    kn: multiplied by ``prod (a_i^2 lam^2 - 1)``; ll: ``W`` alone (the ``rho``
    factors are independent of ``lam``).
    """
    M, _ = product(ybmap, factors, lam)
    if ybmap.id == "kn":
        l = lam.a
        c = 1
        for _, a in factors:
            c = c * (a.a * a.a * l * l - 1)
        M = M.scale(c)
    return M


def _spectral_nodes(ybmap, factors, count, rng, retry_cap):
    nodes, seen = [], set()
    tries = 0
    while len(nodes) < count:
        tries += 1
        if tries > retry_cap * count:
            raise InsufficientSpectralPoints(f"found {len(nodes)} of {count} regular spectral points")
        try:
            lam = ybmap.curve.sample(rng, retry_cap)
        except Exception as exc:
            raise InsufficientSpectralPoints(str(exc)) from exc
        if lam.A == 0 or lam.a in seen:
            continue
        if ybmap.id == "kn" and any(1 - a.a * a.a * lam.a * lam.a == 0 for _, a in factors):
            continue
        seen.add(lam.a)
        nodes.append(lam)
    return nodes


def lambda_expand(ybmap, factors, rng, entries=None, retry_cap=256, holdout=3):
    """Recover every ``S_{ijkl}`` of the cleared product by interpolation.

    Each node ``lam = (l, L)`` is evaluated at ``(l, L)`` and ``(l, -L)`` to
    split the even and odd parts in ``Lam``; each part is then a polynomial in
    ``l`` of degree at most ``kmax`` recovered from ``kmax + 1`` nodes.
    ``holdout`` extra nodes check the reconstruction.
    """
    entries = entries or [(1, 1), (1, 2), (2, 1), (2, 2)]
    kmax = degree_bound(ybmap.id, len(factors))
    nodes = _spectral_nodes(ybmap, factors, kmax + 1 + holdout, rng, retry_cap)
    fit, check = nodes[: kmax + 1], nodes[kmax + 1 :]
    curve = ybmap.curve
    even = {e: [] for e in entries}
    odd = {e: [] for e in entries}
    for lam in fit:
        plus = cleared_product(ybmap, factors, lam)
        minus = cleared_product(ybmap, factors, CurvePoint(lam.a, -lam.A, curve))
        for i, j in entries:
            fp, fm = plus.entry(i, j), minus.entry(i, j)
            even[(i, j)].append((fp + fm) / 2)
            odd[(i, j)].append((fp - fm) / (2 * lam.A))
    xs = [lam.a for lam in fit]
    coeffs = {}
    for i, j in entries:
        for l, values in ((0, even[(i, j)]), (1, odd[(i, j)])):
            for k, c in enumerate(solve_vandermonde(xs, values)):
                coeffs[(i, j, k, l)] = c
    exp = LambdaExpansion(ybmap.id, len(factors), kmax, coeffs)
    for lam in check:
        M = cleared_product(ybmap, factors, lam)
        if any(exp.evaluate(i, j, lam.a, lam.A) != M.entry(i, j) for i, j in entries):
            exp.holdout_ok = False
    return exp


def spot_values(ybmap, factors, exp):
    """Closed-form anchors for selected coefficients.

    Returns ``(name, recovered, expected)`` triples.  kn pair products use the
    five listed coefficients (``S_2110`` with its last factor ``x Y (a B X - b A y)``);
    ll pairs use ``S_1221`` and ``S_1211 - S_1120``; ll triples use the top odd
    coefficient ``S_1231`` and ``S_1221 - S_1130``.
    """
    S = exp.S
    n = len(factors)
    if ybmap.id == "kn" and n == 2:
        (x, X), (a, A) = factors[0][0], factors[0][1]
        (y, Y), (b, B) = factors[1][0], factors[1][1]
        return [
            ("S1100", S(1, 1, 0, 0), a * b * x * (y - X)),
            ("S1160", S(1, 1, 6, 0), a * a * b * b * Y * (X - y)),
            ("S1201", S(1, 2, 0, 1), a * b * (X - y)),
            ("S1210", S(1, 2, 1, 0), a * b * X * y * (b * Y - a * x) + b * x - a * Y + a * B * y - b * A * X),
            ("S2110", S(2, 1, 1, 0), X * y * (b * Y - a * x) + a * b * (b * x - a * Y) + x * Y * (a * B * X - b * A * y)),
        ]
    if ybmap.id == "ll" and n == 2:
        (x, X), (y, Y) = factors[0][0], factors[1][0]
        return [
            ("S1221", S(1, 2, 2, 1), -(X + y)),
            ("S1211-S1120", S(1, 2, 1, 1) - S(1, 1, 2, 0), -x * (X + y)),
        ]
    if ybmap.id == "ll" and n == 3:
        (x, X), (y, Y), (z, Z) = factors[0][0], factors[1][0], factors[2][0]
        return [
            ("S1231", S(1, 2, 3, 1), (X + y) * (Y + z)),
            ("S1221-S1130", S(1, 2, 2, 1) - S(1, 1, 3, 0), x * (X + y) * (Y + z)),
        ]
    raise UsageError(f"no spot values for {ybmap.id!r} with {n} factors")


# --- kernel recovery --------------------------------------------------------


def kernel_recover(ybmap, factors, at="a"):
    """Recover a coordinate of the first factor from the kernel of the product.

    f3 at ``lam = alpha1``: kernel ``[-alpha1, x1]``, returns ``x1``.
    kn at ``lam = a1``: kernel ``[1, X1]``, returns ``X1``;
    kn at ``lam = e = (0, 1)`` (``at="e"``): kernel ``[1, x1]``, returns ``x1``.
    ll at ``lam = lambda0(a1)``: kernel ``[calA (a1+X1) - 2A1, a1+X1]``, returns ``X1``.
    """
    first_x, first_a = factors[0]
    if ybmap.id == "f3":
        M, _ = product(ybmap, factors, first_a)
        k1, k2 = right_kernel(M)
        if k1 == 0:
            raise SingularInput("kernel first component")
        return -first_a * k2 / k1
    if ybmap.id == "kn":
        lam = ybmap.curve.identity if at == "e" else first_a
        M, _ = product(ybmap, factors, lam)
        k1, k2 = right_kernel(M)
        if k1 == 0:
            raise SingularInput("kernel first component")
        return k2 / k1
    if ybmap.id == "ll":
        a_, A = first_a
        sp = ll_spectral_point(ybmap.curve, first_a)
        M, _ = product(ybmap, factors, CurvePoint(sp.lambda0, sp.Lambda0, ybmap.curve))
        k1, k2 = right_kernel(M)
        den = k1 - sp.calA * k2
        if den == 0:
            raise SingularInput("k1 - calA k2")
        return -2 * A * k2 / den - a_
    raise UsageError(f"no kernel recovery for map {ybmap.id!r}")


def kn_identity_product(ybmap, factors):
    """``W(xn;an,e)...W(x1;a1,e)`` and the closed form
    ``a1 prod_{i>=2} a_i (X_{i-1} - x_i) [1, Xn]^T [-x1, 1]``."""
    M, _ = product(ybmap, factors, ybmap.curve.identity)
    c = factors[0][1].a
    for (prev, _), (cur, a) in zip(factors, factors[1:]):
        c = c * a.a * (prev[1] - cur[0])
    return M, dyad((1, factors[-1][0][1]), (-factors[0][0][0], 1)).scale(c)

"""
Lax matrices: refactorization without square roots
"""
from ybx import lax
from ybx.curves import CurvePoint, JacobiQuartic, WeierstrassCurve
from ybx.fields import DEFAULT_FIELD
from ybx.maps import make_map
from ybx.rng import stream

F = DEFAULT_FIELD
rng = stream(1, "demo")
kn = make_map("kn", F, JacobiQuartic(F, 5))
ll = make_map("ll", F, WeierstrassCurve(F, 2, 3))

# W(y;b) W(x;a) is proportional to W(p;a) W(q;b); the factor mu never needs rho^(1/2)
for m in (kn, ll):
    a, b = m.sample_param(rng), m.sample_param(rng)
    x, y = m.sample_site(rng), m.sample_site(rng)
    lams = [lax.sample_spectral(m, rng) for _ in range(5)]
    res = lax.refactor_check(m, x, y, a, b, lams)
    print(m.id, "mu^2 =", res.mu_squared, "same at all 5 points:", len({mu * mu for mu in res.mus}) == 1)

# f3 refactorizes with mu = 1 exactly
f3 = make_map("f3", F)
res = lax.refactor_check(f3, F(3), F(5), F(7), F(11), [F(2), F(13)])
print("f3 mus:", res.mus)

"""
Rank-one spectral points
"""
x, a = kn.sample_site(rng), kn.sample_param(rng)
W = lax.kn_lax(x, a, a).W
print("kn det at lambda = a:", W.det(), " kernel:", [str(v) for v in lax.right_kernel(W)])

a = ll.sample_param(rng)
sp0 = lax.ll_spectral_point(ll.curve, a)
print("(lambda0, Lambda0) on the curve:", ll.curve.contains((sp0.lambda0, sp0.Lambda0)))
x = ll.sample_site(rng)
W = lax.ll_lax(x, a, CurvePoint(sp0.lambda0, sp0.Lambda0, ll.curve), ll.curve).W
v = (sp0.calA * (a.a + x[1]) - 2 * a.A, a.a + x[1])
print("ll det:", W.det(), " W v =", [str(t) for t in W.apply(v)])

"""
Peeling a product: the kernel gives back the first factor
"""
for n in (2, 3, 4):
    factors = [(kn.sample_site(rng), kn.sample_param(rng)) for _ in range(n)]
    print(n, "factors, X1 recovered:", lax.kernel_recover(kn, factors) == factors[0][0][1])

"""
Coefficients of Lax products in lambda^k Lambda^l
"""
from ybx import lax
from ybx.curves import JacobiQuartic, WeierstrassCurve
from ybx.fields import DEFAULT_FIELD
from ybx.maps import make_map
from ybx.rng import stream

F = DEFAULT_FIELD
rng = stream(2, "demo")
kn = make_map("kn", F, JacobiQuartic(F, 5))
ll = make_map("ll", F, WeierstrassCurve(F, 2, 3))

factors = [(kn.sample_site(rng), kn.sample_param(rng)) for _ in range(2)]
exp = lax.lambda_expand(kn, factors, rng)
print("kn pair, highest power of lambda:", max(k for (_, _, k, _) in exp.nonzero()))
print("reconstruction at held-out points:", exp.holdout_ok)
for name, got, want in lax.spot_values(kn, factors, exp):
    print(" ", name, got == want)

# the coefficient S_2110 carries x Y (a B X - b A y); with a B x in its place it no longer matches
(x, X), (a, A) = factors[0]
(y, Y), (b, B) = factors[1]
variant = X * y * (b * Y - a * x) + a * b * (b * x - a * Y) + x * Y * (a * B * x - b * A * y)
print("S2110 with aBx:", exp.S(2, 1, 1, 0) == variant)

# triple ll product: the top odd coefficient sits at lambda^3 Lambda
factors = [(ll.sample_site(rng), ll.sample_param(rng)) for _ in range(3)]
exp = lax.lambda_expand(ll, factors, rng)
(x, X), (y, Y), (z, Z) = (f[0] for f in factors)
print("S1231 == (X+y)(Y+z):", exp.S(1, 2, 3, 1) == (X + y) * (Y + z))
print("S1241:", exp.S(1, 2, 4, 1))

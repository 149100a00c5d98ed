"""
Parameters on curves, and the five catalog maps
"""
from fractions import Fraction

from ybx.curves import JacobiQuartic, WeierstrassCurve
from ybx.fields import DEFAULT_FIELD, RationalField, format_value
from ybx.maps import make_map, registry
from ybx.rng import stream

# the worked example over Q: k = 2 makes a^4 + 2a^2 + 1 a perfect square
Q = RationalField()
E = JacobiQuartic(Q, 2)
p, q = E.point(1, 2), E.point(2, 5)
print("(1,2) + (2,5) =", E.add(p, q))
print("inverse of (2,5):", E.neg(q), " sum:", E.add(q, E.neg(q)))
# the addition formula divides by 1 - a^2 b^2, so (1,2) + (-1,2) is not defined by it

# over Q every sample at k = 2 has the shape (a, +-(a^2 + 1))
rng = stream(0, "demo")
for _ in range(3):
    pt = E.sample(rng)
    print(pt, abs(pt.A) == pt.a * pt.a + 1)

# most work happens over F_p with p = 2^61 - 1
F = DEFAULT_FIELD
jq = JacobiQuartic(F, 5)
wc = WeierstrassCurve(F, 2, 3)
print(wc.sample(rng, ll_regular=True))

for row in registry():
    print(row["id"], row["arity"], row["params"])

"""
Applying maps
"""
adler = make_map("adler", Q)
print(adler.apply(Q(3), Q(1), Q(1), Q(1)))

f3 = make_map("f3", Q)
print(f3.apply(Q(1), Q(0), Q(1), Q(1)))

kn = make_map("kn", F, jq)
a, b = kn.sample_param(rng), kn.sample_param(rng)
x, y = kn.sample_site(rng), kn.sample_site(rng)
p, q = kn.apply(a, b, x, y)
print("kn:", format_value(F, p), format_value(F, q))

# unitarity by hand: sigma R_(b,a) sigma undoes R_(a,b)
q2, p2 = kn.apply(b, a, q, p)
print((p2, q2) == (x, y))

# the YB relation by hand, two chains of three maps
c = kn.sample_param(rng)
z = kn.sample_site(rng)
x1, y1 = kn(a, b, x, y)
x1, z1 = kn(a, c, x1, z)
y1, z1 = kn(b, c, y1, z1)
y2, z2 = kn(b, c, y, z)
x2, z2 = kn(a, c, x, z2)
x2, y2 = kn(a, b, x2, y2)
print("YB:", (x1, y1, z1) == (x2, y2, z2))

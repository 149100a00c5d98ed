"""
Quad rules, the three-site flip and the lift to YB maps
"""
from ybx.curves import JacobiQuartic
from ybx.fields import DEFAULT_FIELD, RationalField
from ybx.maps import braid_step, kdv_projection_check, kdv_rule, kn_rule, lift, make_map, three_site
from ybx.rng import stream
from ybx.verify import SampleConfig, check_braid, check_yb

Q = RationalField()
rule = kdv_rule(Q)

# scalar flip on (D, A, B): A -> u_A + (a - b)/(u_B - u_D)
flip = three_site(rule, Q(5), Q(1))
print(flip((Q(0), Q(1), Q(2))))
# the flip is undone by the swapped parameters, not by itself
print(three_site(rule, Q(1), Q(5))(flip((Q(0), Q(1), Q(2)))))

# braid relation on a four-site staircase
sites, params = (Q(0), Q(1), Q(3), Q(7)), (Q(2), Q(5), Q(11))
left = right = (sites, params)
for j in (2, 1, 2):
    left = braid_step(rule, *left, j)
for j in (1, 2, 1):
    right = braid_step(rule, *right, j)
print("braid:", left == right)

# projecting to u = y - x, v = z - y gives the Adler map up to a swap
print(kdv_projection_check(Q(1), Q(4), Q(9), Q(3), Q(1)))

# the lift of the KN rule is the KN YB map
F = DEFAULT_FIELD
jq = JacobiQuartic(F, 5)
kn, lifted = make_map("kn", F, jq), lift(kn_rule(jq))
rng = stream(3, "demo")
a, b = kn.sample_param(rng), kn.sample_param(rng)
x, y = kn.sample_site(rng), kn.sample_site(rng)
print("lift == kn:", kn.apply(a, b, x, y) == lifted.apply(a, b, x, y))

cfg = SampleConfig(samples=100, seed=4)
print("kn rule braid suite passes:", check_braid(kn_rule(jq), cfg).passed)
print("lifted KN is YB:", check_yb(kn_rule(jq), cfg).passed)

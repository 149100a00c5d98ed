from fractions import Fraction

import pytest

from ybx.curves import CurvePoint, JacobiQuartic, WeierstrassCurve, parse_curve
from ybx.errors import DegenerateDenominator, ParamsOffCurve, SamplingExhausted, UsageError
from ybx.fields import PrimeField, RationalField
from ybx.rng import stream


def test_worked_example_over_q():
    Q = RationalField()
    E = JacobiQuartic(Q, 2)
    s = E.add(E.point(1, 2), E.point(2, 5))
    assert (s.a, s.A) == (Fraction(-3), Fraction(10))
    assert E.contains(s)


def test_identity_and_inverse(jq, rng):
    e = jq.identity
    for _ in range(200):
        p = jq.sample(rng)
        assert tuple(jq.add(p, e)) == tuple(p)
        assert tuple(jq.add(e, p)) == tuple(p)
        assert tuple(jq.add(p, jq.neg(p))) == tuple(e)


def test_group_axioms(jq, rng):
    for _ in range(200):
        p, q, r = jq.sample(rng), jq.sample(rng), jq.sample(rng)
        pq = jq.add(p, q)
        assert jq.contains(pq)
        assert tuple(pq) == tuple(jq.add(q, p))
        assert tuple(jq.add(pq, r)) == tuple(jq.add(p, jq.add(q, r)))


def test_degenerate_addition():
    F = PrimeField(13)
    E = JacobiQuartic(F, 5)
    # search the small curve for a pair with a^2 b^2 = 1
    pts = [E.point(a, A) for a in range(13) for A in range(13) if E.contains((F(a), F(A)))]
    pairs = [(p, q) for p in pts for q in pts if 1 - (p.a * q.a) ** 2 == 0]
    assert pairs
    with pytest.raises(DegenerateDenominator):
        E.add(*pairs[0])


def test_membership_and_validation(jq, wc):
    assert jq.contains((0, 1))
    with pytest.raises(ParamsOffCurve):
        jq.point(1, 1)
    F = PrimeField(2**61 - 1)
    W = WeierstrassCurve(F, 0, -1)
    assert W.contains((F(1), F(0)))
    assert W.point(1, 0).A == 0


def test_sampling_lands_on_curve(jq, wc, rng):
    for _ in range(100):
        assert jq.contains(jq.sample(rng))
        p = wc.sample(rng, ll_regular=True)
        assert wc.contains(p) and p.a != 0 and p.A != 0
        plus, minus = wc.sample_pair(rng)
        assert plus.a == minus.a and plus.A == -minus.A and wc.contains(minus)


def test_both_signs_sampled(jq, rng):
    F = jq.field
    half = (F.p - 1) // 2
    signs = {jq.sample(rng).A.value <= half for _ in range(64)}
    assert signs == {True, False}


def test_rational_sampling_k2_gives_a2_plus_1():
    Q = RationalField()
    E = JacobiQuartic(Q, 2)
    rng = stream(0, "k2")
    for _ in range(50):
        p = E.sample(rng)
        assert abs(p.A) == p.a * p.a + 1


def test_sampling_exhausted_over_q():
    E = JacobiQuartic(RationalField(), 5)
    with pytest.raises(SamplingExhausted):
        E.sample(stream(0, "k5"), retry_cap=5)


def test_sampling_is_deterministic(jq):
    a = [tuple(jq.sample(stream(9, "s"))) for _ in range(3)]
    assert len(set(a)) == 1


def test_parse_curve():
    F = PrimeField(13)
    assert parse_curve("jacobi:k=5", F) == JacobiQuartic(F, 5)
    assert parse_curve("weierstrass:alpha=2,beta=-1", F) == WeierstrassCurve(F, 2, 12)
    assert parse_curve("jacobi:k=5", F).spec == "jacobi:k=5"
    for bad in ("jacobi:a=5", "weierstrass:alpha=2", "edwards:d=1", "jacobi:k"):
        with pytest.raises(UsageError):
            parse_curve(bad, F)


def test_point_iterates_as_pair(jq):
    p = jq.identity
    a, A = p
    assert isinstance(p, CurvePoint) and (a, A) == (0, 1)
    assert str(p) == "(0, 1)"

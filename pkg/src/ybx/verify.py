"""Sampling-based property checks for YB maps and quad rules.

Every sample ``i`` of property ``prop`` on target ``t`` draws from its own
stream ``stream(seed, prop, t.id, i)``, so a report is a pure function of the
configuration regardless of how samples are scheduled over workers, and any
failure can be replayed from its index alone.  A sample hitting a vanishing
denominator is redrawn from the same stream (up to ``retry_cap`` times) and
never counts as a failure.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import lax
from .curves import CurvePoint
from .errors import MuSquareFailure, ProportionalityFailure, SamplingExhausted, UnknownProperty
from .fields import DEFAULT_FIELD, Fp
from .maps import QuadRule, braid_step, lift, three_site
from .rng import stream


@dataclass(frozen=True)
class SampleConfig:
    field: object = DEFAULT_FIELD
    samples: int = 100
    seed: int = 0
    retry_cap: int = 256
    workers: int = 1


def workers_from_env(default=1):
    """``YBX_THREADS`` caps the worker count; 0 means one per CPU."""
    raw = os.environ.get("YBX_THREADS")
    if raw is None or raw.strip() == "":
        return default
    n = int(raw)
    if n <= 0:
        return os.cpu_count() or 1
    return n


@dataclass
class PropertyReport:
    property: str
    map: str
    samples_attempted: int
    samples_valid: int
    failures: list = dc_field(default_factory=list)
    observation: str = None

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        d = {
            "property": self.property,
            "map": self.map,
            "samples_attempted": self.samples_attempted,
            "samples_valid": self.samples_valid,
            "failures": self.failures,
        }
        if self.observation is not None:
            d["observation"] = self.observation
        return d


class _Fail(Exception):
    """Raised inside a trial to record a counterexample."""

    def __init__(self, inputs, lhs, rhs, **extra):
        super().__init__("property failed")
        self.record = {"inputs": inputs, "lhs": lhs, "rhs": rhs, **extra}


def fmt(v):
    """JSON-safe exact text form: residues and ``num/den`` strings, nested lists."""
    if isinstance(v, CurvePoint):
        return [fmt(v.a), fmt(v.A)]
    if isinstance(v, (tuple, list)):
        return [fmt(x) for x in v]
    if isinstance(v, dict):
        return {k: fmt(x) for k, x in v.items()}
    if isinstance(v, Fp):
        return str(v.value)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    return str(v)


def _expect(cond, inputs, lhs, rhs, **extra):
    if not cond:
        raise _Fail(fmt(inputs), fmt(lhs), fmt(rhs), **extra)


def _run(prop, target, cfg, trial):
    """Run ``trial(target, rng)`` for every sample index and merge by index."""

    def one(i):
        rng = stream(cfg.seed, prop, target.id, i)
        draws = 0
        while True:
            draws += 1
            try:
                out = trial(target, rng)
            except ZeroDivisionError:
                if draws >= cfg.retry_cap:
                    raise SamplingExhausted(
                        f"{prop} on {target.id}: sample {i} singular after {cfg.retry_cap} draws"
                    ) from None
                continue
            except _Fail as f:
                return draws, {"sample": i, **f.record}, None
            return draws, None, out

    if cfg.workers > 1 and cfg.samples > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(one, range(cfg.samples)))
    else:
        results = [one(i) for i in range(cfg.samples)]
    attempted = sum(r[0] for r in results)
    failures = [r[1] for r in results if r[1] is not None]
    report = PropertyReport(prop, target.id, attempted, cfg.samples, failures)
    return report, [r[2] for r in results]


# --- map properties ---------------------------------------------------------


def _yb_trial(m, rng):
    a1, a2, a3 = (m.sample_param(rng) for _ in range(3))
    x, y, z = (m.sample_site(rng) for _ in range(3))
    # chain (a): R12, then R13, then R23
    x1, y1 = m.apply(a1, a2, x, y)
    x1, z1 = m.apply(a1, a3, x1, z)
    y1, z1 = m.apply(a2, a3, y1, z1)
    # chain (b): R23, then R13, then R12
    y2, z2 = m.apply(a2, a3, y, z)
    x2, z2 = m.apply(a1, a3, x, z2)
    x2, y2 = m.apply(a1, a2, x2, y2)
    _expect(
        (x1, y1, z1) == (x2, y2, z2),
        {"params": [a1, a2, a3], "sites": [x, y, z]},
        (x1, y1, z1),
        (x2, y2, z2),
    )


def check_yb(target, cfg):
    """``R23 R13 R12 = R12 R13 R23`` on sampled parameters and sites."""
    m = lift(target) if isinstance(target, QuadRule) else target
    return _run("yb", m, cfg, _yb_trial)[0]


def _unitarity_trial(m, rng):
    a, b = m.sample_param(rng), m.sample_param(rng)
    x, y = m.sample_site(rng), m.sample_site(rng)
    p, q = m.apply(a, b, x, y)
    # R21_(b,a) = sigma R_(b,a) sigma
    q2, p2 = m.apply(b, a, q, p)
    back = (p2, q2)
    _expect(back == (x, y), {"params": [a, b], "sites": [x, y], "pq": [p, q]}, back, (x, y))


def check_unitarity(m, cfg):
    return _run("unitarity", m, cfg, _unitarity_trial)[0]


def _degeneracy_trial(m, rng):
    """One probe; returns True if this sample looked degenerate."""
    a, b = m.sample_param(rng), m.sample_param(rng)
    if m.arity == "pair":
        x1, x2, x2b = (m.field.random(rng) for _ in range(3))
        y = m.sample_site(rng)
        if x2 == x2b:
            x2b = x2b + 1
        p, _ = m.apply(a, b, (x1, x2), y)
        pb, _ = m.apply(a, b, (x1, x2b), y)
        x = m.sample_site(rng)
        y1, y1b, y2 = (m.field.random(rng) for _ in range(3))
        if y1 == y1b:
            y1b = y1b + 1
        _, q = m.apply(a, b, x, (y1, y2))
        _, qb = m.apply(a, b, x, (y1b, y2))
        degenerate = p == pb and q == qb
        inputs = {"params": [a, b], "x": [x1, x2, x2b], "y": y, "x2": x, "y_probe": [y1, y1b, y2]}
        lhs, rhs = (p, q), (pb, qb)
    else:
        s, t, y = m.sample_site(rng), m.sample_site(rng), m.sample_site(rng)
        if s == t:
            t = t + 1
        p, _ = m.apply(a, b, s, y)
        pb, _ = m.apply(a, b, t, y)
        degenerate = p == pb
        inputs = {"params": [a, b], "s": [s, t], "y": y}
        lhs, rhs = p, pb
    _expect(degenerate == m.expect_degenerate, inputs, lhs, rhs, degenerate=degenerate)
    return degenerate


def check_degeneracy(m, cfg):
    """Probe whether outputs ignore part of the input.

    Pair maps: vary ``x2`` with ``x1, y`` fixed and watch the first output,
    vary ``y1`` with ``y2, x`` fixed and watch the second.  Scalar maps:
    search for collisions of ``s -> f(s, y)``.  A sample fails when its
    observation contradicts the map's known classification.
    """
    report, obs = _run("degeneracy", m, cfg, _degeneracy_trial)
    seen = {o for o in obs if o is not None}
    if report.failures:
        seen |= {f["degenerate"] for f in report.failures}
    if seen == {True}:
        report.observation = "degenerate"
    elif seen == {False}:
        report.observation = "nondegenerate"
    elif seen:
        report.observation = "mixed"
    return report


def _lax_trial(m, rng, n_spectral=5):
    a, b = m.sample_param(rng), m.sample_param(rng)
    x, y = m.sample_site(rng), m.sample_site(rng)
    lams = [lax.sample_spectral(m, rng) for _ in range(n_spectral)]
    inputs = {"params": [a, b], "sites": [x, y], "spectral": lams}
    try:
        lax.refactor_check(m, x, y, a, b, lams)
    except (ProportionalityFailure, MuSquareFailure) as exc:
        kind = "proportionality" if isinstance(exc, ProportionalityFailure) else "mu_squared"
        _expect(False, inputs, exc.lhs, exc.rhs, kind=kind, spectral_point=fmt(exc.lam))


def check_lax(m, cfg):
    """``W(y;b) W(x;a) = mu W(p;a) W(q;b)`` with the ``mu^2`` identity, at 5 spectral points."""
    return _run("lax", m, cfg, _lax_trial)[0]


def _expand_trial(m, rng):
    sizes = (2,) if m.id == "kn" else (2, 3)
    for n in sizes:
        factors = [(m.sample_site(rng), m.sample_param(rng)) for _ in range(n)]
        exp = lax.lambda_expand(m, factors, rng)
        spots = lax.spot_values(m, factors, exp)
        bad = [name for name, got, want in spots if got != want]
        inputs = {"factors": [list(f) for f in factors]}
        _expect(exp.holdout_ok, inputs, "holdout mismatch", "reconstruction", n=n)
        _expect(
            not bad,
            inputs,
            [got for name, got, _ in spots if name in bad],
            [want for name, _, want in spots if name in bad],
            n=n,
            coefficients=bad,
        )


def check_expand_spot(m, cfg):
    """Recover the λ-expansion and compare the closed-form coefficients."""
    return _run("expand-spot", m, cfg, _expand_trial)[0]


# --- quad-rule properties ---------------------------------------------------


class _RuleTarget:
    """Gives a rule the sampling interface of a pair map."""

    def __init__(self, rule):
        self.rule = rule
        self.id = rule.name
        self.field = rule.field

    def sample_param(self, rng):
        return self.rule.sample_param(rng)

    def random(self, rng):
        return self.field.random(rng)


def thmbraid(rule, uG, uD, uE, vG, vD, vB, a, b, c):
    """The four functional relations on ``F1, F2`` equivalent to the braid relation.

    Returns a list of ``(lhs, rhs)`` pairs.
    """
    F1, F2 = rule.f1, rule.f2
    s = F2(vG, uD, vB, b, a)
    t = F1(uD, uE, vG, c, b)
    w = F1(uD, uE, s, c, a)
    return [
        (F1(F1(uG, uD, vB, b, a), w, vB, c, b), F1(uG, t, vB, c, a)),
        (F2(s, w, vB, c, b), F2(vG, t, vB, c, a)),
        (w, F1(t, uE, F2(vG, t, vB, c, a), b, a)),
        (F2(vD, uE, s, c, a), F2(F2(vD, uE, vG, c, b), uE, F2(vG, t, vB, c, a), b, a)),
    ]


def _site_kinds(t):
    # single-field rules are also checked on scalar sites
    return ("pair", "scalar") if t.rule.single_field else ("pair",)


def _draw_site(t, rng, kind):
    if kind == "pair":
        return (t.random(rng), t.random(rng))
    return t.random(rng)


def _involution_part(t, rng):
    a, b = t.sample_param(rng), t.sample_param(rng)
    for kind in _site_kinds(t):
        sites = tuple(_draw_site(t, rng, kind) for _ in range(3))
        once = braid_step(t.rule, sites, (a, b), 1)
        twice = braid_step(t.rule, *once, 1)
        _expect(
            twice == (sites, (a, b)),
            {"params": [a, b], "sites": sites},
            twice[0],
            sites,
            relation=f"involution-{kind}",
        )


def _involution_trial(t, rng):
    _involution_part(t, rng)


def _braid_trial(t, rng):
    _involution_part(t, rng)
    a, b, c = (t.sample_param(rng) for _ in range(3))
    vals = [t.random(rng) for _ in range(6)]
    for k, (lhs, rhs) in enumerate(thmbraid(t.rule, *vals, a, b, c), 1):
        _expect(lhs == rhs, {"params": [a, b, c], "values": vals}, lhs, rhs, relation=f"functional-{k}")
    params = (a, b, c)
    for kind in _site_kinds(t):
        sites = tuple(_draw_site(t, rng, kind) for _ in range(4))
        left, right = (sites, params), (sites, params)
        for j in (2, 1, 2):
            left = braid_step(t.rule, *left, j)
        for j in (1, 2, 1):
            right = braid_step(t.rule, *right, j)
        _expect(left == right, {"params": params, "sites": sites}, left[0], right[0], relation=f"braid-{kind}")


def check_braid(rule, cfg):
    """Involution of the three-site flip, the four functional relations and
    the braid relation on a four-site staircase (scalar sites too when
    ``F1 = F2``)."""
    return _run("braid", _RuleTarget(rule), cfg, _braid_trial)[0]


def check_involution(rule, cfg):
    """``B_(b,a) B_(a,b) = Id`` for the three-site flip."""
    return _run("involution", _RuleTarget(rule), cfg, _involution_trial)[0]


def _diagonal_trial(t, rng):
    a, b = t.sample_param(rng), t.sample_param(rng)
    d, m, e = (t.random(rng) for _ in range(3))
    _, mid, _ = three_site(t.rule, a, b)(((d, d), (m, m), (e, e)))
    _, scalar, _ = three_site(t.rule, a, b)((d, m, e))
    _expect(mid == (scalar, scalar), {"params": [a, b], "diagonal": [d, m, e]}, mid, (scalar, scalar))


def check_diagonal_reduction(rule, cfg):
    """On diagonal inputs the two-field flip stays diagonal and equals the scalar flip."""
    return _run("diagonal", _RuleTarget(rule), cfg, _diagonal_trial)[0]


# --- dispatch ---------------------------------------------------------------

MAP_CHECKS = {
    "yb": check_yb,
    "unitarity": check_unitarity,
    "degeneracy": check_degeneracy,
    "lax": check_lax,
    "expand-spot": check_expand_spot,
}

RULE_CHECKS = {
    "yb": check_yb,
    "braid": check_braid,
    "involution": check_involution,
    "diagonal": check_diagonal_reduction,
}


def available(target):
    return list(target.properties)


def run_suite(target, props, cfg):
    """Run each named property on a map or quad rule; reports in request order."""
    checks = RULE_CHECKS if isinstance(target, QuadRule) else MAP_CHECKS
    allowed = available(target)
    name = target.name if isinstance(target, QuadRule) else target.id
    for p in props:
        if p not in checks or p not in allowed:
            raise UnknownProperty(f"property {p!r} is not available for {name}; choose from {', '.join(allowed)}")
    return [checks[p](target, cfg) for p in props]

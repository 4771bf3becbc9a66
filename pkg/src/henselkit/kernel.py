"""Deciding membership of gamma = q(alpha) in S_f versus Ker theta_f.

For q over A let delta = theta_f(gamma) = q^theta(beta).  The value side
decides delta exactly (two characteristic polynomials and their Newton
polygons); the ring side then produces evidence:

* delta != 0: gamma is in S_f, certified by the finite valuation v(delta).
* delta = 0: an annihilation certificate.  Write g = chi of multiplication
  by q(x) in A[X]/(f), split g = T^k h(T) + a(T) at k = the trailing index
  of theta(g), so theta kills every coefficient of a and h's constant term
  maps to a unit-or-at-least-nonzero of K.  Each a_j gets a witness b_j from
  the base ring's minimality axiom, b = prod b_j, and N is the least
  exponent with (b a(T))^N = 0 coefficientwise.  The shipped identity

      b^N * h(y)^N * y^(N k) = 0   in A[X]/(f),  y = class of q(x),

  is then checked exactly; it exhibits gamma as annihilated by an element
  mapping outside Ker theta_f (up to nilpotents), which is exactly what makes
  Ker theta_f a minimal prime.

Certificates replay from scratch in ``verify_certificate``: k and h are
recomputed and compared, so a tampered certificate fails even when its
identity happens to hold.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HardFault
from .extension import analyze
from .stage import StageContext
from .unipoly import ModElement, UniPoly, char_poly_mod, eval_at_mod
from .values import ExtendedValue, INF, ValueVector


@dataclass(frozen=True)
class InSf:
    """gamma maps to a nonzero value; the valuation is the certificate."""

    delta_valuation: ExtendedValue

    kind = "in_sf"


@dataclass(frozen=True)
class Annihilator:
    """The data of the annihilation identity b^N h(y)^N y^(Nk) = 0."""

    b: object
    h: UniPoly
    k: int
    N: int
    identity_checked: bool
    reduced_corollary: bool

    kind = "annihilator"


KernelDecision = InSf | Annihilator

_N_CAP = 16


def decide_kernel(ctx: StageContext, q: UniPoly, n_cap: int = _N_CAP) -> KernelDecision:
    """Decide gamma = q(alpha) in S_f or produce an annihilation certificate."""
    base = ctx.base
    ring = base.ring
    if q.domain is not ring:
        raise ValueError("q must be a polynomial over the stage's base ring")
    q_theta = q.map_coeffs(base.theta, base.field)
    analysis = analyze(ctx.beta.element(q_theta))
    if analysis.value.is_finite:
        return InSf(analysis.value)

    g = char_poly_mod(ctx.f, q)
    g_theta = g.map_coeffs(base.theta, base.field)
    k = g_theta.trailing_index()
    if k is None or k < 1:
        raise HardFault("theta(chi) has a nonzero constant term although delta = 0")
    h = g.shift(-k)
    a_low = UniPoly(ring, list(g.coeffs[:k]))

    b = ring.one
    for j in range(k):
        aj = a_low.coeff(j)
        if ring.is_zero(aj):
            continue
        b = ring.mul(b, base.minimality_witness(aj))

    scaled = a_low.scale(b)
    N = None
    power = UniPoly.constant(ring, ring.one)
    for cand in range(1, n_cap + 1):
        power = power * scaled
        if power.is_zero_poly():
            N = cand
            break
    if N is None:
        raise HardFault(f"(b * a)^N did not vanish for N up to {n_cap}")

    y = ModElement(ctx.f, q)
    if not _identity_holds(ring, y, b, h, k, N):
        raise HardFault("the annihilation identity failed on certified data")
    reduced_cor = (eval_at_mod(h, y) * y).scale(b).is_zero()
    return Annihilator(b, h, k, N, True, reduced_cor)


def _identity_holds(ring, y: ModElement, b, h: UniPoly, k: int, N: int) -> bool:
    lhs = (eval_at_mod(h, y) ** N) * (y ** (N * k))
    return lhs.scale(ring.pow(b, N)).is_zero()


def verify_certificate(ctx: StageContext, q: UniPoly, decision: KernelDecision) -> bool:
    """Replay a decision from scratch; False on any mismatch, no repairs."""
    base = ctx.base
    ring = base.ring
    q_theta = q.map_coeffs(base.theta, base.field)
    analysis = analyze(ctx.beta.element(q_theta))

    if isinstance(decision, InSf):
        return analysis.value.is_finite and analysis.value == decision.delta_valuation

    if not isinstance(decision, Annihilator):
        return False
    if analysis.value.is_finite:
        return False
    if decision.k < 1 or decision.N < 1:
        return False

    g = char_poly_mod(ctx.f, q)
    g_theta = g.map_coeffs(base.theta, base.field)
    if g_theta.trailing_index() != decision.k:
        return False
    if g.shift(-decision.k) != decision.h:
        return False
    if base.valuation(decision.b).is_infinite:
        return False
    a_low = UniPoly(ring, list(g.coeffs[:decision.k]))
    power = UniPoly.constant(ring, ring.one)
    scaled = a_low.scale(decision.b)
    for _ in range(decision.N):
        power = power * scaled
    if not power.is_zero_poly():
        return False
    y = ModElement(ctx.f, q)
    return _identity_holds(ring, y, decision.b, decision.h, decision.k, decision.N)


@dataclass(frozen=True)
class MinimalityReport:
    """Sampled evidence that Ker theta_f is a minimal prime.

    Every sampled gamma either lies in S_f (finite valuation, so outside the
    kernel) or is annihilated, up to nilpotents, by an element whose theta
    image is nonzero; a prime strictly inside Ker theta_f would contradict
    any one of the annihilation certificates.
    """

    total: int
    in_sf: int
    annihilated: int
    all_verified: bool
    max_N: int


def minimality_report(ctx: StageContext, qs) -> MinimalityReport:
    total = in_sf = annihilated = 0
    all_verified = True
    max_n = 0
    for q in qs:
        decision = decide_kernel(ctx, q)
        total += 1
        if isinstance(decision, InSf):
            in_sf += 1
        else:
            annihilated += 1
            max_n = max(max_n, decision.N)
        if not verify_certificate(ctx, q, decision):
            all_verified = False
    return MinimalityReport(total, in_sf, annihilated, all_verified, max_n)


def _value_json(v: ExtendedValue):
    if v.is_infinite:
        return "inf"
    return [str(c) for c in v.vector.coords]


def _value_from_json(data) -> ExtendedValue:
    if data == "inf":
        return INF
    return ExtendedValue(ValueVector(tuple(Fraction(c) for c in data)))


def decision_to_dict(ctx: StageContext, decision: KernelDecision) -> dict:
    ring = ctx.base.ring
    if isinstance(decision, InSf):
        return {"decision": "in_sf", "delta_valuation": _value_json(decision.delta_valuation)}
    return {
        "decision": "annihilator",
        "b": ring.to_text(decision.b),
        "h": decision.h.to_text("T"),
        "k": decision.k,
        "N": decision.N,
        "identity_checked": decision.identity_checked,
        "reduced_corollary": decision.reduced_corollary,
    }


def decision_from_dict(ctx: StageContext, data: dict) -> KernelDecision:
    from .parsing import eval_in, parse_poly

    kind = data.get("decision")
    if kind == "in_sf":
        return InSf(_value_from_json(data["delta_valuation"]))
    if kind == "annihilator":
        ring = ctx.base.ring
        b = eval_in(ring, str(data["b"]))
        h = parse_poly(ring, str(data["h"]), var="T")
        return Annihilator(b, h, int(data["k"]), int(data["N"]),
                           bool(data.get("identity_checked", False)),
                           bool(data.get("reduced_corollary", False)))
    raise ValueError(f"unknown decision kind {kind!r}")

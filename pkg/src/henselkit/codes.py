"""Hensel codes, Nagata polynomials, special polynomials, and the conversions
between them.

A Hensel code (f, a) asserts v(f(a)) > 0 and v(f'(a)) = 0 with everything
integral; its zero is the unique root attached to a by Hensel lifting.  A
Nagata polynomial is the monic a = 0 case.  A special polynomial
t = X^d - X^(d-1) + t_(d-2) X^(d-2) + ... + t_0 with all t_i of positive
valuation carries its code at the point 1; its "special zero" is the root
near 1.

``nagata_from_slope`` turns an isolated Newton polygon slope of p into a code
(q, 1); ``specialize`` normalizes such a q into a special polynomial through
the chain q -> r = q(1+X) -> s = r(-r0 X / r1)/r0 -> t = reversal(s), tracking
the substitutions as a Mobius map so the root of q is recovered from the
special zero; ``special_to_nagata`` shifts t back to a Nagata polynomial
t(X+1).  All checks run both over a valued field (valuation conditions) and
over a local ring (unit/non-unit dichotomy).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import HardFault
from .newton import isolated_slopes
from .unipoly import UniPoly
from .valued import MinimalValuedRing, ValuedField
from .values import ExtendedValue


@dataclass(frozen=True)
class CheckReport:
    kind: str
    ok: bool
    details: tuple[str, ...]

    def __str__(self):
        head = f"{self.kind}: {'ok' if self.ok else 'FAILED'}"
        return head if not self.details else head + "\n  " + "\n  ".join(self.details)


def _ring_of(over):
    return over.ring if isinstance(over, MinimalValuedRing) else over


def _field_mode(over) -> bool:
    return isinstance(over, ValuedField)


def _coeffs_integral(f: UniPoly, over, details: list[str]) -> bool:
    if _field_mode(over):
        bad = [i for i, c in enumerate(f.coeffs) if not over.valuation(c).is_nonnegative()]
        if bad:
            details.append(f"coefficients of negative valuation at degrees {bad}")
            return False
    return True


def _positive(over, x, what: str, details: list[str]) -> bool:
    if _field_mode(over):
        v = over.valuation(x)
        if not v.is_positive():
            details.append(f"{what} has valuation {v}, expected > 0")
            return False
        details.append(f"{what}: valuation {v}")
        return True
    ring = _ring_of(over)
    if ring.is_unit(x):
        details.append(f"{what} is a unit, expected in the maximal ideal")
        return False
    details.append(f"{what}: non-unit")
    return True


def _unit(over, x, what: str, details: list[str]) -> bool:
    if _field_mode(over):
        v = over.valuation(x)
        if not v.is_zero():
            details.append(f"{what} has valuation {v}, expected 0")
            return False
        details.append(f"{what}: valuation {v}")
        return True
    ring = _ring_of(over)
    if not ring.is_unit(x):
        details.append(f"{what} is not a unit")
        return False
    details.append(f"{what}: unit")
    return True


def check_code(f: UniPoly, a, over) -> CheckReport:
    details: list[str] = []
    ok = _coeffs_integral(f, over, details)
    if _field_mode(over) and not over.valuation(a).is_nonnegative():
        details.append("the point has negative valuation")
        ok = False
    ok = _positive(over, f.evaluate(a), "f(a)", details) and ok
    ok = _unit(over, f.derivative().evaluate(a), "f'(a)", details) and ok
    return CheckReport("code", ok, tuple(details))


def check_nagata(f: UniPoly, over) -> CheckReport:
    details: list[str] = []
    ok = True
    if not f.is_monic():
        details.append("not monic")
        ok = False
    ok = _coeffs_integral(f, over, details) and ok
    if f.degree() < 1:
        return CheckReport("nagata", False, tuple(details) + ("degree must be >= 1",))
    ok = _positive(over, f.coeff(0), "f(0)", details) and ok
    ok = _unit(over, f.coeff(1), "f'(0)", details) and ok
    return CheckReport("nagata", ok, tuple(details))


def check_special(t: UniPoly, over) -> CheckReport:
    details: list[str] = []
    ok = True
    d = t.degree()
    if d < 1:
        return CheckReport("special", False, ("degree must be >= 1",))
    dom = t.domain
    if not t.is_monic():
        details.append("not monic")
        ok = False
    if d >= 1 and not dom.eq(t.coeff(d - 1), dom.neg(dom.one)):
        details.append(f"coefficient of X^{d-1} must be -1")
        ok = False
    ok = _coeffs_integral(t, over, details) and ok
    for i in range(d - 1):
        if not _positive(over, t.coeff(i), f"t_{i}", details):
            ok = False
    return CheckReport("special", ok, tuple(details))


def check(kind: str, f: UniPoly, over, point=None) -> CheckReport:
    if kind == "code":
        if point is None:
            raise ValueError("a code check needs the point a")
        return check_code(f, point, over)
    if kind == "nagata":
        return check_nagata(f, over)
    if kind == "special":
        return check_special(f, over)
    raise ValueError(f"unknown check kind {kind!r}")


@dataclass(frozen=True)
class NagataPoly:
    f: UniPoly

    @property
    def degree(self) -> int:
        return self.f.degree()


@dataclass(frozen=True)
class SpecialPoly:
    t: UniPoly


def nagata(f: UniPoly, over) -> NagataPoly:
    report = check_nagata(f, over)
    if not report.ok:
        raise ValueError(str(report))
    return NagataPoly(f)


def special(t: UniPoly, over) -> SpecialPoly:
    report = check_special(t, over)
    if not report.ok:
        raise ValueError(str(report))
    return SpecialPoly(t)


@dataclass(frozen=True)
class SlopeConversion:
    """q with code (q, 1); the root of p at the slope is alpha_factor * (root of q near 1)."""

    p: UniPoly
    k: int
    q: UniPoly
    alpha_factor: object
    alpha_valuation: ExtendedValue


def nagata_from_slope(p: UniPoly, k: int, field: ValuedField) -> SlopeConversion:
    """Convert the isolated slope of p at abscissa k into a Hensel code at 1.

    q(Y) = (p_{k+1}^k / p_k^{k+1}) * p(-(p_k / p_{k+1}) Y); the point-1 code
    condition on q is guaranteed by the isolation of the slope and verified.
    """
    bad = [i for i, c in enumerate(p.coeffs) if not field.valuation(c).is_nonnegative()]
    if bad:
        raise ValueError(f"p has coefficients of negative valuation at degrees {bad}")
    if k not in isolated_slopes(p, field):
        raise ValueError(f"k = {k} is not an isolated slope of p")
    pk, pk1 = p.coeff(k), p.coeff(k + 1)
    ratio = field.neg(field.div(pk, pk1))
    scale = field.div(field.pow(pk1, k), field.pow(pk, k + 1))
    q = p.compose(UniPoly(field, [field.zero, ratio])).scale(scale)
    report = check_code(q, field.one, field)
    if not report.ok:
        raise HardFault("isolated slope did not produce a code at 1:\n" + str(report))
    v_alpha = field.valuation(pk) + ExtendedValue(-(field.valuation(pk1).vector))
    return SlopeConversion(p, k, q, ratio, v_alpha)


@dataclass(frozen=True)
class Specialization:
    """The chain q -> r -> s -> t with the root bookkeeping.

    When r0 = 0 the root of q is exactly 1 (exact_root is set and s, t, mobius
    are absent).  Otherwise the root nu of q near 1 is recovered from the
    special zero beta of t as nu = (a*beta + b) / (c*beta + d) with the mobius
    constants (a, b, c, d) integral and a*d - b*c != 0.
    """

    q: UniPoly
    r: UniPoly
    s: UniPoly | None
    t: SpecialPoly | None
    exact_root: bool
    mobius: tuple | None


def specialize(q: UniPoly, field: ValuedField) -> Specialization:
    report = check_code(q, field.one, field)
    if not report.ok:
        raise ValueError("(q, 1) is not a code:\n" + str(report))
    one = field.one
    r = q.compose(UniPoly(field, [one, one]))
    r0, r1 = r.coeff(0), r.coeff(1)
    if field.is_zero(r0):
        return Specialization(q, r, None, None, True, None)
    inner = UniPoly(field, [field.zero, field.neg(field.div(r0, r1))])
    s = r.compose(inner).scale(field.inv(r0))
    if not field.eq(s.coeff(0), one) or not field.eq(s.coeff(1), field.neg(one)):
        raise HardFault("normalization failed: s does not start 1 - X + ...")
    d = s.degree()
    if d != q.degree():
        raise HardFault("degree dropped during specialization")
    t = s.reversed_poly(d)
    t_report = check_special(t, field)
    if not t_report.ok:
        raise HardFault("specialization did not produce a special polynomial:\n" + str(t_report))
    mobius = (r1, field.neg(r0), r1, field.zero)
    if field.is_zero(field.sub(field.mul(mobius[0], mobius[3]), field.mul(mobius[1], mobius[2]))):
        raise HardFault("degenerate mobius map")
    return Specialization(q, r, s, SpecialPoly(t), False, mobius)


def special_to_nagata(t: SpecialPoly | UniPoly, over) -> NagataPoly:
    """f = t(X + 1); the special zero of t corresponds to the Hensel zero of f."""
    tp = t.t if isinstance(t, SpecialPoly) else t
    report = check_special(tp, over)
    if not report.ok:
        raise ValueError(str(report))
    dom = tp.domain
    f = tp.compose(UniPoly(dom, [dom.one, dom.one]))
    n_report = check_nagata(f, over)
    if not n_report.ok:
        raise HardFault("shifted special polynomial is not Nagata:\n" + str(n_report))
    return NagataPoly(f)

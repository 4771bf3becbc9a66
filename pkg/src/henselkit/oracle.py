"""Independent brute-force oracles over truncated completions.

Nothing here shares code with the certified route: arithmetic is plain
integers mod p^N (or length-N coefficient tuples for power series), roots are
found by digit-by-digit enumeration, and valuations are read off directly.
The point is to have a second, dumb opinion to test the exact machinery
against, so keep it dumb.

Everything is desk scale: degrees <= 8, precision <= 64.  The default
precision is 24, overridable through the HENSELKIT_ORACLE_PRECISION
environment variable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .codes import check_nagata
from .errors import HardFault
from .extension import BetaContext
from .newton import ValuationMultiset
from .unipoly import UniPoly
from .valued import MinimalValuedRing, PadicRationals, RatFunc, RationalFunctionField, padic_order
from .values import INF, ExtendedValue
from .rings import QQ


def default_precision() -> int:
    raw = os.environ.get("HENSELKIT_ORACLE_PRECISION", "24")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"HENSELKIT_ORACLE_PRECISION must be an integer, got {raw!r}")
    if not 4 <= n <= 64:
        raise ValueError("oracle precision must be between 4 and 64")
    return n


class PadicCompletion:
    """Z/p^N as a stand-in for Z_p at absolute precision N."""

    def __init__(self, p: int, precision: int):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.precision = precision
        self.modulus = p ** precision
        self.zero = 0
        self.one = 1

    def embed(self, x) -> int:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ValueError("cannot embed: denominator divisible by p")
        return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_zero(self, a) -> bool:
        return a % self.modulus == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.modulus == 0

    def valuation(self, a) -> int | None:
        """Order of p in a, or None when a = 0 at this precision."""
        a %= self.modulus
        if a == 0:
            return None
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def unit_inv(self, a):
        if self.valuation(a) != 0:
            raise ZeroDivisionError("inverse of a non-unit in Z/p^N")
        return pow(a, -1, self.modulus)

    def truncate(self, a, k: int):
        return a % (self.p ** k)

    def descale(self, a, m: int, field):
        """The field element a / p^m."""
        return Fraction(a, self.p ** m)


class SeriesCompletion:
    """Q[[t]] mod t^N: length-N tuples of Fractions."""

    def __init__(self, precision: int):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        self.precision = precision
        self.zero = (Fraction(0),) * precision
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (precision - 1))

    def embed(self, x) -> tuple:
        if isinstance(x, (int, Fraction)):
            num, den = [Fraction(x)], [Fraction(1)]
        elif isinstance(x, RatFunc):
            num = [Fraction(c) for c in x.num.coeffs]
            den = [Fraction(c) for c in x.den.coeffs]
        else:
            raise ValueError(f"cannot embed {type(x).__name__} in a series completion")
        if not den or den[0] == 0:
            raise ValueError("cannot embed: denominator vanishes at 0")
        N = self.precision
        num = (num + [Fraction(0)] * N)[:N]
        den = (den + [Fraction(0)] * N)[:N]
        out = [Fraction(0)] * N
        for k in range(N):
            s = num[k]
            for j in range(1, k + 1):
                s -= den[j] * out[k - j]
            out[k] = s / den[0]
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        N = self.precision
        out = [Fraction(0)] * N
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(N - i):
                if b[j] != 0:
                    out[i + j] += x * b[j]
        return tuple(out)

    def is_zero(self, a) -> bool:
        return all(c == 0 for c in a)

    def eq(self, a, b) -> bool:
        return all(x == y for x, y in zip(a, b))

    def valuation(self, a) -> int | None:
        for i, c in enumerate(a):
            if c != 0:
                return i
        return None

    def unit_inv(self, a):
        if self.valuation(a) != 0:
            raise ZeroDivisionError("inverse of a non-unit series")
        N = self.precision
        out = [Fraction(0)] * N
        out[0] = 1 / a[0]
        for k in range(1, N):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += a[j] * out[k - j]
            out[k] = -s / a[0]
        return tuple(out)

    def truncate(self, a, k: int):
        return tuple(c if i < k else Fraction(0) for i, c in enumerate(a))

    def descale(self, a, m: int, field: RationalFunctionField):
        """The field element a / t^m."""
        num = UniPoly(QQ, list(a))
        den = UniPoly(QQ, [Fraction(0)] * m + [Fraction(1)])
        return field.element(num, den)


def poly_eval(comp, coeffs, x):
    """Horner evaluation of embedded coefficients (low first) at x."""
    acc = comp.zero
    for c in reversed(coeffs):
        acc = comp.add(comp.mul(acc, x), c)
    return acc


def lift_hensel_zero(f: UniPoly, comp):
    """Newton-iterate the positive-valuation zero of f inside the completion.

    Requires the embedded f to satisfy v(f(0)) > 0 and v(f'(0)) = 0; the
    iteration starts at 0 and the derivative stays a unit throughout.
    """
    coeffs = [comp.embed(c) for c in f.coeffs]
    dcoeffs = [coeffs[i] for i in range(1, len(coeffs))]
    for i in range(1, len(dcoeffs)):
        dcoeffs[i] = comp.mul(dcoeffs[i], comp.embed(Fraction(i + 1)))
    v0 = comp.valuation(poly_eval(comp, coeffs, comp.zero))
    if v0 == 0:
        raise ValueError("f(0) is a unit: no Hensel zero at 0")
    if comp.valuation(poly_eval(comp, dcoeffs, comp.zero)) != 0:
        raise ValueError("f'(0) is not a unit")
    x = comp.zero
    for _ in range(64):
        fx = poly_eval(comp, coeffs, x)
        if comp.is_zero(fx):
            return x
        step = comp.mul(fx, comp.unit_inv(poly_eval(comp, dcoeffs, x)))
        x = comp.sub(x, step)
    raise HardFault("Newton iteration did not converge at this precision")


@dataclass(frozen=True)
class RootReport:
    """Digit-tree enumeration of Z_p roots of a monic integral polynomial.

    valuations collects inf per trailing zero coefficient plus the valuation
    of every resolved root class; resolved holds (residue, level) pairs, each
    certifying exactly one Z_p root congruent to residue mod p^level;
    unresolved counts branches still alive at full precision (root clusters
    the precision cannot split).
    """

    valuations: ValuationMultiset
    resolved: tuple[tuple[int, int], ...]
    unresolved: int
    precision: int


def exhaustive_root_valuations(p_poly: UniPoly, prime: int, precision: int | None = None) -> RootReport:
    """Enumerate Z_p roots digit by digit, branch by branch.

    A branch (r mod p^k) is resolved once t = v(f'(r)) satisfies t < k and
    v(f(r)) >= k + t <= precision: then Hensel guarantees exactly one root in
    the class, and its valuation is readable from r.  Branches never resolved
    by full precision are reported, not guessed.
    """
    if precision is None:
        precision = default_precision()
    if not 4 <= precision <= 64:
        raise ValueError("precision must be between 4 and 64")
    if prime < 2 or prime > 13:
        raise ValueError("prime out of the supported range")
    if p_poly.degree() > 8:
        raise ValueError("degree out of the supported range (<= 8)")
    if not p_poly.is_monic():
        raise ValueError("root enumeration requires a monic polynomial")
    for c in p_poly.coeffs:
        o = padic_order(Fraction(c), prime)
        if o is not None and o < 0:
            raise ValueError("coefficients must be p-integral")

    k0 = p_poly.trailing_index()
    values: list[ExtendedValue] = [INF] * k0
    pbar = p_poly.shift(-k0)
    if pbar.degree() == 0:
        return RootReport(ValuationMultiset.of(values), (), 0, precision)

    const_order = padic_order(Fraction(pbar.coeff(0)), prime)
    if const_order is not None and const_order > precision // 2:
        raise ValueError("precision too small for the constant term's valuation")

    comp = PadicCompletion(prime, precision)
    coeffs = [comp.embed(c) for c in pbar.coeffs]
    dcoeffs = [comp.mul(coeffs[i], comp.embed(Fraction(i))) for i in range(1, len(coeffs))]

    cap = 4 * pbar.degree() + 8
    resolved: list[tuple[int, int]] = []
    frontier = [r for r in range(prime)
                if _order_at_least(comp, poly_eval(comp, coeffs, r), 1)]
    level = 1
    while frontier and level < precision:
        if len(frontier) > cap:
            raise HardFault("root cluster too wide for the oracle precision")
        nxt = []
        for r in frontier:
            fv = comp.valuation(poly_eval(comp, coeffs, r))
            t = comp.valuation(poly_eval(comp, dcoeffs, r))
            if (t is not None and t < level and level + t <= precision
                    and (fv is None or fv >= level + t) and r != 0):
                resolved.append((r, level))
                continue
            step = prime ** level
            for i in range(prime):
                child = r + i * step
                cfv = comp.valuation(poly_eval(comp, coeffs, child))
                if cfv is None or cfv >= level + 1:
                    nxt.append(child)
        frontier = nxt
        level += 1

    for r, _ in resolved:
        values.append(ExtendedValue.finite(padic_order(Fraction(r), prime)))
    return RootReport(ValuationMultiset.of(values), tuple(resolved), len(frontier), precision)


def _order_at_least(comp, a, k: int) -> bool:
    v = comp.valuation(a)
    return v is None or v >= k


def _has_rational_root(f: UniPoly) -> bool:
    """Exact rational root test for a polynomial over Q (Fractions)."""
    from math import gcd

    lcm = 1
    for c in f.coeffs:
        c = Fraction(c)
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(Fraction(c) * lcm) for c in f.coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints or len(ints) == 1:
        return False
    if ints[0] == 0:
        return True
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for num in divisors(a0):
        for den in divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    return True
    return False


def _certify_irreducible(f1: UniPoly, field) -> None:
    """Raise unless f1 is certifiably irreducible over the base field."""
    d = f1.degree()
    if d == 1:
        return
    if isinstance(field, PadicRationals):
        if d in (2, 3):
            rational = _has_rational_root(UniPoly(QQ, [Fraction(c) for c in f1.coeffs]))
            if rational:
                raise ValueError("f1 has a rational root, hence is reducible")
            return
        raise ValueError("cannot certify irreducibility beyond degree 3 here")
    if isinstance(field, RationalFunctionField):
        if d == 2:
            a, b = f1.coeff(1), f1.coeff(0)
            disc = a * a - 4 * b
            if disc.is_zero():
                raise ValueError("zero discriminant")
            num_deg = disc.num.degree() - disc.den.degree()
            num_ord = disc.num.trailing_index() - disc.den.trailing_index()
            if num_deg % 2 == 1 or num_ord % 2 == 1:
                return
            raise ValueError("cannot certify irreducibility of this quadratic")
        raise ValueError("cannot certify irreducibility beyond degree 2 here")
    raise ValueError("no irreducibility certificate for this field")


@dataclass(frozen=True)
class GroundTruth:
    """f = f1 * f2 with f1 irreducible Nagata: beta's minimal polynomial is f1.

    expected_is_zero is plain divisibility by f1 in K[X]; for linear f1 the
    exact root is known and expected_valuation gives the full answer too.
    """

    ctx: BetaContext
    f1: UniPoly
    f2: UniPoly

    def expected_is_zero(self, q: UniPoly) -> bool:
        if q.is_zero_poly():
            return True
        return self.f1.divides(q)

    def exact_root(self):
        if self.f1.degree() != 1:
            return None
        return self.ctx.field.neg(self.f1.coeff(0))

    def expected_valuation(self, q: UniPoly) -> ExtendedValue | None:
        root = self.exact_root()
        if root is None:
            return None
        return self.ctx.field.valuation(q.evaluate(root))


def build_ground_truth_context(mvr: MinimalValuedRing, f1: UniPoly, f2: UniPoly) -> GroundTruth:
    """Assemble f = f1 * f2 with independently known answers about beta.

    f1 must be monic Nagata and certifiably irreducible over K; f2 must be
    monic, integral, with unit constant term (so all its roots are units and
    beta remains the unique positive-valuation root of f).
    """
    field = mvr.field
    report = check_nagata(f1, field)
    if not report.ok:
        raise ValueError("f1 is not Nagata:\n" + str(report))
    _certify_irreducible(f1, field)
    if not f2.is_monic():
        raise ValueError("f2 must be monic")
    for c in f2.coeffs:
        if not field.valuation(c).is_nonnegative():
            raise ValueError("f2 must be integral")
    if not field.valuation(f2.coeff(0)).is_zero():
        raise ValueError("f2(0) must be a unit")
    f = f1 * f2
    ctx = BetaContext(field, f)
    return GroundTruth(ctx, f1, f2)

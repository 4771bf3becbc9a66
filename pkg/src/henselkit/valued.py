"""Valued fields and the local rings they dominate.

Three base field instances:

* ``PadicRationals(p)``: Q with the p-adic valuation, residue field F_p.
* ``RationalFunctionField(var)``: Q(var) with order-at-0, residue field Q.
* ``MonomialFunctionField()``: Q(u, w) with the rank-2 monomial valuation
  v(u) = [1, 0], v(w) = [0, 1], values in Z^2 ordered lexicographically.

A ``MinimalValuedRing`` packages a local ring A together with a homomorphism
theta into one of those fields and the pulled-back valuation v = v_K . theta.
``minimality_witness`` realizes the defining extra axiom: when v(a) = inf it
produces b with v(b) < inf and b*a = 0 (reduced case) or b*a nilpotent
(non-reduced case), and verifies that property before returning.

Five named presets: "padic" (A = Z localized at p), "tadic"
(A = rational functions regular at 0), "monomial" (A = Q[u,w] localized at
the origin), "uwzero" (the uw = 0 quotient, reduced but not a domain, theta
kills u), "usquare" (the u^2 = uw = 0 quotient, non-reduced).
"""
from __future__ import annotations

from fractions import Fraction

from .errors import HardFault
from .rings import QQ, Domain, FieldDomain, MultiPoly, RING_PLAIN, RING_USQ, RING_UW
from .unipoly import UniPoly, poly_gcd_field
from .values import INF, ExtendedValue, ValueVector


def padic_order(x: Fraction, p: int) -> int | None:
    """Exponent of p in x, or None for x = 0."""
    x = Fraction(x)
    if x == 0:
        return None
    n, d = x.numerator, x.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class ValuedField(FieldDomain):
    rank = 1
    config: dict = {}

    def valuation(self, x) -> ExtendedValue:
        raise NotImplementedError

    def residue(self, x):
        raise NotImplementedError

    def is_in_v(self, x) -> bool:
        return self.valuation(x).is_nonnegative()


class PadicRationals(ValuedField):
    """Q under the p-adic valuation; elements are Fractions."""

    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p
        self.config = {"instance": "padic", "p": p}

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def valuation(self, x) -> ExtendedValue:
        v = padic_order(x, self.p)
        return INF if v is None else ExtendedValue.finite(v)

    def residue(self, x) -> int:
        """Image in F_p (as an int in 0..p-1); requires v(x) = 0."""
        if not self.valuation(x).is_zero():
            raise ValueError("residue requires valuation 0")
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def __repr__(self):
        return f"PadicRationals({self.p})"


class RatFunc:
    """num/den of univariate rational polynomials, gcd-reduced, den monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "RationalFunctionField", num: UniPoly, den: UniPoly):
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero_poly()

    def order(self) -> int | None:
        """Order at 0: trailing degree of num minus trailing degree of den."""
        tn = self.num.trailing_index()
        if tn is None:
            return None
        return tn - self.den.trailing_index()

    def _coerced(self, other):
        if isinstance(other, RatFunc):
            if other.field.var != self.field.var:
                raise ValueError("mixed function-field variables")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.field.element(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.field.element(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero_poly()

    def __hash__(self):
        raise TypeError("RatFunc is unhashable")

    def __str__(self):
        var = self.field.var
        if self.den == UniPoly.constant(QQ, Fraction(1)):
            return self.num.to_text(var)
        num, den = self.num.to_text(var), self.den.to_text(var)
        return f"({num})/({den})"

    def __repr__(self):
        return f"RatFunc({self})"


class RationalFunctionField(ValuedField):
    """Q(var) with the order-at-0 valuation; residue field Q."""

    def __init__(self, var: str):
        self.var = var
        self.zero = RatFunc(self, UniPoly(QQ, []), UniPoly.constant(QQ, Fraction(1)))
        self.one = RatFunc(self, UniPoly.constant(QQ, Fraction(1)), UniPoly.constant(QQ, Fraction(1)))
        self.gen = RatFunc(self, UniPoly.from_ints(QQ, [0, 1]), UniPoly.constant(QQ, Fraction(1)))
        self.var_names = {var: self.gen}
        self.config = {"instance": "tadic"} if var == "t" else {"instance": f"order_at_{var}"}

    def element(self, num: UniPoly, den: UniPoly | None = None) -> RatFunc:
        if den is None:
            den = UniPoly.constant(QQ, Fraction(1))
        if den.is_zero_poly():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero_poly():
            return RatFunc(self, UniPoly(QQ, []), UniPoly.constant(QQ, Fraction(1)))
        g = poly_gcd_field(num, den)
        if g.degree() > 0:
            num, _ = num.divmod_field(g)
            den, _ = den.divmod_field(g)
        lead = den.leading()
        if lead != 1:
            num = num.scale(Fraction(1) / lead)
            den = den.scale(Fraction(1) / lead)
        return RatFunc(self, num, den)

    def from_fraction(self, q) -> RatFunc:
        return RatFunc(self, UniPoly.constant(QQ, Fraction(q)), UniPoly.constant(QQ, Fraction(1)))

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def is_zero(self, a: RatFunc) -> bool:
        return a.is_zero()

    def inv(self, a: RatFunc) -> RatFunc:
        if a.is_zero():
            raise ZeroDivisionError("inverse of 0")
        return self.element(a.den, a.num)

    def valuation(self, x: RatFunc) -> ExtendedValue:
        o = x.order()
        return INF if o is None else ExtendedValue.finite(o)

    def residue(self, x: RatFunc) -> Fraction:
        if not self.valuation(x).is_zero():
            raise ValueError("residue requires valuation 0")
        return x.num.coeff(0) / x.den.coeff(0)

    def to_text(self, a: RatFunc) -> str:
        return str(a)

    def __repr__(self):
        return f"RationalFunctionField({self.var})"


class MFrac:
    """num/den of two-variable polynomials over Q; den != 0.

    Not reduced to lowest terms (no multivariate gcd); the normalization
    cancels the common monomial factor and makes den's minimal-lex
    coefficient 1, which keeps printing deterministic.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "MonomialFunctionField", num: MultiPoly, den: MultiPoly):
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerced(self, other):
        if isinstance(other, MFrac):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        if isinstance(other, MultiPoly):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.field.element(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return MFrac(self.field, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.field.element(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("MFrac is unhashable")

    def __str__(self):
        if self.den == MultiPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"MFrac({self})"


def _monomial_content(p: MultiPoly) -> tuple[int, int]:
    return (min(i for i, _ in p.terms), min(j for _, j in p.terms))


def _divide_monomial(p: MultiPoly, e: tuple[int, int]) -> MultiPoly:
    if e == (0, 0):
        return p
    return MultiPoly({(i - e[0], j - e[1]): c for (i, j), c in p.terms.items()})


class MonomialFunctionField(ValuedField):
    """Q(u, w) with v(u^i w^j) = [i, j], Z^2 lexicographic."""

    rank = 2

    def __init__(self):
        self.zero = MFrac(self, MultiPoly(), MultiPoly.const(1))
        self.one = MFrac(self, MultiPoly.const(1), MultiPoly.const(1))
        self.u = MFrac(self, MultiPoly.monomial(1, 0), MultiPoly.const(1))
        self.w = MFrac(self, MultiPoly.monomial(0, 1), MultiPoly.const(1))
        self.var_names = {"u": self.u, "w": self.w}
        self.config = {"instance": "monomial"}

    def element(self, num: MultiPoly, den: MultiPoly | None = None) -> MFrac:
        if den is None:
            den = MultiPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return MFrac(self, MultiPoly(), MultiPoly.const(1))
        cn = _monomial_content(num)
        cd = _monomial_content(den)
        common = (min(cn[0], cd[0]), min(cn[1], cd[1]))
        num = _divide_monomial(num, common)
        den = _divide_monomial(den, common)
        c = den.terms[min(den.terms)]
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        return MFrac(self, num, den)

    def from_fraction(self, q) -> MFrac:
        return self.element(MultiPoly.const(Fraction(q)))

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def is_zero(self, a: MFrac) -> bool:
        return a.is_zero()

    def inv(self, a: MFrac) -> MFrac:
        if a.is_zero():
            raise ZeroDivisionError("inverse of 0")
        return self.element(a.den, a.num)

    def valuation(self, x: MFrac) -> ExtendedValue:
        if x.is_zero():
            return INF
        en = x.num.min_lex_exponent()
        ed = x.den.min_lex_exponent()
        return ExtendedValue(ValueVector((Fraction(en[0] - ed[0]), Fraction(en[1] - ed[1]))))

    def residue(self, x: MFrac) -> Fraction:
        # at valuation 0 the minimal lex monomials of num and den carry the
        # same exponent pair, so the residue is their coefficient ratio
        if not self.valuation(x).is_zero():
            raise ValueError("residue requires valuation 0")
        en = x.num.min_lex_exponent()
        ed = x.den.min_lex_exponent()
        if en != ed:
            raise HardFault("valuation-0 monomial fraction with mismatched minimal monomials")
        return x.num.terms[en] / x.den.terms[ed]

    def to_text(self, a: MFrac) -> str:
        return str(a)

    def __repr__(self):
        return "MonomialFunctionField()"


class PLocalIntegers(Domain):
    """Z localized at p: Fractions with nonnegative p-adic valuation."""

    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, p: int):
        self.p = p

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def contains(self, a) -> bool:
        v = padic_order(a, self.p)
        return v is None or v >= 0

    def is_unit(self, a) -> bool:
        return padic_order(a, self.p) == 0

    def try_invert(self, a):
        if not self.is_unit(a):
            return None
        return 1 / Fraction(a)

    def residue(self, a) -> int:
        a = Fraction(a)
        return a.numerator * pow(a.denominator, -1, self.p) % self.p

    def residue_inv(self, r: int) -> int:
        return pow(r, -1, self.p)

    def residue_div(self, r1: int, r2: int) -> int:
        return r1 * pow(r2, -1, self.p) % self.p

    def to_text(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"PLocalIntegers({self.p})"


class OrderLocalRing(Domain):
    """The valuation ring of a rank-1 function field (elements regular at 0)."""

    def __init__(self, field: RationalFunctionField):
        self.field = field
        self.zero = field.zero
        self.one = field.one
        self.var_names = field.var_names

    def from_int(self, n):
        return self.field.from_int(n)

    def is_zero(self, a: RatFunc) -> bool:
        return a.is_zero()

    def contains(self, a: RatFunc) -> bool:
        o = a.order()
        return o is None or o >= 0

    def is_unit(self, a: RatFunc) -> bool:
        return a.order() == 0

    def try_invert(self, a: RatFunc):
        if not self.is_unit(a):
            return None
        return self.field.inv(a)

    def residue(self, a: RatFunc) -> Fraction:
        return a.num.coeff(0) / a.den.coeff(0)

    def residue_inv(self, r: Fraction) -> Fraction:
        return 1 / Fraction(r)

    def residue_div(self, r1, r2) -> Fraction:
        return Fraction(r1) / Fraction(r2)

    def to_text(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"OrderLocalRing({self.field.var})"


def _kill_u(p: MultiPoly) -> UniPoly:
    """Substitute u = 0, leaving a polynomial in w over Q."""
    coeffs: dict[int, Fraction] = {}
    for (i, j), c in p.terms.items():
        if i == 0:
            coeffs[j] = coeffs.get(j, Fraction(0)) + c
    if not coeffs:
        return UniPoly(QQ, [])
    out = [Fraction(0)] * (max(coeffs) + 1)
    for j, c in coeffs.items():
        out[j] = c
    return UniPoly(QQ, out)


class MinimalValuedRing:
    """A local ring A with theta: A -> K and the pulled-back valuation."""

    def __init__(self, name, ring, field, theta_fn, witness_fn, reduced, config):
        self.name = name
        self.ring = ring
        self.field = field
        self._theta = theta_fn
        self._witness = witness_fn
        self.reduced = reduced
        self.config = config

    def theta(self, a):
        return self._theta(a)

    def valuation(self, a) -> ExtendedValue:
        return self.field.valuation(self._theta(a))

    def minimality_witness(self, a):
        """b with v(b) finite and b*a = 0 (reduced) / nilpotent (non-reduced).

        Only meaningful when v(a) = inf; the returned witness is verified and
        a broken contract raises HardFault.
        """
        if not self.valuation(a).is_infinite:
            raise ValueError("witness requested for an element of finite valuation")
        b = self._witness(self, a)
        if self.valuation(b).is_infinite:
            raise HardFault(f"{self.name}: witness has infinite valuation")
        prod = self.ring.mul(b, a)
        if self.reduced:
            if not self.ring.is_zero(prod):
                raise HardFault(f"{self.name}: witness does not annihilate")
        else:
            if not _is_nilpotent(self.ring, prod):
                raise HardFault(f"{self.name}: witness product is not nilpotent")
        return b

    def __repr__(self):
        return f"MinimalValuedRing({self.name})"


_NILPOTENCY_CAP = 16


def _is_nilpotent(ring, a, cap: int = _NILPOTENCY_CAP) -> bool:
    idx = getattr(ring, "nilpotency_index", None)
    if idx is not None:
        return idx(a) is not None
    p = a
    for _ in range(cap):
        if ring.is_zero(p):
            return True
        p = ring.mul(p, a)
    return ring.is_zero(p)


def _witness_injective(mvr: MinimalValuedRing, a):
    if not mvr.ring.is_zero(a):
        raise HardFault(f"{mvr.name}: theta killed a nonzero element of a domain preset")
    return mvr.ring.one


def _witness_w(mvr: MinimalValuedRing, a):
    return mvr.ring.w


def _witness_one(mvr: MinimalValuedRing, a):
    return mvr.ring.one


def preset(name: str, p: int | None = None) -> MinimalValuedRing:
    """The five named ring presets; see the module docstring."""
    if name == "padic":
        p = 2 if p is None else p
        field = PadicRationals(p)
        ring = PLocalIntegers(p)
        return MinimalValuedRing("padic", ring, field, lambda a: a, _witness_injective, True,
                                 {"instance": "padic", "p": p})
    if name == "tadic":
        field = RationalFunctionField("t")
        ring = OrderLocalRing(field)
        return MinimalValuedRing("tadic", ring, field, lambda a: a, _witness_injective, True,
                                 {"instance": "tadic"})
    if name == "monomial":
        field = MonomialFunctionField()
        ring = RING_PLAIN
        return MinimalValuedRing("monomial", ring, field,
                                 lambda a: field.element(a.num, a.den), _witness_injective, True,
                                 {"instance": "monomial"})
    if name == "uwzero":
        field = RationalFunctionField("w")
        ring = RING_UW
        return MinimalValuedRing("uwzero", ring, field,
                                 lambda a: field.element(_kill_u(a.num), _kill_u(a.den)),
                                 _witness_w, True, {"instance": "uwzero"})
    if name == "usquare":
        field = RationalFunctionField("w")
        ring = RING_USQ
        return MinimalValuedRing("usquare", ring, field,
                                 lambda a: field.element(_kill_u(a.num), _kill_u(a.den)),
                                 _witness_one, False, {"instance": "usquare"})
    raise ValueError(f"unknown preset {name!r}")


PRESET_NAMES = ("padic", "tadic", "monomial", "uwzero", "usquare")


def instance_from_config(cfg: dict) -> MinimalValuedRing:
    name = cfg.get("instance")
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown instance {name!r}")
    return preset(name, cfg.get("p"))

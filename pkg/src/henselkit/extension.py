"""The simple extension K[beta] for the Hensel zero beta of a Nagata polynomial.

Elements are represented as polynomials in K[X]/(f).  f need not be
irreducible, so the representation ring has zero divisors; equality of the
*values* q(beta) is decided exactly by comparing two characteristic
polynomials:

    g  = charpoly of multiplication by q(x)      in K[X]/(f)
    g1 = charpoly of multiplication by x * q(x)  in K[X]/(f)

Both are computed division-free (Berkowitz), and their root-valuation
multisets are read off Newton polygons.  The roots of g are q(xi_i) over the
roots xi_i of f, those of g1 are xi_i * q(xi_i); since exactly one root of f
(namely beta) has positive valuation w_n = v(f(0)) and the rest are units,
passing from g to g1 moves exactly the one entry v(q(beta)) up by w_n and
fixes every other entry.  So:

* identical multisets  <=>  q(beta) = 0;
* otherwise exactly one finite entry moves, and it equals v(q(beta)).

Any other difference shape contradicts the theory and raises HardFault.
Inverses come from the characteristic polynomial as well: with
g = T^k * h(T), h(0) != 0, the relation h(delta) = 0 in K[beta] solves for
delta^(-1) as a polynomial in delta.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import check_nagata
from .errors import HardFault
from .newton import ValuationMultiset, root_valuations
from .unipoly import ModElement, UniPoly, char_poly_mod, eval_at_mod
from .valued import PadicRationals, RationalFunctionField, ValuedField
from .values import INF, ExtendedValue


class BetaContext:
    """A valued field K together with a monic Nagata f; beta is its Hensel zero."""

    def __init__(self, field: ValuedField, f: UniPoly):
        if f.domain is not field:
            raise ValueError("f must be a polynomial over the given field")
        report = check_nagata(f, field)
        if not report.ok:
            raise ValueError("f is not a monic Nagata polynomial:\n" + str(report))
        self.field = field
        self.f = f
        self.n = f.degree()
        self.w_n = field.valuation(f.coeff(0))

    def element(self, q: UniPoly) -> "KBetaElement":
        if q.domain is not self.field:
            raise ValueError("q must be a polynomial over the same field")
        return KBetaElement(self, ModElement(self.f, q))

    def constant(self, c) -> "KBetaElement":
        return self.element(UniPoly.constant(self.field, c))

    def beta(self) -> "KBetaElement":
        return self.element(UniPoly.gen(self.field))

    @property
    def zero(self) -> "KBetaElement":
        return self.element(UniPoly(self.field, []))

    @property
    def one(self) -> "KBetaElement":
        return self.constant(self.field.one)

    def __repr__(self):
        return f"BetaContext({self.f.to_text()} over {self.field!r})"


class KBetaElement:
    """q(beta), stored as the reduced representative q mod f."""

    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: BetaContext, rep: ModElement):
        self.ctx = ctx
        self.rep = rep

    def _check(self, other: "KBetaElement") -> None:
        if self.ctx is not other.ctx:
            raise ValueError("elements of different extensions")

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return KBetaElement(self.ctx, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return KBetaElement(self.ctx, -self.rep)

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
        return KBetaElement(self.ctx, self.rep * other.rep)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ctx.one
        for _ in range(int(n)):
            out = out * self
        return out

    def _coerced(self, other):
        if isinstance(other, KBetaElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ctx.constant(self.ctx.field.from_int(other))
        return None

    def scale(self, c) -> "KBetaElement":
        return KBetaElement(self.ctx, self.rep.scale(c))

    def is_zero(self) -> bool:
        return is_zero(self)

    def valuation(self) -> ExtendedValue:
        return valuation(self)

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return is_zero(self - other)

    def __hash__(self):
        raise TypeError("KBetaElement is unhashable")

    def __str__(self):
        return self.rep.rep.to_text("b") if not self.rep.is_zero() else "0"

    def __repr__(self):
        return f"KBetaElement({self})"


@dataclass(frozen=True)
class KBetaAnalysis:
    """The two characteristic polynomials and their root-valuation multisets."""

    g: UniPoly
    g1: UniPoly
    mg: ValuationMultiset
    mg1: ValuationMultiset
    value: ExtendedValue  # v(q(beta)); inf means q(beta) = 0


def _multiset_shift(mg: ValuationMultiset, mg1: ValuationMultiset, w_n: ExtendedValue) -> ExtendedValue:
    """Read v(q(beta)) off the two multisets; HardFault on an impossible shape."""
    c0, c1 = mg.counts(), mg1.counts()
    removed, added = {}, {}
    for key in set(c0) | set(c1):
        d = c1.get(key, 0) - c0.get(key, 0)
        if d > 0:
            added[key] = d
        elif d < 0:
            removed[key] = -d
    if not removed and not added:
        return INF
    if len(removed) == 1 and len(added) == 1:
        (v, nv), = removed.items()
        (v2, n2), = added.items()
        if nv == 1 and n2 == 1 and v.is_finite and v + w_n == v2:
            return v
    raise HardFault(
        f"root-valuation multisets differ in an impossible way: {mg} vs {mg1} (w_n = {w_n})")


def analyze(e: KBetaElement) -> KBetaAnalysis:
    ctx = e.ctx
    q = e.rep.rep
    g = char_poly_mod(ctx.f, q)
    xq = (ModElement(ctx.f, UniPoly.gen(ctx.field)) * e.rep).rep
    g1 = char_poly_mod(ctx.f, xq)
    mg = root_valuations(g, ctx.field)
    mg1 = root_valuations(g1, ctx.field)
    return KBetaAnalysis(g, g1, mg, mg1, _multiset_shift(mg, mg1, ctx.w_n))


def is_zero(e: KBetaElement) -> bool:
    if e.rep.is_zero():
        return True
    return analyze(e).value.is_infinite


def valuation(e: KBetaElement) -> ExtendedValue:
    if e.rep.is_zero():
        return INF
    return analyze(e).value


def invert(e: KBetaElement) -> KBetaElement:
    """delta^(-1) for delta = q(beta) != 0, from g = T^k h(T) via h(delta) = 0."""
    ctx = e.ctx
    if is_zero(e):
        raise ZeroDivisionError("inverse of 0 in K[beta]")
    field = ctx.field
    g = char_poly_mod(ctx.f, e.rep.rep)
    k = g.trailing_index()
    h = g.shift(-k)
    h0 = h.coeff(0)
    tail = UniPoly(field, [field.neg(field.div(c, h0)) for c in h.coeffs[1:]])
    inv_rep = eval_at_mod(tail, e.rep)
    out = KBetaElement(ctx, inv_rep)
    check = out * e - ctx.one
    if not is_zero(check):
        raise HardFault("computed inverse failed the product check")
    return out


@dataclass(frozen=True)
class ImmediateDescription:
    """A truncation a of q(beta) with an exactly certified gap valuation.

    certified_gap = v(q(beta) - a) > value, established by the exact multiset
    method on q - a, not by floating or truncated arithmetic.
    """

    value: ExtendedValue
    approx: object
    approx_text: str
    certified_gap: ExtendedValue
    depth: int


def immediate_description(e: KBetaElement, depth: int = 1) -> ImmediateDescription:
    """Approximate q(beta) within the completion and certify the gap exactly.

    Rank-1 instances only.  The approximation is the truncation of q(beta_hat)
    at absolute precision v + depth, where beta_hat is the completion's Hensel
    zero of f; the gap v(q(beta) - a) >= v + depth is then re-certified with
    the exact machinery.
    """
    from .oracle import PadicCompletion, SeriesCompletion, lift_hensel_zero

    ctx = e.ctx
    field = ctx.field
    if depth < 1:
        raise ValueError("depth must be >= 1")
    v = valuation(e)
    if v.is_infinite:
        return ImmediateDescription(INF, field.zero, field.to_text(field.zero), INF, depth)
    if not v.is_integral():
        raise HardFault(f"finite valuation {v} is not integral")
    vi = int(v.vector.coords[0])

    q = e.rep.rep
    coeff_orders = []
    for c in q.coeffs:
        cv = field.valuation(c)
        if cv.is_finite:
            coeff_orders.append(int(cv.vector.coords[0]))
    m = max(0, -min(coeff_orders))
    target = vi + depth
    prec = target + m + 8

    if isinstance(field, PadicRationals):
        comp = PadicCompletion(field.p, prec)
        pi_m = field.pow(field.from_int(field.p), m)
    elif isinstance(field, RationalFunctionField):
        comp = SeriesCompletion(prec)
        pi_m = field.pow(field.gen, m)
    else:
        raise ValueError("immediate description needs a rank-1 completion")

    root = lift_hensel_zero(ctx.f, comp)
    scaled = q.scale(pi_m)
    acc = comp.zero
    for c in reversed(scaled.coeffs):
        acc = comp.add(comp.mul(acc, root), comp.embed(c))
    if comp.valuation(acc) != vi + m:
        raise HardFault("completion valuation disagrees with the certified valuation")
    a = comp.descale(comp.truncate(acc, target + m), m, field)

    gap_elem = e - ctx.constant(a)
    gap = valuation(gap_elem)
    if not gap >= ExtendedValue.finite(target):
        raise HardFault(f"certified gap {gap} fell below the construction bound {target}")
    return ImmediateDescription(v, a, field.to_text(a), gap, depth)


class KBetaField(ValuedField):
    """K[beta] as a valued field domain, usable as the base of a further stage."""

    def __init__(self, ctx: BetaContext):
        self.ctx = ctx
        self.zero = ctx.zero
        self.one = ctx.one
        self.config = {"instance": "kbeta",
                       "base": ctx.field.config,
                       "f": ctx.f.to_text("X")}

    @property
    def rank(self):
        return self.ctx.field.rank

    def from_int(self, n):
        return self.ctx.constant(self.ctx.field.from_int(n))

    def is_zero(self, a: KBetaElement) -> bool:
        return is_zero(a)

    def inv(self, a: KBetaElement) -> KBetaElement:
        return invert(a)

    def valuation(self, x: KBetaElement) -> ExtendedValue:
        return valuation(x)

    # no residue map here: representatives over K need not have integral
    # coefficients, so the constant term alone does not determine it.
    # Residues of stage elements are taken at the ring level, where
    # representatives are integral by construction.

    def to_text(self, a: KBetaElement) -> str:
        return str(a)

    def __repr__(self):
        return f"KBetaField({self.ctx!r})"

"""One finite stage of henselization: A_f = U_f^{-1} A[X]/(f).

A is a local ring carrying theta into a valued K (a MinimalValuedRing); f is
monic with f(0) a non-unit and f'(0) a unit.  B = A[X]/(f) is free of rank n
over A, U_f is the set of classes g(x) whose constant coefficient is a unit
of A (well defined because f(0) lies in the maximal ideal), and A_f inverts
exactly those.  Elements are stored as num/den pairs of reduced
representatives with den in U_f.

``is_zero`` here is representative-level: num = 0 in A[X]/(f).  It is sound
(rep zero implies the element is zero) but not complete when U_f meets zero
divisors; the exact decision about theta_f-values lives in the kernel module,
and nothing in this module pretends otherwise.

theta_f extends theta by x -> beta and is certified on the way: every
denominator image must have valuation 0, or the stage hard-faults.
``factor_through`` realizes the universal property towards any ring with a
distinguished zero of f.  Towers iterate the construction with A_f as the new
base; the new theta is theta_f itself and the new witness axiom is discharged
through kernel certificates.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import check_nagata, check_special, special_to_nagata
from .errors import HardFault
from .extension import BetaContext, KBetaElement, KBetaField, invert as kbeta_invert
from .rings import Domain
from .unipoly import ModElement, UniPoly, eval_at_mod
from .valued import MinimalValuedRing
from .values import ExtendedValue


class StageContext:
    """The data of one stage: base ring, f, and the value side K[beta]."""

    def __init__(self, base: MinimalValuedRing, f: UniPoly):
        ring = base.ring
        if f.domain is not ring:
            raise ValueError("f must be a polynomial over the base ring")
        report = check_nagata(f, base.ring)
        if not report.ok:
            raise ValueError("f is not Nagata over the base ring:\n" + str(report))
        self.base = base
        self.f = f
        self.n = f.degree()
        self.depth = getattr(base, "depth", 0) + 1
        self.var = f"x{self.depth}"
        theta_image = f.map_coeffs(base.theta, base.field)
        # BetaContext re-checks the Nagata conditions on the value side; the
        # two checks are the unit dichotomy and the valuation conditions,
        # which axiom 3 makes equivalent, so both must pass.
        self.beta = BetaContext(base.field, theta_image)
        self.one_mod = ModElement(f, UniPoly.constant(ring, ring.one))
        self.zero_mod = ModElement(f, UniPoly(ring, []))

    def __repr__(self):
        return f"StageContext({self.f.to_text(self.var)} over {self.base.name})"


def _coerce_mod(ctx: StageContext, g) -> ModElement:
    if isinstance(g, ModElement):
        if g.modulus is not ctx.f and g.modulus != ctx.f:
            raise ValueError("modulus mismatch")
        return g
    if isinstance(g, UniPoly):
        return ModElement(ctx.f, g)
    raise ValueError(f"cannot interpret {type(g).__name__} as an element of A[X]/(f)")


def in_Uf(ctx: StageContext, g) -> bool:
    """Unit constant coefficient; independent of the representative."""
    return ctx.base.ring.is_unit(_coerce_mod(ctx, g).rep.coeff(0))


class AfElement:
    """num/den with num, den in A[X]/(f) and den in U_f."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: StageContext, num: ModElement, den: ModElement):
        self.ctx = ctx
        self.num = num
        self.den = den

    def _coerced(self, other):
        if isinstance(other, AfElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements of different stages")
            return other
        if isinstance(other, int):
            return embed(self.ctx, self.ctx.base.ring.from_int(other))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return AfElement(self.ctx, self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return AfElement(self.ctx, -self.num, self.den)

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
        return AfElement(self.ctx, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if not in_Uf(self.ctx, other.num):
            raise ZeroDivisionError("division by a non-unit of A_f")
        return AfElement(self.ctx, self.num * other.den, self.den * other.num)

    def scale(self, c) -> "AfElement":
        return AfElement(self.ctx, self.num.scale(c), self.den)

    def is_zero_rep(self) -> bool:
        """Sound but not complete: True certifies zero, False decides nothing."""
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("AfElement is unhashable")

    def __str__(self):
        num = self.num.rep.to_text(self.ctx.var)
        if self.den == self.ctx.one_mod:
            return num
        return f"({num})/({self.den.rep.to_text(self.ctx.var)})"

    def __repr__(self):
        return f"AfElement({self})"


def af(ctx: StageContext, num, den=None) -> AfElement:
    num = _coerce_mod(ctx, num)
    if den is None:
        den = ctx.one_mod
    else:
        den = _coerce_mod(ctx, den)
        if not in_Uf(ctx, den):
            raise ValueError("denominator is not in U_f")
    return AfElement(ctx, num, den)


def embed(ctx: StageContext, a) -> AfElement:
    """The canonical map A -> A_f."""
    return af(ctx, UniPoly.constant(ctx.base.ring, a))


def alpha(ctx: StageContext) -> AfElement:
    """The class of X: the stage's Hensel zero of f."""
    return af(ctx, UniPoly.gen(ctx.base.ring))


def is_unit_af(ctx: StageContext, x: AfElement) -> bool:
    return in_Uf(ctx, x.num)


def try_invert_af(ctx: StageContext, x: AfElement) -> AfElement | None:
    if not is_unit_af(ctx, x):
        return None
    return AfElement(ctx, x.den, x.num)


def residue_af(ctx: StageContext, x: AfElement):
    """Image in the residue field of A (stable through the stage)."""
    ring = ctx.base.ring
    return ring.residue_div(ring.residue(x.num.rep.coeff(0)),
                            ring.residue(x.den.rep.coeff(0)))


def theta_f(ctx: StageContext, x: AfElement) -> KBetaElement:
    """theta coefficientwise, x -> beta; denominator images certified units."""
    base = ctx.base
    num_img = x.num.rep.map_coeffs(base.theta, base.field)
    e_num = ctx.beta.element(num_img)
    if x.den == ctx.one_mod:
        return e_num
    den_img = x.den.rep.map_coeffs(base.theta, base.field)
    for c in den_img.coeffs:
        if not base.field.valuation(c).is_nonnegative():
            raise HardFault("theta image of a ring element left the valuation ring")
    e_den = ctx.beta.element(den_img)
    if not e_den.valuation().is_zero():
        raise HardFault("theta_f image of a U_f denominator is not a unit")
    return e_num * kbeta_invert(e_den)


def stage_valuation(ctx: StageContext, x: AfElement) -> ExtendedValue:
    return theta_f(ctx, x).valuation()


@dataclass(frozen=True)
class FactorTarget:
    """A ring C with a distinguished zero of f, receiving A_f.

    coeff_map embeds A in C, root is the zero f maps to, is_zero tests in C,
    and invert inverts the units that denominators land on.  C's elements
    must support + and *.
    """

    name: str
    coeff_map: object
    root: object
    is_zero: object
    invert: object


def factor_through(ctx: StageContext, target: FactorTarget):
    """The unique A-algebra map A_f -> C sending x to target.root."""
    mapped_f = [target.coeff_map(c) for c in ctx.f.coeffs]
    acc = _horner(mapped_f, target.root)
    if not target.is_zero(acc):
        raise ValueError(f"target {target.name}: the distinguished point is not a zero of f")

    def phi(x: AfElement):
        num_val = _horner([target.coeff_map(c) for c in x.num.rep.coeffs], target.root)
        if x.den == ctx.one_mod:
            return num_val
        den_val = _horner([target.coeff_map(c) for c in x.den.rep.coeffs], target.root)
        return num_val * target.invert(den_val)

    return phi


def _horner(coeffs: list, point):
    if not coeffs:
        raise ValueError("empty coefficient list")
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * point + c
    return acc


class StageRingDomain(Domain):
    """A_f as a coefficient domain, usable as the base ring of a next stage.

    is_zero (hence eq) is representative-level, matching is_zero_rep; see the
    module docstring for the soundness contract.
    """

    def __init__(self, ctx: StageContext):
        self.ctx = ctx
        self.zero = af(ctx, UniPoly(ctx.base.ring, []))
        self.one = af(ctx, UniPoly.constant(ctx.base.ring, ctx.base.ring.one))
        names = {ctx.var: alpha(ctx)}
        for name, elt in ctx.base.ring.var_names.items():
            names[name] = embed(ctx, elt)
        self.var_names = names

    def from_int(self, n):
        return embed(self.ctx, self.ctx.base.ring.from_int(n))

    def is_zero(self, a: AfElement) -> bool:
        return a.is_zero_rep()

    def is_unit(self, a: AfElement) -> bool:
        return is_unit_af(self.ctx, a)

    def try_invert(self, a: AfElement) -> AfElement | None:
        return try_invert_af(self.ctx, a)

    def residue(self, a: AfElement):
        return residue_af(self.ctx, a)

    def residue_div(self, r1, r2):
        return self.ctx.base.ring.residue_div(r1, r2)

    def to_text(self, a: AfElement) -> str:
        return str(a)

    def __repr__(self):
        return f"StageRingDomain({self.ctx!r})"


def make_stage_base(ctx: StageContext) -> MinimalValuedRing:
    """Package A_f as a minimal valued ring, ready to base the next stage.

    The witness axiom is discharged constructively: an element of infinite
    valuation has theta_f(num) = 0, the kernel module certifies an
    annihilator identity for its numerator, and b * h(gamma) is the witness,
    with (witness * element)^(N k) zero at the representative level.  Towers
    therefore always run in the nilpotent (non-reduced) mode.
    """
    ring = StageRingDomain(ctx)
    field = KBetaField(ctx.beta)

    def theta(a: AfElement) -> KBetaElement:
        return theta_f(ctx, a)

    def witness(mvr, a: AfElement) -> AfElement:
        from .kernel import Annihilator, decide_kernel

        decision = decide_kernel(ctx, a.num.rep)
        if not isinstance(decision, Annihilator):
            raise HardFault("infinite-valuation element classified as in S_f")
        h_at_gamma = eval_at_mod(decision.h, a.num)
        return af(ctx, h_at_gamma.rep.scale(decision.b))

    mvr = MinimalValuedRing(
        name=f"{ctx.base.name}.{ctx.var}",
        ring=ring,
        field=field,
        theta_fn=theta,
        witness_fn=witness,
        reduced=False,
        config={"instance": "stage", "base": ctx.base.config, "f": ctx.f.to_text("X")},
    )
    mvr.depth = ctx.depth
    return mvr


MAX_TOWER_DEPTH = 3


class Tower:
    """Iterated stages over a preset base, each cut out by a special polynomial."""

    def __init__(self, base: MinimalValuedRing):
        self.root = base
        self.contexts: list[StageContext] = []
        self.bases: list[MinimalValuedRing] = [base]

    @property
    def depth(self) -> int:
        return len(self.contexts)

    @property
    def top(self) -> MinimalValuedRing:
        return self.bases[-1]

    def top_context(self) -> StageContext:
        if not self.contexts:
            raise ValueError("the tower has no stages yet")
        return self.contexts[-1]


def tower_extend(tower: Tower, t: UniPoly, max_depth: int = MAX_TOWER_DEPTH) -> StageContext:
    """Add a stage cut out by the special polynomial t over the current top."""
    if tower.depth >= max_depth:
        raise ValueError(f"tower depth capped at {max_depth}")
    top = tower.top
    report = check_special(t, top.ring)
    if not report.ok:
        raise ValueError("not a special polynomial over the tower top:\n" + str(report))
    nag = special_to_nagata(t, top.ring)
    ctx = StageContext(top, nag.f)
    tower.contexts.append(ctx)
    tower.bases.append(make_stage_base(ctx))
    return ctx

"""Base coefficient rings.

Rationals are stdlib ``Fraction``.  ``MultiPoly`` is a polynomial in the two
variables u, w over Q, stored as a map from exponent pairs to nonzero
coefficients.  ``QuotientSpec`` selects a monomial quotient: none, uw = 0, or
(u^2 = 0, uw = 0).  Normal forms simply drop the killed monomials, so every
arithmetic result is reduced on construction.

``LocalElement`` is a fraction num/den over the quotient with den(0,0) != 0
(the localization at the origin).  Fractions are never reduced to lowest
terms: there is no multivariate gcd here, only a cheap normalization that
scales den's constant term to 1.  The zero test "num == 0 after reduction" is
the honest localization zero test: in all three quotients no element with a
nonzero constant term annihilates a nonzero normal form.

Domains are small stateless objects exposing the operations generic polynomial
code needs (zero / one / from_int / arithmetic / is_zero); elements stay plain
values.
"""
from __future__ import annotations

import enum
from fractions import Fraction


class Domain:
    """Coefficient-domain protocol; elements must support + - * unary-."""

    zero = None
    one = None

    def from_int(self, n):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def pow(self, a, n: int):
        if n < 0:
            raise ValueError("negative power in a ring")
        result = self.one
        for _ in range(n):
            result = self.mul(result, a)
        return result

    def to_text(self, a) -> str:
        return str(a)

    # names the expression parser may bind, e.g. {"u": <element>}
    var_names: dict = {}


class FieldDomain(Domain):
    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class RationalField(FieldDomain):
    """Q with exact Fraction arithmetic."""

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)


QQ = RationalField()


def join_terms(pairs) -> str:
    """Render (coefficient, monomial-text) pairs as a signed sum.

    A monomial text of "" stands for the constant term; coefficient 1 is
    omitted in front of a non-constant monomial.
    """
    chunks = []
    for coeff, mono in pairs:
        if coeff == 0:
            continue
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if mono == "":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append(("- " if neg else "+ ") + body)
    if not chunks:
        return "0"
    return " ".join(chunks)


class QuotientSpec(enum.Enum):
    """Monomial quotient applied to Q[u, w]."""

    NONE = "none"
    UW_ZERO = "uw_zero"
    USQUARE_UW_ZERO = "usquare_uw_zero"

    def kills(self, exponent: tuple[int, int]) -> bool:
        i, j = exponent
        if self is QuotientSpec.NONE:
            return False
        if self is QuotientSpec.UW_ZERO:
            return i >= 1 and j >= 1
        return (i >= 1 and j >= 1) or i >= 2


class MultiPoly:
    """Polynomial in u and w over Q; ``terms`` maps (i, j) to a nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[(int(exp[0]), int(exp[1]))] = c
        self.terms = clean

    @staticmethod
    def const(c) -> "MultiPoly":
        return MultiPoly({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(i: int, j: int, c=1) -> "MultiPoly":
        return MultiPoly({(i, j): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def min_lex_exponent(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        return min(self.terms)

    def reduce(self, spec: QuotientSpec) -> "MultiPoly":
        if spec is QuotientSpec.NONE:
            return self
        return MultiPoly({e: c for e, c in self.terms.items() if not spec.kills(e)})

    def _coerced(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

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
        terms: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MultiPoly.const(1)
        for _ in range(int(n)):
            result = result * self
        return result

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly()
        return MultiPoly({e: k * c for e, k in self.terms.items()})

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        def mono(e):
            i, j = e
            parts = []
            if i:
                parts.append("u" if i == 1 else f"u^{i}")
            if j:
                parts.append("w" if j == 1 else f"w^{j}")
            return "*".join(parts)

        order = sorted(self.terms, key=lambda e: (e[0] + e[1], e), reverse=True)
        return join_terms([(self.terms[e], mono(e)) for e in order])

    def __repr__(self):
        return f"MultiPoly({self})"


MP_U = MultiPoly.monomial(1, 0)
MP_W = MultiPoly.monomial(0, 1)


class LocalElement:
    """num/den over Q[u,w]/spec with den(0,0) != 0; both stored reduced."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: "LocalizedRing", num: MultiPoly, den: MultiPoly):
        self.ring = ring
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_unit(self) -> bool:
        return self.num.constant_term() != 0

    def _check(self, other: "LocalElement") -> None:
        if self.ring.spec is not other.ring.spec:
            raise ValueError("mixed quotient specs")

    def _coerced(self, other):
        if isinstance(other, LocalElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_int(other) if isinstance(other, int) else self.ring.element(MultiPoly.const(other))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.ring.element(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return LocalElement(self.ring, -self.num, self.den)

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
        return self.ring.element(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).reduce(self.ring.spec).is_zero()

    def __hash__(self):
        raise TypeError("LocalElement is unhashable (equality is by cross-multiplication)")

    def __str__(self):
        if self.den == MultiPoly.const(1):
            return str(self.num)
        num, den = str(self.num), str(self.den)
        return f"({num})/({den})"

    def __repr__(self):
        return f"LocalElement({self})"


class LocalizedRing(Domain):
    """Q[u,w]/spec localized at the origin (denominators with nonzero constant term)."""

    def __init__(self, spec: QuotientSpec):
        self.spec = spec
        self.zero = self.element(MultiPoly())
        self.one = self.element(MultiPoly.const(1))
        self.u = self.element(MP_U)
        self.w = self.element(MP_W)
        self.var_names = {"u": self.u, "w": self.w}

    def element(self, num: MultiPoly, den: MultiPoly | None = None) -> LocalElement:
        if den is None:
            den = MultiPoly.const(1)
        den = den.reduce(self.spec)
        c = den.constant_term()
        if c == 0:
            raise ValueError("denominator vanishes at the origin")
        num = num.reduce(self.spec)
        if num.is_zero():
            return LocalElement(self, MultiPoly(), MultiPoly.const(1))
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        return LocalElement(self, num, den)

    def from_int(self, n):
        return self.element(MultiPoly.const(n))

    def from_fraction(self, q) -> LocalElement:
        return self.element(MultiPoly.const(Fraction(q)))

    def is_zero(self, a: LocalElement) -> bool:
        return a.is_zero()

    def is_unit(self, a: LocalElement) -> bool:
        return a.is_unit()

    def try_invert(self, a: LocalElement) -> LocalElement | None:
        if not a.is_unit():
            return None
        return self.element(a.den, a.num)

    def residue(self, a: LocalElement) -> Fraction:
        """Image in the residue field Q (value at the origin)."""
        return a.num.constant_term() / a.den.constant_term()

    @staticmethod
    def residue_inv(r) -> Fraction:
        return 1 / Fraction(r)

    @staticmethod
    def residue_div(r1, r2) -> Fraction:
        return Fraction(r1) / Fraction(r2)

    def nilpotency_index(self, a: LocalElement) -> int | None:
        """Smallest N with a^N = 0, or None when a is not nilpotent.

        Decidable from the normal form: under uw = 0 the ring is reduced;
        under (u^2, uw) = 0 an element is nilpotent iff its w-part vanishes.
        """
        if a.is_zero():
            return 1
        if self.spec is not QuotientSpec.USQUARE_UW_ZERO:
            return None
        if all(i >= 1 for (i, j) in a.num.terms):
            return 2
        return None

    def to_text(self, a: LocalElement) -> str:
        return str(a)


RING_PLAIN = LocalizedRing(QuotientSpec.NONE)
RING_UW = LocalizedRing(QuotientSpec.UW_ZERO)
RING_USQ = LocalizedRing(QuotientSpec.USQUARE_UW_ZERO)

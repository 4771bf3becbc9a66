"""Seeded random generators shared by the demo sweep and the test suite.

Everything takes an explicit random.Random so runs are reproducible from the
seed alone.
"""

import random
from fractions import Fraction

from .newton import ValuationMultiset
from .rings import LocalizedRing, MultiPoly, QQ
from .stage import af
from .unipoly import UniPoly
from .valued import (MonomialFunctionField, OrderLocalRing, PadicRationals,
                     PLocalIntegers, RationalFunctionField, padic_order)
from .values import INF, ExtendedValue


def rng(seed) -> random.Random:
    return random.Random(seed)


def _coprime_int(r, p, lo=1, hi=20):
    while True:
        n = r.randint(lo, hi)
        if n % p != 0:
            return n


def splitting_monic(r, p, degree):
    """Monic over Q with distinct roots of the form p^a * unit (or one root 0).

    Returns the polynomial and the expected multiset of root valuations.
    """
    roots = []
    used = set()
    while len(roots) < degree:
        if not roots and r.random() < 0.15:
            cand = 0
        else:
            a = r.randint(0, 2)
            cand = (p ** a) * _coprime_int(r, p, 1, 12) * r.choice((1, -1))
        if cand in used:
            continue
        used.add(cand)
        roots.append(cand)
    f = UniPoly.constant(QQ, Fraction(1))
    for root in roots:
        f = f * UniPoly(QQ, [Fraction(-root), Fraction(1)])
    expected = ValuationMultiset.of(
        INF if root == 0 else ExtendedValue.finite(padic_order(Fraction(root), p))
        for root in roots)
    return f, expected


def field_element(r, field, kind="integral"):
    """kind: 'unit' (v = 0), 'positive' (finite v > 0), 'integral' (v >= 0)."""
    if isinstance(field, PadicRationals):
        p = field.p
        unit = Fraction(_coprime_int(r, p) * r.choice((1, -1)), _coprime_int(r, p, 1, 9))
        if kind == "unit":
            return unit
        k = r.randint(1, 3) if kind == "positive" else r.randint(0, 3)
        return unit * Fraction(p) ** k
    if isinstance(field, RationalFunctionField):
        num = UniPoly(QQ, [Fraction(r.randint(1, 9) * r.choice((1, -1))),
                           Fraction(r.randint(-4, 4))])
        den = UniPoly(QQ, [Fraction(1), Fraction(r.randint(-3, 3))])
        unit = field.element(num, den)
        if kind == "unit":
            return unit
        k = r.randint(1, 3) if kind == "positive" else r.randint(0, 3)
        return unit * field.pow(field.gen, k)
    if isinstance(field, MonomialFunctionField):
        terms = {(0, 0): Fraction(r.randint(1, 9) * r.choice((1, -1)))}
        if r.random() < 0.5:
            e = r.choice(((1, 0), (0, 1), (1, 1)))
            terms[e] = Fraction(r.randint(-4, 4))
        unit = field.element(MultiPoly(terms))
        if kind == "unit":
            return unit
        if kind == "positive":
            e = r.choice(((1, 0), (0, 1), (1, 1), (2, 0), (0, 2)))
        else:
            e = (r.randint(0, 2), r.randint(0, 2))
        return unit * field.element(MultiPoly.monomial(*e))
    raise ValueError(f"no sampler for {field!r}")


def nagata_over_field(r, field, degree):
    """Random monic f with v(f(0)) > 0 (occasionally f(0) = 0) and f'(0) a unit."""
    coeffs = [field.zero] * (degree + 1)
    if r.random() >= 0.05:
        coeffs[0] = field_element(r, field, "positive")
    coeffs[1] = field_element(r, field, "unit")
    for i in range(2, degree):
        if r.random() >= 0.3:
            coeffs[i] = field_element(r, field, "integral")
    coeffs[degree] = field.one
    return UniPoly(field, coeffs)


def q_over_field(r, field, max_degree):
    if r.random() < 0.05:
        return UniPoly(field, [])
    d = r.randint(0, max_degree)
    coeffs = [field.zero if r.random() < 0.25 else field_element(r, field, "integral")
              for _ in range(d + 1)]
    return UniPoly(field, coeffs)


def ring_element(r, mvr, kind="any"):
    """kind: 'unit', 'nonunit' (in the maximal ideal), 'any'."""
    ring = mvr.ring
    if isinstance(ring, PLocalIntegers):
        p = ring.p
        if kind != "unit" and r.random() < 0.1:
            return Fraction(0)
        unit = Fraction(_coprime_int(r, p) * r.choice((1, -1)), _coprime_int(r, p, 1, 9))
        if kind == "unit":
            return unit
        k = r.randint(1, 3) if kind == "nonunit" else r.randint(0, 3)
        return unit * Fraction(p) ** k
    if isinstance(ring, OrderLocalRing):
        field = ring.field
        if kind != "unit" and r.random() < 0.1:
            return field.zero
        unit = field_element(r, field, "unit")
        if kind == "unit":
            return unit
        k = r.randint(1, 3) if kind == "nonunit" else r.randint(0, 3)
        return unit * field.pow(field.gen, k)
    if isinstance(ring, LocalizedRing):
        terms = {}
        for _ in range(r.randint(1, 3)):
            e = (r.randint(0, 2), r.randint(0, 2))
            terms[e] = terms.get(e, Fraction(0)) + Fraction(r.randint(-5, 5))
        if kind == "unit":
            terms[(0, 0)] = Fraction(r.randint(1, 7))
        elif kind == "nonunit":
            terms.pop((0, 0), None)
        den = {(0, 0): Fraction(1)}
        if r.random() < 0.4:
            den[r.choice(((1, 0), (0, 1)))] = Fraction(r.randint(-3, 3))
        return ring.element(MultiPoly(terms), MultiPoly(den))
    raise ValueError(f"no sampler for {ring!r}")


def nagata_over_ring(r, mvr, degree):
    ring = mvr.ring
    coeffs = [ring.zero] * (degree + 1)
    if r.random() >= 0.05:
        coeffs[0] = ring_element(r, mvr, "nonunit")
    if degree >= 2:
        coeffs[1] = ring_element(r, mvr, "unit")
    for i in range(2, degree):
        if r.random() >= 0.3:
            coeffs[i] = ring_element(r, mvr)
    coeffs[degree] = ring.one
    return UniPoly(ring, coeffs)


def q_over_ring(r, mvr, max_degree):
    if r.random() < 0.05:
        return UniPoly(mvr.ring, [])
    d = r.randint(0, max_degree)
    return UniPoly(mvr.ring, [ring_element(r, mvr) for _ in range(d + 1)])


def af_sample(r, ctx, max_degree=None):
    """Random AfElement: any numerator over a denominator in U_f."""
    d = max_degree if max_degree is not None else max(ctx.f.degree() - 1, 1)
    num = q_over_ring(r, ctx.base, d)
    den_coeffs = [ring_element(r, ctx.base, "unit")]
    for _ in range(r.randint(0, d)):
        den_coeffs.append(ring_element(r, ctx.base))
    return af(ctx, num, UniPoly(ctx.base.ring, den_coeffs))

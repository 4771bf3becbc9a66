"""Univariate polynomials over a coefficient domain.

Coefficients are stored dense, lowest degree first, trimmed through the
domain's zero test.  Division is only provided against a monic divisor (no
coefficient inversion) or over a field domain.  The characteristic polynomial
of multiplication by q(x) in the free module R[X]/(f) is computed by the
Berkowitz algorithm, which is division-free and therefore valid over rings
with zero divisors.
"""
from __future__ import annotations

from .rings import Domain, FieldDomain


class UniPoly:
    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: Domain, coeffs):
        coeffs = list(coeffs)
        while coeffs and domain.is_zero(coeffs[-1]):
            coeffs.pop()
        self.domain = domain
        self.coeffs = tuple(coeffs)

    @staticmethod
    def constant(domain: Domain, c) -> "UniPoly":
        return UniPoly(domain, [c])

    @staticmethod
    def from_ints(domain: Domain, ints) -> "UniPoly":
        return UniPoly(domain, [domain.from_int(n) for n in ints])

    @staticmethod
    def gen(domain: Domain) -> "UniPoly":
        return UniPoly(domain, [domain.zero, domain.one])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero_poly(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.domain.eq(self.coeffs[-1], self.domain.one)

    def trailing_index(self) -> int | None:
        """Smallest i with a nonzero coefficient; None for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if not self.domain.is_zero(c):
                return i
        return None

    def _check(self, other: "UniPoly") -> None:
        if self.domain is not other.domain:
            raise ValueError("polynomials over different domains")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        d = self.domain
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(d, [d.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self) -> "UniPoly":
        d = self.domain
        return UniPoly(d, [d.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        d = self.domain
        if not self.coeffs or not other.coeffs:
            return UniPoly(d, [])
        out = [d.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if d.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = d.add(out[i + j], d.mul(a, b))
        return UniPoly(d, out)

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.constant(self.domain, self.domain.one)
        for _ in range(int(n)):
            result = result * self
        return result

    def scale(self, c) -> "UniPoly":
        d = self.domain
        return UniPoly(d, [d.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by X^k (k >= 0) or drop the k lowest coefficients (k < 0)."""
        if k >= 0:
            return UniPoly(self.domain, [self.domain.zero] * k + list(self.coeffs))
        return UniPoly(self.domain, self.coeffs[-k:])

    def reversed_poly(self, d: int | None = None) -> "UniPoly":
        """X^d * p(1/X) for d = deg p by default."""
        if d is None:
            d = self.degree()
        if d < self.degree():
            raise ValueError("reversal degree below actual degree")
        coeffs = [self.coeff(d - i) for i in range(d + 1)]
        return UniPoly(self.domain, coeffs)

    def derivative(self) -> "UniPoly":
        d = self.domain
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            out.append(d.mul(d.from_int(i), c))
        return UniPoly(d, out)

    def evaluate(self, x):
        """Horner evaluation at a domain element."""
        d = self.domain
        acc = d.zero
        for c in reversed(self.coeffs):
            acc = d.add(d.mul(acc, x), c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        self._check(inner)
        d = self.domain
        acc = UniPoly(d, [])
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.constant(d, c)
        return acc

    def map_coeffs(self, fn, new_domain: Domain) -> "UniPoly":
        return UniPoly(new_domain, [fn(c) for c in self.coeffs])

    def divmod_monic(self, g: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(g)
        if not g.is_monic():
            raise ValueError("divisor must be monic")
        d = self.domain
        rem = list(self.coeffs)
        n = g.degree()
        quo = [d.zero] * max(0, len(rem) - n)
        while len(rem) > n:
            c = rem[-1]
            k = len(rem) - 1 - n
            if not d.is_zero(c):
                quo[k] = c
                for i in range(n + 1):
                    rem[k + i] = d.sub(rem[k + i], d.mul(c, g.coeff(i)))
            rem.pop()
        return UniPoly(d, quo), UniPoly(d, rem)

    def divmod_field(self, g: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(g)
        d = self.domain
        if not isinstance(d, FieldDomain):
            raise ValueError("field division requested over a non-field domain")
        if g.is_zero_poly():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = d.inv(g.leading())
        rem = list(self.coeffs)
        n = g.degree()
        quo = [d.zero] * max(0, len(rem) - n)
        while len(rem) > n:
            c = d.mul(rem[-1], inv_lead)
            k = len(rem) - 1 - n
            if not d.is_zero(c):
                quo[k] = c
                for i in range(n + 1):
                    rem[k + i] = d.sub(rem[k + i], d.mul(c, g.coeff(i)))
            rem.pop()
        return UniPoly(d, quo), UniPoly(d, rem)

    def divides(self, other: "UniPoly") -> bool:
        _, r = other.divmod_field(self)
        return r.is_zero_poly()

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check(other)
        d = self.domain
        n = max(len(self.coeffs), len(other.coeffs))
        return all(d.eq(self.coeff(i), other.coeff(i)) for i in range(n))

    def __hash__(self):
        raise TypeError("UniPoly is unhashable")

    def to_text(self, var: str = "X") -> str:
        if self.is_zero_poly():
            return "0"
        d = self.domain
        chunks = []
        for i in range(self.degree(), -1, -1):
            c = self.coeff(i)
            if d.is_zero(c):
                continue
            t = d.to_text(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if t.startswith("-") and not _has_inner_sign(t[1:]):
                sign, mag = "-", t[1:]
            elif _has_inner_sign(t):
                sign, mag = "+", f"({t})"
            else:
                sign, mag = "+", t
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not chunks:
                chunks.append(("-" if sign == "-" else "") + body)
            else:
                chunks.append(("- " if sign == "-" else "+ ") + body)
        return " ".join(chunks)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"UniPoly({self.to_text()})"


def _has_inner_sign(t: str) -> bool:
    return any(ch in t for ch in "+-") or " " in t


def poly_gcd_field(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over a field domain."""
    d = a.domain
    while not b.is_zero_poly():
        _, r = a.divmod_field(b)
        a, b = b, r
    if a.is_zero_poly():
        return a
    return a.scale(d.inv(a.leading()))


class ModElement:
    """An element of R[X]/(f) for monic f, stored as its reduced representative."""

    __slots__ = ("modulus", "rep")

    def __init__(self, modulus: UniPoly, rep: UniPoly):
        if not modulus.is_monic():
            raise ValueError("modulus must be monic")
        if rep.degree() >= modulus.degree():
            _, rep = rep.divmod_monic(modulus)
        self.modulus = modulus
        self.rep = rep

    def _check(self, other: "ModElement") -> None:
        if self.modulus is not other.modulus and self.modulus != other.modulus:
            raise ValueError("elements of different quotients")

    def __add__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.modulus, self.rep + other.rep)

    def __neg__(self) -> "ModElement":
        return ModElement(self.modulus, -self.rep)

    def __sub__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.modulus, self.rep - other.rep)

    def __mul__(self, other: "ModElement") -> "ModElement":
        self._check(other)
        return ModElement(self.modulus, self.rep * other.rep)

    def __pow__(self, n: int) -> "ModElement":
        out = ModElement(self.modulus, UniPoly.constant(self.rep.domain, self.rep.domain.one))
        for _ in range(int(n)):
            out = out * self
        return out

    def scale(self, c) -> "ModElement":
        return ModElement(self.modulus, self.rep.scale(c))

    def is_zero(self) -> bool:
        return self.rep.is_zero_poly()

    def constant_coeff(self):
        return self.rep.coeff(0)

    def __eq__(self, other):
        if not isinstance(other, ModElement):
            return NotImplemented
        self._check(other)
        return self.rep == other.rep

    def __hash__(self):
        raise TypeError("ModElement is unhashable")

    def __repr__(self):
        return f"ModElement({self.rep.to_text('x')} mod {self.modulus.to_text('x')})"


def eval_at_mod(p: UniPoly, x: ModElement) -> ModElement:
    """Evaluate p (over the same coefficient domain) at a quotient element."""
    d = p.domain
    acc = ModElement(x.modulus, UniPoly(d, []))
    for c in reversed(p.coeffs):
        acc = acc * x + ModElement(x.modulus, UniPoly.constant(d, c))
    return acc


def multiplication_matrix(f: UniPoly, q: UniPoly) -> list[list]:
    """Matrix of multiplication by q(x) on the basis 1, x, ..., x^(n-1) of R[X]/(f).

    Entry [i][j] is the coefficient of x^i in q * x^j mod f.
    """
    if not f.is_monic():
        raise ValueError("modulus must be monic")
    d = f.domain
    n = f.degree()
    if n == 0:
        return []
    col = list(ModElement(f, q).rep.coeffs)
    col += [d.zero] * (n - len(col))
    cols = [col]
    for _ in range(n - 1):
        prev = cols[-1]
        lead = prev[-1]
        nxt = [d.zero] + prev[:-1]
        if not d.is_zero(lead):
            for i in range(n):
                nxt[i] = d.sub(nxt[i], d.mul(lead, f.coeff(i)))
        cols.append(nxt)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def berkowitz_charpoly(matrix: list[list], domain: Domain) -> UniPoly:
    """det(T*I - M) as a monic UniPoly in T, by the division-free Berkowitz method."""
    vec = _berkowitz_vector(matrix, domain)
    return UniPoly(domain, list(reversed(vec)))


def _berkowitz_vector(m: list[list], d: Domain) -> list:
    n = len(m)
    if n == 0:
        return [d.one]
    if n == 1:
        return [d.one, d.neg(m[0][0])]
    a = m[0][0]
    row = m[0][1:]
    colv = [r[0] for r in m[1:]]
    sub = [r[1:] for r in m[1:]]
    toeplitz_col = [d.one, d.neg(a)]
    v = colv
    for k in range(2, n + 1):
        s = d.zero
        for x, y in zip(row, v):
            s = d.add(s, d.mul(x, y))
        toeplitz_col.append(d.neg(s))
        if k < n:
            v = [_dot(d, r, v) for r in sub]
    prev = _berkowitz_vector(sub, d)
    out = []
    for i in range(n + 1):
        s = d.zero
        for j in range(len(prev)):
            k = i - j
            if 0 <= k < len(toeplitz_col):
                s = d.add(s, d.mul(toeplitz_col[k], prev[j]))
        out.append(s)
    return out


def _dot(d: Domain, row, v):
    s = d.zero
    for x, y in zip(row, v):
        s = d.add(s, d.mul(x, y))
    return s


def char_poly_mod(f: UniPoly, q: UniPoly) -> UniPoly:
    """Characteristic polynomial (in T) of multiplication by q(x) in R[X]/(f)."""
    matrix = multiplication_matrix(f, q)
    return berkowitz_charpoly(matrix, f.domain)


def cayley_hamilton_check(f: UniPoly, q: UniPoly) -> bool:
    """True iff chi(q(x)) reduces to 0 in R[X]/(f); an exact invariant."""
    chi = char_poly_mod(f, q)
    val = eval_at_mod(chi, ModElement(f, q))
    return val.is_zero()

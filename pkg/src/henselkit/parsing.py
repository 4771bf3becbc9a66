"""Textual expressions for elements and polynomials.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Names resolve through the target domain's ``var_names`` (u, w, t, x1, ...);
``parse_poly`` additionally binds one polynomial variable.  Fractions are
just division: "4/9" works anywhere the constants are invertible.  Division
by a non-unit and unknown names are ParseErrors, as is every malformed
input; nothing here raises bare exceptions at the user.
"""
from __future__ import annotations

from .errors import ParseError
from .rings import Domain, FieldDomain
from .unipoly import UniPoly

_MAX_EXPONENT = 64


def tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            out.append((ch, ch))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    return out


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of input")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> str:
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}")
        return tok[1]

    def parse(self):
        node = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input starting at {self.tokens[self.pos][1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            node = ("bin", op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            node = ("bin", op, node, self.factor())
        return node

    def factor(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.factor())
        if self.peek() == "+":
            self.take()
            return self.factor()
        node = self.atom()
        if self.peek() == "^":
            self.take()
            raw = self.expect("int")
            e = int(raw)
            if e > _MAX_EXPONENT:
                raise ParseError(f"exponent {e} over the limit {_MAX_EXPONENT}")
            node = ("pow", node, e)
        return node

    def atom(self):
        kind, text = self.take()
        if kind == "int":
            return ("int", int(text))
        if kind == "name":
            return ("name", text)
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected token {text!r}")


def parse_ast(text: str):
    return _Parser(tokenize(text)).parse()


def _divide(domain: Domain, a, b):
    if domain.is_zero(b):
        raise ParseError("division by zero")
    if isinstance(domain, FieldDomain):
        return domain.div(a, b)
    try_invert = getattr(domain, "try_invert", None)
    if try_invert is not None:
        inv = try_invert(b)
        if inv is None:
            raise ParseError(f"division by the non-unit {domain.to_text(b)}")
        return domain.mul(a, inv)
    raise ParseError("this domain has no division")


def eval_ast(node, domain: Domain, names: dict):
    kind = node[0]
    if kind == "int":
        return domain.from_int(node[1])
    if kind == "name":
        if node[1] not in names:
            known = ", ".join(sorted(names)) or "(none)"
            raise ParseError(f"unknown name {node[1]!r}; available: {known}")
        return names[node[1]]
    if kind == "neg":
        return domain.neg(eval_ast(node[1], domain, names))
    if kind == "pow":
        return domain.pow(eval_ast(node[1], domain, names), node[2])
    if kind == "bin":
        _, op, left, right = node
        a = eval_ast(left, domain, names)
        b = eval_ast(right, domain, names)
        if op == "+":
            return domain.add(a, b)
        if op == "-":
            return domain.sub(a, b)
        if op == "*":
            return domain.mul(a, b)
        return _divide(domain, a, b)
    raise ParseError(f"malformed expression node {kind!r}")


def eval_in(domain: Domain, text: str, extra: dict | None = None):
    """Evaluate an expression to a domain element."""
    names = dict(domain.var_names)
    if extra:
        names.update(extra)
    return eval_ast(parse_ast(text), domain, names)


class PolyDomain(Domain):
    """UniPoly over a base domain, as a domain itself (for the evaluator)."""

    def __init__(self, base: Domain):
        self.base = base
        self.zero = UniPoly(base, [])
        self.one = UniPoly.constant(base, base.one)

    def from_int(self, n):
        return UniPoly.constant(self.base, self.base.from_int(n))

    def is_zero(self, a: UniPoly) -> bool:
        return a.is_zero_poly()

    def try_invert(self, a: UniPoly):
        if a.degree() != 0:
            return None
        c = a.coeff(0)
        if isinstance(self.base, FieldDomain):
            if self.base.is_zero(c):
                return None
            return UniPoly.constant(self.base, self.base.inv(c))
        try_invert = getattr(self.base, "try_invert", None)
        if try_invert is None:
            return None
        inv = try_invert(c)
        if inv is None:
            return None
        return UniPoly.constant(self.base, inv)

    def to_text(self, a: UniPoly) -> str:
        return a.to_text()


def parse_poly(domain: Domain, text: str, var: str = "X") -> UniPoly:
    """Parse a polynomial in ``var`` with coefficients from ``domain``."""
    if var in domain.var_names:
        raise ParseError(f"polynomial variable {var!r} collides with a domain name")
    pd = PolyDomain(domain)
    names = {name: UniPoly.constant(domain, elt) for name, elt in domain.var_names.items()}
    names[var] = UniPoly.gen(domain)
    return eval_ast(parse_ast(text), pd, names)

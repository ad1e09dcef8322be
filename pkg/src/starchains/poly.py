"""Sparse multivariate polynomials over F_p.

A polynomial is a mapping from exponent tuples to nonzero residues mod p.
Monomials are plain tuples of ints; the owning :class:`PolyRing` supplies the
monomial order as a sort key.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

MAX_EXPONENT = 2**16 - 1
MAX_PRIME = 2**16

Monomial = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class ExponentOverflowError(OverflowError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-a for a in reversed(m)))


def lex_key(m: Monomial):
    return m


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def check_exponents(m: Monomial) -> Monomial:
    if m and max(m) > MAX_EXPONENT:
        raise ExponentOverflowError(f"exponent {max(m)} exceeds {MAX_EXPONENT}")
    return m


class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed monomial order (grevlex or lex)."""

    def __init__(self, p: int, variables: Iterable[str], order: str = "grevlex"):
        variables = tuple(variables)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise ValueError(f"p = {p} exceeds the supported bound {MAX_PRIME}")
        if not variables:
            raise ValueError("need at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.variables = variables
        self.nvars = len(variables)
        self.order = order
        self.key = ORDERS[order]
        self.one_monomial: Monomial = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and (self.p, self.variables, self.order) == (other.p, other.variables, other.order)
        )

    def __hash__(self):
        return hash((self.p, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing(p={self.p}, variables={self.variables!r}, order={self.order!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: c})

    def gen(self, name_or_index) -> "Polynomial":
        i = self.variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        """All monomials of total degree d, descending in the ring's order."""
        out: list[Monomial] = []

        def rec(prefix: list[int], remaining: int, slots: int):
            if slots == 1:
                out.append(tuple(prefix + [remaining]))
                return
            for a in range(remaining, -1, -1):
                rec(prefix + [a], remaining - a, slots - 1)

        if d < 0:
            return []
        rec([], d, self.nvars)
        out.sort(key=self.key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)

    def __call__(self, text: str) -> "Polynomial":
        return parse(text, self)


class Polynomial:
    """Immutable polynomial; ``terms`` lists (monomial, coeff) strictly descending."""

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, coeffs: Mapping[Monomial, int]):
        p = ring.p
        d = {}
        for m, c in coeffs.items():
            c %= p
            if c:
                d[m] = c
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, d: dict) -> "Polynomial":
        # d must already be reduced mod p with no zero coefficients
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._d = d
        obj._terms = None
        obj._hash = None
        return obj

    @property
    def coeffs(self) -> Mapping[Monomial, int]:
        return self._d

    @property
    def terms(self) -> tuple[tuple[Monomial, int], ...]:
        if self._terms is None:
            key = self.ring.key
            self._terms = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def lead_monomial(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self._d, key=self.ring.key)

    def lead_coeff(self) -> int:
        return self._d[self.lead_monomial()]

    def coefficient(self, m: Monomial) -> int:
        return self._d.get(tuple(m), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for m, c in self._d.items():
            parts.setdefault(sum(m), {})[m] = c
        return {deg: Polynomial._raw(self.ring, d) for deg, d in sorted(parts.items())}

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        d = dict(self._d)
        for m, c in other._d.items():
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.p
        if not c:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: (v * c) % p for m, v in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = (d.get(m, 0) + c1 * c2) % p
        for m in [m for m, c in d.items() if not c]:
            del d[m]
        for m in d:
            check_exponents(m)
        return Polynomial._raw(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius_power(self, e: int) -> "Polynomial":
        """f^(p^e), computed termwise: coefficients in F_p are fixed by Frobenius."""
        if e < 0:
            raise ValueError("e must be nonnegative")
        q = self.ring.p ** e
        d = {check_exponents(tuple(a * q for a in m)): c for m, c in self._d.items()}
        return Polynomial._raw(self.ring, d)

    def derivative(self, var) -> "Polynomial":
        """Formal partial derivative with respect to a variable name or index."""
        i = self.ring.variables.index(var) if isinstance(var, str) else var
        p = self.ring.p
        d = {}
        for m, c in self._d.items():
            a = m[i]
            v = (a * c) % p
            if v:
                mm = list(m)
                mm[i] = a - 1
                d[tuple(mm)] = v
        return Polynomial._raw(self.ring, d)

    def monomial_times(self, m: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(k, m)): (v * c) % p for k, v in self._d.items()}
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


def render_monomial(m: Monomial, names: tuple[str, ...]) -> str:
    parts = []
    for name, a in zip(names, m):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def render(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.terms:
        mono = render_monomial(m, f.ring.variables)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``term (('+'|'-') term)*`` where a term is ``coeff? ('*'? var ('^' int)?)*``."""
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            bad = pos + (len(stripped[pos:]) - len(stripped[pos:].lstrip()))
            raise ParseError("unexpected character", text, bad)
        start = m.start(m.lastindex)
        kind = ("int", "var", "^", "*", "sign")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", text, 0)

    index = {name: i for i, name in enumerate(ring.variables)}
    p = ring.p
    i = 0
    acc: dict = {}

    def peek():
        return tokens[i] if i < len(tokens) else None

    def expect_int():
        nonlocal i
        tok = peek()
        if tok is None or tok[0] != "int":
            raise ParseError("expected integer", text, tok[2] if tok else len(text))
        i += 1
        return int(tok[1])

    first = True
    while True:
        sign = 1
        tok = peek()
        if tok is not None and tok[0] == "sign":
            sign = -1 if tok[1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, tok[2])
        first = False
        coeff = 1
        exps = [0] * ring.nvars
        seen_factor = False
        tok = peek()
        if tok is not None and tok[0] == "int":
            coeff = int(tok[1])
            i += 1
            seen_factor = True
        while True:
            tok = peek()
            if tok is None or tok[0] == "sign":
                break
            if tok[0] == "*":
                if not seen_factor:
                    raise ParseError("'*' without a left operand", text, tok[2])
                i += 1
                tok = peek()
                if tok is None or tok[0] != "var":
                    raise ParseError("expected variable after '*'", text, tok[2] if tok else len(text))
            if tok[0] != "var":
                raise ParseError("expected variable", text, tok[2])
            if tok[1] not in index:
                raise ParseError(f"unknown variable {tok[1]!r}", text, tok[2])
            var = index[tok[1]]
            i += 1
            power = 1
            nxt = peek()
            if nxt is not None and nxt[0] == "^":
                i += 1
                power = expect_int()
            exps[var] += power
            seen_factor = True
        if not seen_factor:
            where = tokens[i][2] if i < len(tokens) else len(text)
            raise ParseError("empty term", text, where)
        m = check_exponents(tuple(exps))
        acc[m] = (acc.get(m, 0) + sign * coeff) % p
        if peek() is None:
            break
    return Polynomial(ring, acc)

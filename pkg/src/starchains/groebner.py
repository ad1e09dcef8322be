"""Buchberger's algorithm over F_p and ideal arithmetic in graded quotient rings.

Internally polynomials are dicts keyed by *order keys* rather than exponent
vectors.  Both supported orders have keys that are linear in the exponents,
so monomial multiplication is componentwise addition of keys and Python's
native tuple comparison is the monomial order.  That keeps the inner
reduction loop free of key-function calls.

A ring ``R = S/Q`` is modelled by :class:`QuotientRing`; an ideal of ``R`` is
an :class:`IdealHandle` holding ambient generators, with ``Q`` always added
implicitly.  Membership in ``R`` is then membership in ``S``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import (
    MAX_EXPONENT,
    ExponentOverflowError,
    Monomial,
    PolyRing,
    Polynomial,
    RingMismatchError,
)

INFINITE = float("inf")


class NonHomogeneousError(ValueError):
    pass


# --- key encoding -----------------------------------------------------------


class _Codec:
    """Translate exponent tuples to order keys and back."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.n = ring.nvars
        self.grevlex = ring.order == "grevlex"

    def enc(self, m: Monomial) -> tuple:
        if self.grevlex:
            return (sum(m),) + tuple(-a for a in reversed(m))
        return m

    def dec(self, k: tuple) -> Monomial:
        if self.grevlex:
            return tuple(-a for a in reversed(k[1:]))
        return k

    def divides(self, a: tuple, b: tuple) -> bool:
        if self.grevlex:
            for x, y in zip(a[1:], b[1:]):
                if x < y:
                    return False
            return True
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    def lcm(self, a: tuple, b: tuple) -> tuple:
        if self.grevlex:
            tail = tuple(min(x, y) for x, y in zip(a[1:], b[1:]))
            return (-sum(tail),) + tail
        return tuple(max(x, y) for x, y in zip(a, b))

    def disjoint(self, a: tuple, b: tuple) -> bool:
        if self.grevlex:
            return all(x == 0 or y == 0 for x, y in zip(a[1:], b[1:]))
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    def degree(self, k: tuple) -> int:
        return k[0] if self.grevlex else sum(k)

    def to_dict(self, f: Polynomial) -> dict:
        return {self.enc(m): c for m, c in f.coeffs.items()}

    def from_dict(self, d: dict) -> Polynomial:
        return Polynomial._raw(self.ring, {self.dec(k): c for k, c in d.items()})


_codecs: dict = {}


def codec(ring: PolyRing) -> _Codec:
    c = _codecs.get(ring)
    if c is None:
        c = _codecs[ring] = _Codec(ring)
    return c


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


# --- reduction --------------------------------------------------------------


@dataclass
class _GBElem:
    lead: tuple
    poly: dict  # monic
    tail: list  # [(key, coeff)] without the lead term


def _make_elem(d: dict) -> _GBElem:
    lead = max(d)
    return _GBElem(lead, d, [(k, c) for k, c in d.items() if k != lead])


def _monic(d: dict, p: int) -> dict:
    lead = max(d)
    inv = pow(d[lead], p - 2, p)
    if inv == 1:
        return d
    return {k: (c * inv) % p for k, c in d.items()}


def _reduce(f: dict, basis: Sequence[_GBElem], cd: _Codec, p: int, full: bool = True) -> dict:
    """Remainder of f on division by a list of monic elements."""
    f = dict(f)
    rem: dict = {}
    divides = cd.divides
    while f:
        m = max(f)
        c = f.pop(m)
        for g in basis:
            if divides(g.lead, m):
                shift = _sub(m, g.lead)
                for k, gc in g.tail:
                    t = _add(k, shift)
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            if not full:
                rem[m] = c
                rem.update(f)
                return rem
            rem[m] = c
    return rem


def _spoly(a: _GBElem, b: _GBElem, cd: _Codec, p: int) -> dict:
    lcm = cd.lcm(a.lead, b.lead)
    sa = _sub(lcm, a.lead)
    sb = _sub(lcm, b.lead)
    out: dict = {}
    for k, c in a.tail:
        t = _add(k, sa)
        out[t] = (out.get(t, 0) + c) % p
    for k, c in b.tail:
        t = _add(k, sb)
        out[t] = (out.get(t, 0) - c) % p
    return {k: c for k, c in out.items() if c}


def _check_overflow(d: dict, cd: _Codec):
    for k in d:
        if max(cd.dec(k), default=0) > MAX_EXPONENT:
            raise ExponentOverflowError("exponent overflow during Groebner basis computation")


def buchberger(gens: Iterable[Polynomial], ring: PolyRing) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by the normal strategy (smallest lcm first) and pruned
    with the Gebauer-Moeller update, which applies Buchberger's product and
    chain criteria.  The result is sorted by descending lead monomial.
    """
    cd = codec(ring)
    p = ring.p
    polys: list[_GBElem] = []
    G: list[int] = []
    B: dict = {}  # (i, j) -> lcm key

    def update(h: int):
        nonlocal G, B
        lh = polys[h].lead
        C = [(g, cd.lcm(polys[g].lead, lh)) for g in G]
        D = []
        for idx, (g1, l1) in enumerate(C):
            if cd.disjoint(polys[g1].lead, lh):
                D.append((g1, l1, True))
                continue
            redundant = False
            for g2, l2 in C[idx + 1 :]:
                if cd.divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in D:
                    if cd.divides(l2, l1):
                        redundant = True
                        break
            if not redundant:
                D.append((g1, l1, False))
        newB = {}
        for (i, j), l in B.items():
            if cd.divides(lh, l) and cd.lcm(polys[i].lead, lh) != l and cd.lcm(polys[j].lead, lh) != l:
                continue
            newB[(i, j)] = l
        for g1, l1, disjoint in D:
            if not disjoint:
                newB[(g1, h)] = l1
        B = newB
        G = [g for g in G if not cd.divides(lh, polys[g].lead)] + [h]

    start = []
    for f in gens:
        if f.ring != ring:
            raise RingMismatchError("generator from a different ring")
        if not f.is_zero():
            start.append(cd.to_dict(f))
    # process small generators first: keeps intermediate expressions small
    start.sort(key=lambda d: max(d))
    for d in start:
        current = [polys[g] for g in G]
        r = _reduce(d, current, cd, p)
        if r:
            polys.append(_make_elem(_monic(r, p)))
            update(len(polys) - 1)
            if polys[-1].lead == cd.enc(ring.one_monomial):
                return [ring.one()]

    while B:
        pair = min(B, key=lambda k: (cd.degree(B[k]), B[k], k))
        del B[pair]
        i, j = pair
        s = _spoly(polys[i], polys[j], cd, p)
        if not s:
            continue
        _check_overflow(s, cd)
        r = _reduce(s, [polys[g] for g in G], cd, p)
        if r:
            polys.append(_make_elem(_monic(r, p)))
            if polys[-1].lead == cd.enc(ring.one_monomial):
                return [ring.one()]
            update(len(polys) - 1)

    # interreduce into the reduced basis
    minimal = [polys[g] for g in G]
    minimal.sort(key=lambda e: e.lead)
    reduced: list[_GBElem] = []
    for idx, g in enumerate(minimal):
        others = [h for h in minimal if h is not g]
        tail_rem = _reduce({k: c for k, c in g.tail}, others, cd, p)
        d = dict(tail_rem)
        d[g.lead] = 1
        reduced.append(_make_elem(d))
    reduced.sort(key=lambda e: e.lead, reverse=True)
    return [cd.from_dict(e.poly) for e in reduced]


# --- rings and ideals -------------------------------------------------------


class QuotientRing:
    """``S/Q`` with ``S = F_p[vars]`` and ``Q`` a homogeneous ideal (possibly zero)."""

    def __init__(self, ambient: PolyRing, modulus: Iterable[Polynomial] = (), name: str = "R"):
        modulus = [f for f in modulus if not f.is_zero()]
        for f in modulus:
            if f.ring != ambient:
                raise RingMismatchError("modulus generator from a different ring")
            if not f.is_homogeneous():
                raise NonHomogeneousError(f"modulus generator {f} is not homogeneous")
        self.ambient = ambient
        self.modulus_gens = tuple(modulus)
        self.name = name
        self.modulus_gb = tuple(buchberger(modulus, ambient))
        if self.modulus_gb and self.modulus_gb[0] == ambient.one():
            raise ValueError("the modulus is the unit ideal")
        self._bracket_cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_strings(cls, p: int, variables: Sequence[str], modulus: Sequence[str] = (), name: str = "R",
                     order: str = "grevlex") -> "QuotientRing":
        S = PolyRing(p, variables, order)
        return cls(S, [S.parse(t) for t in modulus], name)

    @property
    def p(self) -> int:
        return self.ambient.p

    def __repr__(self):
        mod = ", ".join(str(f) for f in self.modulus_gens) or "0"
        return f"QuotientRing({self.name}: F_{self.p}[{', '.join(self.ambient.variables)}]/({mod}))"

    def poly(self, text: str) -> Polynomial:
        return self.ambient.parse(text)

    def ideal(self, gens: Iterable[Polynomial | str] = ()) -> "IdealHandle":
        return IdealHandle(self, gens)

    def zero_ideal(self) -> "IdealHandle":
        return IdealHandle(self, ())

    def maximal_ideal(self) -> "IdealHandle":
        return IdealHandle(self, self.ambient.gens())

    def unit_ideal(self) -> "IdealHandle":
        return IdealHandle(self, [self.ambient.one()])


class IdealHandle:
    """An ideal of ``R = S/Q`` given by ambient generators; ``Q`` is implicit."""

    def __init__(self, ring: QuotientRing, gens: Iterable[Polynomial | str] = ()):
        self.ring = ring
        S = ring.ambient
        out = []
        for g in gens:
            if isinstance(g, str):
                g = S.parse(g)
            if g.ring != S:
                raise RingMismatchError("generator from a different ring")
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)
        self._gb = None
        self._elems = None
        self._brackets: dict = {}
        self._lock = threading.Lock()

    @property
    def gb(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(buchberger(list(self.ring.modulus_gb) + list(self.gens), self.ring.ambient))
        return self._gb

    @property
    def all_gens(self) -> tuple[Polynomial, ...]:
        return self.gens + self.ring.modulus_gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_unit(self) -> bool:
        return bool(self.gb) and self.gb[0] == self.ring.ambient.one()

    def is_zero(self) -> bool:
        return all(normal_form(g, self.ring.zero_ideal()).is_zero() for g in self.gens)

    def lead_monomials(self) -> list[Monomial]:
        return [g.lead_monomial() for g in self.gb]

    def __contains__(self, f) -> bool:
        return membership(f, self)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return equal(self, other)

    def __hash__(self):
        return hash(self.gb)

    def __le__(self, other: "IdealHandle") -> bool:
        return contains(other, self)

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_sum(self, other)

    def __mul__(self, other: "IdealHandle") -> "IdealHandle":
        return ideal_product(self, other)

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.gens) or '0'})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def describe(self) -> str:
        """Canonical form: the reduced basis minus the modulus."""
        return "(" + ", ".join(str(g) for g in canonical_generators(self)) + ")"


def _same_ring(I: IdealHandle, J: IdealHandle):
    if I.ring is not J.ring and (I.ring.ambient != J.ring.ambient or I.ring.modulus_gb != J.ring.modulus_gb):
        raise RingMismatchError("ideals live in different rings")


def normal_form(f: Polynomial, I: IdealHandle) -> Polynomial:
    if f.ring != I.ring.ambient:
        raise RingMismatchError("polynomial from a different ring")
    if f.is_zero():
        return f
    cd = codec(f.ring)
    if I._elems is None:
        I._elems = [_make_elem(cd.to_dict(g)) for g in I.gb]
    return cd.from_dict(_reduce(cd.to_dict(f), I._elems, cd, f.ring.p))


def normal_form_dict(f: Polynomial, I: IdealHandle) -> dict:
    """Normal form as a plain ``{exponent tuple: coeff}`` dict."""
    return dict(normal_form(f, I).coeffs)


def membership(f: Polynomial, I: IdealHandle) -> bool:
    return normal_form(f, I).is_zero()


def contains(I: IdealHandle, J: IdealHandle) -> bool:
    """True when ``J`` is a subset of ``I``."""
    _same_ring(I, J)
    return all(membership(g, I) for g in J.gens)


def equal(I: IdealHandle, J: IdealHandle) -> bool:
    _same_ring(I, J)
    return I.gb == J.gb


def canonical_generators(I: IdealHandle) -> list[Polynomial]:
    """Reduced basis elements not already in the modulus."""
    zero = I.ring.zero_ideal()
    return [g for g in I.gb if not membership(g, zero)]


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I, J)
    return IdealHandle(I.ring, I.gens + J.gens)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    _same_ring(I, J)
    return IdealHandle(I.ring, [f * g for f in I.gens for g in J.gens])


def bracket_power(I: IdealHandle, e: int) -> IdealHandle:
    """``I^[p^e]``: p^e-th powers of the generators (the modulus stays implicit)."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e == 0:
        return I
    cached = I._brackets.get(e)
    if cached is None:
        cached = IdealHandle(I.ring, [g.frobenius_power(e) for g in I.gens])
        I._brackets[e] = cached
    return cached


def standard_monomials(I: IdealHandle, d: int) -> list[Monomial]:
    leads = I.lead_monomials()
    out = []
    for m in I.ring.ambient.monomials_of_degree(d):
        if not any(all(a <= b for a, b in zip(l, m)) for l in leads):
            out.append(m)
    return out


def graded_basis(R: QuotientRing, I: IdealHandle, d: int) -> list[Monomial]:
    """Standard monomials of degree d: a basis of ``(R/I)_d``."""
    if not I.is_homogeneous():
        raise NonHomogeneousError(f"{I} is not homogeneous")
    return standard_monomials(I, d)


def default_degree_cap(I: IdealHandle) -> int:
    maxdeg = max((g.degree() for g in I.gb), default=0)
    return 4 * maxdeg + I.ring.ambient.nvars


def hilbert_dims(I: IdealHandle, degree_cap: int | None = None) -> list[int] | None:
    """``[dim (R/I)_0, dim (R/I)_1, ...]`` up to the last nonzero degree.

    Counts standard monomials, so for a non-homogeneous ideal the entries
    are the sizes of the degree slices of the standard-monomial basis.
    Returns ``None`` when the dimensions have not vanished by the cap.
    """
    if I.is_unit():
        return []
    cap = default_degree_cap(I) if degree_cap is None else degree_cap
    maxdeg = max((g.degree() for g in I.gb), default=0)
    dims = []
    empty_run = 0
    d = 0
    while d <= cap:
        n = len(standard_monomials(I, d))
        dims.append(n)
        empty_run = empty_run + 1 if n == 0 else 0
        if empty_run >= 2 and d > maxdeg:
            while dims and dims[-1] == 0:
                dims.pop()
            return dims
        d += 1
    return None


def colength(I: IdealHandle, degree_cap: int | None = None) -> int | float:
    """``dim_k R/I``, or ``INFINITE`` if it does not vanish below the cap."""
    dims = hilbert_dims(I, degree_cap)
    return INFINITE if dims is None else sum(dims)


def is_m_primary(I: IdealHandle) -> bool:
    """Is the radical of I the ideal of all variables?

    Needs a pure power of every variable among the lead monomials (finite
    colength); for non-homogeneous ideals also ``m^D ⊆ I`` with
    ``D = dim R/I``, which rules out zeros away from the origin.
    """
    n = I.ring.ambient.nvars
    leads = I.lead_monomials()
    for i in range(n):
        if not any(sum(m) == m[i] and m[i] > 0 or sum(m) == 0 for m in leads):
            return False
    if I.is_homogeneous() or I.is_unit():
        return True
    D = int(colength(I, degree_cap=_exact_cap(I)))
    S = I.ring.ambient
    return all(membership(S.monomial(mono), I) for mono in S.monomials_of_degree(D))


def top_degree(I: IdealHandle) -> int:
    """Largest degree of a standard monomial (``-1`` for the unit ideal)."""
    if not is_m_primary(I):
        raise ValueError(f"{I} is not m-primary")
    dims = hilbert_dims(I, degree_cap=_exact_cap(I))
    return len(dims) - 1


def all_standard_monomials(I: IdealHandle) -> list[Monomial]:
    """Basis of R/I for an ideal of finite colength, by ascending degree."""
    top = top_degree(I)
    out = []
    for d in range(top + 1):
        out.extend(standard_monomials(I, d))
    return out


def _exact_cap(I: IdealHandle) -> int:
    # with pure powers x_i^{a_i} among the leads, every monomial of degree
    # > sum(a_i - 1) is divisible by one of them
    n = I.ring.ambient.nvars
    leads = I.lead_monomials()
    bound = 0
    for i in range(n):
        a = min(m[i] for m in leads if sum(m) == m[i] and m[i] > 0)
        bound += a - 1
    return bound + 2

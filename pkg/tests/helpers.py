"""Brute-force oracles shared by the test modules."""

import itertools

from starchains.groebner import (
    bracket_power,
    graded_basis,
    ideal_product,
    membership,
)
from starchains.poly import Polynomial


def span_elements(S, monos):
    """Every nonzero F_p-combination of the given monomials."""
    for coeffs in itertools.product(range(S.p), repeat=len(monos)):
        if any(coeffs):
            yield Polynomial(S, {m: c for m, c in zip(monos, coeffs) if c})


def closure_by_enumeration(I, e_max, degrees):
    """Nonzero classes x of (R/I)_d with x^(p^e) in I^[p^e] for some e <= e_max."""
    R = I.ring
    found = []
    for d in degrees:
        for x in span_elements(R.ambient, graded_basis(R, I, d)):
            if any(membership(x.frobenius_power(e), bracket_power(I, e)) for e in range(1, e_max + 1)):
                found.append(x)
    return found


def special_by_enumeration(I, lifts, pairs):
    """Elements of the span of ``lifts`` meeting the special-part power test for some (e0, e)."""
    R = I.ring
    m = R.maximal_ideal()
    targets = {}
    for e0, e in pairs:
        targets[(e0, e)] = bracket_power(ideal_product(m, bracket_power(I, e0)), e)
    hits = []
    for coeffs in itertools.product(range(R.p), repeat=len(lifts)):
        if not any(coeffs):
            continue
        x = sum((f.scale(c) for f, c in zip(lifts, coeffs) if c), R.ambient.zero())
        for (e0, e), target in targets.items():
            if membership(x.frobenius_power(e0 + e), target):
                hits.append((x, (e0, e)))
                break
    return hits

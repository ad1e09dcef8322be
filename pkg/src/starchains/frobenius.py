"""Frobenius closure and its special part, computed degree by degree.

For a homogeneous ideal I and q = p^e the set ``{x in R_d : x^q in I^[q]}`` is
an F_p-subspace, because x -> x^q is additive and fixes F_p.  It is the
kernel of the linear map ``x -> NF(x^q, I^[q])`` on a monomial basis of R_d,
so every closure question reduces to a kernel computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fp_linear
from .fp_linear import SubspaceBasis
from .groebner import (
    IdealHandle,
    NonHomogeneousError,
    all_standard_monomials,
    bracket_power,
    graded_basis,
    ideal_product,
    ideal_sum,
    is_m_primary,
    membership,
    normal_form,
    top_degree,
)
from .poly import Monomial, Polynomial

EXPONENT_BUDGET = 8


class NotMPrimaryError(ValueError):
    """Degreewise search needs either an m-primary ideal or an explicit degree cap."""


class CapExceededError(RuntimeError):
    """The exponent search had not stabilized when it hit the configured cap."""


@dataclass(frozen=True)
class ClosureConfig:
    e_max: int = 5
    e0_max: int = 3
    degree_cap: int | None = None

    def __post_init__(self):
        if self.e_max < 1:
            raise ValueError("e_max must be >= 1")
        if self.e0_max < 1:
            raise ValueError("e0_max must be >= 1")
        if self.e_max + self.e0_max > EXPONENT_BUDGET:
            raise ValueError(f"e_max + e0_max must not exceed {EXPONENT_BUDGET}")
        if self.degree_cap is not None and self.degree_cap < 0:
            raise ValueError("degree_cap must be nonnegative")


@dataclass
class ClosureCertificate:
    """Witnesses ``(f, e)`` with ``f^(p^e)`` in the relevant bracket power.

    For the special part the exponent is the pair ``(e0, e)``.
    """

    new_generators: list = field(default_factory=list)
    stabilized_at: int = 0
    capped: bool = False


def _require_homogeneous(I: IdealHandle):
    if not I.is_homogeneous():
        raise NonHomogeneousError(f"{I} is not homogeneous")


def _coordinate_blocks(I: IdealHandle, cfg: ClosureConfig) -> dict:
    """Monomial bases of R/I, one block per degree.

    A non-homogeneous ideal must be m-primary and gets a single block holding
    every standard monomial; the kernel method works unchanged because the
    Frobenius map is F_p-linear on all of R/I.
    """
    if I.is_homogeneous():
        blocks = {d: graded_basis(I.ring, I, d) for d in _degree_range(I, cfg)}
    elif is_m_primary(I):
        blocks = {None: all_standard_monomials(I)}
    else:
        raise NotMPrimaryError(f"{I} is neither homogeneous nor m-primary")
    return {k: monos for k, monos in blocks.items() if monos}


def _degree_range(I: IdealHandle, cfg: ClosureConfig) -> range:
    if is_m_primary(I):
        top = top_degree(I)
        if cfg.degree_cap is not None:
            top = min(top, cfg.degree_cap)
        return range(0, top + 1)
    if cfg.degree_cap is None:
        raise NotMPrimaryError(f"{I} is not m-primary; supply a degree_cap")
    return range(0, cfg.degree_cap + 1)


def _poly_from_vector(vec, monos: list[Monomial], I: IdealHandle) -> Polynomial:
    S = I.ring.ambient
    return Polynomial(S, {m: c for m, c in zip(monos, vec) if c})


def _frobenius_kernel(monos: list[Monomial], power: int, target: IdealHandle) -> SubspaceBasis:
    """Kernel of ``sum c_j m_j -> NF(sum c_j m_j^power, target)`` in the monomial basis."""
    S = target.ring.ambient
    p = S.p
    columns = []
    rows: dict = {}
    for m in monos:
        nf = normal_form(S.monomial(tuple(a * power for a in m)), target)
        columns.append(nf.coeffs)
        for k in nf.coeffs:
            rows.setdefault(k, len(rows))
    matrix = [[0] * len(monos) for _ in rows]
    for j, col in enumerate(columns):
        for k, c in col.items():
            matrix[rows[k]][j] = c
    return fp_linear.kernel_basis(matrix, p, len(monos))


def frobenius_root_space(I: IdealHandle, e: int, d: int) -> SubspaceBasis:
    """``{x in R_d : x^(p^e) in I^[p^e]}`` in the coordinates of ``graded_basis(R, 0, d)``."""
    _require_homogeneous(I)
    R = I.ring
    monos = graded_basis(R, R.zero_ideal(), d)
    if not monos:
        return SubspaceBasis(0, ())
    return _frobenius_kernel(monos, R.p**e, bracket_power(I, e))


def root_space_polynomials(I: IdealHandle, e: int, d: int) -> list[Polynomial]:
    R = I.ring
    monos = graded_basis(R, R.zero_ideal(), d)
    return [_poly_from_vector(v, monos, I) for v in frobenius_root_space(I, e, d)]


class _GrowingSpaces:
    """Per-degree subspaces accumulated across exponents, in RREF."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, list] = {}

    def absorb(self, d: int, vectors, ncols: int) -> list:
        """Add vectors; return those that enlarged the span (in input order)."""
        current = self.rows.setdefault(d, [])
        fresh = []
        for v in vectors:
            trial = current + [list(v)]
            if fp_linear.rank(trial, self.p, ncols) > len(current):
                current = fp_linear.row_basis(trial, self.p, ncols)
                current = [list(r) for r in current]
                fresh.append(v)
        self.rows[d] = current
        return fresh


def _trivial_zero(I: IdealHandle) -> bool:
    # the zero ideal of a polynomial ring is Frobenius closed with zero special part
    return not I.ring.modulus_gens and I.is_zero()


def frobenius_closure(I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> tuple[IdealHandle, ClosureCertificate]:
    """``I^F`` with a certificate of witness exponents.

    Exponents are tried in increasing order; the search stops once two
    consecutive exponents add nothing.  ``capped`` reports that this did
    not happen by ``cfg.e_max``.  Non-homogeneous ideals are accepted when
    m-primary.
    """
    if I.is_unit() or _trivial_zero(I):
        return I, ClosureCertificate()
    R = I.ring
    p = R.p
    coords = _coordinate_blocks(I, cfg)
    found = _GrowingSpaces(p)
    cert = ClosureCertificate()
    new_gens: list[Polynomial] = []
    last_growth = 0
    stable = False
    for e in range(1, cfg.e_max + 1):
        target = bracket_power(I, e)
        grew = False
        for d, monos in coords.items():
            kernel = _frobenius_kernel(monos, p**e, target)
            for v in found.absorb(d, kernel.vectors, len(monos)):
                f = _poly_from_vector(v, monos, I)
                new_gens.append(f)
                cert.new_generators.append((f, e))
                grew = True
        if grew:
            last_growth = e
        if e - last_growth >= 2:
            stable = True
            break
    cert.stabilized_at = last_growth
    cert.capped = not stable
    if not new_gens:
        return I, cert
    return IdealHandle(R, I.gens + tuple(new_gens)), cert


def verify_certificate(I: IdealHandle, cert: ClosureCertificate) -> bool:
    """Recheck every witness ``f^(p^e) in I^[p^e]`` by direct membership."""
    for f, e in cert.new_generators:
        if isinstance(e, tuple):
            e0, e1 = e
            target = bracket_power(ideal_product(I.ring.maximal_ideal(), bracket_power(I, e0)), e1)
            if not membership(f.frobenius_power(e0 + e1), target):
                return False
        elif not membership(f.frobenius_power(e), bracket_power(I, e)):
            return False
    return True


def closure_witness(f: Polynomial, I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> int | None:
    """Smallest e <= e_max with ``h^(p^e) in I^[p^e]`` for every homogeneous part h of f.

    For a non-homogeneous I the test is applied to f itself.  ``None`` means no such exponent up to the cap.  No degree bound is needed,
    so this works for ideals that are not m-primary.
    """
    worst = 0
    parts = f.homogeneous_components().values() if I.is_homogeneous() else [f]
    for h in parts:
        for e in range(0, cfg.e_max + 1):
            if membership(h.frobenius_power(e), bracket_power(I, e)):
                worst = max(worst, e)
                break
        else:
            return None
    return worst


def in_frobenius_closure(f: Polynomial, I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> bool:
    return closure_witness(f, I, cfg) is not None


def is_frobenius_closed(I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> bool:
    """True iff the computed closure equals I.

    A closure that grew proves non-closedness even when capped; an unchanged
    but capped search is inconclusive and raises :class:`CapExceededError`.
    """
    J, cert = frobenius_closure(I, cfg)
    if cert.new_generators:
        return False
    if cert.capped:
        raise CapExceededError(f"closure of {I} did not stabilize by e_max={cfg.e_max}")
    return True


def special_part_certified(I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> tuple[IdealHandle, ClosureCertificate]:
    """``I^Fsp``: x with ``x^(p^(e0+e)) in (m I^[p^e0])^[p^e]`` for some e0, e.

    Searched over e0 ascending and, for each e0, e ascending; each loop stops
    after two consecutive exponents contribute nothing new.  Elements of mI
    always qualify (e0 = e = 0), so the search runs modulo mI.
    ``stabilized_at`` is the last e0 that contributed.
    """
    _require_homogeneous(I)
    R = I.ring
    p = R.p
    m = R.maximal_ideal()
    base = ideal_product(m, I)
    cert = ClosureCertificate()
    if _trivial_zero(I):
        return I, cert
    degrees = _degree_range(base, cfg)
    coords = {d: graded_basis(R, base, d) for d in degrees}
    coords = {d: monos for d, monos in coords.items() if monos}
    found = _GrowingSpaces(p)
    new_gens: list[Polynomial] = []
    last_e0 = 0
    outer_stable = False
    inner_capped = False
    for e0 in range(0, cfg.e0_max + 1):
        inner = ideal_product(m, bracket_power(I, e0))
        grew_e0 = False
        last_e = 0
        inner_stable = False
        for e in range(0, cfg.e_max + 1):
            target = bracket_power(inner, e)
            power = p ** (e0 + e)
            grew = False
            for d, monos in coords.items():
                kernel = _frobenius_kernel(monos, power, target)
                for v in found.absorb(d, kernel.vectors, len(monos)):
                    f = _poly_from_vector(v, monos, I)
                    new_gens.append(f)
                    cert.new_generators.append((f, (e0, e)))
                    grew = True
            if grew:
                last_e = e
                grew_e0 = True
            if e - last_e >= 2:
                inner_stable = True
                break
        inner_capped = inner_capped or not inner_stable
        if grew_e0:
            last_e0 = e0
        if e0 - last_e0 >= 2:
            outer_stable = True
            break
    cert.stabilized_at = last_e0
    cert.capped = inner_capped or not outer_stable
    return IdealHandle(R, base.gens + tuple(new_gens)), cert


def special_part(I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> IdealHandle:
    J, cert = special_part_certified(I, cfg)
    if cert.capped:
        raise CapExceededError(f"special part of {I} did not stabilize within the exponent caps")
    return J


def decomposition_check(I: IdealHandle, cfg: ClosureConfig = ClosureConfig()) -> bool:
    """Does ``I^F == I + I^Fsp`` hold?  Both sides are computed independently."""
    closure, cert = frobenius_closure(I, cfg)
    if cert.capped:
        raise CapExceededError(f"closure of {I} did not stabilize by e_max={cfg.e_max}")
    return closure == ideal_sum(I, special_part(I, cfg))

"""F-spread and minimal Frobenius reductions modulo a fixed ideal J.

All questions are answered in fixed coordinates of the k-vector space
``V0 = I/(mI + J)``.  Two subspaces matter:

* the image of a candidate ``K = (J, f_1, ..., f_k)``, spanned by the f_i;
* the image ``Wsp`` of the special part ``I^Fsp``.

``K`` is a minimal reduction exactly when it has ``l = dim V0 - dim Wsp``
generators whose span meets ``Wsp`` trivially, and that is also what
``I == I^Fsp + K`` says.  Both forms are evaluated and must agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import fp_linear
from .fp_linear import SubspaceBasis
from .frobenius import (
    ClosureConfig,
    CapExceededError,
    in_frobenius_closure,
    is_frobenius_closed,
    special_part,
)
from .groebner import (
    IdealHandle,
    NonHomogeneousError,
    RingMismatchError,
    bracket_power,
    contains,
    equal,
    ideal_product,
    ideal_sum,
    membership,
    normal_form,
    standard_monomials,
)
from .poly import Monomial, Polynomial


class HypothesisError(ValueError):
    """Input violates a standing hypothesis (containment, closedness, homogeneity)."""


class TheoremViolationError(RuntimeError):
    """Two routes that must agree did not; points at a cap artifact or a bug."""


class SpreadMismatchError(TheoremViolationError):
    pass


class CannotExtendError(ValueError):
    """The partial system meets the special part outside mI + J."""


class NoSwapError(ValueError):
    """No generator of the reduction can be replaced by the given element."""

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


class ReductionScene:
    """A pair ``J ⊆ I`` of Frobenius-closed ideals with cached special part and coordinates."""

    def __init__(self, J: IdealHandle, I: IdealHandle, cfg: ClosureConfig = ClosureConfig(), *,
                 special: IdealHandle | None = None):
        if J.ring is not I.ring:
            raise RingMismatchError("J and I live in different rings")
        for name, X in (("J", J), ("I", I)):
            if not X.is_homogeneous():
                raise NonHomogeneousError(f"{name} = {X} is not homogeneous")
        if not contains(I, J):
            raise HypothesisError(f"J = {J} is not contained in I = {I}")
        for name, X in (("J", J), ("I", I)):
            if not is_frobenius_closed(X, cfg):
                raise HypothesisError(f"{name} = {X} is not Frobenius closed")
        self.ring = I.ring
        self.J = J
        self.I = I
        self.cfg = cfg
        self.p = I.ring.p
        self.m = I.ring.maximal_ideal()
        self.special = special if special is not None else special_part(I, cfg)
        self.mI_J = ideal_sum(ideal_product(self.m, I), J)
        self._build_coordinates()

    def _build_coordinates(self):
        degrees = sorted({g.degree() for g in self.I.gens})
        self.coordinate_monomials: list[tuple[int, Monomial]] = []
        self._slot: dict[Monomial, int] = {}
        for d in degrees:
            inside_I = set(standard_monomials(self.I, d))
            for mono in standard_monomials(self.mI_J, d):
                if mono not in inside_I:
                    self._slot[mono] = len(self.coordinate_monomials)
                    self.coordinate_monomials.append((d, mono))
        self.dim_V0 = len(self.coordinate_monomials)
        n = self.dim_V0
        spanning = [self.coords(g) for g in self.I.gens]
        if fp_linear.rank(spanning, self.p, n) != n:
            raise TheoremViolationError("generators of I do not span I/(mI+J)")
        sp_vectors = [self.coords(h) for h in self.special.gens]
        self.special_basis = SubspaceBasis(n, tuple(fp_linear.row_basis(sp_vectors, self.p, n)))
        self.dim_special = len(self.special_basis)
        self.spread = n - self.dim_special

    def coords(self, f: Polynomial) -> tuple[int, ...]:
        """Coordinates of the image of ``f`` (an element of I) in ``I/(mI+J)``.

        For f in I the normal form modulo mI + J is determined by its
        coefficients on the coordinate monomials; other monomials are ignored.
        """
        v = [0] * self.dim_V0
        for h in f.homogeneous_components().values():
            nf = normal_form(h, self.mI_J)
            for mono, c in nf.coeffs.items():
                slot = self._slot.get(mono)
                if slot is not None:
                    v[slot] = c
        return tuple(v)

    def lift(self, v: Sequence[int]) -> Polynomial:
        """An element of I whose image in ``I/(mI+J)`` is ``v``.

        Coordinate u lifts to ``u - NF_I(u)``, which lies in I.
        """
        S = self.ring.ambient
        out = S.zero()
        for (d, mono), c in zip(self.coordinate_monomials, v):
            if c:
                u = S.monomial(mono)
                out = out + (u - normal_form(u, self.I)).scale(c)
        return out

    def images(self, fs: Sequence[Polynomial]) -> list[tuple[int, ...]]:
        return [self.coords(f) for f in fs]

    def generator_ideal(self, fs: Sequence[Polynomial]) -> IdealHandle:
        return IdealHandle(self.ring, self.J.gens + tuple(fs))

    def __repr__(self):
        return f"ReductionScene(J={self.J}, I={self.I}, l={self.spread})"


@dataclass(frozen=True)
class ReductionCandidate:
    """``K = (J, f_1, ..., f_k)`` with the f_i independent in ``I/(mI+J)``."""

    scene: ReductionScene
    fs: tuple[Polynomial, ...]

    def __post_init__(self):
        fs = tuple(self.fs)
        object.__setattr__(self, "fs", fs)
        if not independent_images(self.scene, fs):
            raise HypothesisError("images of the generators are not linearly independent in I/(mI+J)")

    @property
    def ideal(self) -> IdealHandle:
        return self.scene.generator_ideal(self.fs)

    def __len__(self):
        return len(self.fs)


def independent_images(scene: ReductionScene, fs: Sequence[Polynomial]) -> bool:
    for f in fs:
        if not membership(f, scene.I):
            return False
    vectors = scene.images(fs)
    return fp_linear.rank(vectors, scene.p, scene.dim_V0) == len(fs)


def bracket_generator_count(scene: ReductionScene, e: int) -> int:
    """``dim I^[q] / (m I^[q] + J^[q])``: minimal generators of I^[q] modulo J^[q]."""
    R = scene.ring
    Iq = bracket_power(scene.I, e)
    target = ideal_sum(ideal_product(R.maximal_ideal(), Iq), bracket_power(scene.J, e))
    by_degree: dict[int, list] = {}
    for g in Iq.gens:
        by_degree.setdefault(g.degree(), []).append(normal_form(g, target))
    total = 0
    for polys in by_degree.values():
        monos = sorted({m for f in polys for m in f.coeffs})
        rows = [[f.coefficient(m) for m in monos] for f in polys]
        total += fp_linear.rank(rows, scene.p, len(monos))
    return total


def f_spread(scene: ReductionScene, cross_check: bool = True) -> int:
    """``l = dim I/(mI+J) - dim (I^Fsp+J)/(mI+J)``.

    With ``cross_check`` the value is compared with the number of minimal
    generators of ``I^[q]`` modulo ``J^[q]`` at ``e_max - 1`` and ``e_max``.
    """
    l = scene.spread
    if cross_check:
        for e in (scene.cfg.e_max - 1, scene.cfg.e_max):
            count = bracket_generator_count(scene, e)
            if count != l:
                raise SpreadMismatchError(
                    f"spread {l} disagrees with {count} generators of the bracket power at e={e}"
                )
    return l


def is_star_independent(scene: ReductionScene, fs: Sequence[Polynomial]) -> bool:
    """Each f_i lies outside the Frobenius closure of J plus the others."""
    for i, f in enumerate(fs):
        rest = scene.generator_ideal(fs[:i] + fs[i + 1 :])
        if in_frobenius_closure(f, rest, scene.cfg):
            return False
    return True


def meets_special_trivially(scene: ReductionScene, fs: Sequence[Polynomial]) -> bool:
    """Condition (b): ``I^Fsp ∩ (J, fs) ⊆ mI + J``, as a subspace test."""
    return fp_linear.intersects_trivially(
        scene.images(fs), list(scene.special_basis.vectors), scene.p, scene.dim_V0
    )


def generates_with_special(scene: ReductionScene, fs: Sequence[Polynomial]) -> bool:
    """Condition (c): ``I == I^Fsp + (J, fs)``, via reduced bases."""
    return equal(scene.I, ideal_sum(scene.special, scene.generator_ideal(fs)))


def is_minimal_reduction(scene: ReductionScene, K: ReductionCandidate | Sequence[Polynomial]) -> bool:
    fs = K.fs if isinstance(K, ReductionCandidate) else tuple(K)
    if len(fs) != scene.spread or not independent_images(scene, fs):
        return False
    b = meets_special_trivially(scene, fs)
    c = generates_with_special(scene, fs)
    if b != c:
        raise TheoremViolationError(f"conditions (b)={b} and (c)={c} disagree for {fs}")
    return b


def is_minimal_reduction_by_definition(scene: ReductionScene, fs: Sequence[Polynomial]) -> bool:
    """Check ``I ⊆ K^F`` and Frobenius independence directly by closure membership."""
    K = scene.generator_ideal(fs)
    for g in scene.I.gens:
        if not in_frobenius_closure(g, K, scene.cfg):
            return False
    return is_star_independent(scene, tuple(fs))


def minimal_reduction(scene: ReductionScene) -> ReductionCandidate:
    n = scene.dim_V0
    complement = fp_linear.complement_basis(SubspaceBasis(n, ()), scene.special_basis, scene.p)
    return ReductionCandidate(scene, tuple(scene.lift(v) for v in complement))


def extend_to_reduction(scene: ReductionScene, partial: ReductionCandidate | Sequence[Polynomial]) -> ReductionCandidate:
    fs = partial.fs if isinstance(partial, ReductionCandidate) else tuple(partial)
    if len(fs) > scene.spread:
        raise CannotExtendError(f"{len(fs)} generators exceed the spread {scene.spread}")
    if not independent_images(scene, fs):
        raise HypothesisError("partial system is not part of a minimal generating set of I/J")
    W = SubspaceBasis(scene.dim_V0, tuple(scene.images(fs)))
    try:
        extra = fp_linear.complement_basis(W, scene.special_basis, scene.p)
    except fp_linear.ComplementError:
        raise CannotExtendError("the partial system meets the special part outside mI + J") from None
    return ReductionCandidate(scene, fs + tuple(scene.lift(v) for v in extra))


def swap_generator(scene: ReductionScene, K: ReductionCandidate, f: Polynomial) -> tuple[int, ReductionCandidate]:
    """Replace some f_i by f so the result is again a minimal reduction.

    Indices are tried in ascending order.  If f lies in the special part (or
    in J + I^Fsp, where its image in I/(mI+J) is already special) no swap can
    exist and :class:`NoSwapError` is raised.
    """
    if not membership(f, scene.I):
        raise HypothesisError(f"{f} is not in I")
    if membership(f, scene.special):
        raise NoSwapError(f"{f} lies in the special part", reason="special")
    v = scene.coords(f)
    if fp_linear.in_span(v, scene.special_basis.vectors, scene.p):
        raise NoSwapError(f"{f} lies in J + I^Fsp", reason="J+special")
    for i in range(len(K.fs)):
        trial = K.fs[:i] + (f,) + K.fs[i + 1 :]
        vectors = scene.images(trial)
        if fp_linear.rank(vectors, scene.p, scene.dim_V0) != len(trial):
            continue
        if meets_special_trivially(scene, trial):
            return i, ReductionCandidate(scene, trial)
    raise TheoremViolationError(f"no generator of {K.fs} can be swapped for {f}")


def candidate_vectors(scene: ReductionScene, size: int):
    """All unordered sets of ``size`` independent vectors of ``I/(mI+J)`` (test oracle scale)."""
    n = scene.dim_V0
    nonzero = [v for v in itertools.product(range(scene.p), repeat=n) if any(v)]
    for combo in itertools.combinations(nonzero, size):
        if fp_linear.rank(list(combo), scene.p, n) == size:
            yield combo

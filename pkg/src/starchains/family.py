"""Adjacent Frobenius-closed ideals and unit-length chains.

For closed ``J ⊆ I`` the closed ideals ``I'`` with ``J ⊆ I' ⊆ I`` and
``λ(I/I') = 1`` are exactly ``J + I^Fsp + (lifts of a hyperplane of V)``
where ``V = I/(J + I^Fsp)`` has dimension equal to the F-spread l.  They are
listed by the normal covector of the hyperplane, normalized so its first
nonzero entry is 1, in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fp_linear
from .frobenius import ClosureConfig, is_frobenius_closed
from .groebner import (
    IdealHandle,
    colength,
    contains,
    equal,
    ideal_sum,
    is_m_primary,
)
from .reduction import (
    HypothesisError,
    ReductionScene,
    TheoremViolationError,
    minimal_reduction,
)

MAX_BRUTE_FORCE_CANDIDATES = 2**10


@dataclass
class AdjacentFamily:
    scene: ReductionScene
    members: list[IdealHandle] = field(default_factory=list)
    parameters: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(zip(self.parameters, self.members))


@dataclass
class ClosedChain:
    links: list[IdealHandle]

    def __len__(self):
        return len(self.links) - 1


def colength_gap(scene: ReductionScene, sub: IdealHandle) -> int:
    """``λ(I/I')`` for ``mI + J ⊆ I' ⊆ I``, read off in ``I/(mI+J)``."""
    vectors = scene.images(sub.gens)
    return scene.dim_V0 - fp_linear.rank(vectors, scene.p, scene.dim_V0)


def _member(scene: ReductionScene, reduction_vectors, hyperplane) -> IdealHandle:
    p = scene.p
    n = scene.dim_V0
    fs = []
    for h in hyperplane.vectors:
        v = [0] * n
        for coeff, c in zip(h, reduction_vectors):
            if coeff:
                v = [(a + coeff * b) % p for a, b in zip(v, c)]
        fs.append(scene.lift(v))
    return IdealHandle(scene.ring, scene.J.gens + tuple(fs) + scene.special.gens)


def _verify_member(scene: ReductionScene, member: IdealHandle):
    if not contains(scene.I, member):
        raise TheoremViolationError(f"family member {member} is not inside I")
    if colength_gap(scene, member) != 1:
        raise TheoremViolationError(f"family member {member} does not have colength gap 1")
    if is_m_primary(scene.I) and colength(member) - colength(scene.I) != 1:
        raise TheoremViolationError(f"colength count disagrees for family member {member}")
    if not is_frobenius_closed(member, scene.cfg):
        raise TheoremViolationError(f"family member {member} is not Frobenius closed")


def _check_dim_V(scene: ReductionScene):
    if not (is_m_primary(scene.I) and is_m_primary(scene.J)):
        return
    base = ideal_sum(scene.J, scene.special)
    dim_V = colength(base) - colength(scene.I)
    if dim_V != scene.spread:
        raise TheoremViolationError(f"dim I/(J+I^Fsp) = {dim_V} but the spread is {scene.spread}")


def adjacent_family(scene: ReductionScene, verify: bool = True, limit: int | None = None) -> AdjacentFamily:
    """All closed ``I'`` between J and I with ``λ(I/I') = 1``, one per point of ``P(V*)``.

    ``limit`` stops after that many members (the chain builder needs one).
    """
    fam = AdjacentFamily(scene)
    l = scene.spread
    if l == 0:
        return fam
    _check_dim_V(scene)
    K = minimal_reduction(scene)
    reduction_vectors = scene.images(K.fs)
    covectors = fp_linear.normalized_covectors(l, scene.p)
    for covector in covectors:
        hyperplane = fp_linear.kernel_basis([list(covector)], scene.p, l)
        member = _member(scene, reduction_vectors, hyperplane)
        if verify:
            _verify_member(scene, member)
        fam.members.append(member)
        fam.parameters.append(covector)
        if limit is not None and len(fam.members) >= limit:
            break
    return fam


def family_count_check(fam: AdjacentFamily) -> bool:
    """``|F(J,I)| == (p^l - 1)/(p - 1)`` and the members are pairwise distinct."""
    p = fam.scene.p
    l = fam.scene.spread
    expected = (p**l - 1) // (p - 1)
    if len(fam.members) != expected:
        return False
    bases = {m.gb for m in fam.members}
    return len(bases) == len(fam.members)


def brute_force_family(scene: ReductionScene, max_candidates: int = MAX_BRUTE_FORCE_CANDIDATES) -> list[IdealHandle]:
    """Filter every hyperplane of ``I/(mI+J)`` by Frobenius closedness.

    Independent of the special part: each candidate is ``lift(W) + mI + J``.
    """
    n = scene.dim_V0
    if n == 0:
        return []
    p = scene.p
    count = (p**n - 1) // (p - 1)
    if count > max_candidates:
        raise ValueError(f"{count} candidate hyperplanes exceed the limit {max_candidates}")
    out = []
    for hyperplane in fp_linear.enumerate_hyperplanes(n, p):
        lifts = tuple(scene.lift(v) for v in hyperplane.vectors)
        candidate = IdealHandle(scene.ring, scene.mI_J.gens + lifts)
        if is_frobenius_closed(candidate, scene.cfg):
            out.append(candidate)
    return out


def same_ideal_sets(a: list[IdealHandle], b: list[IdealHandle]) -> bool:
    return {x.gb for x in a} == {x.gb for x in b}


def build_chain(scene: ReductionScene) -> ClosedChain:
    """``J = I_0 ⊂ I_1 ⊂ ... ⊂ I_n = I``, closed links with unit colength steps.

    Descends from I, taking the first family member at each step and keeping
    J fixed.
    """
    J, I, cfg = scene.J, scene.I, scene.cfg
    if not (is_m_primary(J) and is_m_primary(I)):
        raise HypothesisError("chains need m-primary J and I")
    expected = colength(J) - colength(I)
    links = [I]
    current = scene
    while not equal(current.I, J):
        if len(links) > expected:
            raise TheoremViolationError("chain is longer than the colength gap")
        fam = adjacent_family(current, verify=True, limit=1)
        if not fam.members:
            raise TheoremViolationError(f"empty family between {J} and {current.I}")
        nxt = fam.members[0]
        links.append(nxt)
        current = ReductionScene(J, nxt, cfg)
    links.reverse()
    chain = ClosedChain(links)
    if len(chain) != expected:
        raise TheoremViolationError(f"chain length {len(chain)} differs from colength gap {expected}")
    return chain


def check_chain(chain: ClosedChain, cfg: ClosureConfig = ClosureConfig()) -> bool:
    links = chain.links
    for a, b in zip(links, links[1:]):
        if not contains(b, a) or colength(a) - colength(b) != 1:
            return False
    return all(is_frobenius_closed(x, cfg) for x in links)

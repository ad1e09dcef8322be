"""Dense exact linear algebra over a prime field F_p.

Matrices are plain lists of rows (lists of ints in ``[0, p)``).  Everything
here is small, so the routines favour determinism over speed: pivots are
always chosen in column order, complements and hyperplanes are enumerated in
a fixed order, so downstream outputs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class ComplementError(ValueError):
    """span(W) meets span(U) nontrivially, so no complement extension exists."""


@dataclass(frozen=True)
class SubspaceBasis:
    ambient_dim: int
    vectors: tuple[Vector, ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vector {v} has length {len(v)}, expected {self.ambient_dim}")

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)


def _inverse(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rref(matrix: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``matrix`` over F_p.

    Returns ``(R, pivots)``.  ``R`` keeps the original number of rows; zero
    rows sink to the bottom.  ``ncols`` is only needed for matrices with no
    rows.
    """
    rows = [[int(x) % p for x in r] for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pivot = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r]
        inv = _inverse(lead[c], p)
        if inv != 1:
            lead = [(x * inv) % p for x in lead]
            rows[r] = lead
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    rows[i] = [(a - f * b) % p for a, b in zip(row, lead)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> int:
    return len(rref(matrix, p, ncols)[1])


def row_basis(vectors: Iterable[Sequence[int]], p: int, ncols: int) -> list[Vector]:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    reduced, pivots = rref(list(vectors), p, ncols)
    return [tuple(reduced[i]) for i in range(len(pivots))]


def kernel_basis(matrix: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> SubspaceBasis:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(matrix, p, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row_idx, pc in enumerate(pivots):
            v[pc] = (-reduced[row_idx][free]) % p
        basis.append(tuple(v))
    return SubspaceBasis(ncols, tuple(basis))


def in_span(vector: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    n = len(vector)
    return rank(list(basis) + [list(vector)], p, n) == rank(list(basis), p, n)


def coordinates(vector: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> Vector:
    """Coefficients expressing ``vector`` in the (independent) ``basis``.

    Raises ``ValueError`` if the vector is outside the span.
    """
    k = len(basis)
    n = len(vector)
    # solve sum c_i b_i = v via the augmented transpose
    aug = [[basis[i][j] for i in range(k)] + [vector[j]] for j in range(n)]
    reduced, pivots = rref(aug, p, k + 1)
    if k in pivots:
        raise ValueError("vector is not in the span of the basis")
    coeffs = [0] * k
    for row_idx, pc in enumerate(pivots):
        coeffs[pc] = reduced[row_idx][k]
    return tuple(coeffs)


def intersects_trivially(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int, ncols: int) -> bool:
    ra = rank(a, p, ncols)
    rb = rank(b, p, ncols)
    return rank(list(a) + list(b), p, ncols) == ra + rb


def complement_basis(W: SubspaceBasis, U: SubspaceBasis, p: int) -> SubspaceBasis:
    """Standard basis vectors extending ``W`` to a complement of ``U``.

    The result ``C`` satisfies ``span(W + C) (+) span(U) = F_p^n``.  Standard
    vectors are tried in index order, so the choice is deterministic.
    """
    n = W.ambient_dim
    if U.ambient_dim != n:
        raise ValueError("W and U live in different ambient spaces")
    current = list(W.vectors) + list(U.vectors)
    r = rank(current, p, n)
    if r != len(current):
        raise ComplementError("span(W) and span(U) intersect nontrivially (or a basis is dependent)")
    chosen = []
    for i in range(n):
        if r == n:
            break
        e = [0] * n
        e[i] = 1
        trial = current + [e]
        if rank(trial, p, n) > r:
            current = trial
            chosen.append(tuple(e))
            r += 1
    return SubspaceBasis(n, tuple(chosen))


def normalized_covectors(dim: int, p: int) -> list[Vector]:
    """Projective points of F_p^dim: vectors whose first nonzero entry is 1.

    Sorted lexicographically, e.g. ``(0,1), (1,0), (1,1)`` for ``dim=2, p=2``.
    """
    out = []
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    out.sort()
    return out


def enumerate_hyperplanes(dim: int, p: int) -> list[SubspaceBasis]:
    """All codimension-one subspaces of F_p^dim, ordered by normal covector."""
    if dim < 1:
        raise ValueError("hyperplanes need dim >= 1")
    if p ** dim > 2**62:
        raise OverflowError(f"p^dim = {p}^{dim} is too large to enumerate")
    return [kernel_basis([list(c)], p, dim) for c in normalized_covectors(dim, p)]

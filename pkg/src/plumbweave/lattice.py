"""The middle homology lattice of a plumbing fiber.

The fiber of every fibration produced here is a plumbing of sphere cotangent
bundles along a tree pattern, so its middle homology is free on one class
``L_w`` per pattern vertex.  This module carries:

* the (anti)symmetric intersection pairing on that lattice — symmetric with
  diagonal ``s`` (default -2) when the spheres are even dimensional,
  antisymmetric with zero diagonal when odd, off-diagonal ``±1`` exactly on
  pattern edges;
* the homological twist action ``x -> x + eps * <x, l> * l`` of a Dehn twist
  around a sphere with class ``l``, including exact integer inverses;
* exact Smith normal form over the integers, the workhorse behind all
  homology computations.

Signs are not canonical; they live in a :class:`Convention` record that each
report embeds.  With the defaults (``s=-2, eps=+1``) the twist around a class
of square -2 is an involution, which is what the plumbing moves rely on.

A cycle class is a plain tuple of ints in the basis order of its form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadDimension,
    DimensionMismatch,
    FormatError,
    NonInvertibleTwist,
)
from .treecore import QuotientData, UnrootedTree

__all__ = [
    "Convention",
    "DEFAULT_CONVENTION",
    "IntersectionForm",
    "pattern_form",
    "intersection_form",
    "dehn_twist",
    "SmithResult",
    "smith_normal_form",
]

CycleClass = tuple  # integer coordinate vector in the basis of a form


@dataclass(frozen=True)
class Convention:
    """Sign choices: sphere self-intersection, edge sign, and twist sign."""

    self_intersection: int = -2
    edge_sign: int = 1
    twist_sign: int = 1

    def __post_init__(self):
        if self.edge_sign not in (1, -1) or self.twist_sign not in (1, -1):
            raise FormatError("edge_sign and twist_sign must be +1 or -1")

    def as_dict(self) -> dict:
        return {
            "self_intersection": self.self_intersection,
            "edge_sign": self.edge_sign,
            "twist_sign": self.twist_sign,
        }


DEFAULT_CONVENTION = Convention()

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True)
class IntersectionForm:
    """Intersection pairing on the fiber lattice, basis = pattern vertices."""

    basis: tuple[str, ...]
    pairing: tuple[tuple[int, ...], ...]
    parity: str
    convention: Convention

    def index(self, w: str) -> int:
        return self.basis.index(w)

    def basis_vector(self, w: str) -> CycleClass:
        i = self.index(w)
        return tuple(1 if j == i else 0 for j in range(len(self.basis)))

    def pair(self, x: CycleClass, y: CycleClass) -> int:
        """Evaluate <x, y> = x^T B y."""
        if len(x) != len(self.basis) or len(y) != len(self.basis):
            raise DimensionMismatch(
                f"vectors of length {len(x)}, {len(y)} against rank {len(self.basis)}"
            )
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.pairing[i]
                total += xi * sum(r * yj for r, yj in zip(row, y))
        return total


def pattern_form(
    pattern: UnrootedTree, sphere_dim: int, convention: Convention = DEFAULT_CONVENTION
) -> IntersectionForm:
    """Intersection form of a plumbing of ``sphere_dim``-spheres along a tree.

    Symmetric iff ``sphere_dim`` is even.  For an edge whose endpoints are
    the i-th and j-th basis vertices with i < j, entry (i, j) gets
    ``edge_sign`` and (j, i) gets ``±edge_sign`` by parity.
    """
    if sphere_dim < 1:
        raise BadDimension(f"sphere dimension {sphere_dim} below 1")
    parity = SYMMETRIC if sphere_dim % 2 == 0 else ANTISYMMETRIC
    r = len(pattern.vertices)
    diag = convention.self_intersection if parity == SYMMETRIC else 0
    mat = [[diag if i == j else 0 for j in range(r)] for i in range(r)]
    pos = {v: i for i, v in enumerate(pattern.vertices)}
    for a, b in pattern.edges:
        i, j = pos[a], pos[b]
        if i > j:
            i, j = j, i
        mat[i][j] = convention.edge_sign
        mat[j][i] = convention.edge_sign if parity == SYMMETRIC else -convention.edge_sign
    return IntersectionForm(
        basis=pattern.vertices,
        pairing=tuple(tuple(row) for row in mat),
        parity=parity,
        convention=convention,
    )


def intersection_form(
    qd: QuotientData, n: int, convention: Convention = DEFAULT_CONVENTION
) -> IntersectionForm:
    """Form on the fiber lattice of the dimension-n plumbing: the fiber is a
    plumbing of (n-1)-spheres along the quotient tree."""
    if n < 2:
        raise BadDimension(f"total-space parameter n={n} below 2")
    return pattern_form(qd.quotient_tree, n - 1, convention)


def dehn_twist(
    form: IntersectionForm, l: CycleClass, x: CycleClass, power: int = 1
) -> CycleClass:
    """Apply the homological twist around ``l`` to ``x``, ``power`` times.

    One application sends x to x + eps*<x,l>*l with eps the convention's
    twist sign.  Negative powers invert; the inverse is again of twist shape
    with coefficient -eps - <l,l>, which is an integer automorphism exactly
    when eps*<l,l> is 0 or -2 (transvection resp. reflection).
    """
    r = len(form.basis)
    if len(l) != r or len(x) != r:
        raise DimensionMismatch(
            f"twist on vectors of length {len(l)}, {len(x)} against rank {r}"
        )
    eps = form.convention.twist_sign
    if power >= 0:
        coeff, reps = eps, power
    else:
        s = form.pair(l, l)
        if eps * s not in (0, -2):
            raise NonInvertibleTwist(
                f"twist with eps={eps} around a class of square {s} has no integer inverse"
            )
        coeff, reps = -eps - s, -power
    for _ in range(reps):
        c = form.pair(x, l)
        if c:
            x = tuple(xi + coeff * c * li for xi, li in zip(x, l))
    return x


@dataclass(frozen=True)
class SmithResult:
    """Elementary divisors and the derived ranks of an integer matrix."""

    divisors: tuple[int, ...]
    rank: int
    kernel_rank: int
    cokernel: tuple[int, tuple[int, ...]]  # (free rank, torsion orders)


def smith_normal_form(mat) -> SmithResult:
    """Exact Smith normal form of an integer matrix (rows of equal length).

    Returns the nonzero elementary divisors d_1 | d_2 | ..., the rank, the
    kernel rank of the matrix as a map on column vectors, and the cokernel
    as (free rank, torsion orders).  Arithmetic is exact for any magnitude.
    """
    a = [list(map(int, row)) for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    for row in a:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")

    divisors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        piv = _pick_pivot(a, t, nrows, ncols)
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for r in range(nrows):
                a[r][t], a[r][j0] = a[r][j0], a[r][t]
        while True:
            _clear_pivot(a, t, nrows, ncols)
            d = a[t][t]
            bad = _non_divisible_row(a, t, d, nrows, ncols)
            if bad is None:
                break
            for j in range(t, ncols):  # fold the bad row in; re-clearing gcd-reduces
                a[t][j] += a[bad][j]
        divisors.append(abs(a[t][t]))
        t += 1

    rank = len(divisors)
    torsion = tuple(d for d in divisors if d != 1)
    return SmithResult(
        divisors=tuple(divisors),
        rank=rank,
        kernel_rank=ncols - rank,
        cokernel=(nrows - rank, torsion),
    )


def _pick_pivot(a, t, nrows, ncols):
    """Nonzero entry of smallest magnitude in the trailing submatrix."""
    piv = None
    best = None
    for i in range(t, nrows):
        row = a[i]
        for j in range(t, ncols):
            v = row[j]
            if v and (best is None or abs(v) < best):
                best = abs(v)
                piv = (i, j)
                if best == 1:
                    return piv
    return piv


def _clear_pivot(a, t, nrows, ncols):
    """Zero out column t below and row t right of the pivot at (t, t)."""
    while True:
        for i in range(t + 1, nrows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, ncols):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                break
        else:
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for i in range(t, nrows):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                    break
            else:
                return


def _non_divisible_row(a, t, d, nrows, ncols):
    for i in range(t + 1, nrows):
        row = a[i]
        for j in range(t + 1, ncols):
            if row[j] % d:
                return i
    return None

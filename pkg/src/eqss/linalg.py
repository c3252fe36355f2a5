"""Exact linear algebra over the rationals.

Everything downstream (cochain complexes, spectral sequence pages, fixed
subspaces of finite group actions) reduces to ranks, kernels and canonical
subspace bases computed here.  All arithmetic is exact: entries are
``fractions.Fraction`` and elimination is done by integer cross-multiplication
after clearing denominators, so no tolerance ever enters.

Canonical form: every subspace is represented by the reduced row echelon
basis of its span (pivot entries 1, zeros above and below pivots, pivots in
increasing column order).  Reduced echelon form is unique for a given row
space, which makes subspace equality a tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "GroupBoundError",
    "RationalMatrix",
    "SubspaceBasis",
    "complement_in",
    "enumerate_group",
    "fixed_subspace",
    "image_basis",
    "intersect",
    "kernel_basis",
    "quotient_dim",
    "rank",
    "rref",
    "solve",
    "subspace_sum",
]

Vector = tuple[Fraction, ...]

# Entries larger than this trigger a gcd renormalisation of the row during
# elimination; keeps integer growth bounded without paying gcd on every step.
_GCD_THRESHOLD = 1 << 64


class GroupBoundError(RuntimeError):
    """Raised when a matrix group closure exceeds the configured bound."""


def as_fraction(x) -> Fraction:
    """Coerce int / str ('p/q') / Fraction to Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def as_vector(entries: Sequence) -> Vector:
    return tuple(as_fraction(x) for x in entries)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of exact rationals, stored as a tuple of row tuples."""

    rows: tuple[Vector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RationalMatrix":
        conv = tuple(as_vector(r) for r in rows)
        if conv:
            width = len(conv[0])
            if any(len(r) != width for r in conv):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row width")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(conv, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls(tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RationalMatrix":
        conv = [as_vector(c) for c in cols]
        if conv:
            nrows = len(conv[0])
        elif nrows is None:
            raise ValueError("empty matrix needs an explicit row count")
        return cls(tuple(tuple(c[i] for c in conv) for i in range(nrows)), len(conv))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(self.column(j) for j in range(self.ncols)), len(self.rows))

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def mul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = Fraction(0)
        out = []
        for row in self.rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(row):
                if a:
                    orow = other.rows[k]
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return RationalMatrix(tuple(out), other.ncols)

    def apply(self, vec: Sequence) -> Vector:
        v = as_vector(vec)
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        zero = Fraction(0)
        out = []
        for row in self.rows:
            s = zero
            for a, b in zip(row, v):
                if a and b:
                    s += a * b
            out.append(s)
        return tuple(out)

    def add(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
            self.ncols,
        )

    def sub(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
            self.ncols,
        )

    def scale(self, c) -> "RationalMatrix":
        f = as_fraction(c)
        return RationalMatrix(tuple(tuple(f * x for x in row) for row in self.rows), self.ncols)

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in stack")
        return RationalMatrix(self.rows + other.rows, self.ncols)

    def inverse(self) -> "RationalMatrix":
        n = self.ncols
        if len(self.rows) != n:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
               for i, row in enumerate(self.rows)]
        red, pivots = _rref_rows(aug, 2 * n)
        if list(pivots) != list(range(n)):
            raise ValueError("matrix is singular")
        return RationalMatrix(tuple(tuple(red[i][n:]) for i in range(n)), n)


def _reduce_row(row: list[int], start: int, ncols: int) -> None:
    big = 0
    for j in range(start, ncols):
        a = row[j]
        if a > big:
            big = a
        elif -a > big:
            big = -a
    if big > _GCD_THRESHOLD:
        g = 0
        for x in row:
            if x:
                g = gcd(g, x)
        if g > 1:
            for j in range(start, ncols):
                row[j] //= g


def _rref_rows(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """Reduced row echelon form. Returns (pivot rows as Fractions, pivot columns).

    Each input row is scaled to integers (this leaves the row space and the
    solution set of the homogeneous system unchanged); elimination uses
    integer cross-multiplication with occasional gcd renormalisation.
    """
    mat: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            if v:
                g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        if g:
            mat.append(ints)
    pivots: list[int] = []
    nrows = len(mat)
    rr = 0
    for c in range(ncols):
        pr = None
        for i in range(rr, nrows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[rr], mat[pr] = mat[pr], mat[rr]
        prow = mat[rr]
        pv = prow[c]
        # rows below rr have zero entries in every column before c
        for i in range(rr + 1, nrows):
            row = mat[i]
            v = row[c]
            if not v:
                continue
            for j in range(c, ncols):
                a = row[j]
                b = prow[j]
                if a or b:
                    row[j] = pv * a - v * b
            _reduce_row(row, c, ncols)
        pivots.append(c)
        rr += 1
        if rr == nrows:
            break
    # back substitution: clear entries above each pivot
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        prow = mat[k]
        pv = prow[c]
        for i in range(k):
            row = mat[i]
            v = row[c]
            if not v:
                continue
            start = pivots[i]
            for j in range(start, ncols):
                a = row[j]
                b = prow[j]
                if a or b:
                    row[j] = pv * a - v * b
            _reduce_row(row, start, ncols)
    out = []
    for i, c in enumerate(pivots):
        row = mat[i]
        pv = row[c]
        out.append([Fraction(x, pv) for x in row])
    return out, tuple(pivots)


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    red, pivots = _rref_rows(m.rows, m.ncols)
    return RationalMatrix(tuple(tuple(r) for r in red), m.ncols), pivots


def rank(m: RationalMatrix) -> int:
    """Rank over Q."""
    _, pivots = _rref_rows(m.rows, m.ncols)
    return len(pivots)


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^n held in canonical (reduced echelon) basis form.

    Two SubspaceBasis objects are equal iff they describe the same subspace.
    """

    ambient: int
    vectors: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient: int) -> "SubspaceBasis":
        conv = [as_vector(v) for v in vectors]
        for v in conv:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        red, _ = _rref_rows(conv, ambient)
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient: int) -> "SubspaceBasis":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "SubspaceBasis":
        return cls.span([_unit(ambient, i) for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix(self.vectors, self.ambient)

    def reduce(self, vec: Sequence) -> Vector:
        """Subtract the projection onto this basis using pivot elimination."""
        v = list(as_vector(vec))
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        for row in self.vectors:
            p = _pivot(row)
            if p is not None and v[p]:
                c = v[p]
                for j in range(p, self.ambient):
                    if row[j]:
                        v[j] -= c * row[j]
        return tuple(v)

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def coordinates(self, vec: Sequence) -> Vector | None:
        """Coefficients of vec in this basis, or None if vec is outside."""
        cols = list(self.vectors)
        return solve(RationalMatrix.from_columns(cols, self.ambient), vec) if cols else (
            None if any(as_vector(vec)) else ()
        )


def _pivot(row: Vector) -> int | None:
    for j, x in enumerate(row):
        if x:
            return j
    return None


def _unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def kernel_basis(m: RationalMatrix) -> SubspaceBasis:
    """Canonical basis of {x : m x = 0}."""
    red, pivots = _rref_rows(m.rows, m.ncols)
    n = m.ncols
    pivset = set(pivots)
    gens = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        gens.append(v)
    return SubspaceBasis.span(gens, n)


def image_basis(m: RationalMatrix) -> SubspaceBasis:
    """Canonical basis of the column span of m."""
    return SubspaceBasis.span([m.column(j) for j in range(m.ncols)], m.nrows)


def solve(m: RationalMatrix, b: Sequence) -> Vector | None:
    """One exact solution of m x = b (free variables set to 0), or None."""
    bv = as_vector(b)
    if len(bv) != m.nrows:
        raise ValueError("rhs length does not match row count")
    aug = [list(row) + [bv[i]] for i, row in enumerate(m.rows)]
    red, pivots = _rref_rows(aug, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][m.ncols]
    return tuple(x)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Intersection via annihilators: V = {x : N_V x = 0} with N_V = ker(V rows)."""
    if a.ambient != b.ambient:
        raise ValueError("ambient dimension mismatch")
    ann_a = kernel_basis(a.matrix()) if a.vectors else SubspaceBasis.full(a.ambient)
    ann_b = kernel_basis(b.matrix()) if b.vectors else SubspaceBasis.full(b.ambient)
    stacked = RationalMatrix(ann_a.vectors + ann_b.vectors, a.ambient)
    if not stacked.rows:
        return SubspaceBasis.full(a.ambient)
    return kernel_basis(stacked)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient != b.ambient:
        raise ValueError("ambient dimension mismatch")
    return SubspaceBasis.span(a.vectors + b.vectors, a.ambient)


def quotient_dim(space: SubspaceBasis, sub: SubspaceBasis) -> int:
    """dim(space / sub); raises if sub is not contained in space."""
    if not space.contains_subspace(sub):
        raise ValueError("quotient by a subspace that is not contained in the space")
    return space.dim - sub.dim


def complement_in(space: SubspaceBasis, sub: SubspaceBasis) -> SubspaceBasis:
    """Canonical complement of sub inside space (earliest-pivot representatives).

    The returned vectors are a basis of space modulo sub; together with sub
    they span space.
    """
    if not space.contains_subspace(sub):
        raise ValueError("complement of a subspace that is not contained in the space")
    reduced = [sub.reduce(v) for v in space.vectors]
    return SubspaceBasis.span([v for v in reduced if any(v)], space.ambient)


def enumerate_group(generators: Sequence[RationalMatrix], bound: int = 10000) -> list[RationalMatrix]:
    """All elements of the matrix group generated by `generators` (BFS).

    Raises GroupBoundError if the closure exceeds `bound` elements: the
    averaging and fixed-subspace operations only make sense for finite groups.
    """
    if not generators:
        raise ValueError("no generators")
    n = generators[0].ncols
    for g in generators:
        if g.shape != (n, n):
            raise ValueError("generators must be square matrices of equal size")
    ident = RationalMatrix.identity(n)
    seen = {ident.rows: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                prod = m.mul(g)
                if prod.rows not in seen:
                    if len(seen) >= bound:
                        raise GroupBoundError(
                            f"group closure exceeded the bound of {bound} elements"
                        )
                    seen[prod.rows] = prod
                    nxt.append(prod)
        frontier = nxt
    return list(seen.values())


def fixed_subspace(maps: Sequence[RationalMatrix], bound: int = 10000) -> SubspaceBasis:
    """{v : M v = v for every M in the group generated by `maps`}.

    Computed as the kernel of the stacked (M_i - I) over the enumerated group
    closure.  The closure enumeration doubles as a finiteness check.
    """
    if not maps:
        raise ValueError("no maps")
    n = maps[0].ncols
    group = enumerate_group(maps, bound=bound)
    rows: list[Vector] = []
    ident = RationalMatrix.identity(n)
    for m in group:
        diff = m.sub(ident)
        rows.extend(r for r in diff.rows if any(r))
    if not rows:
        return SubspaceBasis.full(n)
    return kernel_basis(RationalMatrix(tuple(rows), n))

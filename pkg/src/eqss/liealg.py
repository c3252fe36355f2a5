"""Finite-dimensional Lie algebras over Q given by structure constants.

An algebra is the data of a dimension n and the coefficient vectors of
[e_i, e_j] for 1 <= i < j <= n; antisymmetry is enforced by storing only the
i < j half.  The Jacobi identity is a checkable property, not an assumption:
`jacobi_check` reports the first violating basis triple, and the cohomology
layer refuses algebras that fail it.

Constructors for the shipped families build structure constants from honest
matrix representations (commutators of A_ij = E_ij - E_ji for so(n), of a
skew-Hermitian basis embedded over Q(i) for u(n)), so no hand-derived sign
can drift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    RationalMatrix,
    SubspaceBasis,
    Vector,
    as_vector,
    kernel_basis,
    rank,
)

__all__ = [
    "JacobiReport",
    "LieAlgebra",
    "LieAutomorphism",
    "Subalgebra",
    "abelian",
    "bracket",
    "coordinate_subalgebra",
    "is_automorphism",
    "is_subalgebra",
    "jacobi_check",
    "normalizer",
    "so_algebra",
    "su2",
    "u_algebra",
]


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra structure constants; brackets holds ((i, j), [e_i,e_j])."""

    name: str
    dim: int
    brackets: tuple[tuple[tuple[int, int], Vector], ...]

    @classmethod
    def from_brackets(cls, name: str, dim: int, table: dict | Sequence) -> "LieAlgebra":
        items = table.items() if isinstance(table, dict) else ((t[0], t[1]) for t in table)
        norm = {}
        for (i, j), coeffs in items:
            if not (1 <= i < j <= dim):
                raise ValueError(f"bracket index pair ({i},{j}) out of range for dim {dim}")
            vec = as_vector(coeffs)
            if len(vec) != dim:
                raise ValueError(f"bracket [e{i},e{j}] has {len(vec)} coefficients, expected {dim}")
            if any(vec):
                norm[(i, j)] = vec
        return cls(name, dim, tuple(sorted(norm.items())))

    def table(self) -> dict[tuple[int, int], Vector]:
        return dict(self.brackets)

    def structure(self, i: int, j: int) -> Vector:
        """[e_i, e_j] for any ordered pair, using antisymmetry."""
        if i == j:
            return tuple(Fraction(0) for _ in range(self.dim))
        tab = self.table()
        if i < j:
            return tab.get((i, j), tuple(Fraction(0) for _ in range(self.dim)))
        v = tab.get((j, i))
        if v is None:
            return tuple(Fraction(0) for _ in range(self.dim))
        return tuple(-x for x in v)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    """[x, y] extended bilinearly from the structure constants."""
    xv, yv = as_vector(x), as_vector(y)
    if len(xv) != g.dim or len(yv) != g.dim:
        raise ValueError("vector length does not match algebra dimension")
    acc = [Fraction(0)] * g.dim
    for (i, j), coeffs in g.brackets:
        c = xv[i - 1] * yv[j - 1] - xv[j - 1] * yv[i - 1]
        if c:
            for k, ck in enumerate(coeffs):
                if ck:
                    acc[k] += c * ck
    return tuple(acc)


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    witness: tuple[int, int, int] | None = None
    jacobiator: Vector | None = None


def jacobi_check(g: LieAlgebra) -> JacobiReport:
    """First basis triple (i,j,k) violating Jacobi, if any."""
    n = g.dim
    units = [tuple(Fraction(1 if t == s else 0) for t in range(n)) for s in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                a = bracket(g, bracket(g, units[i - 1], units[j - 1]), units[k - 1])
                b = bracket(g, bracket(g, units[j - 1], units[k - 1]), units[i - 1])
                c = bracket(g, bracket(g, units[k - 1], units[i - 1]), units[j - 1])
                total = tuple(x + y + z for x, y, z in zip(a, b, c))
                if any(total):
                    return JacobiReport(False, (i, j, k), total)
    return JacobiReport(True)


@dataclass(frozen=True)
class Subalgebra:
    """A subalgebra of `algebra` spanned by `basis` (canonical form)."""

    algebra: LieAlgebra
    basis: SubspaceBasis
    name: str = ""

    @classmethod
    def span(cls, g: LieAlgebra, vectors: Sequence[Sequence], name: str = "") -> "Subalgebra":
        b = SubspaceBasis.span(vectors, g.dim)
        if not is_subalgebra(g, b.vectors):
            raise ValueError(f"span is not closed under the bracket ({name or 'subalgebra'})")
        return cls(g, b, name)

    @property
    def dim(self) -> int:
        return self.basis.dim


def coordinate_subalgebra(g: LieAlgebra, indices: Sequence[int], name: str = "") -> Subalgebra:
    """Subalgebra spanned by the 1-based basis elements in `indices`."""
    vecs = []
    for i in indices:
        if not 1 <= i <= g.dim:
            raise ValueError(f"basis index {i} out of range")
        vecs.append([1 if t == i - 1 else 0 for t in range(g.dim)])
    return Subalgebra.span(g, vecs, name)


def is_subalgebra(g: LieAlgebra, vectors: Sequence[Sequence]) -> bool:
    span = SubspaceBasis.span(vectors, g.dim)
    vecs = span.vectors
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            if not span.contains(bracket(g, vecs[a], vecs[b])):
                return False
    return True


def normalizer(g: LieAlgebra, h: Subalgebra) -> SubspaceBasis:
    """{x : [x, h] is contained in h}, as a subspace of g.

    Linear in x: with N the annihilator of span(h), the conditions are
    N . [e_i, v_a] summed against the coordinates of x.
    """
    n = g.dim
    hb = h.basis
    if hb.dim == 0:
        return SubspaceBasis.full(n)
    ann = kernel_basis(hb.matrix())
    rows = []
    units = [tuple(Fraction(1 if t == s else 0) for t in range(n)) for s in range(n)]
    for v in hb.vectors:
        images = [bracket(g, units[i], v) for i in range(n)]
        for y in ann.vectors:
            row = tuple(sum(yk * img[k] for k, yk in enumerate(y) if yk) for img in images)
            rows.append(row)
    if not rows:
        return SubspaceBasis.full(n)
    result = kernel_basis(RationalMatrix(tuple(rows), n))
    assert result.contains_subspace(hb), "normalizer must contain the subalgebra"
    return result


@dataclass(frozen=True)
class LieAutomorphism:
    """An invertible bracket-preserving linear map, columns = images of e_j."""

    algebra: LieAlgebra
    matrix: RationalMatrix
    name: str = ""

    @classmethod
    def create(cls, g: LieAlgebra, matrix, name: str = "") -> "LieAutomorphism":
        m = matrix if isinstance(matrix, RationalMatrix) else RationalMatrix.from_rows(matrix)
        if m.shape != (g.dim, g.dim):
            raise ValueError("automorphism matrix shape does not match the algebra")
        if not is_automorphism(g, m):
            raise ValueError(f"matrix is not a Lie algebra automorphism of {g.name}")
        return cls(g, m, name)

    def preserves(self, h: Subalgebra) -> bool:
        return all(h.basis.contains(self.matrix.apply(v)) for v in h.basis.vectors)


def is_automorphism(g: LieAlgebra, m: RationalMatrix) -> bool:
    """Invertible and [m e_i, m e_j] = m [e_i, e_j] for all i < j."""
    if m.shape != (g.dim, g.dim):
        return False
    if rank(m) != g.dim:
        return False
    cols = m.columns()
    for i in range(1, g.dim + 1):
        for j in range(i + 1, g.dim + 1):
            lhs = bracket(g, cols[i - 1], cols[j - 1])
            rhs = m.apply(g.structure(i, j))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# constructors for the shipped families


def su2() -> LieAlgebra:
    """Cross-product basis: [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2."""
    return LieAlgebra.from_brackets(
        "su2",
        3,
        {(1, 2): [0, 0, 1], (2, 3): [1, 0, 0], (1, 3): [0, -1, 0]},
    )


def abelian(n: int, name: str | None = None) -> LieAlgebra:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return LieAlgebra.from_brackets(name or f"abelian{n}", n, {})


def so_pairs(n: int) -> list[tuple[int, int]]:
    """Lexicographic (i, j) index pairs labelling the A_ij basis of so(n)."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def so_algebra(n: int, name: str | None = None) -> LieAlgebra:
    """so(n) in the basis A_ij = E_ij - E_ji, ordered lexicographically.

    For n = 3 this differs from the cross-product basis by signs; use su2()
    (or the shipped so3 alias) when the cross-product convention is wanted.
    """
    if n < 2:
        return abelian(0, name or f"so{n}")
    pairs = so_pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    dim = len(pairs)

    def commute(p, q):
        # [A_ij, A_kl] via matrix entries of the commutator, which is skew:
        # (E_ij - E_ji)(E_kl - E_lk) - (E_kl - E_lk)(E_ij - E_ji)
        (i, j), (k, l) = p, q
        terms = {}
        for (a, b, s1) in [(i, j, 1), (j, i, -1)]:
            for (c, d, s2) in [(k, l, 1), (l, k, -1)]:
                if b == c:
                    terms[(a, d)] = terms.get((a, d), 0) + s1 * s2
                if d == a:
                    terms[(c, b)] = terms.get((c, b), 0) - s1 * s2
        # terms is the full (skew) commutator matrix; the A_ab coordinate is
        # its upper entry, so read a < b only
        coeffs = [Fraction(0)] * dim
        for (a, b), c in terms.items():
            if c and a < b:
                coeffs[index[(a, b)]] += c
        return coeffs

    table = {}
    for x in range(dim):
        for y in range(x + 1, dim):
            coeffs = commute(pairs[x], pairs[y])
            if any(coeffs):
                table[(x + 1, y + 1)] = coeffs
    return LieAlgebra.from_brackets(name or f"so{n}", dim, table)


def u_basis_labels(n: int) -> list[str]:
    labels = [f"D{a}" for a in range(1, n + 1)]
    labels += [f"S{a}{b}" for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    labels += [f"T{a}{b}" for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return labels


def u_algebra(n: int, name: str | None = None) -> LieAlgebra:
    """u(n) in the skew-Hermitian basis D_a = iE_aa, S_ab = E_ab - E_ba,
    T_ab = i(E_ab + E_ba); entries computed over Q(i)."""
    if n < 1:
        raise ValueError("u(n) needs n >= 1")

    # a basis element is a complex matrix: dict (a,b) -> (re, im)
    def dmat(a):
        return {(a, a): (Fraction(0), Fraction(1))}

    def smat(a, b):
        return {(a, b): (Fraction(1), Fraction(0)), (b, a): (Fraction(-1), Fraction(0))}

    def tmat(a, b):
        return {(a, b): (Fraction(0), Fraction(1)), (b, a): (Fraction(0), Fraction(1))}

    basis = [dmat(a) for a in range(1, n + 1)]
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    basis += [smat(a, b) for a, b in pairs]
    basis += [tmat(a, b) for a, b in pairs]
    dim = len(basis)

    def cmul(x, y):
        out = {}
        for (a, b), (re1, im1) in x.items():
            for (c, d), (re2, im2) in y.items():
                if b == c:
                    re, im = out.get((a, d), (Fraction(0), Fraction(0)))
                    out[(a, d)] = (re + re1 * re2 - im1 * im2, im + re1 * im2 + im1 * re2)
        return out

    def commutator(x, y):
        xy, yx = cmul(x, y), cmul(y, x)
        out = {}
        for key in set(xy) | set(yx):
            r1, i1 = xy.get(key, (Fraction(0), Fraction(0)))
            r2, i2 = yx.get(key, (Fraction(0), Fraction(0)))
            re, im = r1 - r2, i1 - i2
            if re or im:
                out[key] = (re, im)
        return out

    def coordinates(z):
        # skew-Hermitian: diagonal purely imaginary, z_ba = -conj(z_ab)
        coeffs = [Fraction(0)] * dim
        for a in range(1, n + 1):
            re, im = z.get((a, a), (Fraction(0), Fraction(0)))
            assert re == 0, "commutator left the skew-Hermitian space"
            coeffs[a - 1] = im
        for k, (a, b) in enumerate(pairs):
            re, im = z.get((a, b), (Fraction(0), Fraction(0)))
            coeffs[n + k] = re
            coeffs[n + len(pairs) + k] = im
        return coeffs

    table = {}
    for x in range(dim):
        for y in range(x + 1, dim):
            coeffs = coordinates(commutator(basis[x], basis[y]))
            if any(coeffs):
                table[(x + 1, y + 1)] = coeffs
    return LieAlgebra.from_brackets(name or f"u{n}", dim, table)

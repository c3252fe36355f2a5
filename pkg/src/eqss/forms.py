"""Exterior forms on a Lie algebra and the Chevalley-Eilenberg differential.

Basis k-forms are wedge monomials e^{i_1} ^ ... ^ e^{i_k} with strictly
increasing 1-based indices, enumerated lexicographically.  The wedge product
uses the shuffle-sign convention (sign of the permutation sorting the
concatenated index list; a repeated index kills the term).  Contraction obeys
iota_{e_j} (e^{i_1} ^ ... ^ e^{i_k}) = (-1)^{r-1} e^{i_1} ^ ... e^{i_r} hat
... ^ e^{i_k} when j = i_r.

The differential is fixed on generators by d e^k = - sum_{i<j} c^k_{ij}
e^i ^ e^j and extended as an antiderivation; equivalently it is the evaluation
formula whose sum runs over pairs 0 <= i < j <= n of argument slots.  With
this indexing d^2 = 0 is an identity (it is rechecked at construction and a
failure aborts, since it would mean corrupted structure constants).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .liealg import LieAlgebra, LieAutomorphism, Subalgebra, jacobi_check
from .linalg import RationalMatrix, SubspaceBasis, as_vector, kernel_basis

__all__ = [
    "CeComplex",
    "ContractionError",
    "ExteriorForm",
    "basis_form",
    "ce_complex",
    "contract",
    "contract_matrix",
    "form_from_terms",
    "induced_on_forms",
    "multi_indices",
    "relative_subcomplex",
    "render_form",
    "wedge",
]


class ContractionError(ValueError):
    pass


@lru_cache(maxsize=None)
def multi_indices(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographic strictly increasing index tuples of the given degree."""
    if degree < 0 or degree > dim:
        return ()
    return tuple(combinations(range(1, dim + 1), degree))


@lru_cache(maxsize=None)
def _index_position(dim: int, degree: int) -> dict[tuple[int, ...], int]:
    return {idx: p for p, idx in enumerate(multi_indices(dim, degree))}


def sort_sign(seq: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sorted tuple and permutation sign, or None on a repeated index."""
    lst = list(seq)
    sign = 1
    # insertion sort; inversion count gives the parity
    for i in range(1, len(lst)):
        x = lst[i]
        j = i - 1
        while j >= 0 and lst[j] > x:
            lst[j + 1] = lst[j]
            j -= 1
            sign = -sign
        lst[j + 1] = x
    for a, b in zip(lst, lst[1:]):
        if a == b:
            return None
    return tuple(lst), sign


@dataclass(frozen=True)
class ExteriorForm:
    """An element of Lambda^degree of the dual of Q^dim."""

    dim: int
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        expected = len(multi_indices(self.dim, self.degree))
        if len(self.coeffs) != expected:
            raise ValueError(
                f"degree-{self.degree} form on dim {self.dim} needs "
                f"{expected} coefficients, got {len(self.coeffs)}"
            )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        idx = multi_indices(self.dim, self.degree)
        return [(idx[p], c) for p, c in enumerate(self.coeffs) if c]

    def add(self, other: "ExteriorForm") -> "ExteriorForm":
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ValueError("form shape mismatch")
        return ExteriorForm(
            self.dim, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def scale(self, c) -> "ExteriorForm":
        f = Fraction(c) if not isinstance(c, Fraction) else c
        return ExteriorForm(self.dim, self.degree, tuple(f * x for x in self.coeffs))


def zero_form(dim: int, degree: int) -> ExteriorForm:
    return ExteriorForm(dim, degree, tuple(Fraction(0) for _ in multi_indices(dim, degree)))


def form_from_terms(dim: int, degree: int, terms: dict) -> ExteriorForm:
    pos = _index_position(dim, degree)
    coeffs = [Fraction(0)] * len(pos)
    for raw_idx, c in terms.items():
        srt = sort_sign(tuple(raw_idx))
        if srt is None:
            raise ValueError(f"repeated index in {raw_idx}")
        idx, sign = srt
        if idx not in pos:
            raise ValueError(f"index tuple {raw_idx} out of range for dim {dim}")
        coeffs[pos[idx]] += sign * (c if isinstance(c, Fraction) else Fraction(c))
    return ExteriorForm(dim, degree, tuple(coeffs))


def basis_form(dim: int, indices: Sequence[int]) -> ExteriorForm:
    return form_from_terms(dim, len(tuple(indices)), {tuple(indices): 1})


def form_from_vector(dim: int, degree: int, vec: Sequence) -> ExteriorForm:
    return ExteriorForm(dim, degree, as_vector(vec))


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    if a.dim != b.dim:
        raise ValueError("wedge of forms on different algebras")
    degree = a.degree + b.degree
    if degree > a.dim:
        return ExteriorForm(a.dim, degree, ())
    pos = _index_position(a.dim, degree)
    coeffs = [Fraction(0)] * len(pos)
    for ia, ca in a.terms():
        for ib, cb in b.terms():
            srt = sort_sign(ia + ib)
            if srt is None:
                continue
            idx, sign = srt
            coeffs[pos[idx]] += sign * ca * cb
    return ExteriorForm(a.dim, degree, tuple(coeffs))


def contract(x: Sequence, form: ExteriorForm) -> ExteriorForm:
    """Interior product iota_x; errors on degree-0 input."""
    if form.degree == 0:
        raise ContractionError("cannot contract a degree-0 form")
    xv = as_vector(x)
    if len(xv) != form.dim:
        raise ValueError("vector length does not match form dimension")
    pos = _index_position(form.dim, form.degree - 1)
    coeffs = [Fraction(0)] * len(pos)
    for idx, c in form.terms():
        for r, j in enumerate(idx):
            if xv[j - 1]:
                target = idx[:r] + idx[r + 1 :]
                sign = -1 if r % 2 else 1
                coeffs[pos[target]] += sign * xv[j - 1] * c
    return ExteriorForm(form.dim, form.degree - 1, tuple(coeffs))


def contract_matrix(dim: int, x: Sequence, degree: int) -> RationalMatrix:
    """Matrix of iota_x from degree `degree` to degree-1 monomial bases."""
    cols = []
    for idx in multi_indices(dim, degree):
        cols.append(contract(x, basis_form(dim, idx)).coeffs)
    return RationalMatrix.from_columns(cols, len(multi_indices(dim, degree - 1)))


def render_form(form: ExteriorForm, labels: Sequence[str] | None = None) -> str:
    if form.is_zero():
        return "0"
    names = labels or [f"e{i}" for i in range(1, form.dim + 1)]
    parts = []
    for idx, c in form.terms():
        mono = "^".join(names[i - 1] for i in idx) if idx else "1"
        if c == 1 and idx:
            term = mono
        elif c == -1 and idx:
            term = f"-{mono}"
        else:
            term = f"{c} {mono}" if idx else str(c)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex


@dataclass(frozen=True)
class CeComplex:
    """Full exterior complex of an algebra with trivial coefficients.

    differentials[k] maps degree k to degree k+1 (k = 0..dim-1); the top
    differential is the zero map and is not stored.
    """

    algebra: LieAlgebra
    differentials: tuple[RationalMatrix, ...]

    def space_dim(self, k: int) -> int:
        return len(multi_indices(self.algebra.dim, k))

    def differential(self, k: int) -> RationalMatrix:
        n = self.algebra.dim
        if 0 <= k < n:
            return self.differentials[k]
        return RationalMatrix.zeros(self.space_dim(k + 1), self.space_dim(k))


_CE_CACHE: dict[LieAlgebra, CeComplex] = {}


def _generator_images(g: LieAlgebra) -> list[list[tuple[tuple[int, int], Fraction]]]:
    """For each generator k (1-based), the terms of d e^k = -sum c^k_ij e^i^e^j."""
    out: list[list[tuple[tuple[int, int], Fraction]]] = [[] for _ in range(g.dim + 1)]
    for (i, j), coeffs in g.brackets:
        for k, c in enumerate(coeffs, start=1):
            if c:
                out[k].append(((i, j), -c))
    return out


def _d_column(g: LieAlgebra, dgen, idx: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    """d(e^idx) as a dict target-index -> coefficient (antiderivation rule)."""
    acc: dict[tuple[int, ...], Fraction] = {}
    for r, gen in enumerate(idx):
        rest = idx[:r] + idx[r + 1 :]
        slot_sign = -1 if r % 2 else 1
        for (a, b), c in dgen[gen]:
            srt = sort_sign((a, b) + rest)
            if srt is None:
                continue
            target, sign = srt
            val = acc.get(target, Fraction(0)) + slot_sign * sign * c
            if val:
                acc[target] = val
            elif target in acc:
                del acc[target]
    return acc


def ce_complex(g: LieAlgebra) -> CeComplex:
    """Build (and cache) the full complex; validates Jacobi and d^2 = 0."""
    cached = _CE_CACHE.get(g)
    if cached is not None:
        return cached
    report = jacobi_check(g)
    if not report.ok:
        raise ValueError(
            f"algebra {g.name} violates the Jacobi identity at basis triple {report.witness}"
        )
    n = g.dim
    dgen = _generator_images(g)
    col_dicts: list[list[dict[tuple[int, ...], Fraction]]] = []
    mats = []
    for k in range(n):
        src = multi_indices(n, k)
        tgt_pos = _index_position(n, k + 1)
        cols = [_d_column(g, dgen, idx) for idx in src]
        col_dicts.append(cols)
        dense = []
        for col in cols:
            v = [Fraction(0)] * len(tgt_pos)
            for t, c in col.items():
                v[tgt_pos[t]] = c
            dense.append(v)
        mats.append(RationalMatrix.from_columns(dense, len(tgt_pos)))
    # d^2 = 0, composed at the level of column dictionaries
    for k in range(n - 1):
        nxt = {idx: col for idx, col in zip(multi_indices(n, k + 1), col_dicts[k + 1])}
        for col in col_dicts[k]:
            acc: dict[tuple[int, ...], Fraction] = {}
            for t, c in col.items():
                for u, c2 in nxt[t].items():
                    acc[u] = acc.get(u, Fraction(0)) + c * c2
            if any(acc.values()):
                raise AssertionError(f"d^2 != 0 in degree {k} for {g.name}")
    result = CeComplex(g, tuple(mats))
    _CE_CACHE[g] = result
    return result


def relative_subcomplex(g: LieAlgebra, h: Subalgebra) -> list[SubspaceBasis]:
    """Per-degree bases of {w : iota_X w = 0 and iota_X dw = 0 for X in h}.

    Constraints are imposed one at a time on a shrinking candidate space: the
    plain contractions first (cheap, and they cut the dimension down fast),
    then the contractions of dw.  Closure under d is asserted afterwards (it
    holds identically).
    """
    if h.algebra != g:
        raise ValueError("subalgebra belongs to a different algebra")
    n = g.dim
    ce = ce_complex(g)
    spaces: list[SubspaceBasis] = []
    for k in range(n + 1):
        dim_k = len(multi_indices(n, k))
        if h.basis.dim == 0 or k == 0:
            # no contraction conditions in degree 0 (d on degree 0 is zero)
            spaces.append(SubspaceBasis.full(dim_k))
            continue
        cand = SubspaceBasis.full(dim_k)
        d_k = ce.differential(k)
        for use_d in (False, True):
            if use_d and k == n:
                break
            for x in h.basis.vectors:
                if cand.dim == 0:
                    break
                cols = []
                for b in cand.vectors:
                    if use_d:
                        w = ExteriorForm(n, k + 1, d_k.apply(b))
                    else:
                        w = ExteriorForm(n, k, b)
                    cols.append(contract(x, w).coeffs)
                constraint = RationalMatrix.from_columns(cols, len(cols[0]))
                y = kernel_basis(constraint)
                if y.dim == cand.dim:
                    continue
                if cand.dim == dim_k:
                    cand = y
                    continue
                lifted = []
                for yv in y.vectors:
                    out = [Fraction(0)] * dim_k
                    for c, bv in zip(yv, cand.vectors):
                        if c:
                            for i, a in enumerate(bv):
                                if a:
                                    out[i] += c * a
                    lifted.append(out)
                cand = SubspaceBasis.span(lifted, dim_k)
        spaces.append(cand)
    for k in range(n):
        d_k = ce.differential(k)
        for v in spaces[k].vectors:
            if not spaces[k + 1].contains(d_k.apply(v)):
                raise AssertionError("relative subcomplex is not closed under d")
    return spaces


def _pullback_matrix(nmat: RationalMatrix, n: int, degree: int) -> RationalMatrix:
    tgt_pos = _index_position(n, degree)
    cols = []
    for idx in multi_indices(n, degree):
        # wedge together the image 1-forms, one generator at a time
        acc: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
        for j in idx:
            new: dict[tuple[int, ...], Fraction] = {}
            for t, c in acc.items():
                for i in range(n):
                    a = nmat.rows[i][j - 1]
                    if not a:
                        continue
                    srt = sort_sign(t + (i + 1,))
                    if srt is None:
                        continue
                    tt, sign = srt
                    new[tt] = new.get(tt, Fraction(0)) + sign * a * c
            acc = new
        v = [Fraction(0)] * len(tgt_pos)
        for t, c in acc.items():
            if c:
                v[tgt_pos[t]] = c
        cols.append(v)
    return RationalMatrix.from_columns(cols, len(tgt_pos))


def induced_on_forms(aut: LieAutomorphism, degree: int, check: bool = True) -> RationalMatrix:
    """Pullback action on degree-k forms: Lambda^k of the inverse transpose.

    Functorial (induced(ab) = induced(a) induced(b)) and commutes with the
    differential; the commutation is verified for the requested degree unless
    check is False.
    """
    g = aut.algebra
    n = g.dim
    if degree < 0 or degree > n:
        raise ValueError("degree out of range")
    nmat = aut.matrix.inverse().transpose()
    mat = _pullback_matrix(nmat, n, degree)
    if check and degree < n:
        ce = ce_complex(g)
        lhs = ce.differential(degree).mul(mat)
        rhs = _pullback_matrix(nmat, n, degree + 1).mul(ce.differential(degree))
        if lhs != rhs:
            raise AssertionError("induced action does not commute with the differential")
    return mat

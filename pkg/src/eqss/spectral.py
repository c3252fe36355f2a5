"""Spectral sequences of finite filtered cochain complexes.

A filtration is given by a nonnegative weight per basis vector; F^p is
spanned by the vectors of weight >= p, and the differential must not lower
weight.  Pages are computed from the closed-form quotient

    E_r^{p,q} = Z_r^{p,q} / (Z_r^{p,q} cap (F^{p+1} + d F^{p-r+1})),
    Z_r^{p,q} = {a in F^p C^{p+q} : da in F^{p+r} C^{p+q+1}},

which agrees with the inductive Ker/Im recursion; the recursion is also
implemented (pages_inductive) as an independent cross-check.  Every
stabilization run audits convergence: for each total degree n the E-infinity
dimensions across p+q = n must sum to dim H^n computed directly by ranks.
An audit failure means an engine bug and raises SpectralAuditError.

The product model builds base tensor relative-Chevalley-Eilenberg complexes
filtered by base degree, and twist_by_deck cuts out the subcomplex invariant
under a finite diagonal deck action, inheriting the filtration through a
weight-adapted basis of the fixed spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import GradedComplex, RelativeModel, check_chain_map, relative_model, restricted_action
from .liealg import LieAlgebra, LieAutomorphism, Subalgebra
from .linalg import (
    RationalMatrix,
    SubspaceBasis,
    Vector,
    complement_in,
    enumerate_group,
    fixed_subspace,
    intersect,
    kernel_basis,
    rank,
    solve,
    subspace_sum,
)

__all__ = [
    "DeckAction",
    "FilteredComplex",
    "FilteredComplexError",
    "Page",
    "PageEntry",
    "PageTable",
    "ProductComplex",
    "SpectralAuditError",
    "ValidationReport",
    "invariant_filtered_complex",
    "page",
    "pages_inductive",
    "product_action",
    "product_model",
    "run_to_stabilization",
    "twist_by_deck",
    "validate",
]


class FilteredComplexError(ValueError):
    pass


class SpectralAuditError(RuntimeError):
    """Convergence bookkeeping failed; this signals an engine bug."""


@dataclass(frozen=True)
class FilteredComplex:
    """A cochain complex with a basis-adapted decreasing filtration."""

    complex: GradedComplex
    weights: tuple[tuple[int, ...], ...]

    @classmethod
    def create(cls, cx: GradedComplex, weights: Sequence[Sequence[int]]) -> "FilteredComplex":
        fc = cls(cx, tuple(tuple(int(w) for w in ws) for ws in weights))
        report = validate(fc)
        if not report.ok:
            raise FilteredComplexError(report.witness)
        return fc

    @property
    def max_weight(self) -> int:
        return max((w for ws in self.weights for w in ws), default=0)

    def level_indices(self, n: int, p: int) -> tuple[int, ...]:
        """Basis indices of F^p in degree n."""
        if n < 0 or n > self.complex.top:
            return ()
        return tuple(i for i, w in enumerate(self.weights[n]) if w >= p)

    def level_space(self, n: int, p: int) -> SubspaceBasis:
        amb = self.complex.dim(n)
        idx = self.level_indices(n, p)
        vecs = []
        for i in idx:
            v = [Fraction(0)] * amb
            v[i] = Fraction(1)
            vecs.append(v)
        return SubspaceBasis.span(vecs, amb)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    witness: str | None = None


def validate(fc: FilteredComplex) -> ValidationReport:
    """Check d^2 = 0 and that d never lowers filtration weight."""
    cx = fc.complex
    ws = fc.weights
    if len(ws) != cx.top + 1:
        return ValidationReport(False, f"expected weights for {cx.top + 1} degrees, got {len(ws)}")
    for n, degree_ws in enumerate(ws):
        if len(degree_ws) != cx.dims[n]:
            return ValidationReport(
                False, f"degree {n} has {cx.dims[n]} basis vectors but {len(degree_ws)} weights"
            )
        for w in degree_ws:
            if w < 0:
                return ValidationReport(False, f"negative filtration weight in degree {n}")
    for n in range(cx.top):
        d = cx.differential(n)
        for j in range(cx.dims[n]):
            for i in range(cx.dims[n + 1]):
                if d.rows[i][j] and ws[n + 1][i] < ws[n][j]:
                    return ValidationReport(
                        False,
                        f"differential lowers filtration: degree {n} vector {j} "
                        f"(weight {ws[n][j]}) hits degree {n + 1} vector {i} "
                        f"(weight {ws[n + 1][i]})",
                    )
    for n in range(cx.top - 1):
        if not cx.differential(n + 1).mul(cx.differential(n)).is_zero():
            return ValidationReport(False, f"d^2 != 0 between degrees {n} and {n + 2}")
    return ValidationReport(True)


@dataclass(frozen=True)
class PageEntry:
    p: int
    q: int
    dim: int
    basis: tuple[Vector, ...]  # cocycle representatives in the ambient degree p+q


@dataclass(frozen=True)
class Page:
    r: int
    entries: tuple[PageEntry, ...]

    def dims(self) -> dict[tuple[int, int], int]:
        return {(e.p, e.q): e.dim for e in self.entries}

    def dim(self, p: int, q: int) -> int:
        for e in self.entries:
            if (e.p, e.q) == (p, q):
                return e.dim
        return 0

    def total_dims(self, top: int) -> tuple[int, ...]:
        sums = [0] * (top + 1)
        for e in self.entries:
            n = e.p + e.q
            if 0 <= n <= top:
                sums[n] += e.dim
        return tuple(sums)


@dataclass(frozen=True)
class PageTable:
    """All pages up to the stabilization bound, with E-infinity summary."""

    filtered: FilteredComplex
    pages: tuple[Page, ...]
    stabilized_at: int
    einf: dict
    total_cohomology: tuple[int, ...]


class _Calculator:
    """Memoized closed-form page entries for one filtered complex."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.cx = fc.complex
        self._z: dict[tuple[int, int, int], SubspaceBasis] = {}
        self._img: dict[tuple[int, int], SubspaceBasis] = {}

    def z_space(self, n: int, p: int, r: int) -> SubspaceBasis:
        key = (n, p, r)
        cached = self._z.get(key)
        if cached is not None:
            return cached
        amb = self.cx.dim(n)
        src = self.fc.level_indices(n, p)
        if not src:
            out = SubspaceBasis.zero(amb)
            self._z[key] = out
            return out
        tgt = [
            i
            for i, w in enumerate(self.fc.weights[n + 1])
            if w < p + r
        ] if n < self.cx.top else []
        if not tgt:
            out = self.fc.level_space(n, p)
        else:
            d = self.cx.differential(n)
            constraint = RationalMatrix.from_rows(
                [[d.rows[i][j] for j in src] for i in tgt], len(src)
            )
            small = kernel_basis(constraint)
            lifted = []
            for v in small.vectors:
                out_v = [Fraction(0)] * amb
                for c, j in zip(v, src):
                    out_v[j] = c
                lifted.append(out_v)
            out = SubspaceBasis.span(lifted, amb)
        self._z[key] = out
        return out

    def image_space(self, n: int, s: int) -> SubspaceBasis:
        """Span of d(F^s C^{n-1}) inside degree n; F^s = F^0 for s <= 0."""
        s = max(s, 0)
        key = (n, s)
        cached = self._img.get(key)
        if cached is not None:
            return cached
        amb = self.cx.dim(n)
        if n - 1 < 0:
            out = SubspaceBasis.zero(amb)
        else:
            d = self.cx.differential(n - 1)
            cols = [d.column(j) for j in self.fc.level_indices(n - 1, s)]
            out = SubspaceBasis.span(cols, amb)
        self._img[key] = out
        return out

    def entry(self, n: int, p: int, r: int) -> tuple[int, tuple[Vector, ...]]:
        z = self.z_space(n, p, r)
        if z.dim == 0:
            return 0, ()
        den = subspace_sum(self.fc.level_space(n, p + 1), self.image_space(n, p - r + 1))
        inner = intersect(z, den)
        reps = complement_in(z, inner)
        return reps.dim, reps.vectors


def _page_from_calc(calc: _Calculator, r: int) -> Page:
    fc = calc.fc
    entries = []
    for n in range(fc.complex.top + 1):
        for p in range(fc.max_weight + 1):
            dim, basis = calc.entry(n, p, r)
            if dim:
                entries.append(PageEntry(p, n - p, dim, basis))
    entries.sort(key=lambda e: (e.p, e.q))
    return Page(r, tuple(entries))


def page(fc: FilteredComplex, r: int) -> Page:
    """Closed-form page r; requires a valid filtered complex."""
    report = validate(fc)
    if not report.ok:
        raise FilteredComplexError(report.witness)
    if r < 0:
        raise ValueError("page index must be nonnegative")
    return _page_from_calc(_Calculator(fc), r)


def _total_cohomology(cx: GradedComplex) -> tuple[int, ...]:
    ranks = [rank(cx.differential(n)) for n in range(cx.top)]
    out = []
    for n in range(cx.top + 1):
        r_out = ranks[n] if n < cx.top else 0
        r_in = ranks[n - 1] if n > 0 else 0
        out.append(cx.dims[n] - r_out - r_in)
    return tuple(out)


def _audit_convergence(fc: FilteredComplex, einf: Page, hdims: tuple[int, ...]) -> None:
    sums = einf.total_dims(fc.complex.top)
    for n, (got, want) in enumerate(zip(sums, hdims)):
        if got != want:
            raise SpectralAuditError(
                f"convergence audit failed in degree {n}: E-infinity dimensions sum to "
                f"{got} but dim H^{n} = {want}"
            )


def run_to_stabilization(fc: FilteredComplex, max_page: int | None = None) -> PageTable:
    """Compute pages through max weight + 2 (or further) and audit convergence."""
    report = validate(fc)
    if not report.ok:
        raise FilteredComplexError(report.witness)
    calc = _Calculator(fc)
    bound = fc.max_weight + 2
    rmax = max(bound, max_page if max_page is not None else 0)
    pages = tuple(_page_from_calc(calc, r) for r in range(rmax + 1))
    einf_page = pages[fc.max_weight + 1]
    # dimensions must be non-increasing in r, and stable past the bound
    seen: dict[tuple[int, int], int] = {}
    for pg in pages:
        cur = pg.dims()
        for key, d in seen.items():
            if cur.get(key, 0) > d:
                raise SpectralAuditError(
                    f"page dimensions increased at (p,q)={key} on page {pg.r}"
                )
        seen = cur
    for r in range(fc.max_weight + 1, rmax + 1):
        if pages[r].dims() != einf_page.dims():
            raise SpectralAuditError(f"page {r} differs from the stabilized page")
    stabilized_at = fc.max_weight + 1
    while stabilized_at > 0 and pages[stabilized_at - 1].dims() == einf_page.dims():
        stabilized_at -= 1
    hdims = _total_cohomology(fc.complex)
    _audit_convergence(fc, einf_page, hdims)
    return PageTable(fc, pages, stabilized_at, einf_page.dims(), hdims)


class _ZChain:
    """Memoized spaces Z_s^p(n) = {a in F^p C^n : da in F^{p+s}}.

    Built by refining Z_{s-1} with one weight level of constraints at a
    time, so the construction never touches the closed-form window kernel.
    """

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.cx = fc.complex
        self._memo: dict[tuple[int, int, int], SubspaceBasis] = {}

    def space(self, n: int, p: int, s: int) -> SubspaceBasis:
        cx = self.cx
        if n < 0 or n > cx.top:
            return SubspaceBasis.zero(0)
        if p < 0:
            # F^p = C^n for p <= 0; only the constraint target p + s matters.
            return self.space(n, 0, p + s)
        if s <= 0:
            return self.fc.level_space(n, p)
        key = (n, p, s)
        got = self._memo.get(key)
        if got is not None:
            return got
        prev = self.space(n, p, s - 1)
        rows = [i for i, w in enumerate(self.fc.weights[n + 1]) if w == p + s - 1] if n < cx.top else []
        if prev.dim == 0 or not rows or p + s - 1 < 0:
            self._memo[key] = prev
            return prev
        d_n = cx.differential(n)
        cols = []
        for b in prev.vectors:
            w = d_n.apply(b)
            cols.append([w[i] for i in rows])
        small = kernel_basis(RationalMatrix.from_columns(cols, len(rows)))
        cur = SubspaceBasis.span(_lift_combos(small, prev.vectors, cx.dim(n)), cx.dim(n))
        self._memo[key] = cur
        return cur


def _lift_combos(small: SubspaceBasis, basis_vectors, amb: int) -> list[list[Fraction]]:
    lifted = []
    for yv in small.vectors:
        acc = [Fraction(0)] * amb
        for c, b in zip(yv, basis_vectors):
            if c:
                for i, a in enumerate(b):
                    if a:
                        acc[i] += c * a
        lifted.append(acc)
    return lifted


def pages_inductive(fc: FilteredComplex, rmax: int | None = None) -> list[dict[tuple[int, int], int]]:
    """Page dimensions by the Ker/Im recursion, for cross-checking.

    Each E_r entry is presented as N/D with N = Z_r + Z_{r-1}^{p+1} and
    D = Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}; on that presentation d_r is
    well defined, and the dimensions predicted by rank counting of d_r
    must match the next page's presentation.  A mismatch raises
    SpectralAuditError.
    """
    report = validate(fc)
    if not report.ok:
        raise FilteredComplexError(report.witness)
    cx = fc.complex
    maxw = fc.max_weight
    if rmax is None:
        rmax = maxw + 2
    zc = _ZChain(fc)

    def pair(n: int, p: int, r: int) -> tuple[SubspaceBasis, SubspaceBasis]:
        if r == 0:
            return fc.level_space(n, p), fc.level_space(n, p + 1)
        num = subspace_sum(zc.space(n, p, r), zc.space(n, p + 1, r - 1))
        den = zc.space(n, p + 1, r - 1)
        if n > 0:
            src = zc.space(n - 1, p - r + 1, r - 1)
            if src.dim:
                d_prev = cx.differential(n - 1)
                den = subspace_sum(
                    den, SubspaceBasis.span([d_prev.apply(b) for b in src.vectors], cx.dim(n))
                )
        if not num.contains_subspace(den):
            raise SpectralAuditError(f"denominator escaped the numerator at (n,p,r)=({n},{p},{r})")
        return num, den

    out: list[dict[tuple[int, int], int]] = []
    predicted: dict[tuple[int, int], int] | None = None
    pairs: dict[tuple[int, int], tuple[SubspaceBasis, SubspaceBasis]] = {}
    for r in range(rmax + 1):
        pairs = {
            (n, p): pair(n, p, r) for n in range(cx.top + 1) for p in range(maxw + 1)
        }
        dims_r = _pair_dims(pairs)
        if predicted is not None and dims_r != predicted:
            raise SpectralAuditError(
                f"Ker/Im step prediction disagrees with the page {r} presentation"
            )
        out.append(dims_r)
        if r == rmax:
            break
        reps_map = {
            key: complement_in(num, den) for key, (num, den) in pairs.items() if num.dim > den.dim
        }
        ranks: dict[tuple[int, int], int] = {}
        for (n, p), reps in reps_map.items():
            treps = reps_map.get((n + 1, p + r))
            if treps is None:
                continue
            tden = pairs[(n + 1, p + r)][1]
            solver = RationalMatrix.from_columns(
                list(treps.vectors) + list(tden.vectors), cx.dim(n + 1)
            )
            d_n = cx.differential(n)
            cols = []
            for b in reps.vectors:
                coords = solve(solver, d_n.apply(b))
                if coords is None:
                    raise SpectralAuditError("differential left the page presentation")
                cols.append(coords[: treps.dim])
            m = rank(RationalMatrix.from_columns(cols, treps.dim))
            if m:
                ranks[(n, p)] = m
        predicted = {}
        for (n, p), (num, den) in pairs.items():
            nxt = num.dim - den.dim - ranks.get((n, p), 0) - ranks.get((n - 1, p - r), 0)
            if nxt:
                predicted[(p, n - p)] = nxt
    return out


def _pair_dims(pairs) -> dict[tuple[int, int], int]:
    dims = {}
    for (n, p), (num, den) in pairs.items():
        d = num.dim - den.dim
        if d:
            dims[(p, n - p)] = d
    return dims


# ---------------------------------------------------------------------------
# Product models and deck twists


@dataclass(frozen=True)
class ProductComplex(FilteredComplex):
    """Base tensor relative-complex total complex, filtered by base degree.

    blocks[n] lists (p, q, start): coordinates start..start+size of degree n
    belong to base degree p and fiber degree q, ordered with the fiber index
    fastest.  Zero-size blocks are omitted.
    """

    base: GradedComplex = None  # type: ignore[assignment]
    fiber: RelativeModel = None  # type: ignore[assignment]
    blocks: tuple[tuple[tuple[int, int, int], ...], ...] = ()

    def block_start(self, n: int, p: int) -> int | None:
        for bp, _, start in self.blocks[n]:
            if bp == p:
                return start
        return None


def _effective_top(cx: GradedComplex) -> int:
    top = 0
    for k, d in enumerate(cx.dims):
        if d:
            top = k
    return top


def product_model(base: GradedComplex, g: LieAlgebra, h: Subalgebra | None = None) -> ProductComplex:
    """Total complex base (x) relative complex of (g, h), filtered by base degree.

    d(b (x) w) = d_base(b) (x) w + (-1)^p b (x) d(w) on base degree p.
    """
    fiber = relative_model(g, h)
    fcx = fiber.complex
    btop = _effective_top(base)
    ftop = _effective_top(fcx)
    top = btop + ftop
    dims = []
    blocks_all = []
    for n in range(top + 1):
        start = 0
        blocks = []
        for p in range(min(n, btop) + 1):
            q = n - p
            if q > ftop:
                continue
            size = base.dims[p] * fcx.dims[q]
            if size:
                blocks.append((p, q, start))
                start += size
        dims.append(start)
        blocks_all.append(tuple(blocks))

    def locate(n, p):
        for bp, bq, bstart in blocks_all[n]:
            if bp == p:
                return bstart
        return None

    diffs = []
    for n in range(top):
        cols = []
        for p, q, start in blocks_all[n]:
            bdim = base.dims[p]
            fdim = fcx.dims[q]
            d_base = base.differential(p)
            d_fib = fcx.differential(q)
            sign = Fraction(-1 if p % 2 else 1)
            for i in range(bdim):
                for j in range(fdim):
                    col = [Fraction(0)] * dims[n + 1]
                    t1 = locate(n + 1, p + 1)
                    if t1 is not None:
                        f1 = fcx.dims[q]
                        for i2 in range(base.dims[p + 1]):
                            c = d_base.rows[i2][i]
                            if c:
                                col[t1 + i2 * f1 + j] += c
                    t2 = locate(n + 1, p)
                    if t2 is not None:
                        f2 = fcx.dims[q + 1]
                        for j2 in range(fcx.dims[q + 1]):
                            c = d_fib.rows[j2][j]
                            if c:
                                col[t2 + i * f2 + j2] += sign * c
                    cols.append(col)
        diffs.append(RationalMatrix.from_columns(cols, dims[n + 1]))
    cx = GradedComplex.create(tuple(dims), diffs)
    weights = tuple(
        tuple(p for p, q, start in blocks_all[n] for _ in range(base.dims[p] * fcx.dims[q]))
        for n in range(top + 1)
    )
    fc = ProductComplex(cx, weights, base, fiber, tuple(blocks_all))
    report = validate(fc)
    if not report.ok:
        raise FilteredComplexError(report.witness)
    return fc


def product_action(
    model: ProductComplex,
    base_maps: Sequence[RationalMatrix],
    fiber_maps: Sequence[RationalMatrix],
) -> list[RationalMatrix]:
    """Blockwise tensor action (base map (x) fiber map) on the total complex."""
    cx = model.complex
    out = []
    for n in range(cx.top + 1):
        size = cx.dims[n]
        rows = [[Fraction(0)] * size for _ in range(size)]
        for p, q, start in model.blocks[n]:
            a = base_maps[p]
            b = fiber_maps[q]
            fdim = model.fiber.complex.dims[q]
            for i2 in range(a.nrows):
                for i in range(a.ncols):
                    av = a.rows[i2][i]
                    if not av:
                        continue
                    for j2 in range(b.nrows):
                        for j in range(b.ncols):
                            bv = b.rows[j2][j]
                            if bv:
                                rows[start + i2 * fdim + j2][start + i * fdim + j] += av * bv
        out.append(RationalMatrix.from_rows([tuple(r) for r in rows], size))
    return out


@dataclass(frozen=True)
class DeckAction:
    """A finite group acting on a filtered complex, one matrix per degree."""

    generators: tuple[tuple[RationalMatrix, ...], ...]

    @classmethod
    def create(
        cls,
        fc: FilteredComplex,
        generators: Sequence[Sequence[RationalMatrix]],
        bound: int = 10000,
    ) -> "DeckAction":
        gens = tuple(tuple(maps) for maps in generators)
        cx = fc.complex
        for maps in gens:
            check_chain_map(cx, maps)
            for n, m in enumerate(maps):
                for j in range(cx.dims[n]):
                    for i in range(cx.dims[n]):
                        if m.rows[i][j] and fc.weights[n][i] < fc.weights[n][j]:
                            raise FilteredComplexError(
                                f"action lowers filtration in degree {n}: "
                                f"vector {j} (weight {fc.weights[n][j]}) hits "
                                f"vector {i} (weight {fc.weights[n][i]})"
                            )
        for n in range(cx.top + 1):
            mats = [maps[n] for maps in gens if cx.dims[n]]
            if mats:
                enumerate_group(mats, bound=bound)  # raises if not finite within bound
        return cls(gens)


def invariant_filtered_complex(
    fc: FilteredComplex,
    action: DeckAction,
    bound: int = 10000,
) -> tuple[FilteredComplex, tuple[tuple[Vector, ...], ...]]:
    """Fixed subcomplex of a deck action, with a weight-adapted basis.

    Returns the restricted filtered complex and, per degree, the embedding
    vectors identifying its basis inside the original complex.
    """
    cx = fc.complex
    maxw = fc.max_weight
    dims = []
    weights = []
    embeddings = []
    for n in range(cx.top + 1):
        gens_n = [maps[n] for maps in action.generators]
        fix = fixed_subspace(gens_n, bound=bound) if gens_n else SubspaceBasis.full(cx.dims[n])
        adapted: list[tuple[int, Vector]] = []
        prev = SubspaceBasis.zero(cx.dims[n])
        for p in range(maxw, -1, -1):
            cur = intersect(fix, fc.level_space(n, p))
            for v in complement_in(cur, prev).vectors:
                adapted.append((p, v))
            prev = cur
        adapted.sort(key=lambda t: t[0])
        dims.append(len(adapted))
        weights.append(tuple(p for p, _ in adapted))
        embeddings.append(tuple(v for _, v in adapted))
    diffs = []
    for n in range(cx.top):
        d_n = cx.differential(n)
        emb_next = RationalMatrix.from_columns(list(embeddings[n + 1]), cx.dim(n + 1))
        cols = []
        for v in embeddings[n]:
            coords = solve(emb_next, d_n.apply(v))
            if coords is None:
                raise FilteredComplexError(
                    f"fixed spaces are not closed under the differential at degree {n}"
                )
            cols.append(coords)
        diffs.append(RationalMatrix.from_columns(cols, dims[n + 1]))
    new_cx = GradedComplex.create(tuple(dims), diffs)
    new_fc = FilteredComplex.create(new_cx, weights)
    return new_fc, tuple(embeddings)


def twist_by_deck(
    fc: FilteredComplex,
    base_action: Sequence[RationalMatrix],
    coeff_action: LieAutomorphism,
    bound: int = 10000,
) -> FilteredComplex:
    """Invariant subcomplex under the diagonal action base (x) induced-on-forms.

    The coefficient automorphism must preserve the subalgebra of the pair
    (otherwise it does not act on the relative complex), and the base action
    must commute with the base differential.
    """
    if not isinstance(fc, ProductComplex):
        raise TypeError("twist_by_deck needs the ProductComplex built by product_model")
    base_maps = list(base_action)
    check_chain_map(fc.base, base_maps)
    fiber_maps = restricted_action(fc.fiber, coeff_action)
    total = product_action(fc, base_maps, fiber_maps)
    deck = DeckAction.create(fc, [total], bound=bound)
    new_fc, _ = invariant_filtered_complex(fc, deck, bound=bound)
    return new_fc

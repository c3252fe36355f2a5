"""Exact-sequence feasibility and checkers that exclude group actions.

The long-exact-sequence solver treats exactness as rank bookkeeping: a
finite sequence 0 -> T_0 -> ... -> T_m -> 0 of finite dimensional spaces
is exact iff there are nonnegative arrow ranks with

    dim T_i = rank(arrow into T_i) + rank(arrow out of T_i).

Unknown dimensions are enumerated under a cap; an empty solution set means
the hypothesized dimensions are incompatible with the sequence, which is
the exclusion mechanism.  The Gysin and Wang assemblers produce such
problems from basic-cohomology data, and the remaining checkers wrap the
dimension-count theorems for SU(2)-type actions on 4- and 5-manifolds.

Verdicts never assert that an action exists; they are either "excluded"
or "not excluded by this criterion".
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Sequence

from .cohomology import invariant_cohomology, lie_cohomology, relative_model, restricted_action
from .liealg import LieAlgebra, LieAutomorphism, Subalgebra, coordinate_subalgebra, su2
from .linalg import RationalMatrix, SubspaceBasis, as_fraction, kernel_basis

__all__ = [
    "CupForm",
    "LesProblem",
    "LesSolution",
    "NullSearchResult",
    "OrbitType",
    "Term",
    "Verdict",
    "gysin_assemble",
    "null_hyperplane_search",
    "orbit_table_verify",
    "s3_check_4manifold",
    "s3_check_5manifold",
    "solve_les",
    "su2_orbit_table",
    "verify_exactness",
    "wang_check",
]

DEFAULT_DIM_CAP = 50
MAX_UNKNOWNS = 12
DEFAULT_NORMAL_HEIGHT = 5

NOT_EXCLUDED = "not excluded by this criterion"


@dataclass(frozen=True)
class Term:
    """One entry of an exact sequence: a known dimension or a labeled unknown."""

    dim: int | None = None
    label: str | None = None

    @classmethod
    def known(cls, dim: int) -> "Term":
        dim = int(dim)
        if dim < 0:
            raise ValueError("dimensions must be nonnegative")
        return cls(dim=dim)

    @classmethod
    def unknown(cls, label: str) -> "Term":
        if not label:
            raise ValueError("unknown terms need a nonempty label")
        return cls(label=str(label))

    @property
    def is_known(self) -> bool:
        return self.label is None

    def render(self) -> str:
        return str(self.dim) if self.is_known else f"?{self.label}"


@dataclass(frozen=True)
class LesProblem:
    """A finite exact sequence flanked by zeros on both sides.

    terms is the expansion of a pattern of `period` slots per degree over
    degree_range.  forced_zero_ranks lists arrows whose rank must vanish;
    arrow i joins terms[i] to terms[i+1].
    """

    terms: tuple[Term, ...]
    period: int = 1
    degree_range: tuple[int, int] = (0, 0)
    forced_zero_ranks: tuple[int, ...] = ()
    description: str = ""

    def __post_init__(self):
        if not self.terms:
            raise ValueError("an exact-sequence problem needs at least one term")
        for i in self.forced_zero_ranks:
            if not 0 <= i < len(self.terms) - 1:
                raise ValueError(f"forced arrow index {i} out of range")
        if self.period < 1:
            raise ValueError("period must be positive")

    def labels(self) -> tuple[str, ...]:
        seen = []
        for t in self.terms:
            if t.label is not None and t.label not in seen:
                seen.append(t.label)
        return tuple(sorted(seen))

    def render(self) -> str:
        return "0 -> " + " -> ".join(t.render() for t in self.terms) + " -> 0"

    def as_dict(self) -> dict:
        return {
            "terms": [
                {"dim": t.dim} if t.is_known else {"label": t.label} for t in self.terms
            ],
            "period": self.period,
            "degree_range": list(self.degree_range),
            "forced_zero_ranks": list(self.forced_zero_ranks),
            "description": self.description,
        }


@dataclass
class LesSolution:
    assignments: dict[str, int]
    map_ranks: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "assignments": {k: self.assignments[k] for k in sorted(self.assignments)},
            "map_ranks": list(self.map_ranks),
        }


def solve_les(problem: LesProblem, cap: int | None = None) -> list[LesSolution]:
    """All nonnegative-integer solutions of the exactness constraints.

    Unknown dimensions range over [0, cap]; cap defaults to 50 and can be
    overridden by the EQSS_SOLVER_CAP environment variable.  The walk fixes
    each arrow rank from the previous one, so a solution is determined by
    its label assignment; solutions come back sorted lexicographically in
    the sorted label order.
    """
    labels = problem.labels()
    if len(labels) > MAX_UNKNOWNS:
        raise ValueError(
            f"solver bound exceeded: {len(labels)} unknown labels (max {MAX_UNKNOWNS})"
        )
    if cap is None:
        cap = int(os.environ.get("EQSS_SOLVER_CAP", DEFAULT_DIM_CAP))
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    terms = problem.terms
    m = len(terms)
    forced = frozenset(problem.forced_zero_ranks)
    solutions: list[LesSolution] = []
    assign: dict[str, int] = {}
    ranks: list[int] = []

    def walk(i: int, incoming: int) -> None:
        if i == m:
            if incoming == 0:
                solutions.append(LesSolution(dict(assign), tuple(ranks[:-1])))
            return
        t = terms[i]
        if t.is_known:
            choices = [t.dim]
        elif t.label in assign:
            choices = [assign[t.label]]
        else:
            choices = range(incoming, cap + 1)
        for v in choices:
            out = v - incoming
            if out < 0:
                continue
            if i in forced and out != 0:
                continue
            fresh = t.label is not None and t.label not in assign
            if fresh:
                assign[t.label] = v
            ranks.append(out)
            walk(i + 1, out)
            ranks.pop()
            if fresh:
                del assign[t.label]

    walk(0, 0)
    solutions.sort(key=lambda s: tuple(s.assignments[name] for name in labels))
    for sol in solutions:
        assert verify_exactness(problem, sol)
    return solutions


def verify_exactness(problem: LesProblem, solution: LesSolution) -> bool:
    """Re-check a solution against the constraints, independent of the solver."""
    terms = problem.terms
    m = len(terms)
    if len(solution.map_ranks) != m - 1:
        return False
    dims = []
    for t in terms:
        if t.is_known:
            dims.append(t.dim)
        elif t.label in solution.assignments:
            dims.append(solution.assignments[t.label])
        else:
            return False
    ranks = solution.map_ranks
    for i in problem.forced_zero_ranks:
        if ranks[i] != 0:
            return False
    for i in range(m):
        r_in = ranks[i - 1] if i > 0 else 0
        r_out = ranks[i] if i < m - 1 else 0
        if r_out < 0 or dims[i] != r_in + r_out:
            return False
    for i in range(m - 1):
        if ranks[i] > min(dims[i], dims[i + 1]):
            return False
    return True


@dataclass
class Verdict:
    """Outcome of a checker; exclusion claims carry the theorem applied."""

    excluded: bool
    verdict: str
    reason: str
    citation: str = ""
    completeness: str = ""
    problem: LesProblem | None = None
    witness: object | None = None

    def as_dict(self) -> dict:
        out = {
            "excluded": self.excluded,
            "verdict": self.verdict,
            "reason": self.reason,
        }
        if self.citation:
            out["citation"] = self.citation
        if self.completeness:
            out["completeness"] = self.completeness
        if self.problem is not None:
            out["problem"] = self.problem.as_dict()
        if self.witness is not None:
            if isinstance(self.witness, SubspaceBasis):
                out["witness"] = [[str(a) for a in v] for v in self.witness.vectors]
            else:
                out["witness"] = self.witness
        return out


def _check_dims(dims: Sequence[int], what: str) -> tuple[int, ...]:
    try:
        out = tuple(int(d) for d in dims)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed {what}: {dims!r}") from exc
    if any(d < 0 for d in out):
        raise ValueError(f"malformed {what}: dimensions must be nonnegative")
    if not out:
        raise ValueError(f"malformed {what}: empty")
    return out


def _two_row_gap(g: LieAlgebra, h: Subalgebra | None) -> int:
    """The l with H^i(g,h) = k for i in {0, l} and 0 elsewhere, or raise."""
    dims = lie_cohomology(g, h).dims
    nonzero = [i for i, d in enumerate(dims) if d]
    hname = h.name if h is not None and h.name else "h"
    if dims[0] != 1 or len(nonzero) != 2 or dims[nonzero[1]] != 1:
        raise ValueError(
            f"H({g.name},{hname}) = {list(dims)} is not two one-dimensional rows"
        )
    return nonzero[1]


def gysin_assemble(
    l: int | None = None,
    basic_dims: Sequence[int] | None = None,
    total_dims: Sequence[int] | None = None,
    pair: tuple[LieAlgebra, Subalgebra | None] | None = None,
    split: bool = False,
    oriented: bool = False,
) -> LesProblem:
    """The sequence ... -> H^k(M) -> H^{k-l}(B) -> H^{k+1}(B) -> H^{k+1}(M) -> ...

    B stands for the basic cohomology of the orbit foliation; the gap l is
    the top degree of the two-row pair cohomology and may be supplied either
    directly or through a (g, h) pair, which is then verified to be two-row.
    With total_dims the problem has no unknowns and solving it is a pure
    consistency check.  split forces the connecting maps B -> B to rank 0
    (valid for even l); oriented demands top basic dimension 1.
    """
    if pair is not None:
        g, h = pair
        derived = _two_row_gap(g, h)
        if l is not None and l != derived:
            raise ValueError(f"supplied gap {l} but the pair has gap {derived}")
        l = derived
    if l is None:
        raise ValueError("need either the gap l or a (g, h) pair")
    l = int(l)
    if l < 1:
        raise ValueError("the gap l must be at least 1")
    if basic_dims is None:
        raise ValueError("basic_dims is required")
    basic = _check_dims(basic_dims, "basic dims")
    if oriented and basic[-1] != 1:
        raise ValueError(
            f"homological orientability forces top basic dimension 1, got {basic[-1]}"
        )
    if split and l % 2:
        raise ValueError("the splitting constraint applies to even gaps only")
    bt = len(basic) - 1
    n = bt + l
    total: tuple[int, ...] | None = None
    if total_dims is not None:
        total = _check_dims(total_dims, "total dims")
        if len(total) != n + 1:
            raise ValueError(
                f"total dims must cover degrees 0..{n}, got {len(total)} entries"
            )

    def b_term(j: int) -> Term:
        return Term.known(basic[j] if 0 <= j <= bt else 0)

    def m_term(k: int) -> Term:
        if not 0 <= k <= n:
            return Term.known(0)
        return Term.known(total[k]) if total is not None else Term.unknown(f"M{k}")

    terms: list[Term] = []
    forced: list[int] = []
    for k in range(-1, n + 1):
        base = len(terms)
        terms.extend([m_term(k), b_term(k - l), b_term(k + 1)])
        if split:
            forced.append(base + 1)
    return LesProblem(
        tuple(terms),
        period=3,
        degree_range=(-1, n),
        forced_zero_ranks=tuple(forced),
        description=f"Gysin sequence, gap {l}",
    )


def wang_check(
    codim: int,
    simply_connected: bool,
    oriented: bool,
    gh_dims: Sequence[int],
    total_dims: Sequence[int] | None = None,
) -> Verdict:
    """Low-codimension checks for equidimensional actions.

    codim 1 needs no sequence: a compact oriented manifold with such an
    action has H^1 != 0, so a simply connected one is excluded outright.
    codim 2 and 3 assemble the sequence relating H(M) to the pair
    cohomology; both require the simply connected and oriented hypotheses.
    codim 3 additionally forces H^1(g,h) = 0, and dims violating that are
    reported as an inconsistent hypothesis rather than assembled.
    """
    if codim not in (1, 2, 3):
        raise ValueError(f"unsupported codim {codim}")
    gh = _check_dims(gh_dims, "pair cohomology dims")
    if gh[0] != 1:
        raise ValueError("H^0(g,h) is one-dimensional for every pair; got " + str(gh[0]))
    if codim == 1:
        if simply_connected and oriented:
            return Verdict(
                True,
                "excluded",
                "H^1(M) contains the one-dimensional top basic cohomology, so it cannot vanish",
                citation=(
                    "a compact connected oriented manifold with an equidimensional"
                    " codimension-1 action is never simply connected"
                ),
            )
        return Verdict(
            False,
            NOT_EXCLUDED,
            "the codimension-1 exclusion needs both the simply connected and oriented flags",
        )
    if not (simply_connected and oriented):
        raise ValueError(
            "the codimension-%d sequence requires a simply connected oriented manifold" % codim
        )
    if codim == 3 and len(gh) > 1 and gh[1] != 0:
        return Verdict(
            False,
            "inconsistent hypothesis",
            f"H^1(g,h) = {gh[1]} but codimension-3 equidimensional actions force H^1(g,h) = 0",
            citation=(
                "for codimension 3 the sequence has only columns 0 and 3,"
                " so H^1(g,h) injects into H^1(M) = 0"
            ),
        )
    gap = codim - 1
    s = len(gh) - 1
    n = codim + s
    total: tuple[int, ...] | None = None
    if total_dims is not None:
        total = _check_dims(total_dims, "total dims")
        if len(total) != n + 1:
            raise ValueError(
                f"total dims must cover degrees 0..{n}, got {len(total)} entries"
            )

    def g_term(j: int) -> Term:
        return Term.known(gh[j] if 0 <= j <= s else 0)

    def m_term(k: int) -> Term:
        if not 0 <= k <= n:
            return Term.known(0)
        return Term.known(total[k]) if total is not None else Term.unknown(f"M{k}")

    terms: list[Term] = []
    for k in range(-1, n + 1):
        terms.extend([m_term(k), g_term(k), g_term(k - gap)])
    problem = LesProblem(
        tuple(terms),
        period=3,
        degree_range=(-1, n),
        description=f"Wang sequence, codimension {codim}",
    )
    return Verdict(
        False,
        NOT_EXCLUDED,
        "sequence assembled; an empty solution set on given totals refutes them",
        citation=(
            "simply connected oriented manifolds with codimension-%d equidimensional"
            " actions fit the sequence H^k(M) -> H^k(g,h) -> H^{k-%d}(g,h) -> H^{k+1}(M)"
            % (codim, gap)
        ),
        problem=problem,
    )


def s3_check_4manifold(betti: Sequence[int]) -> Verdict:
    """Second-Betti-number exclusion for nonabelian compact group actions in dim 4."""
    dims = _check_dims(betti, "Betti numbers")
    if len(dims) != 5:
        raise ValueError(f"expected five Betti numbers b0..b4, got {len(dims)}")
    if dims[0] != 1:
        raise ValueError("the criterion applies to connected manifolds (b0 = 1)")
    citation = (
        "a compact connected 4-manifold with dim H^2 >= 3 admits no nontrivial"
        " smooth SU(2) action"
    )
    if dims[2] >= 3:
        return Verdict(
            True, "excluded", f"dim H^2 = {dims[2]} >= 3", citation=citation
        )
    return Verdict(
        False,
        NOT_EXCLUDED,
        f"dim H^2 = {dims[2]} <= 2 is compatible with the dimension bound",
        citation=citation,
    )


@dataclass(frozen=True)
class CupForm:
    """The cup product H^2 x H^2 -> H^4 as b4 symmetric b2 x b2 matrices."""

    b2: int
    b4: int
    matrices: tuple[RationalMatrix, ...]

    @classmethod
    def create(cls, b2: int, matrices: Sequence) -> "CupForm":
        b2 = int(b2)
        if b2 < 0:
            raise ValueError("inconsistent cup data: b2 must be nonnegative")
        mats = []
        for m in matrices:
            if not isinstance(m, RationalMatrix):
                m = RationalMatrix.from_rows([[as_fraction(a) for a in row] for row in m])
            if m.shape != (b2, b2):
                raise ValueError(
                    f"inconsistent cup data: matrix shape {m.shape}, expected ({b2}, {b2})"
                )
            if m != m.transpose():
                raise ValueError("inconsistent cup data: cup matrices must be symmetric")
            mats.append(m)
        return cls(b2, len(mats), tuple(mats))


def _cup_value(mat: RationalMatrix, v: Sequence, w: Sequence) -> Fraction:
    img = mat.apply(w)
    return sum((a * b for a, b in zip(v, img)), Fraction(0))


def _is_null_subspace(cup: CupForm, vectors: Sequence[Sequence]) -> bool:
    for mat in cup.matrices:
        for i, v in enumerate(vectors):
            for w in vectors[i:]:
                if _cup_value(mat, v, w) != 0:
                    return False
    return True


@dataclass
class NullSearchResult:
    found: bool
    hyperplane: SubspaceBasis | None
    completeness: str  # "exact" or "bounded-search"
    note: str = ""


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    pn, qn = isqrt(f.numerator), isqrt(f.denominator)
    if pn * pn == f.numerator and qn * qn == f.denominator:
        return Fraction(pn, qn)
    return None


def _qmul(x: tuple[Fraction, Fraction], y: tuple[Fraction, Fraction], d: Fraction):
    # (p1 + q1 sqrt(d)) (p2 + q2 sqrt(d))
    return (x[0] * y[0] + x[1] * y[1] * d, x[0] * y[1] + x[1] * y[0])


def _null_line_candidates_2d(q: RationalMatrix) -> tuple[Fraction, list]:
    """Root lines of a nonzero binary quadratic form, over Q(sqrt(disc)).

    Returns (disc, candidates); each candidate is a pair of (rational,
    sqrt-coefficient) components.  Empty list when disc < 0.
    """
    a = q.column(0)[0]
    b = q.column(1)[0]
    c = q.column(1)[1]
    disc = b * b - a * c
    if disc < 0:
        return disc, []
    zero = Fraction(0)
    one = Fraction(1)
    if a != 0:
        return disc, [
            (((-b), one), (a, zero)),
            (((-b), -one), (a, zero)),
        ]
    if b != 0:
        return disc, [
            ((one, zero), (zero, zero)),
            ((-c, zero), (2 * b, zero)),
        ]
    # a = b = 0, c != 0: the form is c y^2
    return disc, [((one, zero), (zero, zero))]


def _primitive_normals(b2: int, height: int):
    """Primitive integer normals, deduped up to sign, by increasing height."""
    for h in range(1, height + 1):
        for cand in product(range(-h, h + 1), repeat=b2):
            if max(abs(x) for x in cand) != h:
                continue
            nz = [x for x in cand if x]
            if nz[0] < 0:
                continue
            g = 0
            for x in nz:
                g = gcd(g, abs(x))
            if g != 1:
                continue
            yield cand


def null_hyperplane_search(
    cup: CupForm,
    candidate_normal: Sequence | None = None,
    height: int = DEFAULT_NORMAL_HEIGHT,
) -> NullSearchResult:
    """Look for a hyperplane of H^2 on which every cup matrix vanishes.

    Exact decision for b2 <= 2 (case analysis of lines, including
    irrational ones); for b2 >= 3 a bounded search over primitive integer
    normals of height <= `height`, whose failure is reported as
    "bounded-search" and never as a definitive no.
    """
    b2 = cup.b2
    if b2 < 1:
        raise ValueError("the search needs b2 >= 1")
    if candidate_normal is not None:
        normal = [as_fraction(a) for a in candidate_normal]
        if len(normal) != b2 or all(a == 0 for a in normal):
            raise ValueError("candidate normal must be a nonzero vector of length b2")
        w = kernel_basis(RationalMatrix.from_rows([normal]))
        if _is_null_subspace(cup, w.vectors):
            return NullSearchResult(True, w, "exact", "user-supplied normal verified")
    if b2 == 1:
        return NullSearchResult(
            True, SubspaceBasis.zero(1), "exact", "the zero subspace is the only hyperplane"
        )
    if b2 == 2:
        first = next((m for m in cup.matrices if not m.is_zero()), None)
        if first is None:
            w = SubspaceBasis.span([[Fraction(1), Fraction(0)]], 2)
            return NullSearchResult(True, w, "exact", "all cup matrices vanish")
        disc, candidates = _null_line_candidates_2d(first)
        for cand in candidates:
            ok = True
            for mat in cup.matrices:
                rows = [mat.column(j) for j in range(2)]  # symmetric, columns = rows
                acc = (Fraction(0), Fraction(0))
                for i in range(2):
                    for j in range(2):
                        term = _qmul(cand[i], cand[j], disc)
                        coef = rows[i][j]
                        acc = (acc[0] + coef * term[0], acc[1] + coef * term[1])
                if acc != (Fraction(0), Fraction(0)):
                    ok = False
                    break
            if not ok:
                continue
            root = _fraction_sqrt(disc)
            if root is None and any(c[1] != 0 for c in cand):
                return NullSearchResult(
                    True,
                    None,
                    "exact",
                    "a real null line exists but its coordinates are irrational"
                    f" (discriminant {disc} is not a rational square)",
                )
            vec = [c[0] + c[1] * (root if root is not None else 0) for c in cand]
            w = SubspaceBasis.span([vec], 2)
            if w.dim == 1 and _is_null_subspace(cup, w.vectors):
                return NullSearchResult(True, w, "exact")
        if not candidates:
            note = "the first nonzero form is definite (negative discriminant)"
        else:
            note = "every null line of the first form fails another cup matrix"
        return NullSearchResult(False, None, "exact", note)
    for normal in _primitive_normals(b2, height):
        w = kernel_basis(RationalMatrix.from_rows([[Fraction(x) for x in normal]]))
        if _is_null_subspace(cup, w.vectors):
            return NullSearchResult(True, w, "exact", f"normal {normal}")
    return NullSearchResult(
        False,
        None,
        "bounded-search",
        f"no rational null hyperplane with integer normal of height <= {height}",
    )


def s3_check_5manifold(
    b2: int, cup: CupForm, sphere_hyperplane_exists: bool
) -> Verdict:
    """Hyperplane criteria for nonabelian compact group actions in dim 5.

    An action forces a hyperplane of H_2 generated by spheres or a
    hyperplane of H^2 on which the cup product vanishes.  The first is a
    user-supplied geometric flag; the second is searched for.  Exclusion is
    claimed only when the flag is false and the search's negative answer is
    exact (b2 <= 2); a failed bounded search is inconclusive.
    """
    b2 = int(b2)
    if b2 < 0:
        raise ValueError("b2 must be nonnegative")
    if cup.b2 != b2:
        raise ValueError(f"inconsistent cup data: cup.b2 = {cup.b2} but b2 = {b2}")
    citation = (
        "an effective smooth action of a compact connected nonabelian Lie group on a"
        " compact 5-manifold forces a sphere-generated hyperplane in H_2 or a"
        " cup-null hyperplane in H^2"
    )
    if sphere_hyperplane_exists:
        return Verdict(
            False,
            NOT_EXCLUDED,
            "a hyperplane generated by spheres is asserted by the caller",
            citation=citation,
        )
    if b2 == 0:
        return Verdict(
            False,
            NOT_EXCLUDED,
            "H^2 = 0, so the cup-product condition is vacuous",
            citation=citation,
        )
    result = null_hyperplane_search(cup)
    if result.found:
        return Verdict(
            False,
            NOT_EXCLUDED,
            "the cup product vanishes on a hyperplane"
            + (f" ({result.note})" if result.note else ""),
            citation=citation,
            completeness=result.completeness,
            witness=result.hyperplane,
        )
    if result.completeness == "exact":
        return Verdict(
            True,
            "excluded",
            "no sphere-generated hyperplane (caller) and no cup-null hyperplane"
            f" ({result.note})",
            citation=citation,
            completeness="exact",
        )
    return Verdict(
        False,
        NOT_EXCLUDED,
        f"the bounded search found no cup-null hyperplane ({result.note});"
        " the search is incomplete, so no exclusion is claimed",
        citation=citation,
        completeness="bounded-search",
    )


@dataclass(frozen=True)
class OrbitType:
    """One orbit type of an SU(2)-style action, with its expected cohomology."""

    orbit: str
    isotropy: str
    orbit_dim: int
    isotropy_dim: int
    cohomology: tuple[int, ...]
    antipodal_invariants: bool = False  # quotient by the normalizer's two components


def su2_orbit_table() -> tuple[OrbitType, ...]:
    return (
        OrbitType("S^3/Gamma", "finite subgroup", 3, 0, (1, 0, 0, 1)),
        OrbitType("S^2", "circle subgroup", 2, 1, (1, 0, 1)),
        OrbitType(
            "RP^2", "two circles (normalizer of a circle)", 2, 1, (1, 0, 0),
            antipodal_invariants=True,
        ),
        OrbitType("point", "the whole group", 0, 3, (1,)),
    )


def _orbit_cohomology(g: LieAlgebra, entry: OrbitType) -> tuple[int, ...]:
    if entry.isotropy_dim == 0:
        return lie_cohomology(g).dims
    if entry.isotropy_dim == g.dim:
        h = Subalgebra.span(g, RationalMatrix.identity(g.dim).columns(), name=g.name)
        return lie_cohomology(g, h).dims
    if entry.isotropy_dim == 1:
        h = coordinate_subalgebra(g, [3], name="e3")
        model = relative_model(g, h)
        result = lie_cohomology(g, h)
        if not entry.antipodal_invariants:
            return result.dims
        refl = LieAutomorphism.create(
            g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]], name="antipodal"
        )
        maps = restricted_action(model, refl)
        return invariant_cohomology(result, [maps]).dims
    raise ValueError(f"no subalgebra of dimension {entry.isotropy_dim} in {g.name}")


def orbit_table_verify(table: Sequence[OrbitType] | None = None) -> Verdict:
    """Cross-check the orbit table against the cohomology engine."""
    if table is None:
        table = su2_orbit_table()
    if not table:
        return Verdict(
            False, "ok", "empty table: nothing verified (vacuous)", completeness="warning"
        )
    g = su2()
    for entry in table:
        if entry.orbit_dim != g.dim - entry.isotropy_dim:
            return Verdict(
                False,
                "mismatch",
                f"entry {entry.orbit}: orbit dimension {entry.orbit_dim}"
                f" != {g.dim} - {entry.isotropy_dim}",
            )
        try:
            computed = _orbit_cohomology(g, entry)
        except ValueError as exc:
            return Verdict(False, "mismatch", f"entry {entry.orbit}: {exc}")
        top = entry.orbit_dim
        if len(entry.cohomology) != top + 1:
            return Verdict(
                False,
                "mismatch",
                f"entry {entry.orbit}: expected {top + 1} cohomology dims,"
                f" table has {len(entry.cohomology)}",
            )
        if computed[: top + 1] != entry.cohomology or any(computed[top + 1 :]):
            return Verdict(
                False,
                "mismatch",
                f"entry {entry.orbit}: engine computed {list(computed)},"
                f" table says {list(entry.cohomology)}",
            )
    return Verdict(
        False,
        "ok",
        "all orbit types agree with the cohomology engine",
        citation=(
            "orbits of a nontrivial SU(2)-type action are S^3/Gamma, S^2, RP^2,"
            " or a fixed point"
        ),
    )

import random
from fractions import Fraction

import pytest

from eqss.forms import (
    CeComplex,
    ContractionError,
    ExteriorForm,
    basis_form,
    ce_complex,
    contract,
    contract_matrix,
    form_from_terms,
    induced_on_forms,
    multi_indices,
    relative_subcomplex,
    render_form,
    wedge,
)
from eqss.liealg import (
    LieAlgebra,
    LieAutomorphism,
    bracket,
    coordinate_subalgebra,
    so_algebra,
    su2,
    u_algebra,
)
from eqss.linalg import RationalMatrix, as_fraction


def det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * det(minor)
    return total


def evaluate(form: ExteriorForm, vectors) -> Fraction:
    """alpha(v_1,...,v_k) as a sum of k x k determinants."""
    vs = [[as_fraction(x) for x in v] for v in vectors]
    assert len(vs) == form.degree
    total = Fraction(0)
    for idx, c in form.terms():
        total += c * det([[v[j - 1] for j in idx] for v in vs])
    return total


def d_oracle(g: LieAlgebra, form: ExteriorForm, vectors) -> Fraction:
    """(d alpha)(X_0,...,X_k) summed over argument pairs 0 <= i < j <= k."""
    m = len(vectors)
    total = Fraction(0)
    for i in range(m):
        for j in range(i + 1, m):
            rest = [v for t, v in enumerate(vectors) if t not in (i, j)]
            br = bracket(g, vectors[i], vectors[j])
            sign = -1 if (i + j) % 2 else 1
            total += sign * evaluate(form, [br] + rest)
    return total


def apply_d(ce: CeComplex, form: ExteriorForm) -> ExteriorForm:
    out = ce.differential(form.degree).apply(form.coeffs)
    return ExteriorForm(form.dim, form.degree + 1, out)


def rand_fraction(rng):
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def rand_form(rng, dim, degree):
    return ExteriorForm(
        dim, degree, tuple(rand_fraction(rng) for _ in multi_indices(dim, degree))
    )


def test_multi_indices_lex_order():
    assert multi_indices(4, 2) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert multi_indices(3, 0) == ((),)
    assert multi_indices(3, 4) == ()


def test_wedge_basics():
    e1 = basis_form(3, [1])
    e2 = basis_form(3, [2])
    assert wedge(e1, e1).is_zero()
    assert wedge(e1, e2).terms() == [((1, 2), Fraction(1))]
    assert wedge(e2, e1).terms() == [((1, 2), Fraction(-1))]
    # degree overflow collapses to the zero space
    top = basis_form(3, [1, 2, 3])
    assert wedge(top, e1).coeffs == ()


def test_form_from_terms_sorts_with_sign():
    f = form_from_terms(3, 2, {(2, 1): 1})
    assert f.terms() == [((1, 2), Fraction(-1))]
    with pytest.raises(ValueError):
        form_from_terms(3, 2, {(1, 1): 1})


def test_wedge_graded_commutative_and_associative():
    rng = random.Random(7)
    for _ in range(60):
        dim = rng.randint(2, 5)
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        r = rng.randint(0, 2)
        a = rand_form(rng, dim, p)
        b = rand_form(rng, dim, q)
        c = rand_form(rng, dim, r)
        ab = wedge(a, b)
        ba = wedge(b, a)
        sign = -1 if (p * q) % 2 else 1
        assert ab.coeffs == ba.scale(sign).coeffs
        assert wedge(ab, c).coeffs == wedge(a, wedge(b, c)).coeffs


def test_contract_antiderivation():
    rng = random.Random(11)
    for _ in range(60):
        dim = rng.randint(2, 5)
        p = rng.randint(1, 2)
        q = rng.randint(1, 2)
        a = rand_form(rng, dim, p)
        b = rand_form(rng, dim, q)
        x = [rand_fraction(rng) for _ in range(dim)]
        lhs = contract(x, wedge(a, b))
        sign = -1 if p % 2 else 1
        rhs = wedge(contract(x, a), b).add(wedge(a, contract(x, b)).scale(sign))
        assert lhs.coeffs == rhs.coeffs


def test_contract_anticommutes():
    rng = random.Random(13)
    for _ in range(40):
        dim = rng.randint(2, 5)
        k = rng.randint(2, min(3, dim))
        a = rand_form(rng, dim, k)
        x = [rand_fraction(rng) for _ in range(dim)]
        y = [rand_fraction(rng) for _ in range(dim)]
        xy = contract(x, contract(y, a))
        yx = contract(y, contract(x, a))
        assert xy.coeffs == yx.scale(-1).coeffs
        assert contract(x, contract(x, a)).is_zero()


def test_contract_degree_zero_errors():
    with pytest.raises(ContractionError):
        contract([1, 0, 0], basis_form(3, []))


def test_contract_matches_evaluation():
    rng = random.Random(17)
    for _ in range(40):
        dim = rng.randint(2, 4)
        k = rng.randint(1, dim)
        a = rand_form(rng, dim, k)
        x = [rand_fraction(rng) for _ in range(dim)]
        rest = [[rand_fraction(rng) for _ in range(dim)] for _ in range(k - 1)]
        assert evaluate(contract(x, a), rest) == evaluate(a, [x] + rest)


def test_su2_generator_differentials():
    ce = ce_complex(su2())
    d1 = ce.differential(1)
    # d e1 = -e2^e3, d e2 = e1^e3, d e3 = -e1^e2 in the monomial basis
    assert d1.column(0) == (Fraction(0), Fraction(0), Fraction(-1))
    assert d1.column(1) == (Fraction(0), Fraction(1), Fraction(0))
    assert d1.column(2) == (Fraction(-1), Fraction(0), Fraction(0))
    assert ce.differential(0).is_zero()
    assert ce.differential(2).is_zero()


def test_differential_squares_to_zero_as_matrices():
    for g in (su2(), so_algebra(4), u_algebra(2)):
        ce = ce_complex(g)
        for k in range(g.dim - 1):
            assert ce.differential(k + 1).mul(ce.differential(k)).is_zero()


def test_differential_matches_direct_evaluation():
    rng = random.Random(23)
    for g in (su2(), so_algebra(4), u_algebra(2)):
        ce = ce_complex(g)
        for _ in range(25):
            k = rng.randint(0, min(3, g.dim - 1))
            form = rand_form(rng, g.dim, k)
            vectors = [[rand_fraction(rng) for _ in range(g.dim)] for _ in range(k + 1)]
            assert evaluate(apply_d(ce, form), vectors) == d_oracle(g, form, vectors)


def test_differential_is_antiderivation():
    rng = random.Random(29)
    g = so_algebra(4)
    ce = ce_complex(g)
    for _ in range(40):
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        a = rand_form(rng, g.dim, p)
        b = rand_form(rng, g.dim, q)
        lhs = apply_d(ce, wedge(a, b))
        sign = -1 if p % 2 else 1
        rhs = wedge(apply_d(ce, a), b).add(wedge(a, apply_d(ce, b)).scale(sign))
        assert lhs.coeffs == rhs.coeffs


def test_ce_complex_rejects_non_jacobi():
    bad = LieAlgebra.from_brackets(
        "bad", 3, {(1, 2): [0, 0, 1], (1, 3): [0, 0, 1], (2, 3): [1, 0, 0]}
    )
    with pytest.raises(ValueError, match="Jacobi"):
        ce_complex(bad)


def test_relative_subcomplex_su2_axis():
    g = su2()
    h = coordinate_subalgebra(g, [3])
    spaces = relative_subcomplex(g, h)
    assert [s.dim for s in spaces] == [1, 0, 1, 0]
    # the surviving 2-form is e1^e2
    assert spaces[2].vectors == ((Fraction(1), Fraction(0), Fraction(0)),)


def test_relative_subcomplex_su2_axis_oracle():
    # iota_{e3} d(a e1 + b e2 + c e3) = a e2 - b e1, so degree 1 forces a=b=c=0
    g = su2()
    ce = ce_complex(g)
    rng = random.Random(31)
    for _ in range(30):
        form = rand_form(rng, 3, 1)
        a, b, c = form.coeffs
        got = contract([0, 0, 1], apply_d(ce, form))
        assert got.coeffs == (-b, a, Fraction(0))


def test_relative_subcomplex_so4_so3():
    g = so_algebra(4)
    h = coordinate_subalgebra(g, [1, 2, 4])  # A12, A13, A23 span so(3)
    spaces = relative_subcomplex(g, h)
    assert [s.dim for s in spaces] == [1, 0, 0, 1, 0, 0, 0]


def test_relative_subcomplex_trivial_subalgebra_is_everything():
    g = su2()
    h = coordinate_subalgebra(g, [])
    spaces = relative_subcomplex(g, h)
    assert [s.dim for s in spaces] == [1, 3, 3, 1]


def test_induced_on_forms_reflection():
    g = su2()
    aut = LieAutomorphism.create(g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    m1 = induced_on_forms(aut, 1)
    assert m1 == RationalMatrix.from_rows([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    m2 = induced_on_forms(aut, 2)
    # basis order e1^e2, e1^e3, e2^e3
    assert m2 == RationalMatrix.from_rows([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    m3 = induced_on_forms(aut, 3)
    assert m3 == RationalMatrix.from_rows([[1]])


def cayley_so3(rng):
    while True:
        a, b, c = (Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(3))
        s = RationalMatrix.from_rows([[0, a, b], [-a, 0, c], [-b, -c, 0]])
        eye = RationalMatrix.identity(3)
        try:
            return eye.sub(s).inverse().mul(eye.add(s))
        except ValueError:
            continue


def test_induced_on_forms_functorial():
    g = su2()
    rng = random.Random(37)
    for _ in range(20):
        a = LieAutomorphism.create(g, cayley_so3(rng))
        b = LieAutomorphism.create(g, cayley_so3(rng))
        ab = LieAutomorphism.create(g, a.matrix.mul(b.matrix))
        for k in (1, 2, 3):
            lhs = induced_on_forms(ab, k, check=False)
            rhs = induced_on_forms(a, k, check=False).mul(induced_on_forms(b, k, check=False))
            assert lhs == rhs


def test_induced_on_forms_commutes_with_differential():
    # sign pattern eps_i eps_j on the lex pair basis of so(4), eps = (1,1,-1,-1)
    g = so_algebra(4)
    eps = [1, 1, -1, -1]
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    diag = []
    for r, (i, j) in enumerate(pairs):
        diag.append([eps[i - 1] * eps[j - 1] if c == r else 0 for c in range(6)])
    aut = LieAutomorphism.create(g, diag)
    for k in range(0, 6):
        induced_on_forms(aut, k)  # raises if it fails to commute with d


def test_contract_matrix_agrees_with_contract():
    rng = random.Random(41)
    for _ in range(20):
        dim = rng.randint(2, 4)
        k = rng.randint(1, dim)
        x = [rand_fraction(rng) for _ in range(dim)]
        m = contract_matrix(dim, x, k)
        form = rand_form(rng, dim, k)
        assert m.apply(form.coeffs) == contract(x, form).coeffs


def test_render_form():
    f = form_from_terms(3, 2, {(1, 2): 1, (2, 3): Fraction(-3, 2)})
    assert render_form(f) == "e1^e2 - 3/2 e2^e3"
    assert render_form(form_from_terms(3, 1, {})) == "0"

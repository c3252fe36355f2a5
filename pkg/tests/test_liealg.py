import random
from fractions import Fraction

import pytest

from eqss.linalg import RationalMatrix, SubspaceBasis
from eqss.liealg import (
    LieAlgebra,
    LieAutomorphism,
    Subalgebra,
    abelian,
    bracket,
    coordinate_subalgebra,
    is_automorphism,
    is_subalgebra,
    jacobi_check,
    normalizer,
    so_algebra,
    su2,
    u_algebra,
)


def unit(n, i):
    return [1 if j == i else 0 for j in range(n)]


def test_su2_cross_product_table():
    g = su2()
    e1, e2, e3 = unit(3, 0), unit(3, 1), unit(3, 2)
    assert bracket(g, e1, e2) == tuple(map(Fraction, e3))
    assert bracket(g, e2, e3) == tuple(map(Fraction, e1))
    assert bracket(g, e3, e1) == tuple(map(Fraction, e2))
    assert bracket(g, e2, e1) == tuple(map(Fraction, [0, 0, -1]))


def test_bracket_is_cross_product_randomized():
    g = su2()
    rng = random.Random(3)
    for _ in range(100):
        x = [rng.randint(-4, 4) for _ in range(3)]
        y = [rng.randint(-4, 4) for _ in range(3)]
        cross = (
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        )
        assert bracket(g, x, y) == tuple(map(Fraction, cross))


def test_jacobi_holds_for_shipped_algebras():
    for g in [su2(), abelian(4), so_algebra(3), so_algebra(4), so_algebra(5), u_algebra(2), u_algebra(3)]:
        assert jacobi_check(g).ok, g.name


def test_jacobi_violation_witness():
    bad = LieAlgebra.from_brackets(
        "bad", 3, {(1, 2): [0, 0, 1], (1, 3): [0, 0, 1], (2, 3): [1, 0, 0]}
    )
    report = jacobi_check(bad)
    assert not report.ok
    assert report.witness == (1, 2, 3)
    assert report.jacobiator is not None and any(report.jacobiator)


def test_jacobi_matches_definition_on_random_triples():
    # trilinearity: Jacobi on basis triples implies Jacobi on arbitrary vectors
    g = so_algebra(4)
    rng = random.Random(9)
    for _ in range(100):
        x, y, z = ([rng.randint(-2, 2) for _ in range(g.dim)] for _ in range(3))
        j = tuple(
            a + b + c
            for a, b, c in zip(
                bracket(g, bracket(g, x, y), z),
                bracket(g, bracket(g, y, z), x),
                bracket(g, bracket(g, z, x), y),
            )
        )
        assert not any(j)


def test_subalgebra_checks():
    g = su2()
    assert is_subalgebra(g, [[0, 0, 1]])
    assert not is_subalgebra(g, [[1, 0, 0], [0, 1, 0]])
    h = coordinate_subalgebra(g, [3], "circle")
    assert h.dim == 1
    with pytest.raises(ValueError):
        Subalgebra.span(g, [[1, 0, 0], [0, 1, 0]])


def test_su2_has_no_2dim_subalgebra_randomized():
    # cross product of independent vectors is orthogonal to both, so a random
    # plane is never closed under the bracket
    g = su2()
    rng = random.Random(17)
    found = 0
    for _ in range(200):
        v = [rng.randint(-5, 5) for _ in range(3)]
        w = [rng.randint(-5, 5) for _ in range(3)]
        if SubspaceBasis.span([v, w], 3).dim != 2:
            continue
        found += 1
        assert not is_subalgebra(g, [v, w])
    assert found > 150


def test_normalizer_of_circle_in_su2():
    g = su2()
    h = coordinate_subalgebra(g, [3])
    assert normalizer(g, h) == h.basis


def test_normalizer_contains_subalgebra_so4():
    g = so_algebra(4)
    h = coordinate_subalgebra(g, [1, 2, 4], "so3")  # A12, A13, A23
    n = normalizer(g, h)
    assert n.contains_subspace(h.basis)


def test_automorphism_accept_and_reject():
    g = su2()
    good = RationalMatrix.from_rows([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert is_automorphism(g, good)
    bad = RationalMatrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert not is_automorphism(g, bad)
    with pytest.raises(ValueError):
        LieAutomorphism.create(g, bad)


def test_automorphism_preserves_subalgebra():
    g = su2()
    aut = LieAutomorphism.create(g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    assert aut.preserves(coordinate_subalgebra(g, [3]))
    cycle = LieAutomorphism.create(g, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert not cycle.preserves(coordinate_subalgebra(g, [3]))


def test_so3_Aij_basis_brackets():
    g = so_algebra(3)  # basis A12, A13, A23
    assert bracket(g, unit(3, 0), unit(3, 1)) == tuple(map(Fraction, [0, 0, -1]))
    assert bracket(g, unit(3, 0), unit(3, 2)) == tuple(map(Fraction, [0, 1, 0]))
    assert bracket(g, unit(3, 1), unit(3, 2)) == tuple(map(Fraction, [-1, 0, 0]))


def test_u2_expected_brackets():
    g = u_algebra(2)  # basis D1, D2, S12, T12
    d1, d2, s, t = (unit(4, i) for i in range(4))
    assert bracket(g, d1, s) == tuple(map(Fraction, [0, 0, 0, 1]))   # [D1,S12] = T12
    assert bracket(g, d1, t) == tuple(map(Fraction, [0, 0, -1, 0]))  # [D1,T12] = -S12
    assert bracket(g, d1, d2) == tuple(map(Fraction, [0, 0, 0, 0]))
    assert bracket(g, s, t) == tuple(map(Fraction, [2, -2, 0, 0]))   # 2(D1 - D2)


def test_u_subalgebra_embeddings():
    g3 = u_algebra(3)
    # basis order D1,D2,D3,S12,S13,S23,T12,T13,T23: u(2) = D1,D2,S12,T12
    h = coordinate_subalgebra(g3, [1, 2, 4, 7], "u2")
    assert h.dim == 4


def test_transported_structure_keeps_jacobi_randomized():
    # conjugating the bracket by an invertible matrix preserves Jacobi
    rng = random.Random(23)
    g = su2()
    count = 0
    while count < 100:
        p = RationalMatrix.from_rows([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        try:
            pinv = p.inverse()
        except ValueError:
            continue
        count += 1
        cols = p.columns()
        table = {}
        for i in range(1, 4):
            for j in range(i + 1, 4):
                table[(i, j)] = pinv.apply(bracket(g, cols[i - 1], cols[j - 1]))
        moved = LieAlgebra.from_brackets("moved", 3, table)
        assert jacobi_check(moved).ok


def test_reflection_signs_normalize_so_pairs():
    # diag(eps_i * eps_j) with eps = (1,..,1,-1,-1) is an automorphism
    # preserving the so(l) block, for l = 2, 3, 4
    from eqss.liealg import so_pairs

    for l in (2, 3, 4):
        n = l + 1
        g = so_algebra(n)
        eps = [1] * (l - 1) + [-1, -1]
        diag = [eps[i - 1] * eps[j - 1] for (i, j) in so_pairs(n)]
        m = RationalMatrix.from_rows(
            [[diag[a] if a == b else 0 for b in range(g.dim)] for a in range(g.dim)]
        )
        assert is_automorphism(g, m)
        sub_idx = [k + 1 for k, (i, j) in enumerate(so_pairs(n)) if j <= l]
        h = coordinate_subalgebra(g, sub_idx, f"so{l}")
        assert LieAutomorphism.create(g, m).preserves(h)

import random
from fractions import Fraction

import pytest

from eqss.cohomology import (
    GradedComplex,
    absolute_complex,
    action_on_cohomology,
    cohomology,
    cup_product,
    fixed_subcomplex,
    invariant_cohomology,
    lie_cohomology,
    relative_model,
    restricted_action,
)
from eqss.forms import ExteriorForm, wedge
from eqss.liealg import (
    LieAutomorphism,
    abelian,
    coordinate_subalgebra,
    so_algebra,
    su2,
    u_algebra,
)
from eqss.linalg import RationalMatrix


def test_absolute_cohomology_su2():
    res = lie_cohomology(su2())
    assert res.dims == (1, 0, 0, 1)
    assert res.representatives[3] == ((Fraction(1),),)


def test_absolute_cohomology_abelian():
    assert lie_cohomology(abelian(3)).dims == (1, 3, 3, 1)
    assert lie_cohomology(abelian(4)).dims == (1, 4, 6, 4, 1)


def test_absolute_cohomology_u2():
    res = lie_cohomology(u_algebra(2))
    assert res.dims == (1, 1, 0, 1, 1)
    assert res.complex.euler_characteristic() == 0


def test_relative_cohomology_su2_axis():
    g = su2()
    res = lie_cohomology(g, coordinate_subalgebra(g, [3]))
    assert res.dims == (1, 0, 1, 0)


def test_relative_cohomology_so4_so3():
    g = so_algebra(4)
    res = lie_cohomology(g, coordinate_subalgebra(g, [1, 2, 4]))
    assert res.dims == (1, 0, 0, 1, 0, 0, 0)


def test_relative_cohomology_u2_u1():
    g = u_algebra(2)
    res = lie_cohomology(g, coordinate_subalgebra(g, [1]))
    assert res.dims == (1, 0, 0, 1, 0)


def test_euler_characteristic_matches_cohomology():
    for g in (su2(), abelian(4), u_algebra(2), so_algebra(3)):
        res = lie_cohomology(g)
        chi = sum(d if k % 2 == 0 else -d for k, d in enumerate(res.dims))
        assert chi == res.complex.euler_characteristic()


def test_trivial_subalgebra_matches_absolute():
    g = u_algebra(2)
    assert lie_cohomology(g, None).dims == cohomology(absolute_complex(g)).dims


def test_express_classes():
    res = lie_cohomology(su2())
    assert res.express(3, [1]) == (Fraction(1),)
    assert res.express(0, [Fraction(5)]) == (Fraction(5),)
    with pytest.raises(ValueError, match="not a cocycle"):
        res.express(1, [1, 0, 0])  # d e1 = -e2^e3 != 0


def test_graded_complex_validation():
    with pytest.raises(ValueError, match="shape"):
        GradedComplex.create((1, 2), [RationalMatrix.from_rows([[1]])])
    d0 = RationalMatrix.from_rows([[1], [0]])
    d1 = RationalMatrix.from_rows([[1, 0]])
    with pytest.raises(ValueError, match="d\\^2"):
        GradedComplex.create((1, 2, 1), [d0, d1])


def test_two_step_complex():
    cx = GradedComplex.create((1, 1), [RationalMatrix.from_rows([[1]])])
    assert cohomology(cx).dims == (0, 0)
    cx0 = GradedComplex.create((1, 1), [RationalMatrix.from_rows([[0]])])
    assert cohomology(cx0).dims == (1, 1)


def test_reflection_action_on_absolute_su2():
    g = su2()
    model = relative_model(g)
    res = cohomology(model.complex)
    aut = LieAutomorphism.create(g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    maps = restricted_action(model, aut)
    acts = action_on_cohomology(res, maps)
    assert acts[0] == RationalMatrix.from_rows([[1]])
    assert acts[3] == RationalMatrix.from_rows([[1]])  # det of the reflection is +1


def test_reflection_action_on_relative_su2():
    g = su2()
    model = relative_model(g, coordinate_subalgebra(g, [3]))
    res = cohomology(model.complex)
    aut = LieAutomorphism.create(g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    maps = restricted_action(model, aut)
    acts = action_on_cohomology(res, maps)
    assert acts[2] == RationalMatrix.from_rows([[-1]])
    inv = invariant_cohomology(res, [maps])
    assert inv.dims == (1, 0, 0, 0)


def test_invariants_agree_with_fixed_subcomplex():
    # restrict-then-compute equals compute-then-restrict over the rationals
    g = su2()
    model = relative_model(g, coordinate_subalgebra(g, [3]))
    res = cohomology(model.complex)
    aut = LieAutomorphism.create(g, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    maps = restricted_action(model, aut)
    fixed_cx, _ = fixed_subcomplex(model.complex, [maps])
    assert cohomology(fixed_cx).dims == invariant_cohomology(res, [maps]).dims


def test_invariants_without_generators_are_everything():
    res = lie_cohomology(su2())
    assert invariant_cohomology(res, []).dims == res.dims


def test_restricted_action_rejects_nonpreserving_automorphism():
    g = su2()
    model = relative_model(g, coordinate_subalgebra(g, [3]))
    cycle = LieAutomorphism.create(g, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValueError, match="preserve"):
        restricted_action(model, cycle)


def test_action_on_cohomology_rejects_non_chain_map():
    g = abelian(2)
    res = lie_cohomology(g)
    bad = [
        RationalMatrix.identity(1),
        RationalMatrix.from_rows([[1, 1], [0, 1]]),
        RationalMatrix.identity(1),
    ]
    # d = 0 here so any maps commute; break the shape instead
    with pytest.raises(ValueError, match="degree maps"):
        action_on_cohomology(res, bad[:2])
    g2 = su2()
    res2 = lie_cohomology(g2)
    skew = [
        RationalMatrix.identity(1),
        RationalMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        RationalMatrix.identity(3),
        RationalMatrix.identity(1),
    ]
    with pytest.raises(ValueError, match="commute"):
        action_on_cohomology(res2, skew)


def test_cup_product_abelian():
    g = abelian(3)
    res = lie_cohomology(g)
    assert cup_product(g, res, 1, (1, 0, 0), 1, (0, 1, 0)) == (Fraction(1), Fraction(0), Fraction(0))
    rng = random.Random(3)
    for _ in range(20):
        u = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        uv = cup_product(g, res, 1, u, 1, v)
        vu = cup_product(g, res, 1, v, 1, u)
        assert uv == tuple(-x for x in vu)


def test_cup_product_unit():
    g = su2()
    res = lie_cohomology(g)
    assert cup_product(g, res, 0, (1,), 3, (1,)) == (Fraction(1),)
    assert cup_product(g, res, 3, (1,), 3, (1,)) == ()


def test_cup_product_representative_independence():
    g = u_algebra(2)
    res = lie_cohomology(g)
    assert res.coboundaries[3].dim == 3
    u = res.representatives[1][0]
    w = res.representatives[3][0]
    shifted = tuple(a + b for a, b in zip(w, res.coboundaries[3].vectors[0]))
    prod = wedge(ExteriorForm(4, 1, u), ExteriorForm(4, 3, w))
    prod_shifted = wedge(ExteriorForm(4, 1, u), ExteriorForm(4, 3, shifted))
    assert res.express(4, prod.coeffs) == res.express(4, prod_shifted.coeffs)


def test_cup_product_rejects_relative_complex():
    g = su2()
    res = lie_cohomology(g, coordinate_subalgebra(g, [3]))
    with pytest.raises(ValueError, match="absolute"):
        cup_product(g, res, 0, (1,), 2, (1,))

import cmath
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcentral.arith import CycloNum, EisensteinInt
from pcentral.cubic import (
    CubicSolution,
    DegenerateParameterError,
    SymbolAlgebraModel,
    closed_form_coefficients,
    conjugate_and_cube,
    core_identity_sides,
    eisenstein_ball,
    enumerate_solutions,
    gen_solution,
    gen_solution_raw,
    verify_core_identity,
    verify_raw_solution,
    verify_solution,
)

from conftest import random_cyclo

E = EisensteinInt
R = CycloNum.rho(3)
OMEGA = cmath.exp(2j * cmath.pi / 3)


def cplx(x: EisensteinInt) -> complex:
    return x.a + x.b * OMEGA


def rand_eis(rng, k=30):
    return E(rng.randint(-k, k), rng.randint(-k, k))


# --- conjugation oracle ---------------------------------------------------


def test_conjugate_b_zero():
    al = CycloNum(3, [2, 1])
    model = SymbolAlgebraModel(al, CycloNum(3, [1, -4]))
    a = CycloNum(3, [3, 1])
    res = conjugate_and_cube(model, a, 0)
    assert res.z == model.x
    assert res.z_cubed == al
    assert res.coefficients == (a**3 * al, 0, 0)


def test_conjugate_unit_parameters():
    res = conjugate_and_cube(SymbolAlgebraModel(1, 1), 1, 1)
    assert res.z_cubed == 1
    # 1 + rho, 1 - rho^2 = 2 + rho, 1 - rho
    assert res.coefficients == (CycloNum(3, [1, 1]), CycloNum(3, [2, 1]), CycloNum(3, [1, -1]))
    assert res.coefficients == closed_form_coefficients(1, 1, 1, 1)


def test_conjugate_random():
    rng = random.Random(50)
    for _ in range(50):
        al, be, a, b = (random_cyclo(rng, 3) for _ in range(4))
        model = SymbolAlgebraModel(al, be)
        res = conjugate_and_cube(model, a, b)
        assert res.z_cubed == al
        assert res.coefficients == closed_form_coefficients(al, be, a, b)


def test_conjugate_degenerate():
    with pytest.raises(DegenerateParameterError):
        conjugate_and_cube(SymbolAlgebraModel(1, 1), 1, -1)


def test_model_calibration():
    model = SymbolAlgebraModel(E(2, 1), 3)
    assert model.alpha == CycloNum(3, [2, 1])
    assert model.pres.c[1, 0] == 1


# --- the polynomial identity ---------------------------------------------


def test_core_identity_numeric_oracle():
    # floating-point evaluation, independent of the exact ring arithmetic
    rng = random.Random(0)
    for _ in range(100):
        a, b, al, be = (rand_eis(rng, 3) for _ in range(4))
        lhs = cplx(al) * (cplx(a) ** 3 * cplx(al) + cplx(b) ** 3 * cplx(be)) ** 3
        rhs = (
            cplx(al) * (cplx(a) ** 3 * cplx(al) + OMEGA * cplx(b) ** 3 * cplx(be)) ** 3
            + 3 * (1 - OMEGA) * cplx(be) * (cplx(a) ** 2 * cplx(b) * cplx(al)) ** 3
            + 3 * (1 - OMEGA**-1) * cplx(al) ** 2 * cplx(be) ** 2 * (cplx(a) * cplx(b) ** 2) ** 3
        )
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
        exact_l, exact_r = core_identity_sides(a, b, al, be)
        assert exact_l == exact_r
        assert abs(cplx(exact_l) - lhs) <= 1e-9 * max(1.0, abs(lhs))


def test_core_identity_symbolic():
    rep = verify_core_identity()
    assert rep.agrees and rep.numeric_agrees and rep.mismatches == ()
    assert rep.monomials_compared > 0


def test_core_identity_rejects_squares():
    rep = verify_core_identity(x_power=2)
    assert not rep.agrees and not rep.numeric_agrees
    assert rep.mismatches


def test_core_identity_specializations():
    rng = random.Random(1)
    for _ in range(20):
        a, b, al, be = (rand_eis(rng) for _ in range(4))
        lhs, rhs = core_identity_sides(a, E(0), al, be)
        assert lhs == rhs == al * (a**3 * al) ** 3
        lhs, rhs = core_identity_sides(E(0), b, al, be)
        assert lhs == rhs == al * b**9 * be**3


# --- solution families ----------------------------------------------------


def test_gen_solution_units():
    s = gen_solution(E(1), E(1), E(1), E(1))
    omr = E(1, -1)
    assert (s.Y, s.X1, s.X2, s.X3) == (omr, E(1) - E(0, 1) ** 2, omr, omr)
    assert omr**3 == E(-3, -6) and (E(1) - E(0, 1) ** 2) ** 3 == E(3, 6)
    assert verify_solution(s) and not s.degenerate


def test_gen_solution_c_zero():
    g = E(4, -7)
    s = gen_solution(g, E(2, 5), E(1), E(0))
    assert (s.Y, s.X1, s.X2, s.X3) == (g, g, E(0), E(0))
    assert s.degenerate


def test_gen_solution_worked_instance():
    s = gen_solution(E(2), E(1), E(1), E(1))
    assert (s.Y, s.X1, s.X2, s.X3) == (E(2, -1), E(2) - E(0, 1) ** 2, E(2, -2), E(1, -1))
    lhs = s.gamma * s.Y**3
    rhs = s.gamma * s.X1**3 + s.beta * s.X2**3 + s.gamma**2 * s.beta**2 * s.X3**3
    assert lhs == rhs == E(2, -36)


def test_gen_solution_raw_examples():
    al, be, a, b = E(3, 1), E(-2, 5), E(2, -1), E(1, 4)
    s = gen_solution_raw(al, be, a, E(0))
    assert (s.Y, s.X1, s.X2, s.X3) == (a**3 * al, a**3 * al, E(0), E(0))
    s = gen_solution_raw(al, be, E(0), b)
    assert s.Y == b**3 * be and s.X1 == E(0, 1) * b**3 * be
    assert al * s.Y**3 == al * b**9 * be**3 == al * s.X1**3
    s = gen_solution_raw(E(1), E(1), E(1), E(1))
    assert (s.Y, s.X1, s.X2, s.X3) == (E(2), E(1, 1), E(1), E(1))
    assert verify_raw_solution(s)


def test_substitution_chain():
    # raw family at alpha = 3(1 - rho) gamma, b = (1 - rho) c equals the final family
    # scaled by 3(1 - rho) in Y, X1, X2 and by (1 - rho) in X3
    rng = random.Random(7)
    omr = E(1, -1)
    lam = 3 * omr
    for _ in range(50):
        g, be, a, c = (rand_eis(rng) for _ in range(4))
        fin = gen_solution(g, be, a, c)
        raw = gen_solution_raw(lam * g, be, a, omr * c)
        assert (raw.Y, raw.X1, raw.X2, raw.X3) == (lam * fin.Y, lam * fin.X1, lam * fin.X2, omr * fin.X3)
        # intermediate family before b -> (1 - rho) c
        mid = gen_solution_raw(lam * g, be, a, c)
        assert mid.Y == lam * a**3 * g + c**3 * be
        assert mid.X2 == lam * a**2 * c * g


big = st.builds(E, st.integers(-(2**64), 2**64), st.integers(-(2**64), 2**64))


@settings(max_examples=200, deadline=None)
@given(big, big, big, big)
def test_families_always_verify(g, be, a, c):
    assert verify_solution(gen_solution(g, be, a, c))
    assert verify_raw_solution(gen_solution_raw(g, be, a, c))


def test_verify_solution_examples():
    assert verify_solution(gen_solution(E(1), E(1), E(1), E(1)))
    bad = CubicSolution(E(1), E(1), E(0), E(0), E(1), E(1), E(1), E(0), False)
    assert not verify_solution(bad)
    zero = CubicSolution(*(E(0),) * 8, True)
    assert verify_solution(zero)


def test_eisenstein_ball():
    assert eisenstein_ball(0) == [E(0)]
    units = eisenstein_ball(1)
    assert len(units) == 7
    assert sorted(units, key=lambda x: (x.a, x.b)) == units
    for bound in (3, 10, 50):
        brute = sorted(
            (a, b) for a in range(-20, 21) for b in range(-20, 21) if a * a - a * b + b * b <= bound
        )
        assert [(x.a, x.b) for x in eisenstein_ball(bound)] == brute


def test_enumerate_solutions():
    sols = list(enumerate_solutions(E(1), E(1), 0))
    assert len(sols) == 1 and sols[0].degenerate
    assert all(getattr(sols[0], k) == 0 for k in ("Y", "X1", "X2", "X3"))
    sols = list(enumerate_solutions(E(1), E(1), 1))
    assert len(sols) == 49
    keys = [(s.a.a, s.a.b, s.c.a, s.c.b) for s in sols]
    assert keys == sorted(keys)
    assert gen_solution(E(1), E(1), E(1), E(1)) in sols
    assert sum(s.degenerate for s in sols) == 13


def test_solution_json_roundtrip():
    s = gen_solution(E(2, -1), E(10**30, 3), E(1, 1), E(-2, 0))
    doc = s.to_json()
    assert doc["verified"] is True
    assert CubicSolution.from_json(doc) == s

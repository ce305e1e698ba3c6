from fractions import Fraction

import pytest

from qtau.cartan import validate_gcm
from qtau.freewords import cone, czero
from qtau.ncalg import const_realization, q_realization
from qtau.scalars import RatQ, qint
from qtau.verma import (
    VermaEngine, merge_powers, phi_powers, sigma_phi_crosscheck,
    sigma_powers, sigma_word_vec,
)

A2 = validate_gcm([[2, -1], [-1, 2]])
B2 = validate_gcm([[2, -1], [-2, 2]])
A3 = validate_gcm([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])


@pytest.fixture(scope="module")
def a2km():
    return VermaEngine(A2, "km")


@pytest.fixture(scope="module")
def a2q():
    return VermaEngine(A2, "q")


def test_f_word_powers_simple_reflection(a2km):
    lam = (3, 1)
    powers = a2km.f_word_powers((0,), lam)
    assert powers == ((0, 4),)  # f_1^{<a^v_1, lambda> + 1}


def test_f_word_powers_s2s1_at_zero(a2km):
    # A_2, w = s_2 s_1, lambda = 0: F = f_2^2 f_1
    powers = a2km.f_word_powers((0, 1), (0, 0))
    assert powers == ((1, 2), (0, 1))


def test_f_word_powers_negative_raises(a2km):
    with pytest.raises(ValueError):
        a2km.f_word_powers((0, 0), (0, 0))  # non-reduced word


def test_e_action_on_highest_weight(a2km):
    one = {(0,) * a2km.pbw.npos: Fraction(1)}
    assert a2km.e_action(0, one, (2, 1)) == {}


def test_e_action_single_commutator(a2km):
    # e_i(f_i v_lambda) = <a^v_i, lambda> v_lambda
    lam = (3, 2)
    fi = a2km.pbw.word_to_pbw((0,))
    img = a2km.e_action(0, fi, lam)
    vac = (0,) * a2km.pbw.npos
    assert img == {vac: Fraction(3)}
    assert a2km.e_action(1, fi, lam) == {}


def test_e_action_q_case(a2q):
    lam = (3, 2)
    fi = a2q.pbw.word_to_pbw((0,))
    img = a2q.e_action(0, fi, lam)
    vac = (0,) * a2q.pbw.npos
    assert img == {vac: qint(3)}


def test_e_action_telescoping_power(a2km):
    # e_i(f_i^{m+1} v) = (sum_{j=0..m} (lam_i - 2j)) f_i^m v; singular iff m = lam_i
    lam = (3, 0)
    m = 3
    word = (0,) * (m + 1)
    vec = a2km.pbw.word_to_pbw(word)
    img = a2km.e_action(0, vec, lam)
    assert img == {}
    vec2 = a2km.pbw.word_to_pbw((0,) * m)
    img2 = a2km.e_action(0, vec2, lam)
    expected_coeff = Fraction(sum(3 - 2 * j for j in range(m)))
    target = a2km.pbw.word_to_pbw((0,) * (m - 1))
    assert img2 == {mono: c * expected_coeff for mono, c in target.items()}


def test_singular_vectors_a2(a2km, a2q):
    for eng in [a2km, a2q]:
        for word in [(0,), (1,), (0, 1), (1, 0), (0, 1, 0)]:
            for lam in [(0, 0), (1, 0), (1, 1), (2, 1)]:
                rep = eng.singular_report(word, lam)
                assert rep["passed"], rep


def test_singular_vectors_b2():
    for case in ["km", "q"]:
        eng = VermaEngine(B2, case)
        for word in [(0,), (1,), (0, 1), (1, 0)]:
            for lam in [(0, 0), (1, 1)]:
                rep = eng.singular_report(word, lam)
                assert rep["passed"], rep


def test_weight_bookkeeping(a2km):
    # e_action lowers multidegree by alpha_i exactly
    vec = a2km.pbw.word_to_pbw((0, 1, 0))
    img = a2km.e_action(0, vec, (5, 7))
    for mono in img:
        assert a2km.pbw.mono_multideg(mono) == (1, 1)


def test_divide_right_trivial(a2km):
    rep = a2km.divide_right((), (1, 1), (1, 0))
    assert rep["passed"]
    assert rep["quotient"] == {(): Fraction(1)}


def test_divide_right_single_variable(a2km):
    # w = s_i: f_i^{<a^v_i,lam+mu>+1} = f_i^{<a^v_i,mu>} * f_i^{<a^v_i,lam>+1}
    rep = a2km.divide_right((0,), (2, 0), (1, 1))
    assert rep["passed"]
    assert rep["quotient"] == {(0,): Fraction(1)}
    assert rep["solution_dim"] == 0


def test_divide_right_a2_rho(a2km):
    rep = a2km.divide_right((0, 1), (1, 1), (1, 1))
    assert rep["passed"], rep


def test_divide_right_q_matches_km_at_q1(a2q, a2km):
    word = (0, 1)
    lam, mu = (1, 1), (1, 0)
    rq = a2q.divide_right(word, lam, mu)
    rk = a2km.divide_right(word, lam, mu)
    assert rq["passed"] and rk["passed"]
    assert rq["solution_dim"] == rk["solution_dim"]
    limited = {w: c.limit_q1() for w, c in rq["quotient"].items()}
    limited = {w: c for w, c in limited.items() if c != 0}
    assert limited == rk["quotient"]


def test_sigma_involution():
    vec = {(0, 1, 0): Fraction(2), (1, 1): Fraction(-1)}
    assert sigma_word_vec(sigma_word_vec(vec)) == vec


def test_phi_powers_match_f_exponents(a2km):
    # <beta_k, lambda + rho> = N_k
    word = (0, 1)
    lam = (1, 0)
    rho = A2.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    pw = phi_powers(A2, word, lam_rho)
    f_pw = a2km.f_word_powers(word, lam)
    assert merge_powers(sigma_powers(pw)) == merge_powers(f_pw)


def test_sigma_phi_crosscheck_with_realization(a2km):
    real = const_realization(A2)
    for word in [(0,), (0, 1), (0, 1, 0)]:
        rep = sigma_phi_crosscheck(a2km, word, (1, 1), (1, 0), real)
        assert rep["passed"], rep


def test_sigma_phi_crosscheck_q(a2q):
    real = q_realization(A2)
    rep = sigma_phi_crosscheck(a2q, (0, 1), (0, 0), (1, 1), real)
    assert rep["passed"], rep


def test_reduced_word_independence_of_F(a2km):
    # F_{w_0, rho} computed from both reduced words agrees modulo the ideal
    p1 = a2km.F_pbw((0, 1, 0), (1, 1))
    p2 = a2km.F_pbw((1, 0, 1), (1, 1))
    assert p1 == p2


def test_singular_vectors_a3():
    eng = VermaEngine(A3, "km")
    for word in [(0, 1, 2), (0, 2), (1, 0, 2)]:
        rep = eng.singular_report(word, (1, 1, 1))
        assert rep["passed"], rep

from fractions import Fraction
import random

from qtau.scalars import (
    Poly, QLaurent, RatQ, UniPoly, binom_int, binom_linear, qbinom_affine,
    qbinom_int, qbracket_affine, qfact, qint, qpower_affine, unipoly_gcd,
)


def test_binom_int_negative_top():
    assert binom_int(-1, 3) == -1
    assert binom_int(-2, 2) == 3
    assert binom_int(4, 2) == 6
    assert binom_int(2, 5) == 0


def test_unipoly_divmod_and_gcd():
    a = UniPoly([Fraction(-1), Fraction(0), Fraction(1)])  # q^2 - 1
    b = UniPoly([Fraction(-1), Fraction(1)])               # q - 1
    quo, rem = a.divmod(b)
    assert rem.is_zero
    assert quo == UniPoly([Fraction(1), Fraction(1)])
    assert unipoly_gcd(a, b) == b.monic()


def test_qint_values():
    # [2]_q = q + q^{-1}
    two = qint(2)
    expected = RatQ.q_power(1) + RatQ.q_power(-1)
    assert two == expected
    # [3]_q = q^2 + 1 + q^{-2}
    three = qint(3)
    expected = RatQ.q_power(2) + RatQ.const(1) + RatQ.q_power(-2)
    assert three == expected
    assert qint(-3) == -three
    assert qint(0).is_zero


def test_qint_scaled_base():
    # [2]_{q^3} = q^3 + q^{-3}
    assert qint(2, 3) == RatQ.q_power(3) + RatQ.q_power(-3)


def test_qbinom_int_matches_limit():
    # oracle: exact q->1 limit recovers the classical binomial
    for n in range(-4, 5):
        for k in range(4):
            assert qbinom_int(n, k).limit_q1() == binom_int(n, k)


def test_qbinom_int_symmetry():
    assert qbinom_int(4, 2) == qbinom_int(4, 2)
    # [4 choose 2]_q = qint-product check against direct expansion
    val = qint(4) * qint(3) / (qint(2) * qint(1))
    assert qbinom_int(4, 2) == val


def test_poly_ring_axioms_randomized():
    rng = random.Random(7)

    def rand_poly(nvars=3, nterms=4, deg=2):
        terms = {}
        for _ in range(nterms):
            mono = tuple(rng.randint(0, deg) for _ in range(nvars))
            terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        return Poly(3, terms)

    for _ in range(20):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_poly_phi_is_homomorphism():
    rng = random.Random(11)
    for _ in range(10):
        terms_a = {(rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-3, 3))
                   for _ in range(3)}
        terms_b = {(rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-3, 3))
                   for _ in range(3)}
        a, b = Poly(2, terms_a), Poly(2, terms_b)
        vals = (rng.randint(-4, 4), rng.randint(-4, 4))
        assert (a * b).phi(vals) == a.phi(vals) * b.phi(vals)
        assert (a + b).phi(vals) == a.phi(vals) + b.phi(vals)


def test_poly_shift_composes_additively():
    p = Poly(2, {(2, 1): Fraction(3), (0, 1): Fraction(-1)})
    s1 = p.shift((1, 2)).shift((2, -1))
    s2 = p.shift((3, 1))
    assert s1 == s2


def test_binom_linear_phi_matches_integer_binomial():
    # phi_lambda(binom(beta, k)) = binom(<beta,lambda>, k)
    for k in range(4):
        b = binom_linear(2, (1, 2), 0, k)  # beta = b0 + 2 b1
        for v0 in range(-3, 4):
            for v1 in range(-2, 3):
                assert b.phi((v0, v1)) == binom_int(v0 + 2 * v1, k)


def test_qlaurent_bracket_phi_matches_qint():
    # phi of [gamma]_q at <gamma,lambda> = n gives [n]_q
    g = qbracket_affine(2, (1, 1), 0)
    for n0 in range(-2, 3):
        for n1 in range(-2, 3):
            assert g.phi((n0, n1)) == qint(n0 + n1)


def test_qbinom_affine_specializes():
    # substitute beta -> 3 in qbinom(beta, 1): [3]_q = q^2 + 1 + q^{-2}
    b = qbinom_affine(1, (1,), 0, 1)
    assert b.phi((3,)) == qint(3)
    # qbinom(beta, 2) at beta = 4 equals qbinom_int(4, 2)
    b2 = qbinom_affine(1, (1,), 0, 2)
    assert b2.phi((4,)) == qbinom_int(4, 2)


def test_qlaurent_shift_is_automorphism():
    rng = random.Random(3)
    for _ in range(10):
        a = QLaurent(2, {(rng.randint(-2, 2), rng.randint(-2, 2)):
                         RatQ.q_power(rng.randint(-2, 2)) for _ in range(3)})
        b = QLaurent(2, {(rng.randint(-2, 2), rng.randint(-2, 2)):
                         RatQ.const(rng.randint(-3, 3)) for _ in range(3)})
        nu = (rng.randint(-2, 2), rng.randint(-2, 2))
        assert (a * b).shift(nu) == a.shift(nu) * b.shift(nu)
        assert (a + b).shift(nu) == a.shift(nu) + b.shift(nu)
        # shifts compose additively
        nu2 = (1, -1)
        both = tuple(x + y for x, y in zip(nu, nu2))
        assert a.shift(nu).shift(nu2) == a.shift(both)


def test_qpower_affine():
    t = qpower_affine(2, (1, 0), 3, 2)  # q_2^{b0+3} = q^6 q^{2 b0}
    assert t.phi((0, 0)) == RatQ.q_power(6)
    assert t.phi((1, 5)) == RatQ.q_power(8)


def test_ratq_limit_q1():
    assert qint(5).limit_q1() == 5
    assert qfact(3).limit_q1() == 6
    v = (qint(2) - RatQ.const(2))
    assert v.limit_q1() == 0

"""Exact scalar rings for the parameter variables.

Two coefficient rings appear throughout the engine:

* ``Poly`` -- multivariate polynomials over Q in the coroot-basis symbols
  (the additive parameter variables of the Kac-Moody case).
* ``QLaurent`` -- finite sums ``c_gamma(q) * q^gamma`` with ``gamma`` in the
  coroot lattice and ``c_gamma`` exact rational functions of ``q`` (the
  multiplicative parameter variables of the q-difference case).

Both are kept in canonical form so that syntactic equality is semantic
equality.  ``UniPoly``/``RatQ`` provide the exact univariate layer used for
rational functions of q and for the Okamoto recurrence.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

Monomial = Tuple[int, ...]


def binom_int(n: int, k: int) -> Fraction:
    """Binomial coefficient n over k for any integer n and k >= 0."""
    if k < 0:
        raise ValueError("binomial lower index must be nonnegative")
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(n - j, j + 1)
    return num


# ---------------------------------------------------------------------------
# univariate polynomials and rational functions over Q
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([Fraction(c)])

    @classmethod
    def monomial(cls, c, k: int) -> "UniPoly":
        return cls([Fraction(0)] * k + [Fraction(c)])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        return UniPoly([a * c for a in self.coeffs])

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power of a UniPoly")
        out = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lc = other.leading()
        quo = [Fraction(0)] * max(0, len(rem) - dq)
        while len(rem) - 1 >= dq and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dq:
                break
            shift = len(rem) - 1 - dq
            factor = rem[-1] / lc
            quo[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
        return UniPoly(quo), UniPoly(rem)

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lc = self.leading()
        return UniPoly([c / lc for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def eval(self, x) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


class RatQ:
    """Rational function of q over Q, stored reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = None, reduce: bool = True):
        if den is None:
            den = UniPoly.const(1)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero:
            g = unipoly_gcd(num, den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        if num.is_zero:
            den = UniPoly.const(1)
        lc = den.leading()
        if lc != 1:
            num = num.scale(Fraction(1) / lc)
            den = den.scale(Fraction(1) / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatQ":
        return cls(UniPoly.const(c))

    @classmethod
    def q_power(cls, n: int) -> "RatQ":
        if n >= 0:
            return cls(UniPoly.monomial(1, n))
        return cls(UniPoly.const(1), UniPoly.monomial(1, -n), reduce=False)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatQ.const(other)
        return (isinstance(other, RatQ) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RatQ") -> "RatQ":
        return RatQ(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __neg__(self) -> "RatQ":
        return RatQ(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RatQ") -> "RatQ":
        return self + (-other)

    def __mul__(self, other: "RatQ") -> "RatQ":
        return RatQ(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatQ":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RatQ(self.den, self.num)

    def __truediv__(self, other: "RatQ") -> "RatQ":
        return self * other.inverse()

    def scale(self, c) -> "RatQ":
        return RatQ(self.num.scale(c), self.den, reduce=False)

    def eval(self, x) -> Fraction:
        d = self.den.eval(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at q={x}")
        return self.num.eval(x) / d

    def limit_q1(self) -> Fraction:
        """Exact limit at q = 1, cancelling (q-1) factors."""
        num, den = self.num, self.den
        qm1 = UniPoly([Fraction(-1), Fraction(1)])
        while den.eval(1) == 0:
            if num.eval(1) != 0:
                raise ZeroDivisionError("pole of order > 0 at q=1")
            num = num.divmod(qm1)[0]
            den = den.divmod(qm1)[0]
        return num.eval(1) / den.eval(1)

    def __repr__(self):
        return f"RatQ({self.num!r}/{self.den!r})"


RATQ_ZERO = RatQ.const(0)
RATQ_ONE = RatQ.const(1)


def qint(n: int, d: int = 1) -> RatQ:
    """Quantum integer [n] in base q^d: (q^{dn} - q^{-dn}) / (q^d - q^{-d})."""
    num = RatQ.q_power(d * n) - RatQ.q_power(-d * n)
    den = RatQ.q_power(d) - RatQ.q_power(-d)
    return num / den


def qfact(k: int, d: int = 1) -> RatQ:
    out = RATQ_ONE
    for j in range(1, k + 1):
        out = out * qint(j, d)
    return out


def qbinom_int(n: int, k: int, d: int = 1) -> RatQ:
    """q-binomial coefficient with integer top, any sign."""
    if k < 0:
        raise ValueError("q-binomial lower index must be nonnegative")
    out = RATQ_ONE
    for j in range(k):
        out = out * qint(n - j, d)
    return out / qfact(k, d)


# ---------------------------------------------------------------------------
# multivariate polynomials over Q (Kac-Moody parameter scalars)
# ---------------------------------------------------------------------------

def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Poly:
    """Multivariate polynomial over Q in a fixed number of symbols.

    The symbols are the coroot-basis parameter variables; monomials are
    exponent tuples, kept without zero coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, Fraction] = None):
        self.nvars = nvars
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[m] = c

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def symbol(cls, nvars: int, t: int) -> "Poly":
        mono = tuple(1 if u == t else 0 for u in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def linear(cls, nvars: int, coeffs: Sequence[int], const=0) -> "Poly":
        terms: Dict[Monomial, Fraction] = {}
        for t, c in enumerate(coeffs):
            if c:
                mono = tuple(1 if u == t else 0 for u in range(nvars))
                terms[mono] = Fraction(c)
        if const:
            terms[(0,) * nvars] = Fraction(const)
        return cls(nvars, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def const_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(self.nvars)
        return Poly(self.nvars, {m: a * c for m, a in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a Poly")
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def subs(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute symbol t -> images[t] (ring homomorphism)."""
        out = Poly(self.nvars)
        for m, c in self.terms.items():
            term = Poly.const(self.nvars, c)
            for t, e in enumerate(m):
                if e:
                    term = term * (images[t] ** e)
            out = out + term
        return out

    def apply_linear(self, mat: Sequence[Sequence[int]]) -> "Poly":
        """Substitute symbol t -> sum_u mat[t][u] * symbol_u."""
        images = [Poly.linear(self.nvars, row) for row in mat]
        return self.subs(images)

    def shift(self, consts: Sequence[int]) -> "Poly":
        """Substitute symbol t -> symbol t + consts[t] (tau-monomial shift)."""
        if all(c == 0 for c in consts):
            return self
        images = [Poly.symbol(self.nvars, t) + Poly.const(self.nvars, consts[t])
                  for t in range(self.nvars)]
        return self.subs(images)

    def phi(self, values: Sequence) -> Fraction:
        """Evaluate all symbols at integer (or rational) values."""
        out = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for t, e in enumerate(m):
                if e:
                    v *= Fraction(values[t]) ** e
            out += v
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0]))

    def __repr__(self):
        return f"Poly({self.terms})"


def binom_linear(nvars: int, coeffs: Sequence[int], const: int, k: int) -> Poly:
    """Binomial polynomial binom(L, k) for the affine form L = sum c_t b_t + const."""
    if k < 0:
        raise ValueError("binomial lower index must be nonnegative")
    ell = Poly.linear(nvars, coeffs, const)
    out = Poly.const(nvars, 1)
    for j in range(k):
        out = out * (ell - Poly.const(nvars, j))
    fact = 1
    for j in range(2, k + 1):
        fact *= j
    return out.scale(Fraction(1, fact))


# ---------------------------------------------------------------------------
# q-case parameter scalars: finite sums c_gamma(q) q^gamma
# ---------------------------------------------------------------------------

class QLaurent:
    """Finite sum of terms c_gamma(q) * q^gamma with gamma in the coroot lattice.

    gamma is an integer coordinate tuple over the coroot basis; each c_gamma is
    a reduced RatQ.  The q^0 term carries all pure-q content.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Monomial, RatQ] = None):
        self.nvars = nvars
        self.terms: Dict[Monomial, RatQ] = {}
        if terms:
            for g, c in terms.items():
                if not c.is_zero:
                    self.terms[g] = c

    @classmethod
    def zero(cls, nvars: int) -> "QLaurent":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "QLaurent":
        if isinstance(c, RatQ):
            return cls(nvars, {(0,) * nvars: c})
        return cls(nvars, {(0,) * nvars: RatQ.const(c)})

    @classmethod
    def q_gamma(cls, nvars: int, gamma: Sequence[int], coeff: RatQ = None) -> "QLaurent":
        return cls(nvars, {tuple(gamma): coeff if coeff is not None else RATQ_ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(e == 0 for e in g) for g in self.terms)

    def const_value(self) -> RatQ:
        return self.terms.get((0,) * self.nvars, RATQ_ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QLaurent.const(self.nvars, other)
        return isinstance(other, QLaurent) and self.terms == other.terms

    def __add__(self, other: "QLaurent") -> "QLaurent":
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g, RATQ_ZERO) + c
            if s.is_zero:
                out.pop(g, None)
            else:
                out[g] = s
        return QLaurent(self.nvars, out)

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.nvars, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        out: Dict[Monomial, RatQ] = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = tuple(a + b for a, b in zip(g1, g2))
                s = out.get(g, RATQ_ZERO) + c1 * c2
                if s.is_zero:
                    out.pop(g, None)
                else:
                    out[g] = s
        return QLaurent(self.nvars, out)

    def scale(self, c) -> "QLaurent":
        if not isinstance(c, RatQ):
            c = RatQ.const(c)
        if c.is_zero:
            return QLaurent(self.nvars)
        return QLaurent(self.nvars, {g: a * c for g, a in self.terms.items()})

    def __pow__(self, k: int) -> "QLaurent":
        if k < 0:
            raise ValueError("negative power of a QLaurent")
        out = QLaurent.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def apply_gamma_linear(self, mat: Sequence[Sequence[int]]) -> "QLaurent":
        """Substitute q^{b_t} -> q^{sum_u mat[t][u] b_u} (lattice map on exponents)."""
        out: Dict[Monomial, RatQ] = {}
        for g, c in self.terms.items():
            img = [0] * self.nvars
            for t, e in enumerate(g):
                if e:
                    for u in range(self.nvars):
                        img[u] += e * mat[t][u]
            gg = tuple(img)
            s = out.get(gg, RATQ_ZERO) + c
            if s.is_zero:
                out.pop(gg, None)
            else:
                out[gg] = s
        return QLaurent(self.nvars, out)

    def shift(self, pairings: Sequence[int]) -> "QLaurent":
        """q^gamma -> q^{<gamma,nu>} q^gamma, with pairings[t] = <b_t, nu>."""
        out: Dict[Monomial, RatQ] = {}
        for g, c in self.terms.items():
            n = sum(e * p for e, p in zip(g, pairings))
            cc = c * RatQ.q_power(n)
            if not cc.is_zero:
                out[g] = cc
        return QLaurent(self.nvars, out)

    def phi(self, pairings: Sequence[int]) -> RatQ:
        """Substitute q^gamma -> q^{<gamma,lambda>}, collapsing to a rational function."""
        out = RATQ_ZERO
        for g, c in self.terms.items():
            n = sum(e * p for e, p in zip(g, pairings))
            out = out + c * RatQ.q_power(n)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda gc: _grlex_key(gc[0]))

    def __repr__(self):
        return f"QLaurent({self.terms})"


def qbracket_affine(nvars: int, gamma: Sequence[int], m: int, d: int = 1) -> QLaurent:
    """[gamma + m] in base q^d as a QLaurent: q_d-bracket of an affine exponent."""
    den = RatQ.q_power(d) - RatQ.q_power(-d)
    plus = QLaurent.q_gamma(nvars, [d * g for g in gamma],
                            RatQ.q_power(d * m) / den)
    minus = QLaurent.q_gamma(nvars, [-d * g for g in gamma],
                             RatQ.q_power(-d * m) / den)
    return plus - minus


def qbinom_affine(nvars: int, gamma: Sequence[int], m: int, k: int, d: int = 1) -> QLaurent:
    """q-binomial qbinom(gamma + m, k) in base q^d, symbolic in gamma."""
    if k < 0:
        raise ValueError("q-binomial lower index must be nonnegative")
    out = QLaurent.const(nvars, 1)
    for j in range(k):
        out = out * qbracket_affine(nvars, gamma, m - j, d)
    return out.scale(qfact(k, d).inverse())


def qpower_affine(nvars: int, gamma: Sequence[int], m: int, d: int = 1) -> QLaurent:
    """The single term q_d^{gamma + m} = q^{d m} * q^{d gamma}."""
    return QLaurent.q_gamma(nvars, [d * g for g in gamma], RatQ.q_power(d * m))

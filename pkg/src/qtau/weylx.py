"""The Weyl algebra C[x, d/dx] as a dependent-variable realization.

Elements are finite sums sum_k r_k(x) D^k with k in Z and r_k a rational
function of x: a polynomial numerator with parameter-polynomial coefficients
over a factored monic Q[x] denominator.  Negative powers of D move past
polynomial coefficients by the alternating Leibniz expansion and are rejected
past genuine rational ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import RootDatum
from .ncalg import UnsupportedLocalizationError
from .scalars import Poly, UniPoly, binom_int, binom_linear

# numerator: x-exponent -> parameter Poly; denominator: tuple of (monic UniPoly
# coeff tuple, multiplicity) factors


class XPoly:
    """Polynomial in x with parameter-polynomial coefficients."""

    __slots__ = ("nsym", "coeffs")

    def __init__(self, nsym: int, coeffs: Dict[int, Poly] = None):
        self.nsym = nsym
        self.coeffs: Dict[int, Poly] = {}
        if coeffs:
            for e, c in coeffs.items():
                if not c.is_zero:
                    self.coeffs[e] = c

    @classmethod
    def zero(cls, nsym: int) -> "XPoly":
        return cls(nsym)

    @classmethod
    def const(cls, nsym: int, c) -> "XPoly":
        if isinstance(c, Poly):
            return cls(nsym, {0: c})
        return cls(nsym, {0: Poly.const(nsym, c)})

    @classmethod
    def x_power(cls, nsym: int, e: int, coeff=None) -> "XPoly":
        c = Poly.const(nsym, 1) if coeff is None else coeff
        return cls(nsym, {e: c})

    @classmethod
    def from_unipoly(cls, nsym: int, p: UniPoly) -> "XPoly":
        return cls(nsym, {e: Poly.const(nsym, c)
                          for e, c in enumerate(p.coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return XPoly(self.nsym, out)

    def __neg__(self) -> "XPoly":
        return XPoly(self.nsym, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        out: Dict[int, Poly] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e)
                p = c1 * c2
                s = p if s is None else s + p
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return XPoly(self.nsym, out)

    def scale(self, c) -> "XPoly":
        if not isinstance(c, Poly):
            c = Poly.const(self.nsym, c)
        out = {}
        for e, a in self.coeffs.items():
            s = a * c
            if not s.is_zero:
                out[e] = s
        return XPoly(self.nsym, out)

    def derivative(self) -> "XPoly":
        return XPoly(self.nsym, {e - 1: c.scale(e)
                                 for e, c in self.coeffs.items() if e > 0})

    def mul_unipoly(self, p: UniPoly) -> "XPoly":
        return self * XPoly.from_unipoly(self.nsym, p)

    def divmod_unipoly(self, p: UniPoly) -> Tuple["XPoly", "XPoly"]:
        """Division by a monic Q[x] polynomial, coefficients stay Polys."""
        if p.is_zero:
            raise ZeroDivisionError
        dq = p.degree()
        rem = dict(self.coeffs)
        quo: Dict[int, Poly] = {}

        def top():
            return max((e for e, c in rem.items() if not c.is_zero), default=-1)

        e = top()
        while e >= dq:
            c = rem[e]
            shift = e - dq
            quo[shift] = quo.get(shift, Poly.zero(self.nsym)) + c
            for i, pc in enumerate(p.coeffs):
                if pc == 0:
                    continue
                key = shift + i
                cur = rem.get(key, Poly.zero(self.nsym))
                cur = cur - c.scale(pc)
                if cur.is_zero:
                    rem.pop(key, None)
                else:
                    rem[key] = cur
            e = top()
        return XPoly(self.nsym, quo), XPoly(self.nsym, rem)

    def map_coeffs(self, fn) -> "XPoly":
        out = {}
        for e, c in self.coeffs.items():
            cc = fn(c)
            if not cc.is_zero:
                out[e] = cc
        return XPoly(self.nsym, out)

    def __repr__(self):
        return f"XPoly({self.coeffs})"


Factor = Tuple[Tuple[Fraction, ...], int]  # (monic poly coeffs, multiplicity)


class RatX:
    """Rational function in x: XPoly numerator over a factored Q[x] denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: XPoly, den: Sequence[Factor] = (), reduce: bool = True):
        self.num = num
        merged: Dict[Tuple[Fraction, ...], int] = {}
        for coeffs, mult in den:
            if mult:
                merged[coeffs] = merged.get(coeffs, 0) + mult
        if reduce and not num.is_zero:
            for coeffs in list(merged):
                p = UniPoly(coeffs)
                while merged[coeffs] > 0:
                    quo, rem = self.num.divmod_unipoly(p)
                    if rem.is_zero:
                        self.num = quo
                        merged[coeffs] -= 1
                    else:
                        break
        if self.num.is_zero:
            merged = {}
        self.den = tuple(sorted((c, m) for c, m in merged.items() if m > 0))

    @property
    def nsym(self) -> int:
        return self.num.nsym

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return not self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatX):
            return NotImplemented
        # reduced factored forms with monic factors are canonical
        return self.num == other.num and self.den == other.den

    def _with_common_den(self, other: "RatX"):
        raise_den: Dict[Tuple[Fraction, ...], int] = {}
        for c, m in self.den:
            raise_den[c] = m
        for c, m in other.den:
            raise_den[c] = max(raise_den.get(c, 0), m)
        num1 = self.num
        for c, m in raise_den.items():
            have = dict(self.den).get(c, 0)
            for _ in range(m - have):
                num1 = num1.mul_unipoly(UniPoly(c))
        num2 = other.num
        for c, m in raise_den.items():
            have = dict(other.den).get(c, 0)
            for _ in range(m - have):
                num2 = num2.mul_unipoly(UniPoly(c))
        return num1, num2, tuple(raise_den.items())

    def __add__(self, other: "RatX") -> "RatX":
        n1, n2, den = self._with_common_den(other)
        return RatX(n1 + n2, den)

    def __neg__(self) -> "RatX":
        return RatX(-self.num, self.den, reduce=False)

    def __sub__(self, other: "RatX") -> "RatX":
        return self + (-other)

    def __mul__(self, other: "RatX") -> "RatX":
        return RatX(self.num * other.num, tuple(self.den) + tuple(other.den))

    def scale(self, c) -> "RatX":
        return RatX(self.num.scale(c), self.den)

    def derivative(self) -> "RatX":
        # (n / prod p^m)' = n'/prod p^m - sum_t m_t p_t' n / (p_t prod p^m)
        out = RatX(self.num.derivative(), self.den)
        for coeffs, mult in self.den:
            p = UniPoly(coeffs)
            dp = p.derivative()
            extra = self.num.mul_unipoly(dp).scale(-mult)
            newden = tuple((c, m + 1 if c == coeffs else m) for c, m in self.den)
            out = out + RatX(extra, newden)
        return out

    def map_coeffs(self, fn) -> "RatX":
        return RatX(self.num.map_coeffs(fn), self.den)

    def __repr__(self):
        return f"RatX({self.num!r}, den={self.den})"


class XdElement:
    """Normal-form operator sum_k r_k(x) D^k in the Weyl realization."""

    __slots__ = ("nsym", "terms")

    def __init__(self, nsym: int, terms: Dict[int, RatX] = None):
        self.nsym = nsym
        self.terms: Dict[int, RatX] = {}
        if terms:
            for k, r in terms.items():
                if not r.is_zero:
                    self.terms[k] = r

    @classmethod
    def zero(cls, nsym: int) -> "XdElement":
        return cls(nsym)

    @classmethod
    def one(cls, nsym: int) -> "XdElement":
        return cls(nsym, {0: RatX(XPoly.const(nsym, 1))})

    @classmethod
    def from_ratx(cls, r: RatX, k: int = 0) -> "XdElement":
        return cls(r.nsym, {k: r})

    @classmethod
    def x_elem(cls, nsym: int) -> "XdElement":
        return cls(nsym, {0: RatX(XPoly.x_power(nsym, 1))})

    @classmethod
    def d_elem(cls, nsym: int) -> "XdElement":
        return cls(nsym, {1: RatX(XPoly.const(nsym, 1))})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, XdElement) and self.terms == other.terms

    def __add__(self, other: "XdElement") -> "XdElement":
        out = dict(self.terms)
        for k, r in other.terms.items():
            s = out.get(k)
            s = r if s is None else s + r
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return XdElement(self.nsym, out)

    def __neg__(self) -> "XdElement":
        return XdElement(self.nsym, {k: -r for k, r in self.terms.items()})

    def __sub__(self, other: "XdElement") -> "XdElement":
        return self + (-other)

    def scale(self, c) -> "XdElement":
        out = {}
        for k, r in self.terms.items():
            s = r.scale(c)
            if not s.is_zero:
                out[k] = s
        return XdElement(self.nsym, out)

    def __mul__(self, other: "XdElement") -> "XdElement":
        out = XdElement.zero(self.nsym)
        for k, r in self.terms.items():
            for l, s in other.terms.items():
                # r D^k s D^l = sum_j binom(k, j) r s^{(j)} D^{k+l-j}
                if k >= 0:
                    jmax = k
                elif s.is_polynomial:
                    jmax = s.num.degree()
                else:
                    raise UnsupportedLocalizationError(
                        "negative D power past a non-polynomial coefficient")
                deriv = s
                for j in range(jmax + 1):
                    coeff = binom_int(k, j)
                    if coeff != 0 and not deriv.is_zero:
                        term = r * deriv.scale(coeff)
                        out = out + XdElement(self.nsym, {k + l - j: term})
                    if j < jmax:
                        deriv = deriv.derivative()
        return out

    def __pow__(self, n: int) -> "XdElement":
        if n < 0:
            raise UnsupportedLocalizationError(
                "negative power of a general operator")
        out = XdElement.one(self.nsym)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, fn) -> "XdElement":
        out = {}
        for k, r in self.terms.items():
            rr = r.map_coeffs(fn)
            if not rr.is_zero:
                out[k] = rr
        return XdElement(self.nsym, out)

    def is_param_polynomial(self) -> bool:
        """True when every coefficient is polynomial in x and all D powers >= 0."""
        return all(k >= 0 and r.is_polynomial for k, r in self.terms.items())

    def __repr__(self):
        return f"XdElement({self.terms})"


def x_power_elem(nsym: int, n: int) -> XdElement:
    """x^n for any integer n."""
    if n >= 0:
        return XdElement(nsym, {0: RatX(XPoly.x_power(nsym, n))})
    den = ((tuple(UniPoly.monomial(1, 1).coeffs), -n),)
    return XdElement(nsym, {0: RatX(XPoly.const(nsym, 1), den)})


def d_power_elem(nsym: int, n: int) -> XdElement:
    return XdElement(nsym, {n: RatX(XPoly.const(nsym, 1))})


# -- realization ------------------------------------------------------------

@dataclass(frozen=True)
class WeylGenerator:
    """One generator: either a polynomial in x or c*D + p(x) with c != 0."""

    xpoly: Tuple[Fraction, ...]          # polynomial part, Q[x] coefficients
    dcoeff: Fraction = Fraction(0)        # coefficient of D

    def is_x_type(self) -> bool:
        return self.dcoeff == 0

    def is_pure_d(self) -> bool:
        return self.dcoeff != 0 and all(c == 0 for c in self.xpoly)


@dataclass(frozen=True)
class WeylRealization:
    """Assignment of each dependent variable to a Weyl-algebra element."""

    datum: RootDatum
    generators: Tuple[WeylGenerator, ...]

    @property
    def case(self) -> str:
        return "km"

    @property
    def nsym(self) -> int:
        return self.datum.ncoroot

    def generator_elem(self, i: int) -> XdElement:
        g = self.generators[i]
        out = XdElement(self.nsym,
                        {0: RatX(XPoly.from_unipoly(self.nsym, UniPoly(g.xpoly)))})
        if g.dcoeff:
            out = out + d_power_elem(self.nsym, 1).scale(
                Poly.const(self.nsym, g.dcoeff))
        return out

    def generator_power(self, i: int, n: int) -> XdElement:
        """f_i^n, defined also for n < 0 when the generator is invertible."""
        g = self.generators[i]
        if n >= 0:
            return self.generator_elem(i) ** n
        if g.is_pure_d():
            if g.dcoeff != 1:
                raise UnsupportedLocalizationError(
                    "inverse of a scaled D generator")
            return d_power_elem(self.nsym, n)
        if g.is_x_type():
            p = UniPoly(g.xpoly)
            if p.degree() < 1:
                raise UnsupportedLocalizationError("inverse of a constant")
            lc = p.leading()
            monic = p.monic()
            den = ((tuple(monic.coeffs), -n),)
            return XdElement(self.nsym, {
                0: RatX(XPoly.const(self.nsym, Fraction(1) / lc ** (-n)), den)})
        raise UnsupportedLocalizationError(
            "inverse of a mixed x/D generator is not representable")


def weyl_from_table(datum: RootDatum, table: Dict[str, str],
                    constants: Dict[str, Fraction] = None) -> WeylRealization:
    """Build a realization from strings like 'D', 'x', 'x-a', '(x-a)^3', 'D+x'."""
    from .textform import parse_weyl_generator
    gens = []
    for label in datum.labels:
        gens.append(parse_weyl_generator(table[label], constants or {}))
    return WeylRealization(datum, tuple(gens))


def xd_ad_pow(real: WeylRealization, i: int, k: int, target: XdElement) -> XdElement:
    fi = real.generator_elem(i)
    out = target
    for _ in range(k):
        out = fi * out - out * fi
    return out


def xd_serre_check(real: WeylRealization) -> Dict[Tuple[int, int], bool]:
    datum = real.datum
    report = {}
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            val = xd_ad_pow(real, i, 1 - datum.a(i, j),
                            real.generator_elem(j))
            report[(i, j)] = val.is_zero
    return report


def xd_conj_by_power(real: WeylRealization, i: int, beta: Sequence[int],
                     n: int, a: XdElement) -> XdElement:
    """Ad(f_i^{beta+n}) on a Weyl-realization element.

    For an x-type generator p(x): x -> x, D -> D - theta p'/p.  For the pure
    D generator: D -> D, x -> x + theta D^{-1}.  theta = beta + n as a
    parameter polynomial.
    """
    g = real.generators[i]
    nsym = real.nsym
    theta = Poly.linear(nsym, beta, n)
    if g.is_pure_d():
        if g.dcoeff != 1:
            raise UnsupportedLocalizationError("fractional power of scaled D")
        dinv = d_power_elem(nsym, -1)
        ximg = XdElement.x_elem(nsym) + dinv.scale(theta)
        out = XdElement.zero(nsym)
        for k, r in a.terms.items():
            if not r.is_polynomial:
                raise UnsupportedLocalizationError(
                    "conjugating a rational x-coefficient by D^beta")
            # evaluate the numerator polynomial at x + theta D^{-1}
            term = _eval_xpoly_at(r.num, ximg)
            out = out + term * d_power_elem(nsym, k)
        return out
    if g.is_x_type():
        p = UniPoly(g.xpoly)
        if p.degree() < 1:
            raise UnsupportedLocalizationError("fractional power of a constant")
        dp = p.derivative()
        monic = p.monic()
        lc = p.leading()
        # D - theta p'/p
        correction = XdElement(nsym, {
            0: RatX(XPoly.from_unipoly(nsym, dp).scale(theta.scale(-Fraction(1, 1) / lc)),
                    ((tuple(monic.coeffs), 1),))})
        dimg = XdElement.d_elem(nsym) + correction
        out = XdElement.zero(nsym)
        for k, r in a.terms.items():
            if k < 0:
                raise UnsupportedLocalizationError(
                    "conjugating D^{-1} by a fractional power of an x generator")
            out = out + XdElement.from_ratx(r) * dimg ** k
        return out
    raise UnsupportedLocalizationError(
        "fractional powers of mixed x/D generators are not representable")


def _eval_xpoly_at(p: XPoly, ximg: XdElement) -> XdElement:
    nsym = p.nsym
    out = XdElement.zero(nsym)
    for e, c in p.coeffs.items():
        out = out + (ximg ** e).scale(c)
    return out


def xd_phi_lambda(real: WeylRealization, a: XdElement,
                  lam: Sequence[int]) -> XdElement:
    datum = real.datum
    pairings = tuple(
        datum.pair(tuple(1 if u == t else 0 for u in range(datum.ncoroot)), lam)
        for t in range(datum.ncoroot))
    return a.map_coeffs(
        lambda c: Poly.const(datum.ncoroot, c.phi(pairings)))

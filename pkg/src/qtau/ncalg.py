"""Normal-form arithmetic in the constant- and q-commutator realizations.

Elements are finite sums of ordered monomials ``prod_i f_i^{a_i}`` (fixed
index order, integer exponents) with central parameter-scalar coefficients.
Reordering uses the closed two-variable swap rules; a reorder that would be
an infinite series raises :class:`UnsupportedLocalizationError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from .cartan import RootDatum
from .scalars import (
    Poly, QLaurent, RatQ, binom_int, binom_linear, qbinom_affine, qbinom_int,
    qpower_affine,
)

Exps = Tuple[int, ...]


class UnsupportedLocalizationError(RuntimeError):
    """A required reordering or inverse is not a finite normal form."""


def default_eps(datum: RootDatum) -> Tuple[Tuple[int, ...], ...]:
    """Sign pattern with eps_ij = -1 for i < j, giving [f_i, f_j] = -d_i a_ij >= 0.

    For simply-laced chains this reproduces the commutators [f_i, f_{i+1}] = 1.
    """
    n = datum.rank
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j or datum.a(i, j) == 0:
                row.append(0)
            else:
                row.append(-1 if i < j else 1)
        out.append(tuple(row))
    return tuple(out)


def _check_eps(datum: RootDatum, eps) -> None:
    n = datum.rank
    for i in range(n):
        for j in range(n):
            e = eps[i][j]
            if e not in (-1, 0, 1):
                raise ValueError("eps entries must be in {0, +1, -1}")
            if eps[j][i] != -e:
                raise ValueError("eps must be antisymmetric")
            nonzero = datum.a(i, j) != 0 and i != j
            if (e != 0) != nonzero:
                raise ValueError("eps_ij must be nonzero exactly off the "
                                 "vanishing pattern of the GCM")


@dataclass(frozen=True)
class ConstCommutator:
    """Kac-Moody case realization with [f_i, f_j] = c_ij = eps_ij d_i a_ij."""

    datum: RootDatum
    eps: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _check_eps(self.datum, self.eps)

    @property
    def case(self) -> str:
        return "km"

    def c(self, i: int, j: int) -> int:
        return self.eps[i][j] * self.datum.d[i] * self.datum.a(i, j)


@dataclass(frozen=True)
class QCommutator:
    """q-difference case realization with f_j f_i = q^{c_ij} f_i f_j."""

    datum: RootDatum
    eps: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _check_eps(self.datum, self.eps)

    @property
    def case(self) -> str:
        return "q"

    def c(self, i: int, j: int) -> int:
        return self.eps[i][j] * self.datum.d[i] * self.datum.a(i, j)


Realization = Union[ConstCommutator, QCommutator]


def const_realization(datum: RootDatum, eps=None) -> ConstCommutator:
    return ConstCommutator(datum, eps if eps is not None else default_eps(datum))


def q_realization(datum: RootDatum, eps=None) -> QCommutator:
    return QCommutator(datum, eps if eps is not None else default_eps(datum))


def scalar_zero(real: Realization):
    n = real.datum.ncoroot
    return Poly.zero(n) if real.case == "km" else QLaurent.zero(n)


def scalar_const(real: Realization, c):
    n = real.datum.ncoroot
    if real.case == "km":
        return Poly.const(n, c)
    if isinstance(c, RatQ):
        return QLaurent.const(n, c)
    return QLaurent.const(n, Fraction(c))


class NCElement:
    """Finite sum of ordered Laurent monomials with parameter-scalar coefficients."""

    __slots__ = ("real", "terms")

    def __init__(self, real: Realization, terms: Dict[Exps, object] = None):
        self.real = real
        self.terms: Dict[Exps, object] = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero:
                    self.terms[m] = c

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, real: Realization) -> "NCElement":
        return cls(real)

    @classmethod
    def one(cls, real: Realization) -> "NCElement":
        return cls.monomial(real, (0,) * real.datum.rank)

    @classmethod
    def monomial(cls, real: Realization, exps: Sequence[int], coeff=None) -> "NCElement":
        c = scalar_const(real, 1) if coeff is None else coeff
        return cls(real, {tuple(exps): c})

    @classmethod
    def generator(cls, real: Realization, i: int) -> "NCElement":
        exps = tuple(1 if t == i else 0 for t in range(real.datum.rank))
        return cls.monomial(real, exps)

    @classmethod
    def from_scalar(cls, real: Realization, c) -> "NCElement":
        return cls(real, {(0,) * real.datum.rank: c})

    # -- ring structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, NCElement) and self.real == other.real
                and self.terms == other.terms)

    def __add__(self, other: "NCElement") -> "NCElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(m, None)
            else:
                out[m] = s
        return NCElement(self.real, out)

    def __neg__(self) -> "NCElement":
        return NCElement(self.real, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "NCElement") -> "NCElement":
        return self + (-other)

    def scale(self, c) -> "NCElement":
        """Multiply by a central scalar (parameter scalar or base constant)."""
        if isinstance(c, (int, Fraction)):
            return NCElement(self.real,
                             {m: a.scale(c) for m, a in self.terms.items()})
        out = {}
        for m, a in self.terms.items():
            s = a * c
            if not s.is_zero:
                out[m] = s
        return NCElement(self.real, out)

    def __mul__(self, other: "NCElement") -> "NCElement":
        out: Dict[Exps, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                coeff = c1 * c2
                if coeff.is_zero:
                    continue
                for mono, factor in self._mono_mul(m1, m2).items():
                    s = out.get(mono)
                    piece = coeff.scale(factor)
                    s = piece if s is None else s + piece
                    if s.is_zero:
                        out.pop(mono, None)
                    else:
                        out[mono] = s
        return NCElement(self.real, out)

    def __pow__(self, k: int) -> "NCElement":
        if k < 0:
            raise UnsupportedLocalizationError(
                "negative power of a non-monomial element")
        out = NCElement.one(self.real)
        for _ in range(k):
            out = out * self
        return out

    def power(self, k: int) -> "NCElement":
        """Like ** but allows negative k for single invertible monomials."""
        if k >= 0:
            return self ** k
        if len(self.terms) != 1:
            raise UnsupportedLocalizationError(
                "inverse of a sum is not a finite normal form")
        ((m, c),) = self.terms.items()
        inv_mono = tuple(-e for e in m)
        if self.real.case == "km":
            if not (c.is_const() and c.const_value() in (1, -1)):
                # central scalars are invertible in the fraction field but we
                # stay inside the polynomial scalar ring
                raise UnsupportedLocalizationError(
                    "inverse of a non-unit coefficient")
            base = NCElement.monomial(self.real, inv_mono,
                                      scalar_const(self.real, c.const_value()))
        else:
            if len(c.terms) != 1:
                raise UnsupportedLocalizationError(
                    "inverse of a non-monomial q-coefficient")
            ((g, r),) = c.terms.items()
            inv = QLaurent.q_gamma(c.nvars, tuple(-e for e in g), r.inverse())
            base = NCElement.monomial(self.real, inv_mono, inv)
        out = NCElement.one(self.real)
        for _ in range(-k):
            out = out * base
        return out

    # -- monomial reordering ---------------------------------------------

    def _mono_mul(self, a: Exps, b: Exps):
        if self.real.case == "q":
            power = 0
            for j in range(len(a)):
                if not a[j]:
                    continue
                for i in range(j):
                    if b[i]:
                        power += self.real.c(i, j) * a[j] * b[i]
            mono = tuple(x + y for x, y in zip(a, b))
            return {mono: RatQ.q_power(power)}
        return _const_mono_mul(self.real, a, b)

    # -- misc ----------------------------------------------------------------

    def weight_pairings(self) -> Tuple[int, ...]:
        """Common pairing vector <alpha^v_i, weight> of all monomials.

        Raises if the element is not weight-homogeneous.
        """
        datum = self.real.datum
        vals = None
        for m in self.terms:
            cur = tuple(sum(datum.a(i, j) * m[j] for j in range(datum.rank))
                        for i in range(datum.rank))
            if vals is None:
                vals = cur
            elif vals != cur:
                raise ValueError("element is not weight-homogeneous")
        return vals if vals is not None else (0,) * datum.rank

    def map_coeffs(self, fn) -> "NCElement":
        out = {}
        for m, c in self.terms.items():
            cc = fn(c)
            if not cc.is_zero:
                out[m] = cc
        return NCElement(self.real, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def __repr__(self):
        try:
            from .textform import format_ncelement
            return f"NCElement[{format_ncelement(self)}]"
        except ImportError:
            return f"NCElement({self.terms})"


def _const_mono_mul(real: ConstCommutator, a: Exps, b: Exps) -> Dict[Exps, Fraction]:
    """Normal form of f^a * f^b in the constant-commutator realization."""
    rank = len(a)
    lowest = next((i for i in range(rank) if b[i]), None)
    if lowest is None:
        return {tuple(a): Fraction(1)}
    rest = list(b)
    m = rest[lowest]
    rest[lowest] = 0
    rest = tuple(rest)
    out: Dict[Exps, Fraction] = {}
    for mono1, c1 in _push_const(real, tuple(a), lowest, m).items():
        for mono2, c2 in _const_mono_mul(real, mono1, rest).items():
            key = mono2
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def _push_const(real: ConstCommutator, a: Exps, i: int, m: int) -> Dict[Exps, Fraction]:
    """Normal form of f^a * f_i^m, moving f_i^m left past higher-index factors.

    Uses f_j^n f_i^m = sum_k k! C(n,k) C(m,k) (-c_ij)^k f_i^{m-k} f_j^{n-k}.
    """
    if m == 0:
        return {a: Fraction(1)}
    rank = len(a)
    j = next((t for t in range(rank - 1, i, -1) if a[t]), None)
    if j is None:
        mono = list(a)
        mono[i] += m
        return {tuple(mono): Fraction(1)}
    n = a[j]
    c = real.c(i, j)
    astripped = list(a)
    astripped[j] = 0
    astripped = tuple(astripped)
    if c == 0:
        kmax = 0
    elif n >= 0 and m >= 0:
        kmax = min(n, m)
    elif n >= 0:
        kmax = n
    elif m >= 0:
        kmax = m
    else:
        raise UnsupportedLocalizationError(
            f"reordering f_{j}^{n} f_{i}^{m} with c != 0 is an infinite series")
    out: Dict[Exps, Fraction] = {}
    fact = 1
    coeff = Fraction(1)
    for k in range(kmax + 1):
        if k > 0:
            fact *= k
        kcoeff = fact * binom_int(n, k) * binom_int(m, k) * Fraction(-c) ** k
        if kcoeff == 0:
            continue
        for mono, cc in _push_const(real, astripped, i, m - k).items():
            full = list(mono)
            full[j] += n - k
            full = tuple(full)
            out[full] = out.get(full, Fraction(0)) + kcoeff * cc
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# adjoint powers and fractional-power conjugation
# ---------------------------------------------------------------------------

def ad_pow(real: Realization, i: int, k: int, target: NCElement) -> NCElement:
    """(ad f_i)^k applied to the target element.

    Kac-Moody case: plain iterated commutator.  q-case: the bracket
    f_i a - q_i^{<alpha^v_i, nu>} a f_i evaluated through the weight of the
    (weight-homogeneous) target.
    """
    if k < 0:
        raise ValueError("adjoint power must be nonnegative")
    fi = NCElement.generator(real, i)
    out = target
    for _ in range(k):
        if real.case == "km":
            out = fi * out - out * fi
        else:
            pair = out.weight_pairings()[i]
            di = real.datum.d[i]
            out = fi * out - (out * fi).map_coeffs(
                lambda c: c.scale(RatQ.q_power(di * pair)))
    return out


@dataclass(frozen=True)
class FracPower:
    """Fractional power f_i^{beta + n}: beta in coroot coordinates, n an integer."""

    i: int
    beta: Tuple[int, ...]
    n: int = 0

    def negate(self) -> "FracPower":
        return FracPower(self.i, tuple(-b for b in self.beta), -self.n)


def conj_generator(real: Realization, p: FracPower, j: int) -> NCElement:
    """Closed form of f_i^{beta+n} f_j f_i^{-(beta+n)}."""
    i = p.i
    datum = real.datum
    if i == j:
        return NCElement.generator(real, j)
    aij = datum.a(i, j)
    if aij == 0:
        return NCElement.generator(real, j)
    nsym = datum.ncoroot
    fj = NCElement.generator(real, j)
    out = NCElement.zero(real)
    for k in range(-aij + 1):
        adk = ad_pow(real, i, k, fj)
        if adk.is_zero:
            continue
        inv = tuple(-k if t == i else 0 for t in range(datum.rank))
        adk_fik = adk * NCElement.monomial(real, inv)
        if real.case == "km":
            coeff = binom_linear(nsym, p.beta, p.n, k)
        else:
            di = datum.d[i]
            coeff = (qpower_affine(nsym, tuple((k + aij) * b for b in p.beta),
                                   (k + aij) * (p.n - k), di)
                     * qbinom_affine(nsym, p.beta, p.n, k, di))
        out = out + adk_fik.scale(coeff)
    return out


def conj_element(real: Realization, p: FracPower, a: NCElement) -> NCElement:
    """Ad(f_i^{beta+n}) extended to normal-form elements as an algebra map."""
    datum = real.datum
    i = p.i
    conj_cache: Dict[int, NCElement] = {}
    out = NCElement.zero(real)
    for mono, coeff in a.terms.items():
        img = NCElement.from_scalar(real, coeff)
        for t in range(datum.rank):
            e = mono[t]
            if not e:
                continue
            if t == i or datum.a(i, t) == 0:
                img = img * NCElement.monomial(
                    real, tuple(e if u == t else 0 for u in range(datum.rank)))
                continue
            if e < 0:
                raise UnsupportedLocalizationError(
                    f"conjugate of f_{datum.labels[t]}^{e} by a fractional "
                    f"power of f_{datum.labels[i]} is not a finite normal form")
            if t not in conj_cache:
                conj_cache[t] = conj_generator(real, p, t)
            img = img * conj_cache[t] ** e
        out = out + img
    return out


def conj_by_power(real: Realization, p: FracPower, a: NCElement) -> NCElement:
    return conj_element(real, p, a)


def phi_lambda_elem(a: NCElement, lam: Sequence[int]) -> NCElement:
    """Coefficientwise substitution of <beta, lambda> into the parameters."""
    real = a.real
    datum = real.datum
    pairings = tuple(
        datum.pair(tuple(1 if u == t else 0 for u in range(datum.ncoroot)), lam)
        for t in range(datum.ncoroot))
    if real.case == "km":
        return a.map_coeffs(
            lambda c: Poly.const(datum.ncoroot, c.phi(pairings)))
    return a.map_coeffs(
        lambda c: QLaurent.const(datum.ncoroot, c.phi(pairings)))


def serre_check(real: Realization) -> Dict[Tuple[int, int], bool]:
    """Verify (ad f_i)^{1 - a_ij}(f_j) = 0 for all i != j in the realization."""
    datum = real.datum
    report = {}
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            val = ad_pow(real, i, 1 - datum.a(i, j),
                         NCElement.generator(real, j))
            report[(i, j)] = val.is_zero
    return report


def integer_conj(real: Realization, i: int, n: int, a: NCElement) -> NCElement:
    """Direct f_i^n a f_i^{-n} by monomial multiplication (integer powers)."""
    rank = real.datum.rank
    left = NCElement.monomial(real, tuple(n if t == i else 0 for t in range(rank)))
    right = NCElement.monomial(real, tuple(-n if t == i else 0 for t in range(rank)))
    return left * a * right

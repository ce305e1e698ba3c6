"""Free algebra on the dependent variables, graded by multidegree, with the
(q-)Serre ideal realized degreewise by spanning sets and row reduction."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Sequence, Tuple

from .cartan import RootDatum
from .scalars import RatQ, binom_int, qbinom_int

Word = Tuple[int, ...]
FreeVec = Dict[Word, object]  # word -> Fraction (km) or RatQ (q)


class DegreeCapError(RuntimeError):
    """Requested multidegree is beyond the resource guard."""


def czero(c) -> bool:
    return c.is_zero if isinstance(c, RatQ) else c == 0


def cone(case: str):
    return RatQ.const(1) if case == "q" else Fraction(1)


def multideg(word: Word, rank: int) -> Tuple[int, ...]:
    out = [0] * rank
    for l in word:
        out[l] += 1
    return tuple(out)


def words_of_multidegree(deg: Sequence[int]) -> List[Word]:
    """All words with the given letter counts, lexicographically sorted."""
    letters = []
    for i, c in enumerate(deg):
        letters.extend([i] * c)
    if not letters:
        return [()]
    out = sorted(set(permutations(letters)))
    return out


def count_words(deg: Sequence[int]) -> int:
    from math import comb
    total = sum(deg)
    out = 1
    rest = total
    for c in deg:
        out *= comb(rest, c)
        rest -= c
    return out


def free_mul(a: FreeVec, b: FreeVec, case: str) -> FreeVec:
    out: FreeVec = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            s = out.get(w)
            p = c1 * c2
            s = p if s is None else s + p
            if czero(s):
                out.pop(w, None)
            else:
                out[w] = s
    return out


def free_add(a: FreeVec, b: FreeVec) -> FreeVec:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        s = c if s is None else s + c
        if czero(s):
            out.pop(w, None)
        else:
            out[w] = s
    return out


def free_scale(a: FreeVec, c) -> FreeVec:
    if czero(c):
        return {}
    return {w: x * c for w, x in a.items()}


def word_power(i: int, n: int) -> Word:
    return (i,) * n


def serre_relator(datum: RootDatum, case: str, i: int, j: int) -> FreeVec:
    """sum_k (-1)^k binom(1-a_ij, k) f_i^{1-a_ij-k} f_j f_i^k, q-binomial in base q_i."""
    n = 1 - datum.a(i, j)
    out: FreeVec = {}
    for k in range(n + 1):
        word = word_power(i, n - k) + (j,) + word_power(i, k)
        if case == "q":
            coeff = qbinom_int(n, k, datum.d[i]).scale(Fraction((-1) ** k))
        else:
            coeff = binom_int(n, k) * Fraction((-1) ** k)
        out[word] = coeff
    return out


class ReductionData:
    """Row-reduced spanning set of one multidegree component of the Serre ideal."""

    __slots__ = ("deg", "words", "pivots", "basis")

    def __init__(self, deg, words, pivots, basis):
        self.deg = deg
        self.words = words
        self.pivots = pivots  # word -> normalized FreeVec with that leading word
        self.basis = basis    # words not appearing as pivots

    def reduce(self, vec: FreeVec, case: str) -> FreeVec:
        """Canonical representative modulo the ideal component."""
        return _eliminate_pivots(vec, self.pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)


class SerreQuotientBasis:
    """Degreewise reduction data for the (q-)Serre quotient, built on demand."""

    def __init__(self, datum: RootDatum, case: str, word_guard: int = 4000):
        self.datum = datum
        self.case = case
        self.word_guard = word_guard
        self.relators = {}
        for i in range(datum.rank):
            for j in range(datum.rank):
                if i != j:
                    self.relators[(i, j)] = serre_relator(datum, case, i, j)
        self._cache: Dict[Tuple[int, ...], ReductionData] = {}

    def component(self, deg: Sequence[int]) -> ReductionData:
        deg = tuple(deg)
        if deg in self._cache:
            return self._cache[deg]
        if count_words(deg) > self.word_guard:
            raise DegreeCapError(
                f"multidegree {deg} has {count_words(deg)} words, beyond the "
                f"guard {self.word_guard}")
        rank = self.datum.rank
        spanning: List[FreeVec] = []
        for (i, j), rel in self.relators.items():
            rdeg = multideg(next(iter(rel)), rank)
            rest = tuple(d - r for d, r in zip(deg, rdeg))
            if any(r < 0 for r in rest):
                continue
            # all splits rest = du + dv
            for du in _subdegrees(rest):
                dv = tuple(r - u for r, u in zip(rest, du))
                for u in words_of_multidegree(du):
                    left = free_mul({u: cone(self.case)}, rel, self.case)
                    for v in words_of_multidegree(dv):
                        spanning.append(
                            free_mul(left, {v: cone(self.case)}, self.case))
        pivots: Dict[Word, FreeVec] = {}
        for vec in spanning:
            vec = self._eliminate(vec, pivots)
            if not vec:
                continue
            lead = max(vec)
            lc = vec[lead]
            if self.case == "q":
                inv = lc.inverse()
                vec = {w: c * inv for w, c in vec.items()}
            else:
                vec = {w: c / lc for w, c in vec.items()}
            pivots[lead] = vec
        basis = [w for w in words_of_multidegree(deg) if w not in pivots]
        data = ReductionData(deg, words_of_multidegree(deg), pivots, basis)
        self._cache[deg] = data
        return data

    def _eliminate(self, vec: FreeVec, pivots: Dict[Word, FreeVec]) -> FreeVec:
        return _eliminate_pivots(vec, pivots)

    def reduce(self, vec: FreeVec) -> FreeVec:
        """Reduce a homogeneous vector to its canonical quotient representative."""
        if not vec:
            return {}
        deg = multideg(next(iter(vec)), self.datum.rank)
        for w in vec:
            if multideg(w, self.datum.rank) != deg:
                raise ValueError("vector is not multidegree-homogeneous")
        return self.component(deg).reduce(vec, self.case)

    def dim(self, deg: Sequence[int]) -> int:
        return self.component(deg).dim

    def is_in_ideal(self, vec: FreeVec) -> bool:
        return not self.reduce(vec)


def _eliminate_pivots(vec: FreeVec, pivots: Dict[Word, FreeVec]) -> FreeVec:
    """Worklist elimination: repeatedly clear the largest pivot word present.

    Each step replaces the leading pivot word by strictly smaller words, so
    the loop terminates and the result has no pivot-word support; the
    representative is independent of elimination order, hence linear.
    """
    out = {w: c for w, c in vec.items() if not czero(c)}
    while True:
        lead = None
        for w in out:
            if w in pivots and (lead is None or w > lead):
                lead = w
        if lead is None:
            return out
        c = out.pop(lead)
        row = pivots[lead]
        for rw, rc in row.items():
            if rw == lead:
                continue
            s = out.get(rw)
            p = rc * c
            s = (-p) if s is None else s - p
            if czero(s):
                out.pop(rw, None)
            else:
                out[rw] = s


def _subdegrees(deg: Tuple[int, ...]) -> Iterable[Tuple[int, ...]]:
    if not deg:
        yield ()
        return
    for h in range(deg[0] + 1):
        for rest in _subdegrees(deg[1:]):
            yield (h,) + rest


def positive_roots(datum: RootDatum) -> List[Tuple[int, ...]]:
    """Positive roots of a finite-type GCM in root-lattice coordinates."""
    rank = datum.rank
    simples = [tuple(1 if t == i else 0 for t in range(rank))
               for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    for _ in range(1000):
        new = []
        for root in frontier:
            for i in range(rank):
                img = datum.weyl_act_root((i,), root)
                if all(c >= 0 for c in img) and img not in seen:
                    seen.add(img)
                    new.append(img)
        if not new:
            break
        frontier = new
    else:
        raise ValueError("root closure did not terminate; GCM not finite type?")
    return sorted(seen, key=lambda r: (sum(r), r))


def kostant_dim(roots: List[Tuple[int, ...]], deg: Sequence[int]) -> int:
    """Number of ways to write deg as a nonnegative sum of positive roots."""
    deg = tuple(deg)

    def rec(idx: int, rest: Tuple[int, ...]) -> int:
        if all(r == 0 for r in rest):
            return 1
        if idx == len(roots):
            return 0
        root = roots[idx]
        total = 0
        r = rest
        while True:
            total += rec(idx + 1, r)
            nxt = tuple(a - b for a, b in zip(r, root))
            if any(c < 0 for c in nxt):
                break
            r = nxt
        return total

    return rec(0, deg)

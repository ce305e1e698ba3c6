"""PBW bases of the lower triangular (quantum) enveloping algebra for the
finite types in scope.

Root vectors are built along a convex order from a reduced word of the
longest element; the straightening table is derived by small-multidegree row
reductions in the free algebra and validated to have the
Levendorskii-Soibelman shape (middle terms strictly between the pair).
Every multidegree used during the bootstrap is certified against the Kostant
partition count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import RootDatum
from .freewords import (
    FreeVec, SerreQuotientBasis, cone, czero, free_mul, free_scale,
    kostant_dim, multideg, positive_roots, words_of_multidegree,
)
from .scalars import RatQ

Exps = Tuple[int, ...]   # exponents over convex-order positions
Root = Tuple[int, ...]   # root-lattice coordinates


class PBWBootstrapError(RuntimeError):
    """The derived straightening data failed a certification check."""


def solve_linear(columns: List[Dict[object, object]],
                 target: Dict[object, object], case: str):
    """Solve sum_c x_c * columns[c] = target exactly.

    Returns (solution list, nullity) with free variables set to zero, or
    (None, nullity) when inconsistent.
    """
    one = cone(case)
    keys = sorted({k for col in columns for k in col} | set(target),
                  reverse=True)
    kindex = {k: t for t, k in enumerate(keys)}
    ncols = len(columns)
    rows = [[None] * (ncols + 1) for _ in keys]
    zero = one - one
    for r in range(len(keys)):
        for c in range(ncols + 1):
            rows[r][c] = zero
    for c, col in enumerate(columns):
        for k, v in col.items():
            rows[kindex[k]][c] = v
    for k, v in target.items():
        rows[kindex[k]][ncols] = v

    pivot_of_col: Dict[int, int] = {}
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, len(rows)):
            if not czero(rows[rr][c]):
                pr = rr
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse() if case == "q" else 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and not czero(rows[rr][c]):
                factor = rows[rr][c]
                rows[rr] = [a - factor * b for a, b in zip(rows[rr], rows[r])]
        pivot_of_col[c] = r
        r += 1
    for rr in range(r, len(rows)):
        if not czero(rows[rr][ncols]):
            return None, ncols - len(pivot_of_col)
    sol = [zero] * ncols
    for c, rr in pivot_of_col.items():
        sol[c] = rows[rr][ncols]
    return sol, ncols - len(pivot_of_col)


class PBW:
    """Straightening engine for U(n_-) / U_q(n_-) of a finite-type GCM."""

    def __init__(self, datum: RootDatum, case: str, word_guard: int = 4000):
        self.datum = datum
        self.case = case
        self.sq = SerreQuotientBasis(datum, case, word_guard)
        self.roots_plain = positive_roots(datum)
        self.word0 = self._longest_word()
        if len(self.word0) != len(self.roots_plain):
            raise PBWBootstrapError("longest-word length != number of roots")
        self.roots = self._convex_order()
        self.npos = len(self.roots)
        self.pos_of_root = {r: p for p, r in enumerate(self.roots)}
        self.rootvec: List[FreeVec] = [None] * self.npos
        self.table: Dict[Tuple[int, int], List[Tuple[object, Exps]]] = {}
        self._mono_cache: Dict[Tuple[Exps, Exps], Dict[Exps, object]] = {}
        self._seq_cache: Dict[Tuple[int, ...], Dict[Exps, object]] = {}
        self._word_cache: Dict[Tuple[int, ...], Dict[Exps, object]] = {}
        self._bootstrap()

    # -- setup ---------------------------------------------------------------

    def _longest_word(self) -> Tuple[int, ...]:
        rho = self.datum.rho
        minus = tuple(-c for c in rho)
        word, mu = self.datum.dominant_decompose(minus, cap=10000)
        if mu != rho:
            raise PBWBootstrapError("-rho is not in the W-orbit of rho")
        return word

    def _convex_order(self) -> List[Root]:
        datum = self.datum
        out = []
        for k, ik in enumerate(self.word0):
            prefix = tuple(reversed(self.word0[:k]))
            unit = tuple(1 if t == ik else 0 for t in range(datum.rank))
            out.append(datum.weyl_act_root(prefix, unit))
        if sorted(out) != sorted(self.roots_plain):
            raise PBWBootstrapError("convex order does not enumerate roots")
        return out

    def _bilinear(self, a: Root, b: Root) -> int:
        datum = self.datum
        return sum(datum.d[i] * datum.a(i, j) * a[i] * b[j]
                   for i in range(datum.rank) for j in range(datum.rank))

    def _one(self):
        return cone(self.case)

    def _standard_monomials(self, deg: Root) -> List[Exps]:
        out = []

        def rec(pos: int, rest: Root, acc: List[int]):
            if all(r == 0 for r in rest):
                out.append(tuple(acc + [0] * (self.npos - pos)))
                return
            if pos == self.npos:
                return
            root = self.roots[pos]
            c = 0
            r = rest
            while True:
                rec(pos + 1, r, acc + [c])
                nxt = tuple(x - y for x, y in zip(r, root))
                if any(v < 0 for v in nxt):
                    break
                r = nxt
                c += 1
        rec(0, deg, [])
        return sorted(out)

    def _mono_free(self, exps: Exps) -> FreeVec:
        out = {(): self._one()}
        for p, e in enumerate(exps):
            for _ in range(e):
                out = free_mul(out, self.rootvec[p], self.case)
        return out

    def _certify_degree(self, deg: Root) -> None:
        expected = kostant_dim(self.roots_plain, deg)
        got = self.sq.dim(deg)
        if got != expected:
            raise PBWBootstrapError(
                f"quotient dimension {got} at {deg} != Kostant count {expected}")

    def _coords(self, vec: FreeVec) -> Dict[Tuple[int, ...], object]:
        return self.sq.reduce(vec)

    def _bootstrap(self) -> None:
        datum = self.datum
        # simple root vectors
        for p, root in enumerate(self.roots):
            if sum(root) == 1:
                i = root.index(1)
                self.rootvec[p] = {(i,): self._one()}
        # composite root vectors by height
        for p, root in sorted(enumerate(self.roots),
                              key=lambda pr: sum(pr[1])):
            if self.rootvec[p] is not None:
                continue
            self._certify_degree(root)
            pairs = []
            for a in range(p):
                for b in range(p + 1, self.npos):
                    if tuple(x + y for x, y in zip(self.roots[a],
                                                   self.roots[b])) == root:
                        pairs.append((b - a, -a, a, b))
            if not pairs:
                raise PBWBootstrapError(f"no convex pair for root {root}")
            _, _, a, b = min(pairs)
            if self.rootvec[a] is None or self.rootvec[b] is None:
                raise PBWBootstrapError("pair root vectors not yet built")
            multi = [m for m in self._standard_monomials(root)
                     if m[p] == 0]
            multi_coords = [self._coords(self._mono_free(m)) for m in multi]
            bform = self._bilinear(self.roots[a], self.roots[b])
            twists = [RatQ.q_power(-bform), RatQ.q_power(bform)] \
                if self.case == "q" else [Fraction(1)]
            chosen = None
            for t in twists:
                fb_fa = free_mul(self.rootvec[b], self.rootvec[a], self.case)
                fa_fb = free_mul(self.rootvec[a], self.rootvec[b], self.case)
                cand = dict(fb_fa)
                for w, c in free_scale(fa_fb, t).items():
                    s = cand.get(w)
                    s = (-c) if s is None else s - c
                    if czero(s):
                        cand.pop(w, None)
                    else:
                        cand[w] = s
                coords = self._coords(cand)
                if not coords:
                    continue
                sol, _ = solve_linear(multi_coords, coords, self.case)
                if sol is None:
                    chosen = cand
                    break
            if chosen is None:
                raise PBWBootstrapError(
                    f"no admissible bracket definition for root {root}")
            self.rootvec[p] = chosen
        # straightening table with the LS shape validation
        for a in range(self.npos):
            for b in range(a + 1, self.npos):
                deg = tuple(x + y for x, y in zip(self.roots[a],
                                                  self.roots[b]))
                self._certify_degree(deg)
                monos = self._standard_monomials(deg)
                cols = [self._coords(self._mono_free(m)) for m in monos]
                prod = free_mul(self.rootvec[b], self.rootvec[a], self.case)
                sol, nullity = solve_linear(cols, self._coords(prod), self.case)
                if sol is None or nullity != 0:
                    raise PBWBootstrapError(
                        f"straightening solve failed at pair ({a},{b})")
                expansion = []
                pair_mono = tuple((1 if t in (a, b) else 0)
                                  for t in range(self.npos))
                for m, c in zip(monos, sol):
                    if czero(c):
                        continue
                    if m != pair_mono:
                        support = [t for t, e in enumerate(m) if e]
                        if any(t <= a or t >= b for t in support):
                            raise PBWBootstrapError(
                                f"middle term {m} at pair ({a},{b}) breaks "
                                f"the convexity shape")
                    expansion.append((c, m))
                self.table[(b, a)] = expansion

    # -- arithmetic ------------------------------------------------------------

    def mono_mul(self, c: Exps, d: Exps) -> Dict[Exps, object]:
        key = (c, d)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        seq = []
        for p, e in enumerate(c):
            seq.extend([p] * e)
        for p, e in enumerate(d):
            seq.extend([p] * e)
        out = self._norm_seq(tuple(seq))
        self._mono_cache[key] = out
        return out

    def _norm_seq(self, seq: Tuple[int, ...]) -> Dict[Exps, object]:
        cached = self._seq_cache.get(seq)
        if cached is not None:
            return cached
        pos = None
        for t in range(len(seq) - 1):
            if seq[t] > seq[t + 1]:
                pos = t
                break
        if pos is None:
            exps = [0] * self.npos
            for p in seq:
                exps[p] += 1
            out = {tuple(exps): self._one()}
        else:
            out: Dict[Exps, object] = {}
            b, a = seq[pos], seq[pos + 1]
            for coeff, mono in self.table[(b, a)]:
                mid = []
                for p, e in enumerate(mono):
                    mid.extend([p] * e)
                sub = self._norm_seq(seq[:pos] + tuple(mid) + seq[pos + 2:])
                for m2, c2 in sub.items():
                    s = out.get(m2)
                    piece = coeff * c2
                    s = piece if s is None else s + piece
                    if czero(s):
                        out.pop(m2, None)
                    else:
                        out[m2] = s
        self._seq_cache[seq] = out
        return out

    def mul(self, x: Dict[Exps, object], y: Dict[Exps, object]) -> Dict[Exps, object]:
        out: Dict[Exps, object] = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                cc = c1 * c2
                if czero(cc):
                    continue
                for m, f in self.mono_mul(m1, m2).items():
                    s = out.get(m)
                    piece = cc * f
                    s = piece if s is None else s + piece
                    if czero(s):
                        out.pop(m, None)
                    else:
                        out[m] = s
        return out

    def simple_position(self, i: int) -> int:
        unit = tuple(1 if t == i else 0 for t in range(self.datum.rank))
        return self.pos_of_root[unit]

    def left_mul_gen(self, i: int, vec: Dict[Exps, object]) -> Dict[Exps, object]:
        p = self.simple_position(i)
        unit = tuple(1 if t == p else 0 for t in range(self.npos))
        out: Dict[Exps, object] = {}
        for m, c in vec.items():
            for m2, f in self.mono_mul(unit, m).items():
                s = out.get(m2)
                piece = c * f
                s = piece if s is None else s + piece
                if czero(s):
                    out.pop(m2, None)
                else:
                    out[m2] = s
        return out

    def word_to_pbw(self, word: Tuple[int, ...]) -> Dict[Exps, object]:
        """Image of a free word, with suffix memoization."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            out = {(0,) * self.npos: self._one()}
        else:
            out = self.left_mul_gen(word[0], self.word_to_pbw(word[1:]))
        self._word_cache[word] = out
        return out

    def freevec_to_pbw(self, vec: FreeVec) -> Dict[Exps, object]:
        out: Dict[Exps, object] = {}
        for w, c in vec.items():
            for m, f in self.word_to_pbw(w).items():
                s = out.get(m)
                piece = c * f
                s = piece if s is None else s + piece
                if czero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def mono_multideg(self, m: Exps) -> Root:
        out = [0] * self.datum.rank
        for p, e in enumerate(m):
            if e:
                for t, c in enumerate(self.roots[p]):
                    out[t] += e * c
        return tuple(out)

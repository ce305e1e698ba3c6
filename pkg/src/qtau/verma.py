"""Verma modules, singular vectors F_{w,lambda} and right division between
singular vectors.

Vectors are kept in PBW coordinates of U(n_-) / U_q(n_-); the e_i action is
the recursive commutation e_i(f_j u v_lambda) = delta_ij H(wt(u v_lambda)) u
v_lambda + f_j e_i(u v_lambda) with H the (q-)integer of the coroot pairing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import RootDatum
from .freewords import (
    FreeVec, cone, czero, count_words, free_mul, multideg,
    words_of_multidegree,
)
from .pbw import PBW, solve_linear
from .scalars import RatQ, qint

Powers = Tuple[Tuple[int, int], ...]  # ((index, exponent), ...) left to right
Exps = Tuple[int, ...]


class VermaEngine:
    """Shared PBW data and Verma-module computations for one GCM and case."""

    def __init__(self, datum: RootDatum, case: str, word_guard: int = 4000):
        self.datum = datum
        self.case = case
        self.pbw = PBW(datum, case, word_guard)

    # -- singular vector words -------------------------------------------------

    def f_word_powers(self, word: Sequence[int], lam: Sequence[int]) -> Powers:
        """F_{w,lambda} as a product of powers, leftmost factor first.

        For the reduced word (j_1, ..., j_m) the exponents are
        N_k = <alpha^v_{j_k}, s_{j_{k-1}} ... s_{j_1} o lambda> + 1 and the
        product is f_{j_m}^{N_m} ... f_{j_1}^{N_1}.
        """
        datum = self.datum
        powers = []
        for k, jk in enumerate(word):
            shifted = datum.shifted_act(word[:k], lam)
            n = datum.pair(datum.simple_coroots[jk], shifted) + 1
            if n < 0:
                raise ValueError(
                    f"negative exponent N_{k + 1} = {n}: word not reduced or "
                    f"weight not dominant")
            powers.append((jk, n))
        return tuple(reversed(powers))

    def powers_to_word(self, powers: Powers) -> Tuple[int, ...]:
        out: List[int] = []
        for i, n in powers:
            out.extend([i] * n)
        return tuple(out)

    def powers_to_pbw(self, powers: Powers) -> Dict[Exps, object]:
        return self.pbw.word_to_pbw(self.powers_to_word(powers))

    def F_pbw(self, word: Sequence[int], lam: Sequence[int]) -> Dict[Exps, object]:
        return self.powers_to_pbw(self.f_word_powers(word, lam))

    # -- e action ---------------------------------------------------------------

    def _H(self, i: int, pairing: int):
        if self.case == "q":
            return qint(pairing, self.datum.d[i])
        return Fraction(pairing)

    def _pairing_at(self, i: int, lam: Sequence[int], deg: Sequence[int]) -> int:
        datum = self.datum
        out = datum.pair(datum.simple_coroots[i], lam)
        for j, c in enumerate(deg):
            if c:
                out -= datum.a(i, j) * c
        return out

    def e_action(self, i: int, vec: Dict[Exps, object],
                 lam: Sequence[int]) -> Dict[Exps, object]:
        """e_i applied to (vec . v_lambda), in PBW coordinates."""
        memo: Dict[Exps, Dict[Exps, object]] = {}
        out: Dict[Exps, object] = {}
        for mono, coeff in vec.items():
            for m, c in self._e_mono(i, mono, lam, memo).items():
                s = out.get(m)
                piece = coeff * c
                s = piece if s is None else s + piece
                if czero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def _e_mono(self, i: int, mono: Exps, lam, memo) -> Dict[Exps, object]:
        cached = memo.get(mono)
        if cached is not None:
            return cached
        pbw = self.pbw
        p = next((t for t, e in enumerate(mono) if e), None)
        if p is None:
            memo[mono] = {}
            return {}
        rest = tuple(e - (1 if t == p else 0) for t, e in enumerate(mono))
        rest_deg = pbw.mono_multideg(rest)
        out: Dict[Exps, object] = {}
        # part B: F_p * e_i(rest . v_lambda)
        unit = tuple(1 if t == p else 0 for t in range(pbw.npos))
        for rmono, rc in self._e_mono(i, rest, lam, memo).items():
            for m2, c2 in pbw.mono_mul(unit, rmono).items():
                s = out.get(m2)
                piece = rc * c2
                s = piece if s is None else s + piece
                if czero(s):
                    out.pop(m2, None)
                else:
                    out[m2] = s
        # part A: deletions inside the word expansion of F_p
        rank = self.datum.rank
        for word, cw in pbw.rootvec[p].items():
            suffix_deg = [0] * rank
            # walk from the right so suffix degrees accumulate
            deletions = []
            for t in range(len(word) - 1, -1, -1):
                if word[t] == i:
                    total = tuple(s + r for s, r in zip(suffix_deg, rest_deg))
                    pairing = self._pairing_at(i, lam, total)
                    deletions.append((t, self._H(i, pairing)))
                suffix_deg[word[t]] += 1
            for t, h in deletions:
                if czero(h):
                    continue
                # (word without letter t) acting on rest
                cut = word[:t] + word[t + 1:]
                piecevec = {rest: cone(self.case)}
                for letter in reversed(cut):
                    piecevec = pbw.left_mul_gen(letter, piecevec)
                for m2, c2 in piecevec.items():
                    s = out.get(m2)
                    piece = cw * h * c2
                    s = piece if s is None else s + piece
                    if czero(s):
                        out.pop(m2, None)
                    else:
                        out[m2] = s
        memo[mono] = out
        return out

    def singular_report(self, word: Sequence[int],
                        lam: Sequence[int]) -> Dict[str, object]:
        """Is F_{w,lambda} v_lambda singular (killed by every e_i)?"""
        vec = self.F_pbw(word, lam)
        failures = []
        for i in range(self.datum.rank):
            img = self.e_action(i, vec, lam)
            if img:
                failures.append(i)
        return {"word": tuple(word), "lambda": tuple(lam),
                "passed": not failures, "failed_indices": failures}

    # -- right division -----------------------------------------------------------

    def divide_right(self, word: Sequence[int], lam: Sequence[int],
                     mu: Sequence[int],
                     word_guard: int = 4000) -> Dict[str, object]:
        """Solve F_{w,lambda+mu} = P * F_{w,lambda} modulo the Serre ideal.

        Returns the canonical row-reduced solution (free variables zero) and
        the dimension of the solution space.
        """
        datum = self.datum
        lam_mu = tuple(a + b for a, b in zip(lam, mu))
        small = self.f_word_powers(word, lam)
        big = self.f_word_powers(word, lam_mu)
        small_word = self.powers_to_word(small)
        big_word = self.powers_to_word(big)
        rank = datum.rank
        d = tuple(a - b for a, b in zip(multideg(big_word, rank),
                                        multideg(small_word, rank)))
        if any(x < 0 for x in d):
            raise ValueError("degree of F_{w,lambda+mu} does not dominate "
                             "that of F_{w,lambda}")
        if count_words(d) > word_guard:
            raise ValueError(
                f"quotient degree {d} has {count_words(d)} candidate words, "
                f"beyond the guard {word_guard}")
        candidates = words_of_multidegree(d)
        cols = [self.pbw.word_to_pbw(w + small_word) for w in candidates]
        target = self.pbw.word_to_pbw(big_word)
        sol, nullity = solve_linear(cols, target, self.case)
        # word-level nullity always contains the Serre-ideal directions of
        # degree d; the solution dimension inside U_- is what is reported
        from .freewords import kostant_dim
        ideal_dim = len(candidates) - kostant_dim(self.pbw.roots_plain, d)
        quotient_dim = nullity - ideal_dim
        if sol is None:
            return {"word": tuple(word), "lambda": tuple(lam),
                    "mu": tuple(mu), "passed": False, "quotient": None,
                    "solution_dim": quotient_dim}
        quotient = {w: c for w, c in zip(candidates, sol) if not czero(c)}
        # paranoia: verify the product reproduces the big singular word
        check: Dict[Exps, object] = {}
        for w, c in quotient.items():
            for m, f in self.pbw.word_to_pbw(w + small_word).items():
                s = check.get(m)
                piece = c * f
                s = piece if s is None else s + piece
                if czero(s):
                    check.pop(m, None)
                else:
                    check[m] = s
        assert check == target
        return {"word": tuple(word), "lambda": tuple(lam), "mu": tuple(mu),
                "passed": True, "quotient": quotient,
                "solution_dim": quotient_dim}


def sigma_word_vec(vec: FreeVec) -> FreeVec:
    """The order-reversing anti-involution on free words."""
    return {tuple(reversed(w)): c for w, c in vec.items()}


def sigma_powers(powers: Powers) -> Powers:
    return tuple(reversed(powers))


def phi_powers(datum: RootDatum, word: Sequence[int],
               lam_plus_rho: Sequence[int],
               mu: Optional[Sequence[int]] = None) -> Powers:
    """phi_{lambda+rho}(Phi_n) (or of Psi_n when mu is given) as integer powers.

    Phi_n = f_{i_1}^{beta_1} ... f_{i_n}^{beta_n};
    Psi_n has exponents beta_k + <beta_k, mu>.
    """
    from .weylaction import beta_sequence
    betas = beta_sequence(datum, word)
    out = []
    for ik, beta in zip(word, betas):
        n = datum.pair(beta, lam_plus_rho)
        if mu is not None:
            n += datum.pair(beta, mu)
        out.append((ik, n))
    return tuple(out)


def merge_powers(powers: Powers) -> Powers:
    """Combine adjacent equal-index factors and drop zero exponents."""
    out: List[Tuple[int, int]] = []
    for i, n in powers:
        if n == 0:
            continue
        if out and out[-1][0] == i:
            out[-1] = (i, out[-1][1] + n)
        else:
            out.append((i, n))
    return tuple(out)


def sigma_phi_crosscheck(engine: VermaEngine, word: Sequence[int],
                         lam: Sequence[int], mu: Sequence[int],
                         realization=None) -> Dict[str, object]:
    """sigma(phi_{lambda+rho}(Phi_n)) = F_{w,lambda} and the Psi/mu analogue.

    Checked as merged power words, as PBW reductions, and (when a
    realization is supplied) as realization images.
    """
    datum = engine.datum
    rho = datum.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    results = {}
    for tag, shift in (("phi", None), ("psi", mu)):
        pw = phi_powers(datum, word, lam_rho, shift)
        reversed_pw = sigma_powers(pw)
        target = engine.f_word_powers(
            word, lam if shift is None else
            tuple(a + b for a, b in zip(lam, mu)))
        same_word = merge_powers(reversed_pw) == merge_powers(target)
        same_pbw = engine.powers_to_pbw(reversed_pw) == \
            engine.powers_to_pbw(target)
        ok = same_word and same_pbw
        if realization is not None:
            from .ncalg import NCElement
            def evaluate(powers):
                out = NCElement.one(realization)
                for i, n in powers:
                    exps = tuple(n if t == i else 0
                                 for t in range(datum.rank))
                    out = out * NCElement.monomial(realization, exps)
                return out
            ok = ok and evaluate(reversed_pw) == evaluate(target)
        results[tag] = ok
    results["passed"] = results["phi"] and results["psi"]
    results["word"] = tuple(word)
    return results

"""Symmetrizable GCMs, coroot/weight lattices and Weyl group utilities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

Vec = Tuple[int, ...]


class GCMError(ValueError):
    """Raised when a matrix fails the GCM axioms or is not symmetrizable."""


@dataclass(frozen=True)
class RootDatum:
    """A symmetrizable GCM together with a concrete lattice model.

    ``coroot_names`` label a free basis of the coroot lattice and
    ``weight_names`` a basis of the weight lattice; ``pairing[t][u]`` is the
    canonical pairing of the t-th coroot basis vector with the u-th weight
    basis vector.  Simple coroots, simple roots and fundamental weights are
    stored as coordinate vectors over those bases.
    """

    labels: Tuple[str, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    coroot_names: Tuple[str, ...]
    weight_names: Tuple[str, ...]
    pairing_table: Tuple[Tuple[int, ...], ...]
    simple_coroots: Tuple[Vec, ...]
    simple_roots: Tuple[Vec, ...]
    fundamental_weights: Tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def ncoroot(self) -> int:
        return len(self.coroot_names)

    @property
    def nweight(self) -> int:
        return len(self.weight_names)

    def index(self, label) -> int:
        return self.labels.index(str(label))

    def a(self, i: int, j: int) -> int:
        return self.cartan[i][j]

    # -- lattice arithmetic -------------------------------------------------

    def zero_coroot(self) -> Vec:
        return (0,) * self.ncoroot

    def zero_weight(self) -> Vec:
        return (0,) * self.nweight

    def pair(self, beta: Sequence[int], lam: Sequence[int]) -> int:
        """Canonical pairing <beta, lambda> of a coroot vector with a weight vector."""
        out = 0
        for t, bt in enumerate(beta):
            if bt:
                row = self.pairing_table[t]
                out += bt * sum(lt * row[u] for u, lt in enumerate(lam) if lt)
        return out

    def alpha(self, i: int) -> Vec:
        return self.simple_roots[i]

    def alphav(self, i: int) -> Vec:
        return self.simple_coroots[i]

    def Lambda(self, i: int) -> Vec:
        return self.fundamental_weights[i]

    @property
    def rho(self) -> Vec:
        out = [0] * self.nweight
        for lam in self.fundamental_weights:
            for u, c in enumerate(lam):
                out[u] += c
        return tuple(out)

    # -- Weyl group action --------------------------------------------------

    def reflect_coroot(self, i: int, beta: Sequence[int]) -> Vec:
        c = self.pair(beta, self.simple_roots[i])
        av = self.simple_coroots[i]
        return tuple(b - c * a for b, a in zip(beta, av))

    def reflect_weight(self, i: int, lam: Sequence[int]) -> Vec:
        c = self.pair(self.simple_coroots[i], lam)
        al = self.simple_roots[i]
        return tuple(l - c * a for l, a in zip(lam, al))

    def weyl_act_coroot(self, word: Sequence[int], beta: Sequence[int]) -> Vec:
        """Apply w = s_{i_n} ... s_{i_1} for word = (i_1, ..., i_n)."""
        v = tuple(beta)
        for i in word:
            v = self.reflect_coroot(i, v)
        return v

    def weyl_act_weight(self, word: Sequence[int], lam: Sequence[int]) -> Vec:
        v = tuple(lam)
        for i in word:
            v = self.reflect_weight(i, v)
        return v

    def weyl_act_root(self, word: Sequence[int], root: Sequence[int]) -> Vec:
        """Action on root-lattice coordinates (over the simple roots)."""
        v = list(root)
        for i in word:
            c = sum(self.cartan[i][j] * v[j] for j in range(self.rank))
            v[i] -= c
        return tuple(v)

    def coroot_reflection_matrix(self, i: int) -> List[List[int]]:
        """Matrix of s_i on coroot-basis coordinates: row t = image of basis vector t."""
        n = self.ncoroot
        av = self.simple_coroots[i]
        mat = []
        for t in range(n):
            basis = tuple(1 if u == t else 0 for u in range(n))
            c = self.pair(basis, self.simple_roots[i])
            mat.append([(1 if u == t else 0) - c * av[u] for u in range(n)])
        return mat

    def coroot_word_matrix(self, word: Sequence[int]) -> List[List[int]]:
        """Matrix of w = s_{i_n} ... s_{i_1} on coroot coordinates (rows = images)."""
        n = self.ncoroot
        mat = [[1 if u == t else 0 for u in range(n)] for t in range(n)]
        for t in range(n):
            v = tuple(mat[t])
            mat[t] = list(self.weyl_act_coroot(word, v))
        return mat

    def shifted_act(self, word: Sequence[int], lam: Sequence[int]) -> Vec:
        """Shifted action w o lambda = w(lambda + rho) - rho."""
        rho = self.rho
        shifted = tuple(l + r for l, r in zip(lam, rho))
        img = self.weyl_act_weight(word, shifted)
        return tuple(v - r for v, r in zip(img, rho))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(self.pair(self.simple_coroots[i], lam) >= 0
                   for i in range(self.rank))

    # -- reduced words ------------------------------------------------------

    def is_reduced(self, word: Sequence[int]) -> Tuple[bool, int]:
        """Whether the word is reduced, plus the length of the element.

        Standard root-sign criterion for w_t = s_{i_t} ... s_{i_1}: prepending
        s_i increases length iff w^{-1}(alpha_i) is a positive root.  The
        images w^{-1}(alpha_j) are tracked in root-lattice coordinates.
        """
        # images[j] = w^{-1}(alpha_j); update for w -> s_i w is
        # images[j] -= a_ij * images[i] (since (s_i w)^{-1} = w^{-1} s_i).
        images = [[1 if j == t else 0 for j in range(self.rank)]
                  for t in range(self.rank)]
        length = 0
        reduced = True
        for i in word:
            if all(c >= 0 for c in images[i]):
                length += 1
            else:
                reduced = False
                length -= 1
            base = list(images[i])
            for j in range(self.rank):
                aij = self.cartan[i][j]
                if aij:
                    images[j] = [x - aij * b for x, b in zip(images[j], base)]
        return reduced, length

    def word_length(self, word: Sequence[int]) -> int:
        return self.is_reduced(word)[1]

    def words_equal(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        """Equality in W, decided by the action on a spanning set of weights."""
        for t in range(self.nweight):
            basis = tuple(1 if u == t else 0 for u in range(self.nweight))
            if self.weyl_act_weight(w1, basis) != self.weyl_act_weight(w2, basis):
                return False
        for t in range(self.ncoroot):
            basis = tuple(1 if u == t else 0 for u in range(self.ncoroot))
            if self.weyl_act_coroot(w1, basis) != self.weyl_act_coroot(w2, basis):
                return False
        return True

    def elements_up_to(self, max_len: int) -> Dict[Tuple[Vec, ...], Tuple[int, ...]]:
        """All Weyl group elements of length <= max_len.

        Keys are the tuples of images of the fundamental-weight basis (a
        faithful fingerprint); values are lex-smallest reduced words.
        """
        def fingerprint(word):
            out = []
            for t in range(self.nweight):
                basis = tuple(1 if u == t else 0 for u in range(self.nweight))
                out.append(self.weyl_act_weight(word, basis))
            return tuple(out)

        seen = {fingerprint(()): ()}
        frontier = [()]
        for _ in range(max_len):
            newfrontier = []
            for word in frontier:
                for i in range(self.rank):
                    cand = word + (i,)
                    if not self.is_reduced(cand)[0]:
                        continue
                    fp = fingerprint(cand)
                    if fp not in seen:
                        seen[fp] = cand
                        newfrontier.append(cand)
            frontier = newfrontier
        return seen

    def reduced_words_of(self, word: Sequence[int]) -> List[Tuple[int, ...]]:
        """All reduced words of the element given by a reduced word."""
        ok, n = self.is_reduced(word)
        if not ok:
            raise ValueError("input word is not reduced")
        out = []

        def extend(prefix: Tuple[int, ...]):
            if len(prefix) == n:
                if self.words_equal(prefix, word):
                    out.append(prefix)
                return
            for i in range(self.rank):
                cand = prefix + (i,)
                if not self.is_reduced(cand)[0]:
                    continue
                # prune: cand must be extendable to the target, i.e. the
                # remaining part w * cand^{-1} must have the right length
                rest = tuple(word) + tuple(reversed(cand))
                if self.word_length(rest) == n - len(cand):
                    extend(cand)
        extend(())
        return out

    def dominant_decompose(self, nu: Sequence[int], cap: int = 10000):
        """Write nu = w(mu) with mu dominant, or raise if cap is exhausted.

        Reflects at the lowest index with a negative pairing; the recorded
        word is reduced.
        """
        if cap < 1:
            raise ValueError("cap must be >= 1")
        v = tuple(nu)
        refs: List[int] = []
        for _ in range(cap):
            neg = None
            for i in range(self.rank):
                if self.pair(self.simple_coroots[i], v) < 0:
                    neg = i
                    break
            if neg is None:
                word = tuple(reversed(refs))
                return word, v
            refs.append(neg)
            v = self.reflect_weight(neg, v)
        raise TitsConeCapError(
            f"no dominant representative found within {cap} reflections")


class TitsConeCapError(RuntimeError):
    """Decomposition cap exhausted; the weight may lie outside the Tits cone."""


def minimal_symmetrizer(cartan: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Componentwise-minimal positive integer symmetrizer, gcd 1 per block."""
    n = len(cartan)
    ratio: List[Optional[Fraction]] = [None] * n
    comp: List[int] = [-1] * n
    ncomp = 0
    for start in range(n):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        comp[start] = ncomp
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or cartan[i][j] == 0:
                    continue
                # d_i a_ij = d_j a_ji  =>  d_j = d_i * a_ij / a_ji
                r = ratio[i] * Fraction(cartan[i][j], cartan[j][i])
                if ratio[j] is None:
                    ratio[j] = r
                    comp[j] = ncomp
                    stack.append(j)
                elif ratio[j] != r:
                    raise GCMError("not symmetrizable: inconsistent ratios")
        ncomp += 1
    d = [Fraction(0)] * n
    for c in range(ncomp):
        idx = [i for i in range(n) if comp[i] == c]
        den_lcm = 1
        for i in idx:
            den = ratio[i].denominator
            den_lcm = den_lcm * den // gcd(den_lcm, den)
        ints = [ratio[i] * den_lcm for i in idx]
        g = 0
        for v in ints:
            g = gcd(g, v.numerator)
        for i, v in zip(idx, ints):
            d[i] = v / g
    out = tuple(int(x) for x in d)
    for i in range(n):
        for j in range(n):
            if out[i] * cartan[i][j] != out[j] * cartan[j][i]:
                raise GCMError("not symmetrizable: no positive solution")
    return out


def validate_gcm(matrix: Sequence[Sequence[int]],
                 d_hint: Optional[Sequence[int]] = None,
                 labels: Optional[Sequence[str]] = None) -> RootDatum:
    """Validate a GCM and build the default lattice model.

    The default model takes the coroot lattice free on the simple coroots and
    the weight lattice free on the fundamental weights, with
    alpha_j = sum_i a_ij Lambda_i.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise GCMError("not a square matrix")
    cartan = tuple(tuple(int(x) for x in row) for row in matrix)
    for i in range(n):
        if cartan[i][i] != 2:
            raise GCMError(f"not a GCM: a[{i}][{i}] != 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise GCMError(f"not a GCM: a[{i}][{j}] > 0")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise GCMError(
                        f"not a GCM: vanishing pattern asymmetric at ({i},{j})")
    if d_hint is not None:
        d = tuple(int(x) for x in d_hint)
        if any(x <= 0 for x in d):
            raise GCMError("symmetrizer entries must be positive")
        for i in range(n):
            for j in range(n):
                if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                    raise GCMError("provided symmetrizer does not symmetrize")
    else:
        d = minimal_symmetrizer(cartan)
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise GCMError("labels must be distinct and match the rank")

    unit = lambda t: tuple(1 if u == t else 0 for u in range(n))
    simple_coroots = tuple(unit(i) for i in range(n))
    fundamental = tuple(unit(i) for i in range(n))
    simple_roots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
    if len(set(simple_roots)) != n:
        raise GCMError("model violation: alpha_i = alpha_j in the default model")
    pairing = tuple(unit(i) for i in range(n))  # <alpha^v_i, Lambda_j> = delta_ij
    return RootDatum(
        labels=labels,
        cartan=cartan,
        d=d,
        coroot_names=tuple("a" + l for l in labels),
        weight_names=tuple("L" + l for l in labels),
        pairing_table=pairing,
        simple_coroots=simple_coroots,
        simple_roots=simple_roots,
        fundamental_weights=fundamental,
    )


def datum_from_json(text: str) -> RootDatum:
    """Load a GCM description {"labels": [...], "cartan": [[...]], "symmetrizer": [...]}."""
    data = json.loads(text)
    return validate_gcm(data["cartan"], data.get("symmetrizer"),
                        data.get("labels"))


def weight_from_map(datum: RootDatum, m: Dict[str, int]) -> Vec:
    out = [0] * datum.nweight
    for k, v in m.items():
        out[datum.weight_names.index(k)] = int(v)
    return tuple(out)


def coroot_from_map(datum: RootDatum, m: Dict[str, int]) -> Vec:
    out = [0] * datum.ncoroot
    for k, v in m.items():
        out[datum.coroot_names.index(k)] = int(v)
    return tuple(out)


def weight_to_map(datum: RootDatum, v: Sequence[int]) -> Dict[str, int]:
    return {datum.weight_names[u]: c for u, c in enumerate(v) if c}


def coroot_to_map(datum: RootDatum, v: Sequence[int]) -> Dict[str, int]:
    return {datum.coroot_names[u]: c for u, c in enumerate(v) if c}

"""The universal enveloping algebra in a PBW basis.

Monomials are exponent vectors over the ordered basis of the Lie algebra
(the PBW order is the order of the basis list).  Arbitrary words straighten
into the PBW basis through the rewrite x_j x_i = x_i x_j + [x_j, x_i] for
j > i; each rewrite either lowers the degree or lowers the inversion count
at fixed degree, so straightening terminates.

The coproduct uses the closed multinomial formula (generators are primitive,
and splitting an ordered monomial keeps every tensor factor ordered), which
avoids any re-straightening.  All per-monomial results are memoized; every
writer computes identical values, so the caches are observationally pure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial
from random import Random

from .foundations import FreeCombo, Q_ONE, Q_ZERO, accumulate, linear_extend
from .lie_core import LieAlgebra
from .report import Failure

Monomial = tuple  # tuple of dim non-negative ints


def unit_monomial(dim: int) -> Monomial:
    return (0,) * dim

def mono_degree(m: Monomial) -> int:
    return sum(m)

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))

def mono_word(m: Monomial) -> tuple:
    """The ordered word of basis indices the monomial stands for."""
    word = []
    for index, exponent in enumerate(m):
        word.extend([index] * exponent)
    return tuple(word)

def word_monomial(dim: int, word) -> Monomial:
    exps = [0] * dim
    for index in word:
        exps[index] += 1
    return tuple(exps)

def monomials_up_to(dim: int, max_degree: int) -> list:
    """All monomials of degree <= max_degree in graded-lex order."""
    out = []
    for degree in range(max_degree + 1):
        out.extend(sorted(_monomials_of_degree(dim, degree)))
    return out

def _monomials_of_degree(dim: int, degree: int):
    if dim == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in _monomials_of_degree(dim - 1, degree - first):
            yield (first,) + rest


def format_monomial(L: LieAlgebra, m: Monomial) -> str:
    if mono_degree(m) == 0:
        return "1"
    parts = []
    for index, exponent in enumerate(m):
        if exponent == 1:
            parts.append(L.basis[index])
        elif exponent > 1:
            parts.append("%s^%d" % (L.basis[index], exponent))
    return " ".join(parts)


def parse_word(L: LieAlgebra, text: str) -> list:
    """Parse the CLI monomial grammar into a free word of basis indices.

    Factors are separated by whitespace or '*', each 'name' or 'name^k' with
    k >= 1; the literal '1' is the empty word.  The word is *not* reordered:
    straightening is the caller's job, so "Y X" is legal input.
    """
    word = []
    for token in text.replace("*", " ").split():
        if token == "1":
            continue
        name, _, power = token.partition("^")
        if power:
            if not power.isdigit() or int(power) < 1:
                raise ValueError("bad exponent in %r" % token)
            count = int(power)
        else:
            count = 1
        word.extend([L.index(name)] * count)
    return word


def format_element(L: LieAlgebra, u: FreeCombo) -> str:
    if not u:
        return "0"
    parts = []
    for m in sorted(u.keys(), key=lambda mono: (mono_degree(mono), mono)):
        c = u.coeff(m)
        text = format_monomial(L, m)
        if text == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(text)
        else:
            parts.append("%s*%s" % (c, text.replace(" ", "*")))
    return " + ".join(parts)


def compositions(total: int, parts: int):
    """Weak compositions of total into the given number of parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class PBWAlgebra:
    """The enveloping algebra of a Lie algebra, in its PBW basis.

    Elements are FreeCombos keyed by monomials.  n-fold tensors are
    FreeCombos keyed by n-tuples of monomials.
    """

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.dim = L.dim
        self.unit_mono = unit_monomial(L.dim)
        self._straightened: dict = {}
        self._coproducts: dict = {}
        self._splittings: dict = {}

    # -- algebra ------------------------------------------------------------

    def one(self) -> FreeCombo:
        return FreeCombo.single(self.unit_mono)

    def monomial(self, m: Monomial) -> FreeCombo:
        return FreeCombo.single(m)

    def from_lie(self, g: FreeCombo) -> FreeCombo:
        """Embed a Lie element as a degree-1 enveloping element."""
        return g.map_keys(lambda i: word_monomial(self.dim, (i,)))

    def straighten_word(self, word) -> FreeCombo:
        """PBW normal form of a free word of basis indices."""
        word = tuple(word)
        cached = self._straightened.get(word)
        if cached is not None:
            return cached
        result = None
        for p in range(len(word) - 1):
            j, i = word[p], word[p + 1]
            if j > i:
                head, tail = word[:p], word[p + 2:]
                acc = dict(self.straighten_word(head + (i, j) + tail).terms)
                for k, c in self.L.bracket_basis(j, i):
                    accumulate(acc, self.straighten_word(head + (k,) + tail), c)
                result = FreeCombo._raw(acc)
                break
        if result is None:
            result = FreeCombo.single(word_monomial(self.dim, word))
        self._straightened[word] = result
        return result

    def multiply_mono(self, a: Monomial, b: Monomial) -> FreeCombo:
        return self.straighten_word(mono_word(a) + mono_word(b))

    def multiply(self, u: FreeCombo, v: FreeCombo) -> FreeCombo:
        acc: dict = {}
        for a, ca in u:
            for b, cb in v:
                accumulate(acc, self.multiply_mono(a, b), ca * cb)
        return FreeCombo._raw(acc)

    def multiply_all(self, factors) -> FreeCombo:
        result = self.one()
        for factor in factors:
            result = self.multiply(result, factor)
        return result

    def augmentation(self, u: FreeCombo) -> Fraction:
        """The counit: coefficient of the unit monomial."""
        return u.coeff(self.unit_mono)

    # -- coalgebra ----------------------------------------------------------

    def coproduct_mono(self, m: Monomial) -> FreeCombo:
        """Delta(x^a) = sum over b <= a of prod C(a_i, b_i) x^b (x) x^(a-b)."""
        cached = self._coproducts.get(m)
        if cached is not None:
            return cached
        terms = {}
        for b in product(*(range(a + 1) for a in m)):
            rest = tuple(a - x for a, x in zip(m, b))
            coeff = 1
            for a, x in zip(m, b):
                coeff *= comb(a, x)
            terms[(b, rest)] = Fraction(coeff)
        result = FreeCombo._raw(terms)
        self._coproducts[m] = result
        return result

    def coproduct(self, u: FreeCombo) -> FreeCombo:
        return linear_extend(self.coproduct_mono, u)

    def splittings(self, m: Monomial, slots: int) -> list:
        """Terms of the iterated coproduct: (parts tuple, multinomial coeff)."""
        key = (m, slots)
        cached = self._splittings.get(key)
        if cached is not None:
            return cached
        per_coordinate = []
        for a in m:
            options = []
            for split in compositions(a, slots):
                coeff = factorial(a)
                for piece in split:
                    coeff //= factorial(piece)
                options.append((split, coeff))
            per_coordinate.append(options)
        out = []
        for chosen in product(*per_coordinate):
            coeff = 1
            for _, c in chosen:
                coeff *= c
            parts = tuple(tuple(split[s] for split, _ in chosen) for s in range(slots))
            out.append((parts, Fraction(coeff)))
        self._splittings[key] = out
        return out

    def positive_splittings(self, m: Monomial, slots: int) -> list:
        """Splittings in which every tensor factor has positive degree."""
        return [(parts, c) for parts, c in self.splittings(m, slots) if all(any(p) for p in parts)]

    def iterated_coproduct_mono(self, m: Monomial, slots: int) -> FreeCombo:
        if slots < 1:
            raise ValueError("need at least one tensor slot")
        if slots == 1:
            return FreeCombo.single((m,))
        return FreeCombo({parts: c for parts, c in self.splittings(m, slots)})

    def iterated_coproduct(self, u: FreeCombo, slots: int) -> FreeCombo:
        return linear_extend(lambda m: self.iterated_coproduct_mono(m, slots), u)

    # -- convolution --------------------------------------------------------

    def identity_map(self, m: Monomial) -> FreeCombo:
        return FreeCombo.single(m)

    def unit_counit_map(self, m: Monomial) -> FreeCombo:
        """eta . epsilon, the unit of the convolution product."""
        return self.one() if m == self.unit_mono else FreeCombo.zero()

    def augmentation_complement_map(self, m: Monomial) -> FreeCombo:
        """Id - eta.epsilon: kills the unit, fixes positive monomials."""
        return FreeCombo.zero() if m == self.unit_mono else FreeCombo.single(m)

    def convolve(self, F, G):
        """(F * G)(x) = sum F(x') G(x'') over the coproduct of x."""

        def convolved(m: Monomial) -> FreeCombo:
            acc: dict = {}
            for (a, b), c in self.coproduct_mono(m):
                left = F(a)
                if not left:
                    continue
                right = G(b)
                if not right:
                    continue
                accumulate(acc, self.multiply(left, right), c)
            return FreeCombo._raw(acc)

        return convolved

    def apply_map(self, F, u: FreeCombo) -> FreeCombo:
        return linear_extend(F, u)


def tensor_pair(u: FreeCombo, v: FreeCombo) -> FreeCombo:
    """u (x) v as a 2-tensor of monomials."""
    acc = {}
    for a, ca in u:
        for b, cb in v:
            acc[(a, b)] = ca * cb
    return FreeCombo(acc)


def swap_tensor2(t: FreeCombo) -> FreeCombo:
    return t.map_keys(lambda key: (key[1], key[0]))


def multiply_tensor2(U: PBWAlgebra, s: FreeCombo, t: FreeCombo) -> FreeCombo:
    """Componentwise product of 2-tensors of enveloping elements."""
    acc: dict = {}
    for (a1, a2), ca in s:
        for (b1, b2), cb in t:
            left = U.multiply_mono(a1, b1)
            right = U.multiply_mono(a2, b2)
            scalar = ca * cb
            for m1, c1 in left:
                for m2, c2 in right:
                    key = (m1, m2)
                    value = acc.get(key, Q_ZERO) + scalar * c1 * c2
                    if value:
                        acc[key] = value
                    else:
                        acc.pop(key, None)
    return FreeCombo._raw(acc)


# ---------------------------------------------------------------------------
# Hopf-structure verification sweep
# ---------------------------------------------------------------------------

def _random_monomial(rng: Random, dim: int, max_degree: int) -> Monomial:
    degree = rng.randint(0, max_degree)
    exps = [0] * dim
    for _ in range(degree):
        exps[rng.randrange(dim)] += 1
    return tuple(exps)


def _random_element(rng: Random, dim: int, max_degree: int, terms: int = 2) -> FreeCombo:
    acc = {}
    for _ in range(terms):
        m = _random_monomial(rng, dim, max_degree)
        acc[m] = acc.get(m, Q_ZERO) + Fraction(rng.randint(-3, 3))
    return FreeCombo(acc)


def hopf_suite(U: PBWAlgebra, max_degree: int = 4, samples: int = 200, seed: int = 0, progress=None) -> list:
    """Exercise the bialgebra axioms at desk scale; returns failure rows.

    Exhaustive on monomials of degree <= max_degree for the coalgebra laws,
    seeded-random sampling for associativity and convolution laws.
    """
    failures = []
    L = U.L
    rng = Random(seed)
    monos = monomials_up_to(U.dim, max_degree)

    # associativity of the straightening product on random monomial triples
    for _ in range(samples):
        a = _random_monomial(rng, U.dim, 3)
        b = _random_monomial(rng, U.dim, 3)
        c = _random_monomial(rng, U.dim, 3)
        left = U.multiply(U.multiply_mono(a, b), U.monomial(c))
        right = U.multiply(U.monomial(a), U.multiply_mono(b, c))
        if left != right:
            failures.append(Failure(
                condition="hopf.associativity",
                monomial="%s | %s | %s" % (format_monomial(L, a), format_monomial(L, b), format_monomial(L, c)),
                lhs=format_element(L, left), rhs=format_element(L, right)))

    # Delta is an algebra map on random low-degree elements
    for _ in range(max(20, samples // 10)):
        u = _random_element(rng, U.dim, 3)
        v = _random_element(rng, U.dim, 3)
        lhs = U.coproduct(U.multiply(u, v))
        rhs = multiply_tensor2(U, U.coproduct(u), U.coproduct(v))
        if lhs != rhs:
            failures.append(Failure(condition="hopf.coproduct_algebra_map",
                                    monomial=repr((u, v))))

    by_degree: dict = {}
    for m in monos:
        by_degree.setdefault(mono_degree(m), []).append(m)
    for degree in sorted(by_degree):
        if progress:
            progress("hopf", degree, len(by_degree[degree]))
        for m in by_degree[degree]:
            text = format_monomial(L, m)
            # coassociativity
            lhs = linear_extend(lambda pair: tensor_pair(
                U.coproduct_mono(pair[0]), FreeCombo.single(pair[1])).map_keys(
                    lambda key: (key[0][0], key[0][1], key[1])), U.coproduct_mono(m))
            rhs = linear_extend(lambda pair: tensor_pair(
                FreeCombo.single(pair[0]), U.coproduct_mono(pair[1])).map_keys(
                    lambda key: (key[0], key[1][0], key[1][1])), U.coproduct_mono(m))
            direct = U.iterated_coproduct_mono(m, 3)
            if lhs != rhs or lhs != direct:
                failures.append(Failure(condition="hopf.coassociativity", monomial=text))
            # counit laws
            left_counit = FreeCombo({b: c for (a, b), c in U.coproduct_mono(m) if a == U.unit_mono})
            right_counit = FreeCombo({a: c for (a, b), c in U.coproduct_mono(m) if b == U.unit_mono})
            if left_counit != U.monomial(m) or right_counit != U.monomial(m):
                failures.append(Failure(condition="hopf.counit", monomial=text))
            # cocommutativity
            if swap_tensor2(U.coproduct_mono(m)) != U.coproduct_mono(m):
                failures.append(Failure(condition="hopf.cocommutativity", monomial=text))
            # filtration: (Id - eta.eps)^{*k}(m) = 0 once k exceeds the degree
            k = mono_degree(m) + 1
            power = U.augmentation_complement_map
            for _ in range(k - 1):
                power = U.convolve(power, U.augmentation_complement_map)
            if power(m):
                failures.append(Failure(condition="hopf.filtration", monomial=text))

    # convolution unit and associativity on random maps
    def random_map(seed_offset: int):
        local = Random(seed + seed_offset)
        table = {m: _random_element(local, U.dim, 2) for m in monomials_up_to(U.dim, 3)}
        return lambda m: table.get(m, FreeCombo.zero())

    F, G, H = random_map(1), random_map(2), random_map(3)
    for m in monomials_up_to(U.dim, 3):
        text = format_monomial(L, m)
        if U.convolve(U.unit_counit_map, F)(m) != F(m) or U.convolve(F, U.unit_counit_map)(m) != F(m):
            failures.append(Failure(condition="hopf.convolution_unit", monomial=text))
        left = U.convolve(U.convolve(F, G), H)(m)
        right = U.convolve(F, U.convolve(G, H))(m)
        if left != right:
            failures.append(Failure(condition="hopf.convolution_associativity", monomial=text))
    return failures

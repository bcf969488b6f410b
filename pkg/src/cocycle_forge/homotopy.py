"""The Eulerian idempotent and its one-parameter homotopy.

Three operators on the enveloping algebra drive the cocycle lifting:

* the Eulerian idempotent, the convolution logarithm of the identity,
      pr = sum_{k>=1} (-1)^(k+1)/k (Id - eta.eps)^{*k},
  an idempotent projection of U(g) onto g;

* its convolution exponential, the coalgebra-map family
      flow_t = sum_{n>=0} (t^n / n!) pr^{*n},
  which interpolates from eta.eps at t=0 to the identity at t=1.  (The t^n
  factor is what makes the endpoint evaluations come out; the family lives
  in U(g) tensor Q[t].)

* the connection family
      conn_t(x, g) = sum flow_{-t}(x') flow_t(x'' g)
  over the coproduct of x, which is g-valued in each t-degree and vanishes
  at t=0, reducing to eps(x) g at t=1.

The series all terminate: (Id - eta.eps)^{*k} kills monomials of degree
below k, so a degree-d input meets only finitely many terms.  Per-monomial
values are memoized; all writers compute identical values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from .foundations import FreeCombo, Q_ZERO, TPoly, accumulate
from .lie_core import LieAlgebra, bracket, iterated_bracket
from .enveloping import (
    Monomial,
    PBWAlgebra,
    format_monomial,
    mono_degree,
    monomials_up_to,
    word_monomial,
)
from .report import Failure


class NotLieValued(ValueError):
    """An operator that must land in g produced higher-degree terms."""


def project_degree_one(U: PBWAlgebra, u: FreeCombo, what: str = "projection") -> FreeCombo:
    """Read a degree-1 enveloping element back as a Lie element."""
    acc = {}
    for m, c in u:
        if mono_degree(m) != 1:
            raise NotLieValued("%s left the Lie algebra: %s has a term of degree %d"
                               % (what, m, mono_degree(m)))
        acc[m.index(1)] = c
    return FreeCombo(acc)


def descent_count(sigma) -> int:
    return sum(1 for a in range(len(sigma) - 1) if sigma[a] > sigma[a + 1])


def closed_form_idempotent(L: LieAlgebra, elements) -> FreeCombo:
    """Descent-combinatorics formula for the idempotent on a product word:

        (1/n^2) sum over permutations s of (-1)^d(s) C(n-1, d(s))^(-1)
                [g_{s(1)}, ..., g_{s(n)}]

    with d(s) the number of descents and the bracket right-nested.  This is
    an oracle, independent of the convolution series; the cost is n!, so the
    word length is capped at 5.
    """
    elements = list(elements)
    n = len(elements)
    if n == 0:
        raise ValueError("empty word")
    if n > 5:
        raise ValueError("closed form limited to n <= 5")
    acc = FreeCombo.zero()
    for sigma in permutations(range(n)):
        d = descent_count(sigma)
        coeff = Fraction((-1) ** d, comb(n - 1, d))
        acc = acc.add_scaled(iterated_bracket(L, [elements[s] for s in sigma]), coeff)
    return acc * Fraction(1, n * n)


class EulerianHomotopy:
    """Memoized idempotent / flow / connection values for one algebra."""

    def __init__(self, U: PBWAlgebra):
        self.U = U
        self.L = U.L
        self._idempotent: dict = {}
        self._flow: dict = {}
        self._connection: dict = {}

    # -- the idempotent -------------------------------------------------

    def idempotent_mono(self, m: Monomial) -> FreeCombo:
        cached = self._idempotent.get(m)
        if cached is not None:
            return cached
        degree = mono_degree(m)
        acc: dict = {}
        for k in range(1, degree + 1):
            coeff = Fraction((-1) ** (k + 1), k)
            for parts, c in self.U.positive_splittings(m, k):
                accumulate(acc, self.U.multiply_all(FreeCombo.single(p) for p in parts), coeff * c)
        result = project_degree_one(self.U, FreeCombo._raw(acc), "eulerian idempotent")
        self._idempotent[m] = result
        return result

    def idempotent(self, u: FreeCombo) -> FreeCombo:
        acc = FreeCombo.zero()
        for m, c in u:
            acc = acc.add_scaled(self.idempotent_mono(m), c)
        return acc

    # -- the one-parameter coalgebra maps --------------------------------

    def flow_mono(self, m: Monomial) -> TPoly:
        """flow_t on a monomial, as a polynomial in t with U(g) coefficients."""
        cached = self._flow.get(m)
        if cached is not None:
            return cached
        degree = mono_degree(m)
        coeffs = {}
        if degree == 0:
            coeffs[0] = self.U.one()
        for n in range(1, degree + 1):
            acc: dict = {}
            for parts, c in self.U.positive_splittings(m, n):
                factors = [self.U.from_lie(self.idempotent_mono(p)) for p in parts]
                accumulate(acc, self.U.multiply_all(factors), c)
            value = FreeCombo._raw(acc) * Fraction(1, factorial(n))
            if value:
                coeffs[n] = value
        result = TPoly._raw(coeffs)
        self._flow[m] = result
        return result

    def flow(self, u: FreeCombo) -> TPoly:
        acc = TPoly.zero()
        for m, c in u:
            acc = acc + self.flow_mono(m).scale(c)
        return acc

    # -- the connection ---------------------------------------------------

    def connection_mono(self, m: Monomial, k: int) -> TPoly:
        """conn_t(m, x_k), as a polynomial in t with g-valued coefficients."""
        key = (m, k)
        cached = self._connection.get(key)
        if cached is not None:
            return cached
        xk = self.U.monomial(word_monomial(self.U.dim, (k,)))
        total = TPoly.zero()
        for (a, b), c in self.U.coproduct_mono(m):
            left = self.flow_mono(a).substitute_neg_t()
            right = self.flow(self.U.multiply(self.U.monomial(b), xk))
            total = total + left.convolve(right, self.U.multiply).scale(c)
        result = total.map_values(
            lambda value: project_degree_one(self.U, value, "connection"))
        self._connection[key] = result
        return result

    def connection(self, u: FreeCombo, g: FreeCombo) -> TPoly:
        acc = TPoly.zero()
        for m, cm in u:
            for k, ck in g:
                acc = acc + self.connection_mono(m, k).scale(cm * ck)
        return acc

    def connection_alt(self, u: FreeCombo, g: FreeCombo) -> TPoly:
        """The equivalent form -sum flow_{-t}(x' g) flow_t(x'')."""
        ug = self.U.from_lie(g)
        total = TPoly.zero()
        for m, cm in u:
            for (a, b), c in self.U.coproduct_mono(m):
                left = self.flow(self.U.multiply(self.U.monomial(a), ug)).substitute_neg_t()
                right = self.flow_mono(b)
                total = total + left.convolve(right, self.U.multiply).scale(-cm * c)
        return total.map_values(
            lambda value: project_degree_one(self.U, value, "connection"))


def bracket_tpoly(L: LieAlgebra, p: TPoly, q: TPoly) -> TPoly:
    """Bracket of two g-valued polynomials, degreewise-bilinear in t."""
    return p.convolve(q, lambda a, b: bracket(L, a, b))


# ---------------------------------------------------------------------------
# identity sweep
# ---------------------------------------------------------------------------

def identity_suite(H: EulerianHomotopy, max_degree: int = 4, progress=None) -> list:
    """Verify the defining identities of the homotopy on all monomials of
    degree <= max_degree; returns failure rows (expected: none).
    """
    failures = []
    U, L = H.U, H.L
    monos = monomials_up_to(U.dim, max_degree)
    by_degree: dict = {}
    for m in monos:
        by_degree.setdefault(mono_degree(m), []).append(m)

    basis = [L.element(i) for i in range(L.dim)]

    for degree in sorted(by_degree):
        if progress:
            progress("homotopy", degree, len(by_degree[degree]))
        for m in by_degree[degree]:
            text = format_monomial(L, m)
            pr_m = H.idempotent_mono(m)

            # idempotency (image containment in g is checked structurally)
            if H.idempotent(U.from_lie(pr_m)) != pr_m:
                failures.append(Failure(condition="homotopy.idempotent", monomial=text))

            flow_m = H.flow_mono(m)

            # coalgebra morphism: Delta(flow(x)) = (flow (x) flow) Delta(x)
            lhs = flow_m.map_values(U.coproduct)
            rhs = TPoly.zero()
            for (a, b), c in U.coproduct_mono(m):
                piece = H.flow_mono(a).convolve(
                    H.flow_mono(b),
                    lambda left, right: FreeCombo(
                        {(m1, m2): c1 * c2 for m1, c1 in left for m2, c2 in right}))
                rhs = rhs + piece.scale(c)
            if lhs != rhs:
                failures.append(Failure(condition="homotopy.coalgebra_morphism", monomial=text))

            # endpoints: t=0 gives eta.eps, t=1 gives the identity
            if flow_m.evaluate(0, FreeCombo.zero()) != U.unit_counit_map(m):
                failures.append(Failure(condition="homotopy.flow_at_0", monomial=text))
            if flow_m.evaluate(1, FreeCombo.zero()) != U.monomial(m):
                failures.append(Failure(condition="homotopy.flow_at_1", monomial=text))

            # convolution inverse: flow_t * flow_{-t} = eta.eps, per t-degree
            inverse = TPoly.zero()
            for (a, b), c in U.coproduct_mono(m):
                inverse = inverse + H.flow_mono(a).convolve(
                    H.flow_mono(b).substitute_neg_t(), U.multiply).scale(c)
            if inverse != TPoly.constant(U.unit_counit_map(m)):
                failures.append(Failure(condition="homotopy.flow_inverse", monomial=text))

            # antipode consequence at t=-1: sum S(x') x'' = eps(x) 1
            antipode_sum = FreeCombo.zero()
            for (a, b), c in U.coproduct_mono(m):
                s_a = H.flow_mono(a).evaluate(-1, FreeCombo.zero())
                antipode_sum = antipode_sum.add_scaled(U.multiply(s_a, U.monomial(b)), c)
            if antipode_sum != U.unit_counit_map(m):
                failures.append(Failure(condition="homotopy.antipode", monomial=text))

            for k in range(L.dim):
                gname = L.basis[k]
                conn = H.connection_mono(m, k)
                # alternative form of the connection
                if H.connection_alt(U.monomial(m), basis[k]) != conn:
                    failures.append(Failure(condition="homotopy.connection_alt",
                                            generator=gname, monomial=text))
                # endpoints of the connection
                if conn.evaluate(0, FreeCombo.zero()) != FreeCombo.zero():
                    failures.append(Failure(condition="homotopy.connection_at_0",
                                            generator=gname, monomial=text))
                if conn.evaluate(1, FreeCombo.zero()) != basis[k] * U.augmentation(U.monomial(m)):
                    failures.append(Failure(condition="homotopy.connection_at_1",
                                            generator=gname, monomial=text))

                # derivative identity:
                #   pr(y g) - sum [pr(y'), conn_t(y'', g)] = d/dt conn_t(y, g)
                lhs_poly = TPoly.constant(
                    H.idempotent(U.multiply(U.monomial(m), U.from_lie(basis[k]))))
                for (a, b), c in U.coproduct_mono(m):
                    pr_a = H.idempotent_mono(a)
                    if not pr_a:
                        continue
                    lhs_poly = lhs_poly + bracket_tpoly(
                        L, TPoly.constant(pr_a), H.connection_mono(b, k)).scale(-c)
                if lhs_poly != conn.derivative():
                    failures.append(Failure(condition="homotopy.derivative_identity",
                                            generator=gname, monomial=text))

            # bracket identity:
            #   conn(y g, h) - conn(y h, g)
            #     = conn(y, [g, h]) - sum [conn(y', g), conn(y'', h)]
            for kg in range(L.dim):
                for kh in range(L.dim):
                    g, h = basis[kg], basis[kh]
                    lhs_poly = (
                        H.connection(U.multiply(U.monomial(m), U.from_lie(g)), h)
                        - H.connection(U.multiply(U.monomial(m), U.from_lie(h)), g))
                    rhs_poly = H.connection(U.monomial(m), bracket(L, g, h))
                    for (a, b), c in U.coproduct_mono(m):
                        rhs_poly = rhs_poly + bracket_tpoly(
                            L, H.connection_mono(a, kg), H.connection_mono(b, kh)).scale(-c)
                    if lhs_poly != rhs_poly:
                        failures.append(Failure(
                            condition="homotopy.bracket_identity",
                            generator="%s,%s" % (L.basis[kg], L.basis[kh]),
                            monomial=text))
    return failures

"""Lifting constant-valued 3-cocycles to 2-cochains on the dual of U(g).

For a 3-cochain f on g, the lift assigns to an enveloping element x and two
Lie elements g1, g2 the number

    lift(x, g1, g2) = sum over the 3-fold coproduct of x of
        integral over t in [0,1] of
            f(pr(x'), conn_t(x'', g1), conn_t(x''', g2))

with pr the Eulerian idempotent and conn the connection family.  All three
slot values are g-valued, so the integrand is an honest polynomial in t and
the integral is exact.

The central fact (verified at desk scale by verify_coboundary): when f is a
cocycle, the dual-valued Chevalley-Eilenberg coboundary of the lift equals
eps (x) f, i.e.

    d(lift)(m, g1, g2, g3) = eps(m) f(g1, g2, g3)

for every PBW monomial m.  The coboundary is the usual six-term expression
for the action (g.phi)(u) = phi(u g):

    lift(x g1, g2, g3) - lift(x g2, g1, g3) + lift(x g3, g1, g2)
    - lift(x, [g1,g2], g3) + lift(x, [g1,g3], g2) + lift(x, g1, [g2,g3]).

Values are memoized per (monomial, basis pair); the coboundary sweep at
degree D reuses lift values at degree D+1 through the x g products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .foundations import FreeCombo, Q_ZERO, TPoly
from .lie_core import Cochain, LieAlgebra, bracket, ce_diff_constant
from .enveloping import (
    Monomial,
    PBWAlgebra,
    format_monomial,
    mono_degree,
    monomials_up_to,
)
from .homotopy import EulerianHomotopy
from .report import Failure

NOT_A_COCYCLE = "input is not a 3-cocycle"


class CocycleLift:
    """The lifted 2-cochain of a constant-valued 3-cochain.

    The lift formula itself is defined for any antisymmetric 3-cochain; only
    the coboundary theorem needs the cocycle condition, so that condition is
    checked by verify_coboundary, not here.
    """

    def __init__(self, L: LieAlgebra, cocycle: Cochain, homotopy: EulerianHomotopy = None):
        if cocycle.arity != 3:
            raise ValueError("expected a 3-cochain, got arity %d" % cocycle.arity)
        self.L = L
        self.cocycle = cocycle
        self.H = homotopy if homotopy is not None else EulerianHomotopy(PBWAlgebra(L))
        if self.H.L is not L:
            raise ValueError("homotopy is bound to a different algebra")
        self.U = self.H.U
        self._values: dict = {}

    def value_mono(self, m: Monomial, i: int, j: int) -> Fraction:
        """lift(x^m, x_i, x_j); antisymmetric in (i, j)."""
        if i == j:
            return Q_ZERO
        if i > j:
            return -self.value_mono(m, j, i)
        key = (m, i, j)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        f = self.cocycle
        integrand: dict = {}
        for (m1, m2, m3), c in self.U.splittings(m, 3):
            p = self.H.idempotent_mono(m1)
            if not p:
                continue
            left = self.H.connection_mono(m2, i)
            if not left:
                continue
            right = self.H.connection_mono(m3, j)
            if not right:
                continue
            for d1, a in left.coeffs.items():
                for d2, b in right.coeffs.items():
                    value = f.on_elements(p, a, b)
                    if value:
                        degree = d1 + d2
                        integrand[degree] = integrand.get(degree, Q_ZERO) + c * value
        result = TPoly(integrand).integrate_unit_interval()
        self._values[key] = result
        return result

    def value(self, x, g1: FreeCombo, g2: FreeCombo) -> Fraction:
        """Bilinear extension: x an enveloping element (or bare monomial)."""
        if isinstance(x, tuple):
            x = FreeCombo.single(x)
        total = Q_ZERO
        for m, cm in x:
            for i, ci in g1:
                for j, cj in g2:
                    scale = cm * ci * cj
                    if scale:
                        total += scale * self.value_mono(m, i, j)
        return total

    def dual_coboundary(self, x, g1: FreeCombo, g2: FreeCombo, g3: FreeCombo) -> Fraction:
        """The six-term dual-valued coboundary of the lift."""
        if isinstance(x, tuple):
            x = FreeCombo.single(x)
        U, L = self.U, self.L
        xg = lambda g: U.multiply(x, U.from_lie(g))
        return (
            self.value(xg(g1), g2, g3)
            - self.value(xg(g2), g1, g3)
            + self.value(xg(g3), g1, g2)
            - self.value(x, bracket(L, g1, g2), g3)
            + self.value(x, bracket(L, g1, g3), g2)
            + self.value(x, g1, bracket(L, g2, g3))
        )

    def verify_coboundary(self, max_degree: int, progress=None) -> list:
        """Check d(lift) = eps (x) f on all monomials of degree <= max_degree
        and all strictly increasing basis triples; returns failure rows.
        """
        L = self.L
        if not ce_diff_constant(L, self.cocycle).is_zero():
            return [Failure(condition=NOT_A_COCYCLE)]
        failures = []
        by_degree: dict = {}
        for m in monomials_up_to(L.dim, max_degree):
            by_degree.setdefault(mono_degree(m), []).append(m)
        triples = list(combinations(range(L.dim), 3))
        for degree in sorted(by_degree):
            if progress:
                progress("lift", degree, len(by_degree[degree]))
            for m in by_degree[degree]:
                eps = Fraction(1) if mono_degree(m) == 0 else Q_ZERO
                for (i, j, k) in triples:
                    lhs = self.dual_coboundary(m, L.element(i), L.element(j), L.element(k))
                    rhs = eps * self.cocycle.on_indices((i, j, k))
                    if lhs != rhs:
                        failures.append(Failure(
                            condition="lift.coboundary",
                            generator="%s,%s,%s" % (L.basis[i], L.basis[j], L.basis[k]),
                            monomial=format_monomial(L, m),
                            lhs=str(lhs), rhs=str(rhs)))
        return failures

    # -- sl2 tables ----------------------------------------------------------

    def sl2_table(self, pair: str, max_degree: int) -> "BTable":
        """Table of lift values on sl2 monomials X^a Y^b H^c for a named
        basis pair; zero entries are recorded explicitly (the vanishing
        pattern is the point of the table).
        """
        L = self.L
        if L.basis != ("X", "Y", "H"):
            raise ValueError("named pair tables require the built-in sl2 basis (X, Y, H)")
        if pair not in SL2_PAIRS:
            raise ValueError("unknown pair %r (expected one of XY, XH, YH)" % pair)
        i, j = SL2_PAIRS[pair]
        entries = {}
        for m in monomials_up_to(3, max_degree):
            if mono_degree(m) == 0:
                continue
            entries[m] = self.value_mono(m, i, j)
        return BTable(pair=pair, max_degree=max_degree, entries=entries)


SL2_PAIRS = {"XY": (0, 1), "XH": (0, 2), "YH": (1, 2)}

# entry (a, b, c) may be nonzero only when rule(a, b) holds
SL2_VANISHING_RULES = {
    "XY": lambda a, b: a == b,
    "XH": lambda a, b: a == b - 1,
    "YH": lambda a, b: a == b + 1,
}


@dataclass
class BTable:
    pair: str
    max_degree: int
    entries: dict  # (a, b, c) -> Fraction, graded-lex iteration via sorted()

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0]))


def check_vanishing(table: BTable) -> list:
    """Report entries that violate the off-line vanishing pattern."""
    rule = SL2_VANISHING_RULES[table.pair]
    failures = []
    for (a, b, c), value in table.sorted_items():
        if value and not rule(a, b):
            failures.append(Failure(
                condition="vanishing.%s" % table.pair,
                monomial="(%d,%d,%d)" % (a, b, c),
                lhs=str(value), rhs="0"))
    return failures


def abelian_lift_value(L: LieAlgebra, cocycle: Cochain, x, g1: FreeCombo, g2: FreeCombo) -> Fraction:
    """Closed form of the lift for abelian algebras.

    With all brackets zero the idempotent kills every monomial of degree
    other than one, and the integral collapses to a third of the cochain on
    the degree-1 part of x.  Serves as an independent oracle for the general
    formula on abelian inputs.
    """
    if not L.is_abelian():
        raise ValueError("closed form only applies to abelian algebras")
    if isinstance(x, tuple):
        x = FreeCombo.single(x)
    degree_one = FreeCombo({m.index(1): c for m, c in x if mono_degree(m) == 1})
    return Fraction(1, 3) * cocycle.on_elements(degree_one, g1, g2)

"""The abelian-representative crossed module and its quasi-invariant tensor.

The chain being modelled is

    0 -> Q -> V2 -> E = V3 x_alpha g -> g -> 0

where V2 is the full dual of U(g), V3 the dual of its augmentation ideal
(realized as V2 read only on positive-degree monomials), alpha the lifted
2-cocycle, and E the abelian extension of g by V3 it defines.

V2 elements are intensional: finite combinations of evaluation atoms

    ("eps",)          the counit, generating ker(d)
    ("dual", m)       the functional dual to the PBW monomial m
    ("omega", i, j)   m |-> lift(m, x_i, x_j)    (i < j; sign-normalized)
    ("act", k, atom)  m |-> atom(m x_k)

evaluated lazily and memoized.  The g-action on V2 is (g.phi)(u) = phi(u g),
which the "act" atom realizes; conditions that raise the test degree through
products get their extra depth automatically from laziness.

Tensor conditions live in (V2 (x) E) + (E (x) V2) and are compared after a
normal form that quotients by the balance relation mu(u) (x) v = u (x) mu(v)
(all duals of enveloping elements are mu-images of their section lifts, so
the normal form pushes every V3 leg to the right and kills unit components
of the V2 legs).  Condition (a) lives in E (x) E where no balancing applies;
condition (b) holds on the nose and is compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .foundations import FreeCombo, Q_ONE, Q_ZERO, accumulate, exact_nullspace, exact_solve
from .lie_core import (
    LieAlgebra,
    BilinearForm,
    Tensor2,
    bracket,
    is_symmetric_tensor,
    standard_r_matrix,
)
from .enveloping import (
    Monomial,
    PBWAlgebra,
    format_monomial,
    mono_degree,
    mono_word,
    monomials_up_to,
    word_monomial,
)
from .lifting import CocycleLift
from .report import Failure

EPS_ATOM = ("eps",)

COMPAT_VIOLATED = "compatibility condition violated"


@dataclass
class ExtElement:
    """Element (h, Z) of the abelian extension E = V3 x_alpha g."""

    v3: FreeCombo   # atom combination, read through restriction to U(g)+
    lie: FreeCombo  # basis-index combination

    def __add__(self, other):
        return ExtElement(self.v3 + other.v3, self.lie + other.lie)

    def __sub__(self, other):
        return ExtElement(self.v3 - other.v3, self.lie - other.lie)

    def __neg__(self):
        return ExtElement(-self.v3, -self.lie)

    def __mul__(self, scalar):
        return ExtElement(self.v3 * scalar, self.lie * scalar)

    __rmul__ = __mul__


@dataclass
class MixedTensor:
    """Element of (V2 (x) E) + (E (x) V2).

    ve keys: (v2 atom, e key);  ev keys: (e key, v2 atom);
    e keys are ("lie", basis index) or ("v3", atom).
    """

    ve: FreeCombo
    ev: FreeCombo

    @classmethod
    def zero(cls):
        return cls(FreeCombo.zero(), FreeCombo.zero())

    def __add__(self, other):
        return MixedTensor(self.ve + other.ve, self.ev + other.ev)

    def __sub__(self, other):
        return MixedTensor(self.ve - other.ve, self.ev - other.ev)

    def __neg__(self):
        return MixedTensor(-self.ve, -self.ev)

    def __mul__(self, scalar):
        return MixedTensor(self.ve * scalar, self.ev * scalar)

    __rmul__ = __mul__


class AbelianRepresentative:
    """The crossed module mu: V2 -> E with its candidate quasi-invariant
    tensor (rbar, xi, c) for a chosen symmetric invariant 2-tensor r.
    """

    def __init__(self, lift: CocycleLift, r: Tensor2):
        self.lift = lift
        self.L = lift.L
        self.U = lift.U
        if not is_symmetric_tensor(r):
            raise ValueError("r must be a symmetric 2-tensor")
        self.r = r
        self._atom_values: dict = {}

    # -- V2 atoms and evaluation ---------------------------------------------

    def counit(self) -> FreeCombo:
        return FreeCombo.single(EPS_ATOM)

    def dual_monomial(self, m: Monomial) -> FreeCombo:
        return FreeCombo.single(("dual", m))

    def omega(self, i: int, j: int) -> FreeCombo:
        """omega(x_i, x_j), the section lift of alpha(x_i, x_j)."""
        if i == j:
            return FreeCombo.zero()
        if i < j:
            return FreeCombo.single(("omega", i, j))
        return FreeCombo.single(("omega", j, i), Fraction(-1))

    def omega_lie(self, a: FreeCombo, b: FreeCombo) -> FreeCombo:
        acc = FreeCombo.zero()
        for i, ci in a:
            for j, cj in b:
                acc = acc.add_scaled(self.omega(i, j), ci * cj)
        return acc

    def eval_atom(self, atom, m: Monomial) -> Fraction:
        key = (atom, m)
        cached = self._atom_values.get(key)
        if cached is not None:
            return cached
        kind = atom[0]
        if kind == "eps":
            value = Q_ONE if mono_degree(m) == 0 else Q_ZERO
        elif kind == "dual":
            value = Q_ONE if atom[1] == m else Q_ZERO
        elif kind == "omega":
            value = self.lift.value_mono(m, atom[1], atom[2])
        elif kind == "act":
            shifted = self.U.straighten_word(mono_word(m) + (atom[1],))
            value = Q_ZERO
            for m2, c in shifted:
                value += c * self.eval_atom(atom[2], m2)
        else:
            raise ValueError("unknown atom %r" % (atom,))
        self._atom_values[key] = value
        return value

    def eval_dual(self, v: FreeCombo, m: Monomial) -> Fraction:
        total = Q_ZERO
        for atom, c in v:
            total += c * self.eval_atom(atom, m)
        return total

    # -- actions, section, structure maps -------------------------------------

    def act_index(self, k: int, v: FreeCombo) -> FreeCombo:
        """(x_k . phi)(u) = phi(u x_k)."""
        return v.map_keys(lambda atom: ("act", k, atom))

    def act_lie(self, g: FreeCombo, v: FreeCombo) -> FreeCombo:
        acc = FreeCombo.zero()
        for k, c in g:
            acc = acc.add_scaled(self.act_index(k, v), c)
        return acc

    def section(self, v: FreeCombo) -> FreeCombo:
        """The section of d: kill the unit component, Q(d(v)) = v - v(1) eps."""
        at_unit = self.eval_dual(v, self.U.unit_mono)
        if not at_unit:
            return v
        return v.add_scaled(self.counit(), -at_unit)

    def mu(self, v: FreeCombo) -> ExtElement:
        """mu(v) = (d(v), 0): restriction to positive monomials, no Lie part."""
        return ExtElement(v, FreeCombo.zero())

    def ext_lie(self, g: FreeCombo) -> ExtElement:
        return ExtElement(FreeCombo.zero(), g)

    def ext_v3(self, v: FreeCombo) -> ExtElement:
        return ExtElement(v, FreeCombo.zero())

    def ext_bracket(self, e1: ExtElement, e2: ExtElement) -> ExtElement:
        """[(h1, Z1), (h2, Z2)] =
        (Z1.h2 - Z2.h1 + alpha(Z1, Z2), [Z1, Z2])."""
        v3 = (self.act_lie(e1.lie, e2.v3)
              - self.act_lie(e2.lie, e1.v3)
              + self.omega_lie(e1.lie, e2.lie))
        return ExtElement(v3, bracket(self.L, e1.lie, e2.lie))

    def phi_indices(self, i: int, j: int, k: int) -> FreeCombo:
        """Phi(x_i, x_j, x_k): the V2-valued coboundary of omega, i.e. the
        cyclic sum of x_i . omega(x_j, x_k) - omega([x_i, x_j], x_k).  Same
        term pattern as CocycleLift.dual_coboundary, so Phi evaluates to
        eps (x) f once the cocycle lifts.
        """
        L = self.L
        ei, ej, ek = L.element(i), L.element(j), L.element(k)
        return (self.act_index(i, self.omega(j, k))
                - self.act_index(j, self.omega(i, k))
                + self.act_index(k, self.omega(i, j))
                - self.omega_lie(bracket(L, ei, ej), ek)
                + self.omega_lie(bracket(L, ei, ek), ej)
                + self.omega_lie(ei, bracket(L, ej, ek)))

    def c_element(self) -> FreeCombo:
        """The invariant kernel generator: the counit itself."""
        return self.counit()

    # -- the tensor data -------------------------------------------------------

    def rbar(self) -> FreeCombo:
        """r lifted to E (x) E, keyed by pairs of e keys."""
        return self.r.map_keys(lambda key: (("lie", key[0]), ("lie", key[1])))

    def xi0(self, e: ExtElement) -> MixedTensor:
        """xi0 on (h, Z):
        sum over r of  (omega(s_i, Z) + s_i . Q(h)) (x) tbar_i   [V2 (x) E]
                     + sbar_i (x) (omega(t_i, Z) + t_i . Q(h))   [E (x) V2].
        """
        lifted = self.section(e.v3)
        ve: dict = {}
        ev: dict = {}
        for (i, j), c in self.r:
            left = self.omega_lie(self.L.element(i), e.lie) + self.act_index(i, lifted)
            for atom, ca in left:
                key = (atom, ("lie", j))
                value = ve.get(key, Q_ZERO) + c * ca
                if value:
                    ve[key] = value
                else:
                    ve.pop(key, None)
            right = self.omega_lie(self.L.element(j), e.lie) + self.act_index(j, lifted)
            for atom, ca in right:
                key = (("lie", i), atom)
                value = ev.get(key, Q_ZERO) + c * ca
                if value:
                    ev[key] = value
                else:
                    ev.pop(key, None)
        return MixedTensor(FreeCombo._raw(ve), FreeCombo._raw(ev))

    def c_tensor(self, e: ExtElement) -> MixedTensor:
        """C(h, Z) = 1_{V2} (x) Zbar + Zbar (x) 1_{V2} (only the Lie part)."""
        ve = FreeCombo({(EPS_ATOM, ("lie", k)): c for k, c in e.lie})
        ev = FreeCombo({(("lie", k), EPS_ATOM): c for k, c in e.lie})
        return MixedTensor(ve, ev)

    def xi(self, e: ExtElement) -> MixedTensor:
        return -self.xi0(e) - self.c_tensor(e)

    # -- actions on tensors ------------------------------------------------------

    def ext_to_keys(self, e: ExtElement) -> FreeCombo:
        acc = {("lie", k): c for k, c in e.lie}
        for atom, c in e.v3:
            acc[("v3", atom)] = acc.get(("v3", atom), Q_ZERO) + c
        return FreeCombo(acc)

    def key_to_ext(self, key) -> ExtElement:
        if key[0] == "lie":
            return self.ext_lie(self.L.element(key[1]))
        return self.ext_v3(FreeCombo.single(key[1]))

    def ext_bracket_key(self, e: ExtElement, key) -> FreeCombo:
        return self.ext_to_keys(self.ext_bracket(e, self.key_to_ext(key)))

    def act_ext_on_v2(self, e: ExtElement, v: FreeCombo) -> FreeCombo:
        """The E-action on V2 factors through the Lie part: (h, Z).v = Z.v.

        This is the unique action making mu a crossed module over the
        abelian ideal: axiom (a) forces mu((h,Z).v) = [(h,Z), mu(v)], whose
        V3 part only sees Z.
        """
        return self.act_lie(e.lie, v)

    def act_ext_on_ee(self, e: ExtElement, tensor: FreeCombo) -> FreeCombo:
        """Diagonal adjoint action on E (x) E."""
        acc: dict = {}
        for (k1, k2), c in tensor:
            for k, ck in self.ext_bracket_key(e, k1):
                key = (k, k2)
                value = acc.get(key, Q_ZERO) + c * ck
                if value:
                    acc[key] = value
                else:
                    acc.pop(key, None)
            for k, ck in self.ext_bracket_key(e, k2):
                key = (k1, k)
                value = acc.get(key, Q_ZERO) + c * ck
                if value:
                    acc[key] = value
                else:
                    acc.pop(key, None)
        return FreeCombo._raw(acc)

    def act_ext_on_mixed(self, e: ExtElement, tensor: MixedTensor) -> MixedTensor:
        """Diagonal action on (V2 (x) E) + (E (x) V2)."""
        ve: dict = {}
        ev: dict = {}
        for (atom, ekey), c in tensor.ve:
            acted = self.act_ext_on_v2(e, FreeCombo.single(atom))
            for atom2, c2 in acted:
                key = (atom2, ekey)
                value = ve.get(key, Q_ZERO) + c * c2
                if value:
                    ve[key] = value
                else:
                    ve.pop(key, None)
            for k2, c2 in self.ext_bracket_key(e, ekey):
                key = (atom, k2)
                value = ve.get(key, Q_ZERO) + c * c2
                if value:
                    ve[key] = value
                else:
                    ve.pop(key, None)
        for (ekey, atom), c in tensor.ev:
            for k2, c2 in self.ext_bracket_key(e, ekey):
                key = (k2, atom)
                value = ev.get(key, Q_ZERO) + c * c2
                if value:
                    ev[key] = value
                else:
                    ev.pop(key, None)
            acted = self.act_ext_on_v2(e, FreeCombo.single(atom))
            for atom2, c2 in acted:
                key = (ekey, atom2)
                value = ev.get(key, Q_ZERO) + c * c2
                if value:
                    ev[key] = value
                else:
                    ev.pop(key, None)
        return MixedTensor(FreeCombo._raw(ve), FreeCombo._raw(ev))

    def act_v2_on_rbar(self, v: FreeCombo) -> MixedTensor:
        """a . r = - sum_i ((s_i . a) (x) tbar_i + sbar_i (x) (t_i . a))."""
        ve: dict = {}
        ev: dict = {}
        for (i, j), c in self.r:
            for atom, ca in self.act_index(i, v):
                key = (atom, ("lie", j))
                value = ve.get(key, Q_ZERO) - c * ca
                if value:
                    ve[key] = value
                else:
                    ve.pop(key, None)
            for atom, ca in self.act_index(j, v):
                key = (("lie", i), atom)
                value = ev.get(key, Q_ZERO) - c * ca
                if value:
                    ev[key] = value
                else:
                    ev.pop(key, None)
        return MixedTensor(FreeCombo._raw(ve), FreeCombo._raw(ev))

    def beta_mixed(self, tensor: MixedTensor) -> FreeCombo:
        """Apply beta legwise: mu on V2 legs, identity on E legs; lands in
        E (x) E (V2 atoms become V3 legs)."""
        acc: dict = {}
        for (atom, ekey), c in tensor.ve:
            key = (("v3", atom), ekey)
            value = acc.get(key, Q_ZERO) + c
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
        for (ekey, atom), c in tensor.ev:
            key = (ekey, ("v3", atom))
            value = acc.get(key, Q_ZERO) + c
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
        return FreeCombo._raw(acc)

    # -- balance normal form and truncated comparison -----------------------------

    def balance_buckets(self, tensor: MixedTensor) -> tuple:
        """Normal form modulo the balance relation mu(u) (x) v = u (x) mu(v).

        Every V3 element is mu of its section lift, so V3 legs migrate to the
        right slot and V2 legs lose their unit component:

            u (x) hbar  ->  Q(d u) (x) hbar
            hbar (x) u  ->  Q(h) (x) mu(u)

        Returns (ve_lie, ev_lie, cross): keys (atom, i), (i, atom) and
        (v2 atom, v3 atom) respectively.
        """
        ve_lie: dict = {}
        ev_lie: dict = {}
        cross: dict = {}

        def add_cross(left_atom, right_atom, coeff):
            # left leg is unit-normalized: atom - atom(1) eps
            accumulate_key(cross, (left_atom, right_atom), coeff)
            at_unit = self.eval_atom(left_atom, self.U.unit_mono)
            if at_unit:
                accumulate_key(cross, (EPS_ATOM, right_atom), -coeff * at_unit)

        def accumulate_key(acc, key, coeff):
            value = acc.get(key, Q_ZERO) + coeff
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)

        for (atom, ekey), c in tensor.ve:
            if ekey[0] == "lie":
                accumulate_key(ve_lie, (atom, ekey[1]), c)
            else:
                add_cross(atom, ekey[1], c)
        for (ekey, atom), c in tensor.ev:
            if ekey[0] == "lie":
                accumulate_key(ev_lie, (ekey[1], atom), c)
            else:
                add_cross(ekey[1], atom, c)
        return FreeCombo._raw(ve_lie), FreeCombo._raw(ev_lie), FreeCombo._raw(cross)

    def _v2_vector(self, atom, max_degree: int) -> dict:
        values = {}
        for m in monomials_up_to(self.L.dim, max_degree):
            value = self.eval_atom(atom, m)
            if value:
                values[m] = value
        return values

    def _v3_vector(self, atom, max_degree: int) -> dict:
        values = self._v2_vector(atom, max_degree)
        values.pop(self.U.unit_mono, None)
        return values

    def _concretize_pairs(self, combo: FreeCombo, left_kind: str, right_kind: str, max_degree: int) -> dict:
        """Expand (left, right) keyed tensors into concrete coordinates.

        kinds: "v2" / "v3" legs evaluate on monomials (v3 on positive ones),
        "lie" legs stay as exact basis indices.
        """
        vectors = {"v2": self._v2_vector, "v3": self._v3_vector}
        acc: dict = {}
        for (left, right), c in combo:
            if left_kind == "lie":
                left_vec = {left: Q_ONE}
            else:
                left_vec = vectors[left_kind](left, max_degree)
            if right_kind == "lie":
                right_vec = {right: Q_ONE}
            else:
                right_vec = vectors[right_kind](right, max_degree)
            for lkey, lval in left_vec.items():
                for rkey, rval in right_vec.items():
                    key = (lkey, rkey)
                    value = acc.get(key, Q_ZERO) + c * lval * rval
                    if value:
                        acc[key] = value
                    else:
                        acc.pop(key, None)
        return acc

    def _concretize_ee(self, tensor: FreeCombo, max_degree: int) -> dict:
        """E (x) E tensors: each leg splits into exact Lie coordinates and
        truncated V3 evaluations."""
        acc: dict = {}
        for (k1, k2), c in tensor:
            if k1[0] == "lie":
                left_vec = {("x", k1[1]): Q_ONE}
            else:
                left_vec = {("m", m): v for m, v in self._v3_vector(k1[1], max_degree).items()}
            if k2[0] == "lie":
                right_vec = {("x", k2[1]): Q_ONE}
            else:
                right_vec = {("m", m): v for m, v in self._v3_vector(k2[1], max_degree).items()}
            for lkey, lval in left_vec.items():
                for rkey, rval in right_vec.items():
                    key = (lkey, rkey)
                    value = acc.get(key, Q_ZERO) + c * lval * rval
                    if value:
                        acc[key] = value
                    else:
                        acc.pop(key, None)
        return acc

    def _diff_rows(self, condition: str, generator: str, lhs: dict, rhs: dict, describe) -> list:
        rows = []
        for key in sorted(set(lhs) | set(rhs), key=str):
            lv = lhs.get(key, Q_ZERO)
            rv = rhs.get(key, Q_ZERO)
            if lv != rv:
                rows.append(Failure(condition=condition, generator=generator,
                                    monomial=describe(key), lhs=str(lv), rhs=str(rv)))
        return rows

    def _describe_concrete(self, key) -> str:
        def leg(k):
            if isinstance(k, tuple) and k and k[0] == "x":
                return self.L.basis[k[1]]
            if isinstance(k, tuple) and k and k[0] == "m":
                return format_monomial(self.L, k[1])
            if isinstance(k, tuple) and all(isinstance(x, int) for x in k):
                return format_monomial(self.L, k)
            return str(k)

        return "%s (x) %s" % (leg(key[0]), leg(key[1]))

    def mixed_equal_rows(self, condition: str, generator: str,
                         lhs: MixedTensor, rhs: MixedTensor,
                         max_degree: int, balanced: bool) -> list:
        """Failure rows for a truncated MixedTensor comparison."""
        rows = []
        if balanced:
            l_ve, l_ev, l_cross = self.balance_buckets(lhs)
            r_ve, r_ev, r_cross = self.balance_buckets(rhs)
            rows += self._diff_rows(condition, generator,
                                    self._concretize_pairs(l_cross, "v2", "v3", max_degree),
                                    self._concretize_pairs(r_cross, "v2", "v3", max_degree),
                                    self._describe_concrete)
        else:
            l_ve = lhs.ve.map_keys(lambda key: (key[0], key[1][1]))
            l_ev = lhs.ev.map_keys(lambda key: (key[0][1], key[1]))
            r_ve = rhs.ve.map_keys(lambda key: (key[0], key[1][1]))
            r_ev = rhs.ev.map_keys(lambda key: (key[0][1], key[1]))
        rows += self._diff_rows(condition, generator,
                                self._concretize_pairs(l_ve, "v2", "lie", max_degree),
                                self._concretize_pairs(r_ve, "v2", "lie", max_degree),
                                lambda key: "%s (x) %s" % (format_monomial(self.L, key[0]), self.L.basis[key[1]]))
        rows += self._diff_rows(condition, generator,
                                self._concretize_pairs(l_ev, "lie", "v2", max_degree),
                                self._concretize_pairs(r_ev, "lie", "v2", max_degree),
                                lambda key: "%s (x) %s" % (self.L.basis[key[0]], format_monomial(self.L, key[1])))
        return rows

    # -- the compatibility condition ----------------------------------------------

    def compat_check(self, max_degree: int, progress=None) -> list:
        """Both reductions of the compatibility condition.

        (i) finite form, for all basis pairs (X, Y):
            sum f(s_i, X, Y) t_i = [X, Y]  and  sum f(t_i, X, Y) s_i = [X, Y];
        (ii) functional form, tested on monomials of degree <= max_degree:
            sum Phi(s_i, X, Y)(m) t_i = eps(m) [X, Y]  and its mirror.
        """
        L = self.L
        f = self.lift.cocycle
        failures = []
        phi_cache = {}

        def phi_value(idx, a, b, m):
            key = (idx, a, b)
            if key not in phi_cache:
                phi_cache[key] = self.phi_indices(idx, a, b)
            return self.eval_dual(phi_cache[key], m)

        pairs = list(combinations(range(L.dim), 2))
        for a, b in pairs:
            target = bracket(L, L.element(a), L.element(b))
            pair_name = "%s,%s" % (L.basis[a], L.basis[b])
            lhs1 = FreeCombo.zero()
            lhs2 = FreeCombo.zero()
            for (i, j), c in self.r:
                lhs1 = lhs1.add_scaled(L.element(j), c * f.on_indices((i, a, b)))
                lhs2 = lhs2.add_scaled(L.element(i), c * f.on_indices((j, a, b)))
            if lhs1 != target:
                failures.append(Failure(condition="compat", generator=pair_name, monomial="finite",
                                        lhs=L.format_element(lhs1), rhs=L.format_element(target)))
            if lhs2 != target:
                failures.append(Failure(condition="compat", generator=pair_name, monomial="finite (mirror)",
                                        lhs=L.format_element(lhs2), rhs=L.format_element(target)))

        monos = monomials_up_to(L.dim, max_degree)
        by_degree: dict = {}
        for m in monos:
            by_degree.setdefault(mono_degree(m), []).append(m)
        for degree in sorted(by_degree):
            if progress:
                progress("compat", degree, len(by_degree[degree]))
            for m in by_degree[degree]:
                eps = Q_ONE if mono_degree(m) == 0 else Q_ZERO
                for a, b in pairs:
                    target = bracket(L, L.element(a), L.element(b)) * eps
                    pair_name = "%s,%s" % (L.basis[a], L.basis[b])
                    lhs1 = FreeCombo.zero()
                    lhs2 = FreeCombo.zero()
                    for (i, j), c in self.r:
                        lhs1 = lhs1.add_scaled(L.element(j), c * phi_value(i, a, b, m))
                        lhs2 = lhs2.add_scaled(L.element(i), c * phi_value(j, a, b, m))
                    if lhs1 != target:
                        failures.append(Failure(condition="compat", generator=pair_name,
                                                monomial=format_monomial(L, m),
                                                lhs=L.format_element(lhs1), rhs=L.format_element(target)))
                    if lhs2 != target:
                        failures.append(Failure(condition="compat", generator=pair_name,
                                                monomial=format_monomial(L, m) + " (mirror)",
                                                lhs=L.format_element(lhs2), rhs=L.format_element(target)))
        return failures

    # -- the quasi-invariance conditions ---------------------------------------------

    def verify_quasi_invariance(self, max_degree: int = 3, progress=None) -> list:
        """Conditions (a), (b), (c) for (rbar, xi, c), truncated at max_degree.

        The h-bar test family is the duals of positive monomials of degree
        <= max_degree: those distinguish every functional visible at this
        depth.  Compatibility is a precondition; its failure short-circuits.
        """
        compat = self.compat_check(max_degree, progress=progress)
        if compat:
            return [Failure(condition="compat", generator=COMPAT_VIOLATED)] + compat

        L = self.L
        failures = []
        rbar = self.rbar()
        lie_gens = [(L.basis[i], self.ext_lie(L.element(i))) for i in range(L.dim)]
        hbar_gens = [("d(%s)" % format_monomial(L, m), self.ext_v3(self.dual_monomial(m)))
                     for m in monomials_up_to(L.dim, max_degree)
                     if mono_degree(m) >= 1]

        # (a)  ebar . rbar = beta(xi(ebar)) in E (x) E
        if progress:
            progress("quasi(a)", max_degree, len(lie_gens) + len(hbar_gens))
        for name, gen in lie_gens + hbar_gens:
            lhs = self._concretize_ee(self.act_ext_on_ee(gen, rbar), max_degree)
            rhs = self._concretize_ee(self.beta_mixed(self.xi(gen)), max_degree)
            failures += self._diff_rows("a", name, lhs, rhs, self._describe_concrete)

        # (b)  u . rbar = xi(mu(u)) for unit and dual-monomial functionals
        v2_family = [("1_V2", self.counit())] + [
            ("d(%s)" % format_monomial(L, m), self.dual_monomial(m))
            for m in monomials_up_to(L.dim, max_degree) if mono_degree(m) >= 1]
        if progress:
            progress("quasi(b)", max_degree, len(v2_family))
        for name, u in v2_family:
            lhs = self.act_v2_on_rbar(u)
            rhs = self.xi(self.mu(u))
            failures += self.mixed_equal_rows("b", name, lhs, rhs, max_degree, balanced=False)

        # (c)  xi([x, y]) = x . xi(y) - y . xi(x), modulo balance
        gens = lie_gens + hbar_gens
        xi_cache = {name: self.xi(gen) for name, gen in gens}
        if progress:
            progress("quasi(c)", max_degree, len(gens) * (len(gens) - 1) // 2)
        for (name1, gen1), (name2, gen2) in combinations(gens, 2):
            lhs = self.xi(self.ext_bracket(gen1, gen2))
            rhs = (self.act_ext_on_mixed(gen1, xi_cache[name2])
                   - self.act_ext_on_mixed(gen2, xi_cache[name1]))
            failures += self.mixed_equal_rows("c", "%s,%s" % (name1, name2),
                                              lhs, rhs, max_degree, balanced=True)
        return failures


# ---------------------------------------------------------------------------
# Casimir uniqueness
# ---------------------------------------------------------------------------

def casimir_uniqueness_check(L: LieAlgebra, form: BilinearForm) -> list:
    """The standard r-matrix is the unique symmetric degree-2 tensor mapping
    to its own enveloping-algebra image (the Casimir element).

    Multiplication restricted to symmetrized degree-2 tensors is injective
    (the symmetrization of the straightening kernel vanishes in degree 2);
    checked by an exact rank computation, then the solve is compared with r.
    """
    failures = []
    r = standard_r_matrix(L, form)
    U = PBWAlgebra(L)
    casimir = FreeCombo.zero()
    for (i, j), c in r:
        casimir = casimir.add_scaled(U.multiply_mono(word_monomial(L.dim, (i,)), word_monomial(L.dim, (j,))), c)

    sym_keys = [(i, j) for i in range(L.dim) for j in range(i, L.dim)]
    images = []
    for i, j in sym_keys:
        mi, mj = word_monomial(L.dim, (i,)), word_monomial(L.dim, (j,))
        if i == j:
            images.append(U.multiply_mono(mi, mj))
        else:
            images.append(U.multiply_mono(mi, mj) + U.multiply_mono(mj, mi))

    monomial_index: dict = {}
    for u in images + [casimir]:
        for m in u.keys():
            monomial_index.setdefault(m, len(monomial_index))
    matrix = [[Q_ZERO] * len(sym_keys) for _ in monomial_index]
    for col, u in enumerate(images):
        for m, c in u:
            matrix[monomial_index[m]][col] = c
    rhs = [Q_ZERO] * len(monomial_index)
    for m, c in casimir:
        rhs[monomial_index[m]] = c

    kernel = exact_nullspace(matrix, width=len(sym_keys))
    if kernel:
        failures.append(Failure(condition="casimir.injectivity",
                                lhs="kernel dimension %d" % len(kernel), rhs="0"))
    solution = exact_solve(matrix, rhs)
    if solution is None:
        failures.append(Failure(condition="casimir.solve", lhs="inconsistent", rhs="solvable"))
        return failures
    for (i, j), value in zip(sym_keys, solution):
        expected = r.coeff((i, j))
        if expected != r.coeff((j, i)):
            failures.append(Failure(condition="casimir.symmetry", monomial=str((i, j)),
                                    lhs=str(expected), rhs=str(r.coeff((j, i)))))
        if value != expected:
            failures.append(Failure(condition="casimir.uniqueness", monomial=str((i, j)),
                                    lhs=str(value), rhs=str(expected)))
    return failures

"""Finite-dimensional Lie algebras given by rational structure constants.

Brackets, Jacobi validation, Killing forms, invariant-form checks, Cartan
3-cocycles, the constant-coefficient Chevalley-Eilenberg differential, dual
bases, standard r-matrices, and the sl2 iterated-bracket classification.

Structure constants are stored only for index pairs i < j; general brackets
are derived by antisymmetry, which makes inconsistent redundant data
impossible.  Construction validates the Jacobi identity and fails loudly on
violation (pass check=False to build a raw table for inspection).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .foundations import (
    FreeCombo,
    Q_ONE,
    Q_ZERO,
    exact_invert,
    rat,
)

LieElement = FreeCombo  # keys: basis indices
Tensor2 = FreeCombo  # keys: pairs (i, j) of basis indices


@dataclass(eq=False)
class LieAlgebra:
    name: str
    basis: tuple
    structure: dict = field(default_factory=dict)  # (i, j) with i < j -> FreeCombo
    check: bool = True

    def __post_init__(self):
        self.basis = tuple(self.basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis names must be distinct")
        if not self.basis:
            raise ValueError("empty basis")
        dim = len(self.basis)
        table = {}
        for (i, j), combo in self.structure.items():
            if not (0 <= i < j < dim):
                raise ValueError("structure key (%d, %d) is not an ordered pair below dim %d" % (i, j, dim))
            if not isinstance(combo, FreeCombo):
                combo = FreeCombo(combo)
            for k in combo.keys():
                if not (0 <= k < dim):
                    raise ValueError("bracket target index %r out of range" % (k,))
            if combo:
                table[(i, j)] = combo
        self.structure = table
        self._index = {name: i for i, name in enumerate(self.basis)}
        if self.check:
            bad = validate_jacobi(self)
            if bad:
                raise ValueError("Jacobi identity fails on basis triples: %s" % (bad,))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown basis name %r (have %s)" % (name, ", ".join(self.basis))) from None

    def element(self, i: int) -> LieElement:
        if not (0 <= i < self.dim):
            raise IndexError("basis index %d out of range" % i)
        return FreeCombo.single(i)

    def element_by_name(self, name: str) -> LieElement:
        return self.element(self.index(name))

    def bracket_basis(self, i: int, j: int) -> LieElement:
        """[x_i, x_j] from the stored i < j table, extended antisymmetrically."""
        if i == j:
            return FreeCombo.zero()
        if i < j:
            return self.structure.get((i, j), FreeCombo.zero())
        return -self.structure.get((j, i), FreeCombo.zero())

    def is_abelian(self) -> bool:
        return not self.structure

    def format_element(self, combo: LieElement) -> str:
        if not combo:
            return "0"
        parts = []
        for i in sorted(combo.keys()):
            c = combo.coeff(i)
            parts.append(self.basis[i] if c == 1 else "%s*%s" % (c, self.basis[i]))
        return " + ".join(parts)


def bracket(L: LieAlgebra, a: LieElement, b: LieElement) -> LieElement:
    """Bilinear antisymmetric extension of the structure table."""
    acc: dict = {}
    for i, ca in a:
        for j, cb in b:
            scalar = ca * cb
            for k, ck in L.bracket_basis(i, j):
                value = acc.get(k, Q_ZERO) + scalar * ck
                if value:
                    acc[k] = value
                else:
                    acc.pop(k, None)
    return FreeCombo._raw(acc)


def validate_jacobi(L: LieAlgebra) -> list:
    """Basis triples (i, j, k) where [x_i,[x_j,x_k]] + cyclic is nonzero."""
    failures = []
    for i, j, k in combinations(range(L.dim), 3):
        ei, ej, ek = L.element(i), L.element(j), L.element(k)
        total = (
            bracket(L, ei, bracket(L, ej, ek))
            + bracket(L, ej, bracket(L, ek, ei))
            + bracket(L, ek, bracket(L, ei, ej))
        )
        if total:
            failures.append((i, j, k))
    return failures


def iterated_bracket(L: LieAlgebra, elements) -> LieElement:
    """Right-nested bracket [h1,[h2,[...,[h_{n-1},h_n]...]]]."""
    elements = list(elements)
    if not elements:
        raise ValueError("iterated bracket of an empty sequence")
    result = elements[-1]
    for element in reversed(elements[:-1]):
        result = bracket(L, element, result)
    return result


@dataclass(frozen=True)
class BilinearForm:
    matrix: tuple  # dim x dim tuple of tuples of Fraction

    @classmethod
    def from_rows(cls, rows) -> "BilinearForm":
        return cls(tuple(tuple(x if isinstance(x, Fraction) else rat(x) for x in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def pair(self, a: LieElement, b: LieElement) -> Fraction:
        total = Q_ZERO
        for i, ca in a:
            for j, cb in b:
                total += ca * cb * self.matrix[i][j]
        return total

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(self.dim) for j in range(self.dim))


def adjoint_matrix(L: LieAlgebra, i: int):
    """Matrix of ad x_i: column j holds the coordinates of [x_i, x_j]."""
    dim = L.dim
    mat = [[Q_ZERO] * dim for _ in range(dim)]
    for j in range(dim):
        for k, c in L.bracket_basis(i, j):
            mat[k][j] = c
    return mat


def killing_form(L: LieAlgebra) -> BilinearForm:
    """kappa(x_i, x_j) = trace(ad x_i . ad x_j)."""
    dim = L.dim
    ads = [adjoint_matrix(L, i) for i in range(dim)]
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            trace = Q_ZERO
            for a in range(dim):
                for b in range(dim):
                    trace += ads[i][a][b] * ads[j][b][a]
            row.append(trace)
        rows.append(tuple(row))
    return BilinearForm(tuple(rows))


def check_invariant_form(L: LieAlgebra, form: BilinearForm) -> list:
    """Basis triples where kappa([x,y],z) != kappa(x,[y,z])."""
    failures = []
    for i, j, k in product(range(L.dim), repeat=3):
        lhs = form.pair(bracket(L, L.element(i), L.element(j)), L.element(k))
        rhs = form.pair(L.element(i), bracket(L, L.element(j), L.element(k)))
        if lhs != rhs:
            failures.append((i, j, k))
    return failures


class Cochain:
    """Alternating k-cochain on basis indices with rational values.

    Values are stored on strictly increasing index tuples and extended to all
    tuples by total antisymmetry; repeated indices evaluate to zero.
    """

    def __init__(self, arity: int, values=None):
        if arity < 1:
            raise ValueError("cochain arity must be positive")
        self.arity = arity
        clean = {}
        if values:
            for key, value in (values.items() if hasattr(values, "items") else values):
                key = tuple(key)
                if len(key) != arity:
                    raise ValueError("key %r has wrong arity (expected %d)" % (key, arity))
                if any(key[a] >= key[a + 1] for a in range(arity - 1)):
                    raise ValueError("key %r is not strictly increasing" % (key,))
                value = value if isinstance(value, Fraction) else rat(value)
                if value:
                    clean[key] = value
        self.values = clean

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.arity == other.arity and self.values == other.values

    __hash__ = None

    def on_indices(self, indices) -> Fraction:
        indices = list(indices)
        if len(indices) != self.arity:
            raise ValueError("expected %d indices" % self.arity)
        if len(set(indices)) != len(indices):
            return Q_ZERO
        # sort with parity tracking (tiny arities, bubble sort is fine)
        sign = 1
        for a in range(len(indices)):
            for b in range(len(indices) - 1 - a):
                if indices[b] > indices[b + 1]:
                    indices[b], indices[b + 1] = indices[b + 1], indices[b]
                    sign = -sign
        return sign * self.values.get(tuple(indices), Q_ZERO)

    def on_elements(self, *combos) -> Fraction:
        """Multilinear alternating extension to Lie elements."""
        if len(combos) != self.arity:
            raise ValueError("expected %d arguments" % self.arity)
        total = Q_ZERO
        for picks in product(*(list(c) for c in combos)):
            scalar = Q_ONE
            for _, coeff in picks:
                scalar *= coeff
            value = self.on_indices([i for i, _ in picks])
            if value:
                total += scalar * value
        return total


def cartan_cocycle(L: LieAlgebra, form: BilinearForm) -> Cochain:
    """f(g1, g2, g3) = kappa(g1, [g2, g3]) for an invariant form kappa."""
    bad = check_invariant_form(L, form)
    if bad:
        raise ValueError("form is not invariant; first failing triple: %s" % (bad[0],))
    values = {}
    for i, j, k in combinations(range(L.dim), 3):
        value = form.pair(L.element(i), bracket(L, L.element(j), L.element(k)))
        if value:
            values[(i, j, k)] = value
    return Cochain(3, values)


def ce_diff_constant(L: LieAlgebra, cochain: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential with trivial coefficients.

    (dc)(g_0..g_k) = sum over i < j of (-1)^(i+j) c([g_i,g_j], ..g_i..g_j.. omitted).
    """
    k = cochain.arity
    values = {}
    for key in combinations(range(L.dim), k + 1):
        total = Q_ZERO
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                br = bracket(L, L.element(key[a]), L.element(key[b]))
                rest = [key[c] for c in range(k + 1) if c != a and c != b]
                sign = -1 if (a + b) % 2 else 1
                args = [br] + [L.element(r) for r in rest]
                total += sign * cochain.on_elements(*args)
        if total:
            values[key] = total
    return Cochain(k + 1, values)


def dual_basis(L: LieAlgebra, form: BilinearForm) -> list:
    """Basis (x^j) with kappa(x_i, x^j) = delta_ij, via exact Gram inversion."""
    inverse = exact_invert([list(row) for row in form.matrix])
    if inverse is None:
        raise ValueError("degenerate form")
    duals = []
    for j in range(L.dim):
        duals.append(FreeCombo({k: inverse[k][j] for k in range(L.dim)}))
    return duals


def standard_r_matrix(L: LieAlgebra, form: BilinearForm) -> Tensor2:
    """r = (1/2) sum_i (x_i (x) x^i + x^i (x) x_i); symmetric and invariant."""
    bad = check_invariant_form(L, form)
    if bad:
        raise ValueError("form is not invariant; first failing triple: %s" % (bad[0],))
    duals = dual_basis(L, form)
    half = Fraction(1, 2)
    acc: dict = {}
    for i in range(L.dim):
        for k, c in duals[i]:
            for key in ((i, k), (k, i)):
                value = acc.get(key, Q_ZERO) + half * c
                if value:
                    acc[key] = value
                else:
                    acc.pop(key, None)
    r = FreeCombo._raw(acc)
    for g in range(L.dim):
        if tensor_action(L, L.element(g), r):
            raise AssertionError("standard r-matrix is not invariant under basis element %d" % g)
    return r


def tensor_action(L: LieAlgebra, g: LieElement, r: Tensor2) -> Tensor2:
    """Diagonal action g.(a (x) b) = [g,a] (x) b + a (x) [g,b]."""
    acc: dict = {}
    for (i, j), c in r:
        for k, ck in bracket(L, g, L.element(i)):
            key = (k, j)
            value = acc.get(key, Q_ZERO) + c * ck
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
        for k, ck in bracket(L, g, L.element(j)):
            key = (i, k)
            value = acc.get(key, Q_ZERO) + c * ck
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
    return FreeCombo._raw(acc)


def is_symmetric_tensor(r: Tensor2) -> bool:
    return all(r.coeff((j, i)) == c for (i, j), c in r)


# ---------------------------------------------------------------------------
# sl2 specifics
# ---------------------------------------------------------------------------

def sl2_bracket_classify(letters) -> tuple:
    """Classify the iterated bracket of sl2 basis letters.

    letters is a sequence over {X, Y, H}.  Returns ("zero", 0) or
    (kind, lambda) with kind in {"X", "Y", "H"} and lambda nonzero.  A nonzero
    bracket with a letters X and b letters Y must satisfy |a - b| <= 1 and
    land on H (a = b), X (a = b + 1) or Y (a = b - 1); any violation raises.
    """
    L = sl2()
    indices = [L.index(name) for name in letters]
    value = iterated_bracket(L, [L.element(i) for i in indices])
    a = sum(1 for i in indices if i == 0)
    b = sum(1 for i in indices if i == 1)
    if not value:
        return ("zero", Q_ZERO)
    if len(value) != 1:
        raise AssertionError("iterated sl2 bracket is not a multiple of a basis vector: %r" % value)
    ((idx, coeff),) = list(value)
    kind = L.basis[idx]
    expected = {0: "H", 1: "X", -1: "Y"}.get(a - b)
    if expected is None or kind != expected:
        raise AssertionError(
            "sl2 bracket classification violated: a=%d b=%d landed on %s" % (a, b, kind)
        )
    return (kind, coeff)


# ---------------------------------------------------------------------------
# built-in algebras
# ---------------------------------------------------------------------------

def sl2() -> LieAlgebra:
    """sl2 with ordered basis (X, Y, H): [X,Y]=H, [H,X]=2X, [H,Y]=-2Y."""
    return LieAlgebra(
        "sl2",
        ("X", "Y", "H"),
        {
            (0, 1): FreeCombo({2: 1}),   # [X, Y] = H
            (0, 2): FreeCombo({0: -2}),  # [X, H] = -2X
            (1, 2): FreeCombo({1: 2}),   # [Y, H] = 2Y
        },
    )


def heisenberg3() -> LieAlgebra:
    """Three-dimensional Heisenberg algebra: [X, Y] = Z, Z central."""
    return LieAlgebra("heisenberg3", ("X", "Y", "Z"), {(0, 1): FreeCombo({2: 1})})


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra("abelian%d" % dim, tuple("e%d" % (i + 1) for i in range(dim)), {})


def sl2_times_sl2() -> LieAlgebra:
    structure = {}
    for offset in (0, 3):
        structure[(offset, offset + 1)] = FreeCombo({offset + 2: 1})
        structure[(offset, offset + 2)] = FreeCombo({offset: -2})
        structure[(offset + 1, offset + 2)] = FreeCombo({offset + 1: 2})
    names = ("X1", "Y1", "H1", "X2", "Y2", "H2")
    return LieAlgebra("sl2xsl2", names, structure)


BUILTIN_ALGEBRAS = {
    "sl2": sl2,
    "heisenberg3": heisenberg3,
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "sl2xsl2": sl2_times_sl2,
}


# ---------------------------------------------------------------------------
# JSON-dict loaders (file handling lives in the CLI)
# ---------------------------------------------------------------------------

def algebra_from_dict(data: dict) -> LieAlgebra:
    """Build a validated algebra from the definition-file schema.

    {"name": str, "basis": [str...],
     "brackets": [{"i": int, "j": int, "terms": [{"k": int, "c": "p/q"}...]}...]}
    with i < j and 0-based indices; unlisted pairs bracket to zero.
    """
    try:
        name = data.get("name", "algebra")
        basis = tuple(data["basis"])
    except (KeyError, TypeError) as exc:
        raise ValueError("algebra definition needs a 'basis' list: %s" % exc) from None
    structure = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        if i >= j:
            raise ValueError("bracket pair (%d, %d) must have i < j" % (i, j))
        terms = {}
        for term in entry.get("terms", []):
            terms[int(term["k"])] = rat(term["c"])
        combo = FreeCombo(terms)
        if (i, j) in structure:
            raise ValueError("duplicate bracket pair (%d, %d)" % (i, j))
        if combo:
            structure[(i, j)] = combo
    return LieAlgebra(name, basis, structure)


def cochain3_from_dict(L: LieAlgebra, data: dict) -> Cochain:
    """{"terms": [{"i":..,"j":..,"k":..,"c":"p/q"}...]} on increasing triples."""
    values = {}
    for term in data.get("terms", []):
        i, j, k = int(term["i"]), int(term["j"]), int(term["k"])
        if not (0 <= i < j < k < L.dim):
            raise ValueError("cocycle triple (%d, %d, %d) is not strictly increasing within dim %d" % (i, j, k, L.dim))
        values[(i, j, k)] = values.get((i, j, k), Q_ZERO) + rat(term["c"])
    return Cochain(3, {key: val for key, val in values.items() if val})


def tensor2_from_dict(L: LieAlgebra, data: dict) -> Tensor2:
    """{"terms": [{"i":..,"j":..,"c":"p/q"}...]} for an element of g (x) g."""
    acc = {}
    for term in data.get("terms", []):
        i, j = int(term["i"]), int(term["j"])
        if not (0 <= i < L.dim and 0 <= j < L.dim):
            raise ValueError("tensor indices (%d, %d) out of range" % (i, j))
        value = acc.get((i, j), Q_ZERO) + rat(term["c"])
        acc[(i, j)] = value
    return FreeCombo(acc)

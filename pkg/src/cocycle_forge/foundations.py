"""Exact arithmetic building blocks.

Rational scalars (fractions.Fraction, always lowest terms, positive
denominator), sparse rational linear combinations over arbitrary hashable
key alphabets, polynomials in a formal variable t, and Gaussian elimination
over the rationals.  Nothing in this module ever rounds, and every value is
treated as immutable after construction, so everything here is safe to share
between concurrent callers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

Q_ZERO = Fraction(0)
Q_ONE = Fraction(1)

#: degree of the zero polynomial
NEG_INFINITY = float("-inf")


def rat(value) -> Fraction:
    """Coerce an int or a string like '-3/4' to an exact rational.

    Floats are rejected: silently accepting them would defeat the exactness
    guarantees the rest of the library is built on.
    """
    if isinstance(value, float):
        raise TypeError("refusing to coerce a float to an exact rational: %r" % (value,))
    return Fraction(value)


class FreeCombo:
    """A finite rational linear combination of hashable keys.

    Zero coefficients are never stored, so two combinations are equal exactly
    when their term maps are equal.  The key alphabet is arbitrary: basis
    indices, PBW exponent vectors, tuples of monomials, functional atoms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for key, coeff in items:
                if not isinstance(coeff, Fraction):
                    coeff = rat(coeff)
                if key in clean:
                    coeff = clean[key] + coeff
                if coeff:
                    clean[key] = coeff
                else:
                    clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, clean_terms: dict) -> "FreeCombo":
        # Internal fast path: caller guarantees no zero coefficients and
        # exclusive ownership of the dict.
        combo = object.__new__(cls)
        combo.terms = clean_terms
        return combo

    @classmethod
    def zero(cls) -> "FreeCombo":
        return cls._raw({})

    @classmethod
    def single(cls, key, coeff=Q_ONE) -> "FreeCombo":
        coeff = coeff if isinstance(coeff, Fraction) else rat(coeff)
        return cls._raw({key: coeff} if coeff else {})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, FreeCombo):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable dict inside; combos are dict values, never keys

    def __repr__(self):
        if not self.terms:
            return "FreeCombo(0)"
        parts = ["%s: %s" % (key, coeff) for key, coeff in sorted(self.terms.items(), key=lambda kv: str(kv[0]))]
        return "FreeCombo({%s})" % ", ".join(parts)

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Q_ZERO)

    def keys(self):
        return self.terms.keys()

    def __add__(self, other):
        if not isinstance(other, FreeCombo):
            return NotImplemented
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            value = acc.get(key, Q_ZERO) + coeff
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
        return FreeCombo._raw(acc)

    def __sub__(self, other):
        if not isinstance(other, FreeCombo):
            return NotImplemented
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            value = acc.get(key, Q_ZERO) - coeff
            if value:
                acc[key] = value
            else:
                acc.pop(key, None)
        return FreeCombo._raw(acc)

    def __neg__(self):
        return FreeCombo._raw({key: -coeff for key, coeff in self.terms.items()})

    def __mul__(self, scalar):
        scalar = scalar if isinstance(scalar, Fraction) else rat(scalar)
        if not scalar:
            return FreeCombo._raw({})
        return FreeCombo._raw({key: coeff * scalar for key, coeff in self.terms.items()})

    __rmul__ = __mul__

    def add_scaled(self, other: "FreeCombo", scalar) -> "FreeCombo":
        """Return self + scalar * other (one pass, zeros dropped)."""
        scalar = scalar if isinstance(scalar, Fraction) else rat(scalar)
        acc = dict(self.terms)
        if scalar:
            for key, coeff in other.terms.items():
                value = acc.get(key, Q_ZERO) + scalar * coeff
                if value:
                    acc[key] = value
                else:
                    acc.pop(key, None)
        return FreeCombo._raw(acc)

    def map_keys(self, fn: Callable) -> "FreeCombo":
        """Relabel keys through fn (need not be injective; collisions add)."""
        acc: dict = {}
        for key, coeff in self.terms.items():
            new = fn(key)
            value = acc.get(new, Q_ZERO) + coeff
            if value:
                acc[new] = value
            else:
                acc.pop(new, None)
        return FreeCombo._raw(acc)


def linear_extend(fn: Callable[[object], FreeCombo], combo: FreeCombo) -> FreeCombo:
    """Apply a key -> FreeCombo map linearly to a combination."""
    acc: dict = {}
    for key, coeff in combo:
        for out_key, out_coeff in fn(key):
            value = acc.get(out_key, Q_ZERO) + coeff * out_coeff
            if value:
                acc[out_key] = value
            else:
                acc.pop(out_key, None)
    return FreeCombo._raw(acc)


def accumulate(acc: dict, combo: FreeCombo, scalar=Q_ONE) -> None:
    """In-place acc += scalar * combo on a plain dict accumulator."""
    if not scalar:
        return
    for key, coeff in combo:
        value = acc.get(key, Q_ZERO) + scalar * coeff
        if value:
            acc[key] = value
        else:
            acc.pop(key, None)


class TPoly:
    """Polynomial in one formal variable t.

    Coefficients may be Fractions or any additive value type with the same
    interface (FreeCombo in particular).  Zero coefficients are dropped; the
    zero polynomial has degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict = {}
        if coeffs is not None:
            items = coeffs.items() if hasattr(coeffs, "items") else coeffs
            for deg, value in items:
                deg = int(deg)
                if deg < 0:
                    raise ValueError("negative t-degree: %d" % deg)
                if deg in clean:
                    value = clean[deg] + value
                if value:
                    clean[deg] = value
                else:
                    clean.pop(deg, None)
        self.coeffs = clean

    @classmethod
    def _raw(cls, clean_coeffs: dict) -> "TPoly":
        poly = object.__new__(cls)
        poly.coeffs = clean_coeffs
        return poly

    @classmethod
    def zero(cls) -> "TPoly":
        return cls._raw({})

    @classmethod
    def constant(cls, value) -> "TPoly":
        return cls({0: value})

    @classmethod
    def term(cls, degree: int, value) -> "TPoly":
        return cls({degree: value})

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INFINITY

    def coeff(self, degree: int, zero=Q_ZERO):
        return self.coeffs.get(degree, zero)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "TPoly(0)"
        parts = ["t^%d: %s" % (deg, self.coeffs[deg]) for deg in sorted(self.coeffs)]
        return "TPoly({%s})" % ", ".join(parts)

    def __add__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        acc = dict(self.coeffs)
        for deg, value in other.coeffs.items():
            if deg in acc:
                value = acc[deg] + value
            if value:
                acc[deg] = value
            else:
                acc.pop(deg, None)
        return TPoly._raw(acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TPoly._raw({deg: -value for deg, value in self.coeffs.items()})

    def scale(self, scalar) -> "TPoly":
        scalar = scalar if isinstance(scalar, Fraction) else rat(scalar)
        if not scalar:
            return TPoly._raw({})
        return TPoly._raw({deg: value * scalar for deg, value in self.coeffs.items()})

    def shifted(self, offset: int) -> "TPoly":
        """Multiply by t^offset."""
        return TPoly._raw({deg + offset: value for deg, value in self.coeffs.items()})

    def substitute_neg_t(self) -> "TPoly":
        """t -> -t: flip the sign of odd-degree coefficients."""
        return TPoly._raw({deg: (value if deg % 2 == 0 else -value) for deg, value in self.coeffs.items()})

    def derivative(self) -> "TPoly":
        acc = {}
        for deg, value in self.coeffs.items():
            if deg > 0:
                scaled = value * Fraction(deg)
                if scaled:
                    acc[deg - 1] = scaled
        return TPoly._raw(acc)

    def convolve(self, other: "TPoly", mul: Callable = None) -> "TPoly":
        """Product of polynomials; mul multiplies coefficient values."""
        if mul is None:
            mul = lambda a, b: a * b
        acc: dict = {}
        for d1, v1 in self.coeffs.items():
            for d2, v2 in other.coeffs.items():
                value = mul(v1, v2)
                if not value:
                    continue
                deg = d1 + d2
                if deg in acc:
                    value = acc[deg] + value
                if value:
                    acc[deg] = value
                else:
                    acc.pop(deg, None)
        return TPoly._raw(acc)

    def evaluate(self, point, zero=Q_ZERO):
        """Evaluate at a rational point: sum of point**n * coeff(n)."""
        point = point if isinstance(point, Fraction) else rat(point)
        total = zero
        for deg, value in self.coeffs.items():
            total = total + value * point ** deg
        return total

    def integrate_unit_interval(self, zero=Q_ZERO):
        """Definite integral over [0, 1]: sum of coeff(n) / (n + 1)."""
        total = zero
        for deg, value in self.coeffs.items():
            total = total + value * Fraction(1, deg + 1)
        return total

    def map_values(self, fn: Callable) -> "TPoly":
        acc = {}
        for deg, value in self.coeffs.items():
            new = fn(value)
            if new:
                acc[deg] = new
        return TPoly._raw(acc)


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def exact_rref(rows: Iterable[Iterable]) -> tuple:
    """Reduced row echelon form over Q.  Returns (rref rows, pivot columns)."""
    work = [[x if isinstance(x, Fraction) else rat(x) for x in row] for row in rows]
    pivots = []
    if not work:
        return work, pivots
    width = len(work[0])
    row_index = 0
    for col in range(width):
        pivot_row = None
        for r in range(row_index, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[row_index], work[pivot_row] = work[pivot_row], work[row_index]
        pivot = work[row_index][col]
        work[row_index] = [x / pivot for x in work[row_index]]
        for r in range(len(work)):
            if r != row_index and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row_index])]
        pivots.append(col)
        row_index += 1
        if row_index == len(work):
            break
    return work, pivots


def exact_rank(rows) -> int:
    return len(exact_rref(rows)[1])


def exact_solve(matrix, rhs):
    """One exact solution x of matrix @ x = rhs, or None if inconsistent.

    matrix is a list of rows; the solution sets free variables to zero.
    """
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if not rows:
        return []
    width = len(rows[0]) - 1
    rref, pivots = exact_rref(rows)
    if width in pivots:
        return None  # pivot in the augmented column: no solution
    solution = [Q_ZERO] * width
    for r, col in enumerate(pivots):
        solution[col] = rref[r][width]
    return solution


def exact_nullspace(matrix, width=None):
    """Basis of the kernel of the matrix (list of coefficient vectors)."""
    rows = [list(row) for row in matrix]
    if width is None:
        if not rows:
            return []
        width = len(rows[0])
    rref, pivots = exact_rref(rows) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        vec = [Q_ZERO] * width
        vec[f] = Q_ONE
        for r, col in enumerate(pivots):
            vec[col] = -rref[r][f]
        basis.append(vec)
    return basis


def exact_invert(matrix):
    """Exact inverse of a square matrix, or None when singular."""
    n = len(matrix)
    rows = [list(row) + [Q_ONE if i == j else Q_ZERO for j in range(n)] for i, row in enumerate(matrix)]
    rref, pivots = exact_rref(rows)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in rref]

"""Exact linear algebra over Q and Q(i).

Subspaces are kept in reduced row-echelon form, so two ``Subspace`` values
compare equal exactly when they describe the same subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class GaussianRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self):
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)


def to_scalar(x):
    """Coerce ``x`` to an exact field element.

    Accepts ints, Fractions, strings such as ``"-3/4"`` and Gaussian
    rationals. Floats are refused: silently rounding would defeat the point.
    """
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} {x!r} to an exact scalar")


def vector(values: Iterable) -> tuple:
    return tuple(to_scalar(v) for v in values)


def complexify_vector(v: Sequence) -> tuple:
    return tuple(x if isinstance(x, GaussianRational) else GaussianRational(x) for x in v)


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, j: int) -> tuple:
    return tuple(Fraction(1 if k == j else 0) for k in range(n))


def dot(u: Sequence, v: Sequence):
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


# -- matrices as tuples of row tuples ---------------------------------------

def matrix(rows: Iterable[Iterable]) -> tuple:
    return tuple(vector(r) for r in rows)


def identity(n: int) -> tuple:
    return tuple(unit_vector(n, i) for i in range(n))


def zeros(n: int, m: int | None = None) -> tuple:
    return tuple(zero_vector(n if m is None else m) for _ in range(n))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a)) if a else ()


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def vecmat(v: Sequence, a: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    return matvec(transpose(a), v)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return not any(x for row in a for x in row)


def is_skew(a: Sequence[Sequence]) -> bool:
    n = len(a)
    for i in range(n):
        if len(a[i]) != n or a[i][i]:
            return False
        for j in range(i + 1, n):
            if a[i][j] != -a[j][i]:
                return False
    return True


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[tuple, tuple]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a {ncols}-column system")
    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        piv = next((r for r in range(top, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        prow = work[top]
        lead = prow[col]
        if lead != 1:
            prow = [x / lead for x in prow]
            work[top] = prow
        for r in range(len(work)):
            if r != top:
                f = work[r][col]
                if f:
                    row = work[r]
                    work[r] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        top += 1
    return tuple(tuple(r) for r in work[:top]), tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, len(rows[0]) if ncols is None else ncols)[1])


def nullspace(a: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {x : a x = 0}, one vector per free column."""
    reduced, pivots = rref(a, ncols)
    one = Fraction(1)
    zero = Fraction(0)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, p in zip(reduced, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def inverse(a: Sequence[Sequence]) -> tuple:
    n = len(a)
    aug = [tuple(a[i]) + unit_vector(n, i) for i in range(n)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(reduced) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace of K^n stored by its RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        basis, pivots = rref(vecs, ambient_dim)
        return cls(ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n), tuple(range(n)))

    @classmethod
    def coordinate(cls, j: int, n: int) -> "Subspace":
        """span(e_1, ..., e_j) with 1-based j; the flag step V_j."""
        return cls(n, tuple(unit_vector(n, i) for i in range(j)), tuple(range(j)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the stored basis; ``v`` must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        residual = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = residual[p]
            if f:
                residual = [x - f * y if y else x for x, y in zip(residual, row)]
        return not any(residual)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def leq(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim <= other.dim and all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.leq(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self.leq(other)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.basis:
            return self
        if not self.basis:
            return other
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def annihilator(self) -> list[tuple]:
        """Rows c with c.x = 0 exactly for x in this subspace."""
        if not self.basis:
            return [unit_vector(self.ambient_dim, i) for i in range(self.ambient_dim)]
        return nullspace(self.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        constraints = self.annihilator() + other.annihilator()
        return Subspace.span(nullspace(constraints, self.ambient_dim), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def complexify(self) -> "Subspace":
        return Subspace(self.ambient_dim,
                        tuple(complexify_vector(r) for r in self.basis), self.pivots)

    def map(self, a: Sequence[Sequence]) -> "Subspace":
        """Image under the square matrix ``a`` (acting on column vectors)."""
        return Subspace.span([matvec(a, b) for b in self.basis], len(a))

    def to_float(self):
        import numpy as np
        if not self.basis:
            return np.zeros((0, self.ambient_dim))
        return np.array([[complex(x) if isinstance(x, GaussianRational) else float(x)
                          for x in row] for row in self.basis])


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace.span(vectors, ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    return a.leq(b)


def restricted_form_is_zero(form: Sequence[Sequence], u: Subspace, w: Subspace) -> bool:
    """True iff form(x, y) = 0 for all x in u, y in w."""
    for x in u.basis:
        xb = vecmat(x, form)
        for y in w.basis:
            if dot(xb, y):
                return False
    return True


def perp_wrt_form(w: Subspace, form: Sequence[Sequence], ambient: Subspace) -> Subspace:
    """{u in ambient : form(u, x) = 0 for every x in w}."""
    n = w.ambient_dim
    ambient._check(w)
    if len(form) != n:
        raise ValueError(f"form of size {len(form)} on ambient dimension {n}")
    if not is_skew(form):
        raise ValueError("form is not skew-symmetric")
    constraints = [matvec(form, x) for x in w.basis]
    constraints = [c for c in constraints if any(c)]
    if not constraints:
        return ambient
    if ambient.dim < n:
        constraints += ambient.annihilator()
    return Subspace.span(nullspace(constraints, n), n)

"""Coadjoint action, orbit dimensions and cross-sections on nilpotent layers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Sequence

from .forms import form_of, form_rank, jump_set, stabilizer
from .lie import LieAlgebra, LieAlgebraError, coad_matrix
from .linalg import matvec, unit_vector, vector


class NotNilpotent(LieAlgebraError):
    pass


class ZeroingStepUnsolvable(ArithmeticError):
    def __init__(self, index: int, polynomial: tuple):
        self.index = index
        self.polynomial = polynomial
        poly = " + ".join(f"({c})*t^{n}" for n, c in enumerate(polynomial) if c) or "0"
        super().__init__(f"cannot zero coordinate {index}: coordinate depends on t as {poly}")


class CoadjointImage(NamedTuple):
    value: tuple
    exact: bool


def _series_terms(c: Sequence[Sequence], xi: tuple, limit: int):
    """[xi, C xi, C^2 xi / 2!, ...] until a zero term, or None past ``limit`` terms."""
    terms = [xi]
    v = xi
    for n in range(1, limit + 2):
        v = tuple(x / n for x in matvec(c, v))
        if not any(v):
            return terms
        terms.append(v)
    return None


def coadjoint_apply(algebra: LieAlgebra, x: Sequence, t, xi: Sequence) -> CoadjointImage:
    """exp(t x) . xi = exp(t coad(x)) xi.

    The series is summed exactly when it terminates (ad x nilpotent);
    otherwise a floating-point matrix exponential is used and ``exact`` is False.
    """
    xi = vector(xi)
    t = vector([t])[0]
    if not t or not any(x):
        return CoadjointImage(xi, True)
    c = tuple(tuple(t * v for v in row) for row in coad_matrix(algebra, x))
    terms = _series_terms(c, xi, algebra.dim)
    if terms is not None:
        return CoadjointImage(tuple(sum(col, Fraction(0)) for col in zip(*terms)), True)
    import numpy as np
    from scipy.linalg import expm

    mat = np.array([[float(v) for v in row] for row in c])
    out = expm(mat) @ np.array([float(v) for v in xi])
    return CoadjointImage(tuple(float(v) for v in out), False)


@dataclass(frozen=True)
class GroupWord:
    """exp(t_1 e_{a_1}) ... exp(t_r e_{a_r}) as (a, t) pairs; a is 0-based."""

    factors: tuple = ()

    def __len__(self):
        return len(self.factors)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.factors + other.factors)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((a, -t) for a, t in reversed(self.factors)))

    def apply(self, algebra: LieAlgebra, xi: Sequence) -> CoadjointImage:
        value, exact = vector(xi), True
        m = algebra.dim
        for a, t in reversed(self.factors):
            if not exact:
                raise ValueError("cannot continue a word after an inexact step")
            value, exact = coadjoint_apply(algebra, unit_vector(m, a), t, value)
        return CoadjointImage(value, exact)


def apply_word(algebra: LieAlgebra, word: GroupWord, xi: Sequence) -> CoadjointImage:
    return word.apply(algebra, xi)


def orbit_dimension(flag, xi: Sequence) -> int:
    """dim g - dim g(xi); checked against the number of jump indices."""
    form = form_of(flag, xi)
    r = form_rank(form)
    if len(jump_set(stabilizer(form))) != r:
        from .polarize import InvariantViolation
        raise InvariantViolation("card jump(g(xi)) differs from rank B_xi")
    return r


@dataclass(frozen=True)
class OrbitRepresentative:
    representative: tuple
    word: GroupWord
    zeroed: tuple


def _coordinate_polys(algebra: LieAlgebra, a: int, eta: tuple):
    c = coad_matrix(algebra, unit_vector(algebra.dim, a))
    terms = _series_terms(c, eta, algebra.dim)
    if terms is None:
        raise NotNilpotent(f"ad({algebra.basis_names[a]}) is not nilpotent")
    return [tuple(term[l] for term in terms) for l in range(algebra.dim)]


def _degree(poly: tuple) -> int:
    nz = [n for n, c in enumerate(poly) if c]
    return nz[-1] if nz else -1


def _rational_root(poly: tuple):
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** n for n, c in enumerate(poly))
    found = sympy.Poly(expr, t, domain="QQ").ground_roots()
    if not found:
        return None
    r = min(found, key=lambda q: (abs(q), q))
    return Fraction(int(r.p), int(r.q))


def _zeroing_step(algebra: LieAlgebra, eta: tuple, j: int, protect: Sequence[int]):
    """Choose (a, t) with coordinate j of exp(t e_a) . eta equal to zero."""
    m = algebra.dim
    polys = [_coordinate_polys(algebra, a, eta) for a in range(m)]

    def keeps(a):
        return all(_degree(polys[a][l - 1]) <= 0 for l in protect)

    for require_keep in (True, False):
        for a in range(m):
            p = polys[a][j - 1]
            if _degree(p) == 1 and (not require_keep or keeps(a)):
                return a, -p[0] / p[1]
    # fallback: a higher-degree dependence with a rational root
    for a in range(m):
        p = polys[a][j - 1]
        if _degree(p) > 1:
            root = _rational_root(p)
            if root is not None:
                return a, root
    first = next((polys[a][j - 1] for a in range(m) if _degree(polys[a][j - 1]) > 0),
                 (eta[j - 1],))
    raise ZeroingStepUnsolvable(j, first)


def nilpotent_cross_section(flag, xi: Sequence, max_sweeps: int | None = None) -> OrbitRepresentative:
    """The point of the orbit of ``xi`` whose coordinates vanish on the jump set.

    Jump indices are zeroed in decreasing order, each by a one-parameter step
    exp(t e_a); the resulting word satisfies word . xi = representative.
    """
    lie = flag.lie if hasattr(flag, "lie") else flag
    if not lie.is_nilpotent:
        raise NotNilpotent("cross-sections are implemented for nilpotent algebras only")
    xi = vector(xi)
    e = jump_set(stabilizer(form_of(lie, xi)))
    eta = xi
    factors = []
    sweeps = max_sweeps if max_sweeps is not None else len(e) + 2
    for _ in range(sweeps):
        if not any(eta[j - 1] for j in e):
            break
        for j in sorted(e, reverse=True):
            if not eta[j - 1]:
                continue
            protect = [l for l in e if l > j]
            a, t = _zeroing_step(lie, eta, j, protect)
            eta = coadjoint_apply(lie, unit_vector(lie.dim, a), t, eta).value
            factors.insert(0, (a, t))
    if any(eta[j - 1] for j in e):
        bad = next(j for j in e if eta[j - 1])
        raise ZeroingStepUnsolvable(bad, (eta[bad - 1],))
    return OrbitRepresentative(eta, GroupWord(tuple(factors)), e)

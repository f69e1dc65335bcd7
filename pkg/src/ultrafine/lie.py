"""Lie algebras given by structure constants, Jordan-Hoelder flags and roots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import (
    Subspace,
    dot,
    identity,
    inverse,
    matmul,
    matvec,
    nullspace,
    transpose,
    unit_vector,
    vector,
    zero_vector,
)


class LieAlgebraError(ValueError):
    """Base class for invalid algebra or flag data."""


class AntisymmetryViolation(LieAlgebraError):
    def __init__(self, i: int, j: int, names: Sequence[str]):
        self.i, self.j = i, j
        super().__init__(f"[{names[i]},{names[j]}] != -[{names[j]},{names[i]}]")


class JacobiViolation(LieAlgebraError):
    def __init__(self, i: int, j: int, k: int, residual: tuple, names: Sequence[str]):
        self.i, self.j, self.k = i, j, k
        self.triple = (names[i], names[j], names[k])
        self.residual = residual
        res = ", ".join(str(x) for x in residual)
        super().__init__(
            f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]}): residual ({res})")


class SingularBasis(LieAlgebraError):
    pass


class NotAnIdeal(LieAlgebraError):
    def __init__(self, j: int, x: str, y: str):
        self.j, self.x, self.y = j, x, y
        super().__init__(f"flag step g_{j} is not an ideal: [{x},{y}] is not in g_{j}")


class NotASubalgebra(LieAlgebraError):
    def __init__(self, x: tuple, y: tuple):
        self.x, self.y = x, y
        super().__init__(
            "subspace is not closed under the bracket: witness pair "
            f"({', '.join(map(str, x))}), ({', '.join(map(str, y))})")


class FlagNotFound(LookupError):
    """The greedy search found no rational one-dimensional ideal.

    This does not prove the algebra is not completely solvable: roots may be
    irrational. The caller should provide a flag explicitly.
    """

    def __init__(self, found: int, dim: int):
        self.found = found
        super().__init__(
            f"no rational Jordan-Hoelder flag found (stuck after {found} of {dim} steps); "
            "provide a flag explicitly")


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants: ``structure[i][j]`` is the coordinate vector of [e_i, e_j]."""

    basis_names: tuple
    structure: tuple
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @cached_property
    def basis_ads(self) -> tuple:
        m = self.dim
        return tuple(
            tuple(tuple(self.structure[i][j][l] for j in range(m)) for l in range(m))
            for i in range(m))

    def ad(self, x: Sequence) -> tuple:
        """Matrix of ad(x) acting on column coordinate vectors."""
        m = self.dim
        out = [[Fraction(0)] * m for _ in range(m)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            a = self.basis_ads[i]
            for r in range(m):
                row, arow = out[r], a[r]
                for c in range(m):
                    if arow[c]:
                        row[c] = row[c] + xi * arow[c]
        return tuple(tuple(r) for r in out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        m = self.dim
        out = [Fraction(0)] * m
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = self.structure[i][j]
                f = xi * yj
                for l in range(m):
                    if c[l]:
                        out[l] = out[l] + f * c[l]
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return unit_vector(self.dim, i)

    def change_basis(self, rows: Sequence[Sequence], names: Sequence[str] | None = None,
                     name: str | None = None) -> "LieAlgebra":
        """Rewrite the algebra in the basis f_a = sum_i rows[a][i] e_i."""
        m = self.dim
        rows = tuple(vector(r) for r in rows)
        back = transpose(inverse(rows))
        structure = tuple(
            tuple(matvec(back, self.bracket(rows[a], rows[b])) for b in range(m))
            for a in range(m))
        if names is None:
            names = tuple(_combo_name(r, self.basis_names) for r in rows)
        return LieAlgebra(tuple(names), structure, self.name if name is None else name)

    def span_brackets(self, a: Subspace, b: Subspace) -> Subspace:
        vecs = [self.bracket(x, y) for x in a.basis for y in b.basis]
        return Subspace.span(vecs, self.dim)

    @cached_property
    def derived_algebra(self) -> Subspace:
        full = Subspace.full(self.dim)
        return self.span_brackets(full, full)

    @cached_property
    def lower_central_series(self) -> tuple:
        full = Subspace.full(self.dim)
        series = [full]
        while True:
            nxt = self.span_brackets(full, series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return tuple(series)

    @property
    def is_nilpotent(self) -> bool:
        return self.lower_central_series[-1].dim == 0

    @property
    def is_abelian(self) -> bool:
        return self.derived_algebra.dim == 0

    def subalgebra_witness(self, k: Subspace):
        """First pair of basis vectors of ``k`` whose bracket leaves ``k``, else None."""
        for a, x in enumerate(k.basis):
            for y in k.basis[a + 1:]:
                if not k.contains(self.bracket(x, y)):
                    return x, y
        return None

    def is_subalgebra(self, k: Subspace) -> bool:
        return self.subalgebra_witness(k) is None


def _combo_name(row: Sequence, names: Sequence[str]) -> str:
    terms = []
    for c, n in zip(row, names):
        if not c:
            continue
        if c == 1:
            terms.append(f"+{n}")
        elif c == -1:
            terms.append(f"-{n}")
        else:
            s = str(c)
            terms.append(f"{'' if s.startswith('-') else '+'}{s}*{n}")
    out = "".join(terms)
    return out[1:] if out.startswith("+") else out or "0"


def from_brackets(basis_names: Sequence[str], brackets: dict, name: str = "") -> tuple:
    """Antisymmetric structure table from ``{(i, j): coords}`` with i < j."""
    m = len(basis_names)
    table = [[zero_vector(m) for _ in range(m)] for _ in range(m)]
    for (i, j), coeffs in brackets.items():
        v = vector(coeffs)
        if len(v) != m:
            raise LieAlgebraError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {m}")
        if not i < j:
            raise LieAlgebraError(f"bracket entry ({i},{j}) must have i < j")
        table[i][j] = v
        table[j][i] = tuple(-x for x in v)
    return tuple(tuple(r) for r in table)


def validate_algebra(structure: Sequence, basis_names: Sequence[str] | None = None,
                     name: str = "") -> LieAlgebra:
    """Check antisymmetry and the Jacobi identity exactly.

    Raises ``AntisymmetryViolation`` or ``JacobiViolation`` (the first failing
    triple i < j < k, with the residual vector).
    """
    m = len(structure)
    if basis_names is None:
        basis_names = tuple(f"e{i + 1}" for i in range(m))
    basis_names = tuple(basis_names)
    if len(basis_names) != m:
        raise LieAlgebraError(f"{len(basis_names)} basis names for dimension {m}")
    table = []
    for i, row in enumerate(structure):
        if len(row) != m:
            raise LieAlgebraError(f"structure row {i} has {len(row)} entries, expected {m}")
        vrow = []
        for j, coeffs in enumerate(row):
            v = vector(coeffs)
            if len(v) != m:
                raise LieAlgebraError(f"[{basis_names[i]},{basis_names[j]}] has "
                                      f"{len(v)} coordinates, expected {m}")
            vrow.append(v)
        table.append(tuple(vrow))
    table = tuple(table)
    for i in range(m):
        for j in range(i, m):
            if any(a != -b for a, b in zip(table[i][j], table[j][i])):
                raise AntisymmetryViolation(i, j, basis_names)
    alg = LieAlgebra(basis_names, table, name)
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                ei, ej, ek = (unit_vector(m, t) for t in (i, j, k))
                terms = (alg.bracket(ei, table[j][k]),
                         alg.bracket(ej, table[k][i]),
                         alg.bracket(ek, table[i][j]))
                residual = tuple(a + b + c for a, b, c in zip(*terms))
                if any(residual):
                    raise JacobiViolation(i, j, k, residual, basis_names)
    return alg


@dataclass(frozen=True)
class JordanHolderFlag:
    """An ordered basis e_1..e_m whose initial spans g_j are ideals.

    ``basis`` holds the flag vectors in the algebra's defining coordinates;
    ``lie`` is the same algebra rewritten in flag coordinates, which is what
    all layer computations use.
    """

    algebra: LieAlgebra
    basis: tuple
    lie: LieAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def names(self) -> tuple:
        return self.lie.basis_names

    def step(self, j: int) -> Subspace:
        """g_j in flag coordinates."""
        return Subspace.coordinate(j, self.dim)

    def functional_from_defining(self, xi: Sequence) -> tuple:
        """Convert a functional given on the defining basis to flag coordinates."""
        return tuple(dot(row, vector(xi)) for row in self.basis)

    def functional_to_defining(self, xi: Sequence) -> tuple:
        return matvec(transpose(inverse(self.basis)), vector(xi))

    def vector_to_defining(self, v: Sequence) -> tuple:
        return matvec(transpose(self.basis), v)

    @cached_property
    def roots(self) -> tuple:
        return roots(self)


def _flag_rows(algebra: LieAlgebra, basis) -> tuple:
    m = algebra.dim
    basis = list(basis)
    if len(basis) != m:
        raise SingularBasis(f"flag has {len(basis)} vectors, algebra has dimension {m}")
    if all(isinstance(b, (int, str)) and not isinstance(b, bool) for b in basis):
        idx = []
        for b in basis:
            if isinstance(b, str):
                if b not in algebra.basis_names:
                    raise SingularBasis(f"unknown basis name {b!r}")
                b = algebra.basis_names.index(b)
            if not 0 <= b < m:
                raise SingularBasis(f"basis index {b} out of range")
            idx.append(b)
        return tuple(unit_vector(m, i) for i in idx)
    return tuple(vector(r) for r in basis)


def validate_jh_flag(algebra: LieAlgebra, basis) -> JordanHolderFlag:
    """Build a flag from an ordered basis (vectors, indices or basis names).

    Raises ``SingularBasis`` or ``NotAnIdeal`` with the first failing step j
    and a witness pair.
    """
    rows = _flag_rows(algebra, basis)
    m = algebra.dim
    if any(len(r) != m for r in rows):
        raise SingularBasis("flag vectors have the wrong length")
    try:
        lie = algebra.change_basis(rows)
    except ZeroDivisionError:
        raise SingularBasis("flag vectors are linearly dependent") from None
    for j in range(m):
        for i in range(m):
            v = lie.structure[i][j]
            if any(v[j + 1:]):
                raise NotAnIdeal(j + 1, lie.basis_names[i], lie.basis_names[j])
    return JordanHolderFlag(algebra, rows, lie)


def rational_eigenvalues(a: Sequence[Sequence]) -> list[Fraction]:
    """Distinct rational eigenvalues of a rational square matrix, ascending."""
    import sympy

    n = len(a)
    if n == 0:
        return []
    mat = sympy.Matrix(n, n, lambda i, j: sympy.Rational(a[i][j].numerator, a[i][j].denominator))
    poly = mat.charpoly()
    found = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in found)


def _next_ideal_vector(ads, eigs, ideal: Subspace):
    m = ideal.ambient_dim
    ann = ideal.annihilator()
    ident = identity(m)

    def search(i, space):
        if space.dim == ideal.dim:
            return None
        if i == m:
            return space
        for c in eigs[i]:
            shifted = tuple(tuple(x - c * y for x, y in zip(r, ir))
                            for r, ir in zip(ads[i], ident))
            rows = matmul(ann, shifted)
            k = Subspace.span(nullspace(rows, m), m)
            found = search(i + 1, space & k)
            if found is not None:
                return found
        return None

    space = search(0, Subspace.full(m))
    if space is None:
        return None
    fresh = [r for r in space.basis if not ideal.contains(r)]
    return fresh[-1]


def find_jh_flag(algebra: LieAlgebra) -> JordanHolderFlag:
    """Greedy search for a Jordan-Hoelder flag with rational roots.

    Repeatedly picks a common eigenvector of all ad(e_i) modulo the ideal
    built so far. Raises ``FlagNotFound`` when no rational weight exists.
    """
    m = algebra.dim
    ads = algebra.basis_ads
    eigs = [rational_eigenvalues(a) for a in ads]
    ideal = Subspace.zero(m)
    chosen = []
    while ideal.dim < m:
        v = _next_ideal_vector(ads, eigs, ideal)
        if v is None:
            raise FlagNotFound(len(chosen), m)
        chosen.append(v)
        ideal = ideal + Subspace.span([v], m)
    return validate_jh_flag(algebra, chosen)


def roots(flag: JordanHolderFlag) -> tuple:
    """Root functionals lambda_1..lambda_m as rows in flag-dual coordinates.

    lambda_j(e_i) is the e_j-coefficient of [e_i, e_j], i.e. the j-th diagonal
    entry of ad(e_i) in the (upper triangular) flag basis.
    """
    lie = flag.lie
    m = lie.dim
    return tuple(tuple(lie.structure[i][j][j] for i in range(m)) for j in range(m))


def ad_matrix(algebra: LieAlgebra, x: Sequence) -> tuple:
    return algebra.ad(vector(x))


def coad_matrix(algebra: LieAlgebra, x: Sequence) -> tuple:
    """-ad(x)^T, so that <coad(x) xi, y> = -<xi, [x, y]>."""
    return tuple(tuple(-v for v in row) for row in transpose(algebra.ad(vector(x))))


def modular_exponent(algebra: LieAlgebra) -> tuple:
    """The functional x -> tr(ad x); Delta_G(exp x) = exp(-tr(ad x))."""
    m = algebra.dim
    return tuple(sum((a[l][l] for l in range(m)), Fraction(0)) for a in algebra.basis_ads)


def trace_on(algebra: LieAlgebra, y: Sequence, k: Subspace):
    """tr(ad_k y) for y in the subalgebra k."""
    total = Fraction(0)
    for b, p in zip(k.basis, k.pivots):
        total += algebra.bracket(y, b)[p]
    return total


def relative_modular_exponent(algebra: LieAlgebra, k: Subspace) -> tuple:
    """y -> tr(ad_g y) - tr(ad_k y), as coefficients on k's echelon basis.

    rho_K(exp y) = exp of this value.
    """
    witness = algebra.subalgebra_witness(k)
    if witness is not None:
        raise NotASubalgebra(*witness)
    full = modular_exponent(algebra)
    return tuple(dot(full, b) - trace_on(algebra, b, k) for b in k.basis)

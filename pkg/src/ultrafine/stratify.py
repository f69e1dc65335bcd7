"""Fine indices and ultrafine labels (e, j, b) of functionals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .forms import form_of, jump_set, radical, radicals, stabilizer
from .linalg import (
    GaussianRational,
    Subspace,
    matmul,
    nullspace,
    transpose,
    vecmat,
    vector,
)
from .polarize import PolarizationTrace, trace_of_form

__all__ = [
    "Classification",
    "UltrafineLabel",
    "classify",
    "complexified_label",
    "complexified_trace",
    "default_twist",
    "fine_index",
    "form_of",
    "jump_set",
    "restricted_radical",
    "ultrafine_label",
]


@dataclass(frozen=True, order=True)
class UltrafineLabel:
    """e: jump set of g(xi); jmap[k-1] = j_k; b: 1-based step indices."""

    e: tuple
    jmap: tuple
    b: tuple

    def __post_init__(self):
        d, rem = divmod(len(self.e), 2)
        if rem:
            raise ValueError(f"jump set {self.e} has odd cardinality")
        if len(self.jmap) != d:
            raise ValueError(f"jmap has {len(self.jmap)} entries, expected {d}")
        if len(set(self.jmap)) != d or not set(self.jmap) <= set(self.e):
            raise ValueError("jmap must be an injective map into e")
        if not set(self.b) <= set(range(1, d + 1)):
            raise ValueError(f"b = {self.b} is not a subset of 1..{d}")

    @property
    def d(self) -> int:
        return len(self.jmap)

    @property
    def is_character(self) -> bool:
        return not self.e


class Classification(NamedTuple):
    fine_index: tuple
    label: UltrafineLabel
    trace: PolarizationTrace


def restricted_radical(flag, xi: Sequence, j: int) -> Subspace:
    """g_j(xi|g_j) = {x in g_j : xi([x, g_j]) = 0}."""
    return radical(form_of(flag, xi), j)


def _fine_index_of_form(form) -> tuple:
    return tuple(n.dim for n in radicals(form))


def fine_index(flag, xi: Sequence) -> tuple:
    """k_j = dim g_j(xi|g_j) for j = 1..m."""
    return _fine_index_of_form(form_of(flag, xi))


def _kernel(functional: Sequence, m: int) -> Subspace:
    if not any(functional):
        return Subspace.full(m)
    return Subspace.span(nullspace([tuple(functional)], m), m)


def _label_of_form(form, roots: Sequence[Sequence], trace: PolarizationTrace) -> UltrafineLabel:
    m = len(form)
    e = jump_set(stabilizer(form))
    b = []
    for k in range(1, trace.d + 1):
        lam = roots[trace.i[k - 1] - 1]
        if trace.chain[k - 1] & _kernel(lam, m) == trace.chain[k]:
            b.append(k)
    return UltrafineLabel(e, trace.j, tuple(b))


def classify(flag, xi: Sequence, roots: Sequence | None = None) -> Classification:
    form = form_of(flag, xi)
    roots = flag.roots if roots is None else roots
    trace = trace_of_form(form)
    return Classification(_fine_index_of_form(form), _label_of_form(form, roots, trace), trace)


def ultrafine_label(flag, xi: Sequence, roots: Sequence | None = None) -> UltrafineLabel:
    return classify(flag, xi, roots).label


def default_twist(m: int) -> tuple:
    """An upper triangular, non-real change of flag basis over Q(i).

    Upper triangular so that every g_j is spanned by the first j new vectors.
    """
    return tuple(
        tuple(GaussianRational(1, r + 1) if r == c
              else GaussianRational(0, 1) / (c - r + 1) if r < c
              else GaussianRational(0)
              for c in range(m))
        for r in range(m))


def _twisted_data(flag, xi, roots, twist):
    form = form_of(flag, xi)
    m = len(form)
    twist = default_twist(m) if twist is None else tuple(tuple(row) for row in twist)
    for r in range(m):
        if not twist[r][r] or any(twist[r][c] for c in range(r)):
            raise ValueError("twist must be upper triangular and invertible")
    cform = tuple(tuple(GaussianRational(x) for x in row) for row in form)
    tform = matmul(matmul(transpose(twist), cform), twist)
    troots = tuple(vecmat(tuple(GaussianRational(x) for x in lam), twist) for lam in roots)
    return tform, troots, twist


def complexified_trace(flag, xi: Sequence, twist=None) -> PolarizationTrace:
    """Descending sequence of the C-bilinear extension of B_xi, computed over Q(i).

    The computation runs in the flag basis changed by ``twist``; subspaces are
    mapped back to complexified flag coordinates before returning.
    """
    tform, _, twist = _twisted_data(flag, xi, flag.roots, twist)
    trace = trace_of_form(tform)
    chain = tuple(p.map(twist) for p in trace.chain)
    return PolarizationTrace(chain, trace.i, trace.j)


def complexified_label(flag, xi: Sequence, roots: Sequence | None = None,
                       twist=None) -> UltrafineLabel:
    """The ultrafine label computed entirely over Q(i) in a twisted flag basis."""
    roots = flag.roots if roots is None else roots
    tform, troots, _ = _twisted_data(flag, vector(xi), roots, twist)
    return _label_of_form(tform, troots, trace_of_form(tform))

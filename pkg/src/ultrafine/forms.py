"""Skew forms B_xi(x, y) = xi([x, y]) and the flag-relative subspaces built from them.

Everything here works on a plain skew matrix in flag coordinates, so the same
code runs over Q and over Q(i).
"""

from __future__ import annotations

from typing import Sequence

from .linalg import Subspace, perp_wrt_form, rank, unit_vector, vector


def form_of(flag, xi: Sequence) -> tuple:
    """Matrix with entries xi([e_i, e_j]) in flag coordinates."""
    lie = flag.lie if hasattr(flag, "lie") else flag
    xi = vector(xi)
    m = lie.dim
    if len(xi) != m:
        raise ValueError(f"functional has {len(xi)} coordinates, algebra has dimension {m}")
    zero = xi[0] * 0 if m else 0
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            c = lie.structure[i][j]
            s = zero
            for cl, xl in zip(c, xi):
                if cl and xl:
                    s = s + cl * xl
            row.append(s)
        rows.append(tuple(row))
    return tuple(rows)


def radical(form: Sequence[Sequence], j: int) -> Subspace:
    """N(B_j) = {x in V_j : B(x, V_j) = 0}, for 1 <= j <= m."""
    m = len(form)
    vj = Subspace.coordinate(j, m)
    return perp_wrt_form(vj, form, vj)


def radicals(form: Sequence[Sequence]) -> list[Subspace]:
    return [radical(form, j) for j in range(1, len(form) + 1)]


def stabilizer(form: Sequence[Sequence]) -> Subspace:
    """g(xi), the radical of the whole form."""
    m = len(form)
    return perp_wrt_form(Subspace.full(m), form, Subspace.full(m))


def jump_set(w: Subspace) -> tuple:
    """1-based indices j with e_j not in g_{j-1} + w."""
    m = w.ambient_dim
    out = []
    acc = w
    for j in range(m):
        e = unit_vector(m, j)
        if not acc.contains(e):
            out.append(j + 1)
        acc = acc + Subspace.span([e], m)
    return tuple(out)


def form_rank(form: Sequence[Sequence]) -> int:
    return rank(form, len(form)) if form else 0

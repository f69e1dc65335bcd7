"""Vergne polarizations, the descending sequence p^0 > p^1 > ... > p^d, and
checks that a subspace really is a polarization."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .forms import form_of, form_rank, jump_set, radicals, stabilizer
from .lie import NotASubalgebra, coad_matrix
from .linalg import (
    Subspace,
    dot,
    matvec,
    perp_wrt_form,
    rank,
    restricted_form_is_zero,
    vector,
)
from .orbits import coadjoint_apply


class InvariantViolation(AssertionError):
    """An internal consistency property failed; this is a bug, not bad input."""


@dataclass(frozen=True)
class PolarizationTrace:
    """p^0 = g, ..., p^d = p(B) together with the index sequences i_k, j_k.

    ``d`` is half the orbit dimension, i.e. the number of recursion steps.
    """

    chain: tuple
    i: tuple
    j: tuple

    @property
    def d(self) -> int:
        return len(self.i)

    @property
    def polarization(self) -> Subspace:
        return self.chain[-1]


def vergne_sum(form: Sequence[Sequence]) -> Subspace:
    """p(B) = N(B_1) + ... + N(B_m)."""
    m = len(form)
    total = Subspace.zero(m)
    for n in radicals(form):
        total = total + n
    return total


def vergne_polarization(flag, xi: Sequence) -> Subspace:
    return vergne_sum(form_of(flag, xi))


def trace_of_form(form: Sequence[Sequence]) -> PolarizationTrace:
    """Run the descending recursion on a skew form in flag coordinates."""
    m = len(form)
    p = Subspace.full(m)
    chain, i_seq, j_seq = [p], [], []
    while not restricted_form_is_zero(form, p, p):
        i_next = None
        for i in range(m + 1):
            vi_p = Subspace.coordinate(i, m) & p
            if not restricted_form_is_zero(form, vi_p, p):
                i_next = i
                break
        if i_next is None:
            raise InvariantViolation("no index i with V_i cap p^k not B-orthogonal to p^k")
        nxt = perp_wrt_form(Subspace.coordinate(i_next, m) & p, form, p)
        j_next = None
        for j in range(m + 1):
            if not (Subspace.coordinate(j, m) & p).leq(nxt):
                j_next = j
                break
        if j_next is None:
            raise InvariantViolation("no index j with V_j cap p^k outside p^(k+1)")
        chain.append(nxt)
        i_seq.append(i_next)
        j_seq.append(j_next)
        p = nxt
    return PolarizationTrace(tuple(chain), tuple(i_seq), tuple(j_seq))


def trace_failures(trace: PolarizationTrace, form: Sequence[Sequence]) -> list[str]:
    """Messages for every index property of the recursion that does not hold."""
    failures = []
    m = len(form)
    n_b = stabilizer(form)
    p_b = vergne_sum(form)
    jn, jp = set(jump_set(n_b)), set(jump_set(p_b))
    for a, b in zip(trace.chain, trace.chain[1:]):
        if not b < a:
            failures.append("chain is not strictly descending")
    if trace.polarization != p_b:
        failures.append("last chain element differs from the Vergne sum")
    if list(trace.i) != sorted(set(trace.i)):
        failures.append(f"i sequence {trace.i} not strictly increasing")
    if any(ik >= jk for ik, jk in zip(trace.i, trace.j)):
        failures.append(f"i_k < j_k fails for i={trace.i}, j={trace.j}")
    if set(trace.i) != jn - jp:
        failures.append(f"i-set {sorted(trace.i)} != jump(N) \\ jump(p) {sorted(jn - jp)}")
    if len(set(trace.j)) != len(trace.j) or set(trace.j) != jp:
        failures.append(f"j-set {sorted(trace.j)} != jump(p) {sorted(jp)}")
    if 2 * trace.d != m - n_b.dim or 2 * trace.d != form_rank(form):
        failures.append(f"2d = {2 * trace.d} differs from the rank of the form")
    if len(jn) != 2 * trace.d:
        failures.append("card jump(N(B)) != 2d")
    return failures


def descending_sequence(flag, xi: Sequence, verify: bool = True) -> PolarizationTrace:
    """The full recursion for B_xi; raises ``InvariantViolation`` on any inconsistency."""
    form = form_of(flag, xi)
    trace = trace_of_form(form)
    if verify:
        failures = trace_failures(trace, form)
        if failures:
            raise InvariantViolation("; ".join(failures))
    return trace


@dataclass(frozen=True)
class PolarizationReport:
    is_subalgebra: bool
    is_isotropic: bool
    has_polarization_dimension: bool
    contains_stabilizer: bool

    @property
    def ok(self) -> bool:
        return (self.is_subalgebra and self.is_isotropic
                and self.has_polarization_dimension and self.contains_stabilizer)


def check_polarization(flag, xi: Sequence, p: Subspace) -> PolarizationReport:
    """Is ``p`` a subalgebra with xi([p, p]) = 0 and 2 dim p = dim g + dim g(xi)?"""
    lie = flag.lie if hasattr(flag, "lie") else flag
    form = form_of(lie, xi)
    g_xi = stabilizer(form)
    return PolarizationReport(
        is_subalgebra=lie.is_subalgebra(p),
        is_isotropic=restricted_form_is_zero(form, p, p),
        has_polarization_dimension=2 * p.dim == lie.dim + g_xi.dim,
        contains_stabilizer=g_xi.leq(p),
    )


@dataclass
class PukanszkyReport:
    samples: int
    max_residual: float
    exact: bool
    orbit_tangent_dim: int
    annihilator_dim: int
    tolerance: float
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.failures and self.max_residual <= self.tolerance
                and self.orbit_tangent_dim == self.annihilator_dim)


def pukanszky_containment_check(flag, xi: Sequence, p: Subspace, samples: int = 200,
                                tolerance: float = 1e-9, seed: int = 0,
                                height: int = 5) -> PukanszkyReport:
    """Check P.xi is contained in xi + p^perp on sampled y in p.

    Only containment and the dimension count dim(p . xi) = dim p^perp are
    checked; equality of the two sets is not decided.
    """
    lie = flag.lie if hasattr(flag, "lie") else flag
    witness = lie.subalgebra_witness(p)
    if witness is not None:
        raise NotASubalgebra(*witness)
    xi = vector(xi)
    m = lie.dim
    rng = random.Random(seed)
    worst = 0.0
    all_exact = True
    nonzero_exact = False
    for n in range(samples):
        coeffs = [0] * p.dim if n == 0 else [rng.randint(-height, height) for _ in range(p.dim)]
        y = tuple(sum((c * b[t] for c, b in zip(coeffs, p.basis)), Fraction(0)) for t in range(m))
        image = coadjoint_apply(lie, y, 1, xi)
        if image.exact:
            diff = [a - b for a, b in zip(image.value, xi)]
            residuals = [abs(dot(diff, b)) for b in p.basis]
            nonzero_exact = nonzero_exact or any(residuals)
            residuals = [float(r) for r in residuals]
        else:
            all_exact = False
            diff = [a - float(b) for a, b in zip(image.value, xi)]
            residuals = [abs(sum(d * float(x) for d, x in zip(diff, b))) for b in p.basis]
        worst = max([worst, *residuals])
    # tangent space of the P-orbit at xi is {coad(y) xi : y in p}
    tangent = [matvec(coad_matrix(lie, b), xi) for b in p.basis]
    tdim = rank(tangent, lie.dim) if tangent else 0
    failures = []
    if nonzero_exact:
        failures.append("an exactly computed residual is nonzero")
    return PukanszkyReport(samples, worst, all_exact, tdim, lie.dim - p.dim,
                           0.0 if all_exact else tolerance, failures)


def continuity_gaps(flag, xi: Sequence, direction: Sequence, depths: int = 20) -> list:
    """Gaps between p(xi) and p(xi + 2^-n direction) for n = 1..depths.

    Only perturbations landing in the same fine layer as ``xi`` are reported,
    as (n, gap) pairs.
    """
    from .stratify import fine_index
    from .subgroups import grassmann_gap

    xi = vector(xi)
    direction = vector(direction)
    base_k = fine_index(flag, xi)
    base_p = vergne_polarization(flag, xi)
    out = []
    for n in range(1, depths + 1):
        scale = Fraction(1, 2 ** n)
        moved = tuple(a + scale * b for a, b in zip(xi, direction))
        if fine_index(flag, moved) != base_k:
            continue
        out.append((n, grassmann_gap(base_p, vergne_polarization(flag, moved))))
    return out

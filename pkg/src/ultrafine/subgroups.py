"""Connected subgroups as subalgebras, their modular exponents, and the
Grassmannian gap used to compare subalgebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lie import (
    LieAlgebra,
    NotASubalgebra,
    modular_exponent,
    relative_modular_exponent,
    trace_on,
)
from .linalg import Subspace, dot, vector


@dataclass(frozen=True)
class SubgroupDescriptor:
    """The connected subgroup exp(k), recorded by its subalgebra k.

    ``rho`` holds y -> tr(ad_g y) - tr(ad_k y) on k's echelon basis and
    ``ambient_trace`` holds x -> tr(ad_g x) on all of g.
    """

    algebra: LieAlgebra
    subalgebra: Subspace
    rho: tuple
    ambient_trace: tuple


def subgroup_from_subalgebra(algebra: LieAlgebra, k: Subspace) -> SubgroupDescriptor:
    witness = algebra.subalgebra_witness(k)
    if witness is not None:
        raise NotASubalgebra(*witness)
    return SubgroupDescriptor(algebra, k, relative_modular_exponent(algebra, k),
                              modular_exponent(algebra))


def _check_member(desc: SubgroupDescriptor, y) -> tuple:
    y = vector(y)
    if not desc.subalgebra.contains(y):
        raise ValueError("element is not in the subalgebra")
    return y


def rho_exponent(desc: SubgroupDescriptor, y: Sequence):
    """r with rho_K(exp y) = e^r, for y in k."""
    y = _check_member(desc, y)
    return dot(desc.rho, desc.subalgebra.coordinates(y))


def delta_exponent(desc: SubgroupDescriptor, y: Sequence):
    """r with Delta_K(exp y) = e^r (equivalently omega_K on K)."""
    y = _check_member(desc, y)
    return -trace_on(desc.algebra, y, desc.subalgebra)


def ambient_delta_exponent(desc: SubgroupDescriptor, x: Sequence):
    """r with Delta_G(exp x) = e^r."""
    return -dot(desc.ambient_trace, vector(x))


def _projector(k: Subspace) -> np.ndarray:
    n = k.ambient_dim
    if k.dim == 0:
        return np.zeros((n, n))
    q, _ = np.linalg.qr(k.to_float().T)
    return q @ q.conj().T


def grassmann_gap(k1: Subspace, k2: Subspace) -> float:
    """Operator norm of the difference of the orthogonal projections."""
    if k1.ambient_dim != k2.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if k1 == k2:
        return 0.0
    return float(np.linalg.norm(_projector(k1) - _projector(k2), 2))

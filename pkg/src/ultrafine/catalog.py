"""Built-in algebras, written in the same schema as algebra files."""

from __future__ import annotations

import re
from fractions import Fraction


def _bracket(i, j, coeffs):
    return {"i": i, "j": j, "coeffs": coeffs}


def abelian(n: int) -> dict:
    basis = [f"e{k + 1}" for k in range(n)]
    return {"name": f"abelian{n}", "dim": n, "basis": basis, "brackets": [],
            "known_length": 1}


def heisenberg(dim: int) -> dict:
    if dim < 3 or dim % 2 == 0:
        raise ValueError("Heisenberg algebras have odd dimension >= 3")
    n = (dim - 1) // 2
    if n == 1:
        basis = ["X", "Y", "Z"]
    else:
        basis = [f"X{k}" for k in range(1, n + 1)] + [f"Y{k}" for k in range(1, n + 1)] + ["Z"]
    brackets = [_bracket(basis[k], basis[n + k], {"Z": 1}) for k in range(n)]
    return {"name": f"heisenberg{dim}", "dim": dim, "basis": basis, "brackets": brackets,
            "known_length": 2}


def filiform4() -> dict:
    basis = ["X1", "X2", "X3", "X4"]
    return {"name": "filiform4", "dim": 4, "basis": basis,
            "brackets": [_bracket("X1", "X2", {"X3": 1}), _bracket("X1", "X3", {"X4": 1})]}


def free2step3() -> dict:
    basis = ["X1", "X2", "X3", "Y12", "Y13", "Y23"]
    brackets = [_bracket("X1", "X2", {"Y12": 1}), _bracket("X1", "X3", {"Y13": 1}),
                _bracket("X2", "X3", {"Y23": 1})]
    return {"name": "free2step3", "dim": 6, "basis": basis, "brackets": brackets,
            "flag": ["Y12", "Y13", "Y23", "X1", "X2", "X3"], "known_length": 2}


def axb() -> dict:
    return {"name": "axb", "dim": 2, "basis": ["A", "Y"],
            "brackets": [_bracket("A", "Y", {"Y": 1})]}


def diag3(lam="1/2") -> dict:
    lam = Fraction(lam)
    return {"name": f"diag3({lam})", "dim": 3, "basis": ["A", "X", "Y"],
            "brackets": [_bracket("A", "X", {"X": 1}), _bracket("A", "Y", {"Y": str(lam)})]}


def sqrt2_saddle() -> dict:
    """ad(A) acts on span(X, Y) with eigenvalues +-sqrt(2): no rational flag."""
    return {"name": "sqrt2_saddle", "dim": 3, "basis": ["A", "X", "Y"],
            "brackets": [_bracket("A", "X", {"Y": 2}), _bracket("A", "Y", {"X": 1})]}


# Completely solvable members; every property suite runs over these.
SOLVABLE = ("abelian1", "abelian2", "abelian3", "abelian4", "heisenberg3", "heisenberg5",
            "filiform4", "free2step3", "axb", "diag3", "diag3(-1)", "diag3(1)")
NILPOTENT = ("abelian1", "abelian2", "abelian3", "abelian4", "heisenberg3", "heisenberg5",
             "filiform4", "free2step3")
NON_EXAMPLES = ("sqrt2_saddle",)
NAMES = SOLVABLE + NON_EXAMPLES


def get(name: str) -> dict:
    """Look up a catalog algebra; accepts abelianN, heisenbergN and diag3(lambda)."""
    if m := re.fullmatch(r"abelian(\d+)", name):
        return abelian(int(m.group(1)))
    if m := re.fullmatch(r"heisenberg(\d+)", name):
        return heisenberg(int(m.group(1)))
    if m := re.fullmatch(r"diag3(?:\(([-+]?\d+(?:/\d+)?)\))?", name):
        return diag3(m.group(1) or "1/2")
    fixed = {"filiform4": filiform4, "free2step3": free2step3, "axb": axb,
             "sqrt2_saddle": sqrt2_saddle}
    if name in fixed:
        return fixed[name]()
    raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(NAMES)}")

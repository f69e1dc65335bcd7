import random
from fractions import Fraction

import pytest

from ultrafine import catalog
from ultrafine.forms import form_of
from ultrafine.lie import NotASubalgebra
from ultrafine.linalg import Subspace, span
from ultrafine.polarize import (
    PolarizationTrace,
    check_polarization,
    continuity_gaps,
    descending_sequence,
    pukanszky_containment_check,
    trace_failures,
    vergne_polarization,
)

from conftest import flag_of, functionals

Z, Y, X = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_vergne_examples():
    h3 = flag_of("heisenberg3")
    assert vergne_polarization(h3, Z) == span([Z, Y], 3)
    assert vergne_polarization(h3, X) == Subspace.full(3)
    assert vergne_polarization(flag_of("axb"), (1, 0)) == span([(1, 0)], 2)


def test_descending_examples():
    t = descending_sequence(flag_of("heisenberg3"), Z)
    assert (t.d, t.i, t.j) == (1, (2,), (3,))
    assert t.chain == (Subspace.full(3), span([Z, Y], 3))
    t = descending_sequence(flag_of("heisenberg3"), (0, 0, 0))
    assert (t.d, t.i, t.j, t.chain) == (0, (), (), (Subspace.full(3),))
    t = descending_sequence(flag_of("axb"), (1, 0))
    assert (t.d, t.i, t.j) == (1, (1,), (2,))
    assert t.polarization == span([(1, 0)], 2)


def test_check_polarization_examples():
    h3 = flag_of("heisenberg3")
    assert check_polarization(h3, Z, span([Z, Y], 3)).ok
    rep = check_polarization(h3, Z, Subspace.full(3))
    assert rep.is_subalgebra and not rep.is_isotropic and not rep.ok
    assert check_polarization(h3, (0, 0, 0), Subspace.full(3)).ok
    # span{Y, X} is not even a subalgebra
    assert not check_polarization(h3, Z, span([Y, X], 3)).is_subalgebra


def test_broken_trace_is_reported():
    h3 = flag_of("heisenberg3")
    form = form_of(h3, Z)
    good = descending_sequence(h3, Z)
    assert trace_failures(good, form) == []
    bad = PolarizationTrace(good.chain, (3,), (2,))
    assert trace_failures(bad, form)


@pytest.mark.parametrize("name", catalog.SOLVABLE)
def test_polarization_properties(name):
    flag = flag_of(name)
    for xi in functionals(flag.dim, 80, seed=12):
        trace = descending_sequence(flag, xi)
        assert trace.polarization == vergne_polarization(flag, xi)
        assert check_polarization(flag, xi, trace.polarization).ok


def test_pukanszky_heisenberg_exact():
    h3 = flag_of("heisenberg3")
    rep = pukanszky_containment_check(h3, Z, span([Z, Y], 3), samples=50)
    assert rep.exact and rep.max_residual == 0 and rep.ok
    assert rep.orbit_tangent_dim == rep.annihilator_dim == 1


@pytest.mark.parametrize("name", ["axb", "diag3", "diag3(-1)", "diag3(1)"])
def test_pukanszky_solvable(name):
    flag = flag_of(name)
    for xi in functionals(flag.dim, 6, seed=13):
        p = vergne_polarization(flag, xi)
        rep = pukanszky_containment_check(flag, xi, p, samples=40, seed=1)
        assert rep.ok and rep.max_residual < 1e-9


def test_pukanszky_float_path_detects_non_polarization():
    # g itself is not isotropic at Y*; exp(aA) has no finite series there
    rep = pukanszky_containment_check(flag_of("axb"), (1, 0), Subspace.full(2), samples=30)
    assert not rep.exact and rep.max_residual > 1 and not rep.ok


def test_pukanszky_rejects_non_subalgebra():
    with pytest.raises(NotASubalgebra):
        pukanszky_containment_check(flag_of("heisenberg3"), Z, span([Y, X], 3))


@pytest.mark.parametrize("name", ["heisenberg5", "filiform4", "free2step3"])
def test_continuity_gaps_shrink(name):
    flag = flag_of(name)
    rng = random.Random(14)
    checked = 0
    for xi in functionals(flag.dim, 30, seed=15):
        if not any(any(r) for r in form_of(flag, xi)):
            continue
        direction = [Fraction(rng.randint(-4, 4)) for _ in range(flag.dim)]
        gaps = continuity_gaps(flag, xi, direction, depths=24)
        tail = [g for n, g in gaps if n >= 20]
        if tail:
            checked += 1
            assert max(tail) < 1e-5
    assert checked


def test_continuity_sees_moving_polarization():
    # on free2step3 p(xi) moves inside the generic layer; the gap decays like 2^-n
    flag = flag_of("free2step3")
    gaps = continuity_gaps(flag, (-1, 0, 1, -1, 1, 1), (1,) * 6, depths=20)
    values = [g for _, g in gaps]
    assert len(values) == 20 and values[0] > 0.5
    assert values == sorted(values, reverse=True)
    assert values[-1] < 1e-6

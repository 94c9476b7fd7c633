import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conelab.barycenter import (
    beta,
    beta_continuity_check,
    pipeline_barycenter,
    powercone_image,
    uniqueness_sweep,
)
from conelab.cone import SemilatticeCone
from conelab.errors import NonPrincipalError
from conelab.generate import random_lattice, random_valuation, valuation_grid
from conelab.powercone import enumerate_smyth
from conelab.valuation import Valuation, dirac, stochastic_leq

F = Fraction
BOT, A, B, TOP = range(4)


def test_worked_fixture(m2_cone, m2):
    nu = dirac(m2, A) + dirac(m2, B)
    x, trace = pipeline_barycenter(m2_cone, nu)
    smyth = enumerate_smyth(m2_cone)
    assert x == TOP
    up_a, up_b = smyth.index({A, TOP}), smyth.index({B, TOP})
    expected = [F(0)] * len(smyth)
    expected[up_a] = expected[up_b] = F(1)
    assert trace.pushed.weights == tuple(expected)
    assert trace.alpha_result.members == {TOP}
    assert trace.verdict.principal == TOP
    assert beta(m2_cone, 2 * dirac(m2, A)) == A


def test_dirac_and_sums(m2_cone, c3_cone):
    for cone in (m2_cone, c3_cone):
        for x in cone.elements:
            got, trace = pipeline_barycenter(cone, dirac(cone.lattice, x))
            assert got == x and trace.alpha_result.members == cone.lattice.up[x]
    nu = Valuation(m2_cone.lattice, (F(1, 3), 2, 0, 0))
    assert beta(m2_cone, nu) == A


def test_continuity_examples(m2_cone, m2):
    both = dirac(m2, A) + dirac(m2, B)
    assert beta_continuity_check(m2_cone, {TOP}, [both]).ok
    _, trace = pipeline_barycenter(m2_cone, both)
    assert trace.alpha_result.members <= {TOP}
    sample = list(valuation_grid(m2, (F(0), F(1))))
    assert beta_continuity_check(m2_cone, m2.everything, sample).ok
    _, trace = pipeline_barycenter(m2_cone, dirac(m2, A))
    assert beta(m2_cone, dirac(m2, A)) not in {TOP}
    assert not trace.alpha_result.members <= {TOP}


def test_sweeps(m2_cone, c3_cone):
    report = uniqueness_sweep(m2_cone, valuation_grid(m2_cone.lattice, (F(0), F(1))))
    assert report.ok and report.stats["valuations"] == 16
    report = uniqueness_sweep(c3_cone, valuation_grid(c3_cone.lattice, (F(0), F(1), F(2))))
    assert report.ok and report.stats["valuations"] == 27
    assert beta(c3_cone, Valuation.zero(c3_cone.lattice)) == 0


def test_non_principal_is_a_hard_failure(m2_cone, m2, monkeypatch):
    import conelab.barycenter as bc

    whole = enumerate_smyth(m2_cone).elements[3]  # {a,b,top}
    monkeypatch.setattr(bc, "powercone_image", lambda cone, nu, smyth=None: (nu, whole))
    with pytest.raises(NonPrincipalError) as info:
        pipeline_barycenter(m2_cone, dirac(m2, A))
    assert info.value.trace.verdict.kind == "not_linear"
    assert isinstance(info.value, AssertionError)


def test_powercone_image_mass(m2_cone, m2):
    nu = Valuation(m2, (1, 2, 3, 4))
    pushed, _ = powercone_image(m2_cone, nu)
    assert pushed.mass == nu.mass


lattice_and_pair = st.builds(
    lambda size, seed: (random_lattice(size, seed), random.Random(seed)),
    st.integers(1, 6), st.integers(0, 2**32),
)


@settings(max_examples=80, deadline=None)
@given(lattice_and_pair)
def test_structural_properties(data):
    lattice, rng = data
    cone = SemilatticeCone(lattice)
    nu, mu = random_valuation(lattice, rng), random_valuation(lattice, rng)
    b = beta(cone, nu)
    for a in (F(1, 2), 1, 3):
        assert beta(cone, a * nu) == b
    assert beta(cone, nu + mu) == lattice.join(b, beta(cone, mu))
    bigger = nu + mu
    assert stochastic_leq(nu, bigger)
    assert lattice.leq(b, beta(cone, bigger))
    for u in lattice.opens:
        assert beta_continuity_check(cone, u, [nu, mu]).ok

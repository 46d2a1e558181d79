import random

import pytest

from equivar.errors import NonRegularActionError
from equivar.fixtures import OCTAHEDRON, random_involutive
from equivar.gf2 import BitMatrix
from equivar.simplicial import InvolutiveComplex, SimplicialComplex, mod2_homology
from equivar.smith import build_smith_sequence, harnack_thom, image_criterion, lefschetz_check

SMALL = ["point", "hexagon-identity", "hexagon-antipodal", "octahedron-identity",
         "octahedron-reflection", "octahedron-antipodal"]


def check_sequence(sm):
    assert sm.exactness_defects() == []
    assert sm.lift_independent()
    for n in range(sm.top + 1):
        assert sm.transfer_identity(n) and sm.boundary_identity(n)
    # the bookkeeping identity behind the Harnack-Thom bound
    assert sum(sm.h_fixed) == 2 * sum(m.rank() for m in sm.i) - sum(sm.h_total)


@pytest.mark.parametrize("name", SMALL)
def test_fixture_sequences_are_exact(named, name):
    check_sequence(build_smith_sequence(named(name)))


def test_quadric_sequence(quadric):
    sm = build_smith_sequence(quadric)
    check_sequence(sm)
    report = image_criterion(sm)
    # fixed set nonempty, H^1 and H^3 of the quotient vanish: saturated in every degree
    assert report.saturated


@pytest.mark.parametrize("seed", range(10))
def test_random_sequences_are_exact(seed):
    check_sequence(build_smith_sequence(random_involutive(random.Random(seed), faces=6)))


def test_antipodal_transfer_sequence(named):
    sm = build_smith_sequence(named("octahedron-antipodal"))
    assert sm.h_fixed == (0, 0, 0)
    assert sm.h_total == (1, 0, 1) and sm.h_rel == (1, 1, 1)


def test_identity_action(named):
    sm = build_smith_sequence(named("octahedron-identity"))
    assert sm.h_rel == (0, 0, 0)
    for n in range(3):
        assert sm.i[n] == BitMatrix.identity(sm.h_total[n])


def test_image_criterion_examples(named):
    assert image_criterion(build_smith_sequence(named("octahedron-reflection"))).saturated
    assert image_criterion(build_smith_sequence(named("octahedron-identity"))).saturated
    report = image_criterion(build_smith_sequence(named("octahedron-antipodal")))
    assert not report.saturated
    for d in report.degrees:
        assert d.dim_im_i <= d.dim_invariants
        assert d.saturated == (d.composite_in_ker_delta == 0)
        assert d.composite_in_ker_delta == d.rho_of_invariants


def test_raw_composite_can_exceed_rho_image(named):
    # in degree 1 of the antipodal sphere the composite hits a class outside ker delta_1
    d = image_criterion(build_smith_sequence(named("octahedron-antipodal"))).degrees[1]
    assert d.saturated and d.composite_image == 1 and d.composite_in_ker_delta == 0


@pytest.mark.parametrize("name,lhs,rhs", [
    ("octahedron-reflection", 2, 2),
    ("octahedron-antipodal", 0, 2),
    ("octahedron-identity", 2, 2),
])
def test_harnack_examples(named, name, lhs, rhs):
    h = harnack_thom(named(name))
    assert (h.lhs, h.rhs, h.slack) == (lhs, rhs, rhs - lhs)


@pytest.mark.parametrize("seed", range(10))
def test_harnack_slack_matches_saturation(seed):
    ic = random_involutive(random.Random(seed), faces=6)
    h = harnack_thom(ic)
    assert h.slack >= 0
    assert (h.slack == 0) == image_criterion(build_smith_sequence(ic)).saturated


def test_lefschetz_examples(named):
    r = lefschetz_check(named("octahedron-reflection"))
    assert (r.lefschetz_number, r.chi_fixed, r.consistent) == (0, 0, True)
    raw = InvolutiveComplex(SimplicialComplex.from_maximal(6, OCTAHEDRON), [2, 3, 0, 1, 5, 4])
    r = lefschetz_check(raw)  # no regularity needed
    assert (r.lefschetz_number, r.chi_fixed) == (0, 0)
    r = lefschetz_check(named("octahedron-identity"))
    assert r.lefschetz_number == r.chi_fixed == 2


def test_lefschetz_specializes_on_the_quadric(quadric):
    r = lefschetz_check(quadric)
    assert r.lefschetz_number == r.chi_fixed == r.specialized == 0


def test_requires_regular_action():
    raw = InvolutiveComplex(SimplicialComplex.from_maximal(6, OCTAHEDRON), [2, 3, 0, 1, 5, 4])
    with pytest.raises(NonRegularActionError):
        build_smith_sequence(raw)
    with pytest.raises(NonRegularActionError):
        harnack_thom(raw)


def test_homology_dims_agree_with_cohomology(named):
    sm = build_smith_sequence(named("octahedron-reflection"))
    assert sm.h_total == mod2_homology(named("octahedron-reflection").complex)

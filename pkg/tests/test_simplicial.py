import random

import pytest

from equivar.errors import (
    InvalidComplexError,
    InvalidPermutationError,
    NonRegularActionError,
    NonSimplicialMapError,
    NotAnInvolutionError,
    SimplexCapError,
)
from equivar.fixtures import HEXAGON, OCTAHEDRON, random_complex, random_involutive
from equivar.simplicial import (
    ComplexPair,
    InvolutiveComplex,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    fixed_part,
    fixed_subcomplex,
    induced_map_mod2,
    is_regular,
    lefschetz_number,
    mod2_cohomology,
    mod2_homology,
    product_complex,
    product_involutive,
    quotient_complex,
    quotient_pair,
    rational_betti,
    rational_homology_trace,
    regularity_defects,
    regularize,
    subdivision_depth,
)

OCT = SimplicialComplex.from_maximal(6, OCTAHEDRON)
HEX = SimplicialComplex.from_maximal(6, HEXAGON)
REFLECTION = InvolutiveComplex(OCT, [0, 1, 2, 3, 5, 4])
ANTIPODAL = InvolutiveComplex(OCT, [2, 3, 0, 1, 5, 4])
HEX_ANTIPODAL = InvolutiveComplex(HEX, [(i + 3) % 6 for i in range(6)])
DISK = SimplicialComplex.from_maximal(4, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])  # cone on a triangle


def test_construction_validates():
    assert OCT.f_vector == (6, 12, 8)
    with pytest.raises(InvalidComplexError):
        SimplicialComplex(3, [(0, 1)])  # faces missing
    with pytest.raises(InvalidComplexError):
        SimplicialComplex.from_maximal(2, [(0, 2)])
    with pytest.raises(SimplexCapError):
        SimplicialComplex.from_maximal(12, [range(12)], cap=100)
    with pytest.raises(InvalidPermutationError):
        InvolutiveComplex(HEX, [0, 0, 1, 2, 3, 4])
    with pytest.raises(NotAnInvolutionError):
        InvolutiveComplex(HEX, [(i + 1) % 6 for i in range(6)])
    with pytest.raises(NonSimplicialMapError):
        InvolutiveComplex(SimplicialComplex.from_maximal(3, [(0, 1)]), [0, 2, 1])


def test_simplex_cap_env(monkeypatch):
    monkeypatch.setenv("EQUIVAR_SIMPLEX_CAP", "10")
    with pytest.raises(SimplexCapError):
        SimplicialComplex.from_maximal(6, OCTAHEDRON)


def test_empty_complex_is_legal():
    K = SimplicialComplex.from_maximal(0, [])
    assert K.dim == -1 and mod2_cohomology(K).dims == () and K.euler_characteristic() == 0


def test_fixed_subcomplex_examples():
    F = fixed_subcomplex(REFLECTION)
    assert F.f_vector == (4, 4) and mod2_cohomology(F).dims == (1, 1)
    assert fixed_subcomplex(InvolutiveComplex(OCT)) == OCT
    assert fixed_subcomplex(HEX_ANTIPODAL).dim == -1


def test_quotient_examples():
    Q, proj = quotient_complex(HEX_ANTIPODAL)
    assert Q.f_vector == (3, 3) and mod2_cohomology(Q).dims == (1, 1)
    assert quotient_complex(InvolutiveComplex(OCT))[0] == OCT
    D, proj = quotient_complex(REFLECTION)
    assert mod2_cohomology(D).dims == (1, 0, 0)
    assert proj.image((0, 1, 5)) == proj.image((0, 1, 4))


def test_non_regular_action_is_rejected():
    assert not is_regular(ANTIPODAL)
    with pytest.raises(NonRegularActionError):
        quotient_complex(ANTIPODAL)
    with pytest.raises(NonRegularActionError):
        fixed_subcomplex(InvolutiveComplex(SimplicialComplex.from_maximal(2, [(0, 1)]), [1, 0]))


def test_regularize_examples():
    assert regularize(REFLECTION) is REFLECTION
    A = regularize(ANTIPODAL)
    assert is_regular(A) and subdivision_depth(ANTIPODAL) == 1
    assert mod2_cohomology(quotient_complex(A)[0]).dims == (1, 1, 1)  # RP^2
    edge = regularize(InvolutiveComplex(SimplicialComplex.from_maximal(2, [(0, 1)]), [1, 0]))
    F = fixed_subcomplex(edge)
    assert F.f_vector == (1,)
    assert is_regular(edge)


@pytest.mark.parametrize("seed", range(8))
def test_subdivision_preserves_betti_numbers(seed):
    ic = random_involutive(random.Random(seed))
    sd = barycentric_subdivision(ic)
    assert is_regular(sd)
    assert mod2_cohomology(sd.complex).dims == mod2_cohomology(ic.complex).dims
    assert [rational_homology_trace(sd, n) for n in range(ic.dim + 1)] == [
        rational_homology_trace(ic, n) for n in range(ic.dim + 1)
    ]
    assert fixed_subcomplex(sd).euler_characteristic() == fixed_subcomplex(ic).euler_characteristic()


def test_regularity_needs_single_orbit_per_orbit_set():
    # a square with the swap 0<->2, 1<->3 has no edge {v, gv} but two edge orbits over one orbit set
    ic = InvolutiveComplex(SimplicialComplex.from_maximal(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), [2, 3, 0, 1])
    assert regularity_defects(ic)
    assert is_regular(regularize(ic))


def test_product_examples():
    pt = SimplicialComplex.from_maximal(1, [])
    assert product_complex(pt, HEX) == HEX
    I = SimplicialComplex.from_maximal(2, [(0, 1)])
    square = product_complex(I, I)
    assert square.f_vector == (4, 5, 2) and square.euler_characteristic() == 1
    P = product_complex(OCT, OCT)
    assert P.euler_characteristic() == 4
    assert mod2_cohomology(P).dims == (1, 0, 2, 0, 1)  # Kuenneth for S^2 x S^2
    T = product_complex(HEX, HEX)
    assert mod2_cohomology(T).dims == (1, 2, 1)


def test_cohomology_examples():
    assert mod2_cohomology(OCT).dims == (1, 0, 1)
    assert mod2_cohomology(HEX).dims == (1, 1)
    assert mod2_homology(HEX) == (1, 1)
    pair = ComplexPair(DISK, SimplicialComplex.from_maximal(3, [(0, 1), (1, 2), (0, 2)]), (0, 1, 2))
    assert mod2_cohomology(pair).dims == (0, 0, 1)
    pair = quotient_pair(REFLECTION)
    assert mod2_cohomology(pair).dims == (0, 0, 1)


def test_induced_map_examples():
    for n in range(3):
        ident = SimplicialMap(OCT, OCT, range(6))
        assert induced_map_mod2(ident, n).rank() == mod2_cohomology(OCT).dims[n]
    equator, vertices = fixed_part(REFLECTION)
    inc = SimplicialMap(equator, OCT, vertices)
    assert induced_map_mod2(inc, 1).shape == (1, 0)
    circle = SimplicialComplex.from_maximal(3, [(0, 1), (1, 2), (0, 2)])
    m = induced_map_mod2(SimplicialMap(circle, DISK, [0, 1, 2]), 0)
    assert m.shape == (1, 1) and m.rank() == 1
    assert induced_map_mod2(inc, 5).shape == (0, 0)


def test_rational_traces():
    assert rational_homology_trace(REFLECTION, 2) == (1, -1)
    assert rational_homology_trace(regularize(ANTIPODAL), 2) == (1, -1)
    K = random_complex(random.Random(3))
    for n in range(K.dim + 1):
        b, t = rational_homology_trace(InvolutiveComplex(K), n)
        assert b == t == rational_betti(K, n)


def test_rational_euler_characteristic():
    rnd = random.Random(11)
    for _ in range(10):
        K = random_complex(rnd)
        assert sum((-1) ** n * rational_betti(K, n) for n in range(K.dim + 1)) == K.euler_characteristic()
        assert sum((-1) ** n * d for n, d in enumerate(mod2_cohomology(K).dims)) == K.euler_characteristic()


def test_rational_detects_torsion():
    # six-vertex RP^2: mod 2 sees H_1 and H_2, the rationals see neither
    rp2 = SimplicialComplex.from_maximal(6, [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ])
    assert mod2_cohomology(rp2).dims == (1, 1, 1)
    assert [rational_betti(rp2, n) for n in range(3)] == [1, 0, 0]


def test_lefschetz_on_random_involutions():
    rnd = random.Random(5)
    for _ in range(10):
        ic = random_involutive(rnd)
        assert lefschetz_number(ic) == fixed_subcomplex(ic).euler_characteristic()


def test_product_involution_needs_order_preserving_actions():
    path = SimplicialComplex.from_maximal(3, [(0, 1), (1, 2)])
    flip = InvolutiveComplex(path, [2, 1, 0])  # reverses the vertex order on each edge
    with pytest.raises(NonSimplicialMapError):
        product_involutive(flip, InvolutiveComplex(path))
    product_involutive(flip, flip)  # reversing both factors keeps staircase simplices
    Q = product_involutive(REFLECTION, REFLECTION)
    assert is_regular(Q)
    assert mod2_cohomology(fixed_subcomplex(Q)).dims == (1, 2, 1)

"""Acceptance criteria, one check each.

Each check returns ``(passed, detail)``.  Under pytest every criterion is a
test and the PASS/FAIL lines are repeated in the terminal summary; run as a
script it prints the lines and exits nonzero on any failure.
"""

import json
import random
import subprocess
import sys
import time

import numpy as np

from equivar.cli import run_command
from equivar.equivariant import (
    build_double_complex,
    component_map_rank,
    krasnov_test,
    spectral_pages,
    total_equivariant_dims,
)
from equivar.fixtures import FIXTURES, fixture_document, random_complex, random_involutive
from equivar.gf2 import BitMatrix, Subspace, kernel, image
from equivar.simplicial import (
    InvolutiveComplex,
    fixed_subcomplex,
    mod2_cohomology,
    quotient_complex,
)
from equivar.smith import build_smith_sequence, harnack_thom, image_criterion, lefschetz_check
from equivar.surfaces import (
    EnriquesLatticeInvariants,
    HodgeInput,
    SurfaceCohomologyProfile,
    brauer_dim_surface,
    etale_dims_formula,
    enriques_formulas,
    surface_hypotheses,
    surface_profile,
)

_cache = {}


def fixture(name):
    if name not in _cache:
        _cache[name] = FIXTURES[name]()
    return _cache[name]


def _dc(ic):
    return build_double_complex(ic, ic.dim + 3)


def criterion_1():
    """Trivial action: equivariant dims are partial Betti sums, no kind I differentials."""
    rng = random.Random(1)
    bad = []
    for k in range(20):
        K = random_complex(rng, vertices=8, max_dim=3, faces=7, cap=200)
        dc = _dc(InvolutiveComplex(K))
        betti = mod2_cohomology(K).dims
        top = K.dim + 3
        if total_equivariant_dims(dc, top) != [sum(betti[: i + 1]) for i in range(top + 1)]:
            bad.append(f"dims of complex {k}")
        if any(page.nonzero_differentials() for page in spectral_pages(dc, "I")):
            bad.append(f"differential in complex {k}")
    return not bad, "20 complexes" if not bad else ", ".join(bad)


def criterion_2():
    """Stabilization: dims in degrees dim+1 and dim+2 equal the fixed Betti total."""
    bad = []
    for name in FIXTURES:
        ic = fixture(name)
        dims = total_equivariant_dims(_dc(ic), ic.dim + 3)
        total = sum(mod2_cohomology(fixed_subcomplex(ic)).dims)
        if not dims[ic.dim + 1] == dims[ic.dim + 2] == total:
            bad.append(name)
    return not bad, f"{len(FIXTURES)} fixtures" if not bad else ", ".join(bad)


def criterion_3():
    """Degeneration, vanishing II differentials, zero Harnack slack and Smith saturation agree."""
    rows = []
    ok = True
    for name in FIXTURES:
        ic = fixture(name)
        kr = krasnov_test(ic)
        flags = (kr.degenerate, kr.ii_differentials_vanish, harnack_thom(ic).slack == 0,
                 image_criterion(build_smith_sequence(ic)).saturated)
        ok &= len(set(flags)) == 1
        rows.append(f"{name}={'D' if flags[0] else 'nd'}")
    return ok, " ".join(rows)


def criterion_4():
    """Smith sequences are exact; i(rho + 0) = 1 + g and the fixed part of delta is the pair boundary."""
    rng = random.Random(4)
    models = [fixture(n) for n in FIXTURES] + [random_involutive(rng, faces=6) for _ in range(20)]
    bad = 0
    for ic in models:
        sm = build_smith_sequence(ic)
        good = sm.is_exact() and all(sm.transfer_identity(n) and sm.boundary_identity(n) for n in range(sm.top + 1))
        bad += not good
    return bad == 0, f"{len(models)} sequences, {bad} failing"


def criterion_5():
    """Lefschetz number equals the Euler characteristic of the fixed part."""
    rows = []
    ok = True
    for name in FIXTURES:
        r = lefschetz_check(fixture(name))
        ok &= r.consistent
        rows.append(f"{name}:{r.lefschetz_number}={r.chi_fixed}")
    return ok, " ".join(rows)


def criterion_6():
    """Quadric model: engine dims equal the closed-form dims; hypotheses hold; under 30 s."""
    start = time.perf_counter()
    ic = fixture("quadric")
    hyp = surface_hypotheses(ic)
    engine = tuple(total_equivariant_dims(_dc(ic), 4))
    formula = etale_dims_formula(surface_profile(ic))
    elapsed = time.perf_counter() - start
    ok = all(hyp.values()) and engine == formula == (1, 1, 3, 3, 4) and elapsed < 30
    return ok, f"engine={engine} formula={formula} {elapsed:.1f}s"


def _random_profile(rng):
    while True:
        s = rng.randint(1, 6)
        chi = sum(rng.randint(-6, 2) for _ in range(s))
        b2_plus = rng.randint(max(0, chi - 2), 30)
        b2 = 2 + 2 * b2_plus - chi
        b1 = rng.randint(0, 4)
        tfb = 4 * s - chi
        h2 = b2 + 2 * b1
        h2G = (tfb + b2 - 2) // 2
        if h2G > h2:
            continue
        minus = b2 - b2_plus
        h20 = rng.randint(0, minus)
        rho = rng.randint(0, minus - h20)
        return SurfaceCohomologyProfile(b1, b2, h2, h2G, b2_plus, s, tfb), HodgeInput(h20, minus - h20, rho)


def criterion_7():
    """Three Brauer routes agree on the quadric (value 1) and on 100 admissible profiles."""
    quad = brauer_dim_surface(surface_profile(fixture("quadric")), HodgeInput(0, 2, 2))
    ok = quad.agree and quad.via_04 == 1
    rng = random.Random(7)
    agree = sum(brauer_dim_surface(*_random_profile(rng)).agree for _ in range(100))
    return ok and agree == 100, f"quadric={quad.via_04}, {agree}/100 profiles"


def criterion_8():
    """Component map surjective in degrees 1, 2 for reflection models; in every degree for trivial actions."""
    bad = []
    for name in ("octahedron-reflection", "quadric"):
        ic = fixture(name)
        q = mod2_cohomology(quotient_complex(ic)[0]).dims + (0, 0, 0)
        if q[2] or q[3]:
            bad.append(f"{name} quotient")
        for n in (1, 2):
            if not component_map_rank(ic, n).surjective:
                bad.append(f"{name} n={n}")
    for name in ("point", "hexagon-identity", "octahedron-identity", "quadric-identity"):
        ic = fixture(name)
        for n in range(ic.dim + 4):
            if not component_map_rank(ic, n).surjective:
                bad.append(f"{name} n={n}")
    return not bad, "all surjective" if not bad else ", ".join(bad)


def criterion_9():
    """Enriques evaluator over all (alpha, delta) and r - a in {0, 2, 4}."""
    bad = []
    for alpha in (0, 1):
        for delta in (0, 1):
            for diff in (0, 2, 4):
                res = enriques_formulas(EnriquesLatticeInvariants(diff + 1, 1, alpha, delta, delta, 1, 1))
                good = (res.b == 2 * res.s - 2 and res.s == res.s_or + res.s_nor
                        and res.dim_2Br == 2 * res.s - 1 and (res.beta == 0) == (alpha == 1 and delta == 0))
                if not good:
                    bad.append((alpha, delta, diff))
    return not bad, "12 combinations" if not bad else str(bad)


def criterion_10():
    """F2 linear algebra laws on 1000 random matrices, and byte-identical reports."""
    rng = np.random.default_rng(10)
    bad = 0
    for _ in range(1000):
        m, n = (int(x) for x in rng.integers(0, 129, 2))
        a = BitMatrix.from_dense(rng.integers(0, 2, (m, n), dtype=np.uint8))
        r = a.rank()
        bad += r != a.T.rank() or kernel(a).dim + image(a).dim != n or r > min(m, n)
        k = lambda: Subspace(n, BitMatrix.from_dense(rng.integers(0, 2, (int(rng.integers(0, 6)), n), dtype=np.uint8)))  # noqa: E731
        A, B, C = k(), k(), k()
        C = A + C
        bad += (A + (B & C)) != ((A + B) & C) or (A + B).dim + (A & B).dim != A.dim + B.dim
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        path = f"{tmp}/oct.json"
        with open(path, "w") as fh:
            json.dump(fixture_document("octahedron-reflection"), fh)
        outputs = {run_command(["verify", path])[0]}
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "equivar", "verify", path], capture_output=True)
            outputs.add(proc.stdout.decode().rstrip("\n"))
    return bad == 0 and len(outputs) == 1, f"{bad} law violations, {len(outputs)} distinct reports"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]
RESULTS = {}


def evaluate(check):
    ok, detail = check()
    line = f"{'PASS' if ok else 'FAIL'} criterion {check.__name__.split('_')[1]}: {check.__doc__.strip()} [{detail}]"
    RESULTS[check.__name__] = line
    print(line)
    return ok


def test_criterion_1():
    assert evaluate(criterion_1)


def test_criterion_2():
    assert evaluate(criterion_2)


def test_criterion_3():
    assert evaluate(criterion_3)


def test_criterion_4():
    assert evaluate(criterion_4)


def test_criterion_5():
    assert evaluate(criterion_5)


def test_criterion_6():
    assert evaluate(criterion_6)


def test_criterion_7():
    assert evaluate(criterion_7)


def test_criterion_8():
    assert evaluate(criterion_8)


def test_criterion_9():
    assert evaluate(criterion_9)


def test_criterion_10():
    assert evaluate(criterion_10)


if __name__ == "__main__":
    sys.exit(0 if all([evaluate(c) for c in CRITERIA]) else 1)

"""Closed-form dimension formulas for real surfaces and their cross-check.

Each evaluator is plain integer arithmetic.  The geometric hypotheses behind a
formula (a real point, ``H^3(X(C)/G; F2) = 0``, real points on both liftings
of an Enriques surface) are asserted by the caller.  Hodge numbers and lattice
invariants are inputs because a triangulation cannot see them.
``cross_check_surface`` is the exception: it reads a profile off a
triangulated model and checks the formulas against the engine.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .equivariant import (
    _double_complex,
    default_degree,
    group_cohomology_dims,
    induced_involution,
    total_equivariant_dims,
)
from .errors import (
    BoundViolationError,
    ConstraintViolationError,
    EmptyFixedSetError,
    HypothesisError,
    InadmissibleError,
    InconsistentInputsError,
    InvariantViolation,
    RouteMismatchError,
)
from .simplicial import (
    InvolutiveComplex,
    fixed_part,
    mod2_cohomology,
    quotient_complex,
    rational_homology_trace,
    require_regular,
)


@dataclass(frozen=True)
class SurfaceCohomologyProfile:
    """Cohomological data of ``X(C)`` with its real structure.

    ``b2_plus`` is the dimension of the invariant part of ``H^2(X(C); C)``;
    the ``_mod2`` fields are dimensions over F2.
    """

    b1_mod2: int
    b2: int
    h2_mod2: int
    h2G_mod2: int
    b2_plus: int
    s: int
    total_fixed_betti: int

    def violations(self, real_point: bool = True) -> list[str]:
        out = [f"{k} is negative" for k, v in asdict(self).items() if v < 0]
        if self.h2G_mod2 > self.h2_mod2:
            out.append("h2G_mod2 exceeds h2_mod2")
        if self.b2_plus > self.b2:
            out.append("b2_plus exceeds b2")
        if real_point and self.s < 1:
            out.append("a real point is assumed but s < 1")
        return out

    def validate(self, real_point: bool = True) -> None:
        bad = self.violations(real_point)
        if bad:
            raise InconsistentInputsError("; ".join(bad))

    @property
    def torsion_consistent(self) -> bool:
        """``h2_mod2 = b2 + 2 b1_mod2``, true when ``H^1(X(C); Z) = 0``."""
        return self.h2_mod2 == self.b2 + 2 * self.b1_mod2


@dataclass(frozen=True)
class HodgeInput:
    h20: int
    h11_minus: int
    rho_plus: int

    def validate(self) -> None:
        if min(self.h20, self.h11_minus, self.rho_plus) < 0:
            raise InconsistentInputsError("Hodge inputs must be nonnegative")
        if self.rho_plus > self.h11_minus:
            raise InconsistentInputsError(
                f"rho_plus={self.rho_plus} exceeds h11_minus={self.h11_minus}"
            )


# etale cohomology and the Brauer group ----------------------------------
def etale_dims_formula(p: SurfaceCohomologyProfile, k_max: int = 4) -> tuple[int, ...]:
    """``dim H^k_et(X; F2)`` for ``k = 0..k_max``; constant from ``k = 4`` on."""
    p.validate()
    b1, h2, h2G = p.b1_mod2, p.h2_mod2, p.h2G_mod2
    head = [1, b1 + 1, h2G + b1 + 1, 2 * h2G - h2 + 2 * b1 + 1]
    stable = 2 * h2G - h2 + 2 * b1 + 2
    dims = (head + [stable] * max(0, k_max - 3))[: k_max + 1]
    if min(dims) < 0:
        raise HypothesisError(f"negative dimension in {dims}; the hypotheses cannot hold")
    return tuple(dims)


def pic_mod2(rho_plus: int, b1_mod2: int) -> int:
    """``dim Pic X / 2 Pic X``."""
    return rho_plus + b1_mod2


def brauer_dim_kummer(h2_et: int, pic_mod2: int) -> int:
    """``dim 2Br'(X)`` from the Kummer sequence."""
    if min(h2_et, pic_mod2) < 0 or pic_mod2 > h2_et:
        raise InconsistentInputsError(f"Pic/2 of dimension {pic_mod2} does not fit in H^2_et of dimension {h2_et}")
    return h2_et - pic_mod2


def lefschetz_euler(b2_plus: int, b2: int) -> int:
    """``chi(X(R)) = 2 + 2 (b2)_+ - b2`` for a surface with ``b1 = b3 = 0``."""
    if not 0 <= b2_plus <= b2:
        raise InconsistentInputsError(f"b2_plus={b2_plus} must lie in [0, b2={b2}]")
    return 2 + 2 * b2_plus - b2


def _half(twice: int, what: str) -> int:
    if twice % 2:
        raise RouteMismatchError(f"{what} is not an integer")
    return twice // 2


@dataclass(frozen=True)
class BrauerRoutes:
    via_04: int  # 2s - 1 + h20 + h11_minus - rho_plus
    via_221: int  # total_fixed_betti/2 + b2/2 - rho_plus
    via_223: int  # total_fixed_betti/2 + chi/2 - 1 + (b2)_- - rho_plus
    via_kummer: int  # H^2_et from the fixed part, minus Pic/2

    @property
    def agree(self) -> bool:
        return self.via_04 == self.via_221 == self.via_223 == self.via_kummer


def brauer_dim_surface(p: SurfaceCohomologyProfile, h: HodgeInput) -> BrauerRoutes:
    """``dim 2Br'(X)`` by three closed forms and by the Kummer count.

    Disagreement means the inputs violate one of the identities the routes
    are derived from, and raises ``RouteMismatchError``.
    """
    p.validate()
    h.validate()
    if h.h20 + h.h11_minus != p.b2 - p.b2_plus:
        raise RouteMismatchError(
            f"(b2)_- = {p.b2 - p.b2_plus} but h20 + h11_minus = {h.h20 + h.h11_minus}"
        )
    chi = lefschetz_euler(p.b2_plus, p.b2)
    via_04 = 2 * p.s - 1 + h.h20 + h.h11_minus - h.rho_plus
    via_221 = _half(p.total_fixed_betti + p.b2, "total_fixed_betti/2 + b2/2") - h.rho_plus
    via_223 = (
        _half(p.total_fixed_betti + chi, "total_fixed_betti/2 + chi/2")
        - 1 + h.h20 + h.h11_minus - h.rho_plus
    )
    h2_et = _half(p.total_fixed_betti + p.h2_mod2, "dim H^2_et")
    via_kummer = brauer_dim_kummer(h2_et, pic_mod2(h.rho_plus, p.b1_mod2))
    routes = BrauerRoutes(via_04, via_221, via_223, via_kummer)
    if not routes.agree:
        raise RouteMismatchError(f"routes disagree: {routes}")
    return routes


# real Enriques surfaces ---------------------------------------------------
@dataclass(frozen=True)
class EnriquesLatticeInvariants:
    """Invariants of the action of ``(Z/2)^2`` on the K3 lattice of the double cover."""

    r_theta: int
    a_theta: int
    alpha_sigma: int
    delta1: int
    delta2: int
    dim_H_minus: int
    dim_Hperp_cap: int
    s_or: int | None = None
    s_nor: int | None = None

    def validate(self) -> None:
        if self.r_theta < 0 or self.a_theta < 0:
            raise ConstraintViolationError("r(theta) and a(theta) must be nonnegative")
        for name in ("alpha_sigma", "delta1", "delta2"):
            if getattr(self, name) not in (0, 1):
                raise ConstraintViolationError(f"{name} must be 0 or 1")
        if min(self.dim_H_minus, self.dim_Hperp_cap) < 0:
            raise ConstraintViolationError("lattice dimensions must be nonnegative")
        if (self.r_theta - self.a_theta) % 2:
            raise ConstraintViolationError("r(theta) and a(theta) must have the same parity")
        if self.delta1 != self.delta2:
            raise ConstraintViolationError("the two delta invariants must coincide")

    @property
    def max_term(self) -> int:
        return max(1 - self.alpha_sigma, (self.delta1 + self.delta2) // 2)


@dataclass(frozen=True)
class EnriquesResult:
    """``status`` is ``"proven"`` when both liftings have real points.

    Otherwise only ``b_prime`` is certain, and ``beta`` is reported only when
    it is known to vanish.
    """

    status: str
    b_prime: int
    beta: int | None
    b: int | None
    s_nor: int | None
    s: int | None
    s_or: int | None
    dim_2Br: int | None
    checks: dict[str, bool] = field(default_factory=dict)


def enriques_formulas(inv: EnriquesLatticeInvariants, liftings_real: bool = True) -> EnriquesResult:
    inv.validate()
    m = inv.max_term
    diff = inv.r_theta - inv.a_theta
    b_prime = diff + m
    if b_prime < 0:
        raise InadmissibleError(f"b'(Y) = {b_prime} is negative")
    if not liftings_real:
        beta = 0 if m == 0 else None
        b = b_prime if beta == 0 else None
        return EnriquesResult("unproven", b_prime, beta, b, None, None, None, None)
    beta = m
    b = b_prime + beta
    s = 1 + diff // 2 + m
    s_nor = 1 + inv.alpha_sigma * (inv.delta1 + inv.delta2 - 1) + inv.dim_H_minus - inv.dim_Hperp_cap
    s_or = s - s_nor
    dim_2Br = 2 * s - 1
    if min(s, s_nor, s_or) < 0:
        raise InadmissibleError(f"negative component count: s={s}, s_nor={s_nor}, s_or={s_or}")
    if b % 2 or b != 2 * s - 2:
        raise InadmissibleError(f"b(Y) = {b} differs from 2s - 2 = {2 * s - 2}")
    checks = {"b_equals_2s_minus_2": True, "components_add_up": s == s_or + s_nor}
    if inv.s_nor is not None:
        checks["s_nor_matches_input"] = inv.s_nor == s_nor
    if inv.s_or is not None:
        checks["s_or_matches_input"] = inv.s_or == s_or
    if not all(checks.values()):
        raise InadmissibleError(f"supplied component counts disagree: {checks}")
    return EnriquesResult("proven", b_prime, beta, b, s_nor, s, s_or, dim_2Br, checks)


@dataclass(frozen=True)
class BrauerBounds:
    dim_2Br: int | None  # exact when the real part is nonempty
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def enriques_brauer_bounds(
    b: int, epsilon: int, s: int, real_nonempty: bool, strict: bool = False
) -> BrauerBounds:
    """``dim 2Br'(Y) = b + epsilon`` and the lower bounds it must satisfy.

    A failed bound means the inputs cannot come from a real Enriques surface.
    Failures are reported; ``strict`` raises ``BoundViolationError`` instead.
    """
    if epsilon not in (0, 1):
        raise InconsistentInputsError("epsilon must be 0 or 1")
    if b < 0 or s < 0:
        raise InconsistentInputsError("b and s must be nonnegative")
    checks = {"b_at_least_2s_minus_2": b >= 2 * s - 2}
    dim = None
    if real_nonempty:
        dim = b + epsilon
        checks["dim_at_least_2s_minus_2_plus_epsilon"] = dim >= 2 * s - 2 + epsilon
        checks["dim_at_least_2s_minus_1"] = dim >= 2 * s - 1
    result = BrauerBounds(dim, checks)
    if strict and not result.ok:
        failed = [k for k, v in checks.items() if not v]
        raise BoundViolationError(f"bounds violated: {', '.join(failed)}")
    return result


# cross-check on a triangulated model -----------------------------------
@dataclass(frozen=True)
class SurfaceCrossCheck:
    profile: SurfaceCohomologyProfile
    hypotheses: dict[str, bool]
    formula_dims: tuple[int, ...]
    engine_dims: tuple[int, ...]
    chi_fixed: int
    chi_formula: int
    brauer: BrauerRoutes | None

    @property
    def consistent(self) -> bool:
        return self.formula_dims == self.engine_dims and self.chi_fixed == self.chi_formula


def surface_profile(ic: InvolutiveComplex) -> SurfaceCohomologyProfile:
    """Profile of a triangulated surface model read off the engine."""
    require_regular(ic)
    h = mod2_cohomology(ic.complex).dims
    b2, tr2 = rational_homology_trace(ic, 2)
    fixed, _ = fixed_part(ic)
    return SurfaceCohomologyProfile(
        b1_mod2=h[1],
        b2=b2,
        h2_mod2=h[2],
        h2G_mod2=group_cohomology_dims(induced_involution(ic, 2))[0],
        b2_plus=(b2 + tr2) // 2,
        s=fixed.connected_components() if fixed.dim >= 0 else 0,
        total_fixed_betti=sum(mod2_cohomology(fixed).dims) if fixed.dim >= 0 else 0,
    )


def surface_hypotheses(ic: InvolutiveComplex) -> dict[str, bool]:
    require_regular(ic)
    fixed, _ = fixed_part(ic)
    hq = mod2_cohomology(quotient_complex(ic)[0]).dims + (0,) * 5
    return {
        "four_dimensional": ic.dim == 4,
        "fixed_set_nonempty": fixed.dim >= 0,
        "quotient_H1_zero": hq[1] == 0,
        "quotient_H3_zero": hq[3] == 0,
    }


def cross_check_surface(ic: InvolutiveComplex, h: HodgeInput | None = None) -> SurfaceCrossCheck:
    """Compare the surface formulas with the engine on a 4-dimensional model.

    Raises ``HypothesisError`` when a precondition fails and
    ``InvariantViolation`` with the differing degrees when a formula does.
    """
    hyp = surface_hypotheses(ic)
    if not hyp["fixed_set_nonempty"]:
        raise EmptyFixedSetError("the fixed subcomplex is empty")
    failed = [k for k, v in hyp.items() if not v]
    if failed:
        raise HypothesisError(f"hypotheses fail: {', '.join(failed)}")
    p = surface_profile(ic)
    top = ic.dim + 1
    formula = etale_dims_formula(p, top)
    engine = tuple(total_equivariant_dims(_double_complex(ic, default_degree(ic)), top))
    if formula != engine:
        diff = {k: (f, e) for k, (f, e) in enumerate(zip(formula, engine)) if f != e}
        raise InvariantViolation(f"formula and engine differ at degrees {diff} (formula, engine)")
    if formula[-1] != p.total_fixed_betti:
        raise InvariantViolation(
            f"stable dimension {formula[-1]} differs from the fixed Betti total {p.total_fixed_betti}"
        )
    chi_fixed = fixed_part(ic)[0].euler_characteristic()
    chi_formula = lefschetz_euler(p.b2_plus, p.b2)
    if chi_fixed != chi_formula:
        raise InvariantViolation(f"chi(fixed) = {chi_fixed} but 2 + 2 b2_plus - b2 = {chi_formula}")
    brauer = brauer_dim_surface(p, h) if h is not None else None
    return SurfaceCrossCheck(p, hyp, formula, engine, chi_fixed, chi_formula, brauer)

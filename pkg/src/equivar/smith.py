"""Homological Smith sequence of a simplicial involution over F2.

Invariant chains split as ``C_n(K)^G = (1+g) C_n(K) ⊕ C_n(K^G)`` and
``(1+g) C_n(K)`` is identified with the relative chains ``C_n(K/G, K^G)``.
This gives a short exact sequence of chain complexes

    0 -> C(K/G, K^G) ⊕ C(K^G) --alpha--> C(K) --beta--> C(K/G, K^G) -> 0

with ``alpha(t, f) = s + g s + f`` for any lift ``s`` of ``t`` and
``beta`` the projection of free simplices.  Its long exact sequence is the
Smith sequence ``i_n = alpha_*``, ``rho_n = beta_*`` and connecting maps
``delta_n``.  Bases of ``H_n(K/G, K^G) ⊕ H_n(K^G)`` list the relative
classes first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import GradedComplex
from .errors import InvariantViolation
from .gf2 import BitMatrix, Subspace, image, kernel
from .simplicial import (
    InvolutiveComplex,
    fixed_part,
    induced_homology_mod2,
    is_regular,
    lefschetz_number,
    mod2_cohomology,
    quotient_complex,
    quotient_pair,
    rational_homology_trace,
    regularize,
    require_regular,
)


@dataclass(frozen=True)
class SmithSequence:
    top: int
    h_rel: tuple[int, ...]  # dim H_n(K/G, K^G)
    h_fixed: tuple[int, ...]  # dim H_n(K^G)
    h_total: tuple[int, ...]  # dim H_n(K)
    i: tuple[BitMatrix, ...]  # H_n(rel) ⊕ H_n(fixed) -> H_n(K)
    rho: tuple[BitMatrix, ...]  # H_n(K) -> H_n(rel)
    delta: tuple[BitMatrix, ...]  # H_n(rel) -> H_{n-1}(rel) ⊕ H_{n-1}(fixed); delta[0] is empty
    delta_second_lift: tuple[BitMatrix, ...]
    g_action: tuple[BitMatrix, ...]  # g_* on H_n(K)
    pair_boundary: tuple[BitMatrix, ...]  # H_n(K/G, K^G) -> H_{n-1}(K^G) of the pair
    quotient_to_rel: tuple[BitMatrix, ...]  # H_n(K/G) -> H_n(K/G, K^G)

    def exactness_defects(self) -> list[str]:
        """Nodes where ``ker != im``; empty when the sequence is exact."""
        out = []
        for n in range(self.top + 1):
            a_dim = self.h_rel[n] + self.h_fixed[n]
            d_in = self.delta[n + 1] if n + 1 <= self.top else BitMatrix(a_dim, 0)
            # at H_n(rel) ⊕ H_n(fixed)
            if not (self.i[n] @ d_in).is_zero() or d_in.rank() != a_dim - self.i[n].rank():
                out.append(f"H_{n}(K/G,K^G)+H_{n}(K^G)")
            # at H_n(K)
            if not (self.rho[n] @ self.i[n]).is_zero() or self.i[n].rank() != self.h_total[n] - self.rho[n].rank():
                out.append(f"H_{n}(K)")
            # at H_n(rel)
            if n >= 1:
                if not (self.delta[n] @ self.rho[n]).is_zero() or self.rho[n].rank() != self.h_rel[n] - self.delta[n].rank():
                    out.append(f"H_{n}(K/G,K^G)")
            elif self.rho[0].rank() != self.h_rel[0]:
                out.append("H_0(K/G,K^G)")
        return out

    def is_exact(self) -> bool:
        return not self.exactness_defects()

    def transfer_identity(self, n: int) -> bool:
        """``i_n (rho_n ⊕ 0) = 1 + g`` on ``H_n(K)``, entrywise."""
        pad = BitMatrix.vstack([self.rho[n], BitMatrix(self.h_fixed[n], self.h_total[n])])
        return self.i[n] @ pad == BitMatrix.identity(self.h_total[n]) + self.g_action[n]

    def boundary_identity(self, n: int) -> bool:
        """Fixed-part component of ``delta_n`` equals the pair boundary, entrywise."""
        if n < 1:
            return True
        fixed_rows = np.arange(self.h_rel[n - 1], self.h_rel[n - 1] + self.h_fixed[n - 1])
        return self.delta[n].select_rows(fixed_rows) == self.pair_boundary[n]

    def lift_independent(self) -> bool:
        return all(a == b for a, b in zip(self.delta, self.delta_second_lift))

    def invariant_dim(self, n: int) -> int:
        h = self.h_total[n]
        return h - (BitMatrix.identity(h) + self.g_action[n]).rank()


def _direct_sum(a: GradedComplex, b: GradedComplex, top: int) -> GradedComplex:
    dims = {n: a.dim(n) + b.dim(n) for n in range(top + 1)}
    maps = {}
    for n in range(1, top + 1):
        ma, mb = a.map(n), b.map(n)
        maps[n] = BitMatrix.block([(0, 0, ma), (ma.rows, ma.cols, mb)], dims[n - 1], dims[n])
    return GradedComplex(dims, maps, step=-1)


def build_smith_sequence(ic: InvolutiveComplex) -> SmithSequence:
    require_regular(ic)
    K = ic.complex
    top = K.dim
    pair = quotient_pair(ic)
    Q, proj = quotient_complex(ic)
    fixed, fixed_vertices = fixed_part(ic)
    rel_cx = pair.relative_chain_complex
    fix_cx = fixed.chain_complex
    tot_cx = K.chain_complex
    A = _direct_sum(rel_cx, fix_cx, top)

    rel_idx = [pair.relative_indices(n) for n in range(top + 1)]
    rel_pos = [{int(t): k for k, t in enumerate(r)} for r in rel_idx]
    fixed_in_K = []
    for n in range(top + 1):
        fixed_in_K.append(
            np.asarray(
                [K.index(tuple(fixed_vertices[v] for v in s)) for s in (fixed.simplices[n] if n <= fixed.dim else ())],
                dtype=np.int64,
            )
        )

    # lifts of relative simplices: smallest and largest preimage
    lift_lo, lift_hi = [], []
    for n in range(top + 1):
        img = proj.image_indices(n)
        lo = np.full(len(rel_idx[n]), -1, dtype=np.int64)
        hi = np.full(len(rel_idx[n]), -1, dtype=np.int64)
        for s, t in enumerate(img.tolist()):
            k = rel_pos[n].get(t)
            if k is None:
                continue
            if lo[k] < 0:
                lo[k] = s
            hi[k] = s
        lift_lo.append(lo)
        lift_hi.append(hi)
    perm = [ic.simplex_permutation(n) for n in range(top + 1)]
    free_proj = []  # beta: K simplex -> relative coordinate, -1 for fixed simplices
    for n in range(top + 1):
        img = proj.image_indices(n)
        free_proj.append(np.asarray([rel_pos[n].get(int(t), -1) for t in img], dtype=np.int64))

    def alpha(n: int) -> BitMatrix:
        nrel, nfix = len(rel_idx[n]), len(fixed_in_K[n])
        cols = np.arange(nrel)
        rows_lo, rows_hi = lift_lo[n], perm[n][lift_lo[n]]
        fcols = nrel + np.arange(nfix)
        return BitMatrix.from_coo(
            K.count(n),
            nrel + nfix,
            np.concatenate([rows_lo, rows_hi, fixed_in_K[n]]),
            np.concatenate([cols, cols, fcols]),
        )

    def beta(n: int) -> BitMatrix:
        src = np.flatnonzero(free_proj[n] >= 0)
        return BitMatrix.from_coo(len(rel_idx[n]), K.count(n), free_proj[n][src], src)

    def split_invariant(n: int, chains: BitMatrix) -> BitMatrix:
        """Coordinates in ``C_n(rel) ⊕ C_n(fixed)`` of invariant chains in ``C_n(K)``."""
        rel_part = chains.select_cols(lift_lo[n])
        fix_part = chains.select_cols(fixed_in_K[n])
        return BitMatrix.hstack([rel_part, fix_part])

    def connecting(n: int, lifts: list[np.ndarray]) -> BitMatrix:
        target = A.homology(n - 1)
        reps = rel_cx.homology(n).reps
        if reps.rows == 0:
            return BitMatrix(target.dim, 0)
        lift = BitMatrix.from_coo(len(rel_idx[n]), K.count(n), np.arange(len(rel_idx[n])), lifts[n])
        chains = reps @ lift  # rows: lifted chains in C_n(K)
        bnd = chains @ K.boundary(n).T
        split = split_invariant(n - 1, bnd)
        if split @ alpha(n - 1).T != bnd:
            raise InvariantViolation(f"boundary of a lift is not invariant in degree {n - 1}")
        return target.coords(split).T

    i_maps, rho_maps, g_maps, deltas, deltas2, pair_bd, q_to_rel = [], [], [], [], [], [], []
    for n in range(top + 1):
        i_maps.append(A.induced(alpha(n), n, tot_cx))
        rho_maps.append(tot_cx.induced(beta(n), n, rel_cx))
        g_maps.append(induced_homology_mod2(ic.map, n))
        sel = BitMatrix.identity(Q.count(n)).select_rows(rel_idx[n])  # C_n(K/G) -> C_n(rel)
        q_to_rel.append(Q.chain_complex.induced(sel, n, rel_cx))
        if n == 0:
            deltas.append(BitMatrix(0, rel_cx.betti(0)))
            deltas2.append(BitMatrix(0, rel_cx.betti(0)))
            pair_bd.append(BitMatrix(0, rel_cx.betti(0)))
            continue
        deltas.append(connecting(n, lift_lo))
        deltas2.append(connecting(n, lift_hi))
        # pair boundary: relative cycle, boundary in K/G, read on the fixed part
        reps = rel_cx.homology(n).reps
        embedded = reps.scatter_cols(rel_idx[n], Q.count(n))
        bnd = embedded @ Q.boundary(n).T
        fixed_in_Q = np.asarray(
            [Q.index(s) for s in (tuple(proj.vertex_map[fixed_vertices[v]] for v in f) for f in
                                  (fixed.simplices[n - 1] if n - 1 <= fixed.dim else ()))],
            dtype=np.int64,
        )
        pair_bd.append(fix_cx.homology(n - 1).coords(bnd.select_cols(fixed_in_Q)).T
                       if reps.rows else BitMatrix(fix_cx.betti(n - 1), 0))

    return SmithSequence(
        top,
        tuple(rel_cx.betti(n) for n in range(top + 1)),
        tuple(fix_cx.betti(n) for n in range(top + 1)),
        tuple(tot_cx.betti(n) for n in range(top + 1)),
        tuple(i_maps),
        tuple(rho_maps),
        tuple(deltas),
        tuple(deltas2),
        tuple(g_maps),
        tuple(pair_bd),
        tuple(q_to_rel),
    )


@dataclass(frozen=True)
class SmithDegree:
    """Image criterion in degree ``n``.

    ``composite_image`` is the rank of ``H_{n+1}(K/G) -> H_{n+1}(K/G, K^G)``
    followed by the relative part of ``delta_{n+1}``; ``composite_in_ker_delta``
    is the dimension of that image inside ``ker delta_n``, which is where
    ``rho_n`` sends the invariant classes.
    """

    n: int
    dim_im_i: int
    dim_invariants: int
    composite_image: int
    composite_in_ker_delta: int
    rho_of_invariants: int

    @property
    def saturated(self) -> bool:
        return self.dim_im_i == self.dim_invariants


@dataclass(frozen=True)
class SmithReport:
    degrees: tuple[SmithDegree, ...]
    harnack_lhs: int
    harnack_rhs: int
    lefschetz_number: int | None = None
    chi_fixed: int | None = None

    @property
    def saturated(self) -> bool:
        return all(d.saturated for d in self.degrees)


def image_criterion(sm: SmithSequence) -> SmithReport:
    degrees = []
    for n in range(sm.top + 1):
        inv = sm.invariant_dim(n)
        if n + 1 <= sm.top:
            rel_rows = np.arange(sm.h_rel[n])
            composite = image(sm.delta[n + 1].select_rows(rel_rows) @ sm.quotient_to_rel[n + 1])
        else:
            composite = Subspace(sm.h_rel[n])
        ker_delta = kernel(sm.delta[n]) if n >= 1 else Subspace.full(sm.h_rel[n])
        # rho_n applied to the invariant classes
        h = sm.h_total[n]
        inv_basis = kernel(BitMatrix.identity(h) + sm.g_action[n]).basis
        rho_inv = (inv_basis @ sm.rho[n].T).rank() if inv_basis.rows else 0
        degrees.append(
            SmithDegree(n, sm.i[n].rank(), inv, composite.dim, (composite & ker_delta).dim, rho_inv)
        )
    lhs = sum(sm.h_fixed)
    rhs = 2 * sum(sm.invariant_dim(n) for n in range(sm.top + 1)) - sum(sm.h_total)
    return SmithReport(tuple(degrees), lhs, rhs)


@dataclass(frozen=True)
class HarnackResult:
    lhs: int
    rhs: int

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs


def harnack_thom(ic: InvolutiveComplex) -> HarnackResult:
    """Total mod 2 Betti number of the fixed part against ``2 dim H_*^G - dim H_*``."""
    require_regular(ic)
    fixed, _ = fixed_part(ic)
    lhs = sum(mod2_cohomology(fixed).dims)
    rhs = 0
    for n in range(ic.dim + 1):
        g = induced_homology_mod2(ic.map, n)
        h = g.rows
        inv = h - (BitMatrix.identity(h) + g).rank()
        rhs += 2 * inv - h
    return HarnackResult(lhs, rhs)


@dataclass(frozen=True)
class LefschetzResult:
    lefschetz_number: int
    chi_fixed: int
    specialized: int | None  # 2 + 2 b2_plus - b2 on 4-dimensional models with b1 = 0

    @property
    def consistent(self) -> bool:
        return self.lefschetz_number == self.chi_fixed and self.specialized in (None, self.chi_fixed)


def lefschetz_check(ic: InvolutiveComplex) -> LefschetzResult:
    """Lefschetz number of g on rational homology against the Euler characteristic of the fixed set.

    Needs no regularity: the fixed set is read off a regular subdivision.
    """
    L = lefschetz_number(ic)
    K = ic.complex
    chi = fixed_part(ic if is_regular(ic) else regularize(ic))[0].euler_characteristic()
    specialized = None
    if K.dim == 4 and rational_homology_trace(ic, 1)[0] == 0 and rational_homology_trace(ic, 3)[0] == 0:
        b2, tr2 = rational_homology_trace(ic, 2)
        b2_plus = (b2 + tr2) // 2
        specialized = 2 + 2 * b2_plus - b2
    return LefschetzResult(L, chi, specialized)

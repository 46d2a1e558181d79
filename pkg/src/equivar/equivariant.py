"""Equivariant mod 2 cohomology of a simplicial involution.

The double complex has a copy of ``C^j(K; F2)`` in every cell ``(i, j)`` with
``i >= 0``, vertical maps the simplicial coboundary and horizontal maps
``1 + g`` (equal to ``1 - g`` mod 2).  Its total cohomology is ``H^n(M; G, F2)``.

Total degree ``n`` holds the cells ``(n - j, j)`` ordered by increasing ``i``.
Only degrees ``0..window`` are assembled; everything below ``window`` is exact.
Spectral sequence I filters by the simplicial degree ``j`` and II by the
group degree ``i``; in both, ``d_r`` goes ``(p, q) -> (p + r, q - r + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyFixedSetError, InvariantViolation, NotAnInvolutionError, WindowTooSmallError
from .filtered import FilteredComplex, SpectralPage
from .gf2 import BitMatrix
from .simplicial import (
    InvolutiveComplex,
    SimplicialMap,
    fixed_part,
    induced_map_mod2,
    mod2_cohomology,
    quotient_complex,
    require_regular,
)

KINDS = ("I", "II")


@dataclass
class DoubleComplex:
    ic: InvolutiveComplex
    window: int
    vertical: list[BitMatrix]  # d^j : C^j -> C^{j+1}
    horizontal: list[BitMatrix]  # 1 + g on C^j
    _models: dict = field(default_factory=dict, repr=False)

    @property
    def top_simplicial(self) -> int:
        return self.ic.dim

    def cell_dim(self, i: int, j: int) -> int:
        if i < 0 or i > self.window:
            return 0
        return self.ic.complex.count(j)

    def cells(self, n: int) -> list[tuple[int, int]]:
        return [(n - j, j) for j in range(min(n, self.top_simplicial), -1, -1) if n - j <= self.window]

    def check(self) -> None:
        for j in range(self.top_simplicial):
            if self.vertical[j] @ self.horizontal[j] != self.horizontal[j + 1] @ self.vertical[j]:
                raise InvariantViolation(f"d and 1+g do not commute in degree {j}")

    def total(self, kind: str) -> FilteredComplex:
        """Total complex in degrees ``0..window`` filtered for spectral sequence ``kind``."""
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        key = ("total", kind)
        if key not in self._models:
            self._models[key] = self._assemble(kind)
        return self._models[key]

    def model(self, kind: str) -> FilteredComplex:
        """Small complex with the same pages from ``E_1`` on."""
        key = ("model", kind)
        if key not in self._models:
            self._models[key] = self.total(kind).e1_model()
        return self._models[key]

    def _assemble(self, kind: str) -> FilteredComplex:
        top = self.window
        offsets, dims, levels = [], [], []
        for n in range(top + 1):
            off, table, lv = 0, {}, []
            for (i, j) in self.cells(n):
                table[(i, j)] = off
                size = self.cell_dim(i, j)
                off += size
                lv.extend([j if kind == "I" else i] * size)
            offsets.append(table)
            dims.append(off)
            levels.append(np.asarray(lv, dtype=np.int64))
        maps = []
        for n in range(top):
            blocks = []
            for (i, j), c0 in offsets[n].items():
                if (i, j + 1) in offsets[n + 1]:
                    blocks.append((offsets[n + 1][(i, j + 1)], c0, self.vertical[j]))
                if (i + 1, j) in offsets[n + 1]:
                    blocks.append((offsets[n + 1][(i + 1, j)], c0, self.horizontal[j]))
            maps.append(BitMatrix.block(blocks, dims[n + 1], dims[n]))
        return FilteredComplex(dims, maps, levels)


def build_double_complex(ic: InvolutiveComplex, n_max: int) -> DoubleComplex:
    """Double complex with horizontal window ``n_max + 2``."""
    require_regular(ic)
    K = ic.complex
    vertical = [K.coboundary(j) for j in range(K.dim)]
    horizontal = [BitMatrix.identity(K.count(j)) + ic.g_matrix(j) for j in range(K.dim + 1)]
    return DoubleComplex(ic, int(n_max) + 2, vertical, horizontal)


def _double_complex(ic: InvolutiveComplex, n_max: int) -> DoubleComplex:
    """Shared double complex for ``ic``, grown when a larger window is needed."""
    cached = ic.__dict__.get("_double_complex")
    if cached is None or cached.window < n_max + 2:
        cached = build_double_complex(ic, n_max)
        ic.__dict__["_double_complex"] = cached
    return cached


def default_degree(ic: InvolutiveComplex) -> int:
    return ic.dim + 3


def total_equivariant_dims(dc: DoubleComplex, up_to: int, method: str = "model") -> list[int]:
    """``dim H^n(M; G, F2)`` for ``n = 0..up_to``."""
    if dc.window < up_to + 2:
        raise WindowTooSmallError(f"window {dc.window} cannot resolve degree {up_to}")
    fc = dc.model("II") if method == "model" else dc.total("II")
    return fc.cohomology_dims()[: up_to + 1]


def group_cohomology_dims(g: BitMatrix) -> tuple[int, int]:
    """``(dim H^0(G; V), dim H^p(G; V))`` for p >= 1, with g acting on V."""
    n = g.rows
    if g.cols != n:
        raise NotAnInvolutionError("action matrix is not square")
    if g @ g != BitMatrix.identity(n):
        raise NotAnInvolutionError("matrix does not square to the identity")
    r = (BitMatrix.identity(n) + g).rank()
    return n - r, n - 2 * r


def spectral_pages(
    dc: DoubleComplex,
    kind: str,
    r_max: int | None = None,
    r_min: int = 2,
    method: str = "model",
) -> list[SpectralPage]:
    """Pages ``E_{r_min}..E_{r_max}``; entries exact for ``p + q < window``.

    ``method="direct"`` evaluates the subquotients on the full total complex
    instead of the small model; both give the same dimensions and ranks.
    """
    if r_max is None:
        r_max = dc.top_simplicial + 2
    fc = dc.model(kind) if method == "model" else dc.total(kind)
    pages = []
    for r in range(r_min, r_max + 1):
        key = ("page", kind, method, r)
        if key not in dc._models:
            dc._models[key] = _trim(fc.page(r, kind), kind, dc.top_simplicial)
        pages.append(dc._models[key])
    return pages


def _trim(page: SpectralPage, kind: str, top: int) -> SpectralPage:
    """Drop positions outside the first quadrant strip the double complex lives on."""
    if kind == "I":
        keep = lambda p, q: 0 <= p <= top and q >= 0  # noqa: E731
    else:
        keep = lambda p, q: p >= 0 and 0 <= q <= top  # noqa: E731
    return SpectralPage(
        page.kind,
        page.r,
        {k: v for k, v in page.entries.items() if keep(*k)},
        {k: v for k, v in page.differential_ranks.items() if keep(*k)},
        page.exact_degree,
        {k: v for k, v in page.spaces.items() if keep(*k)},
    )


def infinity_page(dc: DoubleComplex, kind: str) -> SpectralPage:
    r = dc.top_simplicial + 2
    return spectral_pages(dc, kind, r_max=r, r_min=r)[0]


# Krasnov criterion ------------------------------------------------------
@dataclass(frozen=True)
class KrasnovResult:
    degenerate: bool
    lhs: int
    rhs: int
    ii_differentials_vanish: bool

    @property
    def consistent(self) -> bool:
        return self.degenerate == self.ii_differentials_vanish


def induced_involution(ic: InvolutiveComplex, q: int) -> BitMatrix:
    """Action of g on ``H^q(K; F2)`` in the canonical basis."""
    return induced_map_mod2(ic.map, q)


def krasnov_test(ic: InvolutiveComplex, n_max: int | None = None) -> KrasnovResult:
    require_regular(ic)
    fixed, _ = fixed_part(ic)
    lhs = sum(mod2_cohomology(fixed).dims)
    rhs = sum(group_cohomology_dims(induced_involution(ic, q))[1] for q in range(ic.dim + 1))
    n_max = default_degree(ic) if n_max is None else n_max
    dc = _double_complex(ic, n_max)
    vanish = all(
        rank == 0
        for page in spectral_pages(dc, "II")
        for (p, q), rank in page.differential_ranks.items()
        if p + q <= n_max
    )
    return KrasnovResult(lhs == rhs, lhs, rhs, vanish)


# component map and obstruction ---------------------------------------
@dataclass(frozen=True)
class ComponentMapRank:
    image_dim: int
    s: int

    @property
    def surjective(self) -> bool:
        return self.image_dim == self.s


def _fixed_inclusion(ic: InvolutiveComplex) -> SimplicialMap:
    """Inclusion ``K^G -> K/G``."""
    fixed, vertices = fixed_part(ic)
    Q, proj = quotient_complex(ic)
    return SimplicialMap(fixed, Q, [proj.vertex_map[v] for v in vertices])


def restriction_rank(ic: InvolutiveComplex, n: int) -> tuple[int, int]:
    """``(dim H^n(K/G), rank of i*: H^n(K/G) -> H^n(K^G))``."""
    inc = _fixed_inclusion(ic)
    m = induced_map_mod2(inc, n)
    return m.cols, m.rank()


def component_map_rank(ic: InvolutiveComplex, n: int, n_max: int | None = None) -> ComponentMapRank:
    """Rank of the component evaluation map in degree ``n``.

    For ``n >= 1`` this is ``dim I_inf^{0,n}`` inside ``I_2^{0,n} = H^0(K^G)``;
    for ``n = 0`` it is the rank of ``i*: H^0(K/G) -> H^0(K^G)``.
    """
    require_regular(ic)
    fixed, _ = fixed_part(ic)
    if fixed.dim < 0:
        raise EmptyFixedSetError("the fixed subcomplex is empty; the component map needs a real point")
    s = fixed.connected_components()
    if n == 0:
        return ComponentMapRank(restriction_rank(ic, 0)[1], s)
    n_max = max(default_degree(ic), n) if n_max is None else max(n_max, n)
    dc = _double_complex(ic, n_max)
    return ComponentMapRank(infinity_page(dc, "I").dim(0, n), s)


@dataclass(frozen=True)
class ObstructionReport:
    s: int
    dim_ker_istar: int
    dim_im_d2_11: int
    dim_ker_d3_02: int
    surjective: bool
    image_dim: int
    checks: dict[str, bool]


def brauer_obstruction(ic: InvolutiveComplex) -> ObstructionReport:
    comp = component_map_rank(ic, 2)
    h3, r3 = restriction_rank(ic, 3)
    dc = _double_complex(ic, default_degree(ic))
    page2, page3 = spectral_pages(dc, "I", r_max=3, r_min=2)
    im_d2 = page2.rank(1, 1)
    ker_d3 = page3.dim(0, 2) - page3.rank(0, 2)
    checks = {
        "im_d2_11_within_ker_istar": im_d2 <= h3 - r3,
        "ker_d3_02_equals_image": ker_d3 == comp.image_dim,
        "surjective_iff_image_is_s": comp.surjective == (comp.image_dim == comp.s),
    }
    return ObstructionReport(comp.s, h3 - r3, im_d2, ker_d3, comp.surjective, comp.image_dim, checks)

"""Spectral sequences of filtered cochain complexes over F2.

A ``FilteredComplex`` is a cochain complex in degrees ``0..top`` whose
coordinates each carry an integer level; the decreasing filtration ``F^p`` is
spanned by coordinates of level at least ``p`` and the differential may only
raise levels.  The map out of the top degree is treated as zero, so every
quantity is exact in degrees below ``top``.

Pages are computed from approximate cycles

    Z_r^p = F^p ∩ D^{-1}(F^{p+r}),    B_r^p = D(Z_r^{p-r}),
    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_{r-1}^p).

``e1_model`` replaces a complex by a much smaller one with the same pages
from ``E_1`` on, via a levelwise contraction and the perturbation lemma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, InvariantViolation
from .gf2 import BitMatrix, Quotient, Subspace, kernel


@dataclass(frozen=True)
class SpectralPage:
    """Page ``E_r`` with entry dimensions and ranks of ``d_r`` out of each entry.

    ``spaces[(p, q)]`` holds the numerator and denominator subspaces of the
    entry, in the coordinates of the complex the page was computed on.
    """

    kind: str
    r: int
    entries: dict[tuple[int, int], int]
    differential_ranks: dict[tuple[int, int], int]
    exact_degree: int
    spaces: dict[tuple[int, int], tuple[Subspace, Subspace]] = field(repr=False, compare=False)

    def dim(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def rank(self, p: int, q: int) -> int:
        return self.differential_ranks.get((p, q), 0)

    def total_dim(self, n: int) -> int:
        return sum(d for (p, q), d in self.entries.items() if p + q == n)

    def nonzero_differentials(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in self.differential_ranks.items() if v}

    def entry(self, p: int, q: int) -> Quotient:
        num, den = self.spaces[(p, q)]
        return Quotient(num, den)


class FilteredComplex:
    def __init__(self, dims: Sequence[int], maps: Sequence[BitMatrix], levels: Sequence[np.ndarray]):
        self.top = len(dims) - 1
        self.dims = [int(d) for d in dims]
        if len(maps) != self.top or len(levels) != len(dims):
            raise DimensionMismatchError("need one map per degree below the top and levels for every degree")
        for n, m in enumerate(maps):
            if m.shape != (self.dims[n + 1], self.dims[n]):
                raise DimensionMismatchError(f"map out of degree {n} has shape {m.shape}")
        self.maps = list(maps)
        self.levels = [np.asarray(lv, dtype=np.int64) for lv in levels]
        for n, lv in enumerate(self.levels):
            if lv.shape != (self.dims[n],):
                raise DimensionMismatchError(f"levels for degree {n} have the wrong length")
        all_levels = np.concatenate(self.levels) if self.levels else np.zeros(0, dtype=np.int64)
        self.min_level = int(all_levels.min()) if all_levels.size else 0
        self.max_level = int(all_levels.max()) if all_levels.size else 0
        self._mapT: dict[int, BitMatrix] = {}
        self._z: dict[tuple[int, int, int], Subspace] = {}
        self._b: dict[tuple[int, int, int], Subspace] = {}

    # basic --------------------------------------------------------------
    def D(self, n: int) -> BitMatrix:
        if 0 <= n < self.top:
            return self.maps[n]
        return BitMatrix(self.dim(n + 1), self.dim(n))

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.top else 0

    def DT(self, n: int) -> BitMatrix:
        m = self._mapT.get(n)
        if m is None:
            m = self.D(n).T
            self._mapT[n] = m
        return m

    def check(self) -> None:
        for n in range(self.top - 1):
            if not (self.maps[n + 1] @ self.maps[n]).is_zero():
                raise InvariantViolation(f"D∘D != 0 out of degree {n}")
        for n, m in enumerate(self.maps):
            d = m.to_dense()
            rows, cols = np.nonzero(d)
            if (self.levels[n + 1][rows] < self.levels[n][cols]).any():
                raise InvariantViolation(f"differential lowers the filtration out of degree {n}")

    def cohomology_dims(self) -> list[int]:
        """Dimensions of ``H^n`` for ``n < top`` (the top degree is not exact)."""
        ranks = [self.D(n).rank() for n in range(self.top)]
        return [self.dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(self.top)]

    def _clip(self, p: int) -> int:
        return min(max(p, self.min_level), self.max_level + 1)

    def filtration(self, n: int, p: int) -> Subspace:
        idx = np.flatnonzero(self.levels[n] >= p) if 0 <= n <= self.top else np.zeros(0, dtype=np.int64)
        dim = self.dim(n)
        return Subspace(dim, BitMatrix.identity(dim).select_rows(idx), _canonical=True)

    # approximate cycles and boundaries --------------------------------
    def cycles(self, n: int, p: int, r: int) -> Subspace:
        """``Z_r^p`` in degree ``n``."""
        p, lim = self._clip(p), self._clip(p + r)
        key = (n, p, lim)
        z = self._z.get(key)
        if z is not None:
            return z
        dim = self.dim(n)
        cols = np.flatnonzero(self.levels[n] >= p) if 0 <= n <= self.top else np.zeros(0, dtype=np.int64)
        if n >= self.top or cols.size == 0:
            z = self.filtration(n, p) if 0 <= n <= self.top else Subspace(0)
        else:
            rows = np.flatnonzero(self.levels[n + 1] < lim)
            block = self.maps[n].select_rows(rows).select_cols(cols)
            k = kernel(block)
            z = Subspace(dim, k.basis.scatter_cols(cols, dim))
        self._z[key] = z
        return z

    def boundaries(self, n: int, p: int, r: int) -> Subspace:
        """``B_r^p = D(Z_r^{p-r})`` in degree ``n``."""
        key = (n, p, r)
        b = self._b.get(key)
        if b is None:
            if n <= 0 or n > self.top:
                b = Subspace(self.dim(n))
            else:
                src = self.cycles(n - 1, p - r, r)
                b = Subspace(self.dim(n), src.basis @ self.DT(n - 1))
            self._b[key] = b
        return b

    def _entry(self, n: int, p: int, r: int) -> tuple[Subspace, Subspace]:
        num = self.cycles(n, p, r)
        den = self.cycles(n, p + 1, r - 1) + self.boundaries(n, p, r - 1)
        return num, den

    def page(self, r: int, kind: str = "", check: bool = False) -> SpectralPage:
        """Page ``E_r`` (r >= 1) for all total degrees below ``top``."""
        if r < 1:
            raise ValueError("pages start at r = 1")
        exact = self.top - 1
        spaces: dict[tuple[int, int], tuple[Subspace, Subspace]] = {}
        entries: dict[tuple[int, int], int] = {}
        for n in range(exact + 1):
            for p in range(self.min_level, self.max_level + 1):
                num, den = self._entry(n, p, r)
                if check and not num.contains(den.basis):
                    raise InvariantViolation(f"denominator not inside numerator at {(p, n - p)}")
                entries[(p, n - p)] = num.dim - den.dim
                spaces[(p, n - p)] = (num, den)
        ranks: dict[tuple[int, int], int] = {}
        for n in range(exact):
            for p in range(self.min_level, self.max_level + 1):
                src_num, _ = spaces[(p, n - p)]
                tgt = (p + r, n + 1 - p - r)
                if tgt in spaces:
                    _, tgt_den = spaces[tgt]
                else:
                    tgt_den = self._entry(n + 1, p + r, r)[1]
                if src_num.dim == 0:
                    ranks[(p, n - p)] = 0
                    continue
                imgs = Subspace(self.dim(n + 1), src_num.basis @ self.DT(n))
                ranks[(p, n - p)] = (imgs + tgt_den).dim - tgt_den.dim
        return SpectralPage(kind, r, entries, ranks, exact, spaces)

    # E1 model -----------------------------------------------------------
    def e1_model(self) -> "FilteredComplex":
        return _E1Model(self).build()


class _Contraction:
    """Contraction of one level ``V^{n-1} -> V^n -> V^{n+1}`` onto its cohomology.

    ``V^n = B ⊕ H ⊕ L`` with ``L`` spanned by unit vectors at the non-pivot
    columns of the cycle space; ``h`` inverts ``d`` from ``L^{n-1}`` onto ``B``.
    """

    __slots__ = ("dim", "zpiv", "zbasis", "free", "nb", "reps", "mpiv", "tmat")

    def __init__(self, d_in: BitMatrix, d_out: BitMatrix, free_in: np.ndarray):
        self.dim = d_out.cols
        z = kernel(d_out)
        self.zpiv = np.asarray(z.pivots, dtype=np.int64)
        self.zbasis = z.basis
        self.free = np.setdiff1d(np.arange(self.dim), self.zpiv)
        bvecs = d_in.select_cols(free_in).T  # images of L^{n-1}
        self.nb = bvecs.rows
        self.reps = Quotient(z, Subspace(self.dim, bvecs)).reps
        m = BitMatrix.vstack([bvecs, self.reps], cols=self.dim)
        k = m.rows
        if k:
            aug, piv = BitMatrix.hstack([m, BitMatrix.identity(k)]).rref(pivot_limit=self.dim)
            if len(piv) != k:
                raise InvariantViolation("boundary and cohomology vectors are dependent")
            self.mpiv = np.asarray(piv, dtype=np.int64)
            self.tmat = aug.select_cols(np.arange(self.dim, self.dim + k))
        else:
            self.mpiv = np.zeros(0, dtype=np.int64)
            self.tmat = BitMatrix(0, 0)

    def split(self, x: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
        """Return ``(pi x, coefficients of h x on L^{n-1})``."""
        k = self.nb + self.reps.rows
        if k == 0 or x.rows == 0:
            return BitMatrix(x.rows, self.reps.rows), BitMatrix(x.rows, self.nb)
        zpart = x.select_cols(self.zpiv) @ self.zbasis if self.zpiv.size else BitMatrix(x.rows, self.dim)
        coords = zpart.select_cols(self.mpiv) @ self.tmat
        dense = coords.to_dense()
        return BitMatrix.from_dense(dense[:, self.nb:]), BitMatrix.from_dense(dense[:, : self.nb])


class _E1Model:
    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self.memo: dict[tuple, _Contraction] = {}

    def _block_map(self, n: int, rows: np.ndarray, cols: np.ndarray) -> BitMatrix:
        if n < 0 or n >= self.fc.top:
            return BitMatrix(len(rows), len(cols))
        return self.fc.maps[n].select_rows(rows).select_cols(cols)

    def build(self) -> FilteredComplex:
        fc = self.fc
        levels = range(fc.min_level, fc.max_level + 1)
        idx = {(n, p): np.flatnonzero(fc.levels[n] == p) for n in range(fc.top + 1) for p in levels}
        empty = np.zeros(0, dtype=np.int64)
        con: dict[tuple[int, int], _Contraction] = {}
        for p in levels:
            free_prev = empty
            for n in range(fc.top + 1):
                cur = idx[(n, p)]
                prev = idx.get((n - 1, p), empty)
                nxt = idx.get((n + 1, p), empty)
                d_in = self._block_map(n - 1, cur, prev)
                d_out = self._block_map(n, nxt, cur)
                key = (d_in.key(), d_out.key(), free_prev.tobytes())
                c = self.memo.get(key)
                if c is None:
                    c = _Contraction(d_in, d_out, free_prev)
                    self.memo[key] = c
                con[(n, p)] = c
                free_prev = c.free
        # model coordinates: blocks in level order within each degree
        offsets: dict[tuple[int, int], int] = {}
        model_dims, model_levels = [], []
        for n in range(fc.top + 1):
            off, lv = 0, []
            for p in levels:
                offsets[(n, p)] = off
                k = con[(n, p)].reps.rows
                off += k
                lv.extend([p] * k)
            model_dims.append(off)
            model_levels.append(np.asarray(lv, dtype=np.int64))

        def iota(n: int) -> BitMatrix:
            dense = np.zeros((model_dims[n], fc.dim(n)), dtype=np.uint8)
            for p in levels:
                c = con[(n, p)]
                if c.reps.rows:
                    o = offsets[(n, p)]
                    dense[np.ix_(np.arange(o, o + c.reps.rows), idx[(n, p)])] = c.reps.to_dense()
            return BitMatrix.from_dense(dense)

        def split(n: int, x: BitMatrix) -> tuple[BitMatrix, BitMatrix]:
            """``(pi x, h x)`` for rows ``x`` in degree ``n``."""
            pi = np.zeros((x.rows, model_dims[n]), dtype=np.uint8)
            h = np.zeros((x.rows, fc.dim(n - 1)), dtype=np.uint8)
            for p in levels:
                c = con[(n, p)]
                cols = idx[(n, p)]
                if cols.size == 0:
                    continue
                xp = x.select_cols(cols)
                if xp.is_zero():
                    continue
                pi_p, h_p = c.split(xp)
                o = offsets[(n, p)]
                pi[:, o:o + pi_p.cols] = pi_p.to_dense()
                if h_p.cols:
                    prev = con[(n - 1, p)]
                    h[:, idx[(n - 1, p)][prev.free]] = h_p.to_dense()
            return BitMatrix.from_dense(pi), BitMatrix.from_dense(h)

        maps = []
        for n in range(fc.top):
            d = fc.maps[n].to_dense()
            mask = fc.levels[n + 1][:, None] != fc.levels[n][None, :]
            perturbT = BitMatrix.from_dense((d & mask).T)  # delta' transposed
            y = iota(n)
            acc = BitMatrix(model_dims[n], model_dims[n + 1])
            steps = 0
            while not y.is_zero():
                w = y @ perturbT
                pi_w, y = split(n + 1, w)
                acc = acc + pi_w
                steps += 1
                if steps > fc.max_level - fc.min_level + 2:
                    raise InvariantViolation("perturbation series did not terminate")
            maps.append(acc.T)
        return FilteredComplex(model_dims, maps, model_levels)

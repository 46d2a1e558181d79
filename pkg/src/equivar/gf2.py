"""Exact linear algebra over GF(2) on bit-packed matrices.

Rows are stored as little-endian arrays of 64-bit words: bit ``j`` of row ``i``
lives in ``words[i, j // 64]`` at position ``j % 64``.  Bits past ``cols`` in
the final word are always zero.  Matrices act on column vectors; collections
of vectors are passed around as the *rows* of a ``BitMatrix``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ContainmentError, DimensionMismatchError

WORD_BITS = 64


def nwords(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def _pack(dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8) & 1
    m, n = dense.shape
    w = nwords(n)
    if m == 0 or w == 0:
        return np.zeros((m, w), dtype=np.uint64)
    padded = np.zeros((m, w * WORD_BITS), dtype=np.uint8)
    padded[:, :n] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    m = words.shape[0]
    if m == 0 or cols == 0:
        return np.zeros((m, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


def _first_set_bit(acc: np.ndarray, start: int) -> int:
    """Index of the lowest set bit at position >= start, or -1."""
    w0 = start >> 6
    for wi in range(w0, acc.shape[0]):
        x = int(acc[wi])
        if wi == w0:
            x &= ~((1 << (start & 63)) - 1)
        if x:
            return wi * WORD_BITS + (x & -x).bit_length() - 1
    return -1


def _rref_inplace(words: np.ndarray, pivot_limit: int) -> list[int]:
    """Reduce ``words`` to reduced row echelon form in place.

    Pivots are only taken in columns ``< pivot_limit``; columns beyond act as
    passive bookkeeping (tags) that ride along with the row operations.
    Returns the pivot columns; row ``i`` holds pivot ``pivots[i]``.
    """
    m = words.shape[0]
    pivots: list[int] = []
    r = 0
    for wi in range(nwords(pivot_limit)):
        if r == m:
            break
        # a column that is zero below row r stays zero, so one OR per word
        # finds every candidate pivot column in it
        acc = int(np.bitwise_or.reduce(words[r:, wi]))
        if wi == pivot_limit >> 6:
            acc &= (1 << (pivot_limit & 63)) - 1
        while acc and r < m:
            low = acc & -acc
            acc ^= low
            bit = np.uint64(low)
            hits = (words[:, wi] & bit).nonzero()[0]
            k = int(hits.searchsorted(r))
            if k == hits.size:
                continue
            p = int(hits[k])
            if p != r:
                words[[r, p]] = words[[p, r]]
                hits[k] = r
            targets = hits[hits != r]
            if targets.size:
                words[targets, wi:] ^= words[r, wi:]
            pivots.append(wi * WORD_BITS + low.bit_length() - 1)
            r += 1
    return pivots


class BitMatrix:
    """Dense matrix over GF(2) with bit-packed rows."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        rows, cols = int(rows), int(cols)
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"negative shape {(rows, cols)}")
        if words is None:
            words = np.zeros((rows, nwords(cols)), dtype=np.uint64)
        elif words.shape != (rows, nwords(cols)) or words.dtype != np.uint64:
            raise DimensionMismatchError(
                f"word array {words.shape}/{words.dtype} does not fit {(rows, cols)}"
            )
        self.rows = rows
        self.cols = cols
        self.words = words

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        idx = np.arange(n)
        return cls.from_coo(n, n, idx, idx)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError("expected a 2-d array")
        arr = (arr & 1).astype(np.uint8)
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_coo(cls, rows: int, cols: int, r_idx, c_idx) -> "BitMatrix":
        """Sum (mod 2) of unit entries at the given coordinates."""
        m = cls(rows, cols)
        r_idx = np.asarray(r_idx, dtype=np.int64)
        c_idx = np.asarray(c_idx, dtype=np.int64)
        if r_idx.size:
            if r_idx.min() < 0 or r_idx.max() >= rows or c_idx.min() < 0 or c_idx.max() >= cols:
                raise DimensionMismatchError("coordinate out of range")
            bits = np.left_shift(np.uint64(1), (c_idx & 63).astype(np.uint64))
            np.bitwise_xor.at(m.words, (r_idx, c_idx >> 6), bits)
        return m

    @staticmethod
    def vstack(mats: Sequence["BitMatrix"], cols: int | None = None) -> "BitMatrix":
        if not mats:
            return BitMatrix(0, cols or 0)
        c = mats[0].cols
        if any(x.cols != c for x in mats):
            raise DimensionMismatchError("vstack with differing column counts")
        words = np.concatenate([x.words for x in mats], axis=0)
        return BitMatrix(words.shape[0], c, words)

    @staticmethod
    def hstack(mats: Sequence["BitMatrix"]) -> "BitMatrix":
        r = mats[0].rows
        if any(x.rows != r for x in mats):
            raise DimensionMismatchError("hstack with differing row counts")
        dense = np.concatenate([x.to_dense() for x in mats], axis=1)
        return BitMatrix(r, dense.shape[1], _pack(dense))

    @staticmethod
    def block(blocks: Iterable[tuple[int, int, "BitMatrix"]], rows: int, cols: int) -> "BitMatrix":
        """Assemble from ``(row_offset, col_offset, block)`` triples; overlaps add."""
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for r0, c0, b in blocks:
            if b.rows and b.cols:
                dense[r0:r0 + b.rows, c0:c0 + b.cols] ^= b.to_dense()
        return BitMatrix(rows, cols, _pack(dense))

    # conversion ---------------------------------------------------------
    def to_dense(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "BitMatrix":
        dense = self.to_dense().T
        return BitMatrix(self.cols, self.rows, _pack(dense))

    def key(self) -> tuple:
        return (self.rows, self.cols, self.words.tobytes())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int((int(self.words[i, j >> 6]) >> (j & 63)) & 1)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    __hash__ = None  # mutable storage

    def nnz(self) -> int:
        return int(np.unpackbits(self.words.view(np.uint8)).sum()) if self.words.size else 0

    def is_zero(self) -> bool:
        return not self.words.any()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} + {other.shape}")
        return BitMatrix(self.rows, self.cols, self.words ^ other.words)

    __xor__ = __add__
    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.shape} @ {other.shape}")
        w = nwords(other.cols)
        out = np.zeros((self.rows, w), dtype=np.uint64)
        if self.rows and self.cols and other.cols:
            # eight columns of self at a time: tabulate all 256 sums of the
            # matching rows of other, then gather by byte value
            abytes = np.ascontiguousarray(self.words.astype("<u8")).view(np.uint8)
            table = np.zeros((256, w), dtype=np.uint64)
            for b in range((self.cols + 7) // 8):
                col = abytes[:, b]
                if not col.any():
                    continue
                for i in range(8):
                    j = 8 * b + i
                    if j < self.cols:
                        table[1 << i: 2 << i] = table[: 1 << i] ^ other.words[j]
                    else:
                        table[1 << i: 2 << i] = table[: 1 << i]
                out ^= table[col]
        return BitMatrix(self.rows, other.cols, out)

    def select_rows(self, idx) -> "BitMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        return BitMatrix(len(idx), self.cols, self.words[idx].copy())

    def select_cols(self, idx) -> "BitMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        return BitMatrix(self.rows, len(idx), _pack(self.to_dense()[:, idx]))

    def scatter_cols(self, idx, cols: int) -> "BitMatrix":
        """Place column ``k`` of ``self`` at column ``idx[k]`` of a wider matrix."""
        dense = np.zeros((self.rows, cols), dtype=np.uint8)
        dense[:, np.asarray(idx, dtype=np.int64)] = self.to_dense()
        return BitMatrix(self.rows, cols, _pack(dense))

    # elimination --------------------------------------------------------
    def rref(self, pivot_limit: int | None = None) -> tuple["BitMatrix", tuple[int, ...]]:
        words = self.words.copy()
        pivots = _rref_inplace(words, self.cols if pivot_limit is None else pivot_limit)
        return BitMatrix(self.rows, self.cols, words), tuple(pivots)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        # eliminate along the shorter side
        m = self if self.rows <= self.cols else self.T
        return len(_rref_inplace(m.words.copy(), m.cols))


def rank(m: BitMatrix) -> int:
    """Rank over GF(2); the input is not modified."""
    return m.rank()


class Subspace:
    """Subspace of GF(2)^n held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: BitMatrix | None = None, *, _canonical: bool = False):
        self.ambient_dim = int(ambient_dim)
        if vectors is None:
            vectors = BitMatrix(0, self.ambient_dim)
        if vectors.cols != self.ambient_dim:
            raise DimensionMismatchError(
                f"vectors of length {vectors.cols} in ambient dimension {ambient_dim}"
            )
        if _canonical:
            self.basis = vectors
            self.pivots = tuple(_pivots_of(vectors))
        else:
            reduced, piv = vectors.rref()
            self.basis = reduced.select_rows(np.arange(len(piv)))
            self.pivots = piv

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n), _canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    __hash__ = None

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ"
            )

    def reduce(self, vectors: BitMatrix) -> BitMatrix:
        """Canonical residues of ``vectors`` modulo this subspace."""
        if vectors.cols != self.ambient_dim:
            raise DimensionMismatchError("vector length does not match ambient dimension")
        if self.dim == 0 or vectors.rows == 0:
            return vectors.copy()
        coeffs = vectors.select_cols(self.pivots)
        return vectors + coeffs @ self.basis

    def contains(self, vectors: BitMatrix) -> bool:
        return self.reduce(vectors).is_zero()

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, BitMatrix.vstack([self.basis, other.basis]))

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        n = self.ambient_dim
        if self.dim == 0 or other.dim == 0:
            return Subspace(n)
        # Zassenhaus: rows [a | a] and [b | 0]
        top = BitMatrix.hstack([self.basis, self.basis])
        bottom = BitMatrix.hstack([other.basis, BitMatrix(other.dim, n)])
        reduced, piv = BitMatrix.vstack([top, bottom]).rref(pivot_limit=n)
        rest = reduced.select_rows(np.arange(len(piv), reduced.rows))
        return Subspace(n, rest.select_cols(np.arange(n, 2 * n)))

    def image_under(self, m: BitMatrix) -> "Subspace":
        if m.cols != self.ambient_dim:
            raise DimensionMismatchError(f"map {m.shape} on ambient {self.ambient_dim}")
        return Subspace(m.rows, self.basis @ m.T)

    def preimage_under(self, m: BitMatrix) -> "Subspace":
        """``{x : m x in self}``."""
        if m.rows != self.ambient_dim:
            raise DimensionMismatchError(f"map {m.shape} into ambient {self.ambient_dim}")
        residues = self.reduce(m.T)  # row j: m e_j modulo self
        return left_kernel(residues)


def _pivots_of(rref_rows: BitMatrix) -> list[int]:
    out = []
    for i in range(rref_rows.rows):
        c = _first_set_bit(rref_rows.words[i], 0)
        out.append(c)
    return out


def left_kernel(rows: BitMatrix) -> Subspace:
    """``{y : sum_j y_j rows[j] = 0}`` as a subspace of GF(2)^rows.rows."""
    k = rows.rows
    if k == 0:
        return Subspace(0)
    aug = BitMatrix.hstack([rows, BitMatrix.identity(k)])
    reduced, piv = aug.rref(pivot_limit=rows.cols)
    rest = reduced.select_rows(np.arange(len(piv), k))
    return Subspace(k, rest.select_cols(np.arange(rows.cols, rows.cols + k)))


def kernel(m: BitMatrix) -> Subspace:
    """``{x : m x = 0}`` in GF(2)^cols."""
    n = m.cols
    if n == 0:
        return Subspace(0)
    reduced, piv = m.rref()
    free = np.setdiff1d(np.arange(n), np.asarray(piv, dtype=np.int64))
    dense = np.zeros((len(free), n), dtype=np.uint8)
    dense[np.arange(len(free)), free] = 1
    if piv:
        r = reduced.select_rows(np.arange(len(piv))).to_dense()
        dense[:, list(piv)] = r[:, free].T
    return Subspace(n, BitMatrix.from_dense(dense))


def image(m: BitMatrix) -> Subspace:
    """Column space ``{m x}`` in GF(2)^rows."""
    return Subspace(m.rows, m.T)


def decompose(m: BitMatrix) -> tuple[Subspace, Subspace]:
    """Kernel (in the domain) and image (in the codomain) of ``m``."""
    return kernel(m), image(m)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    a._check(b)
    if not a.contains(b.basis):
        raise ContainmentError("quotient_dim requires b to be contained in a")
    return a.dim - b.dim


def subspace_arith(a: Subspace, b: Subspace | None, op: str, m: BitMatrix | None = None):
    """Dispatch for ``sum``, ``intersect``, ``preimage`` (of ``a`` under ``m``) and ``quotient_dim``."""
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "preimage":
        return a.preimage_under(m)
    if op == "quotient_dim":
        return quotient_dim(a, b)
    raise ValueError(f"unknown subspace operation {op!r}")


class Quotient:
    """Subquotient ``num / den`` with fixed representatives and coordinates.

    Representatives are the reduced echelon basis of ``num`` modulo ``den``,
    so they are canonical given the pair of subspaces.
    """

    __slots__ = ("num", "den", "reps", "_rep_pivots")

    def __init__(self, num: Subspace, den: Subspace):
        num._check(den)
        if not num.contains(den.basis):
            raise ContainmentError("denominator is not contained in numerator")
        self.num = num
        self.den = den
        residues = den.reduce(num.basis)
        reduced, piv = residues.rref()
        self.reps = reduced.select_rows(np.arange(len(piv)))
        self._rep_pivots = piv

    @property
    def dim(self) -> int:
        return self.reps.rows

    @property
    def ambient_dim(self) -> int:
        return self.num.ambient_dim

    def coords(self, vectors: BitMatrix) -> BitMatrix:
        """Coordinates (one row per input vector) of classes of vectors in ``num``."""
        red = self.den.reduce(vectors)
        if self.dim == 0:
            if not red.is_zero():
                raise ContainmentError("vector outside the numerator")
            return BitMatrix(vectors.rows, 0)
        c = red.select_cols(self._rep_pivots)
        if not (red + c @ self.reps).is_zero():
            raise ContainmentError("vector outside the numerator")
        return c

    def induced(self, m: BitMatrix, target: "Quotient") -> BitMatrix:
        """Matrix (target.dim x self.dim) of the map induced by ``m`` on classes."""
        images = self.reps @ m.T
        return target.coords(images).T if self.dim else BitMatrix(target.dim, 0)

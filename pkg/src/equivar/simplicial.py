"""Finite simplicial complexes with involution.

Simplices are strictly increasing vertex tuples, ordered by dimension and then
lexicographically.  That order is fixed at construction and every matrix in the
package refers to it, so results are reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._intlinalg import integer_rank
from .chains import GradedComplex
from .errors import (
    DimensionMismatchError,
    InvalidComplexError,
    InvalidPermutationError,
    InvariantViolation,
    NonRegularActionError,
    NonSimplicialMapError,
    NotAnInvolutionError,
    SimplexCapError,
)
from .gf2 import BitMatrix

Simplex = tuple[int, ...]

DEFAULT_SIMPLEX_CAP = 200_000


def simplex_cap() -> int:
    raw = os.environ.get("EQUIVAR_SIMPLEX_CAP")
    if raw is None:
        return DEFAULT_SIMPLEX_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise SimplexCapError(f"EQUIVAR_SIMPLEX_CAP={raw!r} is not an integer") from exc


class SimplicialComplex:
    """Face-closed family of simplices on vertices ``0..vertex_count-1``."""

    def __init__(self, vertex_count: int, simplices: Iterable[Sequence[int]]):
        self.vertex_count = int(vertex_count)
        by_dim: dict[int, set[Simplex]] = {}
        for s in simplices:
            t = tuple(int(v) for v in s)
            if not t:
                continue
            if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
                raise InvalidComplexError(f"simplex {t} is not strictly increasing")
            if t[0] < 0 or t[-1] >= self.vertex_count:
                raise InvalidComplexError(f"simplex {t} has a vertex outside 0..{self.vertex_count - 1}")
            by_dim.setdefault(len(t) - 1, set()).add(t)
        top = max(by_dim, default=-1)
        self.simplices: tuple[tuple[Simplex, ...], ...] = tuple(
            tuple(sorted(by_dim.get(q, ()))) for q in range(top + 1)
        )
        self._index = [{s: i for i, s in enumerate(level)} for level in self.simplices]
        for q in range(1, top + 1):
            lower = self._index[q - 1]
            for s in self.simplices[q]:
                for face in _faces(s):
                    if face not in lower:
                        raise InvalidComplexError(f"face {face} of {s} is missing")
        self._boundary: dict[int, BitMatrix] = {}

    @classmethod
    def from_maximal(
        cls,
        vertex_count: int,
        maximal: Iterable[Sequence[int]],
        cap: int | None = None,
    ) -> "SimplicialComplex":
        """Face closure of ``maximal``; every vertex index is included as a 0-simplex."""
        cap = simplex_cap() if cap is None else cap
        seen: set[Simplex] = {(v,) for v in range(int(vertex_count))}
        for s in maximal:
            t = tuple(sorted(int(v) for v in s))
            if len(set(t)) != len(t):
                raise InvalidComplexError(f"simplex {list(s)} repeats a vertex")
            if t and (t[0] < 0 or t[-1] >= vertex_count):
                raise InvalidComplexError(f"simplex {list(s)} has a vertex outside 0..{vertex_count - 1}")
            if len(t) > 24:
                raise SimplexCapError(f"simplex of dimension {len(t) - 1} has too many faces")
            if t in seen:
                continue
            for k in range(len(t), 0, -1):
                for face in itertools.combinations(t, k):
                    seen.add(face)
                if len(seen) > cap:
                    raise SimplexCapError(f"face closure exceeds the simplex cap {cap}")
        return cls(vertex_count, seen)

    # basic data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, q: int) -> int:
        return len(self.simplices[q]) if 0 <= q < len(self.simplices) else 0

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    @property
    def size(self) -> int:
        return sum(self.f_vector)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.f_vector))

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def has(self, s: Simplex) -> bool:
        q = len(s) - 1
        return 0 <= q < len(self._index) and s in self._index[q]

    def flat_simplices(self) -> list[Simplex]:
        return [s for level in self.simplices for s in level]

    def maximal_simplices(self) -> list[Simplex]:
        covered: set[Simplex] = set()
        for level in self.simplices[1:]:
            for s in level:
                covered.update(_faces(s))
        return [s for s in self.flat_simplices() if s not in covered]

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={self.vertex_count}, f={list(self.f_vector)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.simplices == other.simplices

    __hash__ = None

    def connected_components(self) -> int:
        parent = list(range(self.vertex_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in (self.simplices[1] if self.dim >= 1 else ()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        used = {v for (v,) in self.simplices[0]} if self.dim >= 0 else set()
        return len({find(v) for v in used})

    # chain level --------------------------------------------------------
    def boundary(self, q: int) -> BitMatrix:
        """Mod 2 boundary ``C_q -> C_{q-1}``."""
        m = self._boundary.get(q)
        if m is None:
            rows, cols = [], []
            if 1 <= q <= self.dim:
                lower = self._index[q - 1]
                for j, s in enumerate(self.simplices[q]):
                    for face in _faces(s):
                        rows.append(lower[face])
                        cols.append(j)
            m = BitMatrix.from_coo(self.count(q - 1), self.count(q), rows, cols)
            self._boundary[q] = m
        return m

    def coboundary(self, q: int) -> BitMatrix:
        """Mod 2 coboundary ``C^q -> C^{q+1}``."""
        return self.boundary(q + 1).T

    def signed_boundary(self, q: int) -> list[dict[int, int]]:
        """Integer boundary ``C_q -> C_{q-1}`` as one sparse column per q-simplex."""
        if q < 1 or q > self.dim:
            return [{} for _ in range(self.count(q))]
        lower = self._index[q - 1]
        out = []
        for s in self.simplices[q]:
            col = {}
            for i in range(len(s)):
                col[lower[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
            out.append(col)
        return out

    @cached_property
    def chain_complex(self) -> GradedComplex:
        return GradedComplex(
            dims={q: self.count(q) for q in range(self.dim + 1)},
            maps={q: self.boundary(q) for q in range(1, self.dim + 1)},
            step=-1,
        )

    @cached_property
    def cochain_complex(self) -> GradedComplex:
        return GradedComplex(
            dims={q: self.count(q) for q in range(self.dim + 1)},
            maps={q: self.coboundary(q) for q in range(self.dim)},
            step=1,
        )


def _faces(s: Simplex) -> Iterable[Simplex]:
    if len(s) <= 1:
        return ()
    return (s[:i] + s[i + 1:] for i in range(len(s)))


class SimplicialMap:
    """Vertex map between complexes that sends simplices to simplices.

    A simplex whose image has fewer vertices is collapsed; it contributes
    zero to the chain map.
    """

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map: Sequence[int]):
        if len(vertex_map) != source.vertex_count:
            raise DimensionMismatchError(
                f"vertex map of length {len(vertex_map)} on {source.vertex_count} vertices"
            )
        self.source = source
        self.target = target
        self.vertex_map = tuple(int(v) for v in vertex_map)
        self._images: dict[int, np.ndarray] = {}
        for q in range(source.dim + 1):
            self.image_indices(q)

    def image(self, s: Simplex) -> Simplex:
        return tuple(sorted(set(self.vertex_map[v] for v in s)))

    def image_indices(self, q: int) -> np.ndarray:
        """Index of the image of each q-simplex, or -1 when it collapses."""
        out = self._images.get(q)
        if out is None:
            out = np.full(self.source.count(q), -1, dtype=np.int64)
            for i, s in enumerate(self.source.simplices[q] if q <= self.source.dim else ()):
                t = self.image(s)
                if len(t) == q + 1:
                    if not self.target.has(t):
                        raise NonSimplicialMapError(f"image {t} of simplex {s} is not a simplex")
                    out[i] = self.target.index(t)
                elif not self.target.has(t):
                    raise NonSimplicialMapError(f"image {t} of simplex {s} is not a simplex")
            self._images[q] = out
        return out

    def chain_matrix(self, q: int) -> BitMatrix:
        """Mod 2 chain map ``C_q(source) -> C_q(target)``."""
        img = self.image_indices(q) if 0 <= q <= self.source.dim else np.zeros(0, dtype=np.int64)
        keep = np.flatnonzero(img >= 0)
        return BitMatrix.from_coo(self.target.count(q), self.source.count(q), img[keep], keep)

    def cochain_matrix(self, q: int) -> BitMatrix:
        """Pullback ``C^q(target) -> C^q(source)``."""
        return self.chain_matrix(q).T


@dataclass(frozen=True, eq=False)
class ComplexPair:
    """A complex together with a subcomplex given by an injective vertex map."""

    total: SimplicialComplex
    sub: SimplicialComplex
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        inc = SimplicialMap(self.sub, self.total, self.vertex_map)
        for q in range(self.sub.dim + 1):
            idx = inc.image_indices(q)
            if (idx < 0).any() or len(set(idx.tolist())) != len(idx):
                raise InvalidComplexError("subcomplex map is not an embedding")
        object.__setattr__(self, "inclusion", inc)

    def relative_indices(self, q: int) -> np.ndarray:
        """Indices of q-simplices of ``total`` that are not in ``sub``."""
        mask = np.ones(self.total.count(q), dtype=bool)
        if q <= self.sub.dim:
            mask[self.inclusion.image_indices(q)] = False
        return np.flatnonzero(mask)

    @cached_property
    def relative_chain_complex(self) -> GradedComplex:
        rel = {q: self.relative_indices(q) for q in range(self.total.dim + 1)}
        maps = {
            q: self.total.boundary(q).select_rows(rel[q - 1]).select_cols(rel[q])
            for q in range(1, self.total.dim + 1)
        }
        return GradedComplex({q: len(r) for q, r in rel.items()}, maps, step=-1)

    @cached_property
    def relative_cochain_complex(self) -> GradedComplex:
        ch = self.relative_chain_complex
        return GradedComplex(dict(ch.dims), {q - 1: m.T for q, m in ch.maps.items()}, step=1)


class InvolutiveComplex:
    """Simplicial complex with a vertex involution that is a simplicial map."""

    def __init__(self, complex: SimplicialComplex, involution: Sequence[int] | None = None):
        n = complex.vertex_count
        if involution is None:
            involution = range(n)
        g = tuple(int(v) for v in involution)
        if len(g) != n:
            raise InvalidPermutationError(f"involution has length {len(g)}, expected {n}")
        if sorted(g) != list(range(n)):
            raise InvalidPermutationError("involution is not a permutation of the vertices")
        if any(g[g[v]] != v for v in range(n)):
            raise NotAnInvolutionError("g∘g is not the identity")
        self.complex = complex
        self.involution = g
        self.map = SimplicialMap(complex, complex, g)  # validates simpliciality

    @property
    def dim(self) -> int:
        return self.complex.dim

    def __repr__(self) -> str:
        return f"InvolutiveComplex({self.complex!r}, fixed_vertices={len(self.fixed_vertices)})"

    @property
    def is_trivial(self) -> bool:
        return all(self.involution[v] == v for v in range(self.complex.vertex_count))

    @cached_property
    def fixed_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, w in enumerate(self.involution) if v == w)

    def simplex_permutation(self, q: int) -> np.ndarray:
        return self.map.image_indices(q)

    def g_matrix(self, q: int) -> BitMatrix:
        """Action of g on q-chains (and, being symmetric, on q-cochains)."""
        return self.map.chain_matrix(q)

    def orientation_sign(self, s: Simplex) -> int:
        """Sign ``e`` with ``g[s] = e [g s]`` on oriented chains."""
        img = [self.involution[v] for v in s]
        inversions = sum(1 for i in range(len(img)) for j in range(i + 1, len(img)) if img[i] > img[j])
        return -1 if inversions % 2 else 1


# regularity ---------------------------------------------------------------
def regularity_defects(ic: InvolutiveComplex) -> list[str]:
    """Reasons why the quotient or fixed part would fail to be simplicial."""
    g = ic.involution
    K = ic.complex
    problems = []
    if K.dim >= 1:
        for a, b in K.simplices[1]:
            if g[a] == b:
                problems.append(f"edge {(a, b)} joins a vertex to its image")
                break
    orbit = [min(v, g[v]) for v in range(K.vertex_count)]
    for q in range(K.dim + 1):
        perm = ic.simplex_permutation(q)
        groups: dict[tuple, set[int]] = {}
        for i, s in enumerate(K.simplices[q]):
            groups.setdefault(tuple(sorted({orbit[v] for v in s})), set()).add(i)
        for key, members in groups.items():
            first = min(members)
            if members != {first, int(perm[first])}:
                problems.append(f"{len(members)} {q}-simplices share the orbit set {key}")
                break
    return problems


def is_regular(ic: InvolutiveComplex) -> bool:
    return not regularity_defects(ic)


def require_regular(ic: InvolutiveComplex) -> None:
    problems = regularity_defects(ic)
    if problems:
        raise NonRegularActionError("; ".join(problems) + " (run regularize first)")


def barycentric_subdivision(ic: InvolutiveComplex) -> InvolutiveComplex:
    """First barycentric subdivision with the induced involution.

    The barycenter of the simplex at flat position ``k`` (dimension, then
    lexicographic) becomes vertex ``k``; g sends it to the barycenter of the
    image simplex.
    """
    K = ic.complex
    flat = K.flat_simplices()
    flat_index = {s: k for k, s in enumerate(flat)}
    maximal = []
    for top in K.maximal_simplices():
        for order in itertools.permutations(top):
            chain = [flat_index[tuple(sorted(order[: k + 1]))] for k in range(len(order))]
            maximal.append(chain)
    sd = SimplicialComplex.from_maximal(len(flat), maximal)
    g = ic.involution
    new_g = [flat_index[tuple(sorted(g[v] for v in s))] for s in flat]
    return InvolutiveComplex(sd, new_g)


def regularize(ic: InvolutiveComplex) -> InvolutiveComplex:
    """Return ``ic`` itself if regular, else its first or second subdivision."""
    current = ic
    for _ in range(3):
        if is_regular(current):
            return current
        current = barycentric_subdivision(current)
    raise InvariantViolation("two barycentric subdivisions did not regularize the action")


def subdivision_depth(ic: InvolutiveComplex) -> int:
    current, depth = ic, 0
    while not is_regular(current):
        current, depth = barycentric_subdivision(current), depth + 1
    return depth


# fixed part and quotient --------------------------------------------------
def fixed_part(ic: InvolutiveComplex) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """Fixed subcomplex with its vertices relabelled ``0..k-1``, and the labels."""
    require_regular(ic)
    fixed = ic.fixed_vertices
    relabel = {v: k for k, v in enumerate(fixed)}
    simplices = [
        tuple(relabel[v] for v in s)
        for s in ic.complex.flat_simplices()
        if all(v in relabel for v in s)
    ]
    return SimplicialComplex(len(fixed), simplices), fixed


def fixed_subcomplex(ic: InvolutiveComplex) -> SimplicialComplex:
    """Simplices fixed pointwise by g (vertices relabelled in increasing order)."""
    return fixed_part(ic)[0]


def fixed_pair(ic: InvolutiveComplex) -> ComplexPair:
    sub, vertices = fixed_part(ic)
    return ComplexPair(ic.complex, sub, vertices)


def quotient_complex(ic: InvolutiveComplex) -> tuple[SimplicialComplex, SimplicialMap]:
    """Orbit complex ``K/G`` and the projection ``K -> K/G``.

    Orbit ``k`` is the k-th orbit in order of its least vertex.
    """
    require_regular(ic)
    g = ic.involution
    reps = sorted({min(v, g[v]) for v in range(ic.complex.vertex_count)})
    orbit_id = {r: k for k, r in enumerate(reps)}
    vmap = [orbit_id[min(v, g[v])] for v in range(ic.complex.vertex_count)]
    simplices = {tuple(sorted(vmap[v] for v in s)) for s in ic.complex.flat_simplices()}
    Q = SimplicialComplex(len(reps), simplices)
    return Q, SimplicialMap(ic.complex, Q, vmap)


def quotient_pair(ic: InvolutiveComplex) -> ComplexPair:
    """The pair ``(K/G, K^G)`` with the fixed part embedded by the projection."""
    Q, proj = quotient_complex(ic)
    sub, vertices = fixed_part(ic)
    return ComplexPair(Q, sub, tuple(proj.vertex_map[v] for v in vertices))


# products -----------------------------------------------------------------
def product_complex(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Staircase triangulation of ``|a| x |b|``; vertex ``(x, y)`` is ``x * nb + y``."""
    nb = b.vertex_count
    maximal = []
    for s in a.maximal_simplices():
        for t in b.maximal_simplices():
            p, q = len(s) - 1, len(t) - 1
            for steps in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [s[0] * nb + t[0]]
                step_set = set(steps)
                for k in range(p + q):
                    if k in step_set:
                        i += 1
                    else:
                        j += 1
                    path.append(s[i] * nb + t[j])
                maximal.append(path)
    return SimplicialComplex.from_maximal(a.vertex_count * nb, maximal)


def product_involutive(a: InvolutiveComplex, b: InvolutiveComplex) -> InvolutiveComplex:
    """Product with the diagonal involution ``g x h``.

    Simplicial only when both involutions preserve the vertex order inside
    each simplex; otherwise ``NonSimplicialMapError`` is raised.
    """
    K = product_complex(a.complex, b.complex)
    nb = b.complex.vertex_count
    g = [a.involution[v // nb] * nb + b.involution[v % nb] for v in range(K.vertex_count)]
    return InvolutiveComplex(K, g)


# cohomology -------------------------------------------------------------
@dataclass(frozen=True)
class Mod2Cohomology:
    dims: tuple[int, ...]
    complex: GradedComplex

    def basis(self, n: int) -> BitMatrix:
        """Representative cocycles (rows) of the canonical basis of H^n."""
        return self.complex.homology(n).reps


def mod2_cohomology(x: SimplicialComplex | ComplexPair) -> Mod2Cohomology:
    if isinstance(x, ComplexPair):
        cc, top = x.relative_cochain_complex, x.total.dim
    else:
        cc, top = x.cochain_complex, x.dim
    return Mod2Cohomology(tuple(cc.betti(n) for n in range(top + 1)), cc)


def mod2_homology(x: SimplicialComplex | ComplexPair) -> tuple[int, ...]:
    if isinstance(x, ComplexPair):
        ch, top = x.relative_chain_complex, x.total.dim
    else:
        ch, top = x.chain_complex, x.dim
    return tuple(ch.betti(n) for n in range(top + 1))


def induced_map_mod2(f: SimplicialMap, n: int) -> BitMatrix:
    """Matrix of ``f^*: H^n(target) -> H^n(source)`` in canonical bases."""
    src, tgt = f.source.cochain_complex, f.target.cochain_complex
    if n < 0 or n > min(f.source.dim, f.target.dim):
        return BitMatrix(src.betti(n) if 0 <= n <= f.source.dim else 0,
                         tgt.betti(n) if 0 <= n <= f.target.dim else 0)
    return tgt.induced(f.cochain_matrix(n), n, src)


def induced_homology_mod2(f: SimplicialMap, n: int) -> BitMatrix:
    """Matrix of ``f_*: H_n(source) -> H_n(target)`` in canonical bases."""
    src, tgt = f.source.chain_complex, f.target.chain_complex
    if n < 0 or n > min(f.source.dim, f.target.dim):
        return BitMatrix(tgt.betti(n) if 0 <= n <= f.target.dim else 0,
                         src.betti(n) if 0 <= n <= f.source.dim else 0)
    return src.induced(f.chain_matrix(n), n, tgt)


# rational homology --------------------------------------------------------
class _EigenComplexes:
    """Integer boundary maps of the +1 and -1 eigencomplexes of g on C_*(K; Q).

    For a free orbit ``{s, gs}`` with ``s`` the smaller index, the basis vector
    of the ``e``-eigenspace is ``[s] + e * g[s]``.  A simplex with ``gs = s``
    spans a line in the eigenspace of its orientation sign.  Coordinates of
    an eigenvector are read off at the orbit representatives.
    """

    def __init__(self, ic: InvolutiveComplex):
        self.ic = ic
        K = ic.complex
        self.basis: dict[tuple[int, int], list[int]] = {}
        for q in range(K.dim + 1):
            perm = ic.simplex_permutation(q)
            plus, minus = [], []
            for i, s in enumerate(K.simplices[q]):
                j = int(perm[i])
                if j == i:
                    (plus if ic.orientation_sign(s) == 1 else minus).append(i)
                elif i < j:
                    plus.append(i)
                    minus.append(i)
            self.basis[(q, 1)] = plus
            self.basis[(q, -1)] = minus
        self._ranks: dict[tuple[int, int], int] = {}

    def size(self, q: int, e: int) -> int:
        return len(self.basis.get((q, e), ()))

    def boundary_rank(self, q: int, e: int) -> int:
        key = (q, e)
        if key in self._ranks:
            return self._ranks[key]
        K = self.ic.complex
        if q < 1 or q > K.dim:
            self._ranks[key] = 0
            return 0
        cols = K.signed_boundary(q)
        perm = self.ic.simplex_permutation(q)
        row_of = {i: k for k, i in enumerate(self.basis[(q - 1, e)])}
        rows = []  # transpose does not change the rank; one row per basis vector
        for i in self.basis[(q, e)]:
            j = int(perm[i])
            vec = dict(cols[i])
            if j != i:
                sign = e * self.ic.orientation_sign(K.simplices[q][i])
                for r, v in cols[j].items():
                    vec[r] = vec.get(r, 0) + sign * v
            rows.append({row_of[r]: v for r, v in vec.items() if v and r in row_of})
        rank = integer_rank(rows)
        self._ranks[key] = rank
        return rank

    def betti(self, q: int, e: int) -> int:
        return self.size(q, e) - self.boundary_rank(q, e) - self.boundary_rank(q + 1, e)


def _eigen(ic: InvolutiveComplex) -> _EigenComplexes:
    cache = ic.__dict__.get("_eigen_cache")
    if cache is None:
        cache = _EigenComplexes(ic)
        ic.__dict__["_eigen_cache"] = cache
    return cache


def rational_homology_trace(ic: InvolutiveComplex, n: int) -> tuple[int, int]:
    """``(dim H_n(K; Q), trace of g on H_n(K; Q))``."""
    if n < 0 or n > ic.dim:
        return 0, 0
    e = _eigen(ic)
    bp, bm = e.betti(n, 1), e.betti(n, -1)
    return bp + bm, bp - bm


def rational_betti(K: SimplicialComplex, n: int) -> int:
    return rational_homology_trace(InvolutiveComplex(K), n)[0]


def lefschetz_number(ic: InvolutiveComplex) -> int:
    return sum((-1) ** n * rational_homology_trace(ic, n)[1] for n in range(ic.dim + 1))

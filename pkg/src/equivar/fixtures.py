"""Small triangulated models with involutions, and random generators for tests."""

from __future__ import annotations

import random
from typing import Callable

from .simplicial import (
    InvolutiveComplex,
    SimplicialComplex,
    is_regular,
    product_involutive,
    regularize,
)

OCTAHEDRON = [
    (0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 4),
    (0, 1, 5), (1, 2, 5), (2, 3, 5), (0, 3, 5),
]
HEXAGON = [(i, (i + 1) % 6) for i in range(6)]


def document(vertices: int, maximal, involution=None) -> dict:
    """The JSON shape read by the command line."""
    doc = {"vertices": vertices, "maximal_simplices": [sorted(s) for s in maximal]}
    if involution is not None:
        doc["involution"] = list(involution)
    return doc


def from_document(doc: dict) -> InvolutiveComplex:
    K = SimplicialComplex.from_maximal(doc["vertices"], doc["maximal_simplices"])
    return InvolutiveComplex(K, doc.get("involution"))


def point() -> InvolutiveComplex:
    return InvolutiveComplex(SimplicialComplex.from_maximal(1, []))


def hexagon(action: str = "antipodal") -> InvolutiveComplex:
    g = {"identity": None, "antipodal": [(i + 3) % 6 for i in range(6)]}[action]
    return from_document(document(6, HEXAGON, g))


def octahedron(action: str = "reflection") -> InvolutiveComplex:
    """Boundary of the octahedron; the reflection swaps the poles 4 and 5."""
    g = {
        "identity": None,
        "reflection": [0, 1, 2, 3, 5, 4],
        "antipodal": [2, 3, 0, 1, 5, 4],
    }[action]
    ic = from_document(document(6, OCTAHEDRON, g))
    return ic if is_regular(ic) else regularize(ic)


def quadric(action: str = "reflection") -> InvolutiveComplex:
    """``S^2 x S^2`` with the product action; the reflection has fixed set ``T^2``."""
    s = octahedron(action)
    return product_involutive(s, s)


FIXTURES: dict[str, Callable[[], InvolutiveComplex]] = {
    "point": point,
    "hexagon-identity": lambda: hexagon("identity"),
    "hexagon-antipodal": lambda: hexagon("antipodal"),
    "octahedron-identity": lambda: octahedron("identity"),
    "octahedron-reflection": lambda: octahedron("reflection"),
    "octahedron-antipodal": lambda: octahedron("antipodal"),
    "quadric": lambda: quadric("reflection"),
    "quadric-identity": lambda: quadric("identity"),
}


def fixture_document(name: str) -> dict:
    ic = FIXTURES[name]()
    K = ic.complex
    g = None if ic.is_trivial else list(ic.involution)
    return document(K.vertex_count, K.maximal_simplices(), g)


# random models ------------------------------------------------------------
def random_complex(rng: random.Random, vertices: int = 7, max_dim: int = 3, faces: int = 6,
                   cap: int = 200) -> SimplicialComplex:
    """Face closure of random simplices, redrawn until it has at most ``cap`` simplices."""
    while True:
        maximal = [
            rng.sample(range(vertices), rng.randint(1, max_dim + 1)) for _ in range(rng.randint(1, faces))
        ]
        K = SimplicialComplex.from_maximal(vertices, maximal)
        if K.size <= cap:
            return K


def random_involutive(rng: random.Random, orbits: int = 3, fixed: int = 2, max_dim: int = 2,
                      faces: int = 5, cap: int = 400) -> InvolutiveComplex:
    """Random complex closed under an involution with ``fixed`` fixed vertices.

    Vertex ``2k`` and ``2k + 1`` form the ``k``-th free orbit and the fixed
    vertices come last.  Every drawn simplex is added together with its image.
    Non-regular draws are subdivided; draws past ``cap`` are discarded.
    """
    n = 2 * orbits + fixed
    g = [v ^ 1 if v < 2 * orbits else v for v in range(n)]
    while True:
        maximal = []
        for _ in range(rng.randint(1, faces)):
            picks = rng.sample(range(orbits + fixed), rng.randint(1, min(max_dim + 1, orbits + fixed)))
            s = [2 * k + rng.randint(0, 1) if k < orbits else orbits + k for k in picks]
            maximal += [s, [g[v] for v in s]]
        ic = InvolutiveComplex(SimplicialComplex.from_maximal(n, maximal), g)
        if not is_regular(ic):
            if ic.complex.size * 6 > cap:
                continue
            ic = regularize(ic)
        if ic.complex.size <= cap:
            return ic

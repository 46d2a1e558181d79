import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from equivar.errors import ContainmentError, DimensionMismatchError
from equivar.gf2 import (
    BitMatrix,
    Quotient,
    Subspace,
    decompose,
    image,
    kernel,
    left_kernel,
    quotient_dim,
    rank,
    subspace_arith,
)


def naive_rank(a):
    a = np.array(a, dtype=np.uint8) % 2
    r = 0
    for c in range(a.shape[1]):
        rows = [i for i in range(r, a.shape[0]) if a[i, c]]
        if not rows:
            continue
        a[[r, rows[0]]] = a[[rows[0], r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def bits(max_side=80):
    shape = st.tuples(st.integers(0, max_side), st.integers(0, max_side))
    return shape.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


def span(rows):
    a = np.array(rows, dtype=np.uint8)
    return Subspace(a.shape[1], BitMatrix.from_dense(a))


# examples -------------------------------------------------------------------
def test_rank_examples():
    assert rank(BitMatrix.identity(3)) == 3
    assert rank(BitMatrix.from_dense(np.ones((2, 2), np.uint8))) == 1
    assert rank(BitMatrix.zeros(0, 5)) == 0
    assert rank(BitMatrix.zeros(5, 0)) == 0


def test_decompose_examples():
    k, im = decompose(BitMatrix.identity(3))
    assert (k.dim, im.dim) == (0, 3)
    ones = BitMatrix.from_dense(np.ones((2, 2), np.uint8))
    k, im = decompose(ones)
    assert k == span([[1, 1]]) and im == span([[1, 1]])
    swap = BitMatrix.from_dense([[0, 1], [1, 0]])
    k, im = decompose(BitMatrix.identity(2) + swap)
    assert k == span([[1, 1]]) and im == span([[1, 1]])


def test_subspace_arith_examples():
    e1, e2, e12 = span([[1, 0]]), span([[0, 1]]), span([[1, 1]])
    assert subspace_arith(e1, e2, "sum").dim == 2
    assert subspace_arith(e1, e12, "intersect").dim == 0
    assert subspace_arith(span([[1, 0], [0, 1]]), e12, "quotient_dim") == 1
    with pytest.raises(ContainmentError):
        quotient_dim(e1, e2)
    with pytest.raises(DimensionMismatchError):
        e1 + Subspace.full(3)
    with pytest.raises(ValueError):
        subspace_arith(e1, e2, "symmetric_difference")


def test_padding_bits_stay_zero():
    m = BitMatrix.from_dense(np.ones((3, 70), np.uint8))
    assert not (m.words[:, -1] >> np.uint64(70 - 64)).any()
    assert (m + m).is_zero()


def test_rref_is_canonical():
    a = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    r, piv = a.rref()
    assert piv == (0, 1)
    assert r.to_dense()[: len(piv)].tolist() == [[1, 0, 1], [0, 1, 1]]
    assert Subspace(3, a) == Subspace(3, r)


def test_quotient_coordinates_and_induced():
    V = Subspace.full(3)
    W = span([[1, 1, 0]])
    Q = Quotient(V, W)
    assert Q.dim == 2
    assert Q.coords(BitMatrix.from_dense([[1, 1, 0]])).is_zero()
    m = BitMatrix.identity(3)
    assert Q.induced(m, Q) == BitMatrix.identity(2)
    with pytest.raises(ContainmentError):
        Quotient(W, V)


# properties ------------------------------------------------------------------
@given(bits())
def test_rank_matches_naive_elimination(a):
    m = BitMatrix.from_dense(a)
    assert (m.to_dense() == a).all()
    assert m.rank() == naive_rank(a) == m.T.rank()


@given(bits())
def test_rank_nullity(a):
    m = BitMatrix.from_dense(a)
    k, im = decompose(m)
    assert k.dim + im.dim == m.cols
    assert (m @ k.basis.T).is_zero()
    assert left_kernel(m.T) == k


@given(bits(60), st.integers(0, 60), st.randoms(use_true_random=False))
def test_matmul_matches_integer_product(a, k, rnd):
    b = np.array([[rnd.randint(0, 1) for _ in range(k)] for _ in range(a.shape[1])], dtype=np.uint8).reshape(a.shape[1], k)
    got = (BitMatrix.from_dense(a) @ BitMatrix.from_dense(b)).to_dense()
    assert (got == (a.astype(int) @ b.astype(int)) % 2).all()


@given(st.integers(1, 70), st.data())
def test_sum_intersection_dimension_formula(n, data):
    rows = lambda: data.draw(arrays(np.uint8, (data.draw(st.integers(0, 12)), n), elements=st.integers(0, 1)))  # noqa: E731
    A, B, C = (Subspace(n, BitMatrix.from_dense(rows())) for _ in range(3))
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert A.contains((A & B).basis) and B.contains((A & B).basis)
    # modular law: if A is inside C then A + (B & C) = (A + B) & C
    C = A + C
    assert A + (B & C) == (A + B) & C


@given(bits(50), st.data())
def test_preimage(a, data):
    m = BitMatrix.from_dense(a)
    rows, cols = a.shape
    assert Subspace.full(rows).preimage_under(m) == Subspace.full(cols)
    assert Subspace.zero(rows).preimage_under(m) == kernel(m)
    U = Subspace(rows, BitMatrix.from_dense(data.draw(arrays(np.uint8, (5, rows), elements=st.integers(0, 1)))))
    P = U.preimage_under(m)
    assert U.contains(P.basis @ m.T)
    assert P.dim == kernel(m).dim + (U & image(m)).dim

import numpy as np
import pytest

from linecong.jetcalc import basis
from linecong.kernels import _pykernels

try:
    from linecong.kernels import _ckernels
except ImportError:
    _ckernels = None

compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
P = 2 ** 31 - 1


@compiled
def test_mul_exact_agrees():
    rng = np.random.default_rng(1)
    b = basis(3, 5)
    a = [int(v) for v in rng.integers(-10 ** 9, 10 ** 9, b.size)]
    c = [int(v) for v in rng.integers(-10 ** 9, 10 ** 9, b.size)]
    assert _ckernels.mul_exact(a, c, b.mul_rows, b.size) == \
        _pykernels.mul_exact(a, c, b.mul_rows, b.size)


@compiled
def test_mul_batch_f64_agrees():
    rng = np.random.default_rng(2)
    b = basis(3, 4)
    A, B = rng.standard_normal((50, b.size)), rng.standard_normal((50, b.size))
    args = (A, B, *b.mul_table, b.size)
    assert np.allclose(_ckernels.mul_batch_f64(*args), _pykernels.mul_batch_f64(*args))


@compiled
def test_mul_modp_agrees():
    rng = np.random.default_rng(3)
    b = basis(3, 6)
    x, y = (rng.integers(0, P, b.size).astype(np.int64) for _ in range(2))
    args = (x, y, *b.mul_table, b.size, P)
    assert np.array_equal(_ckernels.mul_modp(*args), _pykernels.mul_modp(*args))


@pytest.mark.parametrize("impl", [_pykernels] + ([_ckernels] if _ckernels else []))
def test_rank_modp_known_ranks(impl):
    rng = np.random.default_rng(4)
    L = rng.integers(0, 50, (30, 7)).astype(np.int64)
    R = rng.integers(0, 50, (7, 40)).astype(np.int64)
    M = (L @ R) % P
    assert impl.rank_modp(M, P) == 7
    assert impl.rank_modp(np.zeros((3, 4), dtype=np.int64), P) == 0
    assert impl.rank_split_modp(np.vstack([M, np.eye(1, 40, 0, dtype=np.int64)]), 30, P) in \
        [(7, 7), (7, 8)]
    head, total = impl.rank_split_modp(np.eye(5, dtype=np.int64), 3, P)
    assert (head, total) == (3, 5)


@compiled
def test_rank_modp_agrees_on_random_matrices():
    rng = np.random.default_rng(5)
    for shape in [(20, 30), (60, 40), (10, 10)]:
        M = rng.integers(0, 3, shape).astype(np.int64)
        assert _ckernels.rank_modp(M, P) == _pykernels.rank_modp(M, P)
        assert _ckernels.rank_split_modp(M, shape[0] // 2, P) == \
            _pykernels.rank_split_modp(M, shape[0] // 2, P)


@compiled
def test_cubic_roots_agree():
    rng = np.random.default_rng(6)
    C = rng.standard_normal((500, 4))
    C[:20, 0] = 0
    C[20:25, :2] = 0
    C[25] = 0
    rc, cc = _ckernels.cubic_real_roots(C)
    rp, cp = _pykernels.cubic_real_roots(C)
    assert np.array_equal(cc, cp)
    assert np.allclose(rc, rp, equal_nan=True, rtol=1e-9, atol=1e-12)


def test_cubic_roots_counts_and_padding():
    roots, counts = _pykernels.cubic_real_roots(np.array([[1.0, -6, 11, -6], [1, 0, 1, 0],
                                                          [0, 0, 0, 0]]))
    assert list(counts) == [3, 1, -1]
    assert roots[0] == pytest.approx([1, 2, 3])
    assert np.isnan(roots[1, 1:]).all()

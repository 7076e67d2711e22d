import pytest
from hypothesis import given
from hypothesis import strategies as st

from trilist.bitmap import Bitmap


def test_set_test_clear():
    bm = Bitmap(130)
    assert bm.is_clear()
    for v in (0, 63, 64, 129):
        bm.set(v)
    assert 63 in bm and 64 in bm and 129 in bm
    assert 1 not in bm and 128 not in bm
    assert bm.count() == 4
    bm.clear_many([0, 63, 64, 129])
    assert bm.is_clear()


def test_bounds():
    bm = Bitmap(10)
    with pytest.raises(IndexError):
        bm.set(10)
    with pytest.raises(IndexError):
        _ = -1 in bm


def test_size_is_packed():
    assert Bitmap(1_000_000).nbytes == 8 * 15625
    assert len(Bitmap(0)) == 0


@given(st.integers(1, 500).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, n - 1)))))
def test_matches_python_set(case):
    n, members = case
    bm = Bitmap(n)
    bm.set_many(members)
    assert {v for v in range(n) if v in bm} == members
    bm.clear_many(members)
    assert bm.is_clear()

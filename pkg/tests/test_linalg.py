from hypothesis import given, strategies as st

from thickcech.fields import GF, QQ
from thickcech.linalg import ExactMatrix, column_rank

small = st.integers(-3, 3)


def matrices(rows=4, cols=5):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rank_and_nullspace_small():
    m = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], QQ)
    assert m.rank() == 2
    (v,) = m.nullspace()
    assert m * v == [0, 0, 0]


def test_solve_inconsistent():
    m = ExactMatrix([[1, 1], [2, 2]], QQ)
    assert m.solve([1, 3]) is None
    assert m.solve([1, 2]) is not None


def test_rank_depends_on_field():
    m = ExactMatrix([[1, 1], [1, -1]], QQ)
    assert m.rank() == 2
    assert ExactMatrix([[1, 1], [1, -1]], GF(2)).rank() == 1


@given(matrices())
def test_rank_nullity(rows):
    m = ExactMatrix(rows, QQ)
    assert m.rank() + len(m.nullspace()) == m.ncols
    for v in m.nullspace():
        assert all(x == 0 for x in m * v)
    assert m.rank() == m.transpose().rank()


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_recovers_image(rows, x):
    m = ExactMatrix(rows, GF(5))
    b = m * [GF(5).coerce(c) for c in x]
    sol = m.solve(b)
    assert sol is not None and m * sol == b
    assert m.contains_column(b)


def test_column_rank_empty():
    assert column_rank([], 3, QQ) == 0

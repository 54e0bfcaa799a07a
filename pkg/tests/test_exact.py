import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grcat.exact import (
    IntMatrix,
    Mod1System,
    UnityRoot,
    floor_div,
    invariant_factors_of,
    lcm,
    rem,
    root,
    smith_normal_form,
    solve_mod1,
)

roots = st.builds(UnityRoot, st.integers(-50, 50), st.integers(1, 24))


@pytest.mark.parametrize("x,m,expected", [(5, 3, 1), (0, 7, 0), (6, 3, 2)])
def test_floor_div_examples(x, m, expected):
    assert floor_div(x, m) == expected


@pytest.mark.parametrize("x,m,expected", [(7, 3, 1), (3, 3, 0), (2, 5, 2)])
def test_rem_examples(x, m, expected):
    assert rem(x, m) == expected


def test_floor_div_rejects_nonpositive_modulus():
    with pytest.raises(ValueError):
        floor_div(3, 0)
    with pytest.raises(ValueError):
        rem(3, -2)


def test_floor_identity_exhaustive():
    for m in range(1, 13):
        for x in range(4 * m):
            for j in range(4 * m):
                assert floor_div(x + rem(j, m), m) == floor_div(x + j, m) - floor_div(j, m)


@pytest.mark.parametrize("k,n,expected", [(1, 2, "1/2"), (4, 4, "0/1"), (2, 6, "1/3")])
def test_root_examples(k, n, expected):
    assert str(root(k, n)) == expected


def test_canonical_form():
    assert UnityRoot(3, 6) == UnityRoot(1, 2)
    assert UnityRoot(-1, 4) == UnityRoot(3, 4)
    assert UnityRoot(0, 9) == UnityRoot(0, 1)
    with pytest.raises(ValueError):
        UnityRoot(1, 0)
    assert UnityRoot.parse(" 2/6 ") == UnityRoot(1, 3)
    assert UnityRoot.parse("5") == UnityRoot(0)


@given(roots, roots, roots)
def test_group_law(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x + UnityRoot(0) == x
    assert (x + (-x)).is_one()
    assert x - y == x + (-y)


@given(roots)
def test_order_is_denominator(x):
    assert 0 <= x.num < x.den
    assert (x.den * x).is_one()
    assert all(not (k * x).is_one() for k in range(1, x.den))


@given(roots, st.integers(-20, 20), st.integers(-20, 20))
def test_scalar_distributes(x, a, b):
    assert (a + b) * x == a * x + b * x
    assert a * (b * x) == (a * b) * x


def test_lcm():
    assert lcm() == 1
    assert lcm(4, 6) == 12
    assert lcm(2, 2, 3) == 6


# ---------------------------------------------------------------------------
# Smith normal form


def _is_smith(S: IntMatrix) -> bool:
    diag = [S[i, i] for i in range(min(S.rows, S.cols))]
    off = all(S[i, j] == 0 for i in range(S.rows) for j in range(S.cols) if i != j)
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag) or diag[: len(nz)] != nz:
        return False
    return off and all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_known_example():
    A = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    snf = smith_normal_form(A)
    assert snf.diagonal == [2, 6, 12]
    assert snf.U @ snf.S @ snf.V == A
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_round_trip(rows):
    A = IntMatrix(rows)
    snf = smith_normal_form(A)
    assert snf.U @ snf.S @ snf.V == A
    assert abs(snf.U.det()) == 1
    assert abs(snf.V.det()) == 1
    assert _is_smith(snf.S)


def test_snf_zero_and_empty_shapes():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.rank == 0
    snf = smith_normal_form([[0, 3]])
    assert snf.diagonal == [3]


def test_invariant_factors_of():
    assert invariant_factors_of([2, 2, 4]) == [2, 2, 4]
    assert invariant_factors_of([2, 3]) == [6]
    assert invariant_factors_of([1, 1]) == []
    assert invariant_factors_of([4, 6]) == [2, 12]


# ---------------------------------------------------------------------------
# linear systems over Q/Z


def test_solve_mod1_examples():
    x = solve_mod1([[2]], [UnityRoot(1, 2)])
    assert x is not None and (2 * x[0]) == UnityRoot(1, 2)
    assert solve_mod1([[0]], [UnityRoot(1, 3)]) is None
    assert solve_mod1([[1, 1], [1, 1]], [UnityRoot(1, 2), UnityRoot(0)]) is None


def test_solve_mod1_shape_check():
    with pytest.raises(ValueError):
        solve_mod1([[1, 2]], [UnityRoot(0), UnityRoot(0)])


def _residual_ok(rows, x, b):
    for row, bi in zip(rows, b):
        total = UnityRoot(0)
        for a, xi in zip(row, x):
            total = total + a * xi
        if total != bi:
            return False
    return True


def _max_minor_bound(rows) -> int:
    """|a nonzero maximal minor|; every invariant factor product divides it."""
    r, c = len(rows), len(rows[0])
    for k in range(min(r, c), 0, -1):
        for ri in itertools.combinations(range(r), k):
            for ci in itertools.combinations(range(c), k):
                d = IntMatrix([[rows[i][j] for j in ci] for i in ri]).det()
                if d:
                    return abs(d)
    return 1


def _exhaustive_solvable(rows, b) -> bool:
    D = lcm(*(v.den for v in b)) * _max_minor_bound(rows)
    grid = [UnityRoot(k, D) for k in range(D)]
    return any(_residual_ok(rows, x, b) for x in itertools.product(grid, repeat=len(rows[0])))


small_systems = st.integers(1, 3).flatmap(
    lambda r: st.integers(1, 2).flatmap(
        lambda c: st.tuples(
            st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r),
            st.lists(st.builds(UnityRoot, st.integers(0, 5), st.sampled_from([1, 2, 3, 4, 6])), min_size=r, max_size=r),
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(small_systems)
def test_solve_mod1_against_exhaustive_search(system):
    rows, b = system
    x = solve_mod1(rows, b)
    if x is not None:
        assert _residual_ok(rows, x, b)
    else:
        assert not _exhaustive_solvable(rows, b)


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_mod1_system_agrees_with_snf(rows, data):
    # A x = b solvable over Q/Z iff (U^-1 b) vanishes on the zero diagonal rows
    b = data.draw(st.lists(st.builds(UnityRoot, st.integers(0, 11), st.sampled_from([1, 2, 3, 4, 12])),
                           min_size=len(rows), max_size=len(rows)))
    snf = smith_normal_form(rows)
    n = len(rows)
    # solve U y = b over Q exactly, then y = U^-1 b
    aug = [[Fraction(v) for v in snf.U.tolist()[i]] + [b[i].as_fraction()] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    y = [aug[i][n] / aug[i][i] for i in range(n)]
    diag = snf.diagonal + [0] * (n - len(snf.diagonal))
    expected = all(y[i].denominator == 1 for i in range(n) if diag[i] == 0)
    system = Mod1System(rows)
    assert system.solvable(b) == expected
    assert (system.solve(b) is not None) == expected
    assert system.rank == snf.rank

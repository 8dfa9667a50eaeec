import random
from fractions import Fraction as F

import pytest

from ltsplit.exact_linear import (
    canonicalize,
    common_eigenspaces,
    complement_in,
    contains,
    eigenspaces,
    format_scalar,
    full_space,
    image,
    intersect,
    is_subspace_of,
    kernel,
    quotient_matrix,
    rational_eigenvalues,
    rref,
    solve_in_span,
    subspace_sum,
    to_scalar,
    zero_space,
)
from ltsplit.models import AlgebraError


def vec(*xs):
    return tuple(F(x) for x in xs)


# ---------- scalars ----------

@pytest.mark.parametrize(
    "raw, expected",
    [("3/4", F(3, 4)), ("-2", F(-2)), (" 6/4 ", F(3, 2)), (5, F(5)), (F(1, 3), F(1, 3))],
)
def test_to_scalar_accepts_exact_forms(raw, expected):
    assert to_scalar(raw) == expected


@pytest.mark.parametrize("raw", ["1.5", "1e3", "1/0", "", "abc", 0.5, True, None])
def test_to_scalar_refuses_inexact_or_garbage(raw):
    with pytest.raises(AlgebraError) as exc:
        to_scalar(raw)
    assert exc.value.code == "E_BAD_SCALAR"


def test_format_scalar():
    assert format_scalar(F(-4)) == "-4"
    assert format_scalar(F(6, 4)) == "3/2"
    assert format_scalar(F(0)) == "0"


# ---------- subspaces ----------

def test_rref_drops_dependent_rows():
    rows, pivots = rref([vec(1, 2, 3), vec(2, 4, 6), vec(0, 1, 1)], 3)
    assert pivots == (0, 1)
    assert rows == (vec(1, 0, 1), vec(0, 1, 1))


def test_rref_rejects_ragged_rows():
    with pytest.raises(AlgebraError) as exc:
        rref([vec(1, 2), vec(1, 2, 3)], 2)
    assert exc.value.code == "E_DIMENSION_MISMATCH"


def test_canonical_form_makes_equal_spans_equal():
    a = canonicalize([vec(1, 1, 0), vec(0, 1, 1)])
    b = canonicalize([vec(1, 2, 1), vec(1, 0, -1)])
    assert a == b
    assert a.rank == 2


def test_kernel_of_single_row():
    K = kernel([vec(1, 1, 0)], 3)
    assert K.rank == 2
    assert contains(K, vec(1, -1, 0))
    assert contains(K, vec(0, 0, 1))
    assert not contains(K, vec(1, 0, 0))


def test_kernel_of_no_rows_is_everything():
    assert kernel([], 3) == full_space(3)


def test_intersect_and_sum():
    a = canonicalize([vec(1, 0, 0), vec(0, 1, 0)])
    b = canonicalize([vec(0, 1, 0), vec(0, 0, 1)])
    assert intersect(a, b) == canonicalize([vec(0, 1, 0)])
    assert subspace_sum(a, b) == full_space(3)
    assert intersect(a, zero_space(3)).is_zero()
    assert is_subspace_of(intersect(a, b), a)


def test_mixed_ambient_dimensions_are_refused():
    with pytest.raises(AlgebraError) as exc:
        intersect(full_space(2), full_space(3))
    assert exc.value.code == "E_DIMENSION_MISMATCH"


def test_image_is_column_space():
    m = (vec(1, 0), vec(1, 0), vec(0, 0))
    assert image(m, 3) == canonicalize([vec(1, 1, 0)])


def test_quotient_matrix_kills_the_subspace():
    S = canonicalize([vec(1, -1, 0)])
    q = quotient_matrix(S)
    assert len(q) == 2
    for row in q:
        assert sum(x * y for x, y in zip(row, S.basis[0])) == 0


def test_complement_in():
    Z = full_space(3)
    S = canonicalize([vec(1, 1, 0)])
    extra = complement_in(S, Z)
    assert len(extra) == 2
    assert subspace_sum(S, canonicalize(extra, 3)) == Z


def test_solve_in_span():
    vs = [vec(1, 0, 1), vec(0, 1, 1)]
    assert solve_in_span(vs, vec(2, 3, 5)) == vec(2, 3)
    assert solve_in_span(vs, vec(0, 0, 1)) is None


# ---------- eigenvalues ----------

def test_rational_eigenvalues_sorted_and_distinct():
    m = (vec(2, 0, 0), vec(0, -1, 0), vec(0, 0, 2))
    assert rational_eigenvalues(m) == [F(-1), F(2)]


def test_eigenvalues_with_fractions():
    m = (vec(F(1, 2), 1), vec(0, F(-3, 4)))
    assert rational_eigenvalues(m) == [F(-3, 4), F(1, 2)]


def test_irrational_eigenvalue_is_reported():
    with pytest.raises(AlgebraError) as exc:
        rational_eigenvalues((vec(0, 2), vec(1, 0)))
    assert exc.value.code == "E_IRRATIONAL_OR_DEFECTIVE"


def test_defective_map_is_reported():
    with pytest.raises(AlgebraError) as exc:
        eigenspaces((vec(1, 1), vec(0, 1)))
    assert exc.value.code == "E_IRRATIONAL_OR_DEFECTIVE"


def test_common_eigenspaces_refine_blocks():
    a = (vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, -1))
    b = (vec(0, 0, 0), vec(0, 2, 0), vec(0, 0, 0))
    blocks = common_eigenspaces([a, b])
    labels = [label for label, _ in blocks]
    assert labels == [(F(-1), F(0)), (F(1), F(0)), (F(1), F(2))]
    assert all(space.rank == 1 for _, space in blocks)


def test_common_eigenspaces_without_maps():
    assert common_eigenspaces([], 2) == [((), full_space(2))]


def test_noncommuting_maps_are_refused():
    a = (vec(1, 0), vec(0, -1))
    b = (vec(0, 1), vec(1, 0))
    with pytest.raises(AlgebraError) as exc:
        common_eigenspaces([a, b])
    assert exc.value.code == "E_NOT_COMMUTING"


# ---------- randomized laws ----------

def random_vectors(rng, n, count):
    return [tuple(F(rng.randint(-2, 2)) for _ in range(n)) for _ in range(count)]


def test_sum_and_intersection_ranks_add_up():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = canonicalize(random_vectors(rng, n, rng.randint(0, n)), n)
        b = canonicalize(random_vectors(rng, n, rng.randint(0, n)), n)
        assert subspace_sum(a, b).rank + intersect(a, b).rank == a.rank + b.rank
        assert is_subspace_of(intersect(a, b), a) and is_subspace_of(a, subspace_sum(a, b))


def test_canonical_basis_ignores_how_the_span_is_given():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 5)
        vectors = random_vectors(rng, n, rng.randint(1, 4))
        s = canonicalize(vectors, n)
        other = []
        for v in vectors:
            c = F(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7]))
            other.append(tuple(c * x for x in v))
        rng.shuffle(other)
        coeffs = [F(rng.randint(-2, 2)) for _ in vectors]
        extra = tuple(sum((a * v[k] for a, v in zip(coeffs, vectors)), F(0)) for k in range(n))
        t = canonicalize(other + [extra], n)
        assert t == s
        assert t.basis == s.basis

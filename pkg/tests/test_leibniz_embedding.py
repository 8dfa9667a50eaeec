from fractions import Fraction as F

import pytest

from ltsplit.corpus import sl2
from ltsplit.leibniz_embedding import (
    LeibnizAlgebra,
    bracket,
    check_grading,
    check_right_leibniz,
    derived_triple_system,
    direct_sum_algebras,
    embed_l0,
    faithfulness_kernel,
    l0_algebra,
    l0_on_t,
    masa_check,
    pair_vector,
    right_action_on_t,
    standard_embedding,
    t_bracket,
    t_on_l0,
)
from ltsplit.models import AlgebraError
from ltsplit.triple_core import TripleSystem


def unit(n, i):
    return tuple(F(int(k == i)) for k in range(n))


@pytest.fixture(scope="module")
def sl2_embedding(corpus):
    return standard_embedding(corpus["c3_sl2_derived"].system)


@pytest.fixture(scope="module")
def cartan(sl2_embedding):
    return pair_vector(sl2_embedding, [(1, 2, F(1))])


# ---------- algebras ----------

def test_corpus_algebras_are_right_leibniz(corpus):
    for item in corpus.values():
        if isinstance(item.system, LeibnizAlgebra):
            assert check_right_leibniz(item.system).passed, item.name


def test_sl2_bracket():
    L = sl2()
    h, e, f = (unit(3, i) for i in range(3))
    assert bracket(L, e, f) == h
    assert bracket(L, h, f) == (F(0), F(0), F(-2))


def test_single_sign_flip_breaks_right_leibniz():
    L = sl2().with_entry(0, 1, 1, F(-2))
    report = check_right_leibniz(L)
    assert not report.passed
    assert report.violations[0].identity == "RIGHT_LEIBNIZ"


def test_derive_refuses_a_non_leibniz_algebra():
    with pytest.raises(AlgebraError) as exc:
        derived_triple_system(sl2().with_entry(0, 1, 1, F(-2)))
    assert exc.value.code == "E_NOT_LEIBNIZ"
    assert len(exc.value.detail["indices"]) == 3


def test_derived_sl2_matches_the_corpus_file(corpus):
    T = derived_triple_system(sl2())
    assert T.verified
    assert T.nonzero == corpus["c3_sl2_derived"].system.nonzero
    assert T.basis_names == ("h", "e", "f")


def test_derived_square_zero_algebra_is_zero(corpus):
    T = derived_triple_system(corpus["c2_algebra"].system)
    assert not T.nonzero


def test_direct_sum_names():
    L = direct_sum_algebras(sl2(), sl2())
    assert L.dim == 6
    assert L.basis_names[:4] == ("h_1", "e_1", "f_1", "h_2")
    assert check_right_leibniz(L).passed


# ---------- standard embedding ----------

def test_zero_system_embeds_with_trivial_l0():
    E = standard_embedding(TripleSystem.zero(2))
    assert E.l0_dim == 0
    assert E.kernel.rank == 4
    assert faithfulness_kernel(TripleSystem.zero(2)).rank == 4


def test_sl2_embedding_shape(sl2_embedding):
    E = sl2_embedding
    assert E.l0_dim == 3
    assert E.kernel.rank == 6
    assert E.algebra.dim == 6
    assert check_grading(E) == []
    assert check_right_leibniz(E.algebra).passed
    assert check_right_leibniz(l0_algebra(E)).passed
    assert E.algebra.basis_names[3:] == ("h", "e", "f")


def test_t_bracket_is_the_pair_class(sl2_embedding, cartan):
    E = sl2_embedding
    assert t_bracket(E, unit(3, 1), unit(3, 2)) == cartan


def test_l0_acts_through_the_triple_product(sl2_embedding, cartan):
    E = sl2_embedding
    e = unit(3, 1)
    # [e(x)f, e] = {e, f, e} = 2e and [e, e(x)f] = {e, e, f} - {e, f, e} = -2e
    assert l0_on_t(E, cartan, e) == (F(0), F(2), F(0))
    assert t_on_l0(E, e, cartan) == (F(0), F(-2), F(0))


def test_right_action_of_the_cartan_element(sl2_embedding, cartan):
    m = right_action_on_t(sl2_embedding, cartan)
    assert m == (
        (F(0), F(0), F(0)),
        (F(0), F(-2), F(0)),
        (F(0), F(0), F(2)),
    )


def test_masa_check(sl2_embedding, cartan):
    check = masa_check(sl2_embedding, [cartan])
    assert check.abelian
    assert check.maximal == "yes"
    other = pair_vector(sl2_embedding, [(0, 1, F(1))])
    assert not masa_check(sl2_embedding, [cartan, other]).abelian


def test_l0_membership_is_checked(sl2_embedding):
    with pytest.raises(AlgebraError) as exc:
        embed_l0(sl2_embedding, (F(1),))
    assert exc.value.code == "E_NOT_IN_L0"
    with pytest.raises(AlgebraError) as exc:
        pair_vector(sl2_embedding, [(0, 3, F(1))])
    assert exc.value.code == "E_INDEX_RANGE"


def test_embedding_refuses_a_broken_system():
    bad = TripleSystem.from_entries(1, {(0, 0, 0): {0: F(1)}})
    with pytest.raises(AlgebraError) as exc:
        standard_embedding(bad)
    assert exc.value.code == "E_NOT_LEIBNIZ_TRIPLE"


@pytest.mark.parametrize(
    "name, l0_dim", [("c4_sl2_sum_derived", 6), ("c5_hs1_derived", 6), ("c6_hs_standard_derived", 5)]
)
def test_embedding_dimensions(corpus, name, l0_dim):
    E = standard_embedding(corpus[name].system)
    assert E.l0_dim == l0_dim
    assert check_grading(E) == []

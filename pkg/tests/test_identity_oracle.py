"""The sparse identity checker against a slow dense re-implementation, over single-entry mutations."""
import itertools
import random
import time
from fractions import Fraction as F

import pytest

from ltsplit.triple_core import TripleSystem, check_leibniz_triple


def _prod(T, x, y, z):
    n = T.dim
    out = [F(0)] * n
    xs, ys, zs = ([(i, c) for i, c in enumerate(v) if c] for v in (x, y, z))
    for (i, a), (j, b), (k, c) in itertools.product(xs, ys, zs):
        vec = T.tensor[i][j][k]
        for l in range(n):
            if vec[l]:
                out[l] += a * b * c * vec[l]
    return out


def _lin(*terms):
    n = len(terms[0][1])
    return [sum((s * v[l] for s, v in terms), F(0)) for l in range(n)]


def naive_defects(T, idx):
    n = T.dim
    a, b, c, d, e = ([F(int(k == t)) for k in range(n)] for t in idx)
    P = lambda x, y, z: _prod(T, x, y, z)  # noqa: E731
    eq1 = _lin(
        (1, P(a, P(b, c, d), e)),
        (-1, P(P(a, b, c), d, e)), (1, P(P(a, c, b), d, e)),
        (1, P(P(a, d, b), c, e)), (-1, P(P(a, d, c), b, e)),
    )
    eq2 = _lin(
        (1, P(a, b, P(c, d, e))),
        (-1, P(P(a, b, c), d, e)), (1, P(P(a, b, d), c, e)),
        (1, P(P(a, b, e), c, d)), (-1, P(P(a, b, e), d, c)),
    )
    cde = P(c, d, e)
    prop3 = _lin(
        (1, P(cde, b, a)), (-1, P(cde, a, b)), (-1, P(P(c, b, a), d, e)),
        (1, P(P(c, a, b), d, e)), (-1, P(c, P(a, b, d), e)), (-1, P(c, d, P(a, b, e))),
    )
    return {"EQ1": eq1, "EQ2": eq2, "PROP3": prop3}


def naive_passes(T):
    for idx in itertools.product(range(T.dim), repeat=5):
        if any(any(v) for v in naive_defects(T, idx).values()):
            return False
    return True


def _mutations(T):
    n = T.dim
    for i, j, k, l in itertools.product(range(n), repeat=4):
        old = T.tensor[i][j][k][l]
        yield (i, j, k, l), T.with_entry(i, j, k, l, old + 1)


def _agree(T):
    report = check_leibniz_triple(T, limit=1)
    if report.passed:
        assert naive_passes(T)
    else:
        v = report.violations[0]
        assert any(naive_defects(T, v.indices)[v.identity])


def test_every_mutation_of_the_zero_plane_agrees():
    for _, M in _mutations(TripleSystem.zero(2)):
        _agree(M)


def test_mutations_of_sl2_derived_agree(corpus):
    T = corpus["c3_sl2_derived"].system
    for key, terms in T.nonzero.items():
        for l, c in terms:
            _agree(T.with_entry(*key, l, -c))


def _random_mutants(T, seed, count=60):
    rng = random.Random(seed)
    n = T.dim
    for _ in range(count):
        i, j, k, l = (rng.randrange(n) for _ in range(4))
        delta = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
        yield T.with_entry(i, j, k, l, T.tensor[i][j][k][l] + delta)


@pytest.mark.parametrize(
    "name, seed",
    [("c2_derived", 11), ("c3_sl2_derived", 23), ("c5_hs1_derived", 37)],
)
def test_random_single_entry_mutants_agree(corpus, name, seed):
    T = corpus[name].system
    _agree(T)
    for M in _random_mutants(T, seed):
        _agree(M)


def test_some_mutations_keep_the_identities():
    # {e1, e1, e1} = e0 is still a Leibniz triple system, so a checker that flags every mutation is wrong.
    M = TripleSystem.zero(2).with_entry(1, 1, 1, 0, F(1))
    assert check_leibniz_triple(M).passed
    assert naive_passes(M)


@pytest.mark.slow
def test_zero_tensor_check_scales():
    timings = {}
    for n in range(2, 9):
        start = time.perf_counter()
        assert check_leibniz_triple(TripleSystem.zero(n)).passed
        timings[n] = time.perf_counter() - start
    assert timings[8] < 60.0

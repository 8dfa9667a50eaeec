# tests/test_independent_oracles.py
"""Golden invariants recomputed straight from the committed JSON tensors with sympy matrices.

Nothing here goes through ltsplit's parser or linear algebra, so agreement with the golden file
and with the library is a genuine cross-check rather than a regression snapshot.
"""
import itertools
import json
from collections import Counter

import pytest
from sympy import Matrix, Rational

from ltsplit.corpus import annotate

from conftest import CORPUS_DIR

TRIPLES = [
    "c1_zero_1", "c1_zero_2", "c1_zero_3", "c2_derived", "c3_sl2_derived",
    "c4_sl2_sum_derived", "c5_hs1_derived", "c6_hs_standard_derived",
]
SPLIT = ["c3_sl2_derived", "c4_sl2_sum_derived", "c5_hs1_derived", "c6_hs_standard_derived"]


def load_tensor(name):
    data = json.loads((CORPUS_DIR / f"{name}.json").read_text(encoding="utf-8"))
    t = {}
    for item in data["products"]:
        for l, c in item["value"].items():
            t[tuple(item["args"]) + (int(l),)] = Rational(c)
    return data["dim"], t


def load_masa_pairs(name):
    data = json.loads((CORPUS_DIR / f"{name}.masa.json").read_text(encoding="utf-8"))
    out = []
    for terms in data["pair_elements"]:
        assert len(terms) == 1 and terms[0][2] == "1"
        out.append((terms[0][0], terms[0][1]))
    return out


def entry(t, *idx):
    return t.get(idx, Rational(0))


def product_vector(n, t, x, y, z):
    """{x, y, z} for coordinate vectors (sympy column matrices)."""
    out = [Rational(0)] * n
    for i, j, k in itertools.product(range(n), repeat=3):
        c = x[i] * y[j] * z[k]
        if c:
            for l in range(n):
                out[l] += c * entry(t, i, j, k, l)
    return Matrix(out)


def unit(n, i):
    return Matrix([Rational(int(k == i)) for k in range(n)])


# ---------- J ----------

def j_rank(n, t):
    gens = [
        Matrix([entry(t, a, b, c, l) - entry(t, a, c, b, l) + entry(t, b, c, a, l) for l in range(n)])
        for a, b, c in itertools.product(range(n), repeat=3)
    ]
    vectors = [g for g in gens if any(g)]
    basis = Matrix.hstack(*vectors).columnspace() if vectors else []
    while True:
        grown = list(basis)
        for v in basis:
            for i, j in itertools.product(range(n), repeat=2):
                grown += [
                    product_vector(n, t, v, unit(n, i), unit(n, j)),
                    product_vector(n, t, unit(n, i), v, unit(n, j)),
                    product_vector(n, t, unit(n, i), unit(n, j), v),
                ]
        grown = [g for g in grown if any(g)]
        nxt = Matrix.hstack(*grown).columnspace() if grown else []
        if len(nxt) == len(basis):
            return len(basis)
        basis = nxt


# ---------- annihilator ----------

def annihilator_rank(n, t):
    blocks = []
    for j, k in itertools.product(range(n), repeat=2):
        blocks.append(Matrix(n, n, lambda l, x: entry(t, x, j, k, l)))
        blocks.append(Matrix(n, n, lambda l, x: entry(t, j, x, k, l)))
        blocks.append(Matrix(n, n, lambda l, x: entry(t, j, k, x, l)))
    return n - Matrix.vstack(*blocks).rank()


# ---------- pair space of the standard embedding ----------

def pair_bracket_column(n, t, p, q):
    """[x(x)y, u(x)v] = {x,y,u}(x)v - {x,y,v}(x)u, as an n^2 column."""
    (x, y), (u, v) = p, q
    col = [Rational(0)] * (n * n)
    for l in range(n):
        col[l * n + v] += entry(t, x, y, u, l)
        col[l * n + u] -= entry(t, x, y, v, l)
    return col


def kernel_rank(n, t):
    N = n * n
    pairs = list(itertools.product(range(n), repeat=2))
    rows = []
    for w, l in itertools.product(range(n), repeat=2):
        rows.append([entry(t, x, y, w, l) for x, y in pairs])
        rows.append([entry(t, w, x, y, l) - entry(t, w, y, x, l) for x, y in pairs])
    B = Matrix.hstack(*Matrix(rows).nullspace())
    while B.cols and B.cols < N:
        Q = Matrix.hstack(*B.T.nullspace()).T
        conditions = []
        for fixed in pairs:
            right = Matrix.hstack(*[Matrix(pair_bracket_column(n, t, p, fixed)) for p in pairs])
            left = Matrix.hstack(*[Matrix(pair_bracket_column(n, t, fixed, p)) for p in pairs])
            conditions += [Q * right * B, Q * left * B]
        null = Matrix.vstack(*conditions).nullspace()
        if len(null) == B.cols:
            break
        B = B * Matrix.hstack(*null) if null else Matrix.zeros(N, 0)
    return B.cols


# ---------- roots ----------

def right_action(n, t, x, y):
    # t -> {t, x, y} - {t, y, x}
    return Matrix(n, n, lambda l, s: entry(t, s, x, y, l) - entry(t, s, y, x, l))


def root_table(n, t, pairs):
    ops = [right_action(n, t, x, y) for x, y in pairs]
    generic = sum((op * (3 ** k) for k, op in enumerate(ops)), Matrix.zeros(n, n))
    table = Counter()
    found = 0
    for _, _, vectors in generic.eigenvects():
        for v in vectors:
            found += 1
            k = next(i for i in range(n) if v[i] != 0)
            table[",".join(str((op * v)[k] / v[k]) for op in ops)] += 1
    assert found == n, "right action is not diagonalizable over Q"
    return table


# ---------- tests ----------

@pytest.fixture(scope="module")
def tensors():
    return {name: load_tensor(name) for name in TRIPLES}


@pytest.mark.parametrize("name", TRIPLES)
def test_j_rank(golden, tensors, name):
    n, t = tensors[name]
    assert j_rank(n, t) == golden["items"][name]["j_rank"]


@pytest.mark.parametrize("name", TRIPLES)
def test_annihilator_rank(golden, tensors, name):
    n, t = tensors[name]
    assert annihilator_rank(n, t) == golden["items"][name]["annihilator_rank"]


@pytest.mark.parametrize(
    "name",
    [n for n in TRIPLES if n not in ("c4_sl2_sum_derived", "c5_hs1_derived")]
    + [pytest.param(n, marks=pytest.mark.slow) for n in ("c4_sl2_sum_derived", "c5_hs1_derived")],
)
def test_embedding_dimensions(golden, tensors, name):
    n, t = tensors[name]
    expected = golden["items"][name]
    K = kernel_rank(n, t)
    assert K == expected["kernel_rank"]
    assert n * n - K == expected["l0_dim"]


@pytest.mark.parametrize("name", SPLIT)
def test_root_tables(golden, tensors, decompositions, name):
    n, t = tensors[name]
    table = root_table(n, t, load_masa_pairs(name))
    zero_key = ",".join("0" for _ in load_masa_pairs(name))
    expected = golden["items"][name]
    assert table.pop(zero_key, 0) == expected["t_zero_rank"]
    assert dict(table) == expected["t_roots"]

    D = decompositions[name]
    assert D.t_zero.rank == expected["t_zero_rank"]
    assert {",".join(str(c) for c in a): s.rank for a, s in D.t_roots.items()} == dict(table)


@pytest.mark.parametrize("name", ["c3_sl2_derived", "c6_hs_standard_derived"])
def test_library_agrees_with_the_oracles(corpus, tensors, name):
    n, t = tensors[name]
    got = annotate(corpus[name])
    assert got["j_rank"] == j_rank(n, t)
    assert got["annihilator_rank"] == annihilator_rank(n, t)
    assert got["kernel_rank"] == kernel_rank(n, t)

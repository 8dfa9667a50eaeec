# ltsplit/leibniz_embedding.py
"""Right Leibniz algebras, derived triple systems and the standard embedding L = L0 + L1."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact_linear import (
    ZERO,
    Subspace,
    canonicalize,
    complement_in,
    intersect,
    kernel,
    lincomb,
    quotient_matrix,
)
from .models import AlgebraError, IdentityReport, Matrix, Vector, Violation
from .triple_core import TripleSystem, mark_verified

logger = logging.getLogger(__name__)

Sparse = Dict[int, Fraction]


@dataclass(frozen=True)
class LeibnizAlgebra:
    dim: int
    table: Tuple[Tuple[Vector, ...], ...]  # table[i][j] = [e_i, e_j]
    basis_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        n = self.dim
        if n < 0 or len(self.table) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.table):
            raise AlgebraError(f"Bracket table does not have shape {n}x{n}x{n}", code="E_DIMENSION_MISMATCH")
        if self.basis_names is not None and len(self.basis_names) != n:
            raise AlgebraError("Basis name list has the wrong length", code="E_PARSE")

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Mapping[Tuple[int, int], Mapping[int, Fraction]],
        basis_names: Optional[Sequence[str]] = None,
    ) -> "LeibnizAlgebra":
        dense = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in entries.items():
            for idx in (i, j, *value.keys()):
                if not 0 <= idx < dim:
                    raise AlgebraError(f"Index {idx} out of range for dimension {dim}", code="E_INDEX_RANGE")
            for l, c in value.items():
                dense[i][j][l] = Fraction(c)
        table = tuple(tuple(tuple(v) for v in row) for row in dense)
        return cls(dim, table, tuple(basis_names) if basis_names else None)

    @cached_property
    def nonzero(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]:
        out = {}
        for i, j in itertools.product(range(self.dim), repeat=2):
            terms = tuple((l, c) for l, c in enumerate(self.table[i][j]) if c)
            if terms:
                out[(i, j)] = terms
        return out

    def entries(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        return {key: dict(terms) for key, terms in self.nonzero.items()}

    def with_entry(self, i: int, j: int, l: int, value: Fraction) -> "LeibnizAlgebra":
        data = self.entries()
        data.setdefault((i, j), {})[l] = Fraction(value)
        return LeibnizAlgebra.from_entries(self.dim, data, self.basis_names)


def direct_sum_algebras(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    shift = a.dim
    data = a.entries()
    for (i, j), terms in b.nonzero.items():
        data[(i + shift, j + shift)] = {l + shift: c for l, c in terms}
    names = None
    if a.basis_names and b.basis_names:
        names = tuple(f"{x}_1" for x in a.basis_names) + tuple(f"{x}_2" for x in b.basis_names)
    return LeibnizAlgebra.from_entries(a.dim + b.dim, data, names)


def _sbracket(L: LeibnizAlgebra, x: Sparse, y: Sparse) -> Sparse:
    out: Sparse = {}
    nz = L.nonzero
    for i, a in x.items():
        for j, b in y.items():
            terms = nz.get((i, j))
            if not terms:
                continue
            ab = a * b
            for l, c in terms:
                val = out.get(l, ZERO) + ab * c
                if val:
                    out[l] = val
                else:
                    out.pop(l, None)
    return out


def _dense(s: Sparse, n: int) -> Vector:
    out = [ZERO] * n
    for i, c in s.items():
        out[i] = c
    return tuple(out)


def bracket(L: LeibnizAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    if len(x) != L.dim or len(y) != L.dim:
        raise AlgebraError("Vector length does not match the algebra", code="E_DIMENSION_MISMATCH")
    sx = {i: c for i, c in enumerate(x) if c}
    sy = {i: c for i, c in enumerate(y) if c}
    return _dense(_sbracket(L, sx, sy), L.dim)


def check_right_leibniz(L: LeibnizAlgebra, limit: Optional[int] = None) -> IdentityReport:
    """[[y,z],x] = [[y,x],z] + [y,[z,x]] on basis triples; violations are indexed (y, z, x)."""
    found: List[Violation] = []
    truncated = False
    one = Fraction(1)
    for y, z, x in itertools.product(range(L.dim), repeat=3):
        X, Y, Z = {x: one}, {y: one}, {z: one}
        lhs = _sbracket(L, _sbracket(L, Y, Z), X)
        rhs1 = _sbracket(L, _sbracket(L, Y, X), Z)
        rhs2 = _sbracket(L, Y, _sbracket(L, Z, X))
        defect = dict(lhs)
        for part in (rhs1, rhs2):
            for l, c in part.items():
                defect[l] = defect.get(l, ZERO) - c
        defect = {l: c for l, c in defect.items() if c}
        if defect:
            if limit is not None and len(found) >= limit:
                truncated = True
                break
            found.append(Violation("RIGHT_LEIBNIZ", (y, z, x), _dense(defect, L.dim)))
    return IdentityReport(passed=not found, violations=tuple(found), truncated=truncated)


def derived_triple_system(L: LeibnizAlgebra) -> TripleSystem:
    """{x,y,z} = [[x,y],z]."""
    report = check_right_leibniz(L, limit=1)
    if not report.passed:
        v = report.violations[0]
        raise AlgebraError(
            f"Not a right Leibniz algebra: identity fails at (y, z, x) = {v.indices}",
            code="E_NOT_LEIBNIZ",
            detail={"indices": list(v.indices)},
        )
    if L.dim < 1:
        raise AlgebraError("Cannot derive a triple system from a zero-dimensional algebra", code="E_PARSE")
    one = Fraction(1)
    entries = {}
    for i, j, k in itertools.product(range(L.dim), repeat=3):
        val = _sbracket(L, _sbracket(L, {i: one}, {j: one}), {k: one})
        if val:
            entries[(i, j, k)] = val
    T = TripleSystem.from_entries(L.dim, entries, L.basis_names)
    try:
        return mark_verified(T)
    except AlgebraError as e:
        raise AlgebraError(f"Derived system fails its identities: {e}", code="E_INTERNAL", detail=e.detail) from e


# ---------- standard embedding ----------

@dataclass(frozen=True)
class StandardEmbedding:
    base: TripleSystem
    kernel: Subspace            # K inside the n^2-dimensional pair space
    l0_dim: int
    pair_map: Matrix            # l0_dim x n^2, pair coordinates -> L0 coordinates
    algebra: LeibnizAlgebra     # L0 coordinates first, then T
    free_pairs: Tuple[Tuple[int, int], ...]  # pair e_i (x) e_j lifting each L0 basis vector

    @property
    def n(self) -> int:
        return self.base.dim

    def pair_column(self, i: int, j: int) -> Vector:
        p = i * self.n + j
        return tuple(row[p] for row in self.pair_map)


def _pair_product(T: TripleSystem, p: Tuple[int, int], q: Tuple[int, int]) -> Sparse:
    """[x(x)y, u(x)v] = {x,y,u}(x)v - {x,y,v}(x)u in pair coordinates."""
    n = T.dim
    (x, y), (u, v) = p, q
    out: Sparse = {}
    for l, c in T.nonzero.get((x, y, u), ()):
        out[l * n + v] = out.get(l * n + v, ZERO) + c
    for l, c in T.nonzero.get((x, y, v), ()):
        out[l * n + u] = out.get(l * n + u, ZERO) - c
    return {k: c for k, c in out.items() if c}


def _action_rows(T: TripleSystem) -> List[Vector]:
    n = T.dim
    pairs = list(itertools.product(range(n), repeat=2))
    rows = []
    for t, l in itertools.product(range(n), repeat=2):
        rows.append(tuple(T.tensor[x][y][t][l] for x, y in pairs))
    for z, l in itertools.product(range(n), repeat=2):
        rows.append(tuple(T.tensor[z][x][y][l] - T.tensor[z][y][x][l] for x, y in pairs))
    return [r for r in rows if any(r)]


def _multiplication_rows(T: TripleSystem, q: Matrix) -> List[Vector]:
    """Rows of q . M for every left and right multiplication M by a pure pair."""
    n = T.dim
    pairs = list(itertools.product(range(n), repeat=2))
    rows: List[Vector] = []
    for fixed in pairs:
        for side in (0, 1):
            cols = [_pair_product(T, p, fixed) if side == 0 else _pair_product(T, fixed, p) for p in pairs]
            if not any(cols):
                continue
            for qrow in q:
                acc = tuple(sum((qrow[k] * c for k, c in col.items()), ZERO) for col in cols)
                if any(acc):
                    rows.append(acc)
    return rows


def faithfulness_kernel(T: TripleSystem) -> Subspace:
    """Largest subspace of ker(Lmap) and ker(Rmap) stable under multiplication by pure pairs."""
    N = T.dim * T.dim
    U = kernel(_action_rows(T), N)
    rounds = 0
    while not U.is_zero() and not U.is_full():
        rows = _multiplication_rows(T, quotient_matrix(U))
        nxt = intersect(U, kernel(rows, N))
        rounds += 1
        if nxt.rank == U.rank:
            break
        U = nxt
    logger.info("faithfulness kernel: rank %d of %d after %d round(s)", U.rank, N, rounds)
    return U


def standard_embedding(T: TripleSystem) -> StandardEmbedding:
    try:
        T = mark_verified(T)
    except AlgebraError as e:
        raise AlgebraError(str(e), code="E_NOT_LEIBNIZ_TRIPLE", detail=e.detail) from e
    n = T.dim
    K = faithfulness_kernel(T)
    q = quotient_matrix(K)
    l0 = len(q)
    free = tuple(divmod(f, n) for f in K.free_columns)

    def to_l0(s: Sparse) -> Dict[int, Fraction]:
        out = {}
        for a, row in enumerate(q):
            val = sum((row[k] * c for k, c in s.items()), ZERO)
            if val:
                out[a] = val
        return out

    entries: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for a, b in itertools.product(range(l0), repeat=2):
        val = to_l0(_pair_product(T, free[a], free[b]))
        if val:
            entries[(a, b)] = val
    for a, w in itertools.product(range(l0), range(n)):
        x, y = free[a]
        terms = T.nonzero.get((x, y, w), ())
        if terms:
            entries[(a, l0 + w)] = {l0 + l: c for l, c in terms}
    for z, b in itertools.product(range(n), range(l0)):
        u, v = free[b]
        val: Dict[int, Fraction] = {}
        for l, c in T.nonzero.get((z, u, v), ()):
            val[l0 + l] = val.get(l0 + l, ZERO) + c
        for l, c in T.nonzero.get((z, v, u), ()):
            val[l0 + l] = val.get(l0 + l, ZERO) - c
        val = {k: c for k, c in val.items() if c}
        if val:
            entries[(l0 + z, b)] = val
    for z, w in itertools.product(range(n), repeat=2):
        val = to_l0({z * n + w: Fraction(1)})
        if val:
            entries[(l0 + z, l0 + w)] = val

    names = None
    if T.basis_names:
        names = tuple(f"{T.basis_names[i]}*{T.basis_names[j]}" for i, j in free) + T.basis_names
    algebra = LeibnizAlgebra.from_entries(l0 + n, entries, names)
    E = StandardEmbedding(base=T, kernel=K, l0_dim=l0, pair_map=q, algebra=algebra, free_pairs=free)

    report = check_right_leibniz(algebra, limit=1)
    if not report.passed:
        v = report.violations[0]
        raise AlgebraError(
            f"Standard embedding fails the right Leibniz identity at (y, z, x) = {v.indices}",
            code="E_EMBEDDING_DEFECT",
            detail={"indices": list(v.indices)},
        )
    bad = check_grading(E)
    if bad:
        raise AlgebraError(f"Standard embedding breaks the grading at {bad[0]}", code="E_EMBEDDING_DEFECT",
                           detail={"indices": list(bad[0])})
    if not check_right_leibniz(l0_algebra(E), limit=1).passed:
        raise AlgebraError("L0 with the induced product is not right Leibniz", code="E_EMBEDDING_DEFECT")
    logger.info("standard embedding: dim T = %d, l0_dim = %d, rank K = %d", n, l0, K.rank)
    return E


def check_grading(E: StandardEmbedding) -> List[Tuple[int, int]]:
    """Basis pairs whose bracket leaves the block predicted by the two-grading."""
    l0 = E.l0_dim
    bad = []
    for (a, b), terms in E.algebra.nonzero.items():
        to_l0 = (a < l0) == (b < l0)
        if any((l < l0) != to_l0 for l, _ in terms):
            bad.append((a, b))
    return bad


def l0_algebra(E: StandardEmbedding) -> LeibnizAlgebra:
    l0 = E.l0_dim
    entries = {
        key: dict(terms) for key, terms in E.algebra.nonzero.items() if key[0] < l0 and key[1] < l0
    }
    names = E.algebra.basis_names[:l0] if E.algebra.basis_names else None
    return LeibnizAlgebra.from_entries(l0, entries, names)


# ---------- coordinates & actions ----------

def embed_l0(E: StandardEmbedding, v: Sequence[Fraction]) -> Vector:
    if len(v) != E.l0_dim:
        raise AlgebraError(f"Vector of length {len(v)} is not in L0 (dim {E.l0_dim})", code="E_NOT_IN_L0")
    return tuple(v) + (ZERO,) * E.n


def embed_t(E: StandardEmbedding, t: Sequence[Fraction]) -> Vector:
    if len(t) != E.n:
        raise AlgebraError(f"Vector of length {len(t)} is not in T (dim {E.n})", code="E_DIMENSION_MISMATCH")
    return (ZERO,) * E.l0_dim + tuple(t)


def l0_part(E: StandardEmbedding, w: Sequence[Fraction]) -> Vector:
    return tuple(w[: E.l0_dim])


def t_part(E: StandardEmbedding, w: Sequence[Fraction]) -> Vector:
    return tuple(w[E.l0_dim:])


def l0_bracket(E: StandardEmbedding, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return l0_part(E, bracket(E.algebra, embed_l0(E, x), embed_l0(E, y)))


def t_bracket(E: StandardEmbedding, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    """[x, y] = x (x) y for x, y in T, in L0 coordinates."""
    return l0_part(E, bracket(E.algebra, embed_t(E, x), embed_t(E, y)))


def l0_on_t(E: StandardEmbedding, d: Sequence[Fraction], t: Sequence[Fraction]) -> Vector:
    return t_part(E, bracket(E.algebra, embed_l0(E, d), embed_t(E, t)))


def t_on_l0(E: StandardEmbedding, t: Sequence[Fraction], d: Sequence[Fraction]) -> Vector:
    return t_part(E, bracket(E.algebra, embed_t(E, t), embed_l0(E, d)))


def pair_vector(E: StandardEmbedding, terms: Sequence[Tuple[int, int, Fraction]]) -> Vector:
    """L0 coordinates of sum c * (e_i (x) e_j)."""
    n = E.n
    out = [ZERO] * E.l0_dim
    for i, j, c in terms:
        if not (0 <= i < n and 0 <= j < n):
            raise AlgebraError(f"Pair ({i}, {j}) out of range for dimension {n}", code="E_INDEX_RANGE")
        for a, x in enumerate(E.pair_column(i, j)):
            out[a] += c * x
    return tuple(out)


def right_action_on_t(E: StandardEmbedding, h: Sequence[Fraction]) -> Matrix:
    """Matrix of t -> [t, h] on T."""
    n = E.n
    cols = [t_on_l0(E, tuple(Fraction(int(i == k)) for i in range(n)), h) for k in range(n)]
    return tuple(tuple(cols[k][r] for k in range(n)) for r in range(n))


def right_action_on_l0(E: StandardEmbedding, h: Sequence[Fraction]) -> Matrix:
    """Matrix of v -> [v, h] on L0."""
    m = E.l0_dim
    cols = [l0_bracket(E, tuple(Fraction(int(i == k)) for i in range(m)), h) for k in range(m)]
    return tuple(tuple(cols[k][r] for k in range(m)) for r in range(m))


def _left_action_on_l0(E: StandardEmbedding, h: Sequence[Fraction]) -> Matrix:
    m = E.l0_dim
    cols = [l0_bracket(E, h, tuple(Fraction(int(i == k)) for i in range(m))) for k in range(m)]
    return tuple(tuple(cols[k][r] for k in range(m)) for r in range(m))


# ---------- MASA verification ----------

@dataclass(frozen=True)
class MasaCheck:
    abelian: bool
    maximal: str                # yes | no | undetermined
    centralizer: Subspace

    def to_dict(self) -> Dict[str, object]:
        return {"abelian": self.abelian, "maximal": self.maximal, "centralizer": self.centralizer.to_dict()}


def masa_check(E: StandardEmbedding, H: Sequence[Sequence[Fraction]]) -> MasaCheck:
    m = E.l0_dim
    H = [tuple(h) for h in H]
    for h in H:
        if len(h) != m:
            raise AlgebraError(f"MASA element of length {len(h)} is not in L0 (dim {m})", code="E_NOT_IN_L0")
    abelian = all(not any(l0_bracket(E, a, b)) for a in H for b in H)

    rows: List[Vector] = []
    for h in H:
        rows.extend(r for r in right_action_on_l0(E, h) if any(r))
        rows.extend(r for r in _left_action_on_l0(E, h) if any(r))
    Z = kernel(rows, m)
    span_h = canonicalize(H, m)
    if Z == span_h:
        maximal = "yes"
    else:
        # A square-zero element of the centralizer outside span H extends it.
        extra = complement_in(intersect(span_h, Z), Z)
        probes = list(extra) + [
            tuple(a + b for a, b in zip(u, v)) for u, v in itertools.combinations(extra, 2)
        ]
        maximal = "no" if any(not any(l0_bracket(E, z, z)) for z in probes) else "undetermined"
    logger.info("masa check: abelian=%s maximal=%s centralizer rank=%d", abelian, maximal, Z.rank)
    return MasaCheck(abelian=abelian, maximal=maximal, centralizer=Z)


def masa_from_pairs(E: StandardEmbedding, elements: Sequence[Sequence[Tuple[int, int, Fraction]]]) -> List[Vector]:
    return [pair_vector(E, terms) for terms in elements]


def lift_combination(E: StandardEmbedding, coeffs: Sequence[Fraction], H: Sequence[Vector]) -> Vector:
    return lincomb(coeffs, H, E.l0_dim)

# ltsplit/triple_core.py
"""Leibniz triple systems given by structure constants.

The product is stored densely as ``tensor[i][j][k]`` (a vector) and mirrored in a sparse cache of
nonzero coefficients, which is what the identity checker and the subspace products iterate over.
"""
from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exact_linear import (
    ZERO,
    Subspace,
    canonicalize,
    compose,
    full_space,
    intersect,
    is_subspace_of,
    kernel,
    quotient_matrix,
    span_of_spaces,
    subspace_sum,
    zero_space,
)
from .models import AlgebraError, IdentityReport, Matrix, Vector, Violation

logger = logging.getLogger(__name__)

Sparse = Dict[int, Fraction]


@dataclass(frozen=True)
class TripleSystem:
    dim: int
    tensor: Tuple[Tuple[Tuple[Vector, ...], ...], ...]
    basis_names: Optional[Tuple[str, ...]] = None
    verified: bool = False

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise AlgebraError("A triple system needs dimension at least 1", code="E_PARSE")
        ok = len(self.tensor) == n and all(
            len(plane) == n and all(len(line) == n and all(len(v) == n for v in line) for line in plane)
            for plane in self.tensor
        )
        if not ok:
            raise AlgebraError(f"Structure tensor does not have shape {n}x{n}x{n}x{n}", code="E_DIMENSION_MISMATCH")
        if self.basis_names is not None and len(self.basis_names) != n:
            raise AlgebraError("Basis name list has the wrong length", code="E_PARSE")

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Mapping[Tuple[int, int, int], Mapping[int, Fraction]],
        basis_names: Optional[Sequence[str]] = None,
    ) -> "TripleSystem":
        dense = [[[[ZERO] * dim for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in entries.items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise AlgebraError(f"Index {idx} out of range for dimension {dim}", code="E_INDEX_RANGE")
            for l, c in value.items():
                if not 0 <= l < dim:
                    raise AlgebraError(f"Index {l} out of range for dimension {dim}", code="E_INDEX_RANGE")
                dense[i][j][k][l] = Fraction(c)
        tensor = tuple(tuple(tuple(tuple(v) for v in line) for line in plane) for plane in dense)
        return cls(dim, tensor, tuple(basis_names) if basis_names else None)

    @classmethod
    def zero(cls, dim: int) -> "TripleSystem":
        return cls.from_entries(dim, {})

    @cached_property
    def nonzero(self) -> Dict[Tuple[int, int, int], Tuple[Tuple[int, Fraction], ...]]:
        """Sparse view: (i, j, k) -> ((l, c_ijk^l), ...) for nonzero entries only."""
        out = {}
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            terms = tuple((l, c) for l, c in enumerate(self.tensor[i][j][k]) if c)
            if terms:
                out[(i, j, k)] = terms
        return out

    def entries(self) -> Dict[Tuple[int, int, int], Dict[int, Fraction]]:
        return {key: dict(terms) for key, terms in self.nonzero.items()}

    def with_entry(self, i: int, j: int, k: int, l: int, value: Fraction) -> "TripleSystem":
        data = self.entries()
        data.setdefault((i, j, k), {})[l] = Fraction(value)
        return TripleSystem.from_entries(self.dim, data, self.basis_names)


def direct_sum(a: TripleSystem, b: TripleSystem) -> TripleSystem:
    shift = a.dim
    data: Dict[Tuple[int, int, int], Dict[int, Fraction]] = {}
    for key, terms in a.nonzero.items():
        data[key] = dict(terms)
    for (i, j, k), terms in b.nonzero.items():
        data[(i + shift, j + shift, k + shift)] = {l + shift: c for l, c in terms}
    return TripleSystem.from_entries(a.dim + b.dim, data)


# ---------- products ----------

def _sparse(v: Sequence[Fraction]) -> Sparse:
    return {i: c for i, c in enumerate(v) if c}


def _dense(s: Sparse, n: int) -> Vector:
    out = [ZERO] * n
    for i, c in s.items():
        out[i] = c
    return tuple(out)


def _sparse_product(T: TripleSystem, x: Sparse, y: Sparse, z: Sparse) -> Sparse:
    out: Sparse = {}
    nz = T.nonzero
    for i, a in x.items():
        for j, b in y.items():
            ab = a * b
            for k, c in z.items():
                terms = nz.get((i, j, k))
                if not terms:
                    continue
                abc = ab * c
                for l, coeff in terms:
                    val = out.get(l, ZERO) + abc * coeff
                    if val:
                        out[l] = val
                    else:
                        out.pop(l, None)
    return out


def triple_product(T: TripleSystem, x: Sequence[Fraction], y: Sequence[Fraction], z: Sequence[Fraction]) -> Vector:
    for v in (x, y, z):
        if len(v) != T.dim:
            raise AlgebraError(
                f"Vector of length {len(v)} for a system of dimension {T.dim}", code="E_DIMENSION_MISMATCH"
            )
    return _dense(_sparse_product(T, _sparse(x), _sparse(y), _sparse(z)), T.dim)


def products_span(T: TripleSystem, a: Subspace, b: Subspace, c: Subspace) -> Subspace:
    """span{ {x, y, z} : x in a, y in b, z in c }."""
    rows = []
    for x in a.basis:
        sx = _sparse(x)
        for y in b.basis:
            sy = _sparse(y)
            for z in c.basis:
                p = _sparse_product(T, sx, sy, _sparse(z))
                if p:
                    rows.append(_dense(p, T.dim))
    return canonicalize(rows, T.dim)


def product_spans_whole(T: TripleSystem) -> bool:
    rows = [_dense(dict(terms), T.dim) for terms in T.nonzero.values()]
    return canonicalize(rows, T.dim).is_full()


def slot_map(T: TripleSystem, slot: int, j: int, k: int) -> Matrix:
    """Matrix of x -> product with x in position ``slot`` and e_j, e_k in the others (in order)."""
    n = T.dim
    cols = []
    for i in range(n):
        key = ((i, j, k), (j, i, k), (j, k, i))[slot]
        cols.append(T.tensor[key[0]][key[1]][key[2]])
    return tuple(tuple(cols[i][l] for i in range(n)) for l in range(n))


# ---------- identities ----------

def _basis(i: int) -> Sparse:
    return {i: Fraction(1)}


def _combine(n: int, *terms: Tuple[int, Sparse]) -> Sparse:
    out: Sparse = {}
    for sign, vec in terms:
        for l, c in vec.items():
            val = out.get(l, ZERO) + sign * c
            if val:
                out[l] = val
            else:
                out.pop(l, None)
    return out


def _quintuple_defects(T: TripleSystem, a: int, b: int, c: int, d: int, e: int) -> Iterator[Tuple[str, Sparse]]:
    P = lambda x, y, z: _sparse_product(T, x, y, z)  # noqa: E731
    A, B, C, D, E = (_basis(t) for t in (a, b, c, d, e))
    n = T.dim

    # {a,{b,c,d},e} = {{a,b,c},d,e} - {{a,c,b},d,e} - {{a,d,b},c,e} + {{a,d,c},b,e}
    lhs = P(A, P(B, C, D), E)
    rhs = _combine(n, (1, P(P(A, B, C), D, E)), (-1, P(P(A, C, B), D, E)),
                   (-1, P(P(A, D, B), C, E)), (1, P(P(A, D, C), B, E)))
    yield "EQ1", _combine(n, (1, lhs), (-1, rhs))

    # {a,b,{c,d,e}} = {{a,b,c},d,e} - {{a,b,d},c,e} - {{a,b,e},c,d} + {{a,b,e},d,c}
    lhs = P(A, B, P(C, D, E))
    rhs = _combine(n, (1, P(P(A, B, C), D, E)), (-1, P(P(A, B, D), C, E)),
                   (-1, P(P(A, B, E), C, D)), (1, P(P(A, B, E), D, C)))
    yield "EQ2", _combine(n, (1, lhs), (-1, rhs))

    # {{c,d,e},b,a} - {{c,d,e},a,b} - {{c,b,a},d,e} + {{c,a,b},d,e} - {c,{a,b,d},e} - {c,d,{a,b,e}} = 0
    cde = P(C, D, E)
    yield "PROP3", _combine(n, (1, P(cde, B, A)), (-1, P(cde, A, B)), (-1, P(P(C, B, A), D, E)),
                            (1, P(P(C, A, B), D, E)), (-1, P(C, P(A, B, D), E)), (-1, P(C, D, P(A, B, E))))


def iter_violations(T: TripleSystem) -> Iterator[Violation]:
    """Stream identity violations over all basis quintuples in lexicographic order."""
    for idx in itertools.product(range(T.dim), repeat=5):
        for name, defect in _quintuple_defects(T, *idx):
            if defect:
                yield Violation(name, idx, _dense(defect, T.dim))


def check_leibniz_triple(T: TripleSystem, limit: Optional[int] = None) -> IdentityReport:
    found: List[Violation] = []
    truncated = False
    for v in iter_violations(T):
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        found.append(v)
    if found:
        logger.info("identity check: %d violation(s)%s", len(found), " (truncated)" if truncated else "")
    return IdentityReport(passed=not found, violations=tuple(found), truncated=truncated)


def mark_verified(T: TripleSystem) -> TripleSystem:
    if T.verified:
        return T
    report = check_leibniz_triple(T, limit=1)
    if not report.passed:
        v = report.violations[0]
        raise AlgebraError(
            f"Not a Leibniz triple system: {v.identity} fails at {v.indices}",
            code="E_NOT_LEIBNIZ_TRIPLE",
            detail={"identity": v.identity, "indices": list(v.indices)},
        )
    return dataclasses.replace(T, verified=True)


# ---------- J, annihilator, ideals ----------

def j_generators(T: TripleSystem) -> Subspace:
    rows = []
    n = T.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        g = _combine(n, (1, dict(T.nonzero.get((i, j, k), ()))), (-1, dict(T.nonzero.get((i, k, j), ()))),
                     (1, dict(T.nonzero.get((j, k, i), ()))))
        if g:
            rows.append(_dense(g, n))
    return canonicalize(rows, n)


def check_j_properties(T: TripleSystem, J: Subspace) -> Dict[str, bool]:
    whole = full_space(T.dim)
    return {
        "TTJ_zero": products_span(T, whole, whole, J).is_zero(),
        "TJT_zero": products_span(T, whole, J, whole).is_zero(),
    }


def j_ideal(T: TripleSystem) -> Subspace:
    J = ideal_closure(T, j_generators(T))
    props = check_j_properties(T, J)
    if all(props.values()):
        logger.info("J has rank %d; {T,T,J} = {T,J,T} = 0 verified", J.rank)
    else:
        logger.warning("J has rank %d but fails %s", J.rank, [k for k, ok in props.items() if not ok])
    return J


def is_lie_triple_system(T: TripleSystem) -> bool:
    return j_ideal(T).is_zero()


def _slot_rows(T: TripleSystem, U: Subspace) -> List[Vector]:
    """Rows cutting out {x : {x,u,v} = {u,x,v} = {u,v,x} = 0 for u, v in U}."""
    n = T.dim
    rows: List[Vector] = []
    for u in U.basis:
        for v in U.basis:
            for slot in range(3):
                cols = []
                for i in range(n):
                    e = _basis(i)
                    args = [_sparse(u), _sparse(v)]
                    args.insert(slot, e)
                    cols.append(_dense(_sparse_product(T, *args), n))
                m = tuple(tuple(cols[i][l] for i in range(n)) for l in range(n))
                rows.extend(r for r in m if any(r))
    return rows


def annihilated_by(T: TripleSystem, U: Subspace) -> Subspace:
    return kernel(_slot_rows(T, U), T.dim)


def annihilator(T: TripleSystem) -> Subspace:
    n = T.dim
    rows = []
    for j, k in itertools.product(range(n), repeat=2):
        for slot in range(3):
            rows.extend(r for r in slot_map(T, slot, j, k) if any(r))
    return kernel(rows, n)


def _one_step(T: TripleSystem, S: Subspace) -> Subspace:
    whole = full_space(T.dim)
    return span_of_spaces(
        [S, products_span(T, S, whole, whole), products_span(T, whole, S, whole), products_span(T, whole, whole, S)],
        T.dim,
    )


def ideal_closure(T: TripleSystem, S: Subspace) -> Subspace:
    _match(T, S)
    current = S
    while True:
        nxt = _one_step(T, current)
        if nxt.rank == current.rank:
            return current
        current = nxt


def largest_ideal_within(T: TripleSystem, W: Subspace, floor: Optional[Subspace] = None) -> Subspace:
    """Largest U inside W with U + floor an ideal (floor = 0 gives the largest ideal inside W)."""
    n = T.dim
    _match(T, W)
    floor = floor if floor is not None else zero_space(n)
    _match(T, floor)
    U = W
    rounds = 0
    while not U.is_zero():
        target = subspace_sum(U, floor)
        if target.is_full():
            break
        q = quotient_matrix(target)
        rows: List[Vector] = []
        for j, k in itertools.product(range(n), repeat=2):
            for slot in range(3):
                rows.extend(r for r in compose(q, slot_map(T, slot, j, k), n) if any(r))
        nxt = intersect(U, kernel(rows, n))
        rounds += 1
        if nxt.rank == U.rank:
            break
        U = nxt
    logger.debug("largest_ideal_within: rank %d after %d round(s)", U.rank, rounds)
    return U


def is_ideal(T: TripleSystem, S: Subspace) -> bool:
    _match(T, S)
    return _one_step(T, S).rank == S.rank


def is_subsystem(T: TripleSystem, S: Subspace) -> bool:
    _match(T, S)
    return is_subspace_of(products_span(T, S, S, S), S)


def product_of_ideals(T: TripleSystem, I: Subspace, K: Subspace) -> Subspace:
    """{I,K,I} + {K,I,I} + {I,I,K}."""
    return span_of_spaces([products_span(T, I, K, I), products_span(T, K, I, I), products_span(T, I, I, K)], T.dim)


def _match(T: TripleSystem, S: Subspace) -> None:
    if S.ambient_dim != T.dim:
        raise AlgebraError(
            f"Subspace of a {S.ambient_dim}-dimensional space used with a system of dimension {T.dim}",
            code="E_DIMENSION_MISMATCH",
        )


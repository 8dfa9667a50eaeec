# ltsplit/exact_linear.py
"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction``; vectors and matrices are tuples of them. Row reduction and
characteristic polynomials are delegated to sympy's ``DomainMatrix`` over ``QQ`` so that nothing
is ever rounded. Every subspace is held in reduced row-echelon form, which makes equality of
subspaces equality of bases.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .models import AlgebraError, Matrix, MissingDepsError, Vector

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def _sympy():
    try:
        from sympy import Dummy, Poly, QQ
        from sympy.polys.matrices import DomainMatrix
    except Exception as e:  # pragma: no cover - exercised only without sympy
        raise MissingDepsError("sympy is required for exact row reduction. Install 'sympy'.") from e
    return Dummy, Poly, QQ, DomainMatrix


# ---------- scalars ----------

def to_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, ints and Fractions. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise AlgebraError(f"Scalar {value!r} is not an exact rational", code="E_BAD_SCALAR")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_ "):
            raise AlgebraError(f"Scalar {value!r} is not of the form p/q", code="E_BAD_SCALAR")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise AlgebraError(f"Scalar {value!r} is not of the form p/q", code="E_BAD_SCALAR") from e
    raise AlgebraError(f"Scalar {value!r} has unsupported type {type(value).__name__}", code="E_BAD_SCALAR")


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_vector(v: Sequence[Fraction]) -> List[str]:
    return [format_scalar(x) for x in v]


def format_matrix(m: Sequence[Sequence[Fraction]]) -> List[List[str]]:
    return [format_vector(row) for row in m]


# ---------- vectors & matrices ----------

def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    _same_length(u, v)
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def lincomb(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in m)


def compose(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> Matrix:
    """Matrix product ``a @ b`` (rows of ``a`` against rows of ``b``), skipping zero entries."""
    width = len(b[0]) if b else (ncols or 0)
    out = []
    for row in a:
        acc = [ZERO] * width
        for q, coeff in enumerate(row):
            if not coeff:
                continue
            for p, val in enumerate(b[q]):
                if val:
                    acc[p] += coeff * val
        out.append(tuple(acc))
    return tuple(out)


def transpose(m: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    return tuple(tuple(row[c] for row in m) for c in range(ncols))


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def _same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise AlgebraError(
            f"Vectors of length {len(u)} and {len(v)} cannot be combined", code="E_DIMENSION_MISMATCH"
        )


# ---------- row reduction ----------

def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row-echelon form. Returns the nonzero rows and the pivot columns."""
    rows = [r for r in rows if any(r)]
    if not rows or ncols == 0:
        return (), ()
    for r in rows:
        if len(r) != ncols:
            raise AlgebraError(f"Row of length {len(r)} in a {ncols}-column matrix", code="E_DIMENSION_MISMATCH")
    _, _, QQ, DomainMatrix = _sympy()
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in r] for r in rows]
    reduced, pivots = DomainMatrix(data, (len(rows), ncols), QQ).rref()
    dense = reduced.rep.to_ddm()
    out = tuple(
        tuple(Fraction(int(e.numerator), int(e.denominator)) for e in dense[i])
        for i in range(len(pivots))
    )
    return out, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix  # canonical: reduced row-echelon, nonzero rows

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    @cached_property
    def free_columns(self) -> Tuple[int, ...]:
        taken = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in taken)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residue of ``v`` after elimination against the canonical basis."""
        if len(v) != self.ambient_dim:
            raise AlgebraError(
                f"Vector of length {len(v)} in a {self.ambient_dim}-dimensional space",
                code="E_DIMENSION_MISMATCH",
            )
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        out[k] -= c * a
        return tuple(out)

    def to_dict(self) -> Dict[str, object]:
        return {"ambient_dim": self.ambient_dim, "rank": self.rank, "basis": format_matrix(self.basis)}


def canonicalize(vectors: Iterable[Sequence[Fraction]], ambient_dim: Optional[int] = None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise AlgebraError("Empty spanning set needs an explicit ambient dimension", code="E_DIMENSION_MISMATCH")
        ambient_dim = len(vectors[0])
    for v in vectors:
        if len(v) != ambient_dim:
            raise AlgebraError(
                f"Vector of length {len(v)} in a {ambient_dim}-dimensional span", code="E_DIMENSION_MISMATCH"
            )
    basis, _ = rref(vectors, ambient_dim)
    return Subspace(ambient_dim, basis)


def zero_space(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, identity_matrix(n))


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AlgebraError(
            f"Subspaces of dimensions {a.ambient_dim} and {b.ambient_dim} cannot be compared",
            code="E_DIMENSION_MISMATCH",
        )


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    return canonicalize(a.basis + b.basis, a.ambient_dim)


def span_of_spaces(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    rows: List[Vector] = []
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise AlgebraError("Mixed ambient dimensions in a sum", code="E_DIMENSION_MISMATCH")
        rows.extend(s.basis)
    return canonicalize(rows, ambient_dim)


def contains(a: Subspace, v: Sequence[Fraction]) -> bool:
    return is_zero(a.reduce(v))


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    _check_same_ambient(a, b)
    return all(contains(b, v) for v in a.basis)


def kernel(rows: Sequence[Sequence[Fraction]], ncols: int) -> Subspace:
    """Null space of the matrix with the given rows, acting on column vectors of length ``ncols``."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return canonicalize(out, ncols)


def annihilator_rows(s: Subspace) -> Matrix:
    """Rows whose common kernel is exactly ``s``."""
    return kernel(s.basis, s.ambient_dim).basis if s.basis else identity_matrix(s.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    if a.is_zero() or b.is_zero():
        return zero_space(a.ambient_dim)
    if a.is_full():
        return b
    if b.is_full():
        return a
    return kernel(annihilator_rows(a) + annihilator_rows(b), a.ambient_dim)


def image(m: Sequence[Sequence[Fraction]], nrows: int) -> Subspace:
    """Column space of an ``nrows``-row matrix."""
    ncols = len(m[0]) if m else 0
    return canonicalize(transpose(m, ncols), nrows)


def quotient_matrix(s: Subspace) -> Matrix:
    """Rows mapping ``v`` to its coordinates modulo ``s``, read off the free columns of ``s``."""
    n = s.ambient_dim
    out = []
    for f in s.free_columns:
        row = [ZERO] * n
        row[f] = ONE
        for brow, p in zip(s.basis, s.pivots):
            if brow[f]:
                row[p] = -brow[f]
        out.append(tuple(row))
    return tuple(out)


def complement_in(s: Subspace, z: Subspace) -> Tuple[Vector, ...]:
    """Basis vectors of ``z`` that extend a basis of ``s`` (assumes ``s`` inside ``z``)."""
    picked: List[Vector] = []
    current = s
    for v in z.basis:
        if not contains(current, v):
            picked.append(v)
            current = subspace_sum(current, canonicalize([v], z.ambient_dim))
    return tuple(picked)


def solve_in_span(vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[Vector]:
    """Coefficients c with sum c_i v_i = target, or None when target is outside the span."""
    n = len(target)
    k = len(vectors)
    # Solve via the kernel of [v_1 ... v_k | -target].
    cols = [tuple(v) for v in vectors] + [tuple(-x for x in target)]
    sol = kernel(transpose(cols, n), k + 1)
    for v in sol.basis:
        if v[k]:
            return tuple(x / v[k] for x in v[:k])
    return None


# ---------- eigen-decomposition ----------

def rational_eigenvalues(m: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Distinct eigenvalues of ``m``; raises if any root of the characteristic polynomial is irrational."""
    n = len(m)
    if n == 0:
        return []
    Dummy, Poly, QQ, DomainMatrix = _sympy()
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in m]
    coeffs = DomainMatrix(data, (n, n), QQ).charpoly()
    lam = Dummy("lambda")
    poly = Poly([QQ.to_sympy(c) for c in coeffs], lam, domain="QQ")
    _, factors = poly.factor_list()
    roots = []
    for factor, _mult in factors:
        if factor.degree() != 1:
            raise AlgebraError(
                f"Characteristic polynomial has the irreducible factor {factor.as_expr()} over Q",
                code="E_IRRATIONAL_OR_DEFECTIVE",
            )
        a, b = factor.all_coeffs()
        r = -b / a
        roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


def _shifted(m: Sequence[Sequence[Fraction]], lam: Fraction) -> Matrix:
    return tuple(tuple(x - lam if i == j else x for j, x in enumerate(row)) for i, row in enumerate(m))


def eigenspaces(m: Sequence[Sequence[Fraction]]) -> List[Tuple[Fraction, Subspace]]:
    n = len(m)
    out = [(lam, kernel(_shifted(m, lam), n)) for lam in rational_eigenvalues(m)]
    if sum(s.rank for _, s in out) != n:
        raise AlgebraError("Map is not diagonalizable over Q", code="E_IRRATIONAL_OR_DEFECTIVE")
    return out


def common_eigenspaces(ops: Sequence[Sequence[Sequence[Fraction]]], dim: Optional[int] = None) -> List[Tuple[Tuple[Fraction, ...], Subspace]]:
    """Simultaneous eigenspace decomposition of pairwise commuting diagonalizable maps.

    Blocks are returned sorted by eigenvalue tuple; with no maps the whole space is one block
    labelled by the empty tuple.
    """
    if dim is None:
        if not ops:
            raise AlgebraError("Ambient dimension unknown for an empty list of maps", code="E_DIMENSION_MISMATCH")
        dim = len(ops[0])
    for m in ops:
        if len(m) != dim or any(len(row) != dim for row in m):
            raise AlgebraError(f"Map is not a square matrix of size {dim}", code="E_DIMENSION_MISMATCH")
    for i, a in enumerate(ops):
        for b in ops[i + 1:]:
            if compose(a, b, dim) != compose(b, a, dim):
                raise AlgebraError("Right multiplications do not commute", code="E_NOT_COMMUTING")

    blocks: List[Tuple[Tuple[Fraction, ...], Subspace]] = [((), full_space(dim))]
    for m in ops:
        refined = []
        spaces = eigenspaces(m)
        for label, block in blocks:
            for lam, space in spaces:
                piece = intersect(block, space)
                if piece.rank:
                    refined.append((label + (lam,), piece))
        blocks = refined
    blocks = [(label, space) for label, space in blocks if space.rank]
    blocks.sort(key=lambda item: item[0])
    logger.debug("common eigenspaces: %s", [(lbl, s.rank) for lbl, s in blocks])
    return blocks

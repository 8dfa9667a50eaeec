# ltsplit/split_decomposition.py
"""Root-space decomposition of T and L0 relative to a MASA, and the checks built on it."""
from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact_linear import (
    Subspace,
    canonicalize,
    common_eigenspaces,
    contains,
    format_scalar,
    intersect,
    is_subspace_of,
    kernel,
    lincomb,
    rref,
    span_of_spaces,
    to_scalar,
    zero_space,
)
from .leibniz_embedding import (
    StandardEmbedding,
    l0_bracket,
    l0_on_t,
    masa_check,
    right_action_on_l0,
    right_action_on_t,
    t_bracket,
    t_on_l0,
)
from .models import NOT_SPLIT_CODES, AlgebraError, CheckReport, Finding, Root, Vector, make_report
from .triple_core import TripleSystem, is_ideal, products_span, triple_product

logger = logging.getLogger(__name__)


# ---------- roots ----------

def zero_root(k: int) -> Root:
    return (Fraction(0),) * k


def root_add(*roots: Root) -> Root:
    return tuple(sum(vals, Fraction(0)) for vals in zip(*roots))


def root_neg(a: Root) -> Root:
    return tuple(-x for x in a)


def is_zero_root(a: Root) -> bool:
    return not any(a)


def format_root(a: Root) -> str:
    return ",".join(format_scalar(x) for x in a)


def parse_root(text: str) -> Root:
    text = text.strip()
    if not text:
        return ()
    return tuple(to_scalar(part) for part in text.split(","))


def is_symmetric(roots: Iterable[Root]) -> bool:
    s = set(roots)
    return all(root_neg(a) in s for a in s)


# ---------- decomposition ----------

@dataclass(frozen=True)
class RootDecomposition:
    system: TripleSystem
    embedding: StandardEmbedding
    masa: Tuple[Vector, ...]
    t_zero: Subspace
    t_roots: Dict[Root, Subspace]
    l0_zero: Subspace
    l0_roots: Dict[Root, Subspace]
    split_certified: bool = False
    split_report: Optional[CheckReport] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.masa)

    @property
    def zero(self) -> Root:
        return zero_root(self.rank)

    @property
    def lambda1(self) -> Tuple[Root, ...]:
        return tuple(sorted(self.t_roots))

    @property
    def lambda0(self) -> Tuple[Root, ...]:
        return tuple(sorted(self.l0_roots))

    def t_space(self, a: Root) -> Subspace:
        """T_a, with T_0 for the zero root and 0 for anything unrecorded."""
        if is_zero_root(a):
            return self.t_zero
        return self.t_roots.get(a, zero_space(self.system.dim))

    def l0_space(self, a: Root) -> Subspace:
        if is_zero_root(a):
            return self.l0_zero
        return self.l0_roots.get(a, zero_space(self.embedding.l0_dim))

    def to_dict(self) -> Dict[str, object]:
        from .exact_linear import format_matrix

        return {
            "masa": format_matrix(self.masa),
            "t_zero": self.t_zero.rank,
            "t_roots": {format_root(a): s.rank for a, s in sorted(self.t_roots.items())},
            "l0_zero": self.l0_zero.rank,
            "l0_roots": {format_root(a): s.rank for a, s in sorted(self.l0_roots.items())},
            "split_certified": self.split_certified,
            "maximal_length": is_maximal_length(self),
        }


def _blocks(ops, dim: int, where: str):
    try:
        return common_eigenspaces(ops, dim)
    except AlgebraError as e:
        if e.code in NOT_SPLIT_CODES:
            raise AlgebraError(
                f"T is not split over Q with respect to this MASA ({where}: {e})", code=e.code, detail=e.detail
            ) from e
        raise


def decompose(T: TripleSystem, E: StandardEmbedding, masa: Sequence[Sequence[Fraction]]) -> RootDecomposition:
    masa = tuple(tuple(h) for h in masa)
    check = masa_check(E, masa)
    if not check.abelian:
        raise AlgebraError("MASA elements do not commute in L0", code="E_NOT_ABELIAN")
    if canonicalize(masa, E.l0_dim).rank != len(masa):
        raise AlgebraError("MASA elements are linearly dependent", code="E_DEPENDENT_MASA")

    k = len(masa)
    t_blocks = _blocks([right_action_on_t(E, h) for h in masa], T.dim, "action on T")
    l0_blocks = _blocks([right_action_on_l0(E, h) for h in masa], E.l0_dim, "action on L0")

    zero = zero_root(k)
    t_zero = dict(t_blocks).get(zero, zero_space(T.dim))
    l0_zero = dict(l0_blocks).get(zero, zero_space(E.l0_dim))
    D = RootDecomposition(
        system=T,
        embedding=E,
        masa=masa,
        t_zero=t_zero,
        t_roots={a: s for a, s in t_blocks if a != zero},
        l0_zero=l0_zero,
        l0_roots={a: s for a, s in l0_blocks if a != zero},
    )
    report = check_split(D)
    logger.info(
        "decomposition: rank T0 = %d, |Lambda1| = %d, |Lambda0| = %d, split=%s",
        t_zero.rank, len(D.t_roots), len(D.l0_roots), report.passed,
    )
    return dataclasses.replace(D, split_certified=report.passed, split_report=report)


def check_split(D: RootDecomposition) -> CheckReport:
    T = D.system
    n = T.dim
    findings: List[Finding] = []
    spaces = [D.t_zero] + [D.t_roots[a] for a in D.lambda1]
    total = span_of_spaces(spaces, n)
    if sum(s.rank for s in spaces) != n or not total.is_full():
        findings.append(Finding("direct_sum", (), f"ranks sum to {sum(s.rank for s in spaces)}, span rank {total.rank}"))
    if not products_span(T, D.t_zero, D.t_zero, D.t_zero).is_zero():
        findings.append(Finding("T0_T0_T0_zero", (D.zero,), "{T0,T0,T0} != 0"))
    for a in D.lambda1:
        b = root_neg(a)
        if b in D.t_roots and not products_span(T, D.t_roots[a], D.t_roots[b], D.t_zero).is_zero():
            findings.append(Finding("Ta_T-a_T0_zero", (a,), "{T_a,T_-a,T0} != 0"))
    return make_report("split", findings)


def _require_split(D: RootDecomposition) -> None:
    if not D.split_certified:
        raise AlgebraError("Decomposition is not certified split", code="E_NOT_SPLIT")


def check_gradings(D: RootDecomposition) -> CheckReport:
    _require_split(D)
    E = D.embedding
    T = D.system
    t_keys = [D.zero] + list(D.lambda1)
    l_keys = [D.zero] + list(D.lambda0)
    findings: List[Finding] = []

    def check(part: str, roots: Tuple[Root, ...], target: Subspace, vec: Vector) -> None:
        if any(vec) and not contains(target, vec):
            findings.append(Finding(part, roots, "product leaves the predicted root space"))

    for a, b in itertools.product(t_keys, repeat=2):
        target = D.l0_space(root_add(a, b))
        for x in D.t_space(a).basis:
            for y in D.t_space(b).basis:
                check("T_T_in_L0", (a, b), target, t_bracket(E, x, y))
    for d, a in itertools.product(l_keys, t_keys):
        target = D.t_space(root_add(d, a))
        for u in D.l0_space(d).basis:
            for t in D.t_space(a).basis:
                check("L0_T_in_T", (d, a), target, l0_on_t(E, u, t))
                check("T_L0_in_T", (a, d), target, t_on_l0(E, t, u))
    for d, g in itertools.product(l_keys, repeat=2):
        target = D.l0_space(root_add(d, g))
        for u in D.l0_space(d).basis:
            for v in D.l0_space(g).basis:
                check("L0_L0_in_L0", (d, g), target, l0_bracket(E, u, v))
    for a, b, c in itertools.product(t_keys, repeat=3):
        target = D.t_space(root_add(a, b, c))
        prod = products_span(T, D.t_space(a), D.t_space(b), D.t_space(c))
        if not is_subspace_of(prod, target):
            findings.append(Finding("TTT_in_T", (a, b, c), "triple product leaves the predicted root space"))
    return make_report("gradings", findings)


def check_h0_identities(D: RootDecomposition) -> CheckReport:
    _require_split(D)
    E = D.embedding
    m = E.l0_dim
    findings: List[Finding] = []

    def brackets(A: Subspace, B: Subspace) -> List[Vector]:
        return [t_bracket(E, x, y) for x in A.basis for y in B.basis]

    t0t0 = canonicalize(brackets(D.t_zero, D.t_zero), m)
    rows = list(t0t0.basis)
    for a in D.lambda1:
        rows.extend(brackets(D.t_roots[a], D.t_space(root_neg(a))))
    rhs = canonicalize(rows, m)
    h0 = canonicalize(D.masa, m)
    if rhs != h0:
        findings.append(Finding("H0_equals_brackets", (), f"span(masa) rank {h0.rank}, bracket sum rank {rhs.rank}"))
    if any(any(t_on_l0(E, t, u)) for t in D.t_zero.basis for u in t0t0.basis):
        findings.append(Finding("T0_T0T0_zero", (D.zero,), "[T0,[T0,T0]] != 0"))
    return make_report("h0_identities", findings)


def is_maximal_length(D: RootDecomposition) -> bool:
    return all(s.rank == 1 for s in D.t_roots.values())


def separating_element(D: RootDecomposition, a: Root, b: Root) -> Vector:
    """h in span(masa) with a(h) != 0 and b(h) = 0."""
    k = D.rank
    if len(a) != k or len(b) != k:
        raise AlgebraError("Root length does not match the MASA", code="E_DIMENSION_MISMATCH")
    if len(rref([a, b], k)[0]) < 2:
        raise AlgebraError(f"Roots {format_root(a)} and {format_root(b)} are proportional", code="E_PROPORTIONAL")
    for c in kernel([b], k).basis:
        if sum((x * y for x, y in zip(a, c)), Fraction(0)):
            return lincomb(c, D.masa, D.embedding.l0_dim)
    raise AlgebraError("No separating element found", code="E_INTERNAL")  # unreachable for rank 2


def ideal_root_decomposition(D: RootDecomposition, I: Subspace) -> Tuple[Subspace, Tuple[Root, ...]]:
    _require_split(D)
    T = D.system
    if not is_ideal(T, I):
        raise AlgebraError("Subspace is not an ideal", code="E_NOT_IDEAL")
    zero_part = intersect(I, D.t_zero)
    parts = {a: intersect(I, s) for a, s in D.t_roots.items()}
    support = tuple(a for a in D.lambda1 if parts[a].rank)
    rebuilt = span_of_spaces([zero_part] + [parts[a] for a in support], T.dim)
    if rebuilt != I:
        raise AlgebraError("Ideal is not the sum of its root-space intersections", code="E_DECOMPOSITION_FAILS")
    if is_maximal_length(D):
        for a in support:
            if parts[a] != D.t_roots[a]:
                raise AlgebraError("Ideal meets a one-dimensional root space partially", code="E_DECOMPOSITION_FAILS")
    return zero_part, support


def t0_generated_by(D: RootDecomposition, roots: Iterable[Root]) -> Subspace:
    """span{ {T_a,T_b,T_c} : a + b + c = 0 } over the given roots together with 0."""
    keys = [D.zero] + sorted(set(roots))
    spaces = []
    for a, b, c in itertools.product(keys, repeat=3):
        if is_zero_root(root_add(a, b, c)):
            spaces.append(products_span(D.system, D.t_space(a), D.t_space(b), D.t_space(c)))
    return span_of_spaces(spaces, D.system.dim)


def root_vector_product(D: RootDecomposition, a: Root, b: Root, c: Root) -> bool:
    """Whether {T_a, T_b, T_c} is nonzero."""
    T = D.system
    return any(
        any(triple_product(T, x, y, z))
        for x in D.t_space(a).basis for y in D.t_space(b).basis for z in D.t_space(c).basis
    )

# ltsplit/root_connectivity.py
"""Connections of roots, the J / not-J partition, ideal enumeration and the simplicity report."""
from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .exact_linear import (
    Subspace,
    canonicalize,
    full_space,
    intersect,
    is_subspace_of,
    span_of_spaces,
    subspace_sum,
    zero_space,
)
from .models import AlgebraError, CheckReport, Finding, LabeledIdeal, Root, SCHEMA_VERSION, make_report
from .split_decomposition import (
    RootDecomposition,
    format_root,
    ideal_root_decomposition,
    is_maximal_length,
    is_symmetric,
    is_zero_root,
    root_add,
    root_neg,
    root_vector_product,
    t0_generated_by,
)
from .triple_core import (
    TripleSystem,
    annihilated_by,
    annihilator,
    ideal_closure,
    is_ideal,
    is_subsystem,
    j_ideal,
    largest_ideal_within,
    product_of_ideals,
    product_spans_whole,
    products_span,
)

logger = logging.getLogger(__name__)

PLAIN = "plain"
NOT_J = "not_j"


def _subset_cap_default() -> int:
    raw = os.getenv("LTSPLIT_SUBSET_CAP", "16").strip()
    try:
        return max(0, int(raw))
    except ValueError:
        logger.warning("LTSPLIT_SUBSET_CAP=%r is not an integer; using 16", raw)
        return 16


# ---------- connections ----------

@dataclass(frozen=True)
class Connection:
    chain: Tuple[Root, ...]
    kind: str
    target_sign: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "chain": [format_root(a) for a in self.chain],
            "kind": self.kind,
            "target_sign": self.target_sign,
            "length": len(self.chain),
        }


def _increments(D: RootDecomposition, roots: Sequence[Root]) -> List[Root]:
    return sorted(set(roots) | {D.zero})


def _steps(D: RootDecomposition, sigma: Root, increments: Sequence[Root], states: Set[Root]):
    """Valid (gamma, delta, next state) moves from an odd partial sum, in lexicographic order."""
    lam0 = D.l0_roots
    for g in increments:
        even = root_add(sigma, g)
        if even not in lam0:
            continue
        for d in increments:
            odd = root_add(even, d)
            if odd in states:
                yield g, d, odd


def _search(
    D: RootDecomposition, alpha: Root, beta: Root, states: Set[Root], increments: Sequence[Root], kind: str,
    min_steps: int,
) -> Optional[Connection]:
    targets = {beta: 1, root_neg(beta): -1}
    if min_steps == 0 and alpha in targets:
        return Connection((alpha,), kind, targets[alpha])
    frontier = [(alpha, (alpha,))]
    expanded = {alpha}
    while frontier:
        nxt = []
        for sigma, chain in frontier:
            for g, d, odd in _steps(D, sigma, increments, states):
                new_chain = chain + (g, d)
                if odd in targets:
                    return Connection(new_chain, kind, targets[odd])
                if odd not in expanded:
                    expanded.add(odd)
                    nxt.append((odd, new_chain))
        frontier = nxt
    return None


def _reachable(D: RootDecomposition, alpha: Root, states: Set[Root], increments: Sequence[Root], min_steps: int) -> Set[Root]:
    out: Set[Root] = set() if min_steps else {alpha}
    frontier = [alpha]
    expanded = {alpha}
    while frontier:
        nxt = []
        for sigma in frontier:
            for _, _, odd in _steps(D, sigma, increments, states):
                out.add(odd)
                if odd not in expanded:
                    expanded.add(odd)
                    nxt.append(odd)
        frontier = nxt
    return out


def _require_roots(D: RootDecomposition, *roots: Root) -> None:
    for a in roots:
        if a not in D.t_roots:
            raise AlgebraError(f"{format_root(a) or '()'} is not a root of T", code="E_ROOT_UNKNOWN")


def find_connection(D: RootDecomposition, alpha: Root, beta: Root) -> Optional[Connection]:
    _require_roots(D, alpha, beta)
    lam1 = set(D.lambda1)
    return _search(D, alpha, beta, lam1, _increments(D, D.lambda1), PLAIN, min_steps=0)


def validate_connection(
    D: RootDecomposition, conn: Connection, alpha: Root, beta: Root, partition: Optional["JPartition"] = None
) -> bool:
    """Re-check a certificate from its chain alone."""
    chain = conn.chain
    if not chain or len(chain) % 2 == 0 or chain[0] != alpha:
        return False
    if conn.kind == PLAIN:
        odd_set = set(D.lambda1)
        allowed = set(D.lambda1) | {D.zero}
    else:
        if partition is None:
            return False
        odd_set = set(partition.part_of(alpha))
        allowed = set(partition.lambda_not_j) | {D.zero}
    if alpha not in odd_set or any(a not in allowed for a in chain[1:]):
        return False
    total = chain[0]
    for k in range(1, len(chain)):
        total = root_add(total, chain[k])
        if k % 2 == 1 and total not in D.l0_roots:
            return False
        if k % 2 == 0 and total not in odd_set:
            return False
    expected = beta if conn.target_sign == 1 else root_neg(beta)
    return conn.target_sign in (1, -1) and total == expected


@dataclass(frozen=True)
class RootClasses:
    classes: Tuple[Tuple[Root, ...], ...]
    is_partition: bool
    laws_asserted: bool
    warning: Optional[str] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "classes": [[format_root(a) for a in c] for c in self.classes],
            "is_partition": self.is_partition,
            "laws_asserted": self.laws_asserted,
            "warning": self.warning,
        }


def _classify(reach: Dict[Root, FrozenSet[Root]], assert_laws: bool, what: str) -> RootClasses:
    keys = list(reach)
    laws = all(a in reach[a] for a in keys) and all(
        a in reach[b] for a in keys for b in reach[a]
    ) and all(c in reach[a] for a in keys for b in reach[a] for c in reach[b])
    if assert_laws and not laws:
        raise AlgebraError(f"{what}: reachability is not an equivalence relation", code="E_PARTITION_LAW")
    # a root always sits in its own reported set
    classes = tuple(sorted({tuple(sorted(reach[a] | {a})) for a in keys}))
    warning = None if laws else f"{what}: raw reachability sets (not a partition)"
    if warning:
        logger.warning(warning)
    return RootClasses(classes=classes, is_partition=laws, laws_asserted=assert_laws, warning=warning)


def _close(reach: Set[Root], part: Set[Root], alpha: Root, include_self: bool) -> FrozenSet[Root]:
    out = {b for b in part if b in reach or root_neg(b) in reach}
    if include_self:
        out.add(alpha)
    return frozenset(out)


def connection_classes(D: RootDecomposition) -> RootClasses:
    lam1 = set(D.lambda1)
    inc = _increments(D, D.lambda1)
    reach = {a: _close(_reachable(D, a, lam1, inc, 0), lam1, a, False) for a in D.lambda1}
    return _classify(reach, is_symmetric(D.lambda0), "connection classes")


# ---------- root subsystems ----------

def _require_subset(D: RootDecomposition, omega) -> Set[Root]:
    omega = set(omega)
    if not omega <= set(D.lambda1):
        raise AlgebraError("Root set is not contained in Lambda1", code="E_NOT_SUBSET")
    return omega


def is_root_subsystem(D: RootDecomposition, omega) -> bool:
    omega = _require_subset(D, omega)
    if not is_symmetric(omega):
        return False
    keys = omega | {D.zero}
    lam1 = set(D.lambda1)
    for a, b, c in itertools.product(keys, repeat=3):
        ab = root_add(a, b)
        if ab in D.l0_roots:
            abc = root_add(ab, c)
            if abc in lam1 and abc not in omega:
                return False
    return True


def subsystem_from_roots(D: RootDecomposition, omega) -> Subspace:
    omega = _require_subset(D, omega)
    n = D.system.dim
    v = span_of_spaces([D.t_roots[a] for a in sorted(omega)], n)
    result = subspace_sum(t0_generated_by(D, omega), v)
    if is_root_subsystem(D, omega) and not is_subsystem(D.system, result):
        raise AlgebraError("Construction from a root subsystem is not a subsystem", code="E_INTERNAL")
    return result


# ---------- J partition ----------

@dataclass(frozen=True)
class JPartition:
    lambda_j: Tuple[Root, ...]
    lambda_not_j: Tuple[Root, ...]
    j: Subspace

    def part_of(self, a: Root) -> Tuple[Root, ...]:
        if a in self.lambda_j:
            return self.lambda_j
        if a in self.lambda_not_j:
            return self.lambda_not_j
        raise AlgebraError(f"{format_root(a)} is not a root of T", code="E_ROOT_UNKNOWN")

    def part_name(self, a: Root) -> str:
        return "J" if a in self.lambda_j else "not_J"

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambda_j": [format_root(a) for a in self.lambda_j],
            "lambda_not_j": [format_root(a) for a in self.lambda_not_j],
            "j": self.j.to_dict(),
        }


def j_partition(D: RootDecomposition, J: Optional[Subspace] = None) -> JPartition:
    if not D.split_certified:
        raise AlgebraError("Decomposition is not certified split", code="E_NOT_SPLIT")
    J = j_ideal(D.system) if J is None else J
    inside, outside = [], []
    for a in D.lambda1:
        space = D.t_roots[a]
        if is_subspace_of(space, J):
            inside.append(a)
        elif intersect(space, J).is_zero():
            outside.append(a)
        else:
            raise AlgebraError(
                f"Root space T_{format_root(a)} is neither inside J nor disjoint from it",
                code="E_MIXED_ROOT_SPACE",
                detail={"root": format_root(a)},
            )
    return JPartition(lambda_j=tuple(inside), lambda_not_j=tuple(outside), j=J)


def find_nj_connection(D: RootDecomposition, P: JPartition, alpha: Root, beta: Root) -> Optional[Connection]:
    """Chains inside one part with increments from Lambda^notJ; the J part needs at least one step."""
    _require_roots(D, alpha, beta)
    part = P.part_of(alpha)
    if beta not in part:
        raise AlgebraError("Roots lie in different parts of the J partition", code="E_DIFFERENT_PARTS")
    min_steps = 1 if alpha in P.lambda_j else 0
    return _search(D, alpha, beta, set(part), _increments(D, P.lambda_not_j), NOT_J, min_steps)


@dataclass(frozen=True)
class NotJClasses:
    not_j: RootClasses
    j: RootClasses

    def to_dict(self) -> Dict[str, object]:
        return {"lambda_not_j": self.not_j.to_dict(), "lambda_j": self.j.to_dict()}


def _nj_reach(D: RootDecomposition, P: JPartition, alpha: Root) -> FrozenSet[Root]:
    part = set(P.part_of(alpha))
    min_steps = 1 if alpha in P.lambda_j else 0
    reach = _reachable(D, alpha, part, _increments(D, P.lambda_not_j), min_steps)
    return _close(reach, part, alpha, False)


def nj_classes(D: RootDecomposition, P: JPartition) -> NotJClasses:
    not_j_sym = is_symmetric(P.lambda_not_j)
    j_laws = not_j_sym and is_symmetric(P.lambda_j) and product_spans_whole(D.system)
    nj = _classify({a: _nj_reach(D, P, a) for a in P.lambda_not_j}, not_j_sym, "not-J classes in Lambda^notJ")
    jj = _classify({a: _nj_reach(D, P, a) for a in P.lambda_j}, j_laws, "not-J classes in Lambda^J")
    return NotJClasses(not_j=nj, j=jj)


# ---------- root-multiplicativity & annihilators ----------

def check_root_multiplicative(T: TripleSystem, D: RootDecomposition, P: JPartition) -> CheckReport:
    if not is_maximal_length(D):
        raise AlgebraError("Root-multiplicativity needs a decomposition of maximal length", code="E_NOT_MAXIMAL_LENGTH")
    findings: List[Finding] = []
    nj0 = _increments(D, P.lambda_not_j)
    lam1 = set(D.lambda1)
    lam_j = set(P.lambda_j)
    for a, b, c in itertools.product(nj0, repeat=3):
        ab = root_add(a, b)
        if ab in D.l0_roots and root_add(ab, c) in lam1 and not root_vector_product(D, a, b, c):
            findings.append(Finding("condition_1", (a, b, c), "{T_a,T_b,T_c} = 0"))
    for a, b in itertools.product(nj0, repeat=2):
        ab = root_add(a, b)
        if ab not in D.l0_roots:
            continue
        for c in P.lambda_j:
            if root_add(ab, c) in lam_j and not root_vector_product(D, c, b, a):
                findings.append(Finding("condition_2", (a, b, c), "{T_c,T_b,T_a} = 0"))
    return make_report("root_multiplicative", findings)


def lie_annihilator(T: TripleSystem, D: RootDecomposition, P: JPartition) -> Subspace:
    if not D.split_certified:
        raise AlgebraError("Decomposition is not certified split", code="E_NOT_SPLIT")
    U = span_of_spaces([D.t_zero] + [D.t_roots[a] for a in P.lambda_not_j], T.dim)
    result = annihilated_by(T, U)
    if not is_subspace_of(annihilator(T), result):
        raise AlgebraError("Annihilator is not inside the Lie-annihilator", code="E_INTERNAL")
    return result


def check_mixed_zero_products(D: RootDecomposition, P: JPartition, strict: bool = False) -> CheckReport:
    """{T0,T_a,T_b} = {T_a,T0,T_b} = {T_a,T_b,T0} = 0 for a, b in Lambda^notJ (a + b != 0 unless strict)."""
    findings: List[Finding] = []
    z = D.zero
    for a, b in itertools.product(P.lambda_not_j, repeat=2):
        if not strict and is_zero_root(root_add(a, b)):
            continue
        for order in ((z, a, b), (a, z, b), (a, b, z)):
            if root_vector_product(D, *order):
                findings.append(Finding("mixed_zero_product", order, "product with T0 is nonzero"))
    return make_report("mixed_zero_products_strict" if strict else "mixed_zero_products", findings)


def check_j_not_j_bridge(D: RootDecomposition, P: JPartition) -> bool:
    """Every a in Lambda^J has some b in Lambda^notJ with {T_a, T0, T_b} != 0."""
    return all(any(root_vector_product(D, a, D.zero, b) for b in P.lambda_not_j) for a in P.lambda_j)


@dataclass(frozen=True)
class ClassSubsystem:
    roots: Tuple[Root, ...]
    space: Subspace
    is_subsystem: bool
    is_ideal: bool


def t_lambda_class(D: RootDecomposition, P: JPartition, alpha: Root, part: str) -> ClassSubsystem:
    """T_{0,C} + V_C for the not-J class C of alpha inside the named part ("J" or "not_J")."""
    _require_roots(D, alpha)
    if P.part_name(alpha) != part:
        raise AlgebraError(f"{format_root(alpha)} is not in part {part}", code="E_DIFFERENT_PARTS")
    T = D.system
    cls = sorted(_nj_reach(D, P, alpha) | {alpha})
    zero_part = span_of_spaces(
        [
            products_span(T, D.t_roots[a], D.t_roots[b], D.t_roots[c])
            for a, b, c in itertools.product(cls, repeat=3)
            if is_zero_root(root_add(a, b, c))
        ],
        T.dim,
    )
    space = subspace_sum(zero_part, span_of_spaces([D.t_roots[a] for a in cls], T.dim))
    ideal = is_ideal(T, space)
    hypotheses = (
        part == "J" and product_spans_whole(T) and is_symmetric(P.lambda_j) and is_symmetric(P.lambda_not_j)
    )
    if hypotheses and not ideal:
        raise AlgebraError("Class construction in Lambda^J is not an ideal", code="E_INTERNAL")
    return ClassSubsystem(roots=tuple(cls), space=space, is_subsystem=is_subsystem(T, space), is_ideal=ideal)


# ---------- ideal enumeration ----------

@dataclass(frozen=True)
class IdealFamily:
    members: Tuple[LabeledIdeal, ...]
    j: Subspace
    largest_in_t0: Subspace
    w_star: Subspace

    def spaces(self) -> List[Subspace]:
        return [m.space for m in self.members]


def enumerate_ideals_maximal_length(
    T: TripleSystem, D: RootDecomposition, cap: Optional[int] = None, J: Optional[Subspace] = None
) -> IdealFamily:
    if not D.split_certified:
        raise AlgebraError("Decomposition is not certified split", code="E_NOT_SPLIT")
    if not is_maximal_length(D):
        raise AlgebraError("Ideal enumeration needs a decomposition of maximal length", code="E_NOT_MAXIMAL_LENGTH")
    cap = _subset_cap_default() if cap is None else cap
    roots = D.lambda1
    if len(roots) > cap:
        raise AlgebraError(f"{len(roots)} roots exceed the subset cap {cap}", code="E_TOO_MANY_ROOTS")
    n = T.dim
    J = j_ideal(T) if J is None else J
    candidates: List[Tuple[str, Subspace]] = [("zero", zero_space(n)), ("whole", full_space(n)), ("J", J)]
    for r in range(1, len(roots) + 1):
        for subset in itertools.combinations(roots, r):
            seed = span_of_spaces([D.t_roots[a] for a in subset], n)
            label = "closure{" + ";".join(format_root(a) for a in subset) + "}"
            candidates.append((label, ideal_closure(T, seed)))
    low = largest_ideal_within(T, D.t_zero)
    w_star = largest_ideal_within(T, D.t_zero, floor=J)
    candidates.append(("largest_in_T0", low))
    candidates.append(("J+W*", subspace_sum(J, w_star)))

    members: List[LabeledIdeal] = []
    for label, space in candidates:
        for k, m in enumerate(members):
            if m.space == space:
                members[k] = LabeledIdeal(m.label, m.space, m.aliases + (label,))
                break
        else:
            if not is_ideal(T, space):
                raise AlgebraError(f"Enumerated member {label} is not an ideal", code="E_INTERNAL")
            ideal_root_decomposition(D, space)
            members.append(LabeledIdeal(label, space))
    logger.info("ideal family: %d distinct member(s) from %d candidate(s)", len(members), len(candidates))
    return IdealFamily(members=tuple(members), j=J, largest_in_t0=low, w_star=w_star)


# ---------- simplicity ----------

SIMPLE = "simple"
NOT_SIMPLE = "not_simple"
HYPOTHESES_UNMET = "hypotheses_unmet"
NOT_APPLICABLE = "not_applicable"


@dataclass
class SimplicityReport:
    hypotheses: Dict[str, bool]
    informational: Dict[str, Optional[bool]]
    connectivity: Dict[str, object]
    ideals: Tuple[LabeledIdeal, ...]
    prime: Optional[bool]
    proposition_checks: Dict[str, Optional[bool]]
    verdict_theorem: str
    verdict_bruteforce: str
    partition: Optional[JPartition] = None
    witness: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return self.verdict_bruteforce if self.verdict_bruteforce != NOT_APPLICABLE else self.verdict_theorem

    def to_dict(self) -> Dict[str, object]:
        return {
            "schema_version": SCHEMA_VERSION,
            "verdict": self.verdict,
            "verdict_theorem": self.verdict_theorem,
            "verdict_bruteforce": self.verdict_bruteforce,
            "hypotheses": dict(self.hypotheses),
            "informational": dict(self.informational),
            "connectivity": self.connectivity,
            "prime": self.prime,
            "prime_scope": "relative to the enumerated ideal family",
            "proposition_checks": dict(self.proposition_checks),
            "ideals": [
                {"label": m.label, "aliases": list(m.aliases), "rank": m.space.rank,
                 "basis": m.space.to_dict()["basis"]}
                for m in self.ideals
            ],
            "partition": self.partition.to_dict() if self.partition else None,
            "witness": self.witness,
            "notes": list(self.notes),
        }


def _witness_search(T: TripleSystem, D: RootDecomposition, J: Subspace) -> Optional[str]:
    n = T.dim
    special = [zero_space(n), J, full_space(n)]
    probes: List[Tuple[str, Subspace]] = [
        ("closure{" + format_root(a) + "}", ideal_closure(T, D.t_roots[a])) for a in D.lambda1
    ]
    probes += [(f"closure{{e{i}}}", ideal_closure(T, canonicalize([row], n))) for i, row in enumerate(full_space(n).basis)]
    probes.append(("largest_in_T0", largest_ideal_within(T, D.t_zero)))
    probes.append(("J+W*", subspace_sum(J, largest_ideal_within(T, D.t_zero, floor=J))))
    for label, space in probes:
        if space not in special:
            return label
    return None


def simplicity_report(T: TripleSystem, D: RootDecomposition, cap: Optional[int] = None) -> SimplicityReport:
    if not D.split_certified:
        raise AlgebraError("Decomposition is not certified split", code="E_NOT_SPLIT")
    n = T.dim
    notes: List[str] = []
    maximal = is_maximal_length(D)
    J = j_ideal(T)
    try:
        P: Optional[JPartition] = j_partition(D, J)
    except AlgebraError as e:
        if e.code != "E_MIXED_ROOT_SPACE":
            raise
        P = None
        notes.append(str(e))

    hyp: Dict[str, bool] = {
        "product_spans_T": product_spans_whole(T),
        "ann_lie_zero": False,
        "root_multiplicative": False,
        "dim_l0_alpha_one": all(a in D.l0_roots and D.l0_roots[a].rank == 1 for a in D.lambda1),
        "lambda_j_symmetric": False,
        "lambda_not_j_symmetric": False,
        "mixed_zero_products": False,
        "maximal_length": maximal,
    }
    info: Dict[str, Optional[bool]] = {
        "ann_zero": annihilator(T).is_zero(),
        "lambda0_symmetric": is_symmetric(D.lambda0),
        "j_meets_t0_trivially": intersect(J, D.t_zero).is_zero(),
        "mixed_zero_products_strict": None,
        "j_not_j_bridge": None,
        "t0_generated_by_not_j": None,
    }
    connectivity: Dict[str, object] = {"connection_classes": connection_classes(D).to_dict()}
    not_j_connected = j_connected = False
    if P is not None:
        hyp["lambda_j_symmetric"] = is_symmetric(P.lambda_j)
        hyp["lambda_not_j_symmetric"] = is_symmetric(P.lambda_not_j)
        hyp["ann_lie_zero"] = lie_annihilator(T, D, P).is_zero()
        hyp["mixed_zero_products"] = check_mixed_zero_products(D, P).passed
        info["mixed_zero_products_strict"] = check_mixed_zero_products(D, P, strict=True).passed
        info["j_not_j_bridge"] = check_j_not_j_bridge(D, P)
        info["t0_generated_by_not_j"] = t0_generated_by(D, P.lambda_not_j) == D.t_zero
        if maximal:
            hyp["root_multiplicative"] = check_root_multiplicative(T, D, P).passed
        else:
            notes.append("root-multiplicativity is only defined for maximal length")
        try:
            classes = nj_classes(D, P)
            connectivity["not_j_classes"] = classes.to_dict()
            not_j_connected = len(classes.not_j.classes) <= 1
            j_connected = len(classes.j.classes) <= 1
        except AlgebraError as e:
            if e.code != "E_PARTITION_LAW":
                raise
            notes.append(str(e))
    connectivity["not_j_connected"] = not_j_connected
    connectivity["j_connected"] = j_connected

    family: Optional[IdealFamily] = None
    if maximal:
        try:
            family = enumerate_ideals_maximal_length(T, D, cap, J)
        except AlgebraError as e:
            if e.code != "E_TOO_MANY_ROOTS":
                raise
            notes.append(str(e))

    special = [zero_space(n), J, full_space(n)]
    product_nonzero = bool(T.nonzero)
    witness = None
    prime: Optional[bool] = None
    if not product_nonzero:
        brute = NOT_SIMPLE
        witness = "zero product"
    elif family is not None:
        simple = (
            all(m.space in special for m in family.members)
            and family.largest_in_t0.is_zero()
            and is_subspace_of(family.w_star, J)
        )
        brute = SIMPLE if simple else NOT_SIMPLE
        if not simple:
            witness = next((m.label for m in family.members if m.space not in special), "largest_in_T0")
    else:
        witness = _witness_search(T, D, J)
        brute = NOT_SIMPLE if witness else NOT_APPLICABLE

    if family is not None:
        prime = True
        for I, K in itertools.product(family.spaces(), repeat=2):
            if product_of_ideals(T, I, K).is_zero() and I not in special and K not in special:
                prime = False
                break

    all_hold = all(hyp.values())
    if all_hold and prime is not None:
        theorem = SIMPLE if (prime and not_j_connected and j_connected) else NOT_SIMPLE
    else:
        theorem = HYPOTHESES_UNMET
    if theorem != HYPOTHESES_UNMET and brute != NOT_APPLICABLE and theorem != brute:
        raise AlgebraError(
            f"Theorem verdict {theorem} disagrees with enumeration verdict {brute}", code="E_THEOREM_MISMATCH"
        )

    props = _proposition_checks(T, D, P, family, hyp, prime, not_j_connected, j_connected)
    report = SimplicityReport(
        hypotheses=hyp,
        informational=info,
        connectivity=connectivity,
        ideals=family.members if family else (),
        prime=prime,
        proposition_checks=props,
        verdict_theorem=theorem,
        verdict_bruteforce=brute,
        partition=P,
        witness=witness,
        notes=notes,
    )
    logger.info("simplicity: theorem=%s brute=%s", theorem, brute)
    return report


def _proposition_checks(
    T: TripleSystem,
    D: RootDecomposition,
    P: Optional[JPartition],
    family: Optional[IdealFamily],
    hyp: Dict[str, bool],
    prime: Optional[bool],
    not_j_connected: bool,
    j_connected: bool,
) -> Dict[str, Optional[bool]]:
    out: Dict[str, Optional[bool]] = {"ideal_equals_whole": None, "j_complement": None, "prime_forces_j": None}
    if family is None or P is None:
        return out
    n = T.dim
    J = family.j
    whole = full_space(n)
    t0_plus_j = subspace_sum(D.t_zero, J)

    if hyp["product_spans_T"] and hyp["root_multiplicative"] and not_j_connected:
        out["ideal_equals_whole"] = all(
            m.space == whole for m in family.members if not is_subspace_of(m.space, t0_plus_j)
        )

    proper_in_j = [m.space for m in family.members if not m.space.is_zero() and is_subspace_of(m.space, J) and m.space != J]
    if all(hyp.values()) and j_connected:
        ok = True
        for I in proper_in_j:
            _, support = ideal_root_decomposition(D, I)
            K = span_of_spaces([D.t_space(root_neg(a)) for a in support], n)
            if not (is_ideal(T, K) and intersect(I, K).is_zero() and subspace_sum(I, K) == J):
                ok = False
        out["j_complement"] = ok
    if all(hyp.values()) and prime:
        out["prime_forces_j"] = not proper_in_j
    return out

# ltsplit/corpus.py
"""Built-in example systems and the invariants recorded for them in the golden files."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple, Union

from .leibniz_embedding import (
    LeibnizAlgebra,
    check_right_leibniz,
    derived_triple_system,
    direct_sum_algebras,
    masa_check,
    masa_from_pairs,
    standard_embedding,
)
from .root_connectivity import connection_classes, j_partition, simplicity_report
from .split_decomposition import decompose, format_root, is_maximal_length
from .triple_core import TripleSystem, annihilator, check_leibniz_triple, j_ideal
from .models import AlgebraError

logger = logging.getLogger(__name__)

System = Union[LeibnizAlgebra, TripleSystem]
PairTerms = Tuple[Tuple[int, int, Fraction], ...]

SL2_NAMES = ("h", "e", "f")


@dataclass(frozen=True)
class CorpusItem:
    name: str
    label: str
    description: str
    system: System
    masa_pairs: Optional[Tuple[PairTerms, ...]] = None  # triple systems only


def _pair(i: int, j: int, c: int = 1) -> PairTerms:
    return ((i, j, Fraction(c)),)


def sl2_entries(shift: int = 0) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """[h,e] = 2e, [h,f] = -2f, [e,f] = h on basis (h, e, f), antisymmetric."""
    h, e, f = shift, shift + 1, shift + 2
    base = {(h, e): {e: 2}, (h, f): {f: -2}, (e, f): {h: 1}}
    out: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (a, b), val in base.items():
        out[(a, b)] = {k: Fraction(v) for k, v in val.items()}
        out[(b, a)] = {k: -Fraction(v) for k, v in val.items()}
    return out


def sl2() -> LeibnizAlgebra:
    return LeibnizAlgebra.from_entries(3, sl2_entries(), SL2_NAMES)


def square_zero_algebra() -> LeibnizAlgebra:
    """Two-dimensional, [e2, e2] = e1 with everything else zero (0-based: [e1, e1] = e0)."""
    return LeibnizAlgebra.from_entries(2, {(1, 1): {0: Fraction(1)}}, ("e1", "e2"))


def hemisemidirect_adjoint() -> LeibnizAlgebra:
    """sl2 + M with M the adjoint module: [x + m, y + n] = [x, y] + [m, y]."""
    entries = sl2_entries()
    for (a, b), val in sl2_entries().items():
        entries[(a + 3, b)] = {k + 3: c for k, c in val.items()}
    return LeibnizAlgebra.from_entries(6, entries, SL2_NAMES + ("h'", "e'", "f'"))


def hemisemidirect_standard() -> LeibnizAlgebra:
    """sl2 + V with V the 2-dim standard module acting on the right: [x + v, y + w] = [x, y] + v.y."""
    h, e, f, v1, v2 = range(5)
    entries = sl2_entries()
    entries[(v1, h)] = {v1: Fraction(-1)}
    entries[(v2, h)] = {v2: Fraction(1)}
    entries[(v2, e)] = {v1: Fraction(-1)}
    entries[(v1, f)] = {v2: Fraction(-1)}
    return LeibnizAlgebra.from_entries(5, entries, SL2_NAMES + ("v1", "v2"))


@lru_cache(maxsize=1)
def _build() -> Tuple[CorpusItem, ...]:
    items: List[CorpusItem] = []
    for d in (1, 2, 3):
        items.append(CorpusItem(f"c1_zero_{d}", "C1", f"zero triple system of dimension {d}", TripleSystem.zero(d), ()))

    sq = square_zero_algebra()
    items.append(CorpusItem("c2_algebra", "C2", "2-dim Leibniz algebra with [e2,e2] = e1", sq))
    items.append(CorpusItem("c2_derived", "C2", "derived system of c2_algebra (zero tensor)", derived_triple_system(sq), ()))

    s = sl2()
    items.append(CorpusItem("c3_sl2", "C3", "sl2 as a Leibniz algebra", s))
    items.append(CorpusItem("c3_sl2_derived", "C3", "derived system of sl2, Cartan MASA from e(x)f",
                            derived_triple_system(s), (_pair(1, 2),)))

    ss = direct_sum_algebras(s, s)
    items.append(CorpusItem("c4_sl2_sum_derived", "C4", "derived system of sl2 + sl2, both Cartan lines",
                            derived_triple_system(ss), (_pair(1, 2), _pair(4, 5))))

    hs = hemisemidirect_adjoint()
    items.append(CorpusItem("c5_hs1", "C5", "hemisemidirect sl2 + adjoint module", hs))
    items.append(CorpusItem("c5_hs1_derived", "C5", "derived system of c5_hs1, MASA from e(x)f and e'(x)f",
                            derived_triple_system(hs), (_pair(1, 2), _pair(4, 2))))

    hv = hemisemidirect_standard()
    items.append(CorpusItem("c6_hs_standard", "C6", "hemisemidirect sl2 + standard module", hv))
    items.append(CorpusItem("c6_hs_standard_derived", "C6", "derived system of c6_hs_standard, MASA from e(x)f",
                            derived_triple_system(hv), (_pair(1, 2),)))
    return tuple(items)


def build_corpus() -> Dict[str, CorpusItem]:
    return {item.name: item for item in _build()}


def get_item(name: str) -> CorpusItem:
    corpus = build_corpus()
    if name not in corpus:
        raise AlgebraError(f"Unknown corpus item {name!r}; try one of {sorted(corpus)}", code="E_PARSE")
    return corpus[name]


def annotate(item: CorpusItem) -> Dict[str, Any]:
    """Invariants of a corpus item, in the shape stored in the golden annotations file."""
    obj = item.system
    if isinstance(obj, LeibnizAlgebra):
        return {"kind": "leibniz_algebra", "dim": obj.dim, "right_leibniz": check_right_leibniz(obj).passed}

    T = obj
    out: Dict[str, Any] = {"kind": "leibniz_triple_system", "dim": T.dim}
    out["identities"] = check_leibniz_triple(T).passed
    J = j_ideal(T)
    out["j_rank"] = J.rank
    out["lie_triple_system"] = J.is_zero()
    out["annihilator_rank"] = annihilator(T).rank
    E = standard_embedding(T)
    out["l0_dim"] = E.l0_dim
    out["kernel_rank"] = E.kernel.rank
    masa = masa_from_pairs(E, item.masa_pairs or ())
    check = masa_check(E, masa)
    out["masa_abelian"] = check.abelian
    out["masa_maximal"] = check.maximal
    D = decompose(T, E, masa)
    out["t_zero_rank"] = D.t_zero.rank
    out["t_roots"] = {format_root(a): s.rank for a, s in sorted(D.t_roots.items())}
    out["l0_zero_rank"] = D.l0_zero.rank
    out["l0_roots"] = {format_root(a): s.rank for a, s in sorted(D.l0_roots.items())}
    out["split"] = D.split_certified
    out["maximal_length"] = is_maximal_length(D)
    out["connection_classes"] = len(connection_classes(D).classes)
    try:
        P = j_partition(D)
        out["lambda_j"] = [format_root(a) for a in P.lambda_j]
        out["lambda_not_j"] = [format_root(a) for a in P.lambda_not_j]
    except AlgebraError as e:
        if e.code != "E_MIXED_ROOT_SPACE":
            raise
        out["lambda_j"] = None
        out["lambda_not_j"] = None
    report = simplicity_report(T, D)
    out["verdict_theorem"] = report.verdict_theorem
    out["verdict_bruteforce"] = report.verdict_bruteforce
    return out

# ltsplit/formats.py
"""JSON file formats: system files, MASA files, embeddings and decompositions.

Canonical text is ``json.dumps(data, indent=2, ensure_ascii=False)`` plus a trailing newline, with
products sorted by their index tuple and zero coefficients omitted, so emit(parse(f)) == f for
canonical files.
"""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from .exact_linear import format_matrix, format_scalar, to_scalar
from .leibniz_embedding import LeibnizAlgebra, StandardEmbedding, masa_from_pairs, standard_embedding
from .models import SCHEMA_VERSION, AlgebraError, Vector
from .split_decomposition import RootDecomposition, decompose
from .triple_core import TripleSystem

logger = logging.getLogger(__name__)

KIND_ALGEBRA = "leibniz_algebra"
KIND_TRIPLE = "leibniz_triple_system"
KIND_EMBEDDING = "standard_embedding"
KIND_DECOMPOSITION = "root_decomposition"

_KIND_ALIASES = {
    "leibniz_algebra": KIND_ALGEBRA,
    "algebra": KIND_ALGEBRA,
    "leibniz_triple_system": KIND_TRIPLE,
    "triple": KIND_TRIPLE,
}

System = Union[LeibnizAlgebra, TripleSystem]


def _parse_error(message: str, where: str, **detail) -> AlgebraError:
    return AlgebraError(f"{where}: {message}", code="E_PARSE", detail={"field": where, **detail})


def dumps_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise AlgebraError(f"{path}: cannot read file ({e.strerror})", code="E_PARSE", detail={"path": path}) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraError(
            f"{path}:{e.lineno}:{e.colno}: invalid JSON ({e.msg})",
            code="E_PARSE",
            detail={"path": path, "line": e.lineno, "column": e.colno},
        ) from e


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise AlgebraError(f"{path}: cannot write file ({e.strerror})", code="E_IO", detail={"path": path}) from e


# ---------- system files ----------

def _index(value: Any, dim: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise _parse_error(f"index {value!r} is not an integer", where)
    try:
        idx = int(value)
    except ValueError as e:
        raise _parse_error(f"index {value!r} is not an integer", where) from e
    if not 0 <= idx < dim:
        raise AlgebraError(f"{where}: index {idx} out of range for dimension {dim}", code="E_INDEX_RANGE",
                           detail={"field": where, "index": idx})
    return idx


def _scalar(value: Any, where: str) -> Fraction:
    try:
        return to_scalar(value)
    except AlgebraError as e:
        raise AlgebraError(f"{where}: {e}", code="E_BAD_SCALAR", detail={"field": where}) from e


def system_from_data(data: Any, source: str = "<data>") -> System:
    if not isinstance(data, dict):
        raise _parse_error("top level must be an object", source)
    kind = _KIND_ALIASES.get(str(data.get("kind", "")))
    if kind is None:
        raise _parse_error(f"unknown kind {data.get('kind')!r}", f"{source}.kind")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise _parse_error(f"dim must be a positive integer, got {dim!r}", f"{source}.dim")
    basis = data.get("basis")
    if basis is not None and (
        not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis)
    ):
        raise _parse_error(f"basis must be a list of {dim} names", f"{source}.basis")
    products = data.get("products", [])
    if not isinstance(products, list):
        raise _parse_error("products must be a list", f"{source}.products")

    arity = 2 if kind == KIND_ALGEBRA else 3
    entries: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for pos, entry in enumerate(products):
        where = f"{source}.products[{pos}]"
        if not isinstance(entry, dict) or "args" not in entry or "value" not in entry:
            raise _parse_error("entry needs 'args' and 'value'", where)
        args = entry["args"]
        if not isinstance(args, list) or len(args) != arity:
            raise _parse_error(f"arity mismatch: {kind} entries take {arity} indices", f"{where}.args")
        key = tuple(_index(a, dim, f"{where}.args") for a in args)
        if key in entries:
            raise _parse_error(f"duplicate entry for args {list(key)}", f"{where}.args")
        value = entry["value"]
        if not isinstance(value, dict):
            raise _parse_error("value must map output indices to scalar strings", f"{where}.value")
        out: Dict[int, Fraction] = {}
        for k, v in value.items():
            l = _index(k, dim, f"{where}.value")
            c = _scalar(v, f"{where}.value[{k}]")
            if c:
                out[l] = c
        entries[key] = out

    names = tuple(basis) if basis else None
    if kind == KIND_ALGEBRA:
        return LeibnizAlgebra.from_entries(dim, entries, names)
    return TripleSystem.from_entries(dim, entries, names)


def parse_system(path: str) -> System:
    obj = system_from_data(read_json(path), path)
    logger.info("parsed %s of dimension %d from %s", type(obj).__name__, obj.dim, path)
    return obj


def system_to_data(obj: System) -> Dict[str, Any]:
    kind = KIND_ALGEBRA if isinstance(obj, LeibnizAlgebra) else KIND_TRIPLE
    data: Dict[str, Any] = {"kind": kind, "dim": obj.dim}
    if obj.basis_names:
        data["basis"] = list(obj.basis_names)
    data["products"] = [
        {"args": list(key), "value": {str(l): format_scalar(c) for l, c in terms}}
        for key, terms in sorted(obj.nonzero.items())
    ]
    return data


def emit_system(obj: System) -> str:
    return dumps_json(system_to_data(obj))


# ---------- MASA files ----------

PairTerms = Tuple[Tuple[int, int, Fraction], ...]


def masa_pairs_to_data(pairs: Sequence[PairTerms]) -> Dict[str, Any]:
    return {"pair_elements": [[[i, j, format_scalar(c)] for i, j, c in terms] for terms in pairs]}


def masa_elements_to_data(elements: Sequence[Vector]) -> Dict[str, Any]:
    return {"elements": format_matrix(elements)}


def masa_from_data(data: Any, E: StandardEmbedding, source: str = "<masa>") -> List[Vector]:
    if not isinstance(data, dict) or ("elements" not in data and "pair_elements" not in data):
        raise _parse_error("MASA file needs 'elements' or 'pair_elements'", source)
    out: List[Vector] = []
    for pos, vec in enumerate(data.get("elements", [])):
        where = f"{source}.elements[{pos}]"
        if not isinstance(vec, list):
            raise _parse_error("element must be a list of scalar strings", where)
        if len(vec) != E.l0_dim:
            raise AlgebraError(f"{where}: length {len(vec)} differs from l0_dim {E.l0_dim}", code="E_NOT_IN_L0",
                               detail={"field": where})
        out.append(tuple(_scalar(x, f"{where}[{k}]") for k, x in enumerate(vec)))
    pairs = []
    for pos, terms in enumerate(data.get("pair_elements", [])):
        where = f"{source}.pair_elements[{pos}]"
        if not isinstance(terms, list):
            raise _parse_error("pair element must be a list of [i, j, scalar] terms", where)
        parsed = []
        for t, term in enumerate(terms):
            if not isinstance(term, list) or len(term) != 3:
                raise _parse_error("term must be [i, j, scalar]", f"{where}[{t}]")
            parsed.append((_index(term[0], E.n, f"{where}[{t}]"), _index(term[1], E.n, f"{where}[{t}]"),
                           _scalar(term[2], f"{where}[{t}]")))
        pairs.append(tuple(parsed))
    out.extend(masa_from_pairs(E, pairs))
    return out


def parse_masa(path: str, E: StandardEmbedding) -> List[Vector]:
    return masa_from_data(read_json(path), E, path)


# ---------- embeddings & decompositions ----------

def embedding_to_data(E: StandardEmbedding) -> Dict[str, Any]:
    algebra = system_to_data(E.algebra)
    algebra.pop("kind")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_EMBEDDING,
        **algebra,
        "grading": {
            "l0_dim": E.l0_dim,
            "kernel_rank": E.kernel.rank,
            "pair_map": format_matrix(E.pair_map),
            "free_pairs": [list(p) for p in E.free_pairs],
        },
        "base": system_to_data(E.base),
    }


def embedding_from_data(data: Any, source: str = "<embedding>") -> StandardEmbedding:
    if not isinstance(data, dict) or data.get("kind") != KIND_EMBEDDING or "base" not in data:
        raise _parse_error("not an embedding file", source)
    base = system_from_data(data["base"], f"{source}.base")
    if not isinstance(base, TripleSystem):
        raise _parse_error("embedding base must be a triple system", f"{source}.base")
    E = standard_embedding(base)
    stored = data.get("grading", {}).get("pair_map")
    if stored is not None and stored != format_matrix(E.pair_map):
        raise _parse_error("stored pair_map does not match the recomputed embedding", f"{source}.grading.pair_map")
    return E


def load_embedding(path: str) -> StandardEmbedding:
    """Accepts an embedding file, or a triple-system file whose embedding is then computed."""
    data = read_json(path)
    if isinstance(data, dict) and data.get("kind") == KIND_EMBEDDING:
        return embedding_from_data(data, path)
    T = system_from_data(data, path)
    if not isinstance(T, TripleSystem):
        raise _parse_error("expected a triple system or an embedding", path)
    return standard_embedding(T)


def decomposition_to_data(D: RootDecomposition) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_DECOMPOSITION,
        "system": system_to_data(D.system),
        "masa": masa_elements_to_data(D.masa),
        "roots": D.to_dict(),
    }


def decomposition_from_data(data: Any, source: str = "<decomposition>") -> RootDecomposition:
    if not isinstance(data, dict) or data.get("kind") != KIND_DECOMPOSITION:
        raise _parse_error("not a decomposition file", source)
    T = system_from_data(data.get("system"), f"{source}.system")
    if not isinstance(T, TripleSystem):
        raise _parse_error("decomposition system must be a triple system", f"{source}.system")
    E = standard_embedding(T)
    D = decompose(T, E, masa_from_data(data.get("masa"), E, f"{source}.masa"))
    stored = data.get("roots")
    if stored is not None and stored != D.to_dict():
        raise _parse_error("stored root tables do not match the recomputed decomposition", f"{source}.roots")
    return D


def load_decomposition(path: str) -> RootDecomposition:
    return decomposition_from_data(read_json(path), path)

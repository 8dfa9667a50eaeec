# ltsplit/cli.py
"""Command-line front end: ``python -m ltsplit <command> ...``.

Exit codes: 0 success or a true verdict, 1 a checked-false verdict, 2 usage, parse or internal error.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from .corpus import build_corpus, get_item
from .exact_linear import format_matrix, format_vector
from .formats import (
    decomposition_to_data,
    dumps_json,
    emit_system,
    embedding_to_data,
    load_decomposition,
    load_embedding,
    masa_pairs_to_data,
    parse_masa,
    parse_system,
    write_text,
)
from .leibniz_embedding import LeibnizAlgebra, check_right_leibniz, derived_triple_system, masa_check
from .models import NOT_SPLIT_CODES, SCHEMA_VERSION, AlgebraError, MissingDepsError
from .root_connectivity import (
    SIMPLE,
    check_root_multiplicative,
    connection_classes,
    enumerate_ideals_maximal_length,
    find_connection,
    find_nj_connection,
    j_partition,
    nj_classes,
    simplicity_report,
    validate_connection,
)
from .split_decomposition import decompose, format_root, parse_root
from .triple_core import TripleSystem, check_j_properties, check_leibniz_triple, j_ideal

logger = logging.getLogger(__name__)

OK, FALSE, ERROR = 0, 1, 2


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"
    else:
        level = os.getenv("LTSPLIT_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _output(args: argparse.Namespace, data: Dict[str, Any], lines: Sequence[str]) -> None:
    if args.json:
        sys.stdout.write(dumps_json({"schema_version": SCHEMA_VERSION, **data}))
    else:
        for line in lines:
            print(line)


def _write_or_print(path: Optional[str], text: str) -> None:
    if path:
        write_text(path, text)
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _triple(path: str) -> TripleSystem:
    obj = parse_system(path)
    if not isinstance(obj, TripleSystem):
        raise AlgebraError(f"{path}: expected a leibniz_triple_system file", code="E_PARSE", detail={"path": path})
    return obj


def _decomposition_from(args: argparse.Namespace):
    E = load_embedding(args.file)
    H = parse_masa(args.masa, E)
    return decompose(E.base, E, H)


# ---------- commands ----------

def cmd_verify(args: argparse.Namespace) -> int:
    obj = parse_system(args.file)
    if isinstance(obj, LeibnizAlgebra):
        report = check_right_leibniz(obj, limit=args.limit)
        what = "right Leibniz identity"
    else:
        report = check_leibniz_triple(obj, limit=args.limit)
        what = "Leibniz triple identities"
    lines = [f"{what}: {'ok' if report.passed else 'FAILED'}"]
    for v in report.violations:
        lines.append(f"  {v.identity} at {list(v.indices)}: defect {format_vector(v.defect)}")
    if report.truncated:
        lines.append("  (truncated)")
    _output(args, {"kind": type(obj).__name__, "report": report.to_dict()}, lines)
    return OK if report.passed else FALSE


def cmd_derive(args: argparse.Namespace) -> int:
    obj = parse_system(args.file)
    if not isinstance(obj, LeibnizAlgebra):
        raise AlgebraError(f"{args.file}: derive needs a leibniz_algebra file", code="E_PARSE")
    _write_or_print(args.output, emit_system(derived_triple_system(obj)))
    return OK


def cmd_embed(args: argparse.Namespace) -> int:
    E = load_embedding(args.file)
    _write_or_print(args.output, dumps_json(embedding_to_data(E)))
    return OK


def cmd_masa_check(args: argparse.Namespace) -> int:
    E = load_embedding(args.embedding)
    H = parse_masa(args.masa, E)
    check = masa_check(E, H)
    lines = [
        f"abelian: {check.abelian}",
        f"maximal: {check.maximal}",
        f"centralizer rank: {check.centralizer.rank}",
    ]
    _output(args, {"masa": format_matrix(H), **check.to_dict()}, lines)
    return OK if check.abelian and check.maximal == "yes" else FALSE


def cmd_decompose(args: argparse.Namespace) -> int:
    D = _decomposition_from(args)
    data = decomposition_to_data(D)
    if args.output:
        write_text(args.output, dumps_json(data))
        logger.info("wrote %s", args.output)
    if args.json or not args.output:
        sys.stdout.write(dumps_json(data))
    return OK if D.split_certified else FALSE


def _root_lines(D) -> List[str]:
    lines = [f"T0: rank {D.t_zero.rank}"]
    lines += [f"T[{format_root(a)}]: rank {D.t_roots[a].rank}" for a in D.lambda1]
    lines.append(f"L0_0: rank {D.l0_zero.rank}")
    lines += [f"L0[{format_root(a)}]: rank {D.l0_roots[a].rank}" for a in D.lambda0]
    return lines


def cmd_roots(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    lines = _root_lines(D) + [f"split certified: {D.split_certified}"]
    _output(args, D.to_dict(), lines)
    return OK if D.split_certified else FALSE


def cmd_connect(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    alpha, beta = parse_root(args.source), parse_root(args.target)
    if args.not_j:
        P = j_partition(D)
        conn = find_nj_connection(D, P, alpha, beta)
    else:
        P = None
        conn = find_connection(D, alpha, beta)
    if conn is None:
        _output(args, {"connected": False, "connection": None},
                [f"no connection from {args.source} to {args.target}"])
        return FALSE
    if not validate_connection(D, conn, alpha, beta, P):
        raise AlgebraError("Found chain fails re-validation", code="E_INTERNAL")
    sign = "" if conn.target_sign == 1 else "-"
    lines = [f"{args.source} ~ {sign}({args.target}) via " + " ; ".join(format_root(a) for a in conn.chain)]
    _output(args, {"connected": True, "connection": conn.to_dict()}, lines)
    return OK


def cmd_classes(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    if args.not_j:
        classes = nj_classes(D, j_partition(D))
        data = classes.to_dict()
        lines = ["Lambda^notJ:"] + [f"  {{{'; '.join(format_root(a) for a in c)}}}" for c in classes.not_j.classes]
        lines += ["Lambda^J:"] + [f"  {{{'; '.join(format_root(a) for a in c)}}}" for c in classes.j.classes]
        warnings = [w for w in (classes.not_j.warning, classes.j.warning) if w]
    else:
        rc = connection_classes(D)
        data = rc.to_dict()
        lines = [f"{{{'; '.join(format_root(a) for a in c)}}}" for c in rc.classes]
        warnings = [rc.warning] if rc.warning else []
    for w in warnings:
        logger.warning("%s", w)
    _output(args, data, lines)
    return OK


def cmd_j(args: argparse.Namespace) -> int:
    T = _triple(args.file)
    J = j_ideal(T)
    props = check_j_properties(T, J)
    lines = [f"J: rank {J.rank}", f"Lie triple system: {J.is_zero()}"]
    lines += [f"  {row}" for row in format_matrix(J.basis)]
    _output(args, {"j": J.to_dict(), "lie_triple_system": J.is_zero(), "properties": props}, lines)
    return OK


def cmd_partition(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    P = j_partition(D)
    lines = [
        "Lambda^J: " + " ".join(format_root(a) for a in P.lambda_j),
        "Lambda^notJ: " + " ".join(format_root(a) for a in P.lambda_not_j),
    ]
    _output(args, P.to_dict(), lines)
    return OK


def cmd_multiplicative(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    report = check_root_multiplicative(D.system, D, j_partition(D))
    lines = [f"root-multiplicative: {report.passed}"]
    lines += [f"  {f.condition} {[format_root(r) for r in f.roots]}: {f.evidence}" for f in report.findings]
    _output(args, report.to_dict(), lines)
    return OK if report.passed else FALSE


def cmd_ideals(args: argparse.Namespace) -> int:
    D = load_decomposition(args.decomposition)
    family = enumerate_ideals_maximal_length(D.system, D, args.subset_cap)
    members = [
        {"label": m.label, "aliases": list(m.aliases), **m.space.to_dict()} for m in family.members
    ]
    lines = [
        f"{m.label}: rank {m.space.rank}" + (f" (also {', '.join(m.aliases)})" if m.aliases else "")
        for m in family.members
    ]
    _output(args, {"ideals": members}, lines)
    return OK


def cmd_report(args: argparse.Namespace) -> int:
    D = _decomposition_from(args)
    report = simplicity_report(D.system, D, args.subset_cap)
    if args.json:
        sys.stdout.write(dumps_json(report.to_dict()))
    else:
        print(f"verdict: {report.verdict}")
        print(f"  theorem: {report.verdict_theorem}")
        print(f"  enumeration: {report.verdict_bruteforce}")
        for key, value in report.hypotheses.items():
            print(f"  [{'x' if value else ' '}] {key}")
        if report.witness:
            print(f"  witness: {report.witness}")
        for note in report.notes:
            print(f"  note: {note}")
    return OK if report.verdict == SIMPLE else FALSE


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.action == "list":
        items = build_corpus()
        data = {"items": [{"name": it.name, "label": it.label, "description": it.description} for it in items.values()]}
        _output(args, data, [f"{it.name:<26} {it.label}  {it.description}" for it in items.values()])
        return OK
    if args.action == "emit":
        if not args.name:
            raise AlgebraError("corpus emit needs an item name", code="E_PARSE")
        item = get_item(args.name)
        if args.masa:
            if item.masa_pairs is None:
                raise AlgebraError(f"{item.name} has no MASA file", code="E_PARSE")
            sys.stdout.write(dumps_json(masa_pairs_to_data(item.masa_pairs)))
        else:
            sys.stdout.write(emit_system(item.system))
        return OK
    target = args.name or os.getenv("LTSPLIT_CORPUS_DIR", "")
    if not target:
        raise AlgebraError("corpus write needs a directory", code="E_PARSE")
    written = write_corpus(target)
    _output(args, {"written": written}, written)
    return OK


def write_corpus(directory: str) -> List[str]:
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise AlgebraError(f"{directory}: cannot create directory ({e.strerror})", code="E_IO",
                           detail={"path": directory}) from e
    written = []
    for item in build_corpus().values():
        path = os.path.join(directory, f"{item.name}.json")
        write_text(path, emit_system(item.system))
        written.append(path)
        if item.masa_pairs is not None:
            path = os.path.join(directory, f"{item.name}.masa.json")
            write_text(path, dumps_json(masa_pairs_to_data(item.masa_pairs)))
            written.append(path)
    return written


# ---------- parser ----------

def _common(sub: bool) -> argparse.ArgumentParser:
    # Subcommand copies default to SUPPRESS so they never clobber flags given before the command.
    default = argparse.SUPPRESS if sub else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default if sub else False,
                   help="Machine-readable JSON on stdout")
    p.add_argument("-v", "--verbose", action="count", default=default if sub else 0,
                   help="More logging on stderr (repeatable)")
    p.add_argument("--subset-cap", type=int, default=default,
                   help="Maximum number of roots for ideal enumeration (default: $LTSPLIT_SUBSET_CAP or 16)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltsplit",
        description="Exact computations on split Leibniz triple systems.",
        parents=[_common(sub=False)],
    )
    subs = parser.add_subparsers(dest="command", required=True)
    common = [_common(sub=True)]

    def add(name: str, func: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        p = subs.add_parser(name, help=help_text, parents=common)
        p.set_defaults(func=func)
        return p

    p = add("verify", cmd_verify, "Check the defining identities of an algebra or triple-system file")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=None, help="Stop after this many violations")

    p = add("derive", cmd_derive, "Derived triple system {x,y,z} = [[x,y],z] of a Leibniz algebra")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="Write here instead of stdout")

    p = add("embed", cmd_embed, "Standard embedding of a triple system")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="Write here instead of stdout")

    p = add("masa-check", cmd_masa_check, "Check that MASA elements are abelian and maximal")
    p.add_argument("embedding", help="Embedding file, or a triple-system file")
    p.add_argument("masa")

    p = add("decompose", cmd_decompose, "Root-space decomposition relative to a MASA")
    p.add_argument("file", help="Triple-system or embedding file")
    p.add_argument("--masa", required=True)
    p.add_argument("-o", "--output", help="Write the decomposition file here")

    p = add("roots", cmd_roots, "Print the root tables of a decomposition file")
    p.add_argument("decomposition")

    p = add("connect", cmd_connect, "Find a connection between two roots")
    p.add_argument("decomposition")
    p.add_argument("--from", dest="source", required=True, help="Root as comma-separated rationals, e.g. 2,-1/2")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--not-j", action="store_true", help="Use not-J connections inside one part")

    p = add("classes", cmd_classes, "Connection classes of the roots")
    p.add_argument("decomposition")
    p.add_argument("--not-j", action="store_true")

    p = add("j", cmd_j, "The ideal J spanned by the Lie-defect products")
    p.add_argument("file")

    p = add("partition", cmd_partition, "Split the roots into Lambda^J and Lambda^notJ")
    p.add_argument("decomposition")

    p = add("multiplicative", cmd_multiplicative, "Check root-multiplicativity")
    p.add_argument("decomposition")

    p = add("ideals", cmd_ideals, "Enumerate the ideal family of a maximal-length system")
    p.add_argument("decomposition")

    p = add("report", cmd_report, "Reports; currently only 'simplicity'")
    p.add_argument("report", choices=["simplicity"])
    p.add_argument("file", help="Triple-system or embedding file")
    p.add_argument("--masa", required=True)

    p = add("corpus", cmd_corpus, "Built-in example corpus")
    p.add_argument("action", choices=["list", "emit", "write"])
    p.add_argument("name", nargs="?", help="Item name for emit, directory for write")
    p.add_argument("--masa", action="store_true", help="emit: print the item's MASA file instead")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ERROR
    for key, fallback in (("json", False), ("verbose", 0), ("subset_cap", None)):
        if not hasattr(args, key):
            setattr(args, key, fallback)
    _configure_logging(args.verbose)

    try:
        return args.func(args)
    except AlgebraError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        if args.json:
            sys.stdout.write(dumps_json({"schema_version": SCHEMA_VERSION, "error": e.to_dict()}))
        return FALSE if e.code in NOT_SPLIT_CODES else ERROR
    except MissingDepsError as e:
        print(f"error[E_MISSING_DEPS]: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())

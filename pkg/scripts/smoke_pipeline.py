import argparse
import json
import os
import sys

from ltsplit.cli import write_corpus
from ltsplit.formats import load_embedding, parse_masa
from ltsplit.models import AlgebraError
from ltsplit.root_connectivity import connection_classes, simplicity_report
from ltsplit.split_decomposition import decompose, format_root


def run_item(path: str, masa_path: str) -> dict:
    E = load_embedding(path)
    D = decompose(E.base, E, parse_masa(masa_path, E))
    report = simplicity_report(D.system, D)
    return {
        "file": os.path.basename(path),
        "dim": E.base.dim,
        "l0_dim": E.l0_dim,
        "roots": [format_root(a) for a in D.lambda1],
        "classes": len(connection_classes(D).classes),
        "verdict": report.verdict,
        "witness": report.witness,
    }


def main():
    parser = argparse.ArgumentParser(
        description="Write the corpus, then run the full pipeline (embed, decompose, report) on every triple item."
    )
    parser.add_argument(
        "directory",
        nargs="?",
        default=os.getenv("LTSPLIT_CORPUS_DIR", os.path.join("sample_data", "corpus")),
        help="Corpus directory (default: $LTSPLIT_CORPUS_DIR or sample_data/corpus)",
    )
    parser.add_argument(
        "--no-write",
        action="store_true",
        help="Use the files already in the directory",
    )
    parser.add_argument(
        "--pretty",
        action="store_true",
        help="Pretty-print JSON output",
    )

    args = parser.parse_args()

    # 1) Materialize the corpus
    if not args.no_write:
        written = write_corpus(args.directory)
        print(f"Wrote {len(written)} files to {args.directory}", file=sys.stderr)

    # 2) Every system file with a MASA next to it goes through the pipeline
    results = []
    failures = 0
    for name in sorted(os.listdir(args.directory)):
        if not name.endswith(".masa.json"):
            continue
        masa_path = os.path.join(args.directory, name)
        path = masa_path[: -len(".masa.json")] + ".json"
        try:
            results.append(run_item(path, masa_path))
        except AlgebraError as e:
            failures += 1
            results.append({"file": os.path.basename(path), "error": e.to_dict()})

    if args.pretty:
        print(json.dumps(results, indent=2, ensure_ascii=False))
    else:
        print(json.dumps(results, ensure_ascii=False))
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    main()

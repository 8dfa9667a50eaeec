import argparse
import json
import os
import sys

# Recompute the corpus annotations with the library itself
from ltsplit.corpus import annotate, build_corpus
from ltsplit.models import SCHEMA_VERSION, AlgebraError


def main():
    parser = argparse.ArgumentParser(
        description="Recompute golden annotations for the built-in corpus and diff them against a stored file."
    )
    parser.add_argument(
        "golden",
        nargs="?",
        default=os.path.join("tests", "golden", "annotations.json"),
        help="Stored annotations file (default: tests/golden/annotations.json)",
    )
    parser.add_argument(
        "--write",
        action="store_true",
        help="Overwrite the stored file instead of only reporting differences",
    )
    parser.add_argument(
        "--pretty",
        action="store_true",
        help="Pretty-print JSON output",
    )

    args = parser.parse_args()

    try:
        items = {name: annotate(item) for name, item in build_corpus().items()}
    except AlgebraError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        raise SystemExit(2)
    fresh = {"schema_version": SCHEMA_VERSION, "items": items}

    if args.write:
        with open(args.golden, "w", encoding="utf-8") as f:
            f.write(json.dumps(fresh, indent=2, ensure_ascii=False) + "\n")
        print(f"Wrote {len(items)} annotations to {args.golden}", file=sys.stderr)
        return

    # Hand-derived values stay authoritative; report drift rather than silently replacing them
    with open(args.golden, "r", encoding="utf-8") as f:
        stored = json.load(f).get("items", {})
    drift = {}
    for name in sorted(set(items) | set(stored)):
        got, want = items.get(name, {}), stored.get(name, {})
        diff = {k: {"computed": got.get(k), "stored": want.get(k)} for k in sorted(set(got) | set(want))
                if got.get(k) != want.get(k)}
        if diff:
            drift[name] = diff

    if args.pretty:
        print(json.dumps(drift, indent=2, ensure_ascii=False))
    else:
        print(json.dumps(drift, ensure_ascii=False))
    if drift:
        raise SystemExit(1)


if __name__ == "__main__":
    main()

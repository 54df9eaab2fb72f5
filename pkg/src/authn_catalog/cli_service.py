"""Command-line interface: validate, name, query, stats, export, serve.

The catalog path comes from `--catalog`, the CATALOG_PATH environment
variable, or the bundled seed dataset, in that order. Exit codes: 0 on
success, 1 on lint violations / unknown entries / bad queries, 2 when the
catalog itself fails to load.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog_store, http_api, naming
from .catalog_store import CatalogDocument, CatalogError, IntegrityError, ParseError
from .query_engine import QueryError, TARGETS, TARGET_TECHNIQUES, run_query

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_LOAD_ERROR = 2


def resolve_catalog_path(explicit: str | None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("CATALOG_PATH")
    if env:
        return Path(env)
    return catalog_store.seed_path()


def _load(path: Path) -> CatalogDocument:
    """Load or exit(2); hard load failures are not recoverable CLI-side."""
    try:
        document, _ = catalog_store.load_path(path)
        return document
    except FileNotFoundError:
        _fail(f"catalog file not found: {path}")
    except (ParseError, IntegrityError, CatalogError) as exc:
        _fail(f"cannot load {path}: {exc}")
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")


def _fail(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(EXIT_LOAD_ERROR)


def cmd_validate(args) -> int:
    document = _load(resolve_catalog_path(args.catalog))
    report = catalog_store.lint(document, args.level)
    for violation in report:
        print(f"{violation.entry_id or '-'}\t{violation.rule}\t{violation.message}")
    return EXIT_VIOLATIONS if report else EXIT_OK


def _find_entry(document: CatalogDocument, entry_id: str):
    technique = document.technique(entry_id)
    if technique is not None:
        return technique, document.technique_scheme
    authenticator = document.authenticator(entry_id)
    if authenticator is not None:
        return authenticator, document.authenticator_scheme
    return None, None


def cmd_name(args) -> int:
    document = _load(resolve_catalog_path(args.catalog))
    entry, scheme = _find_entry(document, args.entry_id)
    if entry is None:
        print(f"error: unknown entry {args.entry_id!r}", file=sys.stderr)
        return EXIT_VIOLATIONS
    if args.readable:
        print(naming.readable_name(entry.assignment, scheme, omit_multi=args.omit_multi))
    else:
        print(naming.classification_name(entry.assignment, scheme))
    return EXIT_OK


def cmd_query(args) -> int:
    document = _load(resolve_catalog_path(args.catalog))
    try:
        entries = run_query(document, args.target, args.query)
    except QueryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.position >= 0:
            print(f"  {args.query}", file=sys.stderr)
            print(f"  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_VIOLATIONS
    scheme = (
        document.technique_scheme
        if args.target == TARGET_TECHNIQUES
        else document.authenticator_scheme
    )
    rows = [
        {
            "id": entry.id,
            "name": entry.name,
            "classification_name": naming.classification_name(
                entry.assignment, scheme
            ),
        }
        for entry in entries
    ]
    if args.format == "json":
        print(json.dumps(rows, indent=2, ensure_ascii=False))
    else:
        for row in rows:
            print(f"{row['id']}\t{row['name']}\t{row['classification_name']}")
    return EXIT_OK


def cmd_stats(args) -> int:
    document = _load(resolve_catalog_path(args.catalog))
    print(json.dumps(http_api.stats_payload(document), indent=2, ensure_ascii=False))
    return EXIT_OK


def export_bundle(document: CatalogDocument, out_dir: Path) -> list[Path]:
    """Write catalog.json, names.json, and stats.json; the bundle is the
    offline data source of the browser UI."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    catalog_file = out_dir / "catalog.json"
    catalog_file.write_bytes(catalog_store.save(document))
    written.append(catalog_file)

    for name, payload in (
        ("names.json", http_api.names_payload(document)),
        ("stats.json", http_api.stats_payload(document)),
    ):
        path = out_dir / name
        path.write_text(
            json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        written.append(path)
    return written


def cmd_export(args) -> int:
    document = _load(resolve_catalog_path(args.catalog))
    for path in export_bundle(document, Path(args.out_dir)):
        print(path)
    return EXIT_OK


def cmd_serve(args) -> int:
    path = resolve_catalog_path(args.catalog)
    try:
        http_api.serve(path, args.address)
    except CatalogError as exc:
        _fail(f"cannot load {path}: {exc}")
    except FileNotFoundError:
        _fail(f"catalog file not found: {path}")
    except OSError as exc:
        _fail(f"cannot serve on {args.address}: {exc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catalog",
        description="Validate, query, and serve a faceted catalog of "
        "authenticators and authentication techniques.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c",
        "--catalog",
        metavar="PATH",
        help="catalog file (default: $CATALOG_PATH, then the bundled seed)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="lint the catalog")
    p.add_argument(
        "--level",
        choices=catalog_store.LINT_LEVELS,
        default=catalog_store.STRICT,
        help="lint level (default: strict)",
    )
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("name", parents=[common], help="print an entry's name")
    p.add_argument("entry_id")
    p.add_argument("--readable", action="store_true", help="print the readable name")
    p.add_argument(
        "--omit-multi",
        action="store_true",
        help="drop the leading 'multi' for combined-factor techniques (readable only)",
    )
    p.set_defaults(func=cmd_name)

    p = sub.add_parser("query", parents=[common], help="filter catalog entries")
    p.add_argument("query", help="e.g. 'factor=multi-factor & subject-interaction=passive'")
    p.add_argument("--target", choices=TARGETS, default=TARGET_TECHNIQUES)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", parents=[common], help="print group counts")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", parents=[common], help="write the static export bundle")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", parents=[common], help="run the read-only JSON API")
    p.add_argument("--address", default="127.0.0.1:8080", metavar="HOST:PORT")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_LOAD_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

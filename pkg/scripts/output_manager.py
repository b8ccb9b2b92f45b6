#!/usr/bin/env python3
"""Utility for managing gfemod reports and regenerated tables."""

import json
import shutil
from pathlib import Path

OUTPUTS = Path("outputs")


def list_reports():
    """List acceptance reports and table files."""
    reports = sorted(OUTPUTS.glob("*.json"))
    tables = sorted((OUTPUTS / "tables").glob("*.json"))
    if not reports and not tables:
        print("No reports found.")
        return
    print(f"Found {len(reports)} reports:")
    for report in reports:
        try:
            doc = json.loads(report.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            print(f"  ❌ {report.name} (not JSON)")
            continue
        mark = "✅" if doc.get("passed") else "❌"
        print(f"  {mark} {report.name} (level {doc.get('level', '?')}, {len(doc.get('checks', []))} checks)")
    print(f"Found {len(tables)} tables in {OUTPUTS / 'tables'}")


def clean_outputs():
    """Remove generated reports and tables, keep README.md."""
    removed = 0
    for report in OUTPUTS.glob("*.json"):
        report.unlink()
        removed += 1
    tables = OUTPUTS / "tables"
    if tables.exists():
        removed += len(list(tables.glob("*.json")))
        shutil.rmtree(tables)
    print(f"✅ Removed {removed} generated files")


if __name__ == "__main__":
    import sys

    if len(sys.argv) < 2:
        print("Usage:")
        print("  python scripts/output_manager.py list")
        print("  python scripts/output_manager.py clean")
        sys.exit(1)

    command = sys.argv[1]

    if command == "list":
        list_reports()
    elif command == "clean":
        clean_outputs()
    else:
        print("Invalid command")
        sys.exit(1)

#!/usr/bin/env python3
"""Regenerate every reproduced table as JSON under outputs/tables/."""

import json
import sys
from datetime import datetime
from pathlib import Path

from sympy import primerange

from gfemod.cli import encode
from gfemod.core.frey_local import (
    CURVE_MATRIX,
    LOCAL_TABLES,
    frey_triples_fine,
    global_realizations,
    verify_known_solutions,
)
from gfemod.core.jdisk import remaining_points
from gfemod.core.registry import SEVEN_CURVES, default_registry
from gfemod.core.twist_planner import TWIST_TABLE, derive_twist_table, plan_signature
from gfemod.core.x013 import x113_isomorphic_pairs, x113_twist_models


def _write(out_dir: Path, name: str, payload) -> None:
    path = out_dir / f"{name}.json"
    path.write_text(json.dumps(encode(payload), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"   📁 {path}")


def generate_tables(out_dir: Path = Path("outputs/tables")) -> None:
    """Recompute the tables and write one JSON file per table."""

    print("📐 gfemod - Regenerating tables")
    print("=" * 60)
    out_dir.mkdir(parents=True, exist_ok=True)

    print("\n1. Local classification tables...")
    for ell, entries in LOCAL_TABLES.items():
        _write(out_dir, f"local_{ell}adic", [entry.to_json() for entry in entries])

    print("\n2. Curve matrix...")
    _write(out_dir, "curve_matrix", {f"{i2}|{i3}": label for (i2, i3), label in CURVE_MATRIX.items()})

    print("\n3. Twist table...")
    derived = {p: plan_signature(derive_twist_table(p)) for p in primerange(11, 200)}
    _write(out_dir, "twist_table", {"static": TWIST_TABLE, "derived": derived, "curves": SEVEN_CURVES})

    print("\n4. Frey realizations and isomorphism types...")
    _write(out_dir, "frey_realizations", {"global": global_realizations(), "fine": frey_triples_fine()})

    print("\n5. Known solutions and remaining points...")
    _write(out_dir, "known_solutions", verify_known_solutions())
    _write(out_dir, "remaining_points", remaining_points())

    print("\n6. Twists of X1(13)...")
    models = x113_twist_models()
    _write(out_dir, "x113_twists", {"models": models, "pairs": x113_isomorphic_pairs()})

    print("\n7. Reference curves...")
    _write(out_dir, "registry", json.loads(default_registry().to_json()))

    info = {"generated": datetime.now().isoformat(timespec="seconds"), "python": sys.version.split()[0]}
    _write(out_dir, "index", info)

    soluble = all(m.everywhere_locally_soluble for m in models)
    print(f"\n{'✅' if soluble else '❌'} All tables written to {out_dir}/")


if __name__ == "__main__":
    generate_tables()

#!/usr/bin/env python3
"""Regenerate the bundled catalog data files from their programmatic builders.

Run from the repository root:

    python scripts/gen_catalog.py
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from treelat.catalog import regenerate_documents  # noqa: E402


def main() -> int:
    data_dir = ROOT / "src" / "treelat" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    for filename, document in regenerate_documents().items():
        path = data_dir / filename
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path.relative_to(ROOT)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

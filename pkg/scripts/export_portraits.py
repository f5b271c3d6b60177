#!/usr/bin/env python3
# The MIT License (MIT)
# Copyright © 2026 UnitOne Labs

import argparse
from pathlib import Path

import bittensor as bt

# Ensure repo root imports work when running from scripts/.
REPO_ROOT = Path(__file__).resolve().parents[1]
import sys

if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from chromapipe.portrait import EXAMPLES, FORMATS, export_digest, export_graph, portrait_example
from chromapipe.utils.config import DEFAULT_PORTRAIT_DEPTH


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Write every example portrait to a directory, one file per format.")
    parser.add_argument("--out-dir", type=str, default="portraits", help="Output directory.")
    parser.add_argument("--depth", type=int, default=DEFAULT_PORTRAIT_DEPTH, help="Largest prime power drawn.")
    parser.add_argument(
        "--format",
        choices=FORMATS,
        action="append",
        default=[],
        help="Formats to write; repeat for several. Defaults to all.",
    )
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    formats = args.format or list(FORMATS)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    bt.logging.enable_default()
    bt.logging.info(f"Exporting {len(EXAMPLES)} portraits at depth {args.depth} to {out_dir}")

    manifest = []
    for name in sorted(EXAMPLES):
        G = portrait_example(name, args.depth)
        for fmt in formats:
            data = export_graph(G, fmt)
            path = out_dir / f"{name}.{fmt}"
            path.write_bytes(data)
            manifest.append(f"{export_digest(data)}  {path.name}")
            bt.logging.info(f"{path}: {len(G.levels)} nodes, {len(G.edges)} edges")

    (out_dir / "DIGESTS").write_text("\n".join(manifest) + "\n")
    print(f"Wrote {len(manifest)} files to {out_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Render SVG figures for the bundled scenarios into out/figures/."""

import json
import pathlib
import sys

from vfblock.cli import _plot_for
from vfblock.scenario import run_scenario

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> int:
    out_dir = ROOT / "out" / "figures"
    out_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    for path in sorted((ROOT / "scenarios").glob("*.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        if "plot" not in data:
            continue
        report = run_scenario(data).to_json()
        out_path = out_dir / (path.stem + ".svg")
        _plot_for(report, data, str(out_path))
        print(f"wrote {out_path}")
        count += 1
    print(f"{count} figures")
    return 0


if __name__ == "__main__":
    sys.exit(main())

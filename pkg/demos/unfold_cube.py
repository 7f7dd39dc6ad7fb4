"""Unfold the ten cube nets of the first task and report how flat they get.

Run:  python demos/unfold_cube.py [out_dir]

Writes one OBJ frame per slider step (t = 0, 0.1, ..., 1) and prints, for
each frame, the largest |z| over all net vertices and the gap between the
ends of the polyline drawn across four faces.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from geoscript.cli import export_all
from geoscript.corpus import load_source
from geoscript.graph import ConstructionGraph


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    graph = ConstructionGraph.from_script(load_source("tarefa1"), source_name="tarefa1.ggs")
    nets = [f"p0{i}" for i in range(10)]
    for k, t in enumerate(np.linspace(0, 1, 11)):
        graph.set_slider("t", t)
        height = max(np.abs(q[:, 2]).max() for n in nets for q in graph.value(n).quads())
        pl = graph.value("pl").coords()
        export_all(graph, out, f"tarefa1.{k:03d}", [])
        print(f"t={t:.1f}  max|z|={height:.3f}  polyline end gap={np.linalg.norm(pl[0] - pl[-1]):.3f}")
    print(f"frames written to {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out/unfold"))

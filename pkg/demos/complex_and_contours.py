"""Joukowski images of circles and level curves of a periodic surface.

Run:  python demos/complex_and_contours.py [out_dir]

Three circles are pushed through z + 1/z: the unit circle collapses onto
[-2, 2], a circle of radius 2 becomes an ellipse, and an off-centre circle
through -1 gives an airfoil with a cusp.  Then sin(x)^2 + cos(y)^2 is cut at
a few heights and the worst level residual is printed.  SVGs for each case
land in the output directory.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from geoscript.cli import export_all
from geoscript.graph import ConstructionGraph
from geoscript.kernel.geometry import Window2
from geoscript.settings import Settings

CIRCLES = {
    "segment": ("(0, 0)", "(1, 0)"),
    "ellipse": ("(0, 0)", "(2, 0)"),
    "airfoil": ("0.1+0.1i", "-1+0i"),
}


def joukowski(out: Path) -> None:
    for name, (z1, z2) in CIRCLES.items():
        src = (
            f"z_1={z1}\nz_2={z2}\nc=Circunferência(z_1, z_2)\nz_3=Ponto(c)\n"
            "#view 2d2\nz_4=z_3+1/z_3\nJ=Lugar_Geométrico(z_4, z_3)\n"
        )
        graph = ConstructionGraph.from_script(src)
        pts = np.vstack([p.vertices for p in graph.value("J").polylines])
        print(f"{name:8s} x in [{pts[:, 0].min():+.4f}, {pts[:, 0].max():+.4f}]  y in [{pts[:, 1].min():+.4f}, {pts[:, 1].max():+.4f}]")
        export_all(graph, out, f"joukowski_{name}", ["J"])


def contours(out: Path) -> None:
    settings = Settings()
    settings.windows = {v: Window2(-np.pi, np.pi, -np.pi, np.pi) for v in ("2d", "2d2", "3d")}
    levels = (0.25, 0.5, 1.0, 1.5, 1.75)
    src = "M(x,y)=sin(x)^2+cos(y)^2\n" + "".join(f"L{i}=InterseçãoGeométrica(z={k}, M)\n" for i, k in enumerate(levels))
    graph = ConstructionGraph.from_script(src, settings)
    for i, k in enumerate(levels):
        polylines = graph.value(f"L{i}").polylines
        v = np.vstack([p.vertices for p in polylines])
        resid = np.abs(np.sin(v[:, 0]) ** 2 + np.cos(v[:, 1]) ** 2 - k).max()
        print(f"level {k:4.2f}: {len(polylines)} polylines, {len(v)} vertices, max residual {resid:.1e}")
    export_all(graph, out, "contours", [])


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out/complex")
    target.mkdir(parents=True, exist_ok=True)
    joukowski(target)
    contours(target)
    print(f"outputs written to {target}")

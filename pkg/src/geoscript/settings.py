"""Rendering and sampling resolutions shared by evaluation and export."""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel.geometry import DEFAULT_WINDOW, Window2

VIEWS = ("2d", "2d2", "3d")


@dataclass
class Settings:
    windows: dict[str, Window2] = field(default_factory=lambda: {v: DEFAULT_WINDOW for v in VIEWS})
    grid: tuple[int, int] = (200, 200)  # contour cells
    mesh: tuple[int, int] = (64, 64)  # surface tessellation
    samples: int = 512  # graph and curve samples
    locus_samples: int = 512
    size: tuple[int, int] = (800, 800)  # SVG pixels

    def window(self, view: str) -> Window2:
        return self.windows[view]

    def window_2d(self, view: str) -> Window2:
        """The window used for planar work triggered from ``view`` (3D falls back to 2d)."""
        return self.windows[view if view in ("2d", "2d2") else "2d"]

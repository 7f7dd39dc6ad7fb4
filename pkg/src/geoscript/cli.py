"""``geoscript run script.ggs``: evaluate a script and write its views to disk."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .export import export_csv, export_obj, export_svg, samples_of
from .graph import ConstructionGraph
from .kernel.geometry import Window2
from .parser import ScriptError, parse_script
from .scene import build_scene_2d, build_scene_3d, present_views
from .settings import VIEWS, Settings
from .values import EvalError, Slider

EXIT_OK, EXIT_SCRIPT, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _pair(text: str, flag: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"{flag} expects NxM, got {text!r}") from None
    if a < 1 or b < 1:
        raise UsageError(f"{flag} values must be positive, got {text!r}")
    return a, b


def _assignment(text: str, flag: str) -> tuple[str, str]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise UsageError(f"{flag} expects name=value, got {text!r}")
    return name.strip(), value.strip()


def _float(text: str, flag: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"{flag}: {text!r} is not a number") from None
    if not math.isfinite(v):
        raise UsageError(f"{flag}: {text!r} is not finite")
    return v


def sweep_values(a: float, b: float, step: float) -> list[float]:
    """Frame values ``a, a + step, ...`` up to ``b`` inclusive."""
    if step <= 0:
        raise UsageError("--sweep step must be positive")
    if b < a:
        raise UsageError("--sweep needs a <= b")
    count = math.floor((b - a) / step + 1e-12) + 1
    return [a + k * step for k in range(count)]


def build_settings(args) -> Settings:
    settings = Settings()
    for spec in args.window:
        view, sep, rect = spec.rpartition("=")
        try:
            window = Window2.parse(rect)
        except ValueError as exc:
            raise UsageError(f"--window: {exc}") from None
        if sep and view not in VIEWS:
            raise UsageError(f"--window: unknown view {view!r}")
        for v in [view] if sep else VIEWS:
            settings.windows[v] = window
    if args.grid:
        settings.grid = _pair(args.grid, "--grid")
    if args.mesh:
        settings.mesh = _pair(args.mesh, "--mesh")
    if args.size:
        settings.size = _pair(args.size, "--size")
        if min(settings.size) < 16:
            raise UsageError("--size must be at least 16x16")
    if args.samples is not None:
        if args.samples < 2:
            raise UsageError("--samples must be at least 2")
        settings.samples = args.samples
    if args.locus_samples is not None:
        if args.locus_samples < 1:
            raise UsageError("--locus-samples must be positive")
        settings.locus_samples = args.locus_samples
    return settings


def export_all(graph: ConstructionGraph, out: Path, stem: str, csv_names: list[str]) -> list[Path]:
    written = []
    for view in present_views(graph):
        if view == "3d":
            scene = build_scene_3d(graph)
            if not scene.meshes:
                continue
            path = out / f"{stem}.3d.obj"
            export_obj(scene, path)
        else:
            path = out / f"{stem}.{view}.svg"
            export_svg(build_scene_2d(graph, view), graph.settings.size, path)
        written.append(path)
    for name in csv_names:
        path = out / f"{stem}.{name}.csv"
        export_csv(samples_of(graph.value(name), graph.settings), path, graph.settings)
        written.append(path)
    return written


def _slider(graph: ConstructionGraph, name: str, flag: str):
    if not graph.has_object(name) or not isinstance(graph.value(name), Slider):
        raise EvalError(f"{flag}: unknown slider {name!r}")
    return graph.node(name)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoscript", description="Evaluate construction scripts headlessly.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a script and export its views")
    run.add_argument("script", type=Path)
    run.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="slider value (repeatable)")
    run.add_argument("--sweep", metavar="NAME=A:B:STEP", help="emit one numbered frame per slider value")
    run.add_argument("--out", type=Path, default=Path("."), help="output directory")
    run.add_argument("--window", action="append", default=[], metavar="[VIEW=]XMIN:XMAX:YMIN:YMAX")
    run.add_argument("--grid", metavar="NxM", help="contour grid cells (default 200x200)")
    run.add_argument("--mesh", metavar="NxM", help="surface tessellation (default 64x64)")
    run.add_argument("--samples", type=int, help="graph and curve samples (default 512)")
    run.add_argument("--locus-samples", type=int, help="locus driver steps (default 512)")
    run.add_argument("--size", metavar="WxH", help="SVG size in pixels (default 800x800)")
    run.add_argument("--csv", action="append", default=[], metavar="NAME", help="dump an object's samples")
    return parser


def run(args) -> int:
    script_path: Path = args.script
    label = str(script_path)
    try:
        settings = build_settings(args)
        sets = dict(_assignment(s, "--set") for s in args.set)
        set_values = {k: _float(v, "--set") for k, v in sets.items()}
        sweep = None
        if args.sweep:
            name, rng = _assignment(args.sweep, "--sweep")
            parts = rng.split(":")
            if len(parts) != 3:
                raise UsageError(f"--sweep expects name=a:b:step, got {args.sweep!r}")
            sweep = (name, sweep_values(*(_float(p, "--sweep") for p in parts)))
        source = script_path.read_text(encoding="utf-8-sig")
    except UsageError as exc:
        print(f"geoscript: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"geoscript: error: cannot read {label}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        graph = ConstructionGraph.from_script(parse_script(source, label), settings)
        # apply in construction order so the result does not depend on flag order
        for node in sorted((_slider(graph, n, "--set") for n in set_values), key=lambda n: n.id):
            graph.set_slider(node.name, set_values[node.name])
        if sweep is not None:
            _slider(graph, sweep[0], "--sweep")
        for name in args.csv:
            graph.node(name)
    except ScriptError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SCRIPT
    except EvalError as exc:
        print(f"{label}: error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT

    try:
        args.out.mkdir(parents=True, exist_ok=True)
        stem = script_path.stem
        if sweep is None:
            export_all(graph, args.out, stem, args.csv)
        else:
            name, values = sweep
            width = max(3, len(str(len(values) - 1)))
            for k, v in enumerate(values):
                graph.set_slider(name, v)
                export_all(graph, args.out, f"{stem}.{k:0{width}d}", args.csv)
    except EvalError as exc:
        print(f"{label}: error: {exc}", file=sys.stderr)
        return EXIT_SCRIPT
    except OSError as exc:
        print(f"geoscript: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-name table: Portuguese, unaccented and English spellings."""

from __future__ import annotations

import unicodedata
from functools import lru_cache

# canonical key -> accepted spellings (accent-stripped forms are implied)
COMMAND_NAMES: dict[str, tuple[str, ...]] = {
    "slider": ("Seletor", "Slider"),
    "cube": ("Cubo", "Cube"),
    "net": ("Planificação", "Net"),
    "function": ("Função", "Function"),
    "sequence": ("Sequência", "Sequence"),
    "surface": ("SuperfícieLateral", "Surface"),
    "intersectpath": ("InterseçãoGeométrica", "IntersectPath"),
    "locus": ("Lugar_Geométrico", "Locus"),
    "midpoint": ("PontoMédio", "Midpoint"),
    "segment": ("Segmento", "Segment"),
    "polygon": ("Polígono", "Polygon"),
    "circle": ("Circunferência", "Circle"),
    "perpbisector": ("Mediatriz", "PerpendicularBisector"),
    "perpendicular": ("Perpendicular", "PerpendicularLine"),
    "reflect": ("Reflexão", "Reflect"),
    "curve": ("Curva", "Curve"),
    "sum": ("Soma", "Sum"),
    "element": ("Elemento", "Element"),
    "length": ("Comprimento", "Length"),
    "point": ("Ponto", "Point"),
    "spline": ("Spline",),
    "polyline": ("Polilinha", "Polyline"),
    "netpoint": ("PontoFace", "NetPoint"),
    "planeview": ("Vista2D", "PlaneView"),
    "area": ("Área", "Area"),
    "perimeter": ("Perímetro", "Perimeter"),
    "distance": ("Distância", "Distance"),
    "setcolor": ("DefinirCor", "SetColor"),
    "setdynamiccolor": ("DefinirCorDinâmica", "SetDynamicColor"),
    # scalar functions and accessors
    "sin": ("sin", "sen"),
    "cos": ("cos",),
    "tan": ("tan", "tg"),
    "exp": ("exp",),
    "ln": ("ln",),
    "abs": ("abs",),
    "sqrt": ("sqrt",),
    "cbrt": ("cbrt", "cbrrt"),
    "x": ("x",),
    "y": ("y",),
    "z": ("z",),
}

STYLE_COMMANDS = frozenset({"setcolor", "setdynamiccolor"})


@lru_cache(maxsize=4096)
def normalize(name: str) -> str:
    decomposed = unicodedata.normalize("NFKD", name)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return stripped.casefold().replace("_", "")


_LOOKUP: dict[str, str] = {}
for _key, _names in COMMAND_NAMES.items():
    for _n in _names:
        _LOOKUP[normalize(_n)] = _key


def resolve(name: str) -> str | None:
    """Canonical command key for ``name``, or ``None`` if it is not a builtin."""
    return _LOOKUP.get(normalize(name))

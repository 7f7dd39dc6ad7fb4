"""Cube construction and animated unfolding into a net.

A net is described by a base face and a set of *cut* edges.  The remaining
cube edges are hinge candidates; a spanning tree of the face-adjacency graph
is picked greedily in a fixed priority order (base rim first, then the
vertical edges, then the top rim), so an empty cut list gives the standard
cross with the top face hanging off the face through B and C.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import RigidTransform

VERTEX_NAMES = "ABCDEFGH"
FACE_NAMES = ("ABCD", "ABFE", "BCGF", "CDHG", "ADHE", "EFGH")
EDGE_NAMES = ("AB", "BC", "CD", "AD", "AE", "BF", "CG", "DH", "EF", "FG", "GH", "EH")


class NetError(ValueError):
    pass


@dataclass(eq=False)
class Cube:
    vertices: dict[str, np.ndarray]

    @property
    def edge_length(self) -> float:
        return float(np.linalg.norm(self.vertices["B"] - self.vertices["A"]))

    def face(self, name: str) -> np.ndarray:
        return np.array([self.vertices[c] for c in name])

    def coords(self) -> np.ndarray:
        return np.array([self.vertices[c] for c in VERTEX_NAMES])


def build_cube(a, b) -> Cube:
    """Cube on edge AB; ABCD is counterclockwise seen from +z and EFGH sits above it."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    u = b - a
    length = float(np.linalg.norm(u))
    if length == 0:
        raise NetError("cube needs two distinct points")
    up = np.array([0.0, 0.0, 1.0])
    side = np.cross(up, u)
    if np.linalg.norm(side) < 1e-12 * length:
        side = np.cross(np.array([1.0, 0.0, 0.0]), u)
    v = side / np.linalg.norm(side) * length
    w = np.cross(u, v) / length
    base = {"A": a, "B": b, "C": b + v, "D": a + v}
    verts = dict(base)
    for lo, hi in zip("ABCD", "EFGH"):
        verts[hi] = base[lo] + w
    return Cube(verts)


def canonical_face(name: str) -> str:
    letters = name[4:] if name.lower().startswith("face") else name
    for face in FACE_NAMES:
        if sorted(face) == sorted(letters.upper()) and len(letters) == 4:
            return face
    raise NetError(f"unknown cube face {name!r}")


def face_order(name: str) -> str:
    """Vertex letters in the order written, validated against the cube's faces."""
    letters = (name[4:] if name.lower().startswith("face") else name).upper()
    canonical_face(letters)
    return letters


def canonical_edge(name: str) -> str:
    letters = (name[6:] if name.lower().startswith("aresta") else name).upper()
    key = "".join(sorted(letters))
    if len(letters) != 2 or key not in EDGE_NAMES:
        raise NetError(f"unknown cube edge {name!r}")
    return key


def _faces_of_edge(edge: str) -> tuple[str, str]:
    found = tuple(f for f in FACE_NAMES if edge[0] in f and edge[1] in f)
    return found  # type: ignore[return-value]


def _opposite(v: str, base: str) -> str:
    # vertex adjacent to v that is not on the base face
    for e in EDGE_NAMES:
        if v in e:
            other = e.replace(v, "")
            if other not in base:
                return other
    raise NetError(f"no opposite vertex for {v}")


def hinge_priority(base: str) -> list[str]:
    """Edge priority for a base face V0V1V2V3 with opposite vertices W0..W3."""
    vs = list(base)
    ws = [_opposite(v, base) for v in vs]
    pairs = [(vs[i], vs[(i + 1) % 4]) for i in range(4)]
    pairs += [(vs[i], ws[i]) for i in range(4)]
    pairs += [(ws[1], ws[2]), (ws[2], ws[3]), (ws[3], ws[0]), (ws[0], ws[1])]
    return ["".join(sorted(p)) for p in pairs]


@dataclass(eq=False)
class HingeTree:
    base: str
    parent: dict[str, tuple[str, str]] = field(default_factory=dict)  # face -> (parent face, hinge edge)

    def order(self) -> list[str]:
        """Faces with every parent before its children."""
        out = [self.base]
        while len(out) < 1 + len(self.parent):
            for face, (par, _) in self.parent.items():
                if face not in out and par in out:
                    out.append(face)
        return out


def build_hinge_tree(base: str = "ABCD", cuts=()) -> HingeTree:
    base = canonical_face(base)
    cut = {canonical_edge(e) for e in cuts}
    group = {f: f for f in FACE_NAMES}

    def root(f):
        while group[f] != f:
            f = group[f]
        return f

    hinges: list[tuple[str, str, str]] = []
    for edge in hinge_priority(base):
        if edge in cut:
            continue
        f1, f2 = _faces_of_edge(edge)
        r1, r2 = root(f1), root(f2)
        if r1 != r2:
            group[r2] = r1
            hinges.append((edge, f1, f2))
    if len(hinges) != 5:
        raise NetError(f"cut edges {sorted(cut)} leave the faces disconnected; no net exists")
    tree = HingeTree(base)
    placed = {base}
    while len(placed) < 6:
        for edge, f1, f2 in hinges:
            if f1 in placed and f2 not in placed:
                tree.parent[f2] = (f1, edge)
                placed.add(f2)
            elif f2 in placed and f1 not in placed:
                tree.parent[f1] = (f2, edge)
                placed.add(f1)
    return tree


def _opening_sign(cube: Cube, child: str, parent: str, edge: str) -> float:
    p0, p1 = cube.vertices[edge[0]], cube.vertices[edge[1]]
    mid = 0.5 * (p0 + p1)
    child_c = cube.face(child).mean(axis=0)
    parent_c = cube.face(parent).mean(axis=0)
    turned = RigidTransform.about_axis(p0, p1, np.pi / 2).apply(child_c)
    return 1.0 if np.dot(turned - mid, parent_c - mid) < 0 else -1.0


def unfold_cube_transforms(cube: Cube, tree: HingeTree, t: float) -> dict[str, RigidTransform]:
    """Per-face rigid motions at fold parameter ``t`` (0 folded, 1 flat)."""
    t = float(min(max(t, 0.0), 1.0))
    out = {tree.base: RigidTransform()}
    for face in tree.order()[1:]:
        parent, edge = tree.parent[face]
        sign = _opening_sign(cube, face, parent, edge)
        hinge = RigidTransform.about_axis(cube.vertices[edge[0]], cube.vertices[edge[1]], sign * t * np.pi / 2)
        out[face] = out[parent].compose(hinge)
    return out


@dataclass(eq=False)
class Net:
    cube: Cube
    t: float
    tree: HingeTree
    transforms: dict[str, RigidTransform]

    def placed(self, face: str) -> np.ndarray:
        face = canonical_face(face)
        return self.transforms[face].apply(self.cube.face(face))

    def quads(self) -> list[np.ndarray]:
        return [self.placed(f) for f in FACE_NAMES]


def build_net(cube: Cube, t: float, base: str = "ABCD", cuts=()) -> Net:
    tree = build_hinge_tree(base, cuts)
    return Net(cube, float(min(max(t, 0.0), 1.0)), tree, unfold_cube_transforms(cube, tree, t))


def net_attach(net: Net, face: str, s1: float, s2: float) -> np.ndarray:
    """World position of the face-local point V0 + s1 (V1 - V0) + s2 (V3 - V0)."""
    letters = face_order(face)
    v = net.cube.face(letters)
    local = v[0] + s1 * (v[1] - v[0]) + s2 * (v[3] - v[0])
    return net.transforms[canonical_face(letters)].apply(local)

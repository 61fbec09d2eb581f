"""Cell-complex model of a symmetric Heegaard diagram.

A diagram is a closed oriented surface given as vertices / oriented edges /
polygonal faces, together with an orientation-reversing involution tau that
exchanges the two curve systems, a preferred ordering and orientation of the
alpha curves, and the fixed circles with one marked basepoint edge each.

Faces are stored with an orientation sign; the positively-oriented boundary
walks of all faces induce the rotation system of the surface, from which
everything else (curves, corners, regions) is derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class DiagramError(Exception):
    """Structural problem that prevents interpreting the cell complex."""


ALPHA = "alpha"
BETA = "beta"
FIXED = "fixed"
AUX = "aux"

V_CURVE = "curve_crossing"
V_ONC = "c_crossing"
V_SUB = "subdivision"


@dataclass(frozen=True)
class Edge:
    src: object
    dst: object
    label: tuple  # (ALPHA, i) | (BETA, i) | (FIXED, k) | (AUX,)
    direction: int = 1  # +1: src->dst agrees with the curve's base orientation

    @property
    def kind(self):
        return self.label[0]

    @property
    def curve_index(self):
        if self.label[0] in (ALPHA, BETA):
            return self.label[1]
        return None

    def is_curve(self):
        return self.label[0] in (ALPHA, BETA)


@dataclass
class Face:
    walk: tuple  # tuple of (edge_id, incidence ±1), boundary in stored order
    sheet: object = None  # +1 / -1 / None
    orient_sign: int = 1  # +1 if stored walk is positively oriented in Sigma

    def oriented_walk(self):
        if self.orient_sign == 1:
            return list(self.walk)
        return [(e, -inc) for e, inc in reversed(self.walk)]


@dataclass
class FixedCircle:
    edges: tuple  # edge ids in cyclic order along the component
    basepoint_edge: object


@dataclass
class Region:
    index: int
    faces: frozenset
    corners: dict = field(default_factory=dict)  # vertex -> number of sectors
    contains_basepoint: tuple = ()


class RealDiagram:
    """Immutable after construction; all pipeline operations are pure."""

    def __init__(
        self,
        vertices,
        edges,
        faces,
        tau_vertices,
        tau_edges,
        alpha_order,
        curve_orientations,
        fixed_circles,
        quotient_orientable,
    ):
        self.vertices = dict(vertices)  # id -> kind
        self.edges = dict(edges)  # id -> Edge
        self.faces = list(faces)
        self.tau_vertices = dict(tau_vertices)
        self.tau_edges = dict(tau_edges)
        self.alpha_order = list(alpha_order)
        self.curve_orientations = dict(curve_orientations)
        self.fixed_circles = [
            fc if isinstance(fc, FixedCircle) else FixedCircle(tuple(fc[0]), fc[1])
            for fc in fixed_circles
        ]
        self.quotient_orientable = bool(quotient_orientable)
        self._rotations = None
        self._corner_faces = None
        self._curves = {}

    # -- basic counts -------------------------------------------------------

    @property
    def num_curves(self):
        return len(self.alpha_order)

    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def genus(self):
        chi = self.euler_characteristic()
        if chi > 2 or (2 - chi) % 2:
            raise DiagramError("cell complex is not a closed surface")
        return (2 - chi) // 2

    def genus_data(self):
        """(g, h, l): surface genus, quotient genus (orientable case), |C|."""
        g = self.genus()
        l = len(self.fixed_circles)
        if not self.quotient_orientable:
            return (g, None, l)
        if (g + 1 - l) % 2:
            raise DiagramError("genus and fixed circles incompatible with orientable quotient")
        return (g, (g + 1 - l) // 2, l)

    # -- rotation system ----------------------------------------------------

    def _darts_of_walk(self, face):
        darts = []
        for edge_id, inc in face.oriented_walk():
            e = self.edges[edge_id]
            if inc == 1:
                darts.append((edge_id, e.src, e.dst))
            else:
                darts.append((edge_id, e.dst, e.src))
        return darts

    def rotations(self):
        """Cyclic order of outgoing darts at each vertex (positive-side view).

        A dart is (edge_id, incidence) with incidence +1 when leaving the
        edge's source.  Raises DiagramError when the faces do not glue into
        an oriented surface.
        """
        if self._rotations is not None:
            return self._rotations
        succ = {v: {} for v in self.vertices}
        corner_face = {}
        for fi, face in enumerate(self.faces):
            darts = self._darts_of_walk(face)
            if not darts:
                raise DiagramError("face %d has empty boundary" % fi)
            for k, (edge_id, a, b) in enumerate(darts):
                nedge, na, nb = darts[(k + 1) % len(darts)]
                if na != b:
                    raise DiagramError(
                        "face %d boundary is not a closed walk at %r" % (fi, b)
                    )
                # face enters b via (edge_id, a->b) and leaves via (nedge, b->nb):
                # in the ccw rotation at b the reversed in-dart follows the out-dart
                out_dart = (nedge, 1 if self.edges[nedge].src == b else -1)
                in_rev = (edge_id, 1 if self.edges[edge_id].src == b else -1)
                if out_dart in succ[b]:
                    raise DiagramError("surface not oriented at vertex %r" % (b,))
                succ[b][out_dart] = in_rev
                corner_face[(b, out_dart)] = fi
        rotations = {}
        for v, table in succ.items():
            if not table:
                raise DiagramError("isolated vertex %r" % (v,))
            start = next(iter(table))
            cycle = [start]
            while True:
                nxt = table.get(cycle[-1])
                if nxt is None:
                    raise DiagramError("rotation broken at vertex %r" % (v,))
                if nxt == start:
                    break
                cycle.append(nxt)
                if len(cycle) > len(table):
                    raise DiagramError("rotation at vertex %r is not a single cycle" % (v,))
            if len(cycle) != len(table):
                raise DiagramError("rotation at vertex %r is not a single cycle" % (v,))
            rotations[v] = cycle
        self._rotations = rotations
        self._corner_faces = corner_face
        return rotations

    def corner_face(self, vertex, out_dart):
        """Face occupying the corner between out_dart and its rotation successor."""
        self.rotations()
        return self._corner_faces[(vertex, out_dart)]

    # -- curves -------------------------------------------------------------

    def curve_edges(self, kind, index):
        return [
            eid
            for eid, e in self.edges.items()
            if e.label[0] == kind and e.label[1] == index
        ]

    def curve_cycle(self, kind, index):
        """Oriented edge cycle of a curve as a list of (edge_id, incidence).

        Orientation: stored edge directions, composed with the per-curve
        orientation flag (beta curves inherit the flag of the mirror alpha).
        """
        key = (kind, index)
        if key in self._curves:
            return self._curves[key]
        eids = self.curve_edges(kind, index)
        if not eids:
            raise DiagramError("curve %s(%s) has no edges" % (kind, index))
        flip = self.curve_orientations.get(index, 1)
        by_start = {}
        for eid in eids:
            e = self.edges[eid]
            sense = e.direction * flip
            start = e.src if sense == 1 else e.dst
            if start in by_start:
                raise DiagramError("curve %s(%s) is not embedded" % (kind, index))
            by_start[start] = (eid, sense)
        first = min(by_start)
        cycle = []
        at = first
        for _ in range(len(eids)):
            eid, sense = by_start[at]
            cycle.append((eid, sense))
            e = self.edges[eid]
            at = e.dst if sense == 1 else e.src
        if at != first or len(cycle) != len(eids):
            raise DiagramError("curve %s(%s) is not a single cycle" % (kind, index))
        self._curves[key] = cycle
        return cycle

    def curve_vertices(self, kind, index):
        out = []
        for eid, sense in self.curve_cycle(kind, index):
            e = self.edges[eid]
            out.append(e.src if sense == 1 else e.dst)
        return out

    # -- involution ---------------------------------------------------------

    def tau_edge(self, edge_id):
        return self.tau_edges[edge_id]

    def tau_edge_sense(self, edge_id):
        """+1 when tau preserves the stored direction of the edge, else -1."""
        e = self.edges[edge_id]
        im = self.edges[self.tau_edges[edge_id]]
        s, t = self.tau_vertices[e.src], self.tau_vertices[e.dst]
        if (s, t) == (im.src, im.dst):
            return 1
        if (s, t) == (im.dst, im.src):
            return -1
        raise DiagramError("tau is not simplicial on edge %r" % (edge_id,))

    def tau_face_map(self):
        """Induced involution on face indices; DiagramError if ill-defined."""
        by_edges = {}
        for fi, face in enumerate(self.faces):
            key = frozenset(e for e, _ in face.walk)
            by_edges.setdefault(key, []).append(fi)
        out = {}
        for fi, face in enumerate(self.faces):
            key = frozenset(self.tau_edges[e] for e, _ in face.walk)
            cands = by_edges.get(key, [])
            if len(cands) != 1:
                # fall back: match by multiset of edges
                raise DiagramError("tau does not induce a face map (face %d)" % fi)
            out[fi] = cands[0]
        return out

    # -- crossings ----------------------------------------------------------

    def crossing_vertices(self):
        return [v for v, kind in self.vertices.items() if kind in (V_CURVE, V_ONC)]

    def vertex_curve_incidences(self, v):
        """{(kind, index): [darts]} of curve darts leaving v."""
        out = {}
        for eid, e in self.edges.items():
            if not e.is_curve():
                continue
            if e.src == v:
                out.setdefault(e.label, []).append((eid, 1))
            if e.dst == v:
                out.setdefault(e.label, []).append((eid, -1))
        return out

    def quadrants(self, v):
        """Sectors at a crossing vertex, between consecutive curve darts.

        Returns a list, cyclically ordered: each entry is (dart, face_index)
        where dart is the curve dart opening the sector and face_index the
        face at the corner immediately counterclockwise of it.
        """
        rot = self.rotations()[v]
        curve_positions = [
            k for k, d in enumerate(rot) if self.edges[d[0]].is_curve()
        ]
        sectors = []
        for k in curve_positions:
            sectors.append((rot[k], self.corner_face(v, rot[k])))
        return sectors

    # -- serialisation ------------------------------------------------------

    def to_dict(self):
        return {
            "vertices": {str(v): kind for v, kind in self.vertices.items()},
            "edges": {
                str(eid): {
                    "from": str(e.src),
                    "to": str(e.dst),
                    "label": list(e.label),
                    "direction": e.direction,
                }
                for eid, e in self.edges.items()
            },
            "faces": [
                {
                    "loop": [[str(e), inc] for e, inc in f.walk],
                    "sheet": f.sheet,
                    "orientation": f.orient_sign,
                }
                for f in self.faces
            ],
            "tau": {
                "vertices": {str(a): str(b) for a, b in self.tau_vertices.items()},
                "edges": {str(a): str(b) for a, b in self.tau_edges.items()},
            },
            "alpha_order": [i for i in self.alpha_order],
            "curve_orientations": {str(i): s for i, s in self.curve_orientations.items()},
            "fixed_circles": [
                {"edges": [str(e) for e in fc.edges], "basepoint_edge": str(fc.basepoint_edge)}
                for fc in self.fixed_circles
            ],
            "quotient_orientable": self.quotient_orientable,
        }


# ---------------------------------------------------------------------------
# validation


def _check(report, ok, name, cells=()):
    if not ok:
        report.append((name, tuple(cells)))


def validate_diagram(d):
    """Return a list of (invariant-name, offending-cells); empty iff valid."""
    report = []

    # edge endpoints exist
    for eid, e in d.edges.items():
        if e.src not in d.vertices or e.dst not in d.vertices:
            report.append(("edge-endpoints", (eid,)))
    if report:
        return report

    # the complex is a closed connected oriented surface
    try:
        d.rotations()
    except DiagramError as exc:
        return report + [("oriented-surface", (str(exc),))]
    try:
        g = d.genus()
    except DiagramError as exc:
        return report + [("euler-characteristic", (str(exc),))]

    # connectivity
    seen = set()
    stack = [next(iter(d.vertices))]
    adj = {v: [] for v in d.vertices}
    for e in d.edges.values():
        adj[e.src].append(e.dst)
        adj[e.dst].append(e.src)
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v])
    _check(report, len(seen) == len(d.vertices), "connected")

    # involution on vertices and edges
    for v, w in d.tau_vertices.items():
        if w not in d.vertices or d.tau_vertices.get(w) != v:
            report.append(("involution-vertices", (v,)))
            break
    for a, b in d.tau_edges.items():
        if b not in d.edges or d.tau_edges.get(b) != a:
            report.append(("involution-edges", (a,)))
            break
    _check(report, set(d.tau_vertices) == set(d.vertices), "involution-vertices-total")
    _check(report, set(d.tau_edges) == set(d.edges), "involution-edges-total")
    if any(name.startswith("involution") for name, _ in report):
        return report

    # tau respects incidences and labels
    for eid, e in d.edges.items():
        im = d.edges[d.tau_edges[eid]]
        ends = {d.tau_vertices[e.src], d.tau_vertices[e.dst]}
        if ends != {im.src, im.dst}:
            report.append(("involution-incidence", (eid,)))
            continue
        if e.label[0] == ALPHA:
            want = (BETA, e.label[1])
        elif e.label[0] == BETA:
            want = (ALPHA, e.label[1])
        else:
            want = e.label
        if im.label != want:
            report.append(("involution-labels", (eid,)))
    # fixed circles are pointwise fixed
    for k, fc in enumerate(d.fixed_circles):
        for eid in fc.edges:
            e = d.edges.get(eid)
            if e is None or e.label != (FIXED, k):
                report.append(("fixed-circle-labels", (eid,)))
            elif d.tau_edges[eid] != eid:
                report.append(("involution-fixes-c", (eid,)))
    for eid, e in d.edges.items():
        if e.label[0] == FIXED:
            if d.tau_vertices[e.src] != e.src or d.tau_vertices[e.dst] != e.dst:
                report.append(("involution-fixes-c-vertices", (eid,)))

    # tau reverses orientation: induced face map exists and flips walks
    try:
        fmap = d.tau_face_map()
        for fi, fj in fmap.items():
            if fmap.get(fj) != fi:
                report.append(("involution-faces", (fi,)))
                break
        else:
            for fi, fj in fmap.items():
                wi = d.faces[fi].oriented_walk()
                wj = d.faces[fj].oriented_walk()
                image = [
                    (d.tau_edges[e], inc * d.tau_edge_sense(e)) for e, inc in wi
                ]
                rev = [(e, -inc) for e, inc in reversed(wj)]
                # compare as cyclic sequences
                if len(image) != len(rev):
                    report.append(("involution-reverses-orientation", (fi,)))
                    continue
                doubled = rev + rev
                ok = any(
                    doubled[k : k + len(image)] == image for k in range(len(rev))
                )
                if not ok:
                    report.append(("involution-reverses-orientation", (fi,)))
    except DiagramError:
        report.append(("involution-faces", ()))

    # curves: embedded disjoint cycles, alpha_(i) <-> beta_(i) under tau
    m = d.num_curves
    for i in d.alpha_order:
        for kind in (ALPHA, BETA):
            try:
                d.curve_cycle(kind, i)
            except DiagramError as exc:
                report.append(("curve-cycle", (kind, i, str(exc))))
    seen_curve = {}
    for v in d.vertices:
        labels = set(d.vertex_curve_incidences(v))
        alphas = [l for l in labels if l[0] == ALPHA]
        betas = [l for l in labels if l[0] == BETA]
        if len(alphas) > 1 or len(betas) > 1:
            report.append(("curves-disjoint", (v,)))
        seen_curve[v] = (alphas, betas)

    # genus bookkeeping
    try:
        g, h, l = d.genus_data()
        if d.quotient_orientable:
            _check(report, m == 2 * h + 2 * (l - 1), "curve-count", (m, g, l))
        else:
            _check(report, m == g + l - 1, "curve-count", (m, g, l))
    except DiagramError as exc:
        report.append(("curve-count", (str(exc),)))

    # vertex kinds vs incidences; on-C crossings pair alpha_i with beta_i
    c_vertices = set()
    for fc in d.fixed_circles:
        for eid in fc.edges:
            e = d.edges[eid]
            c_vertices.add(e.src)
            c_vertices.add(e.dst)
    for v, kind in d.vertices.items():
        alphas, betas = seen_curve[v]
        crossing = bool(alphas and betas)
        if kind == V_ONC:
            if v not in c_vertices or not crossing:
                report.append(("on-c-kind", (v,)))
            elif alphas[0][1] != betas[0][1]:
                report.append(("on-c-index-match", (v,)))
        elif kind == V_CURVE:
            if v in c_vertices or not crossing:
                report.append(("curve-crossing-kind", (v,)))
        else:
            if crossing:
                report.append(("subdivision-kind", (v,)))

    # off-C crossings come in mirror pairs on opposite sheets
    sheets = None
    if d.quotient_orientable:
        sheets = [f.sheet for f in d.faces]
        if any(s not in (1, -1) for s in sheets):
            report.append(("sheet-labels-present", ()))
            sheets = None
    for v, kind in d.vertices.items():
        if kind != V_CURVE:
            continue
        alphas, betas = seen_curve[v]
        if not (alphas and betas):
            continue
        i, j = alphas[0][1], betas[0][1]
        w = d.tau_vertices[v]
        wa, wb = seen_curve[w]
        if not (wa and wb) or wa[0][1] != j or wb[0][1] != i:
            report.append(("mirror-pairs", (v,)))
    if sheets is not None:
        try:
            fmap = d.tau_face_map()
            for fi, fj in fmap.items():
                if sheets[fi] == sheets[fj]:
                    report.append(("sheets-swapped", (fi,)))
                    break
            for eid, e in d.edges.items():
                fs = [fi for fi, f in enumerate(d.faces) if any(x == eid for x, _ in f.walk)]
                ss = {sheets[fi] for fi in fs}
                if e.label[0] == FIXED:
                    if ss != {1, -1}:
                        report.append(("c-separates-sheets", (eid,)))
                else:
                    if len(ss) > 1:
                        report.append(("sheets-constant-off-c", (eid,)))
        except DiagramError:
            pass

    # basepoints: exactly one marked edge per fixed circle, on that circle
    for k, fc in enumerate(d.fixed_circles):
        _check(
            report,
            fc.basepoint_edge in fc.edges,
            "basepoint-on-circle",
            (k,),
        )
    all_fixed = [eid for eid, e in d.edges.items() if e.label[0] == FIXED]
    claimed = [eid for fc in d.fixed_circles for eid in fc.edges]
    _check(report, sorted(map(str, all_fixed)) == sorted(map(str, claimed)), "fixed-circles-cover-c")

    return report


# ---------------------------------------------------------------------------
# regions


def compute_regions(d):
    """Connected components of the face set cut along the curve edges."""
    d.rotations()  # raises DiagramError on malformed complexes
    nfaces = len(d.faces)
    parent = list(range(nfaces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    sides = {}
    for fi, face in enumerate(d.faces):
        for eid, _ in face.walk:
            sides.setdefault(eid, []).append(fi)
    for eid, fs in sides.items():
        if not d.edges[eid].is_curve():
            if len(fs) == 2:
                union(fs[0], fs[1])
            elif len(fs) == 1:
                pass  # the face meets the edge from both sides
    groups = {}
    for fi in range(nfaces):
        groups.setdefault(find(fi), []).append(fi)

    index_of_face = {}
    regions = []
    basepoint_edges = [fc.basepoint_edge for fc in d.fixed_circles]
    for ri, (_, fs) in enumerate(sorted(groups.items(), key=lambda kv: min(kv[1]))):
        contains = []
        for bi, be in enumerate(basepoint_edges):
            holder = sides.get(be, [])
            if holder and find(holder[0]) == find(fs[0]):
                contains.append(bi)
        region = Region(ri, frozenset(fs), {}, tuple(contains))
        regions.append(region)
        for f in fs:
            index_of_face[f] = ri

    # corner (quadrant) data at crossing vertices
    for v in d.crossing_vertices():
        for dart, face in d.quadrants(v):
            ri = index_of_face[face]
            regions[ri].corners[v] = regions[ri].corners.get(v, 0) + 1

    return regions, index_of_face

"""Doubled Bennequin-surface diagram of a braid closure.

The spanning surface of a closed braid is one disk per strand (nested,
stacked in depth) and one half-twisted band per letter; each band attaches
to the edges of the two neighbouring disks, so a disk edge carries the
attachments of both adjacent columns interleaved by word position.  The
diagram surface is the boundary of a thickening: a sphere with equatorial
holes for each disk, a tube for each band, glued along the hole boundaries.
The involution swaps the front and back of every piece and fixes the knot,
which runs along the free disk-edge arcs and the long band edges.

One compressing-disk curve per pair of consecutive bands in a column is
laid out cell by cell: a vertical arc on each rail disk (front at the
lower-index disk, back at the other), dodging foreign holes inside its
span, and a traversal of each of its two bands.

Tube coordinates: angular coordinate phi in sixteenths of a turn; phi = 0
is the centre of the front face, phi = 4 and 12 are the two knot lines,
phi = 8 the back centre.  The far-end gluing reflects phi (half twist), so
front meets front on both neighbouring disks.  Strand tracks, u from 0 to 1
along the tube, letter sign s:

    alpha of the gap below:  phi = 13 - 8su      beta:  phi = -5 + 8su
    alpha of the gap above:  phi =  3 - 8su      beta:  phi =  5 + 8su

Frozen consequences (the band crossing table): the two knot-line crossings
of a tube lie on phi = 12 for s = +1 (lower gap at u = 1/8, upper at 7/8)
and on phi = 4 for s = -1 (lower at 7/8, upper at 1/8); with both gaps
present, alpha-below meets beta-above at u = 1/2 on the back face when
s = +1 and on the front face when s = -1, mirrored by the other pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .braid import BraidWord
from .diagram import (
    ALPHA,
    AUX,
    BETA,
    FIXED,
    Edge,
    Face,
    FixedCircle,
    RealDiagram,
    V_CURVE,
    V_ONC,
    V_SUB,
    validate_diagram,
)

CONVENTION_TABLE_VERSION = "bennequin-double-1"

AL, AH, BL, BH = "AL", "AH", "BL", "BH"

_SLOT = {
    0: {AH: 3, BH: 5, BL: 11, AL: 13},
    1: {BL: 3, AL: 5, AH: 11, BH: 13},
}
_TRACKS = {
    (1, AL): (13, -8),
    (1, AH): (3, -8),
    (1, BL): (-5, 8),
    (1, BH): (5, 8),
    (-1, AL): (13, 8),
    (-1, AH): (3, 8),
    (-1, BL): (-5, -8),
    (-1, BH): (5, -8),
}
_MIRROR = {AL: BL, BL: AL, AH: BH, BH: AH}


class BuildError(Exception):
    pass


def _ccw_key(vec):
    x, y = vec
    if x > 0 and y == 0:
        bucket = 0
    elif x > 0 and y > 0:
        bucket = 1
    elif x == 0 and y > 0:
        bucket = 2
    elif x < 0 and y > 0:
        bucket = 3
    elif x < 0 and y == 0:
        bucket = 4
    elif x < 0 and y < 0:
        bucket = 5
    elif x == 0 and y < 0:
        bucket = 6
    else:
        bucket = 7
    slope = Fraction(y, x) if x else Fraction(0)
    return (bucket, slope)


@dataclass
class _Band:
    pos: int
    col: int
    sign: int


def _gapname(key):
    return "c%dg%d" % key


class _Builder:
    def __init__(self, braid):
        self.braid = braid
        self.n = braid.strands
        self.bands = [
            _Band(t + 1, abs(a), 1 if a > 0 else -1)
            for t, a in enumerate(braid.letters)
        ]
        self.band_at = {b.pos: b for b in self.bands}
        self.by_col = {}
        for b in self.bands:
            self.by_col.setdefault(b.col, []).append(b)
        self.gaps = []
        for col in range(1, self.n):
            for j in range(len(self.by_col[col]) - 1):
                self.gaps.append((col, j))
        self.curve_of_gap = {g: k + 1 for k, g in enumerate(self.gaps)}

        self.vertices = {}
        self.edges = {}
        self.rays = {}  # vertex -> [(vec, dart)]
        self.back_chart = set()  # vertices whose chart is mirror-oriented
        self.tau_v = {}
        self.tau_e = {}
        self.edge_sheet = {}
        self.basepoint_edge = None
        self._eid = 0
        self._strand_segs = {}
        self._arc_segs = {}

    # -- primitives ---------------------------------------------------------

    def add_vertex(self, vid, kind, back_chart=False):
        if vid not in self.vertices:
            self.vertices[vid] = kind
            self.rays[vid] = []
            if back_chart:
                self.back_chart.add(vid)
        return vid

    def add_edge(self, name, src, dst, label, sheet, ray_src, ray_dst):
        eid = "%s#%d" % (name, self._eid)
        self._eid += 1
        self.edges[eid] = Edge(src, dst, label, 1)
        self.edge_sheet[eid] = sheet
        self.rays[src].append((ray_src, (eid, 1)))
        self.rays[dst].append((ray_dst, (eid, -1)))
        return eid

    @staticmethod
    def _vertex_end(vid):
        """Which tube end (0/1) a seam vertex K*/E* belongs to."""
        if vid.startswith("K"):
            return int(vid.split(".")[1][0])
        if vid.startswith("E"):
            return int(vid.split(".")[1])
        raise BuildError("not a seam vertex: %s" % vid)

    def _out_ray(self, vid):
        """Placeholder ray pointing out of the tube at a seam vertex."""
        return (-1, 0) if self._vertex_end(vid) == 0 else (1, 0)

    # -- tubes --------------------------------------------------------------

    def strands_of_band(self, band):
        bands = self.by_col[band.col]
        j = bands.index(band)
        out = {}
        if j > 0:
            g = self.curve_of_gap[(band.col, j - 1)]
            out[AL] = g
            out[BL] = g
        if j < len(bands) - 1:
            g = self.curve_of_gap[(band.col, j)]
            out[AH] = g
            out[BH] = g
        return out

    def build_tube(self, band):
        t, sign = band.pos, band.sign
        strands = self.strands_of_band(band)

        k0t = self.add_vertex("K%d.0T" % t, V_SUB)
        k0b = self.add_vertex("K%d.0B" % t, V_SUB)
        k1b = self.add_vertex("K%d.1B" % t, V_SUB)
        k1t = self.add_vertex("K%d.1T" % t, V_SUB)
        for v in (k0t, k0b, k1b, k1t):
            self.tau_v[v] = v

        ends = {}
        for s in strands:
            ends[s] = (
                self.add_vertex("E%d.0.%s" % (t, s), V_SUB),
                self.add_vertex("E%d.1.%s" % (t, s), V_SUB),
            )
        for s in strands:
            self.tau_v[ends[s][0]] = ends[_MIRROR[s]][0]
            self.tau_v[ends[s][1]] = ends[_MIRROR[s]][1]

        has_lo, has_hi = AL in strands, AH in strands
        p_lo = p_hi = None
        if has_lo:
            p_lo = self.add_vertex("p%d.lo" % t, V_ONC)
            self.tau_v[p_lo] = p_lo
        if has_hi:
            p_hi = self.add_vertex("p%d.hi" % t, V_ONC)
            self.tau_v[p_hi] = p_hi
        if has_lo and has_hi:
            qp = self.add_vertex("q%d.plus" % t, V_CURVE)
            qm = self.add_vertex("q%d.minus" % t, V_CURVE)
            self.tau_v[qp] = qm
            self.tau_v[qm] = qp

        u_lo = Fraction(1, 8) if sign > 0 else Fraction(7, 8)
        u_hi = Fraction(7, 8) if sign > 0 else Fraction(1, 8)

        events = {s: [] for s in strands}
        if has_lo:
            events[AL].append((u_lo, p_lo))
            events[BL].append((u_lo, p_lo))
        if has_hi:
            events[AH].append((u_hi, p_hi))
            events[BH].append((u_hi, p_hi))
        if has_lo and has_hi:
            if sign > 0:
                q_for = {AL: qm, BH: qm, AH: qp, BL: qp}
            else:
                q_for = {AL: qp, BH: qp, AH: qm, BL: qm}
            for s in strands:
                events[s].append((Fraction(1, 2), q_for[s]))
        for s in events:
            events[s].sort(key=lambda uv: uv[0])

        for s, g in strands.items():
            phi0, slope = _TRACKS[(sign, s)]
            label = (ALPHA, g) if s in (AL, AH) else (BETA, g)
            chain = [(Fraction(0), ends[s][0])] + events[s] + [(Fraction(1), ends[s][1])]
            if s in (AL, BL):
                chain = list(reversed(chain))  # lower-gap strands run leftward
            segs = []
            for (ua, va), (ub, vb) in zip(chain, chain[1:]):
                du = 1 if ub > ua else -1
                mid = (phi0 + slope * (ua + ub) / 2) % 16
                sheet = 1 if (mid > 12 or mid < 4) else -1
                segs.append(
                    self.add_edge(
                        "st%d.%s" % (t, s),
                        va,
                        vb,
                        label,
                        sheet,
                        (du, du * slope),
                        (-du, -du * slope),
                    )
                )
            self._strand_segs[(t, s)] = segs

        # knot lines: phi = 12 from K0B to K1T, phi = 4 from K0T to K1B
        cline = 12 if sign > 0 else 4
        for phi_line, corner0, corner1 in ((12, k0b, k1t), (4, k0t, k1b)):
            stations = [(Fraction(0), corner0)]
            if phi_line == cline:
                if has_lo:
                    stations.append((u_lo, p_lo))
                if has_hi:
                    stations.append((u_hi, p_hi))
                stations.sort(key=lambda uv: uv[0])
            stations.append((Fraction(1), corner1))
            name = "cl%d.%s" % (t, "A" if phi_line == 12 else "B")
            for (ua, va), (ub, vb) in zip(stations, stations[1:]):
                eid = self.add_edge(name, va, vb, (FIXED, 0), None, (1, 0), (-1, 0))
                self.tau_e[eid] = eid

        # seam circles
        for end in (0, 1):
            corner_at = {4: k0t, 12: k0b} if end == 0 else {4: k1b, 12: k1t}
            slots = dict(corner_at)
            for s in strands:
                slots[_SLOT[end][s]] = ends[s][end]
            order = sorted(slots)
            seam = {}
            for idx, a in enumerate(order):
                b = order[(idx + 1) % len(order)]
                key = (a, b)
                mid = Fraction(a + (b if b > a else b + 16), 2) % 16
                sheet = 1 if (mid > 12 or mid < 4) else -1
                eid = self.add_edge(
                    "s%d.%d" % (t, end),
                    slots[a],
                    slots[b],
                    (AUX,),
                    sheet,
                    (0, 1),
                    (0, -1),
                )
                seam[key] = eid
            # tau: phi -> 8 - phi reverses seam arcs
            for (a, b), eid in seam.items():
                ia, ib = (8 - b) % 16, (8 - a) % 16
                if (ia, ib) not in seam:
                    raise BuildError("seam of tube %d not mirror symmetric" % t)
                self.tau_e[eid] = seam[(ia, ib)]

        for s in strands:
            for a, b in zip(
                self._strand_segs[(t, s)], self._strand_segs[(t, _MIRROR[s])]
            ):
                self.tau_e[a] = b

    # -- disks ---------------------------------------------------------------

    def holes_of_disk(self, k):
        out = []
        for b in self.bands:
            if b.col == k:
                out.append((b, 0))
            elif b.col == k - 1:
                out.append((b, 1))
        out.sort(key=lambda be: be[0].pos)
        return out

    def build_disk(self, k):
        holes = self.holes_of_disk(k)
        if not holes:
            raise BuildError("disk %d has no attachments" % k)
        corner = {}
        for b, end in holes:
            corner[(b.pos, "bot")] = "K%d.%dB" % (b.pos, end)
            corner[(b.pos, "top")] = "K%d.%dT" % (b.pos, end)

        for (b1, _), (b2, _) in zip(holes, holes[1:]):
            va = corner[(b1.pos, "top")]
            vb = corner[(b2.pos, "bot")]
            eid = self.add_edge(
                "ca%d" % k, va, vb, (FIXED, 0), None, self._out_ray(va), self._out_ray(vb)
            )
            self.tau_e[eid] = eid
        va = corner[(holes[-1][0].pos, "top")]
        vb = corner[(holes[0][0].pos, "bot")]
        closure = self.add_edge(
            "cc%d" % k, va, vb, (FIXED, 0), None, self._out_ray(va), self._out_ray(vb)
        )
        self.tau_e[closure] = closure
        if k == 1:
            self.basepoint_edge = closure

        for side in (1, -1):
            self.build_disk_face(k, side, holes)

        # mirror pairing of the arcs of the two faces
        for key, (label, segs) in list(self._arc_segs.get((k, 1), {}).items()):
            mirror = self._arc_segs[(k, -1)][key]
            for a, b in zip(segs, mirror[1]):
                self.tau_e[a] = b
                self.tau_e[b] = a

    def _arc_inventory(self, k, side, holes):
        station = {b.pos: idx for idx, (b, _) in enumerate(holes)}
        arcs = []
        for col, j in self.gaps:
            if col not in (k, k - 1):
                continue
            g = self.curve_of_gap[(col, j)]
            b_lo, b_hi = self.by_col[col][j], self.by_col[col][j + 1]
            end = 0 if col == k else 1
            if (col == k and side == 1) or (col == k - 1 and side == -1):
                kind = ALPHA
                s_lo, s_hi = AH, AL
            else:
                kind = BETA
                s_lo, s_hi = BH, BL
            va = "E%d.%d.%s" % (b_lo.pos, end, s_lo)
            vb = "E%d.%d.%s" % (b_hi.pos, end, s_hi)
            lo = 4 * station[b_lo.pos] + 2
            hi = 4 * station[b_hi.pos] + 1
            downward = col == k  # stored along the curve: left rails run down
            arcs.append(
                {
                    "key": (col, j),
                    "label": (kind, g),
                    "va": va,
                    "vb": vb,
                    "lo": lo,
                    "hi": hi,
                    "downward": downward,
                }
            )
        return arcs

    def build_disk_face(self, k, side, holes):
        arcs = self._arc_inventory(k, side, holes)
        by_key = {a["key"]: a for a in arcs}

        def height(a):
            return (a["hi"] - a["lo"], a["key"])

        # risers of the taller arc cross horizontals of the shorter one
        cross_at = {a["key"]: {"start": [], "mid": [], "end": []} for a in arcs}
        for i in range(len(arcs)):
            for j in range(i + 1, len(arcs)):
                a, b = arcs[i], arcs[j]
                in_a = [p for p in (b["lo"], b["hi"]) if a["lo"] < p < a["hi"]]
                in_b = [p for p in (a["lo"], a["hi"]) if b["lo"] < p < b["hi"]]
                if len(in_a) != 1 or len(in_b) != 1:
                    continue
                tall, short = (a, b) if height(a) > height(b) else (b, a)
                endpoint = in_b[0] if tall is a else in_a[0]
                names = sorted([_gapname(a["key"]), _gapname(b["key"])])
                vname = "x%d.%s.%s.%s" % (k, "f" if side == 1 else "b", *names)
                v = self.add_vertex(vname, V_CURVE, back_chart=(side == -1))
                self.tau_v[v] = "x%d.%s.%s.%s" % (k, "b" if side == 1 else "f", *names)
                h_short = height(short)
                cross_at[short["key"]]["mid"].append((endpoint, v))
                at = "start" if endpoint == tall["lo"] else "end"
                cross_at[tall["key"]][at].append((h_short, v))

        for a in arcs:
            ev = cross_at[a["key"]]
            seq = (
                [("va", None, a["va"])]
                + [("riser_lo", h, v) for h, v in sorted(ev["start"])]
                + [("mid", p, v) for p, v in sorted(ev["mid"])]
                + [("riser_hi", h, v) for h, v in sorted(ev["end"], reverse=True)]
                + [("vb", None, a["vb"])]
            )
            if a["downward"]:
                seq = list(reversed(seq))
            segs = []
            for (role_x, _, x), (role_y, _, y) in zip(seq, seq[1:]):
                rx = self._arc_ray(a, role_x, x, forward=True, seq=seq)
                ry = self._arc_ray(a, role_y, y, forward=False, seq=seq)
                segs.append(
                    self.add_edge(
                        "da%d.%s.%s" % (k, "f" if side == 1 else "b", _gapname(a["key"])),
                        x,
                        y,
                        a["label"],
                        side,
                        rx,
                        ry,
                    )
                )
            self._arc_segs.setdefault((k, side), {})[a["key"]] = (a["label"], segs)

    def _arc_ray(self, arc, role, vertex, forward, seq):
        """Chart ray of an arc segment endpoint inside a disk face.

        ``forward`` means the ray points from ``vertex`` toward the next
        vertex in the stored (curve) order; geometric direction along the
        equator axis is recovered from the roles and the stored direction.
        """
        if role in ("va", "vb"):
            return self._out_ray(vertex)
        geom_forward = forward != arc["downward"]  # True: toward larger station
        if role == "mid":
            return (1, 0) if geom_forward else (-1, 0)
        if role == "riser_lo":
            # ascending the riser at the low endpoint as geometry moves on
            return (0, 1) if geom_forward else (0, -1)
        if role == "riser_hi":
            return (0, -1) if geom_forward else (0, 1)
        raise BuildError("bad role")

    # -- assembly -------------------------------------------------------------

    def rotations(self):
        rot = {}
        for v, rays in self.rays.items():
            if not rays:
                raise BuildError("vertex %s has no incident edges" % v)
            ordered = [dart for _, dart in sorted(rays, key=lambda rd: _ccw_key(rd[0]))]
            if v in self.back_chart:
                ordered = list(reversed(ordered))
            rot[v] = ordered
        return rot

    def trace_faces(self):
        rot = self.rotations()
        pos = {}
        for v, darts in rot.items():
            for i, d in enumerate(darts):
                pos[(v, d)] = i
        faces = []
        seen = set()
        for eid, e in self.edges.items():
            for inc in (1, -1):
                if (eid, inc) in seen:
                    continue
                walk = []
                d = (eid, inc)
                guard = 0
                while (d[0], d[1]) not in seen:
                    seen.add(d)
                    walk.append(d)
                    e2 = self.edges[d[0]]
                    head = e2.dst if d[1] == 1 else e2.src
                    rev = (d[0], -d[1])
                    darts = rot[head]
                    i = pos[(head, rev)]
                    d = darts[(i - 1) % len(darts)]
                    guard += 1
                    if guard > 4 * len(self.edges):
                        raise BuildError("face tracing does not close up")
                if walk[0] != d:
                    raise BuildError("face tracing produced a non-simple orbit")
                faces.append(walk)
        return faces

    def face_sheet(self, walk):
        sheets = {self.edge_sheet[eid] for eid, _ in walk}
        sheets.discard(None)
        if len(sheets) != 1:
            raise BuildError("face with ambiguous sheet: %s" % sheets)
        return sheets.pop()

    def trace_fixed_circle(self):
        incid = {}
        for eid, e in self.edges.items():
            if e.label[0] != FIXED:
                continue
            incid.setdefault(e.src, []).append(eid)
            incid.setdefault(e.dst, []).append(eid)
        for v, es in incid.items():
            if len(es) != 2:
                raise BuildError("knot circle branches at %s" % v)
        start = self.basepoint_edge
        cycle = [start]
        at = self.edges[start].dst
        prev = start
        total = sum(1 for e in self.edges.values() if e.label[0] == FIXED)
        while True:
            nxt = [e for e in incid[at] if e != prev]
            if len(nxt) != 1:
                raise BuildError("knot circle is not a single cycle")
            if nxt[0] == start:
                break
            cycle.append(nxt[0])
            e = self.edges[nxt[0]]
            at = e.dst if e.src == at else e.src
            prev = nxt[0]
            if len(cycle) > total:
                raise BuildError("knot circle does not close")
        if len(cycle) != total:
            raise BuildError("fixed set has more than one component")
        return cycle

    def build(self):
        for band in self.bands:
            self.build_tube(band)
        for k in range(1, self.n + 1):
            self.build_disk(k)

        walks = self.trace_faces()
        faces = []
        for walk in walks:
            faces.append(Face(tuple(walk), self.face_sheet(walk), 1))

        circle = self.trace_fixed_circle()
        m = len(self.gaps)
        diagram = RealDiagram(
            vertices=self.vertices,
            edges=self.edges,
            faces=faces,
            tau_vertices=self.tau_v,
            tau_edges=self.tau_e,
            alpha_order=list(range(1, m + 1)),
            curve_orientations={i: 1 for i in range(1, m + 1)},
            fixed_circles=[FixedCircle(tuple(circle), self.basepoint_edge)],
            quotient_orientable=True,
        )
        return diagram


def build_real_diagram(braid: BraidWord):
    """Build and validate the diagram of the double branched cover."""
    builder = _Builder(braid)
    diagram = builder.build()
    report = validate_diagram(diagram)
    if report:
        raise BuildError("construction violates invariants: %s" % (report[:3],))
    return diagram

"""Signs of symmetric intersection points and the per-class signed counts.

The sign of a generator is the product of three ingredients: the sign of the
permutation listing its curve indices (mirror pairs first, then the fixed
components in the order they appear along the fixed set), the local crossing
signs of the mirror pairs read off on the positive sheet, and the local
crossing signs of the alpha curves against the oriented fixed set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import ALPHA, BETA, FIXED, RealDiagram
from .spinc import ConsistencyError


class UnsupportedDiagramError(Exception):
    """Sign computations need an orientable quotient with sheet labels."""


# -- local frames -----------------------------------------------------------


def _curve_darts_at(diagram, kind, index, vertex):
    """(out_dart, in_dart) of the oriented curve at one of its vertices."""
    cycle = diagram.curve_cycle(kind, index)
    verts = diagram.curve_vertices(kind, index)
    n = len(cycle)
    for k, v in enumerate(verts):
        if v == vertex:
            out_e, out_s = cycle[k]
            in_e, in_s = cycle[(k - 1) % n]
            return (out_e, out_s), (in_e, -in_s)
    raise ConsistencyError("vertex %r not on %s(%s)" % (vertex, kind, index))


def _sign_between(diagram, vertex, a_out, a_in, b_out):
    """+1 when b_out lies counterclockwise strictly between a_out and a_in."""
    rot = diagram.rotations()[vertex]
    pos = {d: k for k, d in enumerate(rot)}
    n = len(rot)
    span = (pos[a_in] - pos[a_out]) % n
    here = (pos[b_out] - pos[a_out]) % n
    if here == 0 or here == span:
        raise ConsistencyError("degenerate tangency at %r" % (vertex,))
    return 1 if here < span else -1


def c_orientation_dart(diagram, edge_id):
    """Dart of a fixed-set edge oriented with the positive sheet on its left."""
    if not diagram.quotient_orientable:
        raise UnsupportedDiagramError("fixed set orientation needs sheet labels")
    e = diagram.edges[edge_id]
    face = diagram.corner_face(e.src, (edge_id, 1))
    sheet = diagram.faces[face].sheet
    if sheet == 1:
        return (edge_id, 1)
    if sheet == -1:
        return (edge_id, -1)
    raise UnsupportedDiagramError("missing sheet label next to %r" % (edge_id,))


def vertex_sheet(diagram, v):
    rot = diagram.rotations()[v]
    face = diagram.corner_face(v, rot[0])
    return diagram.faces[face].sheet


# -- local signs --------------------------------------------------------------


def eps_c(diagram, c_vertex, alpha_index=None):
    """Sign of the oriented alpha curve against the oriented fixed set."""
    if not diagram.quotient_orientable:
        raise UnsupportedDiagramError("eps_c needs an orientable quotient")
    inc = diagram.vertex_curve_incidences(c_vertex)
    alphas = [l for l in inc if l[0] == ALPHA]
    if alpha_index is None:
        alpha_index = alphas[0][1]
    a_out, a_in = _curve_darts_at(diagram, ALPHA, alpha_index, c_vertex)
    # the fixed-set tangent: the oriented dart of one of its edges at c
    for eid, e in diagram.edges.items():
        if e.label[0] != FIXED:
            continue
        dart = c_orientation_dart(diagram, eid)
        if (dart[1] == 1 and e.src == c_vertex) or (dart[1] == -1 and e.dst == c_vertex):
            return _sign_between(diagram, c_vertex, a_out, a_in, dart)
    raise ConsistencyError("no fixed-set edge leaves %r" % (c_vertex,))


def eps_z(diagram, pair):
    """Sign of alpha_r against beta_s at the positive-sheet element of a pair."""
    if not diagram.quotient_orientable:
        raise UnsupportedDiagramError("eps_z needs an orientable quotient")
    r, s, z = pair
    if vertex_sheet(diagram, z) != 1:
        raise ConsistencyError("pair representative %r is not on the positive sheet" % (z,))
    a_out, a_in = _curve_darts_at(diagram, ALPHA, r, z)
    b_out, _ = _curve_darts_at(diagram, BETA, s, z)
    return _sign_between(diagram, z, a_out, a_in, b_out)


def boundary_order(diagram, x):
    """The fixed components of x, ordered along the fixed set from the basepoints.

    Components are listed circle by circle in the stored order, walking each
    circle from its basepoint edge in the boundary orientation of the
    positive sheet.
    """
    if not diagram.quotient_orientable:
        raise UnsupportedDiagramError("boundary order needs sheet labels")
    wanted = {c: s for s, c in x.fixed}
    out = []
    for fc in diagram.fixed_circles:
        dart = c_orientation_dart(diagram, fc.basepoint_edge)
        eid, inc = dart
        e = diagram.edges[eid]
        at = e.dst if inc == 1 else e.src
        prev = eid
        incid = {}
        for e2id in fc.edges:
            e2 = diagram.edges[e2id]
            incid.setdefault(e2.src, []).append(e2id)
            incid.setdefault(e2.dst, []).append(e2id)
        for _ in range(len(fc.edges)):
            if at in wanted:
                out.append((wanted[at], at))
                del wanted[at]
            nxt = [e2 for e2 in incid[at] if e2 != prev]
            if len(nxt) != 1:
                raise ConsistencyError("fixed circle branches at %r" % (at,))
            e2 = diagram.edges[nxt[0]]
            at = e2.dst if e2.src == at else e2.src
            prev = nxt[0]
    if wanted:
        raise ConsistencyError("components %r not found on the fixed set" % (wanted,))
    return out


def permutation_sign(listing):
    seq = list(listing)
    if len(set(seq)) != len(seq):
        raise ValueError("repeated index in permutation listing")
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def generator_sign(diagram, x):
    """Product of the permutation sign and the local crossing signs."""
    position = {idx: k + 1 for k, idx in enumerate(diagram.alpha_order)}
    listing = []
    for r, s, z in sorted(x.pairs, key=lambda p: min(p[0], p[1])):
        listing.append(position[r])
        listing.append(position[s])
    ordered_fixed = boundary_order(diagram, x)
    for s, c in ordered_fixed:
        listing.append(position[s])
    sign = permutation_sign(listing)
    for pair in x.pairs:
        sign *= eps_z(diagram, pair)
    for s, c in ordered_fixed:
        sign *= eps_c(diagram, c, s)
    return sign


# -- assembling the report -----------------------------------------------------


@dataclass
class ChiReport:
    class_sizes: list
    class_values: list
    class_coords: list
    chi_tot: int
    applied_sign: int
    determinant: object = None
    grading_consistent: object = None

    @property
    def multiset(self):
        return tuple(sorted(self.class_values))

    def entries(self):
        return [
            {"size": n, "chi": v}
            for n, v in zip(self.class_sizes, self.class_values)
        ]


def chi_report(diagram, partition, signs, determinant=None):
    """Per-class signed counts, normalised so the total is positive."""
    values = []
    for members in partition.classes:
        values.append(sum(signs[k] for k in members))
    total = sum(values)
    if total == 0:
        raise ConsistencyError("total signed count is zero; it must be odd")
    applied = 1
    if total < 0:
        applied = -1
        values = [-v for v in values]
        total = -total
    for v in values:
        if v % 2 == 0:
            raise ConsistencyError("even per-class signed count %d" % v)
    return ChiReport(
        class_sizes=partition.sizes(),
        class_values=values,
        class_coords=list(partition.coords),
        chi_tot=total,
        applied_sign=applied,
        determinant=determinant,
    )


# -- convention flips (used by the property suites) ---------------------------


def flip_curve_orientation(diagram, index):
    d = _clone(diagram)
    d.curve_orientations = dict(diagram.curve_orientations)
    d.curve_orientations[index] = -d.curve_orientations.get(index, 1)
    return d


def permute_alpha_order(diagram, new_order):
    if sorted(new_order) != sorted(diagram.alpha_order):
        raise ValueError("not a permutation of the curve indices")
    d = _clone(diagram)
    d.alpha_order = list(new_order)
    return d


def reverse_sheets(diagram):
    from .diagram import Face

    d = _clone(diagram)
    d.faces = [
        Face(f.walk, (-f.sheet if f.sheet is not None else None), f.orient_sign)
        for f in diagram.faces
    ]
    return d


def _clone(diagram):
    return RealDiagram(
        vertices=diagram.vertices,
        edges=diagram.edges,
        faces=diagram.faces,
        tau_vertices=diagram.tau_vertices,
        tau_edges=diagram.tau_edges,
        alpha_order=diagram.alpha_order,
        curve_orientations=diagram.curve_orientations,
        fixed_circles=diagram.fixed_circles,
        quotient_orientable=diagram.quotient_orientable,
    )

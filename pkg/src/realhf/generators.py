"""Enumeration of the symmetric intersection points of a diagram.

A generator is an involutive matching of curve indices: fixed indices pick a
crossing of alpha_i with beta_i on the fixed set, and two-cycles {r, s} pick
a mirror pair {z, tau(z)} with z in alpha_r meeting beta_s off the fixed set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ALPHA, BETA, FIXED, V_CURVE, V_ONC


@dataclass(frozen=True)
class Generator:
    """pairs: ((r, s, plus_vertex), ...) with r the alpha index of the element
    on the positive sheet; fixed: ((s, vertex), ...) sorted by index."""

    pairs: tuple
    fixed: tuple

    @property
    def k(self):
        return len(self.pairs)

    def sigma_images(self, m):
        sigma = {}
        for r, s, _ in self.pairs:
            sigma[r] = s
            sigma[s] = r
        for s, _ in self.fixed:
            sigma[s] = s
        return [sigma[i] for i in range(1, m + 1)]

    def point_on_alpha(self, diagram, index):
        """The component of the generator lying on alpha_index."""
        for r, s, z in self.pairs:
            if r == index:
                return z
            if s == index:
                return diagram.tau_vertices[z]
        for s, c in self.fixed:
            if s == index:
                return c
        raise KeyError(index)

    def points(self, diagram):
        """All vertices of the generator (mirror pairs contribute both)."""
        out = []
        for r, s, z in self.pairs:
            out.append(z)
            out.append(diagram.tau_vertices[z])
        out.extend(c for _, c in self.fixed)
        return out

    def sort_key(self):
        return (
            tuple((r, s, str(z)) for r, s, z in self.pairs),
            tuple((s, str(c)) for s, c in self.fixed),
        )


class CrossingTable:
    """Crossing inventory of a diagram, indexed for the matching search."""

    def __init__(self, diagram):
        self.diagram = diagram
        self.on_c = {i: [] for i in diagram.alpha_order}
        self.pair_plus = {}  # (r, s) -> plus-sheet vertices of alpha_r ^ beta_s

        c_vertices = set()
        for fc in diagram.fixed_circles:
            for eid in fc.edges:
                e = diagram.edges[eid]
                c_vertices.add(e.src)
                c_vertices.add(e.dst)

        for v, kind in diagram.vertices.items():
            if kind == V_ONC:
                inc = diagram.vertex_curve_incidences(v)
                alphas = [l for l in inc if l[0] == ALPHA]
                self.on_c[alphas[0][1]].append(v)
            elif kind == V_CURVE:
                inc = diagram.vertex_curve_incidences(v)
                r = [l for l in inc if l[0] == ALPHA][0][1]
                s = [l for l in inc if l[0] == BETA][0][1]
                if self._vertex_sheet(v) == 1:
                    self.pair_plus.setdefault((r, s), []).append(v)
        for key in self.pair_plus:
            self.pair_plus[key].sort(key=str)
        for i in self.on_c:
            self.on_c[i].sort(key=str)

    def _vertex_sheet(self, v):
        rot = self.diagram.rotations()[v]
        face = self.diagram.corner_face(v, rot[0])
        sheet = self.diagram.faces[face].sheet
        if sheet is None:
            from .diagram import DiagramError

            raise DiagramError("off-C crossing without sheet data at %r" % (v,))
        return sheet

    def pair_options(self, r, s):
        """Mirror pairs usable for the two-cycle {r, s}: (alpha-index-of-plus, vertex)."""
        out = [(r, s, z) for z in self.pair_plus.get((r, s), ())]
        out += [(s, r, z) for z in self.pair_plus.get((s, r), ())]
        return out


def _enumerate(diagram, emit):
    m = diagram.num_curves
    if m == 0:
        emit(Generator((), ()))
        return
    table = CrossingTable(diagram)
    order = sorted(diagram.alpha_order)

    def backtrack(unused, pairs, fixed):
        if not unused:
            emit(Generator(tuple(pairs), tuple(sorted(fixed))))
            return
        r = unused[0]
        rest = unused[1:]
        for c in table.on_c[r]:
            fixed.append((r, c))
            backtrack(rest, pairs, fixed)
            fixed.pop()
        for s in rest:
            options = table.pair_options(r, s)
            if not options:
                continue
            rest2 = [t for t in rest if t != s]
            for opt in options:
                pairs.append(opt)
                backtrack(rest2, pairs, fixed)
                pairs.pop()

    backtrack(order, [], [])


def enumerate_generators(diagram):
    out = []
    _enumerate(diagram, out.append)
    out.sort(key=Generator.sort_key)
    return out


def generator_count(diagram):
    count = 0

    def emit(_):
        nonlocal count
        count += 1

    _enumerate(diagram, emit)
    return count


def brute_force_generators(diagram):
    """Independent oracle: try every transversal point tuple directly.

    Only sensible for small diagrams; enumerates all ways of picking one
    crossing on each alpha curve such that the beta indices form a
    permutation and the chosen point set is invariant under tau.
    """
    from itertools import product

    d = diagram
    m = d.num_curves
    if m == 0:
        return [Generator((), ())]
    per_alpha = {}
    for v, kind in d.vertices.items():
        if kind not in (V_CURVE, V_ONC):
            continue
        inc = d.vertex_curve_incidences(v)
        r = [l for l in inc if l[0] == ALPHA][0][1]
        s = [l for l in inc if l[0] == BETA][0][1]
        per_alpha.setdefault(r, []).append((v, s))
    indices = sorted(d.alpha_order)
    found = set()
    table = CrossingTable(d)
    for combo in product(*[per_alpha.get(i, []) for i in indices]):
        betas = [s for _, s in combo]
        if sorted(betas) != indices:
            continue
        points = {v for v, _ in combo}
        if {d.tau_vertices[v] for v in points} != points:
            continue
        pairs = []
        fixed = []
        ok = True
        for i, (v, s) in zip(indices, combo):
            if i == s:
                if d.vertices[v] != V_ONC:
                    ok = False
                    break
                fixed.append((i, v))
            elif i < s:
                z = v if table._vertex_sheet(v) == 1 else d.tau_vertices[v]
                r = i if z == v else s
                pairs.append((r, s if z == v else i, z))
        if ok:
            found.add(Generator(tuple(pairs), tuple(sorted(fixed))))
    return sorted(found, key=Generator.sort_key)

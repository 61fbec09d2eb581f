"""First homology of the diagram surface and of the glued 3-manifold.

H1 of the surface is computed from the cell complex (cycles modulo face
boundaries); the classes of the alpha and beta curves then present H1 of the
3-manifold as a cokernel, handled by exact Smith normal form.
"""

from __future__ import annotations

from .diagram import DiagramError
from .snf import CokernelMap, matvec, smith_normal_form


class HomologyPresentation:
    def __init__(self, diagram):
        self.diagram = diagram
        self.edge_index = {eid: k for k, eid in enumerate(sorted(diagram.edges, key=str))}
        self.vertex_index = {v: k for k, v in enumerate(sorted(diagram.vertices, key=str))}
        ne, nv = len(self.edge_index), len(self.vertex_index)

        d1 = [[0] * ne for _ in range(nv)]
        for eid, e in diagram.edges.items():
            col = self.edge_index[eid]
            d1[self.vertex_index[e.dst]][col] += 1
            d1[self.vertex_index[e.src]][col] -= 1

        snf1 = smith_normal_form(d1)
        self._snf1 = snf1
        self._cycle_rank = ne - snf1.rank

        # coordinates of face boundaries in the cycle basis
        relations = []
        for face in diagram.faces:
            chain = [0] * ne
            for eid, inc in face.oriented_walk():
                chain[self.edge_index[eid]] += inc
            relations.append(self._cycle_coords(chain))
        rel_cols = (
            [list(col) for col in zip(*relations)] if relations else
            [[] for _ in range(self._cycle_rank)]
        )
        surf = CokernelMap(rel_cols, ambient_rank=self._cycle_rank)
        if any(f not in (0, 1) for f in surf.factors):
            raise DiagramError("surface homology has torsion; complex is not a surface")
        self._free_slots = [k for k, f in enumerate(surf.factors) if f == 0]
        self._surface_map = surf
        self.surface_rank = len(self._free_slots)

        # relation matrix whose columns are the curve classes
        self.curve_classes = {}
        cols = []
        for kind in ("alpha", "beta"):
            for i in diagram.alpha_order:
                cls = self.surface_class(self.curve_chain(kind, i))
                self.curve_classes[(kind, i)] = cls
                cols.append(cls)
        self.relation_matrix = [
            [col[r] for col in cols] for r in range(self.surface_rank)
        ] if cols else [[] for _ in range(self.surface_rank)]
        self.h1y = CokernelMap(self.relation_matrix, ambient_rank=self.surface_rank)

    # -- chains and coordinates ---------------------------------------------

    def curve_chain(self, kind, index):
        ne = len(self.edge_index)
        chain = [0] * ne
        for eid, sense in self.diagram.curve_cycle(kind, index):
            chain[self.edge_index[eid]] += sense
        return chain

    def chain_vector(self, chain_dict):
        ne = len(self.edge_index)
        chain = [0] * ne
        for eid, c in chain_dict.items():
            chain[self.edge_index[eid]] += c
        return chain

    def _cycle_coords(self, chain):
        """Coordinates of a 1-cycle in the kernel basis of the boundary map."""
        w = matvec(self._snf1.right_inv, chain)
        rank = self._snf1.rank
        if any(w[k] for k in range(rank)):
            raise DiagramError("chain is not a cycle")
        return w[rank:]

    def surface_class(self, chain):
        """Class of a 1-cycle in the chosen free basis of surface homology."""
        # check the chain is a cycle
        bnd = {}
        for eid, k in self.edge_index.items():
            c = chain[k]
            if c:
                e = self.diagram.edges[eid]
                bnd[e.dst] = bnd.get(e.dst, 0) + c
                bnd[e.src] = bnd.get(e.src, 0) - c
        if any(bnd.values()):
            raise DiagramError("chain is not a cycle")
        coords = self._cycle_coords(chain)
        reduced = self._surface_map.reduce(coords)
        return [reduced[k] for k in self._free_slots]

    # -- the glued manifold ---------------------------------------------------

    def reduce_to_h1y(self, surface_class):
        return self.h1y.reduce(surface_class)

    def cycle_class_in_h1y(self, chain_dict):
        return self.reduce_to_h1y(self.surface_class(self.chain_vector(chain_dict)))

    def h1y_order(self):
        return self.h1y.group_order()

    def h1y_torsion(self):
        return self.h1y.torsion_factors

    @property
    def invariant_factors(self):
        return [f for f in self.h1y.factors if f != 1]


def h1_presentation(diagram):
    return HomologyPresentation(diagram)

"""Obstruction classes between generators and the induced partition.

Two generators lie in the same class exactly when the loop formed by arcs
along the alpha curves from one to the other, minus its mirror image, dies
in the first homology of the glued manifold; the classes are computed with
the exact presentation from the homology module.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConsistencyError(Exception):
    """Internal cross-check failed; results would be meaningless."""


def _arc_chain(diagram, index, start, end, chain, longest=False):
    """Add to ``chain`` an arc along alpha_index from start to end.

    Uses the shorter of the two arcs (the longer one when ``longest``); ties
    break toward the forward direction of the curve orientation.
    """
    if start == end:
        return
    from .diagram import ALPHA

    cycle = diagram.curve_cycle(ALPHA, index)
    verts = diagram.curve_vertices(ALPHA, index)
    pos = {}
    for k, v in enumerate(verts):
        pos.setdefault(v, k)
    if start not in pos or end not in pos:
        raise ConsistencyError("generator component not on its alpha curve")
    i, j = pos[start], pos[end]
    n = len(cycle)
    fwd = (j - i) % n
    bwd = n - fwd
    use_fwd = fwd <= bwd
    if longest:
        use_fwd = not use_fwd
    if use_fwd:
        for k in range(i, i + fwd):
            eid, sense = cycle[k % n]
            chain[eid] = chain.get(eid, 0) + sense
    else:
        for k in range(i - 1, i - 1 - bwd, -1):
            eid, sense = cycle[k % n]
            chain[eid] = chain.get(eid, 0) - sense


def epsilon_class(diagram, hp, x, y, longest_arcs=False):
    """Coordinates in H1 of the glued manifold of the obstruction to a strip."""
    chain = {}
    for index in diagram.alpha_order:
        _arc_chain(
            diagram,
            index,
            x.point_on_alpha(diagram, index),
            y.point_on_alpha(diagram, index),
            chain,
            longest=longest_arcs,
        )
    # subtract the mirror chain
    full = dict(chain)
    for eid, c in chain.items():
        im = diagram.tau_edges[eid]
        sense = diagram.tau_edge_sense(eid)
        full[im] = full.get(im, 0) - c * sense
    return hp.cycle_class_in_h1y(full)


@dataclass
class SpinCPartition:
    classes: list  # list of lists of generator indices
    coords: list  # epsilon coordinate of each class relative to the base
    generators: list

    def class_of(self, gen_index):
        for k, members in enumerate(self.classes):
            if gen_index in members:
                return k
        raise KeyError(gen_index)

    def sizes(self):
        return [len(c) for c in self.classes]


def partition_by_spinc(diagram, hp, gens, expected_count=None):
    """Partition generators by their obstruction class.

    When ``expected_count`` is given (the determinant for knot diagrams), a
    mismatch raises ConsistencyError.
    """
    if not gens:
        raise ConsistencyError("no generators to partition")
    base = gens[0]
    buckets = {}
    for k, g in enumerate(gens):
        eps = epsilon_class(diagram, hp, base, g)
        buckets.setdefault(eps, []).append(k)
    ordered = sorted(buckets.items(), key=lambda kv: kv[0])
    partition = SpinCPartition(
        classes=[members for _, members in ordered],
        coords=[eps for eps, _ in ordered],
        generators=list(gens),
    )
    if expected_count is not None and len(partition.classes) != expected_count:
        raise ConsistencyError(
            "class count %d differs from expected %d"
            % (len(partition.classes), expected_count)
        )
    return partition

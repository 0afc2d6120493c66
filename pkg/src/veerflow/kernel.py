"""Derived per-edge and per-tetrahedron combinatorics.

Edge stars (fans split by the coorientation), tetrahedron roles, and the
longest-fan bound delta.  Side 0 / side 1 of a star is the deterministic
chirality used everywhere downstream: sides are ordered by the bottom-face
slot through which they enter the tetrahedron above the edge.
"""

from dataclasses import dataclass

from .errors import InternalInvariantError


@dataclass
class EdgeStar:
    edge_class: int
    top_tet: int  # edge is its bottom edge; Gamma-vertex the flow graph maps to
    bottom_tet: int  # edge is its top edge
    fans: tuple  # two lists of fan tetrahedra, each ordered by coorientation
    degree: int

    @property
    def fan_lengths(self):
        return (len(self.fans[0]), len(self.fans[1]))


@dataclass
class TetRoles:
    tet: int
    top_edge: int  # edge class ids
    bottom_edge: int
    side_edges: list  # [(edge class id, veer, vertex pair)] for the four 0-edges
    flow_targets: list  # side edge classes whose veer is opposite the top edge's


def edge_stars(vt):
    """EdgeStar view of every edge class.

    Every tetrahedron-edge incidence appears in exactly one star; the star
    degrees sum to 6n.
    """
    stars = []
    for cls in vt.classes:
        stars.append(EdgeStar(
            edge_class=cls.index,
            top_tet=cls.top_tet,
            bottom_tet=cls.bottom_tet,
            fans=tuple([en.tet for en in side.entries] for side in cls.sides),
            degree=cls.degree,
        ))
    if sum(s.degree for s in stars) != 6 * vt.n:
        raise InternalInvariantError("edge star degrees do not sum to 6n")
    return stars


def delta_tau(vt):
    """Length of the longest fan; at least 1 on veering input."""
    return vt.delta()


def tet_roles(vt):
    """Top/bottom/side edge classes of each tetrahedron, with flow targets."""
    roles = []
    for t in range(vt.n):
        pred = vt.side_veer_prediction(t)
        top_cls = vt.edge_class_of(t, vt.top_edge[t])
        top_veer = vt.veer[top_cls]
        sides = []
        targets = []
        for pair in sorted(pred):
            cid = vt.edge_class_of(t, pair)
            sides.append((cid, vt.veer[cid], pair))
            if vt.veer[cid] != top_veer:
                targets.append((cid, pair))
        if len(targets) != 2:
            raise InternalInvariantError(
                f"tetrahedron {t} has {len(targets)} opposite-veer side edges, expected 2")
        roles.append(TetRoles(
            tet=t,
            top_edge=top_cls,
            bottom_edge=vt.edge_class_of(t, vt.bottom_edge[t]),
            side_edges=sides,
            flow_targets=targets,
        ))
    return roles


def fan_histogram(vt):
    hist = {}
    for a, b in vt.fan_lengths():
        for x in (a, b):
            hist[x] = hist.get(x, 0) + 1
    return dict(sorted(hist.items()))

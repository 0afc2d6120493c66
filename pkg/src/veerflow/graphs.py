"""Dual graph, sectors, turn classification, and the flow graph.

The dual graph Gamma has one vertex per tetrahedron and one directed edge per
face class, crossing the face with the coorientation; every edge carries a
1-chain over face classes (the unit chain for Gamma edges).

Each edge class spans a sector: a disc whose boundary runs from the
tetrahedron below the edge to the one above it along the two fans.  Turns of
Gamma are classified from sector sides: the last turn of each side is
anti-branching (AB), every earlier turn is branching.

The flow graph Phi has one vertex per edge class and, for each tetrahedron,
edges from its bottom edge to its top edge and to the two side edges whose
veer is opposite that of the top edge.  Phi-edges carry the 1-chain of the
sector-side path from the source tetrahedron up to the top vertex of the
target's sector (dual position).
"""

from dataclasses import dataclass

from . import kernel
from .errors import InconsistentClassification, NotACycle, PositionError


@dataclass
class DEdge:
    eid: object
    tail: object
    head: object
    chain: tuple  # integer vector indexed by face class


class LabeledDigraph:
    """Directed multigraph with 1-chain labels and a map to Gamma-vertices."""

    def __init__(self, vertices, edges, iota=None):
        self.vertices = list(vertices)
        self.edges = {e.eid: e for e in edges}
        self.iota = iota if iota is not None else {v: v for v in self.vertices}
        self.out_edges = {v: [] for v in self.vertices}
        self.in_edges = {v: [] for v in self.vertices}
        for e in edges:
            self.out_edges[e.tail].append(e.eid)
            self.in_edges[e.head].append(e.eid)

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_edges(self):
        return len(self.edges)

    def edge(self, eid):
        return self.edges[eid]

    def subgraph(self, edge_ids):
        keep = [self.edges[eid] for eid in edge_ids]
        verts = sorted({e.tail for e in keep} | {e.head for e in keep}, key=str)
        return LabeledDigraph(verts, keep, {v: self.iota[v] for v in verts})

    def strongly_connected_components(self):
        """Tarjan; returns a list of vertex lists."""
        index = {}
        low = {}
        on_stack = set()
        stack = []
        comps = []
        counter = [0]

        def strongconnect(root):
            work = [(root, iter(self.out_edges[root]))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                advanced = False
                for eid in it:
                    w = self.edges[eid].head
                    if w not in index:
                        index[w] = low[w] = counter[0]
                        counter[0] += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.out_edges[w])))
                        advanced = True
                        break
                    elif w in on_stack:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)

        for v in self.vertices:
            if v not in index:
                strongconnect(v)
        return comps

    def recurrent_edges(self):
        """Edges lying on directed cycles: edges inside an SCC, or self-loops."""
        comp_of = {}
        for i, comp in enumerate(self.strongly_connected_components()):
            for v in comp:
                comp_of[v] = i
        counts = {}
        for e in self.edges.values():
            if comp_of[e.tail] == comp_of[e.head]:
                counts.setdefault(comp_of[e.tail], []).append(e.eid)
        keep = []
        for cid, eids in counts.items():
            verts = {v for v, c in comp_of.items() if c == cid}
            if len(verts) > 1 or any(self.edges[eid].tail == self.edges[eid].head for eid in eids):
                keep.extend(eids)
        return sorted(keep, key=str)


def _unit_chain(num_faces, fid, mult=1):
    v = [0] * num_faces
    v[fid] = mult
    return tuple(v)


def _sum_chain(num_faces, fids):
    v = [0] * num_faces
    for f in fids:
        v[f] += 1
    return tuple(v)


def dual_graph(vt):
    """Gamma: |V| = n, |E| = 2n, in/out degree 2 everywhere."""
    edges = []
    for fid in range(vt.num_faces):
        tail = vt.face_below[fid][0]
        head = vt.face_above[fid][0]
        edges.append(DEdge(fid, tail, head, _unit_chain(vt.num_faces, fid)))
    return LabeledDigraph(range(vt.n), edges)


@dataclass
class Sector:
    edge_class: int
    top_vertex: int  # tetrahedron with the edge at its bottom
    bottom_vertex: int
    sides: tuple  # two tuples of Gamma-edge ids (face ids), bottom to top
    side_tets: tuple  # vertex sequences, len(side)+1 each
    corners: tuple  # penultimate vertex of each side


def sectors(vt):
    out = []
    for cls in vt.classes:
        side_faces = tuple(tuple(s.faces) for s in cls.sides)
        side_tets = tuple(tuple(s.tets) for s in cls.sides)
        corners = tuple(s.tets[-2] for s in cls.sides)
        out.append(Sector(cls.index, cls.top_tet, cls.bottom_tet,
                          side_faces, side_tets, corners))
    return out


class TurnTable:
    """Classification of every two-edge turn of Gamma.

    Keys are (vertex, incoming face id, outgoing face id).  At each vertex
    every incoming edge has exactly one branching and one AB continuation.
    """

    def __init__(self, table, gamma):
        self.table = table
        self.gamma = gamma
        self.branch_successor = {}
        self.ab_successor = {}
        for (v, ein, eout), kind in table.items():
            if kind == "B":
                self.branch_successor[ein] = eout
            else:
                self.ab_successor[ein] = eout

    def classify(self, ein, eout):
        v = self.gamma.edges[ein].head
        return self.table[(v, ein, eout)]

    def items(self):
        return self.table.items()


def classify_turns(vt, gamma=None):
    gamma = gamma or dual_graph(vt)
    table = {}
    for cls in vt.classes:
        for side in cls.sides:
            faces = side.faces
            for j in range(len(faces) - 1):
                v = side.tets[j + 1]
                kind = "AB" if j == len(faces) - 2 else "B"
                key = (v, faces[j], faces[j + 1])
                if key in table and table[key] != kind:
                    raise InconsistentClassification(
                        f"turn {key} classified both {table[key]} and {kind}")
                table[key] = kind
    # completeness and the per-edge law
    for v in range(vt.n):
        for ein in gamma.in_edges[v]:
            kinds = []
            for eout in gamma.out_edges[v]:
                key = (v, ein, eout)
                if key not in table:
                    raise InconsistentClassification(f"turn {key} was never classified")
                kinds.append(table[key])
            if sorted(kinds) != ["AB", "B"]:
                raise InconsistentClassification(
                    f"vertex {v}, incoming edge {ein}: continuations {kinds}")
    return TurnTable(table, gamma)


def flow_graph(vt):
    """Phi with dual-position chains; out-degree 3 at every vertex."""
    roles = kernel.tet_roles(vt)
    edges = []
    for t in range(vt.n):
        role = roles[t]
        src = role.bottom_edge
        # top edge: the source tetrahedron is the bottom vertex of the target
        # sector; the chain follows side 0 (deterministic chirality).
        top_cls = vt.classes[role.top_edge]
        if top_cls.bottom_tet != t:
            raise PositionError(f"tetrahedron {t} is not below its own top edge class")
        chain = _sum_chain(vt.num_faces, top_cls.sides[0].faces)
        edges.append(DEdge(("phi", t, "top"), src, role.top_edge, chain))
        for k, (cid, pair) in enumerate(role.flow_targets):
            cls = vt.classes[cid]
            spot = None
            for side in cls.sides:
                for i, en in enumerate(side.entries):
                    if en.tet == t and en.edge == pair:
                        spot = (side, i)
            if spot is None:
                raise PositionError(
                    f"tetrahedron {t} not found in the fan of edge class {cid}")
            side, i = spot
            if i == len(side.entries) - 1:
                raise PositionError(
                    f"tetrahedron {t} is a corner vertex of sector {cid}")
            chain = _sum_chain(vt.num_faces, side.faces[i + 1:])
            edges.append(DEdge(("phi", t, f"side{k}"), src, cid, chain))
    iota = {cls.index: cls.top_tet for cls in vt.classes}
    return LabeledDigraph(range(vt.num_edge_classes), edges, iota)


def special_cycles(vt, turns=None):
    """All branch cycles and AB cycles, with AB length parities.

    The branching/AB successor maps are total functions on directed Gamma
    edges; the cycles of each functional graph are returned as edge-id lists
    rotated to start at the least edge id.
    """
    turns = turns or classify_turns(vt)

    def cycles_of(successor):
        seen = {}
        cycles = []
        for start in successor:
            if start in seen:
                continue
            path = []
            pos = {}
            e = start
            while e not in seen and e not in pos:
                pos[e] = len(path)
                path.append(e)
                e = successor[e]
            if e in pos:
                cyc = path[pos[e]:]
                k = cyc.index(min(cyc))
                cycles.append(tuple(cyc[k:] + cyc[:k]))
            for x in path:
                seen[x] = True
        return sorted(set(cycles))

    branch = cycles_of(turns.branch_successor)
    ab = cycles_of(turns.ab_successor)
    ab_with_parity = [(c, len(c) % 2) for c in ab]
    return branch, ab_with_parity


def ab_parity(vt, cycle, turns=None):
    """Number of AB turns around a directed Gamma-cycle, mod 2."""
    turns = turns or classify_turns(vt)
    gamma = turns.gamma
    cycle = list(cycle)
    if not cycle:
        raise NotACycle("empty cycle")
    for e, f in zip(cycle, cycle[1:] + [cycle[0]]):
        if gamma.edges[e].head != gamma.edges[f].tail:
            raise NotACycle(f"edges {e} -> {f} are not consecutive")
    count = 0
    for e, f in zip(cycle, cycle[1:] + [cycle[0]]):
        if turns.classify(e, f) == "AB":
            count += 1
    return count % 2

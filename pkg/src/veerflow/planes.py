"""Bounded patches of dynamic planes in the universal cover.

A patch is a 2-complex of sector copies glued edge to edge.  Growth is by
descending attachment only, which is canonical: the sector below a Gamma
edge copy is the sector of the bottom edge of the head's tetrahedron, glued
along the side whose final face matches the edge's face slot.  Cells merge
when they occupy the same vertex slot; the quarter-plane and unique-chord
invariants validate the construction on every fixture.

Phi-edges appear as chords of sector copies: one from each boundary vertex
other than the two corners, ending at the sector's top vertex.  Dual cycles
are resolved by searching the quotient chord graph of the unrolled plane of
the cycle for a period-one flow cycle, verified by exact class comparison;
widths count certified periodic anti-branching lines (one plus the number
of bi-infinite AB strips).
"""

from dataclasses import dataclass

from .errors import DepthExceeded, GluingConflict, NotACycle
from .graphs import ab_parity, classify_turns, dual_graph
from .homology import build_homology
from .veering_poly import edge_exponents

DEFAULT_PATCH_DEPTH = 12


@dataclass
class SectorCopy:
    cls: int
    top: int  # vertex copy id
    sides: list  # two lists of edge copy ids, bottom to top
    verts: list  # two vertex copy id sequences, len(side)+1 each


class PlanePatch:
    """Mutable complex of sector copies; cells are ints under union-find."""

    def __init__(self, vt):
        self.vt = vt
        self._parent = {}
        self._next = 0
        self.vert_tet = {}
        self.vert_in = {}  # vid -> {bottom-face slot: eid}
        self.vert_out = {}  # vid -> {top-face slot: eid}
        self.edge_face = {}  # eid -> face class id
        self.edge_ends = {}  # eid -> (tail vid, head vid)
        self.edge_slots = {}  # eid -> (tail slot, head slot)
        self.sectors = {}  # sid -> SectorCopy
        self.sector_below = {}  # vid -> sid
        self.incid = {}  # vid -> list of (sid, side, pos); sides share ends
        self.depth = {}  # sid -> attachment layer
        self._merge_queue = []

    # --- union-find ---------------------------------------------------

    def _new(self):
        self._next += 1
        self._parent[self._next] = self._next
        return self._next

    def find(self, x):
        p = self._parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    # --- constructors ---------------------------------------------------

    def new_vertex(self, tet):
        vid = self._new()
        self.vert_tet[vid] = tet
        self.vert_in[vid] = {}
        self.vert_out[vid] = {}
        self.incid[vid] = []
        return vid

    def new_edge(self, face, tail, head, tail_slot, head_slot):
        eid = self._new()
        self.edge_face[eid] = face
        self.edge_ends[eid] = (tail, head)
        self.edge_slots[eid] = (tail_slot, head_slot)
        self._register(eid)
        return eid

    def _register(self, eid):
        tail, head = self.edge_ends[eid]
        ts, hs = self.edge_slots[eid]
        existing = self.vert_out[tail].get(ts)
        if existing is not None and self.find(existing) != self.find(eid):
            self._merge_queue.append(("edge", existing, eid))
        else:
            self.vert_out[tail][ts] = eid
        existing = self.vert_in[head].get(hs)
        if existing is not None and self.find(existing) != self.find(eid):
            self._merge_queue.append(("edge", existing, eid))
        else:
            self.vert_in[head][hs] = eid

    # --- merging --------------------------------------------------------

    def _merge_edges(self, e1, e2):
        e1, e2 = self.find(e1), self.find(e2)
        if e1 == e2:
            return
        if self.edge_face[e1] != self.edge_face[e2]:
            raise GluingConflict("edge copies with different face classes collided")
        if self.edge_slots[e1] != self.edge_slots[e2]:
            raise GluingConflict("edge copies with different slots collided")
        self._parent[e2] = e1
        t1, h1 = self.edge_ends[e1]
        t2, h2 = self.edge_ends[e2]
        del self.edge_ends[e2], self.edge_face[e2], self.edge_slots[e2]
        self._merge_queue.append(("vertex", t1, t2))
        self._merge_queue.append(("vertex", h1, h2))

    def _merge_vertices(self, v1, v2):
        v1, v2 = self.find(v1), self.find(v2)
        if v1 == v2:
            return
        if self.vert_tet[v1] != self.vert_tet[v2]:
            raise GluingConflict("vertex copies with different tetrahedra collided")
        self._parent[v2] = v1
        for table in (self.vert_in, self.vert_out):
            for slot, eid in table[v2].items():
                other = table[v1].get(slot)
                if other is None:
                    table[v1][slot] = eid
                elif self.find(other) != self.find(eid):
                    self._merge_queue.append(("edge", other, eid))
            del table[v2]
        self.incid[v1].extend(self.incid.pop(v2))
        del self.vert_tet[v2]
        s2 = self.sector_below.pop(v2, None)
        if s2 is not None:
            s1 = self.sector_below.get(v1)
            if s1 is None:
                self.sector_below[v1] = s2
            elif self.find(s1) != self.find(s2):
                self._merge_queue.append(("sector", s1, s2))

    def _merge_sectors(self, s1, s2):
        s1, s2 = self.find(s1), self.find(s2)
        if s1 == s2:
            return
        a, b = self.sectors[s1], self.sectors[s2]
        if a.cls != b.cls:
            raise GluingConflict("sector copies with different classes collided")
        self._parent[s2] = s1
        self.depth[s1] = min(self.depth[s1], self.depth.pop(s2))
        del self.sectors[s2]
        self._merge_queue.append(("vertex", a.top, b.top))
        for sa, sb in zip(a.sides, b.sides):
            for ea, eb in zip(sa, sb):
                self._merge_queue.append(("edge", ea, eb))

    def _drain(self):
        while self._merge_queue:
            kind, x, y = self._merge_queue.pop()
            if kind == "edge":
                self._merge_edges(x, y)
            elif kind == "vertex":
                self._merge_vertices(x, y)
            else:
                self._merge_sectors(x, y)

    # --- canonical views --------------------------------------------------

    def vertices(self):
        return list(self.vert_tet)

    def edge_head(self, eid):
        return self.find(self.edge_ends[self.find(eid)][1])

    def edge_tail(self, eid):
        return self.find(self.edge_ends[self.find(eid)][0])

    def sector(self, sid):
        return self.sectors[self.find(sid)]

    # --- attachment -------------------------------------------------------

    def attach_below(self, vid, layer=1):
        """The sector copy whose top vertex is vid, creating it if needed."""
        vid = self.find(vid)
        if vid in self.sector_below:
            return self.find(self.sector_below[vid])
        vt = self.vt
        t = self.vert_tet[vid]
        cid = vt.edge_class_of(t, vt.bottom_edge[t])
        cls = vt.classes[cid]
        if cls.top_tet != t:
            raise GluingConflict("sector data inconsistent with the vertex tetrahedron")
        bottom = self.new_vertex(cls.bottom_tet)
        sid = self._new()
        sides = []
        verts = []
        for s, side in enumerate(cls.sides):
            chain = [bottom]
            for en in side.entries:
                chain.append(self.new_vertex(en.tet))
            chain.append(vid)
            eids = []
            for i, fid in enumerate(side.faces):
                ts = side.exit_slots[i][1]
                hs = side.enter_slots[i][1]
                eids.append(self.new_edge(fid, chain[i], chain[i + 1], ts, hs))
            sides.append(eids)
            verts.append(chain)
            for pos, w in enumerate(chain):
                if s == 1 and (pos == 0 or pos == len(chain) - 1):
                    continue  # bottom and top are shared with side 0
                self.incid[self.find(w)].append((sid, s, pos))
        self.sectors[sid] = SectorCopy(cid, vid, sides, verts)
        self.depth[sid] = layer
        self.sector_below[vid] = sid
        self._drain()
        return self.find(sid)

    def grow_descending(self, seeds, max_layer):
        """Attach below-sectors through non-final boundary edges, by layers."""
        frontier = list(seeds)
        for layer in range(2, max_layer + 1):
            nxt = []
            for sid in frontier:
                sec = self.sector(sid)
                for side in sec.sides:
                    for eid in side[:-1]:
                        head = self.edge_head(eid)
                        if self.find(head) in self.sector_below:
                            continue
                        nxt.append(self.attach_below(head, layer))
            frontier = [s for s in {self.find(s) for s in nxt}]
            if not frontier:
                break
        return self

    # --- incidence and chords ----------------------------------------------

    def sector_incidences(self, vid):
        """(sid, role) pairs; role in 'top', 'bottom', ('fan', side, pos),
        ('corner', side).  Corner = last fan position of a side."""
        vid = self.find(vid)
        out = []
        seen = set()
        for sid, s, pos in self.incid[vid]:
            sid = self.find(sid)
            if sid not in self.sectors:
                continue
            if (sid, s, pos) in seen:
                continue
            seen.add((sid, s, pos))
            chain = self.sectors[sid].verts[s]
            if pos == 0:
                role = "bottom"
            elif pos == len(chain) - 1:
                role = "top"
            elif pos == len(chain) - 2:
                role = ("corner", s)
            else:
                role = ("fan", s, pos)
            out.append((sid, role))
        return out

    def out_chords(self, vid):
        """Phi-chords leaving vid: (sid, role, target vertex) per sector
        where vid is a non-corner, non-top boundary vertex."""
        chords = []
        for sid, role in self.sector_incidences(vid):
            if role == "top" or (isinstance(role, tuple) and role[0] == "corner"):
                continue
            sec = self.sectors[sid]
            chords.append((sid, role, self.find(sec.top)))
        return chords

    def certified(self, vid):
        """True when the full plane star of vid is present in the patch.

        Around a plane vertex the present sectors and edges alternate into a
        closed disc, so the wedge count equals the edge count; every plane
        vertex has both in-edges (the top of the sector below it), and one
        or two out-edges (anti-branching lines have collapsed upper stars).
        """
        vid = self.find(vid)
        if len(self.vert_in[vid]) != 2:
            return False
        degree = 2 + len(self.vert_out[vid])
        return len(self.sector_incidences(vid)) == degree

    def unique_chord(self, vid):
        """The single outgoing Phi-chord at a certified vertex."""
        vid = self.find(vid)
        if not self.certified(vid):
            raise DepthExceeded(f"vertex {vid} is not certified; grow the patch")
        chords = self.out_chords(vid)
        if len(chords) != 1:
            raise GluingConflict(
                f"certified vertex {vid} has {len(chords)} outgoing chords, expected 1")
        return chords[0]

    def certified_vertices(self):
        return [v for v in self.vert_tet if self.certified(v)]


def descending_patch(vt, seed_class, depth=DEFAULT_PATCH_DEPTH):
    """The set of sectors reachable from the seed sector by descending paths
    through at most `depth` sectors."""
    patch = PlanePatch(vt)
    cls = vt.classes[seed_class]
    top = patch.new_vertex(cls.top_tet)
    seed = patch.attach_below(top, layer=1)
    patch.grow_descending([seed], depth)
    patch.seed_sector = patch.find(seed)
    patch.seed_top = patch.find(top)
    return patch


def boundary_branch_rays(vt, patch, turns=None):
    """Walk the two branch rays descending from the seed's top vertex.

    Returns the two vertex lists; raises GluingConflict if a predecessor is
    missing before the patch depth is exhausted.
    """
    turns = turns or classify_turns(vt)
    # branching predecessor of an edge: the unique in-edge at its tail
    # forming a branching turn with it
    rays = []
    top = patch.find(patch.seed_top)
    for eid in list(patch.vert_in[top].values()):
        ray = [top]
        cur = patch.find(eid)
        for _ in range(4 * len(patch.sectors)):
            tail = patch.edge_tail(cur)
            ray.append(tail)
            pred = None
            for cand in patch.vert_in[tail].values():
                if turns.classify(patch.edge_face[patch.find(cand)],
                                  patch.edge_face[cur]) == "B":
                    pred = patch.find(cand)
            if pred is None:
                break
            cur = pred
        rays.append(ray)
    return rays


# ---------------------------------------------------------------------------
# chains of stacked sectors


def chain_links(vt, patch):
    """Directed chain links (sid, side) -> (sid2, side2) within the patch.

    A link exists when the lower branch segment of the given side is a
    single edge; the next sector hangs below that edge's head (the corner),
    and the chain continues on its side not ending with the shared edge.
    """
    links = {}
    for sid in list(patch.sectors):
        sid = patch.find(sid)
        sec = patch.sectors.get(sid)
        if sec is None:
            continue
        for s in (0, 1):
            side = sec.sides[s]
            if len(side) != 2:
                continue  # lower segment longer than one edge
            e = patch.find(side[0])
            corner = patch.edge_head(e)
            nxt = patch.sector_below.get(patch.find(corner))
            if nxt is None:
                continue
            nxt = patch.find(nxt)
            nsec = patch.sectors[nxt]
            target_side = None
            for s2 in (0, 1):
                if patch.find(nsec.sides[s2][-1]) == e:
                    target_side = 1 - s2
            if target_side is None:
                raise GluingConflict("chain link edge is not final in the lower sector")
            links[(sid, s)] = (nxt, target_side)
    return links


def chains(vt, patch):
    """Maximal chains of stacked sectors, as lists of sector ids."""
    links = chain_links(vt, patch)
    has_pred = set(links.values())
    out = []
    for start in links:
        if start in has_pred:
            continue
        chain = [start[0]]
        cur = start
        while cur in links:
            cur = links[cur]
            chain.append(cur[0])
        out.append(chain)
    # sectors with no links at all form chains of length 1
    in_chain = {sid for ch in out for sid in ch}
    for sid in patch.sectors:
        if patch.find(sid) not in in_chain:
            out.append([patch.find(sid)])
    return out


# ---------------------------------------------------------------------------
# unrolled plane of a dual cycle


class UnrolledPlane:
    """Patch around m unrolled periods of a dual cycle, with the translation."""

    def __init__(self, vt, cycle, periods, depth, gamma=None):
        self.vt = vt
        self.cycle = list(cycle)
        self.periods = periods
        gamma = gamma or dual_graph(vt)
        self.gamma = gamma
        p = len(cycle)
        for e, f in zip(cycle, cycle[1:] + [cycle[0]]):
            if gamma.edges[e].head != gamma.edges[f].tail:
                raise NotACycle(f"edges {e} -> {f} are not consecutive")
        patch = PlanePatch(vt)
        self.patch = patch
        verts = []
        for i in range(periods * p + 1):
            fid = cycle[i % p]
            verts.append(patch.new_vertex(gamma.edges[fid].tail))
        for i in range(periods * p):
            fid = cycle[i % p]
            tail_slot = vt.face_below[fid][1]
            head_slot = vt.face_above[fid][1]
            patch.new_edge(fid, verts[i], verts[i + 1], tail_slot, head_slot)
        patch._drain()
        self.line_verts = verts
        seeds = []
        for v in verts:
            seeds.append(patch.attach_below(v, layer=1))
        patch.grow_descending(sorted({patch.find(s) for s in seeds}), depth)

    def translation(self):
        """Partial map tau advancing cells by one period, extended from the
        seed line through matched sectors."""
        patch = self.patch
        p = len(self.cycle)
        tau = {}
        queue = []
        for i in range(len(self.line_verts) - p):
            a = patch.find(self.line_verts[i])
            b = patch.find(self.line_verts[i + p])
            if tau.get(a, b) != b:
                continue
            if a not in tau:
                tau[a] = b
                queue.append(a)
        while queue:
            a = queue.pop()
            b = tau[a]
            sa = patch.sector_below.get(a)
            sb = patch.sector_below.get(b)
            if sa is None or sb is None:
                continue
            sa, sb = patch.find(sa), patch.find(sb)
            seca, secb = patch.sectors[sa], patch.sectors[sb]
            if seca.cls != secb.cls:
                raise GluingConflict("translation matched sectors of different classes")
            for ca, cb in zip(seca.verts, secb.verts):
                for va, vb in zip(ca, cb):
                    va, vb = patch.find(va), patch.find(vb)
                    if va not in tau:
                        tau[va] = vb
                        queue.append(va)
                    elif tau[va] != vb:
                        raise GluingConflict("translation is inconsistent")
        return tau


def _chord_graph(patch):
    """Out-chords per canonical vertex id."""
    graph = {}
    for vid in patch.vertices():
        vid = patch.find(vid)
        if vid in graph:
            continue
        graph[vid] = patch.out_chords(vid)
    return graph

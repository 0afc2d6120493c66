"""Perron polynomials of labeled digraphs and the veering polynomial.

perron computes det(I - A) where A is the adjacency matrix whose (a, b)
entry is the sum, over edges a -> b, of the monomial of the edge's homology
class.  Individual edge chains are paths, not cycles, so classes are taken
after tree gauging: conjugating each chain by spanning-tree paths to the
base vertex makes every label a 1-cycle while leaving cycle classes
untouched (the determinant only sees cycles).

clique_oracle evaluates the same polynomial by explicit enumeration of
vertex-disjoint families of simple directed cycles: 1 plus the sum over
nonempty families of (-1)^(number of components) times the class monomial.
The two must agree exactly; this is the module's central cross-check.
"""

from .errors import TooLarge
from .graphs import dual_graph, flow_graph
from .homology import build_homology
from .polyring import LaurentPoly, det

DEFAULT_CYCLE_CAP = 200000


def _gauge_paths(model, vt):
    """Face chains g(w) with boundary w - base, one per tetrahedron."""
    base = 0
    g = {base: [0] * model.num_faces}
    # undirected BFS over the dual graph, read off the d1 columns
    adjacency = {t: [] for t in range(model.num_tets)}
    for fid in range(model.num_faces):
        above = below = None
        for t in range(model.num_tets):
            if model.d1[t][fid] == 1:
                above = t
            elif model.d1[t][fid] == -1:
                below = t
        if above is None or below is None:
            # face with equal endpoints (loop edge): useless for the tree
            continue
        adjacency[below].append((above, fid, 1))
        adjacency[above].append((below, fid, -1))
    queue = [base]
    while queue:
        v = queue.pop(0)
        for w, fid, sgn in adjacency[v]:
            if w in g:
                continue
            chain = list(g[v])
            chain[fid] += sgn
            g[w] = chain
            queue.append(w)
    if len(g) != model.num_tets:
        raise TooLarge("dual graph is disconnected; cannot gauge")
    return g


def edge_exponents(graph, model, vt=None):
    """Homology class in Z^betti of every edge, after tree gauging."""
    gauges = _gauge_paths(model, vt)
    exps = {}
    for eid, e in graph.edges.items():
        tail_g = gauges[graph.iota[e.tail]]
        head_g = gauges[graph.iota[e.head]]
        chain = [t + c - h for t, c, h in zip(tail_g, e.chain, head_g)]
        exps[eid] = model.class_of_chain(chain)
    return exps


def perron(graph, exps, nvars):
    """det(I - A) in Z[Z^nvars]; constant term 1."""
    verts = list(graph.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    if n == 0:
        return LaurentPoly.one(nvars)
    mat = [[LaurentPoly.zero(nvars) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        mat[i][i] = mat[i][i] + LaurentPoly.one(nvars)
    for e in graph.edges.values():
        i, j = idx[e.tail], idx[e.head]
        mat[i][j] = mat[i][j] - LaurentPoly.monomial(exps[e.eid])
    return det(mat, nvars=nvars)


def simple_cycles(graph, cap=DEFAULT_CYCLE_CAP):
    """All simple directed cycles as edge-id tuples (vertices distinct).

    Cycles are enumerated by anchoring at their least vertex; parallel edges
    give distinct cycles.  Raises TooLarge past the cap.
    """
    order = {v: i for i, v in enumerate(graph.vertices)}
    cycles = []
    for root in graph.vertices:
        stack = [(root, [])]
        while stack:
            v, path = stack.pop()
            for eid in graph.out_edges[v]:
                w = graph.edges[eid].head
                if order[w] < order[root]:
                    continue
                if w == root:
                    cycles.append(tuple(path + [eid]))
                    if len(cycles) > cap:
                        raise TooLarge(f"more than {cap} simple cycles")
                elif all(graph.edges[p].head != w for p in path):
                    stack.append((w, path + [eid]))
    return cycles


def cycle_class(graph, exps, cycle):
    nvars = len(next(iter(exps.values()))) if exps else 0
    total = [0] * nvars
    for eid in cycle:
        for i, x in enumerate(exps[eid]):
            total[i] += x
    return tuple(total)


def multicycles(graph, cap=DEFAULT_CYCLE_CAP):
    """Vertex-disjoint nonempty families of simple cycles.

    Yields (frozenset of cycle indices, combined vertex set) lazily over an
    index-ordered search tree.
    """
    cycles = simple_cycles(graph, cap)
    vsets = []
    for cyc in cycles:
        verts = frozenset(graph.edges[eid].tail for eid in cyc)
        vsets.append(verts)
    out = []

    def extend(start, chosen, used):
        for i in range(start, len(cycles)):
            if vsets[i] & used:
                continue
            family = chosen + [i]
            out.append(family)
            if len(out) > cap:
                raise TooLarge(f"more than {cap} multicycles")
            extend(i + 1, family, used | vsets[i])

    extend(0, [], frozenset())
    return cycles, out


def clique_oracle(graph, exps, nvars, cap=DEFAULT_CYCLE_CAP, with_witnesses=False):
    """1 + sum over simple multicycles of (-1)^components * class monomial."""
    cycles, families = multicycles(graph, cap)
    poly = LaurentPoly.one(nvars)
    witnesses = {tuple([0] * nvars): ()}
    for family in families:
        exp = [0] * nvars
        edges = []
        for i in family:
            edges.extend(cycles[i])
            for k, x in enumerate(cycle_class(graph, exps, cycles[i])):
                exp[k] += x
        exp = tuple(exp)
        poly = poly + LaurentPoly.monomial(exp, (-1) ** len(family))
        witnesses.setdefault(exp, tuple(edges))
    if with_witnesses:
        return poly, witnesses
    return poly


def gamma_polynomial(vt, model=None):
    """Perron polynomial of the dual graph, classes in Z^betti."""
    model = model or build_homology(vt)
    g = dual_graph(vt)
    exps = edge_exponents(g, model, vt)
    return perron(g, exps, model.betti)


def veering_polynomial(vt, model=None, normalized=True):
    """V = image of the flow graph's Perron polynomial in Z[H1/torsion].

    The raw det(I - A) has constant term 1; the canonical unit normalization
    moves the graded-lex-least term to +1 at exponent zero.
    """
    model = model or build_homology(vt)
    phi = flow_graph(vt)
    exps = edge_exponents(phi, model, vt)
    p = perron(phi, exps, model.betti)
    return p.unit_normalized() if normalized else p

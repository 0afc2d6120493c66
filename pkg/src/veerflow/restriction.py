"""Cutting the flow graph along a carried class.

Given a cohomology class eta with a nonnegative face-weight representative
(a carried representative; the module does not search for one), every
flow-graph edge gets the nonnegative weight pairing eta with its dual-
position chain.  The restricted flow graph keeps the weight-zero edges that
lie on directed cycles; a directed cycle survives exactly when eta vanishes
on it.

The Perron polynomial of the restriction, pushed to Z^b, must equal the
polynomial obtained from the unrestricted one by deleting every term whose
class pairs nontrivially with eta; the module computes both and checks the
equality exactly, along with the product decomposition over components.
"""

from dataclasses import dataclass

from .errors import MismatchError, NegativeWeight
from .graphs import flow_graph
from .homology import build_homology
from .polyring import LaurentPoly
from .veering_poly import edge_exponents, perron


def edge_weights(phi, model, eta):
    """Nonnegative weight of each flow-graph edge under eta.

    eta must be a matching cocycle with nonnegative face weights; the weight
    of a directed cycle is then the pairing of eta with the cycle's class.
    """
    model.check_cocycle(eta)
    if any(w < 0 for w in eta):
        raise NegativeWeight("eta needs a nonnegative (carried) face-weight representative")
    return {eid: model.pair(eta, e.chain) for eid, e in phi.edges.items()}


def restricted_flow_graph(phi, weights):
    """(subgraph, components): weight-zero edges lying on directed cycles.

    Components are the strongly connected pieces; the restricted graph is
    their disjoint union (connecting edges lie on no cycle).
    """
    zero_edges = [eid for eid, w in weights.items() if w == 0]
    sub = phi.subgraph(zero_edges)
    recurrent = sub.subgraph(sub.recurrent_edges())
    comp_map = {}
    for i, comp in enumerate(recurrent.strongly_connected_components()):
        for v in comp:
            comp_map[v] = i
    buckets = {}
    for eid, e in recurrent.edges.items():
        buckets.setdefault(comp_map[e.tail], []).append(eid)
    components = [recurrent.subgraph(sorted(eids, key=str)) for _, eids in sorted(buckets.items())]
    return recurrent, components


@dataclass
class RestrictionResult:
    restricted: object  # the recurrent weight-zero subgraph of Phi
    components: list
    perron_restricted: LaurentPoly  # raw, constant term 1
    deletion: LaurentPoly  # raw V with eta-positive terms removed
    component_polys: list
    normalized: LaurentPoly


def restricted_polynomials(vt, eta, model=None, phi=None):
    """P of the cut flow graph versus term deletion in V; exact equality.

    Both polynomials are computed un-normalized (constant term 1) in the
    grading of H1(M)/torsion, then compared exactly; the canonical
    unit-normalized representative is also returned.
    """
    model = model or build_homology(vt)
    phi = phi or flow_graph(vt)
    weights = edge_weights(phi, model, eta)
    restricted, components = restricted_flow_graph(phi, weights)
    exps = edge_exponents(phi, model, vt)
    p_full = perron(phi, exps, model.betti)
    p_restricted = perron(restricted, {e: exps[e] for e in restricted.edges}, model.betti)
    functional = model.functional(eta)

    def eta_null(exp):
        return sum(f * g for f, g in zip(functional, exp)) == 0

    deleted = p_full.filter_terms(eta_null)
    if p_restricted != deleted:
        raise MismatchError(
            "restricted Perron polynomial differs from term deletion; "
            "this indicates a chain/gauge bug")
    component_polys = [perron(c, {e: exps[e] for e in c.edges}, model.betti)
                       for c in components]
    if len(component_polys) > 1:
        product = LaurentPoly.one(model.betti)
        for q in component_polys:
            product = product * q
        if product != p_restricted:
            raise MismatchError("product over components does not equal the restricted polynomial")
    return RestrictionResult(
        restricted=restricted,
        components=components,
        perron_restricted=p_restricted,
        deletion=deleted,
        component_polys=component_polys,
        normalized=p_restricted.unit_normalized(),
    )

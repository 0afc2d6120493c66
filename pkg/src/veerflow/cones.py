"""The cone of homology directions and its dual, with exact certificates.

Generators are classes of directed cycles of the dual graph (with witness
chains), or the support of the flow graph's Perron polynomial when cycle
enumeration is too large; either generates the same cone.  A cohomology
class, given as a face-weight cocycle, is Interior/Boundary/Outside the dual
cone according to the signs of its pairings with all generators.

Layeredness (existence of a fully carried surface, equivalently of a class
strictly positive on the cone) is decided by an exact rational LP; it
returns an integral certificate cocycle, or a nonnegative combination of
generators whose total class vanishes as the dual obstruction.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import NotInCone, TooLarge
from .graphs import dual_graph, flow_graph
from .homology import build_homology
from .veering_poly import clique_oracle, cycle_class, edge_exponents, simple_cycles

SIMPLE_CYCLE_CAP = 10000


@dataclass
class Generator:
    cls: tuple  # class in Z^betti
    witness: tuple  # face chain of an actual cycle/multicycle
    source: str  # 'gamma' or 'phi'


@dataclass
class ConeModel:
    betti: int
    generators: list  # Generator, deduped by class
    multiplicity: dict  # class -> number of witnesses found


def _dedupe(raw):
    gens = []
    mult = {}
    seen = {}
    for cls, witness, source in raw:
        mult[cls] = mult.get(cls, 0) + 1
        if cls not in seen:
            seen[cls] = True
            gens.append(Generator(cls, tuple(witness), source))
    return gens, mult


def cone_generators(vt, model=None, prefer="gamma", cap=SIMPLE_CYCLE_CAP):
    """Generators of the cone of homology directions, with witnesses.

    prefer='gamma': classes of all simple dual-graph cycles (when there are
    at most cap of them); otherwise, and on overflow, the nonzero support of
    the flow graph's Perron polynomial, whose positive span is the same cone.
    """
    model = model or build_homology(vt)
    raw = []
    if prefer == "gamma":
        g = dual_graph(vt)
        try:
            cycles = simple_cycles(g, cap)
        except TooLarge:
            cycles = None
        if cycles is not None:
            exps = edge_exponents(g, model, vt)
            for cyc in cycles:
                chain = [0] * model.num_faces
                for eid in cyc:
                    for i, c in enumerate(g.edges[eid].chain):
                        chain[i] += c
                raw.append((cycle_class(g, exps, cyc), chain, "gamma"))
    if not raw:
        phi = flow_graph(vt)
        exps = edge_exponents(phi, model, vt)
        poly, witnesses = clique_oracle(phi, exps, model.betti, with_witnesses=True)
        zero = tuple([0] * model.betti)
        for exp in poly.support():
            if exp == zero:
                continue
            chain = [0] * model.num_faces
            for eid in witnesses[exp]:
                for i, c in enumerate(phi.edges[eid].chain):
                    chain[i] += c
            raw.append((exp, chain, "phi"))
    gens, mult = _dedupe(raw)
    return ConeModel(model.betti, gens, mult)


def in_dual_cone(cone, model, weights):
    """(verdict, certificate): Interior, Boundary, or Outside.

    Interior: strictly positive pairing with every generator; Boundary:
    nonnegative with at least one zero (the certificate lists the vanishing
    generators); Outside: the certificate is a violated generator.
    """
    functional = model.functional(weights)
    zeros = []
    for i, gen in enumerate(cone.generators):
        val = sum(f * g for f, g in zip(functional, gen.cls))
        if val < 0:
            return "Outside", {"generator": i, "class": list(gen.cls), "pairing": val}
        if val == 0:
            zeros.append(i)
    if zeros:
        return "Boundary", {"vanishing": zeros}
    if not cone.generators:
        return "Boundary", {"vanishing": []}
    return "Interior", None


def is_layered(vt, cone=None, model=None):
    """Exact test for a class strictly positive on every homology direction.

    Returns (True, certificate cocycle) with integral face weights pairing
    at least 1 with every generator, or (False, obstruction) where the
    obstruction is a nonnegative integer combination of generators whose
    total class is zero.
    """
    model = model or build_homology(vt)
    cone = cone or cone_generators(vt, model)
    F = model.num_faces
    matching_rows = []
    for j in range(len(model.d2[0]) if model.d2 else 0):
        matching_rows.append([model.d2[i][j] for i in range(F)])
    gen_rows = [list(gen.witness) for gen in cone.generators]
    x = lp.solve_inequalities(gen_rows, [1] * len(gen_rows), matching_rows,
                              [0] * len(matching_rows), F)
    if x is not None:
        weights, _ = lp.integerize(x)
        model.check_cocycle(weights)
        functional = model.functional(weights)
        for gen in cone.generators:
            if sum(f * g for f, g in zip(functional, gen.cls)) < 1:
                raise ArithmeticError("layeredness certificate failed verification")
        return True, weights
    # Farkas alternative: w >= 0, sum w = 1, with sum_k w_k chain_k in im(d2)
    k = len(cone.generators)
    s = len(model.d2[0]) if model.d2 else 0
    eq_rows = []
    rhs = []
    for i in range(F):
        row = [Fraction(cone.generators[j].witness[i]) for j in range(k)]
        row += [Fraction(model.d2[i][j]) for j in range(s)]
        row += [Fraction(-model.d2[i][j]) for j in range(s)]
        eq_rows.append(row)
        rhs.append(0)
    eq_rows.append([Fraction(1)] * k + [Fraction(0)] * (2 * s))
    rhs.append(1)
    y = lp.feasible_point(eq_rows, rhs, k + 2 * s)
    if y is None:
        raise ArithmeticError("neither the LP nor its Farkas alternative is feasible")
    w, _ = lp.integerize(y[:k])
    total = [0] * model.betti
    for wi, gen in zip(w, cone.generators):
        for i, c in enumerate(gen.cls):
            total[i] += wi * c
    if any(total) or all(v == 0 for v in w) or any(v < 0 for v in w):
        raise ArithmeticError("layeredness obstruction failed verification")
    return False, {"combination": w, "classes": [list(g.cls) for g in cone.generators]}


def face_of(cone, model, weights):
    """Generators annihilated by a class in the dual cone.

    The result depends only on the face of the dual cone containing the
    class in its relative interior.  Raises NotInCone for outside classes.
    """
    verdict, cert = in_dual_cone(cone, model, weights)
    if verdict == "Outside":
        raise NotInCone(f"class pairs negatively with generator {cert['generator']}")
    if verdict == "Interior":
        return []
    return cert["vanishing"]


def cocycle_for_functional(model, functional, nonnegative=True):
    """An integral matching cocycle inducing a positive multiple of the
    given functional on Z^betti.

    With nonnegative=True the representative has nonnegative face weights (a
    carried representative); such a representative exists precisely when the
    class lies in the carried cone.  Returns (weights, multiplier) or None.
    """
    F = model.num_faces
    eq_rows = []
    rhs = []
    for j in range(len(model.d2[0]) if model.d2 else 0):
        eq_rows.append([model.d2[i][j] for i in range(F)])
        rhs.append(0)
    for k in range(model.betti):
        eq_rows.append([model.section[i][k] for i in range(F)])
        rhs.append(functional[k])
    if nonnegative:
        ge_rows = [[1 if i == j else 0 for i in range(F)] for j in range(F)]
        x = lp.solve_inequalities(ge_rows, [0] * F, eq_rows, rhs, F)
    else:
        x = lp.solve_inequalities([], [], eq_rows, rhs, F)
    if x is None:
        return None
    weights, mult = lp.integerize(x)
    model.check_cocycle(weights)
    got = model.functional(weights)
    if tuple(got) != tuple(mult * f for f in functional):
        raise ArithmeticError("cocycle reconstruction failed verification")
    return weights, mult


def span_check(cone, target_cls):
    """Is target_cls a nonnegative rational combination of the generators?"""
    k = len(cone.generators)
    eq_rows = []
    rhs = []
    for i in range(cone.betti):
        eq_rows.append([Fraction(cone.generators[j].cls[i]) for j in range(k)])
        rhs.append(target_cls[i])
    return lp.feasible_point(eq_rows, rhs, k) is not None

"""Growth rates from polynomial specializations, with a counting oracle.

A specialization substitutes u^(xi . g) for each class g; the growth rate of
the eta-restricted flow with respect to xi is the reciprocal of the smallest
positive root, found by exact Sturm isolation over rationals followed by
bisection.  When no root lies in (0, 1] the rate is 1 (finitely many or
cyclically-generated orbits grow subexponentially).

The independent oracle counts directed cycles of the graph combinatorially.
Counting convention (fixed here and used consistently): walks[w] is the
number of closed walks of total weight exactly w, counted with a marked
starting edge position (transfer-matrix trace); primitive[w] counts
primitive directed cycles (cyclic edge sequences up to rotation, not proper
powers) of weight w, recovered by the necklace relation
m * P(m, w) = T(m, w) - sum over proper divisors; cumulative[w] sums
primitive counts up to w.  The growth estimate used in tests is
walks[L] ** (1/L), whose finite-L bias decays with the spectral gap, unlike
cumulative counts whose bias decays only like log(L)/L.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPositive, TooLarge
from .graphs import flow_graph
from .homology import build_homology
from .restriction import edge_weights, restricted_flow_graph
from .veering_poly import edge_exponents, perron

ROOT_TOL = Fraction(1, 10 ** 12)


@dataclass
class Specialization:
    """One-variable integer Laurent polynomial: coeffs maps exponent to
    coefficient; exponents are exact pairings of the class with xi."""

    coeffs: dict

    def __call__(self, x):
        return sum(c * Fraction(x) ** e for e, c in self.coeffs.items())

    def shifted_coeff_list(self):
        """(coeff list, shift): coefficient i is the u^(i+shift) coefficient."""
        if not self.coeffs:
            return [], 0
        lo = min(self.coeffs)
        hi = max(self.coeffs)
        out = [0] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            out[e - lo] = c
        return out, lo

    def substituted(self, n):
        """u -> u^n, i.e. the specialization at n*xi."""
        return Specialization({e * n: c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        return self.coeffs == other.coeffs


def specialize(poly, functional):
    """P^xi(u): exponent of each term is the pairing of xi with its class."""
    coeffs = {}
    for exp, c in poly.terms.items():
        e = sum(f * g for f, g in zip(functional, exp))
        coeffs[e] = coeffs.get(e, 0) + c
    return Specialization({e: c for e, c in coeffs.items() if c})


# ---------------------------------------------------------------------------
# Sturm isolation


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _normalize(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    g = 0
    for c in coeffs:
        g = math.gcd(g, c.numerator if isinstance(c, Fraction) else c)
    denom = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    out = [int(c * denom) for c in coeffs]
    g = 0
    for c in out:
        g = math.gcd(g, c)
    return [c // g for c in out] if g > 1 else out


def _derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _rem(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i in range(len(b)):
            a[shift + i] -= q * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _sturm_chain(coeffs):
    chain = [_normalize(list(coeffs))]
    d = _normalize(_derivative(chain[0]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _normalize([-c for c in _rem(chain[-2], chain[-1])])
        if not r:
            break
        chain.append(r)
    return chain


def _variations(chain, x):
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _divide_out_root(coeffs, root):
    """Exact division by (q*u - p) for the rational root p/q."""
    p, q = root.numerator, root.denominator
    a = [Fraction(c) for c in coeffs]
    b = [Fraction(-p), Fraction(q)]
    quo = [Fraction(0)] * (len(a) - 1)
    for i in range(len(a) - 1, 0, -1):
        q2 = a[i] / b[1]
        quo[i - 1] = q2
        a[i] -= q2 * b[1]
        a[i - 1] -= q2 * b[0]
    if any(a):
        raise ArithmeticError("claimed root does not divide the polynomial")
    return _normalize(quo)


def smallest_positive_root(spec, tol=ROOT_TOL):
    """Smallest root in (0, 1], to within tol, or None.

    The polynomial is shifted so u=0 is not a root (the shift does not move
    roots in (0, infinity)); roots exactly at rational bisection points
    (including 1) are divided out exactly, so Sturm counts always run
    between non-roots.
    """
    coeffs, _ = spec.shifted_coeff_list()
    coeffs = _normalize(coeffs)
    if len(coeffs) <= 1:
        return None
    exact_roots = []
    one = Fraction(1)
    while _poly_eval(coeffs, one) == 0:
        exact_roots.append(one)
        coeffs = _divide_out_root(coeffs, one)
    lo, hi = Fraction(0), Fraction(1)
    chain = _sturm_chain(coeffs)
    if _variations(chain, lo) - _variations(chain, hi) == 0:
        if exact_roots:
            return 1.0
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _poly_eval(coeffs, mid) == 0:
            exact_roots.append(mid)
            coeffs = _divide_out_root(coeffs, mid)
            chain = _sturm_chain(coeffs)
            if _variations(chain, lo) - _variations(chain, mid) == 0:
                return float(mid)
            hi = mid
            continue
        if _variations(chain, lo) - _variations(chain, mid) > 0:
            hi = mid
        else:
            lo = mid
    return float((lo + hi) / 2)


# ---------------------------------------------------------------------------
# positivity of a class on directed cycles


def strict_positivity_witness(graph, weights):
    """None if every directed cycle has positive total weight, else a cycle.

    Scaled Bellman-Ford: with w'(e) = (V+1) * w(e) - 1 a directed cycle has
    negative w'-weight exactly when its w-weight is nonpositive.
    """
    verts = list(graph.vertices)
    V = len(verts)
    if V == 0:
        return None
    scale = V + 1
    dist = {v: 0 for v in verts}
    pred = {v: None for v in verts}
    updated = None
    for _ in range(V + 1):
        updated = None
        for eid, e in graph.edges.items():
            w = scale * weights[eid] - 1
            if dist[e.tail] + w < dist[e.head]:
                dist[e.head] = dist[e.tail] + w
                pred[e.head] = eid
                updated = e.head
        if updated is None:
            return None
    # walk predecessors V times to land on a cycle, then extract it
    v = updated
    for _ in range(V):
        v = graph.edges[pred[v]].tail
    cycle = []
    start = v
    while True:
        eid = pred[v]
        cycle.append(eid)
        v = graph.edges[eid].tail
        if v == start:
            break
    cycle.reverse()
    total = sum(weights[eid] for eid in cycle)
    if total > 0:
        raise ArithmeticError("positivity witness extraction failed")
    return cycle


# ---------------------------------------------------------------------------
# growth rates


@dataclass
class GrowthResult:
    rate: float
    root: float  # smallest positive root of the specialization, or None
    per_component: list
    specialization: Specialization


def graph_growth_rate(graph, exps, functional, components=None, tol=ROOT_TOL):
    """Growth rate of directed cycles of a labeled graph, counted by xi.

    exps are gauged homology classes per edge; functional is the pairing
    induced by xi.  Raises NotPositive (with a witness cycle) unless xi is
    strictly positive on every directed cycle.
    """
    weights = {eid: sum(f * g for f, g in zip(functional, exps[eid]))
               for eid in graph.edges}
    recurrent = graph.subgraph(graph.recurrent_edges())
    witness = strict_positivity_witness(recurrent, {e: weights[e] for e in recurrent.edges})
    if witness is not None:
        raise NotPositive("class is not strictly positive on directed cycles", witness=witness)
    nvars = len(functional)
    spec = specialize(perron(graph, exps, nvars), functional)
    root = smallest_positive_root(spec, tol)
    rate = 1.0 if root is None else 1.0 / root
    per_component = []
    if components is not None:
        for comp in components:
            cspec = specialize(perron(comp, {e: exps[e] for e in comp.edges}, nvars), functional)
            croot = smallest_positive_root(cspec, tol)
            per_component.append(1.0 if croot is None else 1.0 / croot)
    return GrowthResult(rate=rate, root=root, per_component=per_component, specialization=spec)


def growth_rate(vt, eta, xi, model=None, phi=None, tol=ROOT_TOL):
    """Growth rate of the (eta-restricted) flow graph with respect to xi.

    eta None means no cut.  Also reports per-component rates; the overall
    rate is their maximum.
    """
    model = model or build_homology(vt)
    phi = phi or flow_graph(vt)
    if eta is None:
        graph = phi
        components = None
    else:
        weights = edge_weights(phi, model, eta)
        graph, components = restricted_flow_graph(phi, weights)
    exps = edge_exponents(phi, model, vt)
    exps = {e: exps[e] for e in graph.edges} if graph is not phi else exps
    functional = model.functional(xi)
    result = graph_growth_rate(graph, exps, functional, components, tol)
    if result.per_component:
        best = max(result.per_component)
        if abs(best - result.rate) > 1e-9 * max(1.0, result.rate):
            raise ArithmeticError("component rates disagree with the overall rate")
    return result


# ---------------------------------------------------------------------------
# cycle counting oracle


@dataclass
class CycleCounts:
    walks: list  # walks[w] = closed walks of weight exactly w (marked start)
    primitive: list  # primitive cycles of weight w, up to rotation
    cumulative: list  # primitive cycles of weight <= w

    def growth_estimate(self, L=None):
        L = L if L is not None else len(self.walks) - 1
        if self.walks[L] <= 0:
            return None
        return self.walks[L] ** (1.0 / L)


def cycle_count_oracle(graph, weights, L, cap=2000000):
    """Exact counts of directed cycles with weight at most L.

    weights must be nonnegative integers and every directed cycle must have
    positive weight.  See the module docstring for the exact conventions.
    """
    verts = list(graph.vertices)
    V = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    if any(w < 0 for w in weights.values()):
        raise NotPositive("oracle weights must be nonnegative")
    zero_sub = graph.subgraph([e for e, w in weights.items() if w == 0])
    if zero_sub.recurrent_edges():
        raise NotPositive("zero-weight cycle: counts are infinite",
                          witness=zero_sub.recurrent_edges())
    # adjacency with weight-generating dict entries, truncated at L
    A = [[{} for _ in range(V)] for _ in range(V)]
    for e in graph.edges.values():
        w = weights[e.eid]
        if w <= L:
            d = A[idx[e.tail]][idx[e.head]]
            d[w] = d.get(w, 0) + 1
    T = {}  # (m, w) -> trace count
    cur = None
    m = 0
    ops = 0
    while True:
        m += 1
        nxt = [[{} for _ in range(V)] for _ in range(V)]
        prev = A if cur is None else cur
        for i in range(V):
            for k in range(V):
                if not prev[i][k]:
                    continue
                for j in range(V):
                    if not A[k][j]:
                        continue
                    target = nxt[i][j]
                    for w1, c1 in prev[i][k].items():
                        for w2, c2 in A[k][j].items():
                            w = w1 + w2
                            if w <= L:
                                target[w] = target.get(w, 0) + c1 * c2
                                ops += 1
                                if ops > cap:
                                    raise TooLarge("cycle counting exceeded the work cap")
        if m == 1:
            for i in range(V):
                for w, c in A[i][i].items():
                    T[(1, w)] = T.get((1, w), 0) + c
            cur = A
            continue
        cur = nxt
        alive = False
        for i in range(V):
            for w, c in cur[i][i].items():
                T[(m, w)] = T.get((m, w), 0) + c
            if any(cur[i][j] for j in range(V)):
                alive = True
        if not alive:
            break
    # necklace accounting: m * P(m, w) = T(m, w) - sum_{k|gcd, k>1} (m/k) P(m/k, w/k)
    P = {}
    for (m, w) in sorted(T):
        total = T[(m, w)]
        k = 2
        while k <= min(m, w if w else m):
            if m % k == 0 and (w % k == 0):
                total -= (m // k) * P.get((m // k, w // k), 0)
            k += 1
        if total % m != 0:
            raise ArithmeticError("necklace accounting failed")
        if total:
            P[(m, w)] = total // m
    walks = [0] * (L + 1)
    for (m, w), c in T.items():
        walks[w] += c
    primitive = [0] * (L + 1)
    for (m, w), c in P.items():
        primitive[w] += c
    cumulative = []
    acc = 0
    for w in range(L + 1):
        acc += primitive[w]
        cumulative.append(acc)
    return CycleCounts(walks=walks, primitive=primitive, cumulative=cumulative)


# ---------------------------------------------------------------------------
# scans and accumulation experiments


def entropy_scan(vt, eta, xi_start, xi_end, samples, model=None, phi=None):
    """Entropies along the integer segment from xi_start to xi_end.

    Sample t uses the integral class (samples - t) * xi_start + t * xi_end.
    Returns rows of (t, entropy); all sampled classes must be strictly
    positive on the restricted cycles.
    """
    model = model or build_homology(vt)
    phi = phi or flow_graph(vt)
    rows = []
    for t in range(samples + 1):
        if xi_end is None:
            xi = [(t + 1) * w for w in xi_start]
        else:
            xi = [(samples - t) * a + t * b for a, b in zip(xi_start, xi_end)]
        res = growth_rate(vt, eta, xi, model, phi)
        rows.append({"t": t, "class": xi, "rate": res.rate, "entropy": math.log(res.rate)})
    return rows


def check_midpoint_convexity(rows, slack=1e-9):
    """Midpoint convexity of entropy over all same-parity sample pairs."""
    ent = [r["entropy"] for r in rows]
    for i in range(len(ent)):
        for j in range(i + 2, len(ent), 2):
            mid = (i + j) // 2
            if ent[mid] > (ent[i] + ent[j]) / 2 + slack:
                return False, (i, mid, j)
    return True, None


@dataclass
class AccumulationResult:
    rates: list  # gr(alpha + i * eta) on the full flow graph
    limit: float  # gr(alpha; Phi|eta)
    first_dominating: int  # least i0 with rate_i >= limit for all i >= i0
    final_gap: float


def accumulation_experiment(vt, alpha, eta, i_max, model=None, phi=None, tol=ROOT_TOL):
    """Stretch-factor accumulation: gr(alpha + i*eta) converges down to the
    face growth rate gr(alpha; Phi|eta) and dominates it for large i."""
    model = model or build_homology(vt)
    phi = phi or flow_graph(vt)
    exps = edge_exponents(phi, model, vt)
    p_full = perron(phi, exps, model.betti)
    f_alpha = model.functional(alpha)
    f_eta = model.functional(eta)

    lim = growth_rate(vt, eta, alpha, model, phi, tol)
    rates = []
    # exponent of each term under alpha + i*eta splits linearly
    pair_terms = {}
    for exp, c in p_full.terms.items():
        a = sum(f * g for f, g in zip(f_alpha, exp))
        b = sum(f * g for f, g in zip(f_eta, exp))
        pair_terms[(a, b)] = pair_terms.get((a, b), 0) + c
    for i in range(i_max + 1):
        coeffs = {}
        for (a, b), c in pair_terms.items():
            e = a + i * b
            coeffs[e] = coeffs.get(e, 0) + c
        spec = Specialization({e: c for e, c in coeffs.items() if c})
        root = smallest_positive_root(spec, tol)
        rates.append(1.0 if root is None else 1.0 / root)
    first = 0
    for i in range(i_max, -1, -1):
        if rates[i] < lim.rate - 1e-9:
            first = i + 1
            break
    return AccumulationResult(
        rates=rates,
        limit=lim.rate,
        first_dominating=first,
        final_gap=abs(rates[i_max] - lim.rate),
    )

"""Veering triangulation ingestion.

Parses the native VTG text format and taut isomorphism signatures, derives
face/edge classes, coorientations and tetrahedron orientations, infers veer
labels, and validates the result against the model-tetrahedron combinatorics.

Conventions used throughout the package:

* A tetrahedron has vertices 0..3; face f is the triangle opposite vertex f.
* A gluing ``glue[t][f] = (t2, p)`` identifies face f of tetrahedron t with
  face p[f] of t2; p is a vertex permutation of {0,1,2,3}.
* Opposite edge pairs are indexed 0 = {01|23}, 1 = {02|13}, 2 = {03|12};
  ``taut[t]`` is the index of the pair of edges with dihedral angle pi.
* A face class is cooriented from the tetrahedron in which it is a top face
  (two outward faces) to the one in which it is a bottom face.
* The top edge of a tetrahedron is the edge shared by its two top faces;
  every edge class is the top edge of exactly one tetrahedron (the one below
  it) and the bottom edge of exactly one (the one above it).
"""

from dataclasses import dataclass, field

from . import perm4
from .errors import InternalInvariantError, NotTaut, NotVeering, ParseError

EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_SLOT_INDEX = {pair: i for i, pair in enumerate(EDGE_SLOTS)}

SIG_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
SIG_INDEX = {c: i for i, c in enumerate(SIG_CHARS)}


def pair_index(a, b):
    """Index of the opposite-edge pair containing edge {a,b}."""
    if a == b:
        raise ValueError("degenerate edge")
    if 0 in (a, b):
        return a + b - 1
    return 5 - a - b


def pair_edges(d):
    """The two (sorted) vertex pairs of opposite-edge pair d."""
    first = (0, d + 1)
    rest = tuple(v for v in (1, 2, 3) if v != d + 1)
    return first, rest


@dataclass
class RawTriangulation:
    """Gluing data of an ideal triangulation plus the taut pi-pair choice."""

    n: int
    glue: list  # glue[t][f] = (t2, perm) with perm a 4-tuple
    taut: list  # pi-pair index in {0,1,2} per tetrahedron

    def validate(self):
        if self.n <= 0:
            raise ParseError("need at least one tetrahedron")
        if len(self.glue) != self.n or len(self.taut) != self.n:
            raise ParseError("gluing/taut tables do not match tetrahedron count")
        for t in range(self.n):
            if self.taut[t] not in (0, 1, 2):
                raise ParseError(f"taut index of tetrahedron {t} not in 0..2")
            if len(self.glue[t]) != 4:
                raise ParseError(f"tetrahedron {t} needs 4 face gluings")
            for f in range(4):
                entry = self.glue[t][f]
                if entry is None:
                    raise ParseError(f"face ({t},{f}) is unglued; triangulation must be closed/ideal")
                t2, p = entry
                if not (0 <= t2 < self.n):
                    raise ParseError(f"face ({t},{f}) glued to out-of-range tetrahedron {t2}")
                if sorted(p) != [0, 1, 2, 3]:
                    raise ParseError(f"face ({t},{f}) gluing is not a permutation")
                if t2 == t and p[f] == f and p == perm4.IDENTITY:
                    raise ParseError(f"face ({t},{f}) glued to itself pointwise")
                back_t, back_p = self.glue[t2][p[f]]
                if back_t != t or back_p != perm4.inverse(p):
                    raise ParseError(f"gluing of face ({t},{f}) is not an involution")
        self._check_connected()
        return self

    def _check_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                t2 = self.glue[t][f][0]
                if t2 not in seen:
                    seen.add(t2)
                    stack.append(t2)
        if len(seen) != self.n:
            raise ParseError("triangulation is not connected")

    def relabeled(self, tet_perm, vertex_maps):
        """Relabel tetrahedra by tet_perm and vertices of each by vertex_maps[t]."""
        glue = [[None] * 4 for _ in range(self.n)]
        taut = [0] * self.n
        for t in range(self.n):
            nt = tet_perm[t]
            vm = vertex_maps[t]
            a, b = pair_edges(self.taut[t])[0]
            taut[nt] = pair_index(vm[a], vm[b])
            for f in range(4):
                t2, p = self.glue[t][f]
                np = perm4.compose(vertex_maps[t2], perm4.compose(p, perm4.inverse(vm)))
                glue[nt][vm[f]] = (tet_perm[t2], np)
        return RawTriangulation(self.n, glue, taut)


# ---------------------------------------------------------------------------
# native VTG format


def parse_native(text):
    """Parse a VTG document into a RawTriangulation.

    Format (line oriented):
        vtg 1
        tetrahedra N
        glue t f0:(t0,p0) f1:(t1,p1) f2:(t2,p2) f3:(t3,p3)
        taut d0 d1 ... d{N-1}
        veers e0:L e1:R ...        (optional; checked against inference)
    """
    lines = text.splitlines()
    significant = []
    for i, line in enumerate(lines):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            significant.append((i + 1, stripped))
    if not significant:
        raise ParseError("empty document")
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(significant):
            raise ParseError("unexpected end of document", line=len(lines))
        item = significant[pos]
        pos += 1
        return item

    lineno, header = take()
    if header.split() != ["vtg", "1"]:
        raise ParseError("expected header 'vtg 1'", line=lineno)
    lineno, count = take()
    parts = count.split()
    if len(parts) != 2 or parts[0] != "tetrahedra":
        raise ParseError("expected 'tetrahedra N'", line=lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError("tetrahedron count is not an integer", line=lineno)
    if n <= 0:
        raise ParseError("tetrahedron count must be positive", line=lineno)

    glue = [[None] * 4 for _ in range(n)]
    seen_tets = set()
    for _ in range(n):
        lineno, line = take()
        parts = line.split()
        if parts[0] != "glue" or len(parts) != 6:
            raise ParseError("expected 'glue t f0:(t0,p0) ... f3:(t3,p3)'", line=lineno)
        try:
            t = int(parts[1])
        except ValueError:
            raise ParseError("bad tetrahedron index", line=lineno)
        if not (0 <= t < n) or t in seen_tets:
            raise ParseError(f"bad or repeated tetrahedron index {t}", line=lineno)
        seen_tets.add(t)
        for f in range(4):
            token = parts[2 + f]
            col = line.find(token) + 1
            prefix = f"f{f}:("
            if not token.startswith(prefix) or not token.endswith(")"):
                raise ParseError(f"expected token like 'f{f}:(t,p)'", line=lineno, column=col)
            body = token[len(prefix):-1].split(",")
            if len(body) != 2:
                raise ParseError("gluing token needs 'tet,perm'", line=lineno, column=col)
            try:
                t2 = int(body[0])
            except ValueError:
                raise ParseError("bad target tetrahedron", line=lineno, column=col)
            word = body[1]
            if len(word) != 4 or set(word) != set("0123"):
                raise ParseError("permutation word must use 0123 once each", line=lineno, column=col)
            glue[t][f] = (t2, tuple(int(c) for c in word))

    lineno, line = take()
    parts = line.split()
    if parts[0] != "taut" or len(parts) != n + 1:
        raise ParseError(f"expected 'taut' with {n} digits", line=lineno)
    try:
        taut = [int(x) for x in parts[1:]]
    except ValueError:
        raise ParseError("taut entries must be integers", line=lineno)

    veers = None
    if pos < len(significant):
        lineno, line = take()
        parts = line.split()
        if parts[0] != "veers":
            raise ParseError("unexpected trailing line (only 'veers' allowed)", line=lineno)
        veers = []
        for i, token in enumerate(parts[1:]):
            if not token.startswith(f"e{i}:") or token[-1] not in "LR":
                raise ParseError("veer tokens look like 'e0:L'", line=lineno)
            veers.append(token[-1])
    if pos < len(significant):
        raise ParseError("trailing content", line=significant[pos][0])

    raw = RawTriangulation(n, glue, taut).validate()
    raw.declared_veers = veers
    return raw


def serialize_native(vt):
    """Write a VeeringTriangulation (or RawTriangulation) as a VTG document."""
    raw = vt.raw if isinstance(vt, VeeringTriangulation) else vt
    out = ["vtg 1", f"tetrahedra {raw.n}"]
    for t in range(raw.n):
        tokens = []
        for f in range(4):
            t2, p = raw.glue[t][f]
            tokens.append(f"f{f}:({t2},{''.join(map(str, p))})")
        out.append(f"glue {t} " + " ".join(tokens))
    out.append("taut " + " ".join(str(d) for d in raw.taut))
    if isinstance(vt, VeeringTriangulation):
        out.append("veers " + " ".join(f"e{i}:{v}" for i, v in enumerate(vt.veer)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# isomorphism signatures (taut variant: "<isosig>_<digits>")


def _decode_bare_isosig(sig):
    if not sig:
        raise ParseError("empty signature")
    for ch in sig:
        if ch not in SIG_INDEX:
            raise ParseError(f"bad signature character {ch!r}")
    vals = [SIG_INDEX[c] for c in sig]
    n = vals[0]
    if n == 0:
        raise ParseError("signature encodes zero tetrahedra")
    if n >= 63:
        raise ParseError("signatures with 63+ tetrahedra are not supported")
    pos = 1

    # Facet actions: 2-bit codes, three per character.  Each action accounts
    # for one facet (boundary) or two (a join), so read until 4n facets.
    actions = []
    budget = 4 * n
    while budget > 0:
        if pos >= len(vals):
            raise ParseError("signature truncated in facet actions")
        v = vals[pos]
        pos += 1
        for shift in (0, 2, 4):
            code = (v >> shift) & 3
            if budget <= 0:
                if code != 0:
                    raise ParseError("nonzero padding in facet actions")
                continue
            if code == 3:
                raise ParseError("invalid facet action 3")
            actions.append(code)
            budget -= 1 if code == 0 else 2
    if budget != 0:
        raise ParseError("facet actions overrun the facet count")

    n_type2 = sum(1 for a in actions if a == 2)
    dests = vals[pos:pos + n_type2]
    pos += n_type2
    gluing_idx = vals[pos:pos + n_type2]
    pos += n_type2
    if len(dests) != n_type2 or len(gluing_idx) != n_type2:
        raise ParseError("signature truncated in join data")
    if pos != len(vals):
        raise ParseError("trailing characters in signature")
    if any(d >= n for d in dests):
        raise ParseError("join destination out of range")
    if any(g >= 24 for g in gluing_idx):
        raise ParseError("gluing permutation index out of range")

    glue = [[None] * 4 for _ in range(n)]
    next_tet = 1
    ai = di = 0
    for t in range(n):
        for f in range(4):
            if glue[t][f] is not None:
                continue
            if ai >= len(actions):
                raise ParseError("ran out of facet actions")
            action = actions[ai]
            ai += 1
            if action == 0:
                raise ParseError("signature has boundary facets; need a closed ideal triangulation")
            if action == 1:
                if next_tet >= n:
                    raise ParseError("signature allocates too many tetrahedra")
                t2 = next_tet
                next_tet += 1
                p = perm4.IDENTITY
            else:
                t2 = dests[di]
                p = perm4.ORDERED[gluing_idx[di]]
                di += 1
            f2 = p[f]
            if glue[t2][f2] is not None:
                raise ParseError("signature gluing collides with an earlier join")
            glue[t][f] = (t2, p)
            glue[t2][f2] = (t, perm4.inverse(p))
    if ai != len(actions) or next_tet != n:
        raise ParseError("signature does not describe a connected closed triangulation")
    return n, glue


def _encode_run(raw, start, p0):
    """Canonical BFS labeling from (start tetrahedron, vertex relabeling p0).

    Returns (actions, dests, gluings, image, vertex_maps); type-1 joins are
    relabeled so that their gluing is the identity and need not be recorded.
    """
    n = raw.n
    image = [-1] * n
    vmap = [None] * n
    preimage = [start]
    image[start] = 0
    vmap[start] = p0
    next_label = 1
    done = set()
    actions, dests, gluings = [], [], []
    img = 0
    while img < len(preimage):
        t = preimage[img]
        inv = perm4.inverse(vmap[t])
        for fi in range(4):
            f = inv[fi]
            if (t, f) in done:
                continue
            done.add((t, f))
            t2, p = raw.glue[t][f]
            done.add((t2, p[f]))
            if image[t2] < 0:
                actions.append(1)
                image[t2] = next_label
                next_label += 1
                preimage.append(t2)
                vmap[t2] = perm4.compose(vmap[t], perm4.inverse(p))
            else:
                actions.append(2)
                dests.append(image[t2])
                gluings.append(perm4.ORDERED_INDEX[perm4.compose(vmap[t2], perm4.compose(p, perm4.inverse(vmap[t])))])
        img += 1
    return actions, dests, gluings, image, vmap


def _pack_sig(n, actions, dests, gluings):
    chars = [SIG_CHARS[n]]
    for i in range(0, len(actions), 3):
        chunk = actions[i:i + 3]
        v = sum(code << (2 * j) for j, code in enumerate(chunk))
        chars.append(SIG_CHARS[v])
    chars.extend(SIG_CHARS[d] for d in dests)
    chars.extend(SIG_CHARS[g] for g in gluings)
    return "".join(chars)


def encode_taut_isosig(vt_or_raw):
    """Canonical taut isomorphism signature "<isosig>_<digits>".

    Minimizes the (actions, dests, gluings) triple over all starting
    tetrahedra and vertex relabelings; the taut digit string is minimized
    over the relabelings that realize the canonical signature.
    """
    raw = vt_or_raw.raw if isinstance(vt_or_raw, VeeringTriangulation) else vt_or_raw
    best_key = None
    best_digit_string = None
    for start in range(raw.n):
        for p0 in perm4.ORDERED:
            actions, dests, gluings, image, vmap = _encode_run(raw, start, p0)
            key = (actions, dests, gluings)
            if best_key is not None and key > best_key:
                continue
            digits = [0] * raw.n
            for t in range(raw.n):
                a, b = pair_edges(raw.taut[t])[0]
                digits[image[t]] = pair_index(vmap[t][a], vmap[t][b])
            digit_string = "".join(map(str, digits))
            if best_key is None or key < best_key:
                best_key, best_digit_string = key, digit_string
            elif digit_string < best_digit_string:
                best_digit_string = digit_string
    return _pack_sig(raw.n, *best_key) + "_" + best_digit_string


def parse_taut_isosig(sig):
    """Decode "<isosig>_<digits>" into a RawTriangulation.

    Census digits are in {0,1,2} (digit = pi-pair index).  Strings using the
    shifted alphabet {1,2,3} are accepted too; when both readings are
    possible the one yielding a taut structure wins.
    """
    if "_" not in sig:
        raise ParseError("taut signature needs the form '<isosig>_<digits>'")
    base, digit_string = sig.rsplit("_", 1)
    n, glue = _decode_bare_isosig(base)
    if len(digit_string) != n:
        raise ParseError(f"expected {n} taut digits, got {len(digit_string)}")
    if not digit_string.isdigit():
        raise ParseError("taut digits must be numeric")
    digits = [int(c) for c in digit_string]
    readings = []
    if all(d in (0, 1, 2) for d in digits):
        readings.append(digits)
    if all(d in (1, 2, 3) for d in digits):
        readings.append([d - 1 for d in digits])
    if not readings:
        raise ParseError("taut digits must lie in {0,1,2} (or the shifted {1,2,3})")
    last_error = None
    for taut in readings:
        raw = RawTriangulation(n, glue, list(taut)).validate()
        try:
            _infer_structure(raw)
        except (NotTaut, NotVeering) as exc:
            last_error = exc
            continue
        return raw
    raise NotTaut(f"taut digits do not give a taut structure: {last_error}")


# ---------------------------------------------------------------------------
# derived structure: orientations, coorientations, classes, stars


@dataclass
class StarEntry:
    """One passage of the edge-link circle through a tetrahedron."""

    tet: int
    edge: tuple  # sorted vertex pair in tet
    enter_face: int
    exit_face: int


@dataclass
class Side:
    """One side of an edge star, ordered from the tetrahedron below the edge
    to the one above it; faces[i] is crossed between tets[i] and tets[i+1]."""

    entries: list  # StarEntry for the fan tetrahedra only
    tets: list  # [bottom_tet, fan..., top_tet]
    faces: list  # face class ids, length fan+1
    exit_slots: list  # (tet, face) slot on the lower side of each crossed face
    enter_slots: list  # (tet, face) slot on the upper side

    @property
    def fan_length(self):
        return len(self.entries)


@dataclass
class EdgeClass:
    index: int
    rep: tuple  # (tet, edge-slot index), lexicographically least
    entries: list  # StarEntry list, one full walk around the edge
    top_tet: int  # tetrahedron above the edge (edge is its bottom edge)
    bottom_tet: int  # tetrahedron below (edge is its top edge)
    sides: tuple  # (Side, Side), ordered by final enter-face slot in top_tet

    @property
    def degree(self):
        return len(self.entries)

    @property
    def fan_lengths(self):
        return (self.sides[0].fan_length, self.sides[1].fan_length)


def _walk_edge(raw, t0, e0):
    a, b = e0
    others = [x for x in range(4) if x not in e0]
    state0 = (t0, e0, others[1], others[0])
    t, e, enter_f, exit_f = state0
    entries = []
    while True:
        entries.append(StarEntry(t, e, enter_f, exit_f))
        t2, p = raw.glue[t][exit_f]
        e2 = tuple(sorted((p[e[0]], p[e[1]])))
        enter2 = p[exit_f]
        faces2 = [x for x in range(4) if x not in e2]
        exit2 = faces2[0] if faces2[1] == enter2 else faces2[1]
        t, e, enter_f, exit_f = t2, e2, enter2, exit2
        if (t, e, enter_f, exit_f) == state0:
            return entries


def _orient_tetrahedra(raw):
    orient = [0] * raw.n
    orient[0] = 1
    stack = [0]
    while stack:
        t = stack.pop()
        for f in range(4):
            t2, p = raw.glue[t][f]
            want = -orient[t] * perm4.sign(p)
            if orient[t2] == 0:
                orient[t2] = want
                stack.append(t2)
            elif orient[t2] != want:
                raise NotVeering("triangulation is not orientable")
    return orient


def _infer_coorientations(raw):
    """Per tetrahedron, the pair of face indices that are its top faces.

    The partition of the four faces induced by taut[t] equals the vertex
    partition of the pi-pair; a global bit per tetrahedron selects which part
    points outward, constrained so every face class is a top face on exactly
    one of its two sides.  Convention: the top pair of tetrahedron 0 is the
    part containing face 0.
    """
    parts = [pair_edges(raw.taut[t]) for t in range(raw.n)]
    bit = [None] * raw.n
    bit[0] = 0
    stack = [0]

    def is_top(t, f):
        return f in parts[t][bit[t]]

    while stack:
        t = stack.pop()
        for f in range(4):
            t2, p = raw.glue[t][f]
            f2 = p[f]
            want_top2 = not is_top(t, f)
            got = 0 if f2 in parts[t2][0] else 1
            want_bit = got if want_top2 else 1 - got
            if bit[t2] is None:
                bit[t2] = want_bit
                stack.append(t2)
            elif bit[t2] != want_bit:
                raise NotTaut("no consistent coorientation for the given taut data")
    top_faces = [parts[t][bit[t]] for t in range(raw.n)]
    return top_faces


def _infer_structure(raw):
    """Shared derivation: orientations, coorientations, face/edge classes.

    Raises NotTaut/NotVeering as soon as a structural obstruction appears.
    """
    orient = _orient_tetrahedra(raw)
    top_faces = _infer_coorientations(raw)
    # top edge: shared by the two top faces = complement of their indices
    top_edge, bottom_edge = [], []
    for t in range(raw.n):
        tf = top_faces[t]
        top_edge.append(tuple(sorted(v for v in range(4) if v not in tf)))
        bottom_edge.append(tuple(sorted(tf)))

    # face classes
    face_id = {}
    faces = []
    for t in range(raw.n):
        for f in range(4):
            if (t, f) in face_id:
                continue
            t2, p = raw.glue[t][f]
            fid = len(faces)
            face_id[(t, f)] = fid
            face_id[(t2, p[f])] = fid
            faces.append(((t, f), (t2, p[f])))
    face_below, face_above = [], []
    for (t, f), (t2, f2) in faces:
        top1 = f in top_faces[t]
        top2 = f2 in top_faces[t2]
        if top1 == top2:
            raise NotTaut(f"face {(t, f)}~{(t2, f2)} is cooriented the same way on both sides")
        if top1:
            face_below.append((t, f))
            face_above.append((t2, f2))
        else:
            face_below.append((t2, f2))
            face_above.append((t, f))

    # edge classes via link walks
    edge_id = {}
    classes = []
    for t in range(raw.n):
        for si, e in enumerate(EDGE_SLOTS):
            if (t, si) in edge_id:
                continue
            entries = _walk_edge(raw, t, e)
            cid = len(classes)
            for entry in entries:
                edge_id[(entry.tet, EDGE_SLOT_INDEX[entry.edge])] = cid
            pi_positions = [i for i, en in enumerate(entries)
                            if pair_index(*en.edge) == raw.taut[en.tet]]
            if len(pi_positions) != 2:
                raise NotTaut(f"edge class {cid} has angle sum {len(pi_positions)}*pi, expected 2*pi")
            src = snk = None
            for i in pi_positions:
                en = entries[i]
                if en.edge == top_edge[en.tet]:
                    if src is not None:
                        raise NotTaut(f"edge class {cid} is the top edge of two tetrahedra")
                    src = i
                elif en.edge == bottom_edge[en.tet]:
                    if snk is not None:
                        raise NotTaut(f"edge class {cid} is the bottom edge of two tetrahedra")
                    snk = i
            if src is None or snk is None:
                raise NotTaut(f"edge class {cid} lacks a top or bottom tetrahedron")
            classes.append(_assemble_class(raw, cid, entries, src, snk, face_id, top_faces))
    # lexicographically least representative per class
    for cls in classes:
        cls.rep = min((en.tet, EDGE_SLOT_INDEX[en.edge]) for en in cls.entries)

    return {
        "orient": orient,
        "top_faces": top_faces,
        "top_edge": top_edge,
        "bottom_edge": bottom_edge,
        "faces": faces,
        "face_id": face_id,
        "face_below": face_below,
        "face_above": face_above,
        "edge_id": edge_id,
        "classes": classes,
    }


def _assemble_class(raw, cid, entries, src, snk, face_id, top_faces):
    k = len(entries)

    def arc(i, j):  # walk positions strictly between i and j, cyclically
        out = []
        p = (i + 1) % k
        while p != j:
            out.append(p)
            p = (p + 1) % k
        return out

    bottom_tet = entries[src].tet
    top_tet = entries[snk].tet
    side_a = _assemble_side(raw, entries, [entries[i] for i in arc(src, snk)],
                            src, snk, face_id, top_faces, forward=True)
    side_b = _assemble_side(raw, entries, [entries[i] for i in reversed(arc(snk, src))],
                            src, snk, face_id, top_faces, forward=False)
    # deterministic side order: by the bottom-face slot used to enter top_tet
    sides = (side_a, side_b)
    if sides[0].enter_slots[-1][1] > sides[1].enter_slots[-1][1]:
        sides = (side_b, side_a)
    return EdgeClass(cid, None, entries, top_tet, bottom_tet, sides)


def _assemble_side(raw, entries, fan, src, snk, face_id, top_faces, forward):
    """Build one Side from the fan entries listed bottom-to-top.

    forward=True means the walk order already runs with the coorientation
    (source to sink); otherwise the fan list was reversed and each crossing
    uses the enter face of the walk instead of the exit face.
    """
    bottom = entries[src]
    top = entries[snk]
    tets = [bottom.tet] + [en.tet for en in fan] + [top.tet]
    faces, exit_slots, enter_slots = [], [], []
    seq = [bottom] + fan + [top]
    for below, above in zip(seq[:-1], seq[1:]):
        f_out = below.exit_face if forward else below.enter_face
        slot = (below.tet, f_out)
        if f_out not in top_faces[below.tet]:
            raise NotTaut("fan ordering violates the coorientation")
        t2, p = raw.glue[below.tet][f_out]
        enter = (t2, p[f_out])
        if t2 != above.tet:
            raise InternalInvariantError("edge star walk is inconsistent")
        faces.append(face_id[slot])
        exit_slots.append(slot)
        enter_slots.append(enter)
    return Side(fan, tets, faces, exit_slots, enter_slots)


# ---------------------------------------------------------------------------
# veering triangulation


class VeeringTriangulation:
    """A validated veering triangulation with all derived combinatorics.

    Attributes of note:
      orient[t]        +1/-1 tetrahedron orientation (tet 0 is +1)
      top_faces[t]     pair of outward face indices
      top_edge[t], bottom_edge[t]   sorted vertex pairs
      faces            list of face classes as slot pairs
      face_below/above per face id, the (tet, face) slot below/above it
      classes          list of EdgeClass (edge stars split into sides)
      edge_id          (tet, edge-slot-index) -> edge class id
      veer             'L' / 'R' per edge class
    """

    def __init__(self, raw, derived, veer):
        self.raw = raw
        self.n = raw.n
        self.orient = derived["orient"]
        self.top_faces = derived["top_faces"]
        self.top_edge = derived["top_edge"]
        self.bottom_edge = derived["bottom_edge"]
        self.faces = derived["faces"]
        self.face_id = derived["face_id"]
        self.face_below = derived["face_below"]
        self.face_above = derived["face_above"]
        self.edge_id = derived["edge_id"]
        self.classes = derived["classes"]
        self.veer = veer
        self._cache = {}

    @property
    def num_faces(self):
        return len(self.faces)

    @property
    def num_edge_classes(self):
        return len(self.classes)

    def edge_class_of(self, tet, edge_pair):
        return self.edge_id[(tet, EDGE_SLOT_INDEX[tuple(sorted(edge_pair))])]

    def side_veer_prediction(self, t):
        """Predicted veer of each side edge of tetrahedron t.

        With the bottom edge (c, c') and top edge (a, a') ordered so that
        (c, c', a, a') is positively oriented in the manifold orientation,
        the side edges {c,a} and {c',a'} veer right (positive slope in the
        model square) and the other two veer left.
        """
        c, cp = self.bottom_edge[t]
        a, ap = self.top_edge[t]
        if perm4.sign((c, cp, a, ap)) * self.orient[t] != 1:
            a, ap = ap, a
        return {
            tuple(sorted((c, a))): "R",
            tuple(sorted((cp, ap))): "R",
            tuple(sorted((c, ap))): "L",
            tuple(sorted((cp, a))): "L",
        }

    def fan_lengths(self):
        return [cls.fan_lengths for cls in self.classes]

    def delta(self):
        return max(max(fl) for fl in self.fan_lengths())


def infer_veers(raw):
    """Derive the unique veer assignment, or raise NotTaut/NotVeering.

    The two mirror-image assignments are resolved by declaring tetrahedron 0
    positively oriented; every downstream object is invariant under the
    global swap.
    """
    raw.validate()
    derived = _infer_structure(raw)
    classes = derived["classes"]
    for cls in classes:
        if cls.fan_lengths[0] == 0 or cls.fan_lengths[1] == 0:
            raise NotVeering(f"edge class {cls.index} has an empty fan")
    veer = [None] * len(classes)
    vt_probe = VeeringTriangulation(raw, derived, veer)
    for t in range(raw.n):
        for pair, v in vt_probe.side_veer_prediction(t).items():
            cid = vt_probe.edge_class_of(t, pair)
            if veer[cid] is None:
                veer[cid] = v
            elif veer[cid] != v:
                raise NotVeering(
                    f"edge class {cid} is forced both Left and Right (witness tetrahedron {t})")
    if any(v is None for v in veer):
        raise InternalInvariantError("some edge class received no veer constraint")
    vt = VeeringTriangulation(raw, derived, veer)
    declared = getattr(raw, "declared_veers", None)
    if declared is not None:
        if len(declared) != len(veer):
            raise ParseError("declared veers count does not match edge classes")
        if declared != veer and [_flip(v) for v in declared] != veer:
            raise NotVeering("declared veers are inconsistent with the taut structure")
        vt.veer = list(declared)
    return vt


def _flip(v):
    return "L" if v == "R" else "R"


def validate_veering(vt):
    """Diagnostic report: every veering invariant with pass/fail and witnesses.

    Returns a dict with 'checks' (list of {name, passed, detail}), 'passed',
    'delta', and per-class fan lengths.  Never raises on valid input.
    """
    checks = []

    def check(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    check("gluing-involution", True, "validated at parse time")
    check("orientable", True, "orientations fixed with tetrahedron 0 positive")
    pi_ok = all(len([e for e in cls.entries if pair_index(*e.edge) == vt.raw.taut[e.tet]]) == 2
                for cls in vt.classes)
    check("angle-sums", pi_ok, "each edge class carries exactly two pi angles")
    tb_ok = True
    for cls in vt.classes:
        tops = [e for e in cls.entries if e.edge == vt.top_edge[e.tet]]
        bots = [e for e in cls.entries if e.edge == vt.bottom_edge[e.tet]]
        if len(tops) != 1 or len(bots) != 1:
            tb_ok = False
            check("unique-top-bottom", False, f"edge class {cls.index}")
            break
    if tb_ok:
        check("unique-top-bottom", True,
              "each edge class is the top edge of one tetrahedron and the bottom edge of one")
    fans_ok = True
    for cls in vt.classes:
        if min(cls.fan_lengths) < 1:
            fans_ok = False
            check("fans-nonempty", False, f"edge class {cls.index} has an empty fan")
            break
    if fans_ok:
        check("fans-nonempty", True, "")
    # stored veers may follow either global mirror convention
    direct = mirrored = True
    witness = None
    for t in range(vt.n):
        for pair, v in vt.side_veer_prediction(t).items():
            cid = vt.edge_class_of(t, pair)
            if vt.veer[cid] != v:
                direct = False
                witness = witness or (t, cid)
            if vt.veer[cid] != _flip(v):
                mirrored = False
    if direct or mirrored:
        check("model-tetrahedron", True,
              "all 0-edge veers match the model tetrahedron pattern"
              + ("" if direct else " (mirror convention)"))
    else:
        check("model-tetrahedron", False,
              f"tetrahedron {witness[0]}, edge class {witness[1]}")
    fan_lengths = {cls.index: list(cls.fan_lengths) for cls in vt.classes}
    report = {
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "delta": vt.delta(),
        "fan_lengths": fan_lengths,
    }
    return report


def load(path_or_text, kind=None):
    """Load a veering triangulation from VTG text, a file path, or a taut sig."""
    text = path_or_text
    if kind == "sig" or (kind is None and "\n" not in text and "_" in text and not text.endswith(".vtg")):
        return infer_veers(parse_taut_isosig(text.strip()))
    return infer_veers(parse_native(text))

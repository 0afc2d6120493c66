"""Exhaustive search for small veering triangulations.

Enumerates closed oriented ideal gluings with taut data chosen per
tetrahedron, pruning on partial edge links (at most two pi angles, no empty
fans once closed, forced side-edge veers consistent).  Complete gluings are
validated with the package's own infer_veers and deduplicated by canonical
taut signature.

All gluing permutations are odd and every tetrahedron is positively
oriented; taut[0] = 0 by relabeling symmetry.  Run as a script:

    python3 tests/fixture_search.py 2 3 4
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from veerflow import encode_taut_isosig, infer_veers
from veerflow.errors import VeerflowError
from veerflow.ingest import EDGE_SLOTS, EDGE_SLOT_INDEX, RawTriangulation, pair_edges, pair_index
from veerflow import perm4

ODD_PERMS = [p for p in perm4.ORDERED if perm4.sign(p) == -1]
PERMS_SENDING = {}
for _p in ODD_PERMS:
    for _f in range(4):
        PERMS_SENDING.setdefault((_f, _p[_f]), []).append(_p)


def _fixed_new_perm(f):
    # canonical odd permutation fixing f, used for gluings onto a fresh tet
    others = [x for x in range(4) if x != f]
    p = list(range(4))
    p[others[0]], p[others[1]] = p[others[1]], p[others[0]]
    return tuple(p)


class _Search:
    def __init__(self, n):
        self.n = n
        self.glue = [[None] * 4 for _ in range(n)]
        self.taut = [None] * n
        self.bit = [None] * n
        self.used = 1
        self.taut[0] = 0
        self.bit[0] = 0
        self.found = {}

    def run(self):
        self._dfs()
        return self.found

    # --- pruning helpers ----------------------------------------------

    def _top_faces(self, t):
        return pair_edges(self.taut[t])[self.bit[t]]

    def _veer_prediction(self, t):
        top_pair = self._top_faces(t)
        bottom_edge = tuple(sorted(top_pair))
        top_edge = tuple(sorted(v for v in range(4) if v not in top_pair))
        c, cp = bottom_edge
        a, ap = top_edge
        if perm4.sign((c, cp, a, ap)) != 1:
            a, ap = ap, a
        return {
            tuple(sorted((c, a))): "R",
            tuple(sorted((cp, ap))): "R",
            tuple(sorted((c, ap))): "L",
            tuple(sorted((cp, a))): "L",
        }

    def _coor_ok(self, t, f, t2, f2):
        return (f in self._top_faces(t)) != (f2 in self._top_faces(t2))

    def _edge_arc_ok(self, t, eslot):
        """Walk the partial link of (t, eslot) both ways; prune impossible arcs."""
        e = EDGE_SLOTS[eslot]
        faces = [x for x in range(4) if x not in e]
        seen = []
        closed = False
        t_, e_, exit_ = t, e, faces[0]
        while True:
            seen.append((t_, e_))
            nxt = self.glue[t_][exit_]
            if nxt is None:
                break
            t2, p = nxt
            e2 = tuple(sorted((p[e_[0]], p[e_[1]])))
            enter2 = p[exit_]
            faces2 = [x for x in range(4) if x not in e2]
            exit2 = faces2[0] if faces2[1] == enter2 else faces2[1]
            t_, e_, exit_ = t2, e2, exit2
            if (t_, e_) == (t, e) and exit_ == faces[0]:
                closed = True
                break
        if not closed:
            t_, e_, exit_ = t, e, faces[1]
            while True:
                nxt = self.glue[t_][exit_]
                if nxt is None:
                    break
                t2, p = nxt
                e2 = tuple(sorted((p[e_[0]], p[e_[1]])))
                enter2 = p[exit_]
                faces2 = [x for x in range(4) if x not in e2]
                exit2 = faces2[0] if faces2[1] == enter2 else faces2[1]
                t_, e_, exit_ = t2, e2, exit2
                seen.append((t_, e_))

        pis = [i for i, (tt, ee) in enumerate(seen) if pair_index(*ee) == self.taut[tt]]
        if len(pis) > 2 or (closed and len(pis) != 2):
            return False
        if closed and len(pis) == 2:
            # nonempty fan on both sides of the closed link
            i, j = pis
            if (j - i) % len(seen) < 2 or (i - j) % len(seen) < 2:
                return False
        veer = None
        for tt, ee in seen:
            if pair_index(*ee) == self.taut[tt]:
                continue
            v = self._veer_prediction(tt)[ee]
            if veer is None:
                veer = v
            elif veer != v:
                return False
        return True

    def _prune_after(self, t, f, t2, f2):
        for eslot in range(6):
            if f in EDGE_SLOTS[eslot]:
                continue  # edge must be contained in face f
            if not self._edge_arc_ok(t, eslot):
                return False
        for eslot in range(6):
            if f2 in EDGE_SLOTS[eslot]:
                continue
            if not self._edge_arc_ok(t2, eslot):
                return False
        return True

    # --- search -------------------------------------------------------

    def _dfs(self):
        slot = None
        for t in range(self.used):
            for f in range(4):
                if self.glue[t][f] is None:
                    slot = (t, f)
                    break
            if slot:
                break
        if slot is None:
            if self.used == self.n:
                self._record()
            return
        t, f = slot
        # glue to a fresh tetrahedron (canonical permutation, all taut choices)
        if self.used < self.n:
            t2 = self.used
            p = _fixed_new_perm(f)
            f2 = p[f]
            want_top2 = f not in self._top_faces(t)
            for d in range(3):
                self.taut[t2] = d
                # pick the coorientation bit making f2's side opposite f's
                in_part0 = f2 in pair_edges(d)[0]
                self.bit[t2] = 0 if (in_part0 == want_top2) else 1
                self.used += 1
                self._apply(t, f, t2, p)
                self.used -= 1
            self.taut[t2] = None
            self.bit[t2] = None

        # glue to an existing tetrahedron
        for t2 in range(self.used):
            for f2 in range(4):
                if self.glue[t2][f2] is not None or (t2 == t and f2 == f):
                    continue
                if not self._coor_ok(t, f, t2, f2):
                    continue
                for p in PERMS_SENDING[(f, f2)]:
                    self._apply(t, f, t2, p)

    def _apply(self, t, f, t2, p):
        f2 = p[f]
        self.glue[t][f] = (t2, p)
        self.glue[t2][f2] = (t, perm4.inverse(p))
        if self._prune_after(t, f, t2, f2):
            self._dfs()
        self.glue[t][f] = None
        self.glue[t2][f2] = None

    def _record(self):
        raw = RawTriangulation(self.n, [list(r) for r in self.glue], list(self.taut))
        try:
            vt = infer_veers(raw)
        except VeerflowError:
            return
        sig = encode_taut_isosig(vt)
        self.found.setdefault(sig, raw)


def search(n):
    return _Search(n).run()


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        n = int(arg)
        sigs = search(n)
        print(f"n={n}: {len(sigs)} veering triangulations")
        for sig in sorted(sigs):
            print("  ", sig)

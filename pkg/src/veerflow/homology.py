"""Homology of the dual 2-complex and the free quotient of H1.

The complex has the tetrahedra as 0-cells, the face classes as 1-cells
(directed by the coorientation) and the sectors as 2-cells, with
 d2(sector) = side0 - side1 as face chains and d1(face) = above - below.
The stable branched surface is a deformation retract of the manifold, so
this computes H1 of the manifold itself.

Smith normal form is computed over Python integers with minimal-absolute-
value pivoting, tracking the unimodular transforms and their inverses, so
the model can project 1-cycles to Z^b (b = rank of H1 mod torsion) and can
lift any class back to an integral 1-cycle (the section used for pairings).
"""

from dataclasses import dataclass

from .errors import InvalidCocycle, NotACycle


def _identity(m):
    return [[1 if i == j else 0 for j in range(m)] for i in range(m)]


def smith_normal_form(matrix):
    """U @ A @ V = D with U, V unimodular and D in Smith normal form.

    Returns (D, U, Uinv, V, Vinv, rank).  Divisors on the diagonal are
    nonnegative and each divides the next.
    """
    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def row_add(i, j, k):  # row_i += k*row_j
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
        for r in range(m):
            Uinv[r][j] -= k * Uinv[r][i]

    def col_add(i, j, k):  # col_i += k*col_j
        for r in range(m):
            A[r][i] += k * A[r][j]
        for r in range(n):
            V[r][i] += k * V[r][j]
        Vinv[j] = [a - k * b for a, b in zip(Vinv[j], Vinv[i])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_negate(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in range(m):
            Uinv[r][i] = -Uinv[r][i]

    k = 0
    while True:
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != 0 and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != k:
            row_swap(k, i)
        if j != k:
            col_swap(k, j)
        if A[k][k] < 0:
            row_negate(k)
        dirty = False
        for i in range(k + 1, m):
            if A[i][k] != 0:
                q = A[i][k] // A[k][k]
                row_add(i, k, -q)
                if A[i][k] != 0:
                    dirty = True
        for j in range(k + 1, n):
            if A[k][j] != 0:
                q = A[k][j] // A[k][k]
                col_add(j, k, -q)
                if A[k][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        bad = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if A[i][j] % A[k][k] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(k, bad, 1)
            continue
        k += 1
    rank = k
    return A, U, Uinv, V, Vinv, rank


def _matvec(M, x):
    return [sum(a * b for a, b in zip(row, x)) for row in M]


@dataclass
class HomologyModel:
    num_faces: int
    num_tets: int
    d1: list  # tets x faces
    d2: list  # faces x sectors
    betti: int
    torsion: list  # invariant factors > 1 of H1
    section: list  # faces x betti; column j is an integral 1-cycle with class e_j
    _v1inv: list
    _rank1: int
    _u2: list
    _rank2: int

    def is_cycle(self, chain):
        return all(v == 0 for v in _matvec(self.d1, chain))

    def class_of_chain(self, chain):
        """Project a 1-cycle to Z^betti; additive, kills sector boundaries."""
        if len(chain) != self.num_faces:
            raise NotACycle("chain has the wrong length")
        if not self.is_cycle(chain):
            raise NotACycle("chain is not a 1-cycle")
        y = _matvec(self._v1inv, list(chain))
        x = y[self._rank1:]
        z = _matvec(self._u2, x)
        return tuple(z[self._rank2:])

    def check_cocycle(self, weights):
        """Matching condition: equal side sums at every edge class."""
        if len(weights) != self.num_faces:
            raise InvalidCocycle("cocycle has the wrong length")
        for j in range(len(self.d2[0]) if self.d2 else 0):
            s = sum(self.d2[i][j] * weights[i] for i in range(self.num_faces))
            if s != 0:
                raise InvalidCocycle(f"matching condition fails at edge class {j} (defect {s})")
        return True

    def pair(self, weights, chain):
        """Sum of weight(f) * chain(f); class-invariant on cycles when the
        weights satisfy the matching condition."""
        return sum(w * c for w, c in zip(weights, chain))

    def functional(self, weights):
        """The linear functional on Z^betti induced by a matching cocycle.

        Component j is the pairing with the section cycle of basis class j;
        pairing any 1-cycle equals functional . class_of_chain(cycle).
        """
        self.check_cocycle(weights)
        return tuple(sum(self.section[i][j] * weights[i] for i in range(self.num_faces))
                     for j in range(self.betti))


def boundary_matrices(vt):
    F = vt.num_faces
    d1 = [[0] * F for _ in range(vt.n)]
    for fid in range(F):
        d1[vt.face_above[fid][0]][fid] += 1
        d1[vt.face_below[fid][0]][fid] -= 1
    d2 = [[0] * vt.num_edge_classes for _ in range(F)]
    for cls in vt.classes:
        for f in cls.sides[0].faces:
            d2[f][cls.index] += 1
        for f in cls.sides[1].faces:
            d2[f][cls.index] -= 1
    return d1, d2


def build_homology(vt):
    """HomologyModel of the dual 2-complex; verifies d1 . d2 = 0."""
    d1, d2 = boundary_matrices(vt)
    F = vt.num_faces
    for j in range(vt.num_edge_classes):
        col = [d2[i][j] for i in range(F)]
        if any(v != 0 for v in _matvec(d1, col)):
            raise NotACycle(f"sector {j} boundary is not a 1-cycle (d1.d2 != 0)")

    _, _, _, v1, v1inv, r1 = smith_normal_form(d1)
    ker_dim = F - r1
    # kernel coordinates: columns r1.. of v1 form a basis of ker d1; the
    # coordinates of a cycle are the last ker_dim entries of v1inv @ cycle.
    w = []
    for j in range(vt.num_edge_classes):
        col = [d2[i][j] for i in range(F)]
        y = _matvec(v1inv, col)
        if any(v != 0 for v in y[:r1]):
            raise NotACycle("sector boundary has nonzero non-kernel coordinates")
        w.append(y[r1:])
    # w columns = sector boundaries in kernel coordinates
    W = [[w[j][i] for j in range(vt.num_edge_classes)] for i in range(ker_dim)]
    D2, u2, u2inv, _, _, r2 = smith_normal_form(W)
    torsion = [D2[i][i] for i in range(r2) if D2[i][i] > 1]
    betti = ker_dim - r2
    # section: lift basis class e_j to the 1-cycle K @ u2inv[:, r2+j]
    K = [[v1[i][r1 + t] for t in range(ker_dim)] for i in range(F)]
    section = [[0] * betti for _ in range(F)]
    for j in range(betti):
        xcol = [u2inv[t][r2 + j] for t in range(ker_dim)]
        cyc = _matvec(K, xcol)
        for i in range(F):
            section[i][j] = cyc[i]
    model = HomologyModel(
        num_faces=F, num_tets=vt.n, d1=d1, d2=d2, betti=betti, torsion=torsion,
        section=section, _v1inv=v1inv, _rank1=r1, _u2=u2, _rank2=r2)
    # sanity: section columns are cycles projecting to the standard basis
    for j in range(betti):
        col = [section[i][j] for i in range(F)]
        cls = model.class_of_chain(col)
        if list(cls) != [1 if t == j else 0 for t in range(betti)]:
            raise NotACycle("homology section failed self-check")
    return model

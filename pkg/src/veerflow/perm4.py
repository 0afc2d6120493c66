"""Permutations of {0,1,2,3} as 4-tuples.

ORDERED lists all 24 permutations lexicographically; isomorphism-signature
gluing characters index into this list.
"""

from itertools import permutations

IDENTITY = (0, 1, 2, 3)

ORDERED = tuple(sorted(permutations(range(4))))
ORDERED_INDEX = {p: i for i, p in enumerate(ORDERED)}


def compose(p, q):
    """(p*q)(x) = p(q(x))."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def inverse(p):
    inv = [0] * 4
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def sign(p):
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s

"""Sparse multivariate Laurent polynomials over arbitrary-precision integers.

Exponent vectors live in Z^b; terms are kept in a dict with no zero
coefficients.  Equality, hashing and serialization use graded-lex term order
(total degree first, then lexicographic on exponents).

The determinant is division-free (Berkowitz), so it is exact over the ring.
"""

from .errors import DimensionMismatch, TooLarge


def _add_term(terms, exp, coeff):
    if coeff == 0:
        return
    acc = terms.get(exp)
    if acc is None:
        terms[exp] = coeff
    else:
        acc += coeff
        if acc:
            terms[exp] = acc
        else:
            del terms[exp]


def _graded_lex_key(exp):
    return (sum(exp), exp)


class LaurentPoly:
    """Immutable sparse Laurent polynomial in nvars variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {tuple([0] * nvars): 1})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {tuple([0] * nvars): c})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {tuple([0] * self.nvars): 1}

    def constant_term(self):
        return self.terms.get(tuple([0] * self.nvars), 0)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            _add_term(terms, exp, c)
        return LaurentPoly(self.nvars, terms)

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                _add_term(terms, exp, c1 * c2)
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__
    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch("mixing polynomials in different variable counts")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other)!r}")

    def sorted_terms(self):
        """(exponent, coeff) pairs in graded-lex order, least first."""
        return sorted(self.terms.items(), key=lambda it: _graded_lex_key(it[0]))

    def support(self):
        return set(self.terms)

    def least_term(self):
        if not self.terms:
            return None
        exp = min(self.terms, key=_graded_lex_key)
        return exp, self.terms[exp]

    def unit_normalized(self):
        """Multiply by the unique unit (sign times monomial) putting the
        graded-lex-least term at exponent zero with positive coefficient."""
        if not self.terms:
            return self
        exp, coeff = self.least_term()
        sign = 1 if coeff > 0 else -1
        terms = {tuple(a - b for a, b in zip(e, exp)): sign * c for e, c in self.terms.items()}
        return LaurentPoly(self.nvars, terms)

    def filter_terms(self, keep):
        """Polynomial with only the terms whose exponent satisfies keep(exp)."""
        return LaurentPoly(self.nvars, {e: c for e, c in self.terms.items() if keep(e)})

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(f"t{i+1}^{e}" for i, e in enumerate(exp) if e != 0)
            if mono:
                bits.append(f"{'+' if c >= 0 else '-'} {abs(c)}*{mono}")
            else:
                bits.append(f"{'+' if c >= 0 else '-'} {abs(c)}")
        text = " ".join(bits)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__

    def to_json(self):
        return [{"coeff": c, "exponent": list(e)} for e, c in self.sorted_terms()]


def from_json(nvars, data):
    terms = {}
    for item in data:
        _add_term(terms, tuple(item["exponent"]), item["coeff"])
    return LaurentPoly(nvars, terms)


DET_DIMENSION_BOUND = 64


def det(matrix, nvars=None, bound=DET_DIMENSION_BOUND):
    """Exact determinant of a square matrix of LaurentPoly (Berkowitz).

    Division-free: only ring additions and multiplications are used.
    """
    n = len(matrix)
    if n == 0:
        if nvars is None:
            raise DimensionMismatch("empty matrix needs an explicit variable count")
        return LaurentPoly.one(nvars)
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch("matrix is not square")
    if n > bound:
        raise TooLarge(f"determinant dimension {n} exceeds bound {bound}")
    nv = matrix[0][0].nvars
    one = LaurentPoly.one(nv)
    zero = LaurentPoly.zero(nv)

    # Berkowitz: iteratively build the characteristic polynomial coefficient
    # vector of the leading principal minors; p holds the coefficients of
    # det(xI - A_k), highest power first.
    p = [one, -matrix[0][0]]
    for k in range(1, n):
        a = matrix[k][k]
        row = matrix[k][:k]
        col = [matrix[i][k] for i in range(k)]
        # t[j] for j >= 2 is -row . A_{k}^(j-2) . col over the k x k block
        t = [one, -a]
        vec = col
        for _ in range(k):
            t.append(-sum((r * v for r, v in zip(row, vec)), zero))
            vec = [sum((matrix[i][j] * vec[j] for j in range(k)), zero) for i in range(k)]
        q = [zero] * (k + 2)
        for i, pi in enumerate(p):
            for j, tj in enumerate(t):
                if i + j <= k + 1:
                    q[i + j] = q[i + j] + pi * tj
        # Toeplitz product keeps only the first k+2 coefficients
        p = q
    const = p[-1]
    return const if n % 2 == 0 else -const

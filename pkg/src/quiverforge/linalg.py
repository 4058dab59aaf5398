"""
Dense exact linear algebra over any field whose elements support + - * /.

Matrices are lists of rows.  Plain ints are promoted to Fractions on division.
"""

from fractions import Fraction


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n, one=1):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = one
    return M


def shape(M, ncols=None):
    if not M:
        return 0, (ncols or 0)
    return len(M), len(M[0])


def matmul(A, B, inner=None):
    m = len(A)
    k = len(A[0]) if A else (inner or 0)
    n = len(B[0]) if B else 0
    if B and len(B) != k:
        raise ValueError("shape mismatch %dx%d * %dx%d" % (m, k, len(B), n))
    out = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(n):
                b = Bt[j]
                if b != 0:
                    row[j] = row[j] + a * b
    return out


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A):
    return [[c * a for a in row] for row in A]


def transpose(A, ncols=0):
    if not A:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*A)]


def is_zero(A):
    return all(x == 0 for row in A for x in row)


def rref(M):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if R[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [_div(x, piv) for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M, ncols=None):
    """Basis of {v : M v = 0} as a list of column vectors (lists)."""
    if not M:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    R, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def row_space_basis(rows):
    R, piv = rref(rows)
    return R[:len(piv)]


def solve(A, b):
    """One solution x of A x = b, or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [0] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def in_span(vectors, v):
    """Is v a linear combination of the given vectors?"""
    if not vectors:
        return all(x == 0 for x in v)
    return rank(vectors + [v]) == rank(vectors)


def charpoly(A):
    """Coefficients c_0..c_n of det(tI - A) (c_n = 1), Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = zeros(n, n)
    for k in range(1, n + 1):
        AM = matmul(A, M) if k > 1 else zeros(n, n)
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        coeffs[n - k] = Fraction(-tr, k) if isinstance(tr, int) else -tr / k
    return coeffs


def sparse_rank(rows):
    """
    Rank of a sparse matrix given as a list of dicts column -> value, by
    incremental echelon reduction keeping the shortest pivot rows.
    """
    pivots = {}
    r = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                inv = _div(1, row[c])
                pivots[c] = {k: v * inv for k, v in row.items()}
                r += 1
                break
            f = row[c]
            for k, v in p.items():
                nv = row.get(k, 0) - f * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
    return r


class Echelon:
    """Growing semi-echelon basis of a span of dense vectors."""

    def __init__(self, vectors=()):
        self.rows = []
        for v in vectors:
            self.add(v)

    def residual(self, v):
        v = list(v)
        for p, row in self.rows:
            c = v[p]
            if c != 0:
                v = [a - c * b if b != 0 else a for a, b in zip(v, row)]
        return v

    def contains(self, v):
        return all(x == 0 for x in self.residual(v))

    def add(self, v):
        """Add v to the span; returns True when the span grew."""
        v = self.residual(v)
        for p, c in enumerate(v):
            if c != 0:
                self.rows.append((p, [_div(x, c) if x != 0 else x for x in v]))
                return True
        return False

    def basis(self):
        return [row for _, row in self.rows]

    def __len__(self):
        return len(self.rows)

"""
Brute-force stability over F_p for the framed Jordan quiver: enumerate every
linear subspace of F_p^n as a set of vectors and test the defining
conditions directly.
"""

import functools
import itertools


@functools.lru_cache(maxsize=None)
def subspaces(n, p=2):
    vecs = list(itertools.product(range(p), repeat=n))
    seen = set()
    out = []
    for k in range(n + 1):
        for gens in itertools.combinations(vecs, k):
            span = set()
            for cs in itertools.product(range(p), repeat=k):
                span.add(tuple(sum(c * g[i] for c, g in zip(cs, gens)) % p for i in range(n)))
            key = frozenset(span)
            if key not in seen:
                seen.add(key)
                out.append(key)
    return tuple(out)


def apply(M, v, p):
    return tuple(sum(M[r][c] * v[c] for c in range(len(v))) % p for r in range(len(M)))


def columns(M, p):
    if not M or not M[0]:
        return []
    return [tuple(M[r][c] % p for r in range(len(M))) for c in range(len(M[0]))]


def oracle_stable(n, mats, sign, p=2):
    """mats: x, y (n x n), i (n x w), j (w x n) as integer lists."""
    if n == 0:
        return True
    B = [mats["x"], mats["y"]]
    full = frozenset(itertools.product(range(p), repeat=n))
    zero = (0,) * n
    for S in subspaces(n, p):
        if not all(apply(M, v, p) in S for M in B for v in S):
            continue
        if sign < 0:
            # a proper invariant subspace containing Im i destabilizes
            if S != full and all(c in S for c in columns(mats["i"], p)):
                return False
        else:
            # a nonzero invariant subspace inside ker j destabilizes
            if S != {zero} and all(not any(apply(mats["j"], v, p)) for v in S):
                return False
    return True

"""Brute-force reference implementations on plain Python sets.

Nothing here imports the package: these are the independent side of every
equivalence test.
"""

from collections import Counter
from itertools import combinations, product


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = False
    if n >= 1:
        flags[1] = False
    for p in range(2, int(n ** 0.5) + 1):
        if flags[p]:
            for m in range(p * p, n + 1, p):
                flags[m] = False
    return {i for i, f in enumerate(flags) if f}


def inv_scan(x, q):
    for y in range(q):
        if x * y % q == 1:
            return y
    raise ZeroDivisionError


def sumset(A, B, q):
    return {(a + b) % q for a in A for b in B}


def prodset(A, B, q):
    return {a * b % q for a in A for b in B}


def diffset(A, B, q):
    return {(a - b) % q for a in A for b in B}


def ratioset(A, B, q):
    return {a * inv_scan(b, q) % q for a in A for b in B}


def sxi(A, xi, q):
    return {(a + b * xi) % q for a in A for b in A}


def iset_6tuple(A, q):
    return {(a1 * (a2 - a3) + a4 * (a5 - a6)) % q for a1, a2, a3, a4, a5, a6 in product(A, repeat=6)}


def repr_counts(A, xi, q):
    return dict(Counter((a + b * xi) % q for a in A for b in A))


def ratio_counts(X, Y, q):
    return dict(Counter(x * inv_scan(y, q) % q for x in X for y in Y))


def product_counts(X, Y, q):
    return dict(Counter(x * y % q for x in X for y in Y))


def closure(H, q):
    """Subgroup generated by H: all finite products of elements of H."""
    G = {1}
    while True:
        nxt = G | {g * h % q for g in G for h in H}
        if nxt == G:
            return G
        G = nxt


def subgroups(q):
    """Every subgroup of F_q^*, found as closures of single elements."""
    return {frozenset(closure({g}, q)) for g in range(1, q)}


def N_at(G, s, q):
    return sum(1 for g1 in G for g2 in G if (g1 - g2) % q == s)


def L_for(B, coset, q):
    return sum(1 for b1 in B for b2 in B if (b1 - b2) % q in coset)


def M_for(B, coset, q):
    return sum(
        1
        for b1, b2, b3, b4 in product(B, repeat=4)
        if (b1 - b2) % q == (b3 - b4) % q and (b1 - b2) % q in coset
    )


def popular(A, q):
    A = list(A)
    pp = len(prodset(A, A, q))
    rc = ratio_counts(A, A, q)
    return {s for s, r in rc.items() if 5 * pp * r >= len(A) ** 2}


def subsets(universe, lo=1, hi=None):
    """Subsets of ``universe`` with lo <= size <= hi, as sorted lists."""
    universe = sorted(universe)
    hi = len(universe) if hi is None else hi
    for k in range(lo, hi + 1):
        for combo in combinations(universe, k):
            yield list(combo)

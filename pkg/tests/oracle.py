"""Reference implementations on plain Python integers and tuples.

Nothing here touches the library's tables: rings are products of Z_n with
elements as tuples (ordered like itertools.product, which is also the
library's carrier order) and everything is decided by nested loops.
"""
from itertools import combinations, product


class ORing:
    def __init__(self, *mods):
        self.mods = mods
        self.elems = list(product(*[range(n) for n in mods]))
        self.index = {x: i for i, x in enumerate(self.elems)}
        self.zero = tuple(0 for _ in mods)
        self.one = tuple(1 % n for n in mods)

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.mods))

    def mul(self, x, y):
        return tuple((a * b) % n for a, b, n in zip(x, y, self.mods))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.mods))


class OModule:
    """A module given by element list and add/act callables."""

    def __init__(self, ring, elems, add, act, zero):
        self.ring, self.elems, self.add, self.act, self.zero = ring, elems, add, act, zero
        self.index = {x: i for i, x in enumerate(elems)}


def regular(R):
    return OModule(R, R.elems, R.add, R.mul, R.zero)


def cyclic_quotient(n, d):
    """Z_n / (d) = Z_d as a Z_n-module."""
    R = ORing(n)
    elems = [(x,) for x in range(d)]
    return OModule(R, elems, lambda x, y: ((x[0] + y[0]) % d,),
                   lambda r, x: ((r[0] * x[0]) % d,), (0,))


def closed(M, S):
    if M.zero not in S:
        return False
    for x in S:
        for y in S:
            if M.add(x, y) not in S:
                return False
        for r in M.ring.elems:
            if M.act(r, x) not in S:
                return False
    return True


def submodules(M):
    """All submodules as frozensets, brute force over subsets (|M| <= 12)."""
    others = [x for x in M.elems if x != M.zero]
    out = []
    for k in range(len(others) + 1):
        for combo in combinations(others, k):
            S = frozenset((M.zero,) + combo)
            if closed(M, S):
                out.append(S)
    return out


def ideals(R):
    return submodules(regular(R))


def colon(M, F, K=None):
    K = M.elems if K is None else K
    return frozenset(r for r in M.ring.elems if all(M.act(r, k) in F for k in K))


def two_absorbing(M, F):
    """None if F is 2-absorbing, else the least (a, b, m) by carrier index."""
    R = M.ring
    C = colon(M, F)
    for a in R.elems:
        for b in R.elems:
            ab = R.mul(a, b)
            for m in M.elems:
                if M.act(ab, m) in F and ab not in C and M.act(a, m) not in F and M.act(b, m) not in F:
                    return (R.index[a], R.index[b], M.index[m])
    return None


def prime(M, F):
    R = M.ring
    C = colon(M, F)
    for a in R.elems:
        for m in M.elems:
            if M.act(a, m) in F and a not in C and m not in F:
                return (R.index[a], M.index[m])
    return None


def two_absorbing_ideal(R, I):
    for a, b, c in product(R.elems, repeat=3):
        if R.mul(R.mul(a, b), c) in I and R.mul(a, b) not in I and \
                R.mul(a, c) not in I and R.mul(b, c) not in I:
            return (R.index[a], R.index[b], R.index[c])
    return None


def prime_ideal(R, I):
    for a, b in product(R.elems, repeat=2):
        if R.mul(a, b) in I and a not in I and b not in I:
            return (R.index[a], R.index[b])
    return None


def amalgamation(R, J, M):
    """Identity amalgamation of M (over R) along J: pairs (m, m + n), n in JM.

    Returns (ring pairs, module pairs, act) with act on pairs.
    """
    JM = set()
    for j in J:
        for m in M.elems:
            JM.add(M.act(j, m))
    # close JM under addition
    changed = True
    while changed:
        changed = False
        for x in list(JM):
            for y in list(JM):
                z = M.add(x, y)
                if z not in JM:
                    JM.add(z)
                    changed = True
    ring_pairs = sorted({(R.index[r], R.index[R.add(r, j)]) for r in R.elems for j in J})
    mod_pairs = sorted({(M.index[m], M.index[M.add(m, n)]) for m in M.elems for n in JM})
    return ring_pairs, mod_pairs, JM


def localization_size(n, S):
    """|S^-1 Z_n| by counting classes of fractions (x, s)."""
    pairs = [(x, s) for x in range(n) for s in S]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    for (x, s), (y, t) in combinations(pairs, 2):
        if any((u * (t * x - s * y)) % n == 0 for u in S):
            a, b = find((x, s)), find((y, t))
            if a != b:
                parent[b] = a
    return len({find(p) for p in pairs})

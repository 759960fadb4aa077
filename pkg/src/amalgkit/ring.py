"""Finite commutative rings with identity, their ideals and homomorphisms.

Elements are carrier indices ``0..n-1``; addition and multiplication are
dense ``n x n`` tables. Subsets of a carrier (ideals, multiplicatively closed
sets) are boolean masks.
"""
from itertools import product

import numpy as np

from .budget import charge
from .errors import (
    BadElement,
    InvalidSize,
    NotAHom,
    NotAnIdeal,
    NotARing,
    NotProper,
    SNotMultClosed,
    ZeroIdealRejected,
)
from .verdict import Verdict


def _frozen(table):
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def first_true(mask):
    """Row-major index tuple of the first True entry, or None."""
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(flat[0], mask.shape))


def compact(table):
    """Smallest-dtype copy of an index table; gathers on it are much cheaper."""
    dtype = np.int16 if table.shape[-1] < 2**15 else np.int32
    return np.ascontiguousarray(table, dtype=dtype)


def _gather2(table, rows, cols):
    """``table[rows[:, None], cols[None, :]]`` as two contiguous takes."""
    return np.take(np.take(table, rows, axis=0), cols, axis=1)


def _check_group(add, zero, exc, what):
    """Exhaustive abelian group axioms on an addition table."""
    n = add.shape[0]
    if add.shape != (n, n) or add.min() < 0 or add.max() >= n:
        raise exc("closure", None, what)
    if not 0 <= zero < n:
        raise exc("zero in range", (zero,), what)
    bad = add[zero] != np.arange(n)
    if bad.any():
        raise exc("additive identity", first_true(bad), what)
    w = first_true(add != add.T)
    if w:
        raise exc("additive commutativity", w, what)
    bad = ~(add == zero).any(axis=1)
    if bad.any():
        raise exc("additive inverse", first_true(bad), what)
    add = compact(add)
    for a in range(n):
        # (a+b)+c == a+(b+c)
        lhs = np.take(add, add[a], axis=0)
        rhs = np.take(add[a], add)
        w = first_true(lhs != rhs)
        if w:
            raise exc("additive associativity", (a,) + w, what)


class FiniteRing:
    """A finite commutative ring with identity given by Cayley tables.

    The ring axioms are checked exhaustively unless ``validate`` is false.
    ``allow_trivial`` admits the zero ring (needed when a localization
    collapses); ordinary rings require ``one != zero``.
    """

    def __init__(self, add, mul, zero=0, one=1, label="R", element_names=None, *,
                 validate=True, allow_trivial=False, budget=None, carrier=None,
                 factors=None):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.element_names = list(element_names) if element_names is not None else None
        self.carrier = carrier
        self.factors = factors
        if validate:
            self.validate(allow_trivial=allow_trivial, budget=budget)
        neg = np.argmax(self.add == self.zero, axis=1)
        neg.setflags(write=False)
        self.neg = neg
        self._name_index = None

    def __repr__(self):
        return f"FiniteRing({self.label}, size={self.size})"

    def __len__(self):
        return self.size

    @property
    def trivial(self):
        return self.size == 1

    def validate(self, allow_trivial=False, budget=None):
        n = self.add.shape[0]
        what = self.label
        charge(4 * n**3, budget, f"ring axioms of {what}")
        if n < 1:
            raise InvalidSize("empty carrier")
        _check_group(self.add, self.zero, NotARing, what)
        mul = self.mul
        if mul.shape != (n, n) or mul.min() < 0 or mul.max() >= n:
            raise NotARing("multiplicative closure", None, what)
        if self.one == self.zero and not allow_trivial:
            raise NotARing("one != zero", (self.one,), what)
        bad = mul[self.one] != np.arange(n)
        if bad.any():
            raise NotARing("multiplicative identity", first_true(bad), what)
        w = first_true(mul != mul.T)
        if w:
            raise NotARing("multiplicative commutativity", w, what)
        add, mul = compact(self.add), compact(mul)
        for a in range(n):
            row = mul[a]
            w = first_true(np.take(mul, row, axis=0) != np.take(row, mul))
            if w:
                raise NotARing("multiplicative associativity", (a,) + w, what)
            w = first_true(np.take(row, add) != _gather2(add, row, row))
            if w:
                raise NotARing("distributivity", (a,) + w, what)

    # element helpers

    def name(self, i):
        if self.element_names is None:
            return str(int(i))
        return self.element_names[int(i)]

    def index_of(self, token):
        """Resolve a display name (or plain index) to a carrier index."""
        if self._name_index is None:
            names = self.element_names or [str(i) for i in range(self.size)]
            self._name_index = {n.replace(" ", ""): i for i, n in enumerate(names)}
        key = str(token).replace(" ", "")
        if key in self._name_index:
            return self._name_index[key]
        try:
            i = int(key)
        except ValueError:
            raise BadElement(f"{token!r} is not an element of {self.label}") from None
        if not 0 <= i < self.size:
            raise BadElement(f"{i} out of range for {self.label}")
        return i

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    def power(self, a, k):
        x = self.one
        for _ in range(k):
            x = int(self.mul[x, a])
        return x

    def units(self):
        return np.flatnonzero((self.mul == self.one).any(axis=1))

    def fingerprint(self):
        return (self.size, self.zero, self.one, self.add.tobytes(), self.mul.tobytes())

    def same_as(self, other):
        return self is other or self.fingerprint() == other.fingerprint()


class CarrierSubset:
    """A subset of a finite carrier, stored as a read-only boolean mask."""

    def __init__(self, parent, members):
        self.parent = parent
        n = parent.size
        if isinstance(members, np.ndarray) and members.dtype == bool:
            mask = members.copy()
            if mask.shape != (n,):
                raise BadElement("mask has wrong length")
        else:
            mask = np.zeros(n, dtype=bool)
            for m in members:
                m = int(m)
                if not 0 <= m < n:
                    raise BadElement(f"{m} out of range for {parent.label}")
                mask[m] = True
        mask.setflags(write=False)
        self.mask = mask

    @property
    def elements(self):
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    @property
    def members(self):
        return frozenset(self.elements)

    def __len__(self):
        return int(self.mask.sum())

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return bool(self.mask[int(x)])

    def __eq__(self, other):
        if not isinstance(other, CarrierSubset):
            return NotImplemented
        return self.parent.same_as(other.parent) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.parent.size, self.mask.tobytes()))

    def __le__(self, other):
        return bool(np.all(other.mask[self.mask]))

    def __lt__(self, other):
        return self <= other and len(self) < len(other)

    @property
    def bitset(self):
        return int.from_bytes(np.packbits(self.mask, bitorder="little").tobytes(), "little")

    @property
    def sort_key(self):
        return (len(self), self.bitset)

    @property
    def proper(self):
        return not self.mask.all()

    def names(self):
        return [self.parent.name(i) for i in self.elements]

    def __repr__(self):
        shown = ", ".join(self.names())
        return f"{type(self).__name__}({{{shown}}} in {self.parent.label})"


class Ideal(CarrierSubset):
    def __init__(self, parent, members, validate=True):
        super().__init__(parent, members)
        if validate:
            check_ideal(parent, self.mask)


def check_ideal(R, mask):
    if not mask[R.zero]:
        raise NotAnIdeal("contains zero", (R.zero,), R.label)
    idx = np.flatnonzero(mask)
    sums = R.add[np.ix_(idx, idx)]
    w = first_true(~mask[sums])
    if w:
        raise NotAnIdeal("closed under addition", (int(idx[w[0]]), int(idx[w[1]])), R.label)
    prods = R.mul[:, idx]
    w = first_true(~mask[prods])
    if w:
        raise NotAnIdeal("absorbing", (w[0], int(idx[w[1]])), R.label)


class MultSet(CarrierSubset):
    def __init__(self, parent, members, validate=True):
        super().__init__(parent, members)
        if validate:
            if not self.mask[parent.one]:
                raise SNotMultClosed("contains one", (parent.one,), parent.label)
            idx = np.flatnonzero(self.mask)
            w = first_true(~self.mask[parent.mul[np.ix_(idx, idx)]])
            if w:
                raise SNotMultClosed("multiplicatively closed",
                                     (int(idx[w[0]]), int(idx[w[1]])), parent.label)


class RingHom:
    """A validated unital ring homomorphism given by its index table."""

    def __init__(self, dom, cod, map, validate=True):
        self.dom = dom
        self.cod = cod
        self.map = _frozen(map)
        if self.map.shape != (dom.size,):
            raise NotAHom("length", (len(self.map),), "ring map")
        if self.map.size and (self.map.min() < 0 or self.map.max() >= cod.size):
            raise NotAHom("codomain range", None, "ring map")
        if validate:
            self._validate()

    def _validate(self):
        A, B, h = self.dom, self.cod, self.map
        if h[A.one] != B.one:
            raise NotAHom("unital", (A.one,), "ring map")
        w = first_true(h[A.add] != B.add[h[:, None], h[None, :]])
        if w:
            raise NotAHom("additive", w, "ring map")
        w = first_true(h[A.mul] != B.mul[h[:, None], h[None, :]])
        if w:
            raise NotAHom("multiplicative", w, "ring map")

    def __call__(self, x):
        return int(self.map[x])

    def image(self):
        mask = np.zeros(self.cod.size, dtype=bool)
        mask[self.map] = True
        return mask

    def kernel(self):
        return Ideal(self.dom, self.map == self.cod.zero)

    @property
    def surjective(self):
        return bool(self.image().all())

    def __repr__(self):
        return f"RingHom({self.dom.label} -> {self.cod.label})"


def mk_ring_hom(dom, cod, map):
    return RingHom(dom, cod, map)


def identity_hom(R):
    return RingHom(R, R, np.arange(R.size), validate=False)


# constructors


def mk_zmod(n):
    if n < 2:
        raise InvalidSize(f"Z/{n} needs n >= 2")
    r = np.arange(n)
    return FiniteRing((r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n,
                      0, 1, label=f"Z{n}", validate=False)


def _tuple_names(components, sizes):
    names = []
    for t in product(*[range(s) for s in sizes]):
        parts = [c.name(i) for c, i in zip(components, t)]
        names.append("(" + ",".join(parts) + ")")
    return names


def product_ring(*rings):
    """Direct product with componentwise operations.

    The carrier index of ``(x1, ..., xk)`` is its mixed-radix value, so
    indices are ordered lexicographically by component.
    """
    if len(rings) == 1 and isinstance(rings[0], (list, tuple)):
        rings = tuple(rings[0])
    sizes = [R.size for R in rings]
    coords = np.array(list(product(*[range(s) for s in sizes])), dtype=np.int64).reshape(-1, len(rings))
    radix = np.ones(len(rings), dtype=np.int64)
    for i in range(len(rings) - 2, -1, -1):
        radix[i] = radix[i + 1] * sizes[i + 1]

    def table(op):
        cols = [getattr(R, op)[coords[:, None, i], coords[None, :, i]] for i, R in enumerate(rings)]
        return sum(c * radix[i] for i, c in enumerate(cols))

    zero = int(sum(R.zero * radix[i] for i, R in enumerate(rings)))
    one = int(sum(R.one * radix[i] for i, R in enumerate(rings)))
    label = "x".join(R.label for R in rings)
    return FiniteRing(table("add"), table("mul"), zero, one, label=label,
                      element_names=_tuple_names(rings, sizes), validate=False,
                      factors=tuple(rings))


def coset_representatives(add, mask):
    """Least-index representative of each coset ``x + H`` for the subgroup mask."""
    n = add.shape[0]
    idx = np.flatnonzero(mask)
    rep = add[:, idx].min(axis=1)
    return rep, np.unique(rep)


def quotient_ring(R, I):
    """``R/I`` on least-index coset representatives, with its projection."""
    if not isinstance(I, Ideal):
        I = Ideal(R, I)
    else:
        check_ideal(R, I.mask)
    rep, reps = coset_representatives(R.add, I.mask)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[rep]
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    names = [f"[{R.name(r)}]" for r in reps] if R.element_names else [str(int(r)) for r in reps]
    Q = FiniteRing(add, mul, proj[R.zero], proj[R.one], label=f"{R.label}/I",
                   element_names=names, validate=False, allow_trivial=True)
    Q.representatives = reps
    return Q, RingHom(R, Q, proj, validate=False)


def _closure(add, mul_or_act, mask):
    """Smallest subset containing ``mask`` closed under addition and scaling.

    ``mul_or_act`` is an ``|R| x n`` table of scalar actions on the carrier.
    """
    mask = mask.copy()
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[mul_or_act[:, idx].ravel()] = True
        idx = np.flatnonzero(new)
        new[add[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def ideal_generated(R, gens):
    mask = np.zeros(R.size, dtype=bool)
    mask[R.zero] = True
    for g in gens:
        g = int(g)
        if not 0 <= g < R.size:
            raise BadElement(f"{g} out of range for {R.label}")
        mask[g] = True
    return Ideal(R, _closure(R.add, R.mul, mask), validate=False)


def _enumerate_closed(size, zero, add, act, budget, what):
    """All subsets closed under add and the action, as sorted masks.

    Every such subset is a sum of cyclic ones, so we grow from {0} by adding
    cyclic pieces until nothing new appears.
    """
    base = np.zeros(size, dtype=bool)
    base[zero] = True
    cyclic = {}
    for x in range(size):
        m = base.copy()
        m[x] = True
        c = _closure(add, act, m)
        cyclic.setdefault(c.tobytes(), c)
    cyc = list(cyclic.values())
    seen = {base.tobytes(): base}
    frontier = [base]
    spent = 0
    while frontier:
        nxt = []
        for A in frontier:
            ia = np.flatnonzero(A)
            for C in cyc:
                if np.all(A[C]):
                    continue
                ic = np.flatnonzero(C)
                spent += ia.size * ic.size
                charge(spent, budget, what)
                S = np.zeros(size, dtype=bool)
                S[add[np.ix_(ia, ic)].ravel()] = True
                key = S.tobytes()
                if key not in seen:
                    seen[key] = S
                    nxt.append(S)
        frontier = nxt
    return list(seen.values())


def enumerate_ideals(R, budget=None):
    masks = _enumerate_closed(R.size, R.zero, R.add, R.mul, budget, f"ideals of {R.label}")
    ideals = [Ideal(R, m, validate=False) for m in masks]
    return sorted(ideals, key=lambda I: I.sort_key)


# predicates


def as_ideal(R, I):
    """Accept an :class:`Ideal` of ``R`` or anything listing its members."""
    if isinstance(I, Ideal):
        if I.parent is not R and not I.parent.same_as(R):
            raise ValueError("ideal belongs to another ring")
        return I
    return Ideal(R, I)


def _require_proper(I, what):
    if I.mask.all():
        raise NotProper(f"{what} must be proper")


def is_prime_ideal(R, I, budget=None):
    I = as_ideal(R, I)
    _require_proper(I, "ideal")
    loops = charge(R.size**2, budget, "prime ideal check")
    inI = I.mask
    bad = inI[R.mul] & ~inI[:, None] & ~inI[None, :]
    w = first_true(bad)
    if w:
        return Verdict(False, w, ("a", "b"), {"loops": loops})
    return Verdict(True, stats={"loops": loops})


def is_2absorbing_ideal(R, I, strict_nonzero=False, budget=None):
    """abc in I implies ab, ac or bc in I; witness (a, b, c) on failure."""
    I = as_ideal(R, I)
    _require_proper(I, "ideal")
    if strict_nonzero and len(I) == 1:
        raise ZeroIdealRejected("strict 2-absorbing check rejects the zero ideal")
    n = R.size
    loops = charge(n**3, budget, "2-absorbing ideal check")
    inI = I.mask
    mul = R.mul
    pair_in = inI[mul]
    for a in range(n):
        ab = mul[a]
        hit = inI[mul[ab]] & ~pair_in[a][:, None] & ~pair_in[a][None, :] & ~pair_in
        w = first_true(hit)
        if w:
            return Verdict(False, (a,) + w, ("a", "b", "c"), {"loops": loops})
    return Verdict(True, stats={"loops": loops})


def radical_ideal(R, I):
    """``{r : r^k in I for some k <= |R|}``."""
    inI = as_ideal(R, I).mask
    x = np.full(R.size, R.one)
    rad = np.zeros(R.size, dtype=bool)
    base = np.arange(R.size)
    for _ in range(R.size):
        x = R.mul[x, base]
        rad |= inI[x]
    return Ideal(R, rad, validate=False)


# subrings and homs


def subring(R, members, label=None):
    """The subring on ``members`` (kept in increasing index order) and its inclusion."""
    mask = np.zeros(R.size, dtype=bool)
    mask[list(members) if not isinstance(members, np.ndarray) else members] = True
    idx = np.flatnonzero(mask)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    add = pos[R.add[np.ix_(idx, idx)]]
    mul = pos[R.mul[np.ix_(idx, idx)]]
    if (add < 0).any() or (mul < 0).any() or not mask[R.one]:
        raise NotARing("subring closure", None, label or R.label)
    names = [R.name(i) for i in idx]
    S = FiniteRing(add, mul, pos[R.zero], pos[R.one], label=label or f"sub({R.label})",
                   element_names=names, validate=False, allow_trivial=True)
    return S, RingHom(S, R, idx, validate=False)


def subring_f_plus_J(f, J):
    """The subring ``f(R1) + J`` of the codomain, with its inclusion."""
    B = f.cod
    img = np.unique(f.map)
    members = np.unique(B.add[np.ix_(img, np.flatnonzero(J.mask))])
    return subring(B, members, label=f"f({f.dom.label})+J")


def additive_generators(add, zero):
    """Greedy generating set of the additive group (least indices first)."""
    n = add.shape[0]
    H = np.zeros(n, dtype=bool)
    H[zero] = True
    gens = []
    for x in range(n):
        if H[x]:
            continue
        gens.append(x)
        while True:
            idx = np.flatnonzero(H)
            new = H.copy()
            new[add[np.ix_(idx, gens)].ravel()] = True
            if np.array_equal(new, H):
                break
            H = new
    return gens


def _extend_additively(A, B, gens, images):
    """Additive extension of ``gens -> images``; None if inconsistent."""
    h = np.full(A.size, -1, dtype=np.int64)
    h[A.zero] = B.zero
    queue = [A.zero]
    while queue:
        x = queue.pop()
        for g, y in zip(gens, images):
            z = A.add[x, g]
            v = B.add[h[x], y]
            if h[z] < 0:
                h[z] = v
                queue.append(z)
            elif h[z] != v:
                return None
    return h


def enumerate_ring_homs(A, B):
    """Every unital ring homomorphism A -> B, by brute force over generator images."""
    gens = additive_generators(A.add, A.zero)
    homs = []
    for images in product(range(B.size), repeat=len(gens)):
        h = _extend_additively(A, B, gens, images)
        if h is None:
            continue
        try:
            homs.append(RingHom(A, B, h))
        except NotAHom:
            continue
    return homs


def mult_closure(R, gens):
    mask = np.zeros(R.size, dtype=bool)
    mask[R.one] = True
    mask[list(gens)] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(new, mask):
            return MultSet(R, mask, validate=False)
        mask = new


def enumerate_mult_sets(R, max_gens=2):
    """Distinct multiplicatively closed sets generated by at most ``max_gens`` elements."""
    from itertools import combinations

    seen = {}
    for k in range(max_gens + 1):
        for gens in combinations(range(R.size), k):
            S = mult_closure(R, gens)
            seen.setdefault(S.mask.tobytes(), S)
    return sorted(seen.values(), key=lambda S: S.sort_key)

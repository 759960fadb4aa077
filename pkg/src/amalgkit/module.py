"""Finite unital modules, submodules, module homomorphisms and the
submodule-level predicates (prime, 2-absorbing, primary).

A module over a :class:`FiniteRing` ``R`` is an addition table on its own
carrier plus an ``|R| x |M|`` action table ``act[r, m] = r*m``.
"""
from itertools import combinations, product

import numpy as np

from .budget import charge
from .errors import (
    BadElement,
    EmptySubset,
    IncompatibleHom,
    NotAChain,
    NotAHom,
    NotAModule,
    NotASubmodule,
    NotProper,
    UnionNotProper,
)
from .ring import (
    CarrierSubset,
    Ideal,
    RingHom,
    _check_group,
    _closure,
    _gather2,
    compact,
    _enumerate_closed,
    _frozen,
    _tuple_names,
    check_ideal,
    coset_representatives,
    first_true,
    identity_hom,
    product_ring,
    radical_ideal,
)
from .verdict import Verdict


class FiniteModule:
    def __init__(self, ring, add, act, zero=0, label="M", element_names=None, *,
                 validate=True, budget=None, carrier=None, factors=None):
        self.ring = ring
        self.add = _frozen(add)
        self.act = _frozen(act)
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.label = label
        self.element_names = list(element_names) if element_names is not None else None
        self.carrier = carrier
        self.factors = factors
        if validate:
            self.validate(budget)
        neg = np.argmax(self.add == self.zero, axis=1)
        neg.setflags(write=False)
        self.neg = neg
        self._name_index = None

    def __repr__(self):
        return f"FiniteModule({self.label} over {self.ring.label}, size={self.size})"

    def __len__(self):
        return self.size

    def validate(self, budget=None):
        R = self.ring
        n, m = R.size, self.add.shape[0]
        what = self.label
        charge(m**3 + R.size * m * m + 2 * n * n * m, budget, f"module axioms of {what}")
        _check_group(self.add, self.zero, NotAModule, what)
        act, add = self.act, self.add
        if act.shape != (n, m) or act.min() < 0 or act.max() >= m:
            raise NotAModule("action table shape", None, what)
        act, add = compact(act), compact(add)
        radd, rmul = compact(R.add), compact(R.mul)
        bad = act[R.one] != np.arange(m)
        if bad.any():
            raise NotAModule("unital", first_true(bad), what)
        for r in range(n):
            row = act[r]
            w = first_true(np.take(row, add) != _gather2(add, row, row))
            if w:
                raise NotAModule("r(x+y) = rx+ry", (r,) + w, what)
            # add[row[m], act[s, m]] for every (s, m)
            w = first_true(np.take(act, radd[r], axis=0) != np.take(add.ravel(), row.astype(np.int32)[None, :] * m + act))
            if w:
                raise NotAModule("(r+s)x = rx+sx", (r,) + w, what)
            w = first_true(np.take(act, rmul[r], axis=0) != np.take(row, act))
            if w:
                raise NotAModule("(rs)x = r(sx)", (r,) + w, what)

    def name(self, i):
        if self.element_names is None:
            return str(int(i))
        return self.element_names[int(i)]

    def index_of(self, token):
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

    def fingerprint(self):
        return (self.ring.fingerprint(), self.zero, self.add.tobytes(), self.act.tobytes())

    def same_as(self, other):
        return self is other or self.fingerprint() == other.fingerprint()

    def whole(self):
        return Submodule(self, np.ones(self.size, dtype=bool), validate=False)

    def zero_submodule(self):
        return Submodule(self, [self.zero], validate=False)


class Submodule(CarrierSubset):
    def __init__(self, parent, members, validate=True):
        super().__init__(parent, members)
        if validate:
            check_submodule(parent, self.mask)


def check_submodule(M, mask):
    if not mask[M.zero]:
        raise NotASubmodule("contains zero", (M.zero,), M.label)
    idx = np.flatnonzero(mask)
    w = first_true(~mask[M.add[np.ix_(idx, idx)]])
    if w:
        raise NotASubmodule("closed under addition", (int(idx[w[0]]), int(idx[w[1]])), M.label)
    w = first_true(~mask[M.act[:, idx]])
    if w:
        raise NotASubmodule("closed under scalars", (w[0], int(idx[w[1]])), M.label)


def as_submodule(M, F):
    if isinstance(F, Submodule):
        if F.parent is not M and not F.parent.same_as(M):
            raise NotASubmodule("belongs to another module", None, M.label)
        check_submodule(M, F.mask)
        return F
    return Submodule(M, F)


class ModuleHom:
    """``map(x+y) = map(x)+map(y)`` and ``map(r*x) = f(r)*map(x)``."""

    def __init__(self, f, dom, cod, map, validate=True):
        if not f.dom.same_as(dom.ring) or not f.cod.same_as(cod.ring):
            raise IncompatibleHom("ring map does not match the module rings")
        self.f = f
        self.dom = dom
        self.cod = cod
        self.map = _frozen(map)
        if self.map.shape != (dom.size,):
            raise NotAHom("length", (len(self.map),), "module map")
        if self.map.min() < 0 or self.map.max() >= cod.size:
            raise NotAHom("codomain range", None, "module map")
        if validate:
            self._validate()

    def _validate(self):
        h, M, N = self.map, self.dom, self.cod
        w = first_true(h[M.add] != N.add[h[:, None], h[None, :]])
        if w:
            raise NotAHom("additive", w, "module map")
        w = first_true(h[M.act] != N.act[self.f.map[:, None], h[None, :]])
        if w:
            raise NotAHom("scalar compatibility", w, "module map")

    def __call__(self, x):
        return int(self.map[x])

    @property
    def surjective(self):
        hit = np.zeros(self.cod.size, dtype=bool)
        hit[self.map] = True
        return bool(hit.all())

    @property
    def injective(self):
        return np.unique(self.map).size == self.dom.size

    def kernel(self):
        return Submodule(self.dom, self.map == self.cod.zero, validate=False)

    def __repr__(self):
        return f"ModuleHom({self.dom.label} -> {self.cod.label})"


def mk_module_hom(f, M, N, map):
    return ModuleHom(f, M, N, map)


# constructors


def regular_module(R):
    return FiniteModule(R, R.add, R.mul, R.zero, label=R.label,
                        element_names=R.element_names, validate=False)


def zero_module(R):
    return FiniteModule(R, [[0]], np.zeros((R.size, 1), dtype=np.int64), 0,
                        label="0", validate=False)


def _combine(mods, ring):
    sizes = [M.size for M in mods]
    coords = np.array(list(product(*[range(s) for s in sizes])), dtype=np.int64).reshape(-1, len(mods))
    radix = np.ones(len(mods), dtype=np.int64)
    for i in range(len(mods) - 2, -1, -1):
        radix[i] = radix[i + 1] * sizes[i + 1]
    add = sum(M.add[coords[:, None, i], coords[None, :, i]] * radix[i] for i, M in enumerate(mods))
    zero = int(sum(M.zero * radix[i] for i, M in enumerate(mods)))
    return coords, radix, add, zero, _tuple_names(mods, sizes)


def product_module(*mods):
    """``M1 x ... x Mk`` over ``R1 x ... x Rk`` acting componentwise."""
    if len(mods) == 1 and isinstance(mods[0], (list, tuple)):
        mods = tuple(mods[0])
    ring = product_ring(*[M.ring for M in mods])
    rcoords = np.array(list(product(*[range(M.ring.size) for M in mods])),
                       dtype=np.int64).reshape(-1, len(mods))
    coords, radix, add, zero, names = _combine(mods, ring)
    act = sum(M.act[rcoords[:, None, i], coords[None, :, i]] * radix[i] for i, M in enumerate(mods))
    return FiniteModule(ring, add, act, zero, label="x".join(M.label for M in mods),
                        element_names=names, validate=False, factors=tuple(mods))


def direct_sum(*mods):
    """``M1 + ... + Mk`` over their common ring (diagonal scalar action)."""
    ring = mods[0].ring
    if any(not M.ring.same_as(ring) for M in mods):
        raise IncompatibleHom("direct sum needs a common ring")
    coords, radix, add, zero, names = _combine(mods, ring)
    act = sum(M.act[:, coords[:, i]] * radix[i] for i, M in enumerate(mods))
    return FiniteModule(ring, add, act, zero, label="+".join(M.label for M in mods),
                        element_names=names, validate=False, factors=tuple(mods))


def restrict_scalars(N, f):
    """View an ``R2``-module as an ``R1``-module through ``f: R1 -> R2``."""
    if not f.cod.same_as(N.ring):
        raise IncompatibleHom("f must land in the ring of N")
    return FiniteModule(f.dom, N.add, N.act[f.map], N.zero, label=f"{N.label}|{f.dom.label}",
                        element_names=N.element_names, validate=False)


def quotient_module(M, F):
    """``M/F`` on least-index coset representatives, with its projection."""
    F = as_submodule(M, F)
    rep, reps = coset_representatives(M.add, F.mask)
    pos = np.full(M.size, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[rep]
    add = proj[M.add[np.ix_(reps, reps)]]
    act = proj[M.act[:, reps]]
    names = [M.name(r) for r in reps]
    if M.element_names is not None:
        names = [f"[{n}]" for n in names]
    Q = FiniteModule(M.ring, add, act, proj[M.zero], label=f"{M.label}/F",
                     element_names=names, validate=False)
    Q.representatives = reps
    return Q, ModuleHom(identity_hom(M.ring), M, Q, proj, validate=False)


def submodule_generated(M, subset):
    mask = np.zeros(M.size, dtype=bool)
    mask[M.zero] = True
    for x in subset:
        x = int(x)
        if not 0 <= x < M.size:
            raise BadElement(f"{x} out of range for {M.label}")
        mask[x] = True
    return Submodule(M, _closure(M.add, M.act, mask), validate=False)


def enumerate_submodules(M, budget=None):
    """All submodules sorted by (size, bitset); includes {0} and M."""
    masks = _enumerate_closed(M.size, M.zero, M.add, M.act, budget, f"submodules of {M.label}")
    return sorted((Submodule(M, m, validate=False) for m in masks), key=lambda F: F.sort_key)


# residuals and friends


def residual_ideal(F, K):
    """``(F :_R K) = {r : rK ⊆ F}``."""
    M = F.parent
    kmask = K.mask if isinstance(K, CarrierSubset) else None
    if kmask is None:
        kmask = np.zeros(M.size, dtype=bool)
        kmask[[int(k) for k in K]] = True
    if not kmask.any():
        raise EmptySubset("residual by an empty subset")
    inside = F.mask[M.act[:, kmask]].all(axis=1)
    return Ideal(M.ring, inside)


def residual_by_ideal(F, I):
    """``(F :_M I) = {m : Im ⊆ F}``."""
    M = F.parent
    if not isinstance(I, Ideal):
        I = Ideal(M.ring, I)
    else:
        check_ideal(M.ring, I.mask)
    inside = F.mask[M.act[I.mask]].all(axis=0)
    return Submodule(M, inside)


def colon_by_element(F, r):
    """``(F :_M r) = {m : rm ∈ F}``."""
    M = F.parent
    return Submodule(M, F.mask[M.act[int(r)]])


def ideal_times_module(J, N):
    """The submodule ``JN`` generated by all products ``j*n``."""
    if not J.parent.same_as(N.ring):
        raise IncompatibleHom("J must be an ideal of the ring of N")
    mask = np.zeros(N.size, dtype=bool)
    mask[N.act[J.mask].ravel()] = True
    mask[N.zero] = True
    return Submodule(N, _closure(N.add, N.act, mask), validate=False)


def annihilator(M):
    return Ideal(M.ring, (M.act == M.zero).all(axis=1))


def zero_divisors_on_quotient(M, F):
    """``Z(M/F) = {r : rm ∈ F for some m ∉ F}`` as a boolean mask over R."""
    F = as_submodule(M, F)
    _require_proper(F)
    outside = ~F.mask
    return (F.mask[M.act] & outside[None, :]).any(axis=1)


def _require_proper(F):
    if F.mask.all():
        raise NotProper("submodule must be proper")


# predicates


def is_prime_submodule(M, F, budget=None):
    F = as_submodule(M, F)
    _require_proper(F)
    loops = charge(M.ring.size * M.size, budget, "prime submodule check")
    colon = residual_ideal(F, M.whole()).mask
    bad = F.mask[M.act] & ~colon[:, None] & ~F.mask[None, :]
    w = first_true(bad)
    if w:
        return Verdict(False, w, ("a", "m"), {"loops": loops})
    return Verdict(True, stats={"loops": loops})


def is_2absorbing_submodule(M, F, budget=None):
    """abm ∈ F implies ab ∈ (F:M), am ∈ F or bm ∈ F; witness (a, b, m)."""
    F = as_submodule(M, F)
    _require_proper(F)
    R = M.ring
    loops = charge(R.size * R.size * M.size, budget, "2-absorbing submodule check")
    inF = F.mask
    colon = residual_ideal(F, M.whole()).mask
    act_in = inF[M.act]
    for a in range(R.size):
        ab = R.mul[a]
        hit = inF[M.act[ab]] & ~colon[ab][:, None] & ~act_in[a][None, :] & ~act_in
        w = first_true(hit)
        if w:
            return Verdict(False, (a,) + w, ("a", "b", "m"), {"loops": loops})
    return Verdict(True, stats={"loops": loops})


def is_primary_submodule(M, F, budget=None):
    """am ∈ F, m ∉ F implies a ∈ rad(F:M); reports P = rad(F:M)."""
    F = as_submodule(M, F)
    _require_proper(F)
    loops = charge(M.ring.size * (M.size + M.ring.size), budget, "primary submodule check")
    P = radical_ideal(M.ring, residual_ideal(F, M.whole()))
    bad = F.mask[M.act] & ~F.mask[None, :] & ~P.mask[:, None]
    w = first_true(bad)
    if w:
        return Verdict(False, w, ("a", "m"), {"loops": loops}, {"P": P})
    return Verdict(True, stats={"loops": loops}, extra={"P": P})


def prime_submodules(M, budget=None):
    return [F for F in enumerate_submodules(M, budget) if F.proper and is_prime_submodule(M, F, budget)]


def radical_submodule(M, F, budget=None):
    """Intersection of the prime submodules containing F (M when there are none)."""
    F = as_submodule(M, F)
    _require_proper(F)
    mask = np.ones(M.size, dtype=bool)
    for P in prime_submodules(M, budget):
        if F <= P:
            mask &= P.mask
    return Submodule(M, mask, validate=False)


def is_multiplication_module(M, budget=None):
    """Every submodule F equals (F:M)M; witness is the first F that does not."""
    subs = enumerate_submodules(M, budget)
    whole = M.whole()
    for F in subs:
        if ideal_times_module(residual_ideal(F, whole), M) != F:
            return Verdict(False, (F,), ("F",), {"submodules": len(subs)})
    return Verdict(True, stats={"submodules": len(subs)})


def is_cyclic(M):
    """M = Rm for some m; ``extra['generator']`` is the least such m."""
    full = np.array([np.unique(M.act[:, m]).size == M.size for m in range(M.size)])
    if full.any():
        return Verdict(True, extra={"generator": int(np.argmax(full))})
    return Verdict(False, (), ())


# chains


def _validate_chain(chain):
    if not chain:
        raise NotAChain("empty chain")
    for A, B in combinations(chain, 2):
        if not (A <= B or B <= A):
            raise NotAChain(f"{A!r} and {B!r} are incomparable")


def intersect_chain(chain):
    _validate_chain(chain)
    mask = np.logical_and.reduce([F.mask for F in chain])
    return Submodule(chain[0].parent, mask)


def union_chain(chain):
    _validate_chain(chain)
    mask = np.logical_or.reduce([F.mask for F in chain])
    if mask.all():
        raise UnionNotProper("union of the chain is the whole module")
    return Submodule(chain[0].parent, mask)


# images and preimages


def image_submodule(phi, F):
    """``phi(F)``; its parent is the codomain when the image is closed under the
    codomain ring, otherwise the codomain viewed over the domain ring."""
    mask = np.zeros(phi.cod.size, dtype=bool)
    mask[phi.map[F.mask]] = True
    N = phi.cod
    if F.mask[phi.dom.zero] and not (~mask[N.act[:, mask]]).any():
        return Submodule(N, mask)
    return Submodule(restrict_scalars(N, phi.f), mask)


def preimage_submodule(phi, N2):
    return Submodule(phi.dom, N2.mask[phi.map])


def module_generators(M):
    gens = []
    H = np.zeros(M.size, dtype=bool)
    H[M.zero] = True
    for x in range(M.size):
        if not H[x]:
            gens.append(x)
            H[x] = True
            H = _closure(M.add, M.act, H)
    return gens


def enumerate_module_homs(f, M, N):
    """Every module homomorphism M -> N over f (generator images brute forced)."""
    if not f.dom.same_as(M.ring) or not f.cod.same_as(N.ring):
        raise IncompatibleHom("f does not match the module rings")
    gens = module_generators(M)
    R = M.ring
    out = []
    for images in product(range(N.size), repeat=len(gens)):
        h = np.full(M.size, -1, dtype=np.int64)
        h[M.zero] = N.zero
        queue = [M.zero]
        ok = True
        while queue and ok:
            x = queue.pop()
            for g, y in zip(gens, images):
                for r in range(R.size):
                    z = M.add[x, M.act[r, g]]
                    v = N.add[h[x], N.act[f.map[r], y]]
                    if h[z] < 0:
                        h[z] = v
                        queue.append(z)
                    elif h[z] != v:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            continue
        try:
            out.append(ModuleHom(f, M, N, h))
        except NotAHom:
            continue
    return out

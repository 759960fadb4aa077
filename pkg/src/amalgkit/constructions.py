"""Composite objects built from ring/module data.

Amalgamated rings and modules along an ideal, their distinguished
submodules and the projection onto ``phi(M)+JN``, duplications,
idealizations and localizations. Every construction returns ordinary
:class:`FiniteRing` / :class:`FiniteModule` values whose carriers are pairs
ordered lexicographically.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AxiomViolation,
    IMNotInF,
    IncompatibleHom,
    NotAModule,
    NotASubmodule,
)
from .module import (
    FiniteModule,
    ModuleHom,
    Submodule,
    as_submodule,
    ideal_times_module,
    quotient_module,
)
from .ring import (
    FiniteRing,
    Ideal,
    MultSet,
    RingHom,
    check_ideal,
    first_true,
    subring,
    subring_f_plus_J,
)


@dataclass(frozen=True)
class PairCarrier:
    """Element set of a pair construction; index ``i`` is ``members[i]``."""

    base_sizes: tuple
    first: np.ndarray
    second: np.ndarray
    lookup: np.ndarray = field(repr=False)

    @classmethod
    def from_pairs(cls, first, second, sizes):
        codes = np.unique(np.asarray(first, dtype=np.int64) * sizes[1] + np.asarray(second, dtype=np.int64))
        lookup = np.full(sizes[0] * sizes[1], -1, dtype=np.int64)
        lookup[codes] = np.arange(codes.size)
        first, second = np.divmod(codes, sizes[1])
        for a in (first, second, lookup):
            a.setflags(write=False)
        return cls(tuple(sizes), first, second, lookup)

    def __len__(self):
        return int(self.first.size)

    @property
    def members(self):
        return list(zip(self.first.tolist(), self.second.tolist()))

    def index(self, a, b):
        """Construction-local index of the pair(s) ``(a, b)``; -1 when absent."""
        return self.lookup[np.asarray(a) * self.base_sizes[1] + np.asarray(b)]

    def index_of(self, pair):
        i = int(self.index(*pair))
        if i < 0:
            raise KeyError(pair)
        return i

    def names(self, left, right):
        return [f"({left.name(a)},{right.name(b)})" for a, b in self.members]


def _pair_tables(carrier, left, right):
    """Componentwise tables on a pair carrier; raises if not closed."""
    A, B = carrier.first, carrier.second

    def table(op):
        t = carrier.index(getattr(left, op)[A[:, None], A[None, :]],
                          getattr(right, op)[B[:, None], B[None, :]])
        if (t < 0).any():
            raise AxiomViolation(f"{op} closure", first_true(t < 0), "pair carrier")
        return t

    return table


def amalgamated_ring(f, J, validate=True, budget=None):
    """``R1 ⋈^f J = {(r, f(r)+j)}`` as a subring of ``R1 x R2``."""
    R1, R2 = f.dom, f.cod
    if not isinstance(J, Ideal):
        J = Ideal(R2, J)
    check_ideal(R2, J.mask)
    j = np.flatnonzero(J.mask)
    r = np.arange(R1.size)
    first = np.repeat(r, j.size)
    second = R2.add[f.map[first], np.tile(j, R1.size)]
    carrier = PairCarrier.from_pairs(first, second, (R1.size, R2.size))
    if len(carrier) != R1.size * j.size:
        raise AxiomViolation("|R1 ⋈ J| = |R1||J|", (len(carrier),), "amalgamated ring")
    table = _pair_tables(carrier, R1, R2)
    zero = int(carrier.index(R1.zero, R2.zero))
    one = int(carrier.index(R1.one, R2.one))
    return FiniteRing(table("add"), table("mul"), zero, one, label=f"{R1.label}⋈J",
                      element_names=carrier.names(R1, R2), validate=validate,
                      budget=budget, carrier=carrier, factors=(R1, R2))


@dataclass
class AmalgContext:
    f: RingHom
    J: Ideal
    phi: ModuleHom
    M: FiniteModule
    N: FiniteModule
    JN: Submodule
    amalg_ring: FiniteRing
    amalg_module: FiniteModule
    subring: FiniteRing
    subring_incl: RingHom
    target: FiniteModule
    target_incl: np.ndarray

    @property
    def ring_carrier(self):
        return self.amalg_ring.carrier

    @property
    def module_carrier(self):
        return self.amalg_module.carrier

    def target_index(self, y):
        """Index in the target module of the N-element(s) ``y`` (-1 if outside)."""
        return self._target_pos[np.asarray(y)]

    def __post_init__(self):
        pos = np.full(self.N.size, -1, dtype=np.int64)
        pos[self.target_incl] = np.arange(self.target_incl.size)
        self._target_pos = pos


def amalgamated_module(f, J, phi, validate=True, budget=None):
    """Build ``M ⋈^phi JN`` over ``R1 ⋈^f J`` together with ``phi(M)+JN``.

    The action is computed componentwise and then compared on every
    (scalar, element) pair with the expanded form
    ``(rm, phi(rm) + f(r)n + j phi(m) + jn)``.
    """
    M, N = phi.dom, phi.cod
    if not phi.f.dom.same_as(f.dom) or not phi.f.cod.same_as(f.cod) \
            or not np.array_equal(phi.f.map, f.map):
        raise IncompatibleHom("phi is not a module map over f")
    R1, R2 = f.dom, f.cod
    if not isinstance(J, Ideal):
        J = Ideal(R2, J)
    ring = amalgamated_ring(f, J, validate=validate, budget=budget)
    JN = ideal_times_module(J, N)
    n = np.flatnonzero(JN.mask)
    m = np.arange(M.size)
    first = np.repeat(m, n.size)
    second = N.add[phi.map[first], np.tile(n, M.size)]
    carrier = PairCarrier.from_pairs(first, second, (M.size, N.size))
    if len(carrier) != M.size * n.size:
        raise AxiomViolation("|M ⋈ JN| = |M||JN|", (len(carrier),), "amalgamated module")
    A, B = carrier.first, carrier.second
    add = carrier.index(M.add[A[:, None], A[None, :]], N.add[B[:, None], B[None, :]])
    rr, ss = ring.carrier.first, ring.carrier.second
    rm = M.act[rr[:, None], A[None, :]]
    sy = N.act[ss[:, None], B[None, :]]
    act = carrier.index(rm, sy)
    if (add < 0).any() or (act < 0).any():
        raise NotAModule("closure", None, "amalgamated module")

    # expanded scalar formula, evaluated independently of the componentwise one
    jj = R2.add[ss, R2.neg[f.map[rr]]]                      # j = s - f(r)
    nn = N.add[B, N.neg[phi.map[A]]]                        # n = y - phi(m)
    fr = f.map[rr]
    terms = N.add[phi.map[rm], N.act[fr[:, None], nn[None, :]]]
    terms = N.add[terms, N.act[jj[:, None], phi.map[A][None, :]]]
    terms = N.add[terms, N.act[jj[:, None], nn[None, :]]]
    w = first_true(terms != sy)
    if w:
        raise NotAModule("expanded scalar formula", w, "amalgamated module")

    module = FiniteModule(ring, add, act, int(carrier.index(M.zero, N.zero)),
                          label=f"{M.label}⋈JN", element_names=carrier.names(M, N),
                          validate=validate, budget=budget, carrier=carrier, factors=(M, N))
    S, incl = subring_f_plus_J(f, J)
    target, tincl = _target(N, phi, JN, S, incl, validate, budget)
    return AmalgContext(f, J, phi, M, N, JN, ring, module, S, incl, target, tincl)


def _target(N, phi, JN, S, incl, validate, budget):
    members = np.unique(N.add[np.unique(phi.map)[:, None], np.flatnonzero(JN.mask)[None, :]])
    pos = np.full(N.size, -1, dtype=np.int64)
    pos[members] = np.arange(members.size)
    add = pos[N.add[np.ix_(members, members)]]
    act = pos[N.act[incl.map][:, members]]
    if (add < 0).any() or (act < 0).any():
        raise NotAModule("phi(M)+JN closure", None, "target")
    names = [N.name(y) for y in members]
    T = FiniteModule(S, add, act, pos[N.zero], label="phi(M)+JN", element_names=names,
                     validate=validate, budget=budget)
    members.setflags(write=False)
    return T, members


def target_module(ctx):
    return ctx.target


def amalgam_submodule(ctx, F):
    """``F ⋈^phi JN = {(m, phi(m)+n) : m ∈ F}``."""
    F = as_submodule(ctx.M, F)
    return Submodule(ctx.amalg_module, F.mask[ctx.module_carrier.first])


def bar_submodule(ctx, N2):
    """``{(m, phi(m)+n) : phi(m)+n ∈ N2}`` for a submodule N2 of the target."""
    N2 = as_submodule(ctx.target, N2)
    return Submodule(ctx.amalg_module, N2.mask[ctx.target_index(ctx.module_carrier.second)])


def projection_p_gamma(ctx):
    """``(m, phi(m)+n) -> phi(m)+n`` over the ring map ``(r, f(r)+j) -> f(r)+j``.

    Returns the validated hom and its kernel, after checking that the kernel
    is ``phi^{-1}(JN) x {0}``.
    """
    spos = np.full(ctx.f.cod.size, -1, dtype=np.int64)
    spos[ctx.subring_incl.map] = np.arange(ctx.subring.size)
    g = RingHom(ctx.amalg_ring, ctx.subring, spos[ctx.ring_carrier.second])
    p = ModuleHom(g, ctx.amalg_module, ctx.target, ctx.target_index(ctx.module_carrier.second))
    kernel = p.kernel()
    C = ctx.module_carrier
    expected = ctx.JN.mask[ctx.phi.map[C.first]] & (C.second == ctx.N.zero)
    pre = np.flatnonzero(ctx.JN.mask[ctx.phi.map])
    if not np.array_equal(kernel.mask, expected) or \
            not np.array_equal(np.sort(C.first[kernel.mask]), pre):
        raise AxiomViolation("Ker(p) = phi^-1(JN) x {0}", None, "p_gamma")
    return p, kernel


def first_projection(ctx):
    """The ring map ``R1 ⋈^f J -> R1``."""
    return RingHom(ctx.amalg_ring, ctx.f.dom, ctx.ring_carrier.first)


def quotient_isomorphism(ctx, F):
    """The induced map ``(M ⋈ JN)/(F ⋈ JN) -> M/F`` sending the class of
    ``(m, phi(m)+n)`` to the class of ``m``.

    Returns ``(mu, Q_amalg, Q_M)``; ``mu`` is validated as a module hom over
    the first projection and checked to be bijective.
    """
    F = as_submodule(ctx.M, F)
    Qa, pa = quotient_module(ctx.amalg_module, amalgam_submodule(ctx, F))
    Qm, pm = quotient_module(ctx.M, F)
    full = pm.map[ctx.module_carrier.first]
    mu = np.full(Qa.size, -1, dtype=np.int64)
    mu[pa.map] = full
    if not np.array_equal(mu[pa.map], full):
        raise AxiomViolation("well defined on cosets", None, "quotient isomorphism")
    hom = ModuleHom(first_projection(ctx), Qa, Qm, mu)
    if not (hom.injective and hom.surjective):
        raise AxiomViolation("bijective", None, "quotient isomorphism")
    return hom, Qa, Qm


# duplication


def duplication_module(R, J, M, validate=True, budget=None):
    """``M ⋈ J = {(m, m') : m - m' ∈ JM}`` as the identity amalgamation."""
    from .ring import identity_hom
    f = identity_hom(R)
    phi = ModuleHom(f, M, M, np.arange(M.size), validate=False)
    ctx = amalgamated_module(f, J, phi, validate=validate, budget=budget)
    JM = ctx.JN.mask
    a, b = np.meshgrid(np.arange(M.size), np.arange(M.size), indexing="ij")
    diff = M.add[a, M.neg[b]]
    want = np.flatnonzero(JM[diff].ravel())
    got = ctx.module_carrier.first * M.size + ctx.module_carrier.second
    if not np.array_equal(np.sort(got), want):
        raise AxiomViolation("duplication carrier = amalgamation carrier", None, "duplication")
    return ctx


@dataclass
class DupSubmodules:
    bowtie: Submodule = None
    bar: Submodule = None
    failures: list = field(default_factory=list)


def dup_submodules(ctx, Nsub):
    """``N ⋈ J = {(n, m) : n ∈ N, n-m ∈ JM}`` and ``N̄ = {(m, n) : n ∈ N, m-n ∈ JM}``.

    Both are validated as submodules of the duplication; closure failures
    are collected rather than raised.
    """
    M = ctx.M
    Nsub = as_submodule(M, Nsub)
    C = ctx.module_carrier
    out = DupSubmodules()
    for attr, coord in (("bowtie", C.first), ("bar", C.second)):
        try:
            setattr(out, attr, Submodule(ctx.amalg_module, Nsub.mask[coord]))
        except NotASubmodule as exc:
            out.failures.append((attr, exc))
    return out


# idealization


def idealization(R, M, validate=True, budget=None):
    """``R(+)M`` with ``(r1,m1)(r2,m2) = (r1r2, r1m2 + r2m1)``."""
    if not M.ring.same_as(R):
        raise IncompatibleHom("M must be an R-module")
    r, m = np.divmod(np.arange(R.size * M.size), M.size)
    carrier = PairCarrier.from_pairs(r, m, (R.size, M.size))
    add = carrier.index(R.add[r[:, None], r[None, :]], M.add[m[:, None], m[None, :]])
    mixed = M.add[M.act[r[:, None], m[None, :]], M.act[r[None, :], m[:, None]]]
    mul = carrier.index(R.mul[r[:, None], r[None, :]], mixed)
    return FiniteRing(add, mul, int(carrier.index(R.zero, M.zero)),
                      int(carrier.index(R.one, M.zero)), label=f"{R.label}(+){M.label}",
                      element_names=carrier.names(R, M), validate=validate, budget=budget,
                      carrier=carrier, factors=(R, M))


def idealization_ideal(RM, I, F):
    """``I(+)F``; requires ``IM ⊆ F``."""
    R, M = RM.factors
    if not isinstance(I, Ideal):
        I = Ideal(R, I)
    F = as_submodule(M, F)
    if not ideal_times_module(I, M) <= F:
        raise IMNotInF("I(+)F needs IM inside F")
    C = RM.carrier
    return Ideal(RM, I.mask[C.first] & F.mask[C.second])


# localization


class Fractions:
    """Classes of pairs ``(x, s)`` under ``(x,s) ~ (x',s')`` iff
    ``u(s'x - sx') = 0`` for some ``u ∈ S``."""

    def __init__(self, R, S, size, act, what):
        self.S = S
        self.s = np.flatnonzero(S.mask)
        k = self.s.size
        self.s_pos = np.full(R.size, -1, dtype=np.int64)
        self.s_pos[self.s] = np.arange(k)
        parent = list(range(size * k))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        us = R.mul[np.ix_(self.s, self.s)]  # us[u, t] = u*t
        for a in range(k):
            for b in range(k):
                # pair (x, s_a) vs (x', s_b): u*s_b*x == u*s_a*x'
                lhs = act[us[:, b]]
                rhs = act[us[:, a]]
                eq = (lhs[:, :, None] == rhs[:, None, :]).any(axis=0)
                for x, x2 in zip(*np.nonzero(eq)):
                    i, j = find(x * k + a), find(x2 * k + b)
                    if i != j:
                        parent[max(i, j)] = min(i, j)
        roots = np.array([find(i) for i in range(size * k)])
        uniq, cls = np.unique(roots, return_inverse=True)
        self.class_of = cls.reshape(size, k)
        self.count = uniq.size
        # display representative: prefer denominator 1, else least pair
        one = self.s_pos[R.one]
        self.reps = []
        for c in range(self.count):
            xs, ks = np.nonzero(self.class_of == c)
            pick = np.flatnonzero(ks == one)
            i = pick[0] if pick.size else 0
            self.reps.append((int(xs[i]), int(self.s[ks[i]])))
        self.what = what

    def of(self, x, s):
        return self.class_of[x, self.s_pos[s]]

    def names(self, R, X):
        return [X.name(x) if s == R.one else f"{X.name(x)}/{R.name(s)}" for x, s in self.reps]


def _as_multset(R, S):
    if isinstance(S, MultSet):
        return S
    return MultSet(R, S)


def localize_ring(R, S, validate=True):
    """``S^{-1}R`` with the canonical map ``r -> r/1``.

    If ``0 ∈ S`` the result is the zero ring and ``ring.collapsed`` is set.
    """
    S = _as_multset(R, S)
    fr = Fractions(R, S, R.size, R.mul, "ring")
    xs = np.array([x for x, _ in fr.reps])
    ds = np.array([s for _, s in fr.reps])
    add = fr.of(R.add[R.mul[ds[None, :], xs[:, None]], R.mul[ds[:, None], xs[None, :]]],
                R.mul[ds[:, None], ds[None, :]])
    mul = fr.of(R.mul[xs[:, None], xs[None, :]], R.mul[ds[:, None], ds[None, :]])
    L = FiniteRing(add, mul, fr.of(R.zero, R.one), fr.of(R.one, R.one),
                   label=f"S^-1 {R.label}", element_names=fr.names(R, R),
                   validate=validate, allow_trivial=True)
    L.fractions = fr
    L.collapsed = L.size == 1
    return L, RingHom(R, L, fr.class_of[:, fr.s_pos[R.one]], validate=validate)


def localize_module(M, S, SR=None, validate=True):
    """``S^{-1}M`` over ``S^{-1}R`` with the canonical map ``m -> m/1``."""
    R = M.ring
    S = _as_multset(R, S)
    if SR is None:
        SR, can_r = localize_ring(R, S, validate=validate)
    else:
        can_r = RingHom(R, SR, SR.fractions.class_of[:, SR.fractions.s_pos[R.one]], validate=False)
    rf = SR.fractions
    fr = Fractions(R, S, M.size, M.act, "module")
    xs = np.array([x for x, _ in fr.reps])
    ds = np.array([s for _, s in fr.reps])
    add = fr.of(M.add[M.act[ds[None, :], xs[:, None]], M.act[ds[:, None], xs[None, :]]],
                R.mul[ds[:, None], ds[None, :]])
    rx = np.array([x for x, _ in rf.reps])
    rd = np.array([s for _, s in rf.reps])
    act = fr.of(M.act[rx[:, None], xs[None, :]], R.mul[rd[:, None], ds[None, :]])
    L = FiniteModule(SR, add, act, fr.of(M.zero, R.one), label=f"S^-1 {M.label}",
                     element_names=fr.names(R, M), validate=validate)
    L.fractions = fr
    can = ModuleHom(can_r, M, L, fr.class_of[:, fr.s_pos[R.one]], validate=validate)
    return L, can


def localize_submodule(F, S, SM=None):
    """``S^{-1}F`` = classes of all fractions ``f/s`` with ``f ∈ F``."""
    M = F.parent
    if SM is None:
        SM, _ = localize_module(M, S)
    cls = SM.fractions.class_of[F.mask]
    mask = np.zeros(SM.size, dtype=bool)
    mask[cls.ravel()] = True
    return Submodule(SM, mask)


def localize_ideal(I, S, SR=None):
    R = I.parent
    if SR is None:
        SR, _ = localize_ring(R, S)
    mask = np.zeros(SR.size, dtype=bool)
    mask[SR.fractions.class_of[I.mask].ravel()] = True
    return Ideal(SR, mask)


def image_multset(f, S):
    """``f(S)``, multiplicatively closed in the codomain."""
    mask = np.zeros(f.cod.size, dtype=bool)
    mask[f.map[S.mask]] = True
    return MultSet(f.cod, mask)


def localize_ring_hom(f, S, SR1, SR2):
    """``r/s -> f(r)/f(s)`` from ``S^{-1}R1`` to ``f(S)^{-1}R2``."""
    fr1, fr2 = SR1.fractions, SR2.fractions
    m = [fr2.of(f.map[x], f.map[s]) for x, s in fr1.reps]
    return RingHom(SR1, SR2, m)


def localize_module_hom(phi, fl, SM, SN):
    """``m/s -> phi(m)/f(s)`` over the localized ring map ``fl``."""
    fm, fn = SM.fractions, SN.fractions
    m = [fn.of(phi.map[x], phi.f.map[s]) for x, s in fm.reps]
    return ModuleHom(fl, SM, SN, m)


__all__ = [
    "PairCarrier", "AmalgContext", "DupSubmodules", "Fractions",
    "amalgamated_ring", "amalgamated_module", "amalgam_submodule", "target_module",
    "bar_submodule", "projection_p_gamma", "first_projection", "quotient_isomorphism",
    "duplication_module", "dup_submodules", "idealization", "idealization_ideal",
    "localize_ring", "localize_module", "localize_submodule", "localize_ideal",
    "image_multset", "localize_ring_hom", "localize_module_hom", "subring",
]

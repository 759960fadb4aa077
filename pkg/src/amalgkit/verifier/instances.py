"""Declarative, serializable instance descriptions and the families that
expand into them.

Ring expressions::

    ("zmod", n)
    ("product", ring_expr, ring_expr, ...)
    ("quotient", ring_expr, (gen, ...))        # R / ideal generated by gens

Module expressions (relative to the ring they live over)::

    ("regular",)
    ("quotient", (gen, ...))                   # R / ideal, as an R-module
    ("product", module_expr, ...)              # needs a product ring of the same arity
    ("sum", module_expr, ...)                  # direct sum over the same ring
"""
import hashlib
import json
import random
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from ..budget import charge
from ..constructions import amalgamated_module
from ..errors import NoValidInstance
from ..module import (
    ModuleHom,
    direct_sum,
    enumerate_module_homs,
    enumerate_submodules,
    product_module,
    quotient_module,
    regular_module,
)
from ..ring import (
    Ideal,
    MultSet,
    RingHom,
    enumerate_ideals,
    enumerate_ring_homs,
    identity_hom,
    ideal_generated,
    mk_zmod,
    product_ring,
    quotient_ring,
)


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def build_ring(expr):
    kind = expr[0]
    if kind == "zmod":
        return mk_zmod(int(expr[1]))
    if kind == "product":
        return product_ring(*[build_ring(e) for e in expr[1:]])
    if kind == "quotient":
        R = build_ring(expr[1])
        Q, _ = quotient_ring(R, ideal_generated(R, expr[2]))
        Q.label = f"{R.label}/({','.join(R.name(g) for g in expr[2])})"
        return Q
    raise ValueError(f"unknown ring expression {expr!r}")


def build_module(expr, R):
    kind = expr[0]
    if kind == "regular":
        return regular_module(R)
    if kind == "quotient":
        base = regular_module(R)
        Q, _ = quotient_module(base, ideal_generated(R, expr[1]).mask)
        Q.label = f"{R.label}/({','.join(R.name(g) for g in expr[1])})"
        return Q
    if kind == "product":
        if not R.factors or len(R.factors) != len(expr) - 1:
            raise ValueError("product module needs a product ring of the same arity")
        return product_module(*[build_module(e, Ri) for e, Ri in zip(expr[1:], R.factors)])
    if kind == "sum":
        return direct_sum(*[build_module(e, R) for e in expr[1:]])
    raise ValueError(f"unknown module expression {expr!r}")


def ring_label(expr):
    kind = expr[0]
    if kind == "zmod":
        return f"Z{expr[1]}"
    if kind == "product":
        return "x".join(ring_label(e) for e in expr[1:])
    return f"{ring_label(expr[1])}/({','.join(map(str, expr[2]))})"


@dataclass(frozen=True)
class InstanceSpec:
    """Everything needed to rebuild one concrete instance.

    ``r2``/``n`` default to copies of ``r1``/``m``; ``f`` and ``phi`` are
    ``"identity"`` or ``("map", images)``; ``J`` lists the members of an
    ideal of ``R2`` (default: the zero ideal).
    """

    r1: tuple
    r2: tuple = None
    f: object = "identity"
    J: tuple = None
    m: tuple = ("regular",)
    n: tuple = None
    phi: object = "identity"
    S: tuple = None
    seed: int = None
    label: str = ""

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else dict(text)
        return cls(**{k: _tuplify(v) for k, v in data.items()})

    def digest(self, fields=None):
        data = asdict(self)
        if fields is not None:
            data = {k: data[k] for k in fields}
        raw = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(raw.encode()).hexdigest()[:12]

    def base_digest(self):
        """Digest of the parts that statements about (R1, M) depend on."""
        return self.digest(("r1", "m", "S"))

    def describe(self):
        parts = [ring_label(self.r1)]
        if self.m != ("regular",):
            parts.append(f"M={self.m}")
        if self.r2 is not None:
            parts.append(f"R2={ring_label(self.r2)}")
        if self.J is not None:
            parts.append(f"J={list(self.J)}")
        if self.f != "identity":
            parts.append(f"f={list(self.f[1])}")
        if self.phi != "identity":
            parts.append(f"phi={list(self.phi[1])}")
        return self.label or " ".join(parts)

    def build(self):
        return Instance(self)


class Instance:
    """Lazily built concrete objects for an :class:`InstanceSpec`."""

    def __init__(self, spec, budget=None):
        self.spec = spec
        self.budget = budget
        self.loops = 0
        self._cache = {}

    def tally(self, verdict):
        self.loops += int(verdict.stats.get("loops", 0))
        return verdict

    @cached_property
    def R1(self):
        return build_ring(self.spec.r1)

    @cached_property
    def R2(self):
        if self.spec.r2 is None or tuple(self.spec.r2) == tuple(self.spec.r1):
            return self.R1
        return build_ring(self.spec.r2)

    @cached_property
    def f(self):
        if self.spec.f == "identity":
            if not self.R2.same_as(self.R1):
                raise ValueError("identity f needs R1 = R2")
            return identity_hom(self.R1)
        return RingHom(self.R1, self.R2, self.spec.f[1])

    @cached_property
    def J(self):
        members = self.spec.J if self.spec.J is not None else (self.R2.zero,)
        return Ideal(self.R2, members)

    @cached_property
    def M(self):
        return build_module(self.spec.m, self.R1)

    @cached_property
    def N(self):
        expr = self.spec.n if self.spec.n is not None else self.spec.m
        if self.R2 is self.R1 and expr == self.spec.m:
            return self.M
        return build_module(expr, self.R2)

    @cached_property
    def phi(self):
        if self.spec.phi == "identity":
            if self.N is not self.M or self.spec.f != "identity":
                raise ValueError("identity phi needs M = N and f = identity")
            return ModuleHom(self.f, self.M, self.N, np.arange(self.M.size), validate=False)
        return ModuleHom(self.f, self.M, self.N, self.spec.phi[1])

    @cached_property
    def S(self):
        return None if self.spec.S is None else MultSet(self.R1, self.spec.S)

    def amalgam_cost(self):
        JN_bound = self.N.size if len(self.J) > 1 else 1
        ring = self.R1.size * len(self.J)
        return ring * ring * self.M.size * JN_bound

    @cached_property
    def ctx(self):
        charge(self.amalgam_cost(), self.budget, f"amalgamation of {self.spec.describe()}")
        return amalgamated_module(self.f, self.J, self.phi, budget=self.budget)

    @cached_property
    def submodules(self):
        return enumerate_submodules(self.M, self.budget)

    @cached_property
    def proper_submodules(self):
        return [F for F in self.submodules if F.proper]

    @cached_property
    def ideals(self):
        return enumerate_ideals(self.R1, self.budget)

    @cached_property
    def proper_ideals(self):
        return [I for I in self.ideals if I.proper]


# families


def zmod_family(lo=2, hi=12, modules="regular"):
    """Z_n for lo <= n <= hi with every ideal J, f = phi = id, M = N = R."""
    out = []
    for n in range(lo, hi + 1):
        out.extend(_ring_instances(("zmod", n), modules))
    return out


def product_family(lo=2, hi=4, modules="regular"):
    """Z_a x Z_b for lo <= a, b <= hi; ``M = Z_a x Z_b`` as a product module."""
    out = []
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            expr = ("product", ("zmod", a), ("zmod", b))
            out.extend(_ring_instances(expr, modules, product_arity=2))
    return out


def _module_variants(expr, R, modules, product_arity):
    if product_arity:
        yield ("product",) + (("regular",),) * product_arity
    else:
        yield ("regular",)
    if modules != "all":
        return
    proper = [I for I in enumerate_ideals(R) if I.proper and len(I) > 1]
    for I in proper:
        yield ("quotient", (min(i for i in I.elements if i != R.zero),))
    # one non-cyclic module per ring when small enough
    if proper and R.size * (R.size // len(proper[-1])) <= 16:
        g = min(i for i in proper[-1].elements if i != R.zero)
        yield ("sum", ("regular",), ("quotient", (g,)))


def _ring_instances(expr, modules="regular", product_arity=0):
    R = build_ring(expr)
    out = []
    for mexpr in _module_variants(expr, R, modules, product_arity):
        for J in enumerate_ideals(R):
            out.append(InstanceSpec(r1=expr, J=J.elements, m=mexpr))
    return out


def random_instance(seed, bounds=None):
    """A reproducible pseudo-random valid instance.

    ``bounds`` may set ``max_ring`` (default 8), ``max_module`` (default 8) and
    ``rings`` (explicit list of candidate ring expressions).
    """
    bounds = dict(bounds or {})
    max_ring = bounds.get("max_ring", 8)
    max_module = bounds.get("max_module", 8)
    rng = random.Random(seed)
    candidates = [_tuplify(r) for r in bounds.get("rings", [])] or _ring_pool(max_ring)
    for _ in range(bounds.get("attempts", 100)):
        e1 = rng.choice(candidates)
        e2 = rng.choice(candidates)
        R1, R2 = build_ring(e1), build_ring(e2)
        homs = enumerate_ring_homs(R1, R2)
        if not homs:
            continue
        f = rng.choice(homs)
        J = rng.choice(enumerate_ideals(R2))
        m = _random_module_expr(rng, R1, max_module)
        n = _random_module_expr(rng, R2, max_module)
        M, N = build_module(m, R1), build_module(n, R2)
        if M.size > max_module or N.size > max_module:
            continue
        phis = enumerate_module_homs(f, M, N)
        if not phis:
            continue
        phi = rng.choice(phis)
        same = e1 == e2
        return InstanceSpec(
            r1=e1, r2=None if same else e2,
            f="identity" if same and np.array_equal(f.map, np.arange(R1.size)) else ("map", tuple(int(x) for x in f.map)),
            J=J.elements, m=m, n=n,
            phi=("map", tuple(int(x) for x in phi.map)), seed=seed)
    raise NoValidInstance(f"no valid instance for seed {seed} within bounds {bounds}")


def _ring_pool(max_ring):
    pool = [("zmod", n) for n in range(2, max_ring + 1)]
    for a in range(2, max_ring + 1):
        for b in range(a, max_ring // a + 1):
            pool.append(("product", ("zmod", a), ("zmod", b)))
    if max_ring >= 4:
        # (Z2 x Z4)/((0,2)), a quotient that is not presented as some Z_n
        pool.append(("quotient", ("product", ("zmod", 2), ("zmod", 4)), (2,)))
    return pool


def _random_module_expr(rng, R, max_module):
    choices = [("regular",)]
    for I in enumerate_ideals(R):
        if I.proper and len(I) > 1:
            choices.append(("quotient", (min(i for i in I.elements if i != R.zero),)))
    return rng.choice(choices)


def random_family(count=20, seed=0, bounds=None):
    return [random_instance(seed + i, bounds) for i in range(count)]


def parse_family(text, seed=0):
    """Expand ``"zmod:2-12+product:2-4+random:20"`` (with optional
    ``,modules=all``) into instance specs."""
    out = []
    for part in text.split("+"):
        head, *opts = part.split(",")
        options = dict(o.split("=", 1) for o in opts)
        kind, _, arg = head.partition(":")
        modules = options.get("modules", "regular")
        if kind == "zmod":
            lo, hi = _range(arg or "2-12")
            out.extend(zmod_family(lo, hi, modules))
        elif kind == "product":
            lo, hi = _range(arg or "2-4")
            out.extend(product_family(lo, hi, modules))
        elif kind == "random":
            count = int(arg or 20)
            bounds = {k: int(v) for k, v in options.items() if k.startswith("max_")}
            out.extend(random_family(count, int(options.get("seed", seed)), bounds))
        else:
            raise ValueError(f"unknown family {kind!r}")
    return out


def _range(arg):
    lo, _, hi = arg.partition("-")
    return int(lo), int(hi or lo)

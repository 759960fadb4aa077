"""Line-oriented instance files.

One binding per line (or per ``;``-separated segment)::

    kind NAME [qualifiers] = constructor

    ring R = zmod 6
    ring P = product [R, S]
    ring Q = quotient R by I            # I an ideal name or an explicit {..}
    hom f : R -> S = map [0, 1, 2, 0, 1, 2]
    hom g : R -> R = identity
    ideal J of R = {0, 3}
    ideal K of R = generated {2}
    module M over R = regular
    module Q = quotient M by F
    module P = product [M1, M2]         # over the product of their rings
    module D = sum [M1, M2]             # direct sum over a common ring
    module N = restrict N2 via f
    modhom phi : M -> N over f = map [..]
    submodule F of M = {0, 2, 4}
    multset S of R = {1, 2, 4, 8}

``#`` starts a comment.  Elements are written by display name: integers
for Z_n, tuples such as ``(0,1)`` for products and pairs.
"""
import hashlib
import re
from dataclasses import dataclass, field

from ..errors import AlgebraError, AxiomViolation
from ..module import (
    ModuleHom,
    Submodule,
    direct_sum,
    product_module,
    quotient_module,
    regular_module,
    restrict_scalars,
    submodule_generated,
)
from ..ring import (
    Ideal,
    MultSet,
    RingHom,
    identity_hom,
    ideal_generated,
    mk_zmod,
    mult_closure,
    product_ring,
    quotient_ring,
)

KINDS = ("ring", "hom", "ideal", "module", "modhom", "submodule", "multset")


class ParseError(Exception):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class ValidationError(Exception):
    def __init__(self, binding, axiom, witness=None, line=None):
        self.binding = binding
        self.axiom = axiom
        self.witness = witness
        self.line = line
        where = f"line {line}: " if line else ""
        msg = f"{where}{binding}: {axiom}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)


@dataclass
class Binding:
    kind: str
    name: str
    value: object
    line: int
    text: str
    expr: object = None      # declarative form for instance specs, when expressible
    parent: str = None
    ring_expr: object = None  # modules: declarative form of the scalar ring


@dataclass
class InstanceFile:
    bindings: dict = field(default_factory=dict)
    source: str = ""

    def __getitem__(self, name):
        return self.bindings[name]

    def __contains__(self, name):
        return name in self.bindings

    def of_kind(self, kind):
        return [b for b in self.bindings.values() if b.kind == kind]

    def digest(self):
        canon = "\n".join(b.text for b in self.bindings.values())
        return hashlib.sha256(canon.encode()).hexdigest()[:12]


_HEAD = re.compile(r"^(\w+)\s+([A-Za-z_]\w*)\s*(.*)$")


def parse_instance_file(path):
    with open(path) as fh:
        return parse_instance_text(fh.read())


def parse_instance_text(text):
    inst = InstanceFile(source=text)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for seg in line.split(";"):
            seg = seg.strip()
            if seg:
                _bind(inst, seg, lineno)
    return inst


def _split_top(s):
    """Split on commas that are not nested in brackets."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    last = "".join(cur).strip()
    if last:
        out.append(last)
    return out


def _bracketed(s, open_, close, line, what):
    s = s.strip()
    if not (s.startswith(open_) and s.endswith(close)):
        raise ParseError(line, f"expected {open_}...{close} for {what}, got {s!r}")
    return _split_top(s[1:-1])


def _bind(inst, seg, line):
    if "=" not in seg:
        raise ParseError(line, f"missing '=' in {seg!r}")
    lhs, rhs = seg.split("=", 1)
    m = _HEAD.match(lhs.strip())
    if not m:
        raise ParseError(line, f"cannot read binding head {lhs.strip()!r}")
    kind, name, quals = m.group(1), m.group(2), m.group(3).strip()
    if kind not in KINDS:
        raise ParseError(line, f"unknown kind {kind!r}")
    if name in inst:
        raise ParseError(line, f"{name} is already declared")
    rhs = rhs.strip()
    if not rhs:
        raise ParseError(line, "empty constructor")
    ctor, _, args = rhs.partition(" ")
    b = Binding(kind, name, None, line, " ".join(seg.split()))
    try:
        getattr(_Builder(inst, line, quals, args.strip(), b), kind)(ctor)
    except (ParseError, ValidationError):
        raise
    except AxiomViolation as exc:
        raise ValidationError(name, exc.axiom, exc.witness, line) from exc
    except AlgebraError as exc:
        raise ValidationError(name, str(exc), None, line) from exc
    inst.bindings[name] = b


class _Builder:
    def __init__(self, inst, line, quals, args, binding):
        self.inst, self.line, self.quals, self.args, self.b = inst, line, quals, args, binding

    # lookups

    def ref(self, name, kind):
        name = name.strip()
        if name not in self.inst:
            raise ParseError(self.line, f"undeclared name {name!r}")
        b = self.inst[name]
        kinds = (kind,) if isinstance(kind, str) else kind
        if b.kind not in kinds:
            raise ParseError(self.line, f"{name} is a {b.kind}, expected {' or '.join(kinds)}")
        return b

    def qual(self, word):
        m = re.match(rf"^{word}\s+([A-Za-z_]\w*)$", self.quals)
        if not m:
            raise ParseError(self.line, f"expected '{word} NAME' before '='")
        return m.group(1)

    def elements(self, parent, text):
        toks = _bracketed(text, "{", "}", self.line, "a set")
        try:
            return [parent.index_of(t) for t in toks]
        except AlgebraError as exc:
            raise ParseError(self.line, str(exc)) from None

    def arrow(self):
        m = re.match(r"^:\s*([A-Za-z_]\w*)\s*->\s*([A-Za-z_]\w*)(?:\s+over\s+([A-Za-z_]\w*))?$", self.quals)
        if not m:
            raise ParseError(self.line, "expected ': A -> B' before '='")
        return m.groups()

    def need(self, ok, message):
        if not ok:
            raise ParseError(self.line, message)

    # kinds

    def ring(self, ctor):
        b = self.b
        self.need(not self.quals, "ring bindings take no qualifiers")
        if ctor == "zmod":
            try:
                n = int(self.args)
            except ValueError:
                raise ParseError(self.line, f"zmod needs an integer, got {self.args!r}") from None
            b.value, b.expr = mk_zmod(n), ("zmod", n)
        elif ctor == "product":
            parts = [self.ref(t, "ring") for t in _bracketed(self.args, "[", "]", self.line, "product")]
            self.need(len(parts) >= 2, "product needs at least two factors")
            b.value = product_ring(*[p.value for p in parts])
            if all(p.expr for p in parts):
                b.expr = ("product",) + tuple(p.expr for p in parts)
        elif ctor == "quotient":
            m = re.match(r"^([A-Za-z_]\w*)\s+by\s+(.+)$", self.args)
            self.need(m, "expected 'quotient R by I'")
            R = self.ref(m.group(1), "ring")
            I = self._ideal_arg(R, m.group(2))
            b.value, _ = quotient_ring(R.value, I)
            b.value.label = f"{R.value.label}/I"
            if R.expr:
                b.expr = ("quotient", R.expr, I.elements)
        else:
            raise ParseError(self.line, f"unknown ring constructor {ctor!r}")
        b.value.label = b.name

    def _ideal_arg(self, R, text):
        text = text.strip()
        if text.startswith("{"):
            return Ideal(R.value, self.elements(R.value, text))
        return self.ref(text, "ideal").value

    def hom(self, ctor):
        a, c, over = self.arrow()
        self.need(over is None, "'over' is only for modhom")
        A, B = self.ref(a, "ring"), self.ref(c, "ring")
        if ctor == "identity":
            self.need(A is B, "identity needs the same ring on both sides")
            self.b.value, self.b.expr = identity_hom(A.value), "identity"
        elif ctor == "map":
            toks = _bracketed(self.args, "[", "]", self.line, "map")
            self.need(len(toks) == A.value.size, f"map needs {A.value.size} images, got {len(toks)}")
            try:
                images = [B.value.index_of(t) for t in toks]
            except AlgebraError as exc:
                raise ParseError(self.line, str(exc)) from None
            self.b.value = RingHom(A.value, B.value, images)
            self.b.expr = ("map", tuple(images))
        else:
            raise ParseError(self.line, f"unknown hom constructor {ctor!r}")
        self.b.parent = (a, c)

    def ideal(self, ctor):
        R = self.ref(self.qual("of"), "ring")
        if ctor == "generated":
            self.b.value = ideal_generated(R.value, self.elements(R.value, self.args))
        elif ctor.startswith("{"):
            self.b.value = Ideal(R.value, self.elements(R.value, (ctor + " " + self.args).strip()))
        else:
            raise ParseError(self.line, f"unknown ideal constructor {ctor!r}")
        self.b.parent = R.name

    def module(self, ctor):
        b = self.b
        if ctor == "regular":
            R = self.ref(self.qual("over"), "ring")
            b.value = regular_module(R.value)
            b.expr, b.parent, b.ring_expr = ("regular",), R.name, R.expr
        elif ctor == "quotient":
            m = re.match(r"^([A-Za-z_]\w*)\s+by\s+(.+)$", self.args)
            self.need(m, "expected 'quotient M by F'")
            M = self.ref(m.group(1), "module")
            text = m.group(2).strip()
            F = Submodule(M.value, self.elements(M.value, text)) if text.startswith("{") \
                else self.ref(text, "submodule").value
            b.value, _ = quotient_module(M.value, F)
            b.parent, b.ring_expr = M.parent, M.ring_expr
            if M.expr == ("regular",):
                b.expr = ("quotient", F.elements)
        elif ctor in ("product", "sum"):
            parts = [self.ref(t, "module") for t in _bracketed(self.args, "[", "]", self.line, ctor)]
            self.need(len(parts) >= 2, f"{ctor} needs at least two factors")
            mods = [p.value for p in parts]
            b.value = product_module(*mods) if ctor == "product" else direct_sum(*mods)
            if all(p.expr for p in parts):
                b.expr = (ctor,) + tuple(p.expr for p in parts)
            b.parent = None if ctor == "product" else parts[0].parent
            if ctor == "sum":
                b.ring_expr = parts[0].ring_expr
            elif all(p.ring_expr for p in parts):
                b.ring_expr = ("product",) + tuple(p.ring_expr for p in parts)
        elif ctor == "restrict":
            m = re.match(r"^([A-Za-z_]\w*)\s+via\s+([A-Za-z_]\w*)$", self.args)
            self.need(m, "expected 'restrict N via f'")
            N, f = self.ref(m.group(1), "module"), self.ref(m.group(2), "hom")
            b.value = restrict_scalars(N.value, f.value)
            b.parent = f.parent[0]
        else:
            raise ParseError(self.line, f"unknown module constructor {ctor!r}")
        if self.quals.startswith("over") and ctor != "regular":
            R = self.ref(self.qual("over"), "ring")
            self.need(R.value.same_as(b.value.ring), f"{b.name} is not a module over {R.name}")
        b.value.label = b.name

    def modhom(self, ctor):
        a, c, over = self.arrow()
        M, N = self.ref(a, "module"), self.ref(c, "module")
        if over is not None:
            f = self.ref(over, "hom").value
        else:
            self.need(M.value.ring.same_as(N.value.ring), "modhom between different rings needs 'over f'")
            f = identity_hom(M.value.ring)
        if ctor == "identity":
            self.need(M is N, "identity needs the same module on both sides")
            images = list(range(M.value.size))
            self.b.expr = "identity"
        elif ctor == "map":
            toks = _bracketed(self.args, "[", "]", self.line, "map")
            self.need(len(toks) == M.value.size, f"map needs {M.value.size} images, got {len(toks)}")
            try:
                images = [N.value.index_of(t) for t in toks]
            except AlgebraError as exc:
                raise ParseError(self.line, str(exc)) from None
            self.b.expr = ("map", tuple(images))
        else:
            raise ParseError(self.line, f"unknown modhom constructor {ctor!r}")
        self.b.value = ModuleHom(f, M.value, N.value, images)
        self.b.parent = (a, c, over)

    def submodule(self, ctor):
        M = self.ref(self.qual("of"), "module")
        if ctor == "generated":
            self.b.value = submodule_generated(M.value, self.elements(M.value, self.args))
        elif ctor.startswith("{"):
            self.b.value = Submodule(M.value, self.elements(M.value, (ctor + " " + self.args).strip()))
        else:
            raise ParseError(self.line, f"unknown submodule constructor {ctor!r}")
        self.b.parent = M.name

    def multset(self, ctor):
        R = self.ref(self.qual("of"), "ring")
        if ctor == "generated":
            self.b.value = mult_closure(R.value, self.elements(R.value, self.args))
        elif ctor.startswith("{"):
            self.b.value = MultSet(R.value, self.elements(R.value, (ctor + " " + self.args).strip()))
        else:
            raise ParseError(self.line, f"unknown multset constructor {ctor!r}")
        self.b.parent = R.name

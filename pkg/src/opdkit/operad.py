"""Finite coloured symmetric operads truncated at an arity bound.

The symmetric groups act on the right: for ``theta`` in
``P(a_1, ..., a_n; b)`` and a permutation ``rho``, ``act(theta, rho)`` lies in
``P(a_rho(1), ..., a_rho(n); b)``. Input ``i`` of ``act(theta, rho)`` feeds
input ``rho(i)`` of ``theta``, so ``act(act(theta, r), s) = act(theta, r . s)``.

Equivariance, with ``phi_i`` substituted into slot ``i``:

* ``subst(act(theta, rho), [phi_1..phi_n])
  = act(subst(theta, [phi_rho^-1(1)..phi_rho^-1(n)]), B)`` where ``B`` moves
  block ``i`` (the inputs of ``phi_i``) to block position ``rho(i)``;
* ``subst(theta, [act(phi_i, pi_i)]) = act(subst(theta, [phi_i]), pi_1 + ... + pi_n)``.
"""

from itertools import permutations

from .errors import InputError
from .fincat import FinCategory, discrete_category, iso_core
from .permcore import (
    block_permutation, compose_images, identity_images,
)
from .report import CheckReport, check_enum_size
from .smc import TableIncomplete, ValidationError, sequences


class FinOperad:
    """Interface shared by all finite operads."""

    colours = ()
    arity_bound = 0
    name = "P"

    def ops(self, inputs, output):
        cache = self.__dict__.setdefault("_ops_cache", {})
        key = (tuple(inputs), output)
        if key not in cache:
            cache[key] = tuple(self._ops(*key)) if len(key[0]) <= self.arity_bound else ()
            check_enum_size(len(cache[key]), f"multihom{key}")
        return cache[key]

    def _ops(self, inputs, output):
        raise NotImplementedError

    def profile(self, op):
        raise NotImplementedError

    def arity(self, op):
        return len(self.profile(op)[0])

    def unit(self, colour):
        raise NotImplementedError

    def subst(self, outer, inners):
        raise NotImplementedError

    def act(self, op, rho):
        raise NotImplementedError

    def profiles(self, bound=None):
        bound = self.arity_bound if bound is None else bound
        for inputs in sequences(self.colours, bound):
            for out in self.colours:
                yield inputs, out

    def all_ops(self, bound=None):
        for inputs, out in self.profiles(bound):
            yield from self.ops(inputs, out)

    def ops_into(self, colour, max_arity):
        """Operations with the given output and arity at most ``max_arity``."""
        cache = self.__dict__.setdefault("_into_cache", {})
        key = (colour, max_arity)
        if key not in cache:
            cache[key] = tuple(op for inputs in sequences(self.colours, max_arity)
                               for op in self.ops(inputs, colour))
        return cache[key]

    def partial(self, outer, i, inner):
        """``outer o_i inner`` (1-based slot), or ``None`` beyond the bound."""
        ins = self.profile(outer)[0]
        inners = [self.unit(c) for c in ins]
        inners[i - 1] = inner
        return self.subst(outer, inners)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, arity<={self.arity_bound})"


class TableOperad(FinOperad):
    """An operad given by explicit tables; units are ``("id", colour)``."""

    def __init__(self, colours, arity_bound, ops, subst, act, name="P"):
        self.colours = tuple(colours)
        self.arity_bound = arity_bound
        self.op_table = {k: (tuple(v[0]), v[1]) for k, v in dict(ops).items()}
        self.subst_table = {(k[0], tuple(k[1])): v for k, v in dict(subst).items()}
        self.act_table = {(k[0], tuple(k[1])): v for k, v in dict(act).items()}
        self.name = name
        self._by_profile = {}
        for op, prof in self.op_table.items():
            self._by_profile.setdefault(prof, []).append(op)

    @staticmethod
    def is_unit(op):
        return isinstance(op, tuple) and len(op) == 2 and op[0] == "id"

    def _ops(self, inputs, output):
        if inputs == (output,):
            yield ("id", output)
        yield from self._by_profile.get((inputs, output), ())

    def profile(self, op):
        if self.is_unit(op):
            return ((op[1],), op[1])
        return self.op_table[op]

    def unit(self, colour):
        return ("id", colour)

    def subst(self, outer, inners):
        inners = tuple(inners)
        if len(inners) != self.arity(outer):
            raise InputError("wrong number of inner operations")
        total = sum(self.arity(op) for op in inners)
        if total > self.arity_bound:
            return None
        if self.is_unit(outer):
            return inners[0]
        if all(self.is_unit(op) for op in inners):
            return outer
        try:
            return self.subst_table[(outer, inners)]
        except KeyError:
            raise TableIncomplete("subst", (outer, inners)) from None

    def act(self, op, rho):
        rho = tuple(getattr(rho, "images", rho))
        if rho == identity_images(len(rho)):
            return op
        try:
            return self.act_table[(op, rho)]
        except KeyError:
            raise TableIncomplete("act", (op, rho)) from None

    def complete_forced(self):
        """Fill omitted action entries whose target multihom is a singleton."""
        for op in list(self.op_table):
            ins, out = self.op_table[op]
            for rho in permutations(range(1, len(ins) + 1)):
                if (op, rho) in self.act_table or rho == identity_images(len(ins)):
                    continue
                options = self.ops(tuple(ins[r - 1] for r in rho), out)
                if len(options) == 1:
                    self.act_table[(op, rho)] = options[0]
        return self


class CommOperad(FinOperad):
    """The terminal one-colour operad: one operation in each arity."""

    def __init__(self, arity_bound, colour="*", name="Comm"):
        self.colours = (colour,)
        self.arity_bound = arity_bound
        self.name = name

    def _ops(self, inputs, output):
        yield ("comm", len(inputs))

    def profile(self, op):
        return ((self.colours[0],) * op[1], self.colours[0])

    def unit(self, colour):
        return ("comm", 1)

    def subst(self, outer, inners):
        n = sum(op[1] for op in inners)
        return None if n > self.arity_bound else ("comm", n)

    def act(self, op, rho):
        return op


class CategoryOperad(FinOperad):
    """A category regarded as an operad with only unary operations."""

    def __init__(self, category, arity_bound=1):
        self.category = category
        self.colours = tuple(category.objects)
        self.arity_bound = max(arity_bound, 1)
        self.name = category.name

    def _ops(self, inputs, output):
        if len(inputs) == 1:
            yield from self.category.hom(inputs[0], output)

    def profile(self, op):
        d, c = self.category.arrows[op]
        return ((d,), c)

    def unit(self, colour):
        return self.category.identity[colour]

    def subst(self, outer, inners):
        return self.category.comp(outer, inners[0])

    def act(self, op, rho):
        return op


def operad_of_category(c, arity_bound=1):
    return CategoryOperad(c, arity_bound)


class EndOperad(FinOperad):
    """``End(M)(x_1..x_n; y) = M((x_1..x_n), (y))``."""

    def __init__(self, smc):
        self.smc = smc
        self.colours = tuple(smc.colours)
        self.arity_bound = smc.bound
        self.name = f"End({smc.name})"

    def _ops(self, inputs, output):
        return self.smc.hom(inputs, (output,))

    def profile(self, op):
        return self.smc.dom(op), self.smc.cod(op)[0]

    def unit(self, colour):
        return self.smc.identity((colour,))

    def subst(self, outer, inners):
        M = self.smc
        if sum(len(M.dom(op)) for op in inners) > self.arity_bound:
            return None
        body = M.tensor_all(inners)
        if body is None:
            return None
        return M.compose(outer, body)

    def act(self, op, rho):
        rho = tuple(getattr(rho, "images", rho))
        M = self.smc
        ins = M.dom(op)
        source = tuple(ins[r - 1] for r in rho)
        return M.compose(op, M.sym(rho, source))


def end_operad(m):
    return EndOperad(m)


class OperadMap:
    def __init__(self, source, target, colour_map, op_map, name="f"):
        self.source = source
        self.target = target
        self.colour_map = dict(colour_map)
        self.op_map = op_map
        self.name = name

    def colour(self, c):
        return self.colour_map[c]

    def __call__(self, op):
        om = self.op_map
        return om[op] if isinstance(om, dict) else om(op)

    def is_identity_on_objects(self):
        return (set(self.source.colours) == set(self.target.colours)
                and all(self.colour_map[c] == c for c in self.source.colours))


def validate_operad_map(f):
    """Profiles, units, partial compositions and transpositions preserved."""
    P, Q = f.source, f.target
    report = CheckReport("operad-map", True, P.arity_bound)

    def fail(kind, **data):
        report.verdict = False
        report.witness = {"violation": kind, **data}
        return report

    for c in P.colours:
        if f(P.unit(c)) != Q.unit(f.colour(c)):
            return fail("unit", colour=c)
    ops = list(P.all_ops())
    for op in ops:
        ins, out = P.profile(op)
        img = f(op)
        if Q.profile(img) != (tuple(f.colour(c) for c in ins), f.colour(out)):
            return fail("profile", op=op)
    for op in ops:
        ins, out = P.profile(op)
        n = len(ins)
        for i in range(1, n):
            t = list(range(1, n + 1))
            t[i - 1], t[i] = i + 1, i
            report.checked += 1
            if f(P.act(op, tuple(t))) != Q.act(f(op), tuple(t)):
                return fail("action", op=op, perm=tuple(t))
        room = P.arity_bound - n + 1
        for i, c in enumerate(ins, 1):
            for inner in P.ops_into(c, room):
                res = P.partial(op, i, inner)
                if res is None:
                    report.skipped += 1
                    continue
                report.checked += 1
                if f(res) != Q.partial(f(op), i, f(inner)):
                    return fail("partial composition", outer=op, slot=i, inner=inner)
    return report


class OperadTwoCell:
    """Components ``phi_a : f(a) -> g(a)`` (unary operations of the target)."""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)


def validate_operad_two_cell(t):
    f, g = t.source, t.target
    P, Q = f.source, f.target
    report = CheckReport("operad-2-cell", True, P.arity_bound)
    for a in P.colours:
        comp = t.components[a]
        if Q.profile(comp) != ((f.colour(a),), g.colour(a)):
            report.verdict = False
            report.witness = {"violation": "component profile", "colour": a}
            return report
    for op in P.all_ops():
        ins, out = P.profile(op)
        report.checked += 1
        lhs = Q.subst(t.components[out], [f(op)])
        rhs = Q.subst(g(op), [t.components[c] for c in ins])
        if lhs != rhs:
            report.verdict = False
            report.witness = {"violation": "naturality", "op": op}
            return report
    return report


# ----------------------------------------------------------------------------
# validation


def validate_operad(p):
    """Operad axioms on every instance whose result stays within the arity
    bound. Full substitution is checked against iterated partial
    compositions, and associativity and equivariance on partial ones."""
    report = CheckReport("operad", True, p.arity_bound)
    try:
        _validate_operad(p, report)
    except TableIncomplete as exc:
        report.verdict = False
        report.witness = {"violation": "table incomplete", "table": exc.table,
                          "entry": exc.entry}
    except _Fail:
        pass
    return report


class _Fail(Exception):
    pass


def _transpositions(n):
    for i in range(1, n):
        t = list(range(1, n + 1))
        t[i - 1], t[i] = i + 1, i
        yield tuple(t)


def _validate_operad(p, report):
    def fail(kind, **data):
        report.verdict = False
        report.witness = {"violation": kind, **data}
        raise _Fail

    A = p.arity_bound
    for c in p.colours:
        if p.profile(p.unit(c)) != ((c,), c):
            fail("unit profile", colour=c)
    ops = []
    for inputs, out in p.profiles():
        for op in p.ops(inputs, out):
            if p.profile(op) != (inputs, out):
                fail("profile", op=op)
            ops.append(op)
    seen = set()
    for op in ops:
        if op in seen:
            fail("operation listed twice", op=op)
        seen.add(op)

    for op in ops:
        ins, out = p.profile(op)
        report.checked += 1
        if p.subst(p.unit(out), [op]) != op:
            fail("left unit law", op=op)
        if p.subst(op, [p.unit(c) for c in ins]) != op:
            fail("right unit law", op=op)

    # symmetric group action
    for op in ops:
        ins, out = p.profile(op)
        n = len(ins)
        perms = list(permutations(range(1, n + 1)))
        acted = {}
        for rho in perms:
            r = p.act(op, rho)
            if p.profile(r) != (tuple(ins[i - 1] for i in rho), out):
                fail("action profile", op=op, perm=rho)
            acted[rho] = r
        if acted[identity_images(n)] != op:
            fail("action of identity", op=op)
        for rho in perms:
            for t in _transpositions(n):
                report.checked += 1
                if p.act(acted[rho], t) != acted[compose_images(rho, t)]:
                    fail("action is not a group action", op=op, perm=rho, transposition=t)

    # full substitution agrees with iterated partial composition
    for op in ops:
        ins, out = p.profile(op)
        n = len(ins)
        if n == 0:
            continue
        for inners in _inner_choices(p, ins, A):
            report.checked += 1
            full = p.subst(op, inners)
            current = _iterated_partial(p, op, inners)
            if current is _SKIP:
                report.skipped += 1
                continue
            if full != current:
                fail("substitution is not iterated partial composition",
                     outer=op, inners=inners)

    # associativity of partial composition
    for op in ops:
        ins, _ = p.profile(op)
        n = len(ins)
        for i in range(1, n + 1):
            for phi in p.ops_into(ins[i - 1], A - n + 1):
                first = p.partial(op, i, phi)
                if first is None:
                    continue
                phi_ins = p.profile(phi)[0]
                k = len(phi_ins)
                room = A - (n + k - 1) + 1
                # sequential: (op o_i phi) o_(i+j-1) psi = op o_i (phi o_j psi)
                for j in range(1, k + 1):
                    for psi in p.ops_into(phi_ins[j - 1], room):
                        lhs = p.partial(first, i + j - 1, psi)
                        if lhs is None:
                            report.skipped += 1
                            continue
                        report.checked += 1
                        if lhs != p.partial(op, i, p.partial(phi, j, psi)):
                            fail("sequential associativity", ops=(op, phi, psi), slots=(i, j))
                # parallel: slots i < l of op
                for l in range(i + 1, n + 1):
                    for psi in p.ops_into(ins[l - 1], room):
                        lhs = p.partial(first, l + k - 1, psi)
                        if lhs is None:
                            report.skipped += 1
                            continue
                        report.checked += 1
                        mid = p.partial(op, l, psi)
                        if mid is None:
                            report.skipped += 1
                            continue
                        if lhs != p.partial(mid, i, phi):
                            fail("parallel associativity", ops=(op, phi, psi), slots=(i, l))

    # equivariance on partial compositions
    for op in ops:
        ins, _ = p.profile(op)
        n = len(ins)
        for i in range(1, n + 1):
            for phi in p.ops_into(ins[i - 1], A - n + 1):
                base = p.partial(op, i, phi)
                if base is None:
                    continue
                k = p.arity(phi)
                for t in _transpositions(k):
                    report.checked += 1
                    lhs = p.partial(op, i, p.act(phi, t))
                    block = identity_images(i - 1) + tuple(v + i - 1 for v in t) \
                        + tuple(range(i + k, n + k))
                    if lhs != p.act(base, block):
                        fail("equivariance in the inner operation", outer=op, slot=i,
                             inner=phi, perm=t)
                for t in _transpositions(n):
                    # slot i of act(op, t) feeds slot t(i) of op
                    report.checked += 1
                    lhs = p.partial(p.act(op, t), _inverse_slot(t, i), phi)
                    if lhs is None:
                        continue
                    sizes = [k if s == _inverse_slot(t, i) else 1 for s in range(1, n + 1)]
                    order = [t[s] - 1 for s in range(n)]
                    block = block_permutation(sizes, order).images
                    if lhs != p.act(base, block):
                        fail("equivariance in the outer operation", outer=op, slot=i,
                             inner=phi, perm=t)


_SKIP = object()


def _iterated_partial(p, op, inners):
    """Substitute one slot at a time, nullary inners first so that
    intermediate arities never exceed the final one."""
    arities = [p.arity(x) for x in inners]
    order = sorted(range(len(inners)), key=lambda i: (arities[i] > 0, -i))
    width = [1] * len(inners)
    current = op
    for i in order:
        slot = sum(width[:i]) + 1
        current = p.partial(current, slot, inners[i])
        if current is None:
            return _SKIP
        width[i] = arities[i]
    return current


def _inverse_slot(rho, i):
    return rho.index(i) + 1


def _inner_choices(p, ins, A):
    """All tuples of operations into ``ins`` with total arity at most ``A``."""
    def rec(pos, budget):
        if pos == len(ins):
            yield ()
            return
        for op in p.ops_into(ins[pos], budget):
            k = p.arity(op)
            for rest in rec(pos + 1, budget - k):
                yield (op,) + rest
    yield from rec(0, A)


# ----------------------------------------------------------------------------
# constructions


def unary_cores(p):
    """The category of unary operations and its groupoid of invertible ones."""
    arrows, compose = {}, {}
    for a in p.colours:
        for b in p.colours:
            for op in p.ops((a,), b):
                arrows[op] = (a, b)
    for f, (a, b) in arrows.items():
        for c in p.colours:
            for g in p.ops((b,), c):
                compose[(g, f)] = p.subst(g, [f])
    P1 = FinCategory(p.colours, arrows, {c: p.unit(c) for c in p.colours}, compose,
                     f"{p.name}_1")
    return P1, iso_core(P1)


class RestrictedOperad(FinOperad):
    """``Q(f a_1, ..., f a_n; f b)`` on the colours of the source of ``f``."""

    def __init__(self, f, name=None):
        self.f = f
        self.colours = tuple(f.source.colours)
        self.arity_bound = f.target.arity_bound
        self.name = name or f"{f.target.name}|{f.source.name}"

    def _ops(self, inputs, output):
        f, Q = self.f, self.f.target
        key = (inputs, output)
        for op in Q.ops(tuple(f.colour(c) for c in inputs), f.colour(output)):
            yield (key, op)

    def profile(self, op):
        return op[0]

    def unit(self, colour):
        return (((colour,), colour), self.f.target.unit(self.f.colour(colour)))

    def subst(self, outer, inners):
        Q = self.f.target
        res = Q.subst(outer[1], [op[1] for op in inners])
        if res is None:
            return None
        ins = ()
        for op in inners:
            ins += op[0][0]
        if len(ins) > self.arity_bound:
            return None
        return ((ins, outer[0][1]), res)

    def act(self, op, rho):
        rho = tuple(getattr(rho, "images", rho))
        ins, out = op[0]
        return ((tuple(ins[r - 1] for r in rho), out), self.f.target.act(op[1], rho))


def gabriel_factor_operad(f):
    """``f = h . g`` with ``g`` identity on objects and ``h`` fully faithful.
    Returns ``(g, mid, h)``."""
    mid = RestrictedOperad(f)
    P = f.source

    def g_map(op):
        return (P.profile(op), f(op))

    g = OperadMap(P, mid, {c: c for c in P.colours}, g_map, "g")
    h = OperadMap(mid, f.target, dict(f.colour_map), lambda op: op[1], "h")
    return g, mid, h


class PinnedOperad:
    """An operad ``body`` with a map ``phi`` from the unary operad of ``pins``."""

    def __init__(self, pins, body, phi, name="pinned"):
        self.pins = pins
        self.body = body
        self.phi = phi
        self.name = name

    def validate(self):
        if self.phi.source.category is not self.pins:
            raise ValidationError("pin map must start at the pin category")
        rep = validate_operad_map(self.phi)
        if rep.verdict:
            for a in self.pins.arrows:
                if self.body.arity(self.phi(a)) != 1:
                    rep.verdict = False
                    rep.witness = {"violation": "pin is not unary", "arrow": a}
                    break
        return rep


class Substitude(PinnedOperad):
    """A pinned operad whose pin map is the identity on colours."""

    def validate(self):
        rep = super().validate()
        if rep.verdict and not (
                tuple(self.body.colours) == tuple(self.pins.objects)
                and self.phi.is_identity_on_objects()):
            rep.verdict = False
            rep.witness = {"violation": "pin map is not the identity on objects"}
        return rep


def make_pin_map(pins, body, arrow_map, colour_map=None):
    colour_map = colour_map or {c: c for c in pins.objects}
    return OperadMap(CategoryOperad(pins, 1), body, colour_map, dict(arrow_map), "phi")


def coreflect(po):
    """Base change of the body to the pins: returns ``(substitude, counit)``."""
    g, mid, h = gabriel_factor_operad(po.phi)
    pins = po.pins
    phi = OperadMap(po.phi.source, mid, {c: c for c in pins.objects},
                    {a: g(a) for a in pins.arrows}, "phi'")
    return Substitude(pins, mid, phi, f"{po.name}|pins"), h


def pinnings(p):
    """The discrete, groupoid and full pinnings of ``p``."""
    P1, P1iso = unary_cores(p)
    D = discrete_category(p.colours, f"ob({p.name})")
    out = {}
    out["discrete"] = Substitude(
        D, p, make_pin_map(D, p, {D.identity[c]: p.unit(c) for c in p.colours}),
        "discrete")
    out["groupoid"] = Substitude(
        P1iso, p, make_pin_map(P1iso, p, {a: a for a in P1iso.arrows}), "groupoid")
    out["full"] = Substitude(P1, p, make_pin_map(P1, p, {a: a for a in P1.arrows}), "full")
    return out


def normal_substitude_check(s):
    """Pins biject with all unary operations of the body."""
    images = [s.phi(a) for a in s.pins.arrows]
    unary = [op for a in s.body.colours for b in s.body.colours for op in s.body.ops((a,), b)]
    return len(set(images)) == len(images) and set(images) == set(unary)


def multihom_sizes(p, bound=None):
    return {prof: len(p.ops(*prof)) for prof in p.profiles(bound)}

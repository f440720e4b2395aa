"""Finite categories presented by composition tables.

Arrows are compared by identifier. Identifiers may be any hashable value;
categories read from text use strings, constructed categories use tuples.
"""

from dataclasses import dataclass
from itertools import product

from .errors import InputError
from .report import CheckReport


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        self.rank = {}
        for item in items:
            self.add(item)

    def add(self, item):
        if item not in self.parent:
            self.parent[item] = item
            self.rank[item] = 0

    def find(self, item):
        if item not in self.parent:
            self.add(item)
            return item
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def classes(self):
        groups = {}
        for item in self.parent:
            groups.setdefault(self.find(item), []).append(item)
        return list(groups.values())


class FinCategory:
    """A finite category.

    :param objects: object identifiers, in presentation order
    :param arrows: mapping ``arrow id -> (dom, cod)``, identities included
    :param identity: mapping ``object -> arrow id``
    :param compose: mapping ``(g, f) -> g . f``
    """

    def __init__(self, objects, arrows, identity, compose, name="C"):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.identity = dict(identity)
        self.compose = dict(compose)
        self._hom = None
        self._out = None

    @classmethod
    def from_generators(cls, objects, arrows, compose=(), name="C"):
        """Build a category whose identities are implicit.

        ``arrows`` lists ``(id, dom, cod)`` for the non-identity arrows and
        ``compose`` lists ``(g, f, h)`` for their non-identity composites.
        Identities are named ``id_<object>``.
        """
        objects = list(objects)
        table = {}
        identity = {}
        for x in objects:
            ident = f"id_{x}"
            identity[x] = ident
            table[ident] = (x, x)
        for a, d, c in arrows:
            if a in table:
                raise InputError(f"duplicate arrow {a!r}")
            table[a] = (d, c)
        comp = {}
        for g, f, h in compose:
            comp[(g, f)] = h
        cat = cls(objects, table, identity, comp, name)
        cat.fill_identity_composites()
        return cat

    def fill_identity_composites(self):
        for a, (d, c) in self.arrows.items():
            if d in self.identity:
                self.compose.setdefault((a, self.identity[d]), a)
            if c in self.identity:
                self.compose.setdefault((self.identity[c], a), a)
        self._hom = None
        self._out = None

    def dom(self, a):
        return self.arrows[a][0]

    def cod(self, a):
        return self.arrows[a][1]

    def comp(self, g, f):
        return self.compose[(g, f)]

    def hom(self, a, b):
        if self._hom is None:
            index = {}
            for arrow, (d, c) in self.arrows.items():
                index.setdefault((d, c), []).append(arrow)
            self._hom = index
        return self._hom.get((a, b), [])

    def out_of(self, x):
        """Arrows with domain ``x``."""
        if self._out is None:
            index = {}
            for arrow, (d, _) in self.arrows.items():
                index.setdefault(d, []).append(arrow)
            self._out = index
        return self._out.get(x, [])

    def is_identity(self, a):
        d, c = self.arrows[a]
        return d == c and self.identity.get(d) == a

    def inverse(self, u):
        """An inverse of ``u`` or ``None``."""
        d, c = self.arrows[u]
        for v in self.hom(c, d):
            if (self.compose.get((v, u)) == self.identity[d]
                    and self.compose.get((u, v)) == self.identity[c]):
                return v
        return None

    def is_groupoid(self):
        return all(self.inverse(u) is not None for u in self.arrows)

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.arrows)} arrows)"


def discrete_category(objects, name="D"):
    return FinCategory.from_generators(objects, [], name=name)


def terminal_category(name="1"):
    return discrete_category(["*"], name)


def _check_references(c):
    objs = set(c.objects)
    for a, (d, cod) in c.arrows.items():
        if d not in objs or cod not in objs:
            raise InputError(f"arrow {a!r} refers to an unknown object")
    for x in c.objects:
        if x not in c.identity:
            raise InputError(f"object {x!r} has no identity")
    for x, ident in c.identity.items():
        if x not in objs or ident not in c.arrows:
            raise InputError(f"identity of {x!r} refers to an unknown identifier")
    for (g, f), h in c.compose.items():
        for a in (g, f, h):
            if a not in c.arrows:
                raise InputError(f"composite ({g!r}, {f!r}) refers to unknown arrow {a!r}")


def validate_category(c):
    """Check the category axioms; the witness is the first violated instance."""
    _check_references(c)
    report = CheckReport("category", True)

    def fail(kind, *items):
        report.verdict = False
        report.witness = {"violation": kind, "instance": list(items)}
        return report

    for x in c.objects:
        i = c.identity[x]
        if c.arrows[i] != (x, x):
            return fail("identity has wrong endpoints", i)
    for (g, f), h in c.compose.items():
        if c.cod(f) != c.dom(g):
            return fail("composite of non-composable pair", g, f)
        if c.arrows[h] != (c.dom(f), c.cod(g)):
            return fail("composite has wrong endpoints", g, f)
    for f in c.arrows:
        d, cod = c.arrows[f]
        report.checked += 1
        if c.compose.get((f, c.identity[d])) != f:
            return fail("right identity law", f, c.identity[d])
        if c.compose.get((c.identity[cod], f)) != f:
            return fail("left identity law", c.identity[cod], f)
    for f in c.arrows:
        for g in c.out_of(c.cod(f)):
            if (g, f) not in c.compose:
                return fail("table incomplete", g, f)
    for f in c.arrows:
        for g in c.out_of(c.cod(f)):
            gf = c.compose[(g, f)]
            for h in c.out_of(c.cod(g)):
                report.checked += 1
                if c.compose[(h, gf)] != c.compose[(c.compose[(h, g)], f)]:
                    return fail("associativity", h, g, f)
    return report


class FinFunctor:
    def __init__(self, source, target, object_map, arrow_map, name="F"):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.arrow_map = dict(arrow_map)
        self.name = name

    def __call__(self, a):
        return self.arrow_map[a]

    def on_object(self, x):
        return self.object_map[x]

    def after(self, other):
        """Composite ``self . other``."""
        return FinFunctor(
            other.source, self.target,
            {x: self.object_map[y] for x, y in other.object_map.items()},
            {a: self.arrow_map[b] for a, b in other.arrow_map.items()},
            f"{self.name}.{other.name}")

    def __eq__(self, other):
        return (isinstance(other, FinFunctor)
                and self.object_map == other.object_map
                and self.arrow_map == other.arrow_map)

    def __hash__(self):
        return id(self)


def identity_functor(c):
    return FinFunctor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows}, "id")


def validate_functor(F):
    src, tgt = F.source, F.target
    report = CheckReport("functor", True)
    for x in src.objects:
        if x not in F.object_map or F.object_map[x] not in tgt.identity:
            raise InputError(f"object {x!r} is not mapped to an object of the target")
    for a in src.arrows:
        if a not in F.arrow_map or F.arrow_map[a] not in tgt.arrows:
            raise InputError(f"arrow {a!r} is not mapped to an arrow of the target")
    for a, (d, c) in src.arrows.items():
        report.checked += 1
        if tgt.arrows[F(a)] != (F.object_map[d], F.object_map[c]):
            report.verdict = False
            report.witness = {"violation": "endpoints", "arrow": a}
            return report
    for x in src.objects:
        if F(src.identity[x]) != tgt.identity[F.object_map[x]]:
            report.verdict = False
            report.witness = {"violation": "identity", "object": x}
            return report
    for (g, f), h in src.compose.items():
        report.checked += 1
        if tgt.compose[(F(g), F(f))] != F(h):
            report.verdict = False
            report.witness = {"violation": "composition", "pair": [g, f]}
            return report
    return report


class FinNatTrans:
    """Natural transformation ``source => target`` between parallel functors."""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, x):
        return self.components[x]


def validate_nat_trans(t):
    F, G = t.source, t.target
    D = F.target
    report = CheckReport("natural transformation", True)
    for x in F.source.objects:
        comp = t.components[x]
        if D.arrows[comp] != (F.on_object(x), G.on_object(x)):
            report.verdict = False
            report.witness = {"violation": "component endpoints", "object": x}
            return report
    for a, (d, c) in F.source.arrows.items():
        report.checked += 1
        if D.comp(t[c], F(a)) != D.comp(G(a), t[d]):
            report.verdict = False
            report.witness = {"violation": "naturality", "arrow": a}
            return report
    return report


@dataclass
class LaxSquare:
    """``phi : f . p => g . q`` for ``p: P -> A``, ``q: P -> B``,
    ``f: A -> C``, ``g: B -> C``."""

    p: FinFunctor
    q: FinFunctor
    f: FinFunctor
    g: FinFunctor
    phi: FinNatTrans

    def validate(self):
        P = self.p.source
        if self.q.source is not P:
            raise InputError("p and q must share their source")
        if self.p.target is not self.f.source or self.q.target is not self.g.source:
            raise InputError("square boundary does not compose")
        if self.f.target is not self.g.target:
            raise InputError("f and g must share their target")
        return validate_nat_trans(self.phi)


def gabriel_factor_functor(F):
    """Factor ``F`` as ``H . G`` with ``G`` identity on objects and ``H``
    fully faithful. Returns ``(G, mid, H)``."""
    A, B = F.source, F.target
    arrows, identity, compose = {}, {}, {}
    by_pair = {}
    for a in A.objects:
        for b in A.objects:
            ids = [((a, b), h) for h in B.hom(F.on_object(a), F.on_object(b))]
            by_pair[(a, b)] = ids
            for m in ids:
                arrows[m] = (a, b)
    for a in A.objects:
        identity[a] = ((a, a), B.identity[F.on_object(a)])
    for a, b, c in product(A.objects, repeat=3):
        for (_, f) in by_pair[(a, b)]:
            for (_, g) in by_pair[(b, c)]:
                compose[(((b, c), g), ((a, b), f))] = ((a, c), B.comp(g, f))
    mid = FinCategory(A.objects, arrows, identity, compose, f"{A.name}|{F.name}")
    G = FinFunctor(A, mid, {x: x for x in A.objects},
                   {f: ((A.dom(f), A.cod(f)), F(f)) for f in A.arrows}, "G")
    H = FinFunctor(mid, B, dict(F.object_map), {m: m[1] for m in arrows}, "H")
    return G, mid, H


def iso_core(c):
    keep = {u for u in c.arrows if c.inverse(u) is not None}
    arrows = {u: c.arrows[u] for u in c.arrows if u in keep}
    compose = {k: v for k, v in c.compose.items() if k[0] in keep and k[1] in keep}
    return FinCategory(c.objects, arrows, c.identity, compose, f"{c.name}_iso")


def comma_category(F, G):
    """The comma category ``F | G``.

    Returns ``(K, proj1, proj2, gamma)`` with ``gamma : F.proj1 => G.proj2``.
    """
    A, B, D = F.source, G.source, F.target
    if G.target is not D:
        raise InputError("comma category needs functors with a common target")
    objects = []
    for a in A.objects:
        for b in B.objects:
            for u in D.hom(F.on_object(a), G.on_object(b)):
                objects.append((a, u, b))
    arrows, compose, identity = {}, {}, {}
    out = {o: [] for o in objects}
    by_ab = {}
    for o in objects:
        by_ab.setdefault((o[0], o[2]), []).append(o)
    for o in objects:
        a, u, b = o
        for s in A.out_of(a):
            for t in B.out_of(b):
                lhs = D.comp(G(t), u)
                for o2 in by_ab.get((A.cod(s), B.cod(t)), []):
                    if D.comp(o2[1], F(s)) == lhs:
                        m = (o, o2, s, t)
                        arrows[m] = (o, o2)
                        out[o].append(m)
    for o in objects:
        identity[o] = (o, o, A.identity[o[0]], B.identity[o[2]])
    for m in arrows:
        o, o2, s, t = m
        for m2 in out[o2]:
            _, o3, s2, t2 = m2
            compose[(m2, m)] = (o, o3, A.comp(s2, s), B.comp(t2, t))
    K = FinCategory(objects, arrows, identity, compose, f"({F.name}|{G.name})")
    p1 = FinFunctor(K, A, {o: o[0] for o in objects}, {m: m[2] for m in arrows}, "proj1")
    p2 = FinFunctor(K, B, {o: o[2] for o in objects}, {m: m[3] for m in arrows}, "proj2")
    gamma = FinNatTrans(F.after(p1), G.after(p2), {o: o[1] for o in objects})
    return K, p1, p2, gamma


def is_connected(c):
    """Nonempty and any two objects joined by a zigzag. The empty category
    is not connected."""
    if not c.objects:
        return False
    uf = UnionFind(c.objects)
    for d, cod in c.arrows.values():
        uf.union(d, cod)
    root = uf.find(c.objects[0])
    return all(uf.find(x) == root for x in c.objects)


def fact_components(square, a, gamma, b):
    """Connected components of the factorisation category of ``gamma``.

    Objects are triples ``(alpha, x, beta)``; an empty list means the
    category is empty.
    """
    p, q, f, g, phi = square.p, square.q, square.f, square.g, square.phi
    P, A, B, C = p.source, p.target, q.target, f.target
    objects = []
    index = {}
    for x in P.objects:
        for alpha in A.hom(a, p.on_object(x)):
            fa = C.comp(phi[x], f(alpha))
            for beta in B.hom(q.on_object(x), b):
                if C.comp(g(beta), fa) == gamma:
                    obj = (alpha, x, beta)
                    objects.append(obj)
                    index.setdefault((x, alpha), []).append(beta)
    uf = UnionFind(objects)
    for alpha1, x1, beta1 in objects:
        for delta in P.out_of(x1):
            alpha2 = A.comp(p(delta), alpha1)
            x2 = P.cod(delta)
            qd = q(delta)
            for beta2 in index.get((x2, alpha2), ()):
                if B.comp(beta2, qd) == beta1:
                    uf.union((alpha1, x1, beta1), (alpha2, x2, beta2))
    return uf.classes()


def exact_square_check(square, bound=0):
    """Guitart exactness via connectedness of every factorisation category."""
    A, B, C = square.p.target, square.q.target, square.f.target
    report = CheckReport("exact-square", True, bound)
    for a in A.objects:
        for b in B.objects:
            for gamma in C.hom(square.f.on_object(a), square.g.on_object(b)):
                report.checked += 1
                comps = fact_components(square, a, gamma, b)
                if len(comps) != 1:
                    report.verdict = False
                    report.witness = {"a": a, "gamma": gamma, "b": b,
                                      "components": comps}
                    return report
    return report


@dataclass
class FunctorProps:
    fully_faithful: bool
    essentially_surjective: bool
    bijective_on_objects: bool
    identity_on_objects: bool
    equivalence: bool
    faithful: bool = True
    full: bool = True


def functor_props(F):
    A, B = F.source, F.target
    faithful = full = True
    for a in A.objects:
        for a2 in A.objects:
            images = [F(u) for u in A.hom(a, a2)]
            target = B.hom(F.on_object(a), F.on_object(a2))
            if len(set(images)) != len(images):
                faithful = False
            if set(images) != set(target):
                full = False
    image = {F.on_object(x) for x in A.objects}
    ess = True
    for y in B.objects:
        if y in image:
            continue
        if not any(B.inverse(u) is not None for z in image for u in B.hom(z, y)):
            ess = False
            break
    values = [F.on_object(x) for x in A.objects]
    bij = len(set(values)) == len(values) and set(values) == set(B.objects)
    ioo = bij and all(F.on_object(x) == x for x in A.objects)
    ff = faithful and full
    return FunctorProps(ff, ess, bij, ioo, ff and ess, faithful, full)

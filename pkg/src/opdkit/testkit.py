"""Seeded generators, negative-instance factories and small builders used by
the test suites."""

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import comb, factorial

from .adjunctions import (
    AlgebraData, HermidaFree, HermidaMorphism, _carrier_of, hereditary_check,
    hereditary_domain, hereditary_map, hermida_size, validate_algebra,
)
from .errors import OpdkitError
from .fincat import FinCategory, UnionFind, validate_category
from .operad import CommOperad, FinOperad, operad_of_category, pinnings, validate_operad
from .smc import (
    BoundedSMC, PinnedSMC, StrongMonoidalFunctor, ValidationError, check_pin, free_smc,
    validate_smc, weak_from_strict,
)


class GenerationError(OpdkitError):
    """The resampling budget ran out."""


class MutationError(OpdkitError):
    """No mutation site breaks the hereditary condition at this bound."""


@dataclass
class GenConfig:
    seed: int = 0
    max_objects: int = 3
    max_arrows: int = 4
    max_colours: int = 3
    max_ops: int = 4
    arity_bound: int = 3
    sequence_bound: int = 4
    max_nodes: int = 2
    isos: bool = True
    attempts: int = 200
    max_size: int = 120
    max_morphisms: int = 20000

    def __post_init__(self):
        for name in ("max_objects", "max_arrows", "max_colours", "max_ops",
                     "arity_bound", "sequence_bound", "max_nodes", "attempts"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def rng(self, salt=""):
        return random.Random(f"{self.seed}:{salt}")


# ----------------------------------------------------------------------------
# categories


def gen_category(cfg):
    """A random concrete category: tiny finite sets, generating functions
    between them and every composite. Samples whose closure exceeds
    ``max_arrows`` non-identity arrows are redrawn."""
    rng = cfg.rng("category")
    for _ in range(max(cfg.attempts, 1)):
        n = rng.randint(1, max(cfg.max_objects, 1))
        objects = [f"c{i}" for i in range(n)]
        sizes = {x: rng.randint(1, 3) for x in objects}
        gens = []
        for _ in range(rng.randint(0, cfg.max_arrows)):
            a, b = rng.choice(objects), rng.choice(objects)
            if a == b and rng.random() < 0.5:
                images = list(range(sizes[a]))
                rng.shuffle(images)
            else:
                images = [rng.randrange(sizes[b]) for _ in range(sizes[a])]
            gens.append((a, b, tuple(images)))
        c = _close_functions(objects, sizes, gens, cfg.max_arrows)
        if c is not None:
            rep = validate_category(c)
            if not rep.verdict:
                raise GenerationError(f"generated category is invalid: {rep.witness}")
            return c
    raise GenerationError("no category within the arrow budget")


def _close_functions(objects, sizes, gens, max_arrows):
    arrows = {(x, x, tuple(range(sizes[x]))) for x in objects}
    frontier = set(gens) - arrows
    arrows |= frontier
    while frontier:
        new = set()
        for f in list(arrows):
            for g in list(arrows):
                if f[1] == g[0]:
                    h = (f[0], g[1], tuple(g[2][i] for i in f[2]))
                    if h not in arrows:
                        new.add(h)
        arrows |= new
        frontier = new
        if len(arrows) - len(objects) > max_arrows:
            return None
    ids = {}
    names = {}
    for x in objects:
        ident = (x, x, tuple(range(sizes[x])))
        names[ident] = f"id_{x}"
        ids[x] = f"id_{x}"
    for k, arr in enumerate(sorted(a for a in arrows if a not in names)):
        names[arr] = f"f{k}"
    table = {names[a]: (a[0], a[1]) for a in arrows}
    compose = {}
    for f in arrows:
        for g in arrows:
            if f[1] == g[0]:
                compose[(names[g], names[f])] = names[(f[0], g[1], tuple(g[2][i] for i in f[2]))]
    return FinCategory(objects, table, ids, compose, "C")


def gen_groupoid(cfg):
    """A random groupoid: permutation generators on each object."""
    rng = cfg.rng("groupoid")
    n = rng.randint(1, max(cfg.max_objects, 1))
    objects = [f"c{i}" for i in range(n)]
    sizes = {x: rng.randint(1, 2) for x in objects}
    gens = []
    for x in objects:
        if sizes[x] == 2 and rng.random() < 0.5:
            gens.append((x, x, (1, 0)))
    return _close_functions(objects, sizes, gens, 10 ** 6)


# ----------------------------------------------------------------------------
# operads from trees


class TermOperad(FinOperad):
    """A free symmetric operad on a finite signature, truncated at an arity
    bound and made finite by collapsing every tree with at least
    ``max_nodes`` non-invertible generator nodes to a single absorbing
    operation per profile.

    ``isos`` maps a unary generator to its inverse generator; an involution
    is its own inverse. Each colour is touched by at most one invertible
    generator, so normal forms only need adjacent cancellation.

    Operations are ``(inputs, output, term)``; a term is ``("x", j)`` for
    input ``j``, ``(generator, child, ...)`` or ``("bot",)``.
    """

    def __init__(self, colours, generators, arity_bound, max_nodes=2, isos=None,
                 name="T"):
        self.colours = tuple(colours)
        self.generators = {g: (tuple(ins), out) for g, (ins, out) in generators.items()}
        self.isos = dict(isos or {})
        self.arity_bound = arity_bound
        self.max_nodes = max_nodes
        self.name = name
        for g, h in self.isos.items():
            if self.isos.get(h) != g:
                raise ValidationError(f"inverse of {g!r} is not registered")
            (a,), b = self.generators[g]
            if self.generators[h] != ((b,), a):
                raise ValidationError(f"{g!r} and {h!r} have mismatched profiles")
        self._shapes = self._planar_shapes()
        self._bottoms = self._reachable_bottoms()

    def counted(self, g):
        return g not in self.isos

    # planar trees with fewer than ``max_nodes`` counted nodes
    def _planar_shapes(self):
        """``{output: [(planar_term, leaf_colours, counted_nodes)]}``; planar
        leaves are ``("x", colour)``."""
        shapes = {c: {(("x", c), (c,), 0)} for c in self.colours}
        changed = True
        while changed:
            changed = False
            for g, (ins, out) in self.generators.items():
                inc = 1 if self.counted(g) else 0
                partial = [((), (), inc)]
                for c in ins:
                    nxt = []
                    for kids, leaves, cnt in partial:
                        for term, lv, k in shapes[c]:
                            if cnt + k >= self.max_nodes:
                                continue
                            if len(leaves) + len(lv) > self.arity_bound:
                                continue
                            nxt.append((kids + (term,), leaves + lv, cnt + k))
                    partial = nxt
                for kids, leaves, cnt in partial:
                    if g in self.isos and kids[0][0] == self.isos[g]:
                        continue
                    new = ((g,) + kids, leaves, cnt)
                    if new not in shapes[out]:
                        shapes[out].add(new)
                        changed = True
        return {c: sorted(v, key=repr) for c, v in shapes.items()}

    def _reachable_bottoms(self):
        """Profiles (as sorted input multisets) of trees with at least
        ``max_nodes`` counted nodes and arity within the bound."""
        k = self.max_nodes
        states = {(tuple(sorted([c])), c, 0) for c in self.colours}
        changed = True
        while changed:
            changed = False
            by_out = {}
            for ms, out, cnt in states:
                by_out.setdefault(out, []).append((ms, cnt))
            for g, (ins, out) in self.generators.items():
                acc = {((), 1 if self.counted(g) else 0)}
                for c in ins:
                    acc = {(tuple(sorted(ms + ms2)), min(cnt + cnt2, k))
                           for ms, cnt in acc for ms2, cnt2 in by_out.get(c, ())
                           if len(ms) + len(ms2) <= self.arity_bound}
                for ms, cnt in acc:
                    if (ms, out, cnt) not in states:
                        states.add((ms, out, cnt))
                        changed = True
        return {(ms, out) for ms, out, cnt in states if cnt >= k}

    def _ops(self, inputs, output):
        n = len(inputs)
        for term, leaves, _ in self._shapes[output]:
            if len(leaves) != n:
                continue
            for labels in permutations(range(1, n + 1)):
                if all(inputs[labels[p] - 1] == leaves[p] for p in range(n)):
                    yield (inputs, output, _label_leaves(term, labels))
        if (tuple(sorted(inputs)), output) in self._bottoms:
            yield (inputs, output, ("bot",))

    def profile(self, op):
        return op[0], op[1]

    def unit(self, colour):
        return ((colour,), colour, ("x", 1))

    def subst(self, outer, inners):
        key = (outer, tuple(inners))
        cache = self.__dict__.setdefault("_subst_cache", {})
        if key not in cache:
            cache[key] = self._subst(outer, key[1])
        return cache[key]

    def _subst(self, outer, inners):
        if outer[2] == ("x", 1):
            return inners[0]
        if all(op[2] == ("x", 1) for op in inners):
            return outer
        ins = ()
        for op in inners:
            ins += op[0]
        if len(ins) > self.arity_bound:
            return None
        out = outer[1]
        if outer[2] == ("bot",) or any(op[2] == ("bot",) for op in inners):
            return (ins, out, ("bot",))
        offsets, acc = [], 0
        for op in inners:
            offsets.append(acc)
            acc += len(op[0])
        term = self._normalise(_graft(outer[2], [op[2] for op in inners], offsets))
        if _count(term, self) >= self.max_nodes:
            return (ins, out, ("bot",))
        return (ins, out, term)

    def _normalise(self, term):
        if term[0] == "x":
            return term
        kids = tuple(self._normalise(t) for t in term[1:])
        g = term[0]
        if g in self.isos and kids[0][0] == self.isos[g]:
            return kids[0][1]
        return (g,) + kids

    def act(self, op, rho):
        rho = tuple(getattr(rho, "images", rho))
        key = (op, rho)
        cache = self.__dict__.setdefault("_act_cache", {})
        if key not in cache:
            cache[key] = self._act(op, rho)
        return cache[key]

    def _act(self, op, rho):
        ins, out, term = op
        new_ins = tuple(ins[r - 1] for r in rho)
        if term == ("bot",):
            return (new_ins, out, term)
        inv = [0] * len(rho)
        for i, r in enumerate(rho, 1):
            inv[r - 1] = i
        return (new_ins, out, _relabel(term, inv))


def _label_leaves(term, labels):
    counter = iter(labels)

    def rec(t):
        if t[0] == "x":
            return ("x", next(counter))
        return (t[0],) + tuple(rec(s) for s in t[1:])
    return rec(term)


def _graft(term, inners, offsets):
    if term[0] == "x":
        j = term[1] - 1
        return _relabel(inners[j], None, offsets[j])
    return (term[0],) + tuple(_graft(t, inners, offsets) for t in term[1:])


def _relabel(term, inv=None, shift=0):
    if term[0] == "x":
        j = term[1]
        return ("x", (inv[j - 1] if inv is not None else j) + shift)
    return (term[0],) + tuple(_relabel(t, inv, shift) for t in term[1:])


def _count(term, operad):
    if term[0] == "x":
        return 0
    own = 1 if operad.counted(term[0]) else 0
    return own + sum(_count(t, operad) for t in term[1:])


def gen_operad(cfg):
    """A random ``TermOperad``: up to ``max_ops`` generators of arity at most
    ``min(3, arity_bound)``, plus (optionally) invertible unary generators,
    at most one per colour."""
    rng = cfg.rng("operad")
    for _ in range(max(cfg.attempts, 1)):
        ncol = rng.randint(1, max(cfg.max_colours, 1))
        colours = [f"c{i}" for i in range(ncol)]
        gens = {}
        for k in range(rng.randint(0, cfg.max_ops)):
            arity = rng.randint(0, min(3, cfg.arity_bound))
            gens[f"g{k}"] = (tuple(rng.choice(colours) for _ in range(arity)),
                             rng.choice(colours))
        isos = {}
        if cfg.isos:
            free = list(colours)
            rng.shuffle(free)
            while free and rng.random() < 0.5:
                a = free.pop()
                if free and rng.random() < 0.5:
                    b = free.pop()
                    gens[f"v{a}"] = ((a,), b)
                    gens[f"w{a}"] = ((b,), a)
                    isos[f"v{a}"], isos[f"w{a}"] = f"w{a}", f"v{a}"
                else:
                    gens[f"u{a}"] = ((a,), a)
                    isos[f"u{a}"] = f"u{a}"
        p = TermOperad(colours, gens, cfg.sequence_bound, cfg.max_nodes, isos,
                       f"T{cfg.seed}")
        if sum(1 for _ in p.all_ops()) > cfg.max_size:
            continue
        if cfg.max_morphisms and hermida_size(p, cfg.sequence_bound,
                                              cfg.max_morphisms) > cfg.max_morphisms:
            continue
        return p
    raise GenerationError("no operad within the size budget")


def gen_substitude(cfg, kind="groupoid"):
    """A pinning of a generated operad."""
    return pinnings(gen_operad(cfg))[kind]


def checked_operad(cfg):
    p = gen_operad(cfg)
    rep = validate_operad(p)
    if not rep.verdict:
        raise GenerationError(f"generated operad is invalid: {rep.witness}")
    return p


# ----------------------------------------------------------------------------
# mutations


class AbsorbingExtension(BoundedSMC):
    """``M`` with one extra absorbing morphism ``("zero", x, y)`` for every
    hom pair ``(x, y)`` of an ideal closed under composition with ``M`` and
    tensoring with objects."""

    def __init__(self, base, ideal, name=None):
        self.base = base
        self.ideal = frozenset(ideal)
        self.colours = base.colours
        self.bound = base.bound
        self.name = name or f"{base.name}+0"

    def objects(self):
        return self.base.objects()

    @staticmethod
    def is_zero(u):
        return isinstance(u, tuple) and len(u) == 3 and u[0] == "zero"

    def _hom(self, x, y):
        yield from self.base.hom(x, y)
        if (x, y) in self.ideal:
            yield ("zero", x, y)

    def dom(self, u):
        return u[1] if self.is_zero(u) else self.base.dom(u)

    def cod(self, u):
        return u[2] if self.is_zero(u) else self.base.cod(u)

    def identity(self, x):
        return self.base.identity(x)

    def compose(self, g, f):
        if self.is_zero(g) or self.is_zero(f):
            return ("zero", self.dom(f), self.cod(g))
        return self.base.compose(g, f)

    def tensor(self, u, v):
        if self.is_zero(u) or self.is_zero(v):
            d, c = self.dom(u) + self.dom(v), self.cod(u) + self.cod(v)
            if len(d) > self.bound or len(c) > self.bound:
                return None
            return ("zero", d, c)
        return self.base.tensor(u, v)

    def sym(self, rho, x):
        return self.base.sym(rho, x)


def ideal_closure(m, seed_pair):
    """Smallest set of hom pairs containing ``seed_pair`` and closed under
    composition with morphisms of ``m`` and tensoring with objects."""
    objects = m.objects()
    ideal = {seed_pair}
    todo = [seed_pair]
    while todo:
        x, y = todo.pop()
        nxt = []
        for x2 in objects:
            if m.hom(x2, x):
                nxt.append((x2, y))
        for y2 in objects:
            if m.hom(y, y2):
                nxt.append((x, y2))
        for w in objects:
            if len(x) + len(w) <= m.bound and len(y) + len(w) <= m.bound:
                nxt.append((x + w, y + w))
                nxt.append((w + x, w + y))
        for pair in nxt:
            if pair not in ideal:
                ideal.add(pair)
                todo.append(pair)
    return ideal


class QuotientSMC(BoundedSMC):
    """``M`` modulo a congruence given by a union-find on morphisms."""

    def __init__(self, base, classes, name=None):
        self.base = base
        self.colours = base.colours
        self.bound = base.bound
        self.name = name or f"{base.name}/~"
        self.rep = {}
        for cls in classes:
            r = min(cls, key=repr)
            for u in cls:
                self.rep[u] = r

    def objects(self):
        return self.base.objects()

    def _hom(self, x, y):
        seen = []
        for u in self.base.hom(x, y):
            r = self.rep.get(u, u)
            if r not in seen:
                seen.append(r)
        return seen

    def dom(self, u):
        return self.base.dom(u)

    def cod(self, u):
        return self.base.cod(u)

    def _r(self, u):
        return None if u is None else self.rep.get(u, u)

    def identity(self, x):
        return self._r(self.base.identity(x))

    def compose(self, g, f):
        return self._r(self.base.compose(g, f))

    def tensor(self, u, v):
        return self._r(self.base.tensor(u, v))

    def sym(self, rho, x):
        return self._r(self.base.sym(rho, x))

    def project(self, u):
        return self._r(u)


def congruence_closure(m, u, v, limit=20000):
    """Smallest congruence identifying ``u`` and ``v``, as a list of
    non-trivial classes."""
    mors = list(m.morphisms())
    by_dom, by_cod = {}, {}
    for f in mors:
        by_dom.setdefault(m.dom(f), []).append(f)
        by_cod.setdefault(m.cod(f), []).append(f)
    uf = UnionFind()
    todo = [(u, v)]
    steps = 0
    while todo:
        a, b = todo.pop()
        if uf.find(a) == uf.find(b):
            continue
        uf.union(a, b)
        steps += 1
        if steps > limit:
            raise MutationError("congruence closure too large")
        for g in by_dom.get(m.cod(a), ()):
            todo.append((m.compose(g, a), m.compose(g, b)))
        for f in by_cod.get(m.dom(a), ()):
            todo.append((m.compose(a, f), m.compose(b, f)))
        for w in mors:
            ta, tb = m.tensor(a, w), m.tensor(b, w)
            if ta is not None:
                todo.append((ta, tb))
            ta, tb = m.tensor(w, a), m.tensor(w, b)
            if ta is not None:
                todo.append((ta, tb))
    return [cls for cls in uf.classes() if len(cls) > 1]


def _hereditary_fails(tau, pairs=None):
    return not hereditary_check(tau, pairs=pairs).verdict


def _emit(tau):
    rep = validate_smc(tau.target)
    if not rep.verdict:
        raise MutationError(f"mutation broke the SMC axioms: {rep.witness}")
    return tau


def mutate_break_hereditary(tau, seed=0, mode=None):
    """A pinned SMC close to ``tau`` that is not hereditary.

    Mode ``"a"`` adjoins absorbing morphisms on the ideal generated by a hom
    pair with a codomain of length at least 2; mode ``"b"`` identifies two
    morphisms of one hom that decompose along different functions. Every
    emission passes ``validate_smc``.
    """
    rng = random.Random(f"mutate:{seed}")
    mode = mode or rng.choice("ab")
    M, C = tau.target, tau.base
    if mode == "a":
        seeds = [(x, y) for x in M.objects() for y in M.objects() if len(y) >= 2]
        rng.shuffle(seeds)
        for pair in seeds:
            ideal = ideal_closure(M, pair)
            ext = AbsorbingExtension(M, ideal)
            new = PinnedSMC(C, ext, tau.arrow_pin, f"{tau.name}+0")
            # hom pairs outside the ideal are untouched by the extension
            if _hereditary_fails(new, sorted(ideal, key=repr)):
                return _emit(new)
        raise MutationError("no absorbing extension breaks the hereditary condition")
    if mode == "b":
        sites = []
        for x in M.objects():
            for y in M.objects():
                if len(y) < 2 and len(x) < 2:
                    continue
                by_alpha = {}
                for e in hereditary_domain(tau, x, y):
                    by_alpha.setdefault(e[0], []).append(hereditary_map(tau, x, e))
                if len(by_alpha) >= 2:
                    sites.append((x, y, by_alpha))
        rng.shuffle(sites)
        for x, y, by_alpha in sites[:12]:
            alphas = sorted(by_alpha)
            a1, a2 = rng.sample(alphas, 2)
            u, v = rng.choice(by_alpha[a1]), rng.choice(by_alpha[a2])
            if u == v:
                continue
            try:
                classes = congruence_closure(M, u, v)
            except MutationError:
                continue
            q = QuotientSMC(M, classes)
            pins = {a: q.project(f) for a, f in tau.arrow_pin.items()}
            try:
                check_pin(C, q, pins)
            except ValidationError:
                continue
            new = PinnedSMC(C, q, pins, f"{tau.name}/~")
            if _hereditary_fails(new):
                return _emit(new)
        raise MutationError("no quotient breaks the hereditary condition")
    raise ValueError(f"unknown mutation mode {mode!r}")


# ----------------------------------------------------------------------------
# weak instances for strictification


def twisted_weak_instance(seed, bound=2):
    """A strict SMC transported to a weak one along a relabelling of
    objects and random automorphisms as tensor comparisons.

    Returns ``(F, M0)`` with ``F : M0 -> W`` strong monoidal.
    """
    rng = random.Random(f"weak:{seed}")
    n = rng.randint(1, 2)
    objects = [f"c{i}" for i in range(n)]
    arrows, compose = [], []
    for x in objects:
        if rng.random() < 0.7:
            arrows.append((f"t{x}", x, x))
            compose.append((f"t{x}", f"t{x}", f"id_{x}"))
    C = FinCategory.from_generators(objects, arrows, compose)
    M0 = free_smc(C, bound)
    twist = {}
    for x in M0.objects():
        for y in M0.objects():
            if len(x) + len(y) <= bound and rng.random() < 0.6:
                auts = [u for u in M0.hom(x + y, x + y) if _invertible(M0, u)]
                twist[(x, y)] = rng.choice(auts)
    relabel = {x: f"<{' '.join(x)}>" for x in M0.objects()}
    W, J = weak_from_strict(M0, twist, relabel, f"W{seed}")
    F = StrongMonoidalFunctor(M0, W, J["object"], J["arrow"], J["coherence"],
                              J["arrow"][M0.identity(())], f"F{seed}")
    return F, M0


def _first_algebra(s, W, carrier, carrier_arrows, name):
    P = s.body
    ops = list(P.all_ops(2))
    candidates = [W.hom(_carrier_of(carrier, P.profile(op)[0]), carrier[P.profile(op)[1]])
                  for op in ops]
    for values in product(*candidates):
        a = AlgebraData(s, W, carrier, carrier_arrows, dict(zip(ops, values)), 2, name)
        if validate_algebra(a).verdict:
            return a
    raise GenerationError(f"{name}: no algebra structure exists")


def tiny_algebra_instances():
    """Five algebras for substitudes with one or two colours and multihoms of
    size at most two, valued in small free monoidal categories on operads."""

    def single(W, ins, out, op):
        return HermidaMorphism(tuple(ins), (out,), (1,) * len(ins), (op,))

    out = []
    comm = CommOperad(2, "*")
    W = HermidaFree(CommOperad(2, "d"), 2)
    s = pinnings(comm)["discrete"]
    out.append(_first_algebra(s, W, {"*": ("d",)}, {a: W.identity(("d",)) for a in s.pins.arrows},
                              "comm-in-comm"))

    mag = TermOperad(["*"], {"m": (("*", "*"), "*")}, 2, max_nodes=2, name="Mag")
    W = HermidaFree(TermOperad(["d"], {"n": (("d", "d"), "d")}, 2, max_nodes=2, name="Mag'"), 2)
    s = pinnings(mag)["discrete"]
    out.append(_first_algebra(s, W, {"*": ("d",)}, {a: W.identity(("d",)) for a in s.pins.arrows},
                              "magma-in-magma"))

    inv = TermOperad(["*"], {"i": (("*",), "*"), "m": (("*", "*"), "*")}, 2, max_nodes=1,
                     isos={"i": "i"}, name="Z2")
    Q = TermOperad(["d"], {"j": (("d",), "d"), "n": (("d", "d"), "d")}, 2, max_nodes=1,
                   isos={"j": "j"}, name="Z2'")
    W = HermidaFree(Q, 2)
    s = pinnings(inv)["groupoid"]
    j = next(op for op in Q.ops(("d",), "d") if op[2] != ("x", 1))
    arrows = {a: (W.identity(("d",)) if s.phi(a) == inv.unit("*") else single(W, ("d",), "d", j))
              for a in s.pins.arrows}
    out.append(_first_algebra(s, W, {"*": ("d",)}, arrows, "involution"))

    arrow = FinCategory.from_generators(["a", "b"], [("f", "a", "b")], name="2")
    W = HermidaFree(operad_of_category(arrow, 2), 2)
    s = pinnings(operad_of_category(arrow, 2))["full"]
    arrows = {a: single(W, (s.pins.dom(a),), s.pins.cod(a), s.phi(a)) for a in s.pins.arrows}
    out.append(_first_algebra(s, W, {"a": ("a",), "b": ("b",)}, arrows, "arrow"))

    two = TermOperad(["a", "b"], {"f": (("a", "a"), "b")}, 2, max_nodes=2, name="Sq")
    W = HermidaFree(CommOperad(2, "d"), 2)
    s = pinnings(two)["discrete"]
    out.append(_first_algebra(s, W, {"a": ("d",), "b": ("d",)},
                              {a: W.identity(("d",)) for a in s.pins.arrows}, "square"))
    return out


def _invertible(M, u):
    x, y = M.dom(u), M.cod(u)
    return any(M.compose(v, u) == M.identity(x) and M.compose(u, v) == M.identity(y)
               for v in M.hom(y, x))


# ----------------------------------------------------------------------------
# oracles


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def binary_tree_count(n):
    """Leaf-labelled planar binary trees with ``n`` leaves."""
    return factorial(n) * catalan(n - 1) if n >= 1 else 0


def brute_free_smc_count(c, x, y):
    """``sum over rho of prod_i |C(x_i, y_rho(i))|`` by direct enumeration
    of bijections."""
    if len(x) != len(y):
        return 0
    total = 0
    for rho in permutations(range(len(x))):
        prod_ = 1
        for i, r in enumerate(rho):
            prod_ *= len(c.hom(x[i], y[r]))
        total += prod_
    return total


def brute_function_count(m, n):
    """Number of functions ``m -> n`` by listing them."""
    return sum(1 for _ in product(range(n), repeat=m))

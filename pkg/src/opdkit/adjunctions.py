"""Free monoidal categories on operads, the substitude adjunction and the
recognisers built on top of it.

A morphism of the free symmetric monoidal category ``F P`` on an operad
``P`` is a function ``alpha`` from input positions to output positions
together with one operation per output position, taking the fibre of
``alpha`` (in increasing order) to that output colour.
"""

from dataclasses import dataclass
from itertools import permutations, product
from typing import NamedTuple

from .errors import InputError, InternalInconsistency
from .fincat import UnionFind
from .operad import (
    CategoryOperad, EndOperad, OperadMap, PinnedOperad, Substitude, coreflect,
    validate_operad_map, _inner_choices,
)
from .permcore import FinFunction, block_permutation, identity_images, perm_monotone_factor
from .report import CheckReport, check_enum_size, max_enum
from .smc import (
    BoundedSMC, StrictFunctor, ValidationError, build_pinned, check_strict_functor,
    monoidal_exactness_check, sequences,
)

__all__ = [
    "CheckReport", "HermidaMorphism", "HermidaFree", "HereditaryWitness",
    "AlgebraData", "hermida_free", "hermida_unit", "hermida_counit",
    "subst_free", "subst_end", "subst_unit_check", "counit_check",
    "hereditary_check", "hereditary_map", "recheck_hereditary_witness",
    "regular_pattern_check", "feynman_check", "comma_condition_check",
    "roundtrip_report", "algebra_correspondence", "pinned_counit",
    "validate_algebra", "algebra_functor", "operad_map_fully_faithful",
]


def _sorting_perm(alpha):
    """``sigma(i)`` = rank of ``i`` when positions are sorted by
    ``(alpha(i), i)``, as an image tuple."""
    order = sorted(range(len(alpha)), key=lambda i: (alpha[i], i))
    sigma = [0] * len(alpha)
    for rank, i in enumerate(order, 1):
        sigma[i] = rank
    return tuple(sigma)


def _fibred_choices(m, n, choices):
    """Yield ``(alpha, picks)`` over all functions ``alpha : m -> n`` and
    all ``picks[j]`` in ``choices(mask_j, j)``, where ``mask_j`` is the
    bitmask of the fibre over ``j + 1``. Empty choice lists prune early."""
    full = (1 << m) - 1

    def rec(j, remaining):
        if j == n:
            if remaining == 0:
                yield (), ()
            return
        if j == n - 1:
            subsets = [remaining]
        else:
            subsets = []
            sub = remaining
            while True:
                subsets.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & remaining
        for mask in subsets:
            options = choices(mask, j)
            if not options:
                continue
            for masks, picks in rec(j + 1, remaining & ~mask):
                for pick in options:
                    yield (mask,) + masks, (pick,) + picks

    for masks, picks in rec(0, full):
        alpha = [0] * m
        for j, mask in enumerate(masks, 1):
            for i in range(m):
                if mask >> i & 1:
                    alpha[i] = j
        yield tuple(alpha), picks


def _mask_items(xs, mask):
    return tuple(x for i, x in enumerate(xs) if mask >> i & 1)


# ----------------------------------------------------------------------------
# the free symmetric monoidal category on an operad


class HermidaMorphism(NamedTuple):
    dom: tuple
    cod: tuple
    alpha: tuple
    ops: tuple


class HermidaFree(BoundedSMC):
    """``F P`` truncated to sequences of length at most ``bound``."""

    def __init__(self, operad, bound, name=None):
        if bound > operad.arity_bound:
            raise InputError("sequence bound exceeds the arity bound of the operad")
        self.operad = operad
        self.colours = tuple(operad.colours)
        self.bound = bound
        self.name = name or f"F{operad.name}"

    def _hom(self, x, y):
        P = self.operad

        def choices(mask, j):
            return P.ops(_mask_items(x, mask), y[j])

        for alpha, ops in _fibred_choices(len(x), len(y), choices):
            yield HermidaMorphism(x, y, alpha, ops)

    def dom(self, u):
        return u.dom

    def cod(self, u):
        return u.cod

    def identity(self, x):
        P = self.operad
        return HermidaMorphism(x, x, identity_images(len(x)), tuple(P.unit(c) for c in x))

    def _units(self, x):
        cache = self.__dict__.setdefault("_unit_cache", {})
        if x not in cache:
            cache[x] = tuple(self.operad.unit(c) for c in x)
        return cache[x]

    def compose(self, g, f):
        if f.cod != g.dom:
            raise InputError("morphisms are not composable")
        P = self.operad
        alpha, beta = f.alpha, g.alpha
        # a symmetry on the right only reorders inputs, so no substitution
        f_sym = f.ops == self._units(f.cod)
        over_j = [[] for _ in beta]
        for i, a in enumerate(alpha, 1):
            over_j[a - 1].append(i)
        over_k = [[] for _ in g.ops]
        for j, b in enumerate(beta, 1):
            over_k[b - 1].append(j)
        ops = []
        for h, fibre in zip(g.ops, over_k):
            s = h if f_sym else P.subst(h, [f.ops[j - 1] for j in fibre])
            block_order = [i for j in fibre for i in over_j[j - 1]]
            ranked = sorted(block_order)
            if ranked == block_order:
                ops.append(s)
            else:
                ops.append(P.act(s, tuple(block_order.index(i) + 1 for i in ranked)))
        return HermidaMorphism(f.dom, g.cod, tuple(beta[a - 1] for a in alpha), tuple(ops))

    def tensor_all(self, mors):
        dom, cod, alpha, ops = (), (), (), ()
        for u in mors:
            n = len(cod)
            dom += u.dom
            cod += u.cod
            alpha += tuple(a + n for a in u.alpha)
            ops += u.ops
        if len(dom) > self.bound or len(cod) > self.bound:
            return None
        return HermidaMorphism(dom, cod, alpha, ops)

    def tensor(self, u, v):
        dom, cod = u.dom + v.dom, u.cod + v.cod
        if len(dom) > self.bound or len(cod) > self.bound:
            return None
        n = len(u.cod)
        return HermidaMorphism(dom, cod, u.alpha + tuple(a + n for a in v.alpha), u.ops + v.ops)

    def sym(self, rho, x):
        rho = tuple(getattr(rho, "images", rho))
        y = [None] * len(x)
        for i, r in enumerate(rho):
            y[r - 1] = x[i]
        y = tuple(y)
        return HermidaMorphism(tuple(x), y, rho, self._units(y))


def hermida_free(p, bound):
    return HermidaFree(p, bound)


def hermida_size(p, bound, limit=None):
    """Number of morphisms of ``F P`` within ``bound``, from multihom sizes
    alone. Stops early once ``limit`` is exceeded."""

    sizes = {}

    def size(items, out):
        key = (tuple(sorted(items, key=repr)), out)
        if key not in sizes:
            sizes[key] = len(p.ops(items, out))
        return sizes[key]

    objs = sequences(p.colours, bound)
    total = 0
    for x in objs:
        m = len(x)
        subsets = {mask: _mask_items(x, mask) for mask in range(1 << m)}
        for y in objs:
            n = len(y)
            memo = {}

            def rec(j, remaining):
                if j == n:
                    return 1 if remaining == 0 else 0
                key = (j, remaining)
                if key in memo:
                    return memo[key]
                res = 0
                sub = remaining
                while True:
                    if j < n - 1 or sub == remaining:
                        c = size(subsets[sub], y[j])
                        if c:
                            res += c * rec(j + 1, remaining & ~sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & remaining
                memo[key] = res
                return res

            total += rec(0, (1 << m) - 1)
            if limit is not None and total > limit:
                return total
    return total


def hermida_unit(p, bound):
    """The fully faithful operad map ``P -> End(F P)``."""
    F = HermidaFree(p, bound)
    E = EndOperad(F)

    def op_map(op):
        ins, out = p.profile(op)
        return HermidaMorphism(ins, (out,), (1,) * len(ins), (op,))

    return OperadMap(p, E, {c: c for c in p.colours}, op_map, "eta")


def operad_map_fully_faithful(f, bound=None):
    """Each multihom of the source maps bijectively onto the target's."""
    P, Q = f.source, f.target
    bound = P.arity_bound if bound is None else bound
    report = CheckReport("fully-faithful", True, bound)
    for ins, out in P.profiles(bound):
        report.checked += 1
        images = [f(op) for op in P.ops(ins, out)]
        target = Q.ops(tuple(f.colour(c) for c in ins), f.colour(out))
        if len(set(images)) != len(images) or set(images) != set(target):
            report.verdict = False
            report.witness = {"profile": (ins, out), "source_size": len(images),
                              "target_size": len(target)}
            return report
    return report


def _counit_arrow(M, op_to_mor):
    def arrow(u):
        parts = M.tensor_all([op_to_mor(op) for op in u.ops])
        return M.compose(parts, M.sym(_sorting_perm(u.alpha), u.dom))
    return arrow


def hermida_counit(m, body=None, op_to_mor=None):
    """The strict functor ``F(End M) -> M``, ``(alpha, g) |-> (x)g . sym``.

    ``body`` may replace ``End(M)`` by an operad whose operations carry an
    ``M``-morphism, read off by ``op_to_mor``.
    """
    body = EndOperad(m) if body is None else body
    op_to_mor = op_to_mor or (lambda op: op)
    F = HermidaFree(body, m.bound)
    return StrictFunctor(F, m, lambda x: x, _counit_arrow(m, op_to_mor), "counit")


def counit_check(counit):
    """Bijective on objects and fully faithful within the bound."""
    F, M = counit.source, counit.target
    report = CheckReport("counit", True, M.bound)
    if set(F.objects()) != set(M.objects()):
        report.verdict = False
        report.witness = {"violation": "not bijective on objects"}
        return report
    for x in F.objects():
        for y in F.objects():
            report.checked += 1
            seen = {}
            for u in F.hom(x, y):
                img = counit(u)
                if img in seen:
                    report.verdict = False
                    report.witness = {"violation": "not faithful", "source": x, "target": y,
                                      "collision": [seen[img], u], "image": img}
                    return report
                seen[img] = u
            missing = [f for f in M.hom(x, y) if f not in seen]
            if missing:
                report.verdict = False
                report.witness = {"violation": "not full", "source": x, "target": y,
                                  "morphism": missing[0]}
                return report
    return report


# ----------------------------------------------------------------------------
# the substitude adjunction


def subst_free(s, bound, check_length=2):
    """``S C -> F P`` for a substitude ``C -> P``."""
    F = HermidaFree(s.body, bound)
    pins = s.pins
    pin = {a: HermidaMorphism((pins.dom(a),), (pins.cod(a),), (1,), (s.phi(a),))
           for a in pins.arrows}
    return build_pinned(pins, F, pin, f"F{s.name}", check_length)


def subst_end(tau):
    """``C -> End(M)|C``, the base change of the endomorphism operad to the
    pins of ``tau``."""
    M, C = tau.target, tau.base
    E = EndOperad(M)
    phi = OperadMap(CategoryOperad(C), E, {c: c for c in C.objects},
                    dict(tau.arrow_pin), "phi")
    s, _ = coreflect(PinnedOperad(C, E, phi, f"End({M.name})"))
    return s


def subst_unit_check(s, bound):
    """The comparison ``s -> subst_end(subst_free(s))`` is invertible on
    every multihom with at most ``bound`` inputs."""
    tau = subst_free(s, bound)
    s2 = subst_end(tau)
    P, Q = s.body, s2.body
    report = CheckReport("substitude-unit", True, bound)

    def op_map(op):
        ins, out = P.profile(op)
        return ((ins, out), HermidaMorphism(ins, (out,), (1,) * len(ins), (op,)))

    eta = OperadMap(P, Q, {c: c for c in P.colours}, op_map, "unit")
    for a in s.pins.arrows:
        if s2.phi(a) != eta(s.phi(a)):
            report.verdict = False
            report.witness = {"violation": "pins not preserved", "arrow": a}
            return report
    for ins, out in P.profiles():
        if len(ins) > bound:
            report.skipped += 1
            continue
        report.checked += 1
        images = [eta(op) for op in P.ops(ins, out)]
        target = Q.ops(ins, out)
        if len(set(images)) != len(images) or set(images) != set(target):
            report.verdict = False
            report.witness = {"violation": "not bijective", "profile": (ins, out),
                              "source_size": len(images), "target_size": len(target)}
            return report
    if P.arity_bound <= bound:
        rep = validate_operad_map(eta)
        report.checked += rep.checked
        report.skipped += rep.skipped
        if not rep.verdict:
            report.verdict = False
            report.witness = {"violation": "not an operad map", "detail": rep.witness}
    return report


# ----------------------------------------------------------------------------
# the hereditary condition


@dataclass
class HereditaryWitness:
    """A hom pair on which the tensoring map fails to be bijective."""

    x: tuple
    y: tuple
    lhs: list
    mapping: dict
    failure: dict

    def as_dict(self):
        return {"x": self.x, "y": self.y, "domain_size": len(self.lhs),
                "mapping": [[k, v] for k, v in self.mapping.items()],
                "failure": self.failure}


def hereditary_domain(tau, x, y):
    """``(alpha, (g_j))`` with ``g_j : (x_i)_{alpha i = j} -> (y_j)``."""
    M = tau.target
    cache = {}

    def choices(mask, j):
        key = (mask, j)
        if key not in cache:
            cache[key] = M.hom(_mask_items(x, mask), (y[j],))
        return cache[key]

    return _fibred_choices(len(x), len(y), choices)


def hereditary_map(tau, x, element):
    """``h(alpha, g) = (x)_j g_j . sym(sigma_alpha)``."""
    M = tau.target
    alpha, gs = element
    return M.compose(M.tensor_all(gs), M.sym(_sorting_perm(alpha), x))


def _hereditary_pair(tau, x, y, stop_early=True):
    """Return ``(injective, surjective, failure)`` for one hom pair."""
    M = tau.target
    seen = {}
    collision = None
    limit = max_enum()
    for count, element in enumerate(hereditary_domain(tau, x, y), 1):
        if count > limit:
            check_enum_size(count, f"hereditary domain over {(x, y)!r}")
        img = hereditary_map(tau, x, element)
        if img in seen:
            collision = {"kind": "collision", "elements": [seen[img], element], "image": img}
            if stop_early:
                return False, None, collision
        else:
            seen[img] = element
    missing = next((f for f in M.hom(x, y) if f not in seen), None)
    failure = collision
    if failure is None and missing is not None:
        failure = {"kind": "missing", "morphism": missing}
    return collision is None, missing is None, failure


def hereditary_check(tau, details=False, pairs=None):
    """The tensoring map is a bijection onto ``M(x, y)`` for every pair of
    sequences within the bound.

    With ``details`` every pair is visited and the report records whether
    injectivity and surjectivity hold separately. ``pairs`` restricts the
    check to the given hom pairs.
    """
    M = tau.target
    report = CheckReport("hereditary", True, tau.bound)
    injective = surjective = True
    if pairs is None:
        objs = M.objects()
        groups = [(x, objs) for x in objs]
    else:
        by_x = {}
        for x, y in pairs:
            by_x.setdefault(x, []).append(y)
        groups = sorted(by_x.items(), key=repr)
    for x, ys in groups:
        for y in ys:
            report.checked += 1
            inj, surj, failure = _hereditary_pair(tau, x, y, stop_early=not details)
            if failure is None:
                continue
            if report.witness is None:
                lhs = list(hereditary_domain(tau, x, y))
                mapping = {e: hereditary_map(tau, x, e) for e in lhs}
                report.witness = HereditaryWitness(x, y, lhs, mapping, failure)
            report.verdict = False
            injective &= bool(inj)
            surjective &= bool(surj)
            if not details:
                break
        if report.witness is not None and not details:
            break
    report.details["injective"] = injective
    report.details["surjective"] = surjective
    return report


def recheck_hereditary_witness(tau, witness):
    """Re-verify a failure by direct enumeration over every function
    ``alpha`` (no fibre pruning)."""

    M = tau.target
    x, y = tuple(witness.x), tuple(witness.y)
    images = []
    for alpha in product(range(1, len(y) + 1), repeat=len(x)):
        homs = []
        for j in range(1, len(y) + 1):
            homs.append(M.hom(tuple(x[i] for i in range(len(x)) if alpha[i] == j), (y[j - 1],)))
        sigma, _ = perm_monotone_factor(FinFunction(alpha, len(y)))
        s = M.sym(sigma.images, x)
        for gs in product(*homs):
            images.append(M.compose(M.tensor_all(gs), s))
    failure = witness.failure
    if failure["kind"] == "collision":
        return images.count(failure["image"]) >= 2
    return failure["morphism"] in M.hom(x, y) and failure["morphism"] not in images


def regular_pattern_check(tau):
    """Bijective on objects and hereditary, cross-checked against the
    exactness criterion."""
    M, C = tau.target, tau.base
    report = CheckReport("regular-pattern", True, tau.bound)
    if set(M.colours) != set(C.objects):
        raise InternalInconsistency("pinned SMC is not bijective on objects")
    her = hereditary_check(tau)
    exact = monoidal_exactness_check(tau)
    if her.verdict != exact.verdict:
        raise InternalInconsistency(
            f"hereditary={her.verdict} but exactness={exact.verdict} on {tau.name}")
    report.verdict = her.verdict
    report.checked = her.checked + exact.checked
    report.skipped = her.skipped + exact.skipped
    report.witness = her.witness
    report.details = {"hereditary": her, "exactness": exact}
    return report


# ----------------------------------------------------------------------------
# Feynman categories and the comma condition


def _isos(M, x, y):
    out = []
    for u in M.hom(x, y):
        for v in M.hom(y, x):
            if M.compose(v, u) == M.identity(x) and M.compose(u, v) == M.identity(y):
                out.append(u)
                break
    return out


def _tau_iso_props(tau):
    """Whether ``S C(x, y) -> Iso_M(x, y)`` is injective and surjective for
    all pairs within the bound."""
    S, M = tau.source(), tau.target
    faithful = full = True
    witness = None
    for x in M.objects():
        for y in M.objects():
            if len(x) != len(y) and not M.hom(x, y):
                continue
            images = [tau.tau(u) for u in S.hom(x, y)]
            isos = _isos(M, x, y)
            if len(set(images)) != len(images):
                faithful = False
                witness = witness or {"violation": "tau_iso not faithful", "objects": (x, y)}
            extra = [u for u in isos if u not in set(images)]
            if extra:
                full = False
                witness = witness or {"violation": "iso not in the image of tau",
                                      "objects": (x, y), "morphism": extra[0]}
    return faithful, full, witness


def _non_invertible(C):
    return next((a for a in C.arrows if C.inverse(a) is None), None)


def feynman_check(tau):
    """``C`` is a groupoid, ``tau`` restricts to an equivalence of iso cores
    and ``tau`` is hereditary."""
    report = CheckReport("feynman", True, tau.bound)
    bad = _non_invertible(tau.base)
    if bad is not None:
        report.verdict = False
        report.witness = {"violation": "C not a groupoid", "arrow": bad}
        return report
    faithful, full, wit = _tau_iso_props(tau)
    if not (faithful and full):
        report.verdict = False
        report.witness = wit
        return report
    her = hereditary_check(tau)
    report.checked = her.checked
    if not her.verdict:
        report.verdict = False
        report.witness = her.witness
    return report


def _block_sym_images(sizes, rho):
    return block_permutation(sizes, [r - 1 for r in rho]).images


class _IsoTable:
    """Invertible morphisms of a bounded SMC with their inverses, per pair."""

    def __init__(self, M):
        self.M = M
        self._pairs = {}
        self._inv = {}

    def pairs(self, x, y):
        got = self._pairs.get((x, y))
        if got is None:
            M, got = self.M, []
            if len(x) == len(y):
                back = list(M.hom(y, x))
                for u in M.hom(x, y):
                    for v in back:
                        if M.compose(v, u) == M.identity(x) and M.compose(u, v) == M.identity(y):
                            got.append(u)
                            self._inv[u] = v
                            break
            self._pairs[(x, y)] = got
        return got

    def inverse(self, u):
        return self._inv[u]

    def out_of(self, x):
        for y in self.M.objects():
            for u in self.pairs(x, y):
                yield y, u


def comma_condition_check(tau):
    """``w : S(M|C)_iso -> (M|M)_iso`` is an equivalence of groupoids.

    Both sides are groupoids, so ``w`` is computed on connected components
    and on the automorphism group of one object per component: full means
    injective on components and surjective on automorphisms, faithful means
    injective on automorphisms, essentially surjective means surjective on
    components. The comma categories are explored lazily.

    The direct verdict is compared with the decomposition into the
    injectivity and surjectivity of the hereditary map and the properties
    of ``tau`` on iso cores; any disagreement raises
    ``InternalInconsistency``.
    """
    M, C, L = tau.target, tau.base, tau.bound
    report = CheckReport("comma-condition", True, L)
    bad = _non_invertible(C)
    if bad is not None:
        report.verdict = False
        report.witness = {"violation": "C not a groupoid", "arrow": bad}
        return report

    isos = _IsoTable(M)
    pin = tau.arrow_pin
    objects = M.objects()

    # (M|C): objects (x, u, c) with u : x -> (c); arrows (s, t), s iso in M.
    k1_objects = [(x, u, c) for x in objects for c in C.objects for u in M.hom(x, (c,))]
    uf1 = UnionFind(k1_objects)
    for x, u, c in k1_objects:
        for _, s in isos.out_of(x):
            uf1.union((x, u, c), (M.cod(s), M.compose(u, isos.inverse(s)), c))
        for t in C.out_of(c):
            uf1.union((x, u, c), (x, M.compose(pin[t], u), C.cod(t)))

    def k1_hom(o, o2):
        (x, u, c), (x2, u2, c2) = o, o2
        return [(s, t) for s in isos.pairs(x, x2) for t in C.hom(c, c2)
                if M.compose(u2, s) == M.compose(pin[t], u)]

    # (M|M): objects u : x -> y; arrows (s, t) of isos.
    k2_objects = [(x, u, y) for x in objects for y in objects for u in M.hom(x, y)]
    uf2 = UnionFind(k2_objects)
    for x, u, y in k2_objects:
        for _, s in isos.out_of(x):
            uf2.union((x, u, y), (M.cod(s), M.compose(u, isos.inverse(s)), y))
        for y2, t in isos.out_of(y):
            uf2.union((x, u, y), (x, M.compose(t, u), y2))

    def k2_aut(o):
        x, u, y = o
        return {(s, t) for s in isos.pairs(x, x) for t in isos.pairs(y, y)
                if M.compose(u, s) == M.compose(t, u)}

    def w_obj(us):
        a = ()
        for o in us:
            a += o[0]
        return (a, M.tensor_all([o[1] for o in us]), tuple(o[2] for o in us))

    def w_arrow(us, rho, labels):
        s_part = M.tensor_all([lab[0] for lab in labels])
        t_part = M.tensor_all([pin[lab[1]] for lab in labels])
        src_blocks = [len(us[r - 1][0]) for r in rho]
        s = M.compose(M.sym(_block_sym_images(src_blocks, rho), M.cod(s_part)), s_part)
        t = M.compose(M.sym(rho, M.cod(t_part)), t_part)
        return (s, t)

    # One object of S(M|C) per component: a multiset of (M|C) components
    # whose total input length is within the bound.
    reps = {}
    for o in k1_objects:
        reps.setdefault(uf1.find(o), o)
    reps = sorted(reps.values(), key=repr)

    def sk_reps():
        def rec(start, acc, size):
            yield tuple(acc)
            for i in range(start, len(reps)):
                o = reps[i]
                if max(len(acc) + 1, size + len(o[0])) <= L:
                    acc.append(o)
                    yield from rec(i, acc, size + len(o[0]))
                    acc.pop()
        yield from rec(0, [], 0)

    faithful = full = True
    wit = None
    hit = {}
    for us in sk_reps():
        o = w_obj(us)
        root = uf2.find(o)
        if root in hit:
            full = False
            wit = wit or {"violation": "w not full", "objects": (hit[root], us)}
        else:
            hit[root] = us
        target = k2_aut(o)
        images = []
        n = len(us)
        for rho in permutations(range(1, n + 1)):
            choices = [k1_hom(us[i], us[rho[i] - 1]) for i in range(n)]
            for labels in product(*choices):
                images.append(w_arrow(us, rho, labels))
        report.checked += 1
        for m in images:
            if m not in target:
                raise InternalInconsistency(f"w sends an arrow outside the comma: {m!r}")
        if len(set(images)) != len(images):
            faithful = False
            wit = wit or {"violation": "w not faithful", "objects": (us, us)}
        if set(images) != target:
            full = False
            wit = wit or {"violation": "w not full", "objects": (us, us),
                          "arrow": next(iter(target - set(images)))}
    missing = next((o for o in k2_objects if uf2.find(o) not in hit), None)
    ess = missing is None
    if not ess:
        wit = wit or {"violation": "w not essentially surjective", "object": missing}

    w_equiv = faithful and full and ess
    report.verdict = w_equiv
    report.witness = None if w_equiv else wit

    her = hereditary_check(tau, details=True)
    eps_inj, eps_surj = her.details["injective"], her.details["surjective"]
    t_faithful, t_full, _ = _tau_iso_props(tau)
    t_equiv = t_faithful and t_full
    report.details = {"w_faithful": faithful, "w_full": full, "w_essentially_surjective": ess,
                      "eps_injective": eps_inj, "eps_surjective": eps_surj,
                      "tau_iso_faithful": t_faithful, "tau_iso_full": t_full}
    problems = []
    if full and not t_full:
        problems.append("w full but tau_iso not full")
    if faithful and not t_faithful:
        problems.append("w faithful but tau_iso not faithful")
    if t_faithful and not faithful:
        problems.append("tau_iso faithful but w not faithful")
    if t_equiv and full != eps_inj:
        problems.append("w full disagrees with injectivity of the hereditary map")
    if t_equiv and ess != eps_surj:
        problems.append("w essentially surjective disagrees with surjectivity")
    if w_equiv != (eps_inj and eps_surj and t_equiv):
        problems.append("w equivalence disagrees with hereditary + tau_iso equivalence")
    if problems:
        raise InternalInconsistency(f"{tau.name}: " + "; ".join(problems))
    return report


# ----------------------------------------------------------------------------
# round trips


def _merge(report, label, rep):
    report.checked += rep.checked
    report.skipped += rep.skipped
    report.details[label] = rep.verdict
    if not rep.verdict and report.verdict:
        report.verdict = False
        report.witness = {"failed": label, "detail": rep.witness}


def pinned_counit(tau):
    """Counit ``F(End(M)|C) -> M`` of the substitude adjunction at ``tau``."""
    s = subst_end(tau)
    return hermida_counit(tau.target, s.body, lambda op: op[1])


def roundtrip_report(obj, bound=None):
    """Round trips through the substitude adjunction, aggregated."""
    if isinstance(obj, Substitude):
        L = obj.body.arity_bound if bound is None else bound
        report = CheckReport("roundtrip", True, L)
        _merge(report, "unit", subst_unit_check(obj, L))
        tau = subst_free(obj, L)
        _merge(report, "regular-pattern", regular_pattern_check(tau))
        _merge(report, "counit", counit_check(pinned_counit(tau)))
        if obj.pins.is_groupoid():
            _merge(report, "feynman", feynman_check(tau))
        return report
    tau = obj
    report = CheckReport("roundtrip", True, tau.bound)
    _merge(report, "counit", counit_check(pinned_counit(tau)))
    if not report.verdict:
        her = hereditary_check(tau)
        if her.witness is not None:
            report.witness = {"failed": "counit", "detail": report.witness["detail"],
                              "hereditary": her.witness}
    if tau.base.is_groupoid():
        _merge(report, "feynman", feynman_check(tau))
    return report


# ----------------------------------------------------------------------------
# algebras


@dataclass
class AlgebraData:
    """An algebra for a substitude ``C -> P`` in a strict SMC ``W``.

    ``carrier`` maps colours to objects of ``W`` and ``carrier_arrows`` the
    arrows of ``C`` to morphisms; ``action`` maps each operation to a
    morphism ``(x) A x_i -> A y``.
    """

    substitude: Substitude
    target: BoundedSMC
    carrier: dict
    carrier_arrows: dict
    action: dict
    bound: int = 2
    name: str = "A"


def _carrier_of(A, xs):
    out = ()
    for c in xs:
        out += A[c]
    return out


def validate_algebra(a, action=None):
    """Identity on ``C``, units, substitution and equivariance."""
    action = a.action if action is None else action
    s, W, A = a.substitude, a.target, a.carrier
    P = s.body
    report = CheckReport("algebra", True, a.bound)

    def fail(kind, **data):
        report.verdict = False
        report.witness = {"violation": kind, **data}
        return report

    ops = list(P.all_ops(a.bound))
    for op in ops:
        ins, out = P.profile(op)
        if W.dom(action[op]) != _carrier_of(A, ins) or W.cod(action[op]) != A[out]:
            return fail("action endpoints", op=op)
    for arr in s.pins.arrows:
        if action[s.phi(arr)] != a.carrier_arrows[arr]:
            return fail("identity on C", arrow=arr)
    for c in P.colours:
        if action[P.unit(c)] != W.identity(A[c]):
            return fail("unit", colour=c)
    for op in ops:
        ins, out = P.profile(op)
        for rho in permutations(range(1, len(ins) + 1)):
            report.checked += 1
            src = tuple(ins[r - 1] for r in rho)
            sizes = [len(A[c]) for c in src]
            # block i of the permuted carrier feeds block rho(i)
            images = _block_sym_images(sizes, rho)
            rhs = W.compose(action[op], W.sym(images, _carrier_of(A, src)))
            if action[P.act(op, rho)] != rhs:
                return fail("equivariance", op=op, perm=rho)
        if not ins:
            continue
        for inners in _inner_choices(P, ins, a.bound):
            res = P.subst(op, inners)
            if res is None:
                report.skipped += 1
                continue
            body = W.tensor_all([action[i] for i in inners])
            if body is None:
                report.skipped += 1
                continue
            report.checked += 1
            if action[res] != W.compose(action[op], body):
                return fail("substitution", outer=op, inners=inners)
    return report


def algebra_functor(a, action=None):
    """The strict monoidal functor ``F P -> W`` induced by an action."""
    action = a.action if action is None else action
    P, W, A = a.substitude.body, a.target, a.carrier
    F = HermidaFree(P, a.bound)

    def arrow(u):
        sigma = _sorting_perm(u.alpha)
        sizes = [len(A[c]) for c in u.dom]
        images = block_permutation(sizes, [r - 1 for r in sigma]).images
        parts = W.tensor_all([action[op] for op in u.ops])
        return W.compose(parts, W.sym(images, _carrier_of(A, u.dom)))

    return StrictFunctor(F, W, lambda x: _carrier_of(A, x), arrow, "algebra")


def _functor_valid(a, G):
    s = a.substitude
    rep = check_strict_functor(G)
    if not rep.verdict:
        return rep
    for arr in s.pins.arrows:
        pin = HermidaMorphism((s.pins.dom(arr),), (s.pins.cod(arr),), (1,), (s.phi(arr),))
        if G(pin) != a.carrier_arrows[arr]:
            rep.verdict = False
            rep.witness = {"violation": "does not extend the carrier", "arrow": arr}
            return rep
    return rep


def algebra_correspondence(a, enumerate_all=True):
    """Build the monoidal functor of ``a`` and, when ``enumerate_all``,
    compare algebra structures with extending monoidal functors by
    exhaustive enumeration.

    Returns ``(functor, report)``.
    """
    s, W, A = a.substitude, a.target, a.carrier
    P = s.body
    for c in P.colours:
        if len(A[c]) * a.bound > W.bound:
            raise InputError("carrier does not fit in the bound of the target")
    report = CheckReport("algebra-correspondence", True, a.bound)
    valid = validate_algebra(a)
    if not valid.verdict:
        raise ValidationError("action is not an algebra", valid.witness)
    G = algebra_functor(a)
    rep = _functor_valid(a, G)
    report.checked += rep.checked
    if not rep.verdict:
        report.verdict = False
        report.witness = {"violation": "induced functor invalid", "detail": rep.witness}
        return G, report
    if not enumerate_all:
        return G, report

    ops = list(P.all_ops(a.bound))
    # A strict monoidal functor on F P is fixed by its values on morphisms
    # with a single output; those are exactly the operations.
    single = {op: HermidaMorphism(P.profile(op)[0], (P.profile(op)[1],),
                                  (1,) * P.arity(op), (op,)) for op in ops}
    candidates = [W.hom(_carrier_of(A, P.profile(op)[0]), A[P.profile(op)[1]]) for op in ops]
    algebras, functors = set(), set()
    count = 0
    for values in product(*candidates):
        count += 1
        action = dict(zip(ops, values))
        key = tuple(values)
        if validate_algebra(a, action).verdict:
            algebras.add(key)
            Gc = algebra_functor(a, action)
            if tuple(Gc(single[op]) for op in ops) != key:
                raise InternalInconsistency("induced functor does not restrict to its action")
        Gc = algebra_functor(a, action)
        if _functor_valid(a, Gc).verdict:
            functors.add(key)
        report.checked += 1
    report.details = {"algebras": len(algebras), "functors": len(functors),
                      "candidates": count}
    if algebras != functors:
        report.verdict = False
        report.witness = {"only_algebras": sorted(algebras - functors, key=repr),
                          "only_functors": sorted(functors - algebras, key=repr)}
    return G, report

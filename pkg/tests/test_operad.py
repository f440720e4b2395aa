import pytest
from hypothesis import given, settings, strategies as st

from opdkit.adjunctions import HermidaMorphism, hermida_free
from opdkit.fincat import (
    FinCategory, discrete_category, terminal_category, validate_category,
)
from opdkit.operad import (
    CommOperad, OperadMap, OperadTwoCell, PinnedOperad, TableOperad, coreflect, end_operad,
    gabriel_factor_operad, make_pin_map, multihom_sizes, normal_substitude_check,
    operad_of_category, pinnings, unary_cores, validate_operad, validate_operad_map,
    validate_operad_two_cell,
)
from opdkit.adjunctions import operad_map_fully_faithful
from opdkit.smc import LabelledPermutation, free_smc, validate_smc
from opdkit.testkit import GenConfig, TermOperad, gen_category, gen_groupoid, gen_operad

seeds = st.integers(0, 10_000)


def small_operad(seed):
    return gen_operad(GenConfig(seed=seed, sequence_bound=3, max_morphisms=2000))


def identity_map(p):
    return OperadMap(p, p, {c: c for c in p.colours}, lambda op: op, "id")


def idempotent_operad():
    """One colour and one non-invertible unary operation ``u`` with ``u u = u``."""
    return TableOperad(["*"], 2, {"u": (("*",), "*")}, {("u", ("u",)): "u"}, {}, "Idem")


def involution_operad():
    return TermOperad(["*"], {"i": (("*",), "*")}, 2, isos={"i": "i"}, name="Inv")


# ----------------------------------------------------------------------------
# validation


def test_comm_is_valid():
    assert validate_operad(CommOperad(4)).verdict


def test_category_operad_is_valid():
    c = FinCategory.from_generators(["a", "b"], [("f", "a", "b")])
    assert validate_operad(operad_of_category(c)).verdict


def test_non_action_table_fails():
    ops = {"m1": (("*", "*"), "*"), "m2": (("*", "*"), "*")}
    # the swap sends both operations to m1, which is not a group action
    act = {("m1", (2, 1)): "m1", ("m2", (2, 1)): "m1"}
    rep = validate_operad(TableOperad(["*"], 2, ops, {}, act))
    assert not rep.verdict
    assert rep.witness["violation"] == "action is not a group action"
    assert rep.witness["op"] == "m2"


def test_missing_act_entry_is_table_incomplete():
    ops = {"m1": (("*", "*"), "*"), "m2": (("*", "*"), "*")}
    rep = validate_operad(TableOperad(["*"], 2, ops, {}, {}).complete_forced())
    assert not rep.verdict
    assert rep.witness["violation"] == "table incomplete"


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_generated_operads_are_valid(seed):
    rep = validate_operad(small_operad(seed))
    assert rep.verdict, rep.witness


# ----------------------------------------------------------------------------
# the unary embedding and unary cores


def test_terminal_category_operad():
    P = operad_of_category(terminal_category())
    assert P.colours == ("*",)
    assert len(list(P.all_ops())) == 1


def test_discrete_category_operad():
    P = operad_of_category(discrete_category(["a", "b", "c"]))
    assert len(P.colours) == 3
    assert all(P.profile(op)[0] == (P.profile(op)[1],) for op in P.all_ops())
    assert len(list(P.all_ops())) == 3


def test_unary_cores_of_comm_are_terminal():
    P1, P1iso = unary_cores(CommOperad(3))
    assert len(P1.arrows) == len(P1iso.arrows) == 1


def test_unary_cores_of_groupoid():
    g = gen_groupoid(GenConfig(seed=3))
    P1, P1iso = unary_cores(operad_of_category(g))
    assert set(P1.arrows) == set(P1iso.arrows) == set(g.arrows)


def test_unary_cores_drop_non_invertible():
    P1, P1iso = unary_cores(idempotent_operad())
    assert "u" in P1.arrows and "u" not in P1iso.arrows


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_unary_cores_recover_the_category(seed):
    c = gen_category(GenConfig(seed=seed))
    P1, _ = unary_cores(operad_of_category(c))
    assert P1.arrows == c.arrows
    assert all(P1.compose[k] == v for k, v in c.compose.items())
    assert validate_category(P1).verdict


# ----------------------------------------------------------------------------
# endomorphism operads


def test_end_of_free_on_terminal():
    E = end_operad(free_smc(terminal_category(), 3))
    # permutations need equal lengths, so only the unary multihom is inhabited
    for n in range(4):
        assert len(E.ops(("*",) * n, "*")) == (1 if n == 1 else 0)


def test_end_of_free_on_comm():
    E = end_operad(hermida_free(CommOperad(3), 3))
    for n in range(4):
        assert len(E.ops(("*",) * n, "*")) == 1


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_end_operad_is_valid(seed):
    c = gen_category(GenConfig(seed=seed, max_arrows=3))
    M = free_smc(c, 2)
    E = end_operad(M)
    assert validate_operad(E).verdict
    for x in c.objects:
        for y in c.objects:
            assert set(E.ops((x,), y)) == set(M.hom((x,), (y,)))


def test_end_of_hermida_free_is_valid():
    E = end_operad(hermida_free(small_operad(1), 2))
    assert validate_operad(E).verdict


# ----------------------------------------------------------------------------
# maps, two-cells and Gabriel factorisation


def test_identity_map_and_two_cell():
    P = small_operad(2)
    f = identity_map(P)
    assert validate_operad_map(f).verdict
    t = OperadTwoCell(f, f, {c: P.unit(c) for c in P.colours})
    assert validate_operad_two_cell(t).verdict


def test_gabriel_of_identity_map():
    P = small_operad(4)
    g, mid, h = gabriel_factor_operad(identity_map(P))
    assert multihom_sizes(mid) == multihom_sizes(P)
    assert operad_map_fully_faithful(g).verdict
    assert operad_map_fully_faithful(h).verdict


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_gabriel_factorisation_of_pins(seed):
    P = small_operad(seed)
    s = pinnings(P)["groupoid"]
    g, mid, h = gabriel_factor_operad(s.phi)
    assert validate_operad(mid).verdict
    assert validate_operad_map(g).verdict and validate_operad_map(h).verdict
    assert g.is_identity_on_objects()
    assert operad_map_fully_faithful(h).verdict
    for a in s.pins.arrows:
        assert h(g(a)) == s.phi(a)


def test_gabriel_of_pinned_end_is_base_change():
    # a pinned SMC with pins the unary part of End(M)
    c = FinCategory.from_generators(["a", "b"], [("f", "a", "b")])
    M = free_smc(c, 2)
    E = end_operad(M)
    phi = OperadMap(operad_of_category(c), E, {x: x for x in c.objects},
                    {a: LabelledPermutation((c.dom(a),), (c.cod(a),), (1,), (a,))
                     for a in c.arrows})
    assert validate_operad_map(phi).verdict
    g, mid, h = gabriel_factor_operad(phi)
    for ins, out in mid.profiles():
        assert len(mid.ops(ins, out)) == len(M.hom(ins, (out,)))


# ----------------------------------------------------------------------------
# pinnings, coreflection and normal substitudes


def test_pinnings_of_comm_coincide():
    ps = pinnings(CommOperad(3))
    sizes = {k: len(s.pins.arrows) for k, s in ps.items()}
    assert sizes == {"discrete": 1, "groupoid": 1, "full": 1}
    assert all(s.validate().verdict for s in ps.values())


def test_groupoid_pinning_sees_invertible_unaries():
    ps = pinnings(involution_operad())
    assert len(ps["groupoid"].pins.arrows) > len(ps["discrete"].pins.arrows)


def test_normal_substitudes():
    ps = pinnings(idempotent_operad())
    assert normal_substitude_check(ps["full"])
    assert not normal_substitude_check(ps["groupoid"])
    assert normal_substitude_check(pinnings(CommOperad(2))["discrete"])


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_full_pinning_is_normal(seed):
    assert normal_substitude_check(pinnings(small_operad(seed))["full"])


def test_coreflect_of_substitude_is_isomorphic():
    s = pinnings(small_operad(5))["groupoid"]
    s2, counit = coreflect(s)
    assert multihom_sizes(s2.body) == multihom_sizes(s.body)
    assert operad_map_fully_faithful(counit).verdict
    assert s2.validate().verdict


def test_coreflect_restricts_to_pinned_colours():
    P = TermOperad(["a", "b"], {"m": (("a", "a"), "a"), "k": (("b",), "a")}, 2, name="AB")
    D = discrete_category(["a"])
    phi = make_pin_map(D, P, {"id_a": P.unit("a")}, {"a": "a"})
    po = PinnedOperad(D, P, phi, "po")
    assert po.validate().verdict
    s, counit = coreflect(po)
    # brute force: multihoms on the pinned colour are those of P
    for ins, out in s.body.profiles():
        assert len(s.body.ops(ins, out)) == len(P.ops(ins, out))
    assert operad_map_fully_faithful(counit).verdict


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_coreflect_is_idempotent(seed):
    s = pinnings(small_operad(seed))["full"]
    s1, c1 = coreflect(s)
    s2, c2 = coreflect(s1)
    assert multihom_sizes(s1.body) == multihom_sizes(s2.body)
    assert operad_map_fully_faithful(c1).verdict and operad_map_fully_faithful(c2).verdict


# ----------------------------------------------------------------------------
# the free monoidal category on the unary operad of a category


def _to_labelled(u):
    labels = tuple(u.ops[u.alpha[i] - 1] for i in range(len(u.alpha)))
    return LabelledPermutation(u.dom, u.cod, u.alpha, labels)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_hermida_free_of_category_is_free_smc(seed):
    c = gen_category(GenConfig(seed=seed, max_arrows=3))
    L = 2
    F = hermida_free(operad_of_category(c, L), L)
    S = free_smc(c, L)
    assert set(F.objects()) == set(S.objects())
    for x in S.objects():
        for y in S.objects():
            homs = F.hom(x, y)
            images = {_to_labelled(u) for u in homs}
            assert len(images) == len(homs)
            assert images == set(S.hom(x, y))
    mors = list(F.morphisms())
    for u in mors:
        for v in mors:
            if F.dom(v) == F.cod(u):
                assert _to_labelled(F.compose(v, u)) == S.compose(_to_labelled(v), _to_labelled(u))
            t = F.tensor(u, v)
            if t is not None:
                assert _to_labelled(t) == S.tensor(_to_labelled(u), _to_labelled(v))
    for x in S.objects():
        for rho in [tuple(range(len(x), 0, -1))]:
            assert _to_labelled(F.sym(rho, x)) == S.sym(rho, x)
    assert validate_smc(F).verdict


def test_unary_hermida_morphism_encoding():
    c = terminal_category()
    F = hermida_free(operad_of_category(c, 2), 2)
    u = F.identity(("*",))
    assert isinstance(u, HermidaMorphism)

from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from opdkit.errors import InputError
from opdkit.fincat import validate_category
from opdkit.operad import CommOperad, multihom_sizes, pinnings, validate_operad
from opdkit.smc import free_smc, validate_smc
from opdkit.testkit import GenConfig, gen_category, gen_operad
from opdkit.textformat import (
    KINDS, ModelReferenceError, ParseError, ValidationError, parse_model, print_model,
)

DATA = Path(__file__).parent / "data"
CORPUS = sorted(p for p in DATA.glob("*.opk"))
seeds = st.integers(0, 10_000)


def reparse(obj):
    return parse_model(print_model(obj), validate=False).structure


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_print_parse_print_is_stable(path):
    model = parse_model(path.read_text(), validate=False)
    assert model.kind in KINDS
    text = print_model(model.structure)
    assert print_model(reparse(model.structure)) == text


@pytest.mark.parametrize("path", [p for p in CORPUS if p.stem != "incomplete_act"],
                         ids=lambda p: p.stem)
def test_corpus_models_validate(path):
    parse_model(path.read_text())


def test_incomplete_act_table_is_rejected():
    with pytest.raises(ValidationError) as info:
        parse_model((DATA / "incomplete_act.opk").read_text())
    assert info.value.witness["violation"] == "table incomplete"


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_model((DATA / "invalid" / "syntax.opk").read_text())
    e = info.value
    assert (e.line, e.col) == (2, 9)
    assert e.expected == ("':'",)


def test_unknown_colour_is_a_reference_error():
    with pytest.raises(ModelReferenceError) as info:
        parse_model((DATA / "invalid" / "unknown_colour.opk").read_text())
    assert (info.value.line, info.value.col) == (3, 19)


def test_ill_typed_composite_is_a_reference_error():
    with pytest.raises(ModelReferenceError) as info:
        parse_model((DATA / "invalid" / "bad_compose.opk").read_text())
    assert info.value.line == 4


def test_all_text_errors_are_input_errors():
    for cls in (ParseError, ModelReferenceError, ValidationError):
        assert issubclass(cls, InputError)


def test_empty_and_unknown_kind():
    with pytest.raises(ParseError):
        parse_model("# only a comment\n")
    with pytest.raises(ParseError) as info:
        parse_model("monoid M\n")
    assert set(info.value.expected) == set(KINDS)


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\n\ncategory T\n  # indented comment\nobjects: *\n"
    model = parse_model(text)
    assert model.name == "T" and len(model.structure.arrows) == 1


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_generated_categories_round_trip(seed):
    c = gen_category(GenConfig(seed=seed))
    c2 = reparse(c)
    assert validate_category(c2).verdict
    assert len(c2.arrows) == len(c.arrows) and len(c2.compose) == len(c.compose)
    assert print_model(c2) == print_model(c)


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_generated_operads_round_trip(seed):
    P = gen_operad(GenConfig(seed=seed, sequence_bound=3, max_morphisms=2000))
    P2 = reparse(P)
    assert validate_operad(P2).verdict
    assert sorted(multihom_sizes(P2).values()) == sorted(multihom_sizes(P).values())


def test_free_smc_round_trip_keeps_hom_sizes():
    c = gen_category(GenConfig(seed=7, max_arrows=3))
    M = free_smc(c, 2)
    M2 = reparse(M)
    assert validate_smc(M2).verdict
    for x in M.objects():
        for y in M.objects():
            assert len(M2.hom(x, y)) == len(M.hom(x, y))


def test_substitude_round_trip():
    s = pinnings(CommOperad(2))["groupoid"]
    s2 = reparse(s)
    assert s2.validate().verdict
    assert multihom_sizes(s2.body) == multihom_sizes(s.body)

"""The ten acceptance criteria, each reported as one PASS/FAIL line.

Run under pytest for the summary section, or directly with
``python tests/test_acceptance.py``.
"""

import io
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from functools import cache
from itertools import permutations, product
from pathlib import Path

import pytest

from opdkit import adjunctions
from opdkit.adjunctions import (
    HermidaMorphism, comma_condition_check, counit_check, feynman_check, hereditary_check, hermida_free,
    pinned_counit, recheck_hereditary_witness, subst_end, subst_free, subst_unit_check,
    algebra_correspondence,
)
from opdkit.cli import run_command
from opdkit.errors import InternalInconsistency
from opdkit.fincat import FinCategory
from opdkit.operad import CommOperad, pinnings, validate_operad
from opdkit.smc import (
    free_smc, monoidal_exactness_check, strictification_report, strictify, validate_smc,
)
from opdkit.testkit import (
    GenConfig, MutationError, brute_free_smc_count, brute_function_count, gen_operad,
    mutate_break_hereditary, tiny_algebra_instances, twisted_weak_instance,
)
from opdkit.textformat import parse_model, print_model

DATA = Path(__file__).parent / "data"
KINDS = ("discrete", "groupoid", "full")


def _substitudes(count, first_seed, **cfg):
    """Seeded substitudes, rotating through the three standard pinnings."""
    for seed in range(first_seed, first_seed + count):
        P = gen_operad(GenConfig(seed=seed, **cfg))
        assert validate_operad(P).verdict, f"seed {seed}: generated operad invalid"
        yield seed, pinnings(P)[KINDS[seed % 3]]


def _hundred():
    # at most 3 colours, 4 generating operations, arity 3, bound 4
    return list(_substitudes(100, 0, max_colours=3, max_ops=4, arity_bound=3,
                             sequence_bound=4))


def _agree(name, a, b, label):
    if a.verdict != b.verdict:
        raise InternalInconsistency(f"{label} disagree on {name}: {a.verdict} vs {b.verdict}")


# ----------------------------------------------------------------------------
# criteria; each returns a short detail string or raises


def criterion_1():
    checked = 0
    for seed, s in _hundred():
        rep = subst_unit_check(s, 4)
        assert rep.verdict, f"seed {seed}: {rep.witness}"
        checked += rep.checked
    return f"100 substitudes, {checked} multihoms"


def criterion_2():
    for seed, s in _hundred():
        tau = subst_free(s, 4)
        rep = hereditary_check(tau)
        assert rep.verdict, f"seed {seed}: hereditary {rep.witness}"
        rep = counit_check(pinned_counit(tau))
        assert rep.verdict, f"seed {seed}: counit {rep.witness}"
    return "100 substitudes at bound 4"


@cache
def _positives_and_negatives(count, first_seed):
    pos, neg = [], []
    for seed, s in _substitudes(count, first_seed, sequence_bound=3, max_morphisms=120):
        tau = subst_free(s, 3)
        pos.append((seed, tau))
        neg.append((seed, mutate_break_hereditary(tau, seed)))
    return pos, neg


def criterion_3():
    pos, neg = _positives_and_negatives(50, 1000)
    for expected, batch in ((True, pos), (False, neg)):
        for seed, tau in batch:
            her, exact = hereditary_check(tau), monoidal_exactness_check(tau)
            _agree(f"seed {seed}", her, exact, "hereditary and exactness")
            assert her.verdict is expected, f"seed {seed}: expected {expected}"
    return "50 positives, 50 negatives"


def criterion_4():
    positives, negatives = [], []
    seed = 4000
    while len(positives) < 30 or len(negatives) < 20:
        P = gen_operad(GenConfig(seed=seed, sequence_bound=3, max_morphisms=120))
        ps = pinnings(P)
        if len(positives) < 30:
            positives.append((seed, subst_free(ps["groupoid"], 3)))
        if len(negatives) < 20:
            # non-groupoid pins, missing isomorphisms, or a broken hereditary map
            candidates = [subst_free(ps["full"], 3), subst_free(ps["discrete"], 3)]
            try:
                candidates.append(mutate_break_hereditary(positives[-1][1], seed))
            except MutationError:
                pass
            for tau in candidates:
                if not feynman_check(tau).verdict and len(negatives) < 20:
                    negatives.append((seed, tau))
        seed += 1
    for expected, batch in ((True, positives), (False, negatives)):
        for s, tau in batch:
            f, c = feynman_check(tau), comma_condition_check(tau)
            _agree(f"seed {s}", f, c, "feynman and comma")
            assert f.verdict is expected
    return f"30 positives, 20 negatives from seeds 4000..{seed - 1}"


def criterion_5():
    for seed in range(5000, 5050):
        P = gen_operad(GenConfig(seed=seed, sequence_bound=3, max_morphisms=120))
        tau = subst_free(pinnings(P)["groupoid"], 3)
        rep = feynman_check(tau)
        assert rep.verdict, f"seed {seed}: {rep.witness}"
        Q = subst_end(tau).body
        for ins, out in P.profiles():
            # an operation goes to itself as a single-output morphism of the free SMC
            images = {((ins, out), HermidaMorphism(ins, (out,), (1,) * len(ins), (op,)))
                      for op in P.ops(ins, out)}
            assert len(images) == len(P.ops(ins, out))
            assert images == set(Q.ops(ins, out)), f"seed {seed}: {ins} -> {out}"
    return "50 operads"


def _functions(m, n):
    """All functions m -> n, listed independently of the library."""
    return list(product(range(1, n + 1), repeat=m))


def _labelled_perms(c, x, y):
    out = set()
    if len(x) != len(y):
        return out
    for rho in permutations(range(1, len(x) + 1)):
        for labels in product(c.arrows, repeat=len(x)):
            if all(c.arrows[labels[i]] == (x[i], y[rho[i] - 1]) for i in range(len(x))):
                out.add((rho, labels))
    return out


def criterion_6():
    F = hermida_free(CommOperad(4), 4)
    for m, n in product(range(5), repeat=2):
        got = len(F.hom(("*",) * m, ("*",) * n))
        assert got == n ** m == brute_function_count(m, n) == len(_functions(m, n)), (m, n)
        assert {u.alpha for u in F.hom(("*",) * m, ("*",) * n)} == set(_functions(m, n))
    c = FinCategory.from_generators(["a", "b"], [("f", "a", "b")], name="2")
    S = free_smc(c, 3)
    pairs = 0
    for x in S.objects():
        for y in S.objects():
            homs = S.hom(x, y)
            brute = _labelled_perms(c, x, y)
            assert len(homs) == brute_free_smc_count(c, x, y) == len(brute), (x, y)
            assert {(u.rho, u.labels) for u in homs} == brute
            pairs += 1
    return f"25 Comm homs, {pairs} sequence pairs"


def criterion_7():
    for seed in range(10):
        F, _ = twisted_weak_instance(seed, 3)
        Mp, G, H = strictify(F)
        rep = strictification_report(F, Mp, G, H)
        assert rep.verdict, f"seed {seed}: {rep.witness}"
        assert validate_smc(Mp).verdict
    return "10 weak instances at bound 3"


def criterion_8():
    details = []
    for a in tiny_algebra_instances():
        _, rep = algebra_correspondence(a)
        assert rep.verdict, f"{a.name}: {rep.witness}"
        assert rep.details["algebras"] == rep.details["functors"] > 0
        details.append(f"{a.name}={rep.details['algebras']}")
    return ", ".join(details)


def criterion_9():
    _, neg = _positives_and_negatives(50, 1000)
    for seed, tau in neg:
        assert validate_smc(tau.target).verdict, f"seed {seed}: not an SMC"
        rep = hereditary_check(tau)
        assert not rep.verdict, f"seed {seed}: still hereditary"
        assert recheck_hereditary_witness(tau, rep.witness), f"seed {seed}: witness"
    return "50 mutations"


def criterion_10():
    corpus = sorted(DATA.glob("*.opk"))
    with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
        codes = _exit_codes()
    assert all(k == v for k, v in codes.items()), codes
    for path in corpus:
        text = print_model(parse_model(path.read_text(), validate=False).structure)
        assert print_model(parse_model(text, validate=False).structure) == text, path.name
    return f"{len(corpus)} corpus files, exit codes 0 1 2 3"


def _exit_codes():
    codes = {
        0: run_command(["check", str(DATA / "z2.opk")]),
        1: run_command(["check", str(DATA / "incomplete_act.opk")]),
        2: run_command(["check", str(DATA / "invalid" / "syntax.opk")]),
    }
    real = adjunctions.monoidal_exactness_check

    def flipped(tau, *args, **kwargs):
        rep = real(tau, *args, **kwargs)
        rep.verdict = not rep.verdict
        return rep

    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(adjunctions, "monoidal_exactness_check", flipped)
        codes[3] = run_command(["regular-pattern", str(DATA / "arrow_pinned.opk")])
    return codes


CRITERIA = {
    1: ("unit invertibility", criterion_1),
    2: ("counit and hereditary", criterion_2),
    3: ("hereditary iff exact", criterion_3),
    4: ("feynman iff comma", criterion_4),
    5: ("operads are feynman categories", criterion_5),
    6: ("cardinality oracles", criterion_6),
    7: ("strictification", criterion_7),
    8: ("algebra correspondence", criterion_8),
    9: ("negative-instance integrity", criterion_9),
    10: ("cli round trip and exit codes", criterion_10),
}


def run_criterion(n):
    title, fn = CRITERIA[n]
    start = time.perf_counter()
    try:
        detail, ok = fn(), True
    except (AssertionError, InternalInconsistency) as exc:
        detail, ok = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    line = f"criterion {n:2d} {title}: {'PASS' if ok else 'FAIL'} ({detail}; {elapsed:.1f}s)"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, acceptance_log):
    ok, line = run_criterion(n)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from opdkit.errors import InputError
from opdkit.permcore import (
    FinFunction, Permutation, adjacent_transpositions, all_permutations, block_permutation,
    block_swap, compose_images, enumerate_functions, fiber_subsequence, identity_images,
    inverse_images, perm_monotone_factor, permute, transposition_word,
)


def functions(max_m=5, max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(1, n), max_size=max_m).map(lambda xs: FinFunction(xs, n)))


def perms(max_n=6):
    return st.integers(0, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(Permutation))


def brute_factor(alpha):
    """All permutations sigma, monotone on fibres, with alpha . sigma^-1 monotone."""
    out = []
    for images in permutations(range(1, alpha.domain_size + 1)):
        sigma = Permutation(images)
        lam = FinFunction([alpha(sigma.inverse()(k)) for k in range(1, alpha.domain_size + 1)],
                          alpha.codomain_size)
        if not lam.is_monotone():
            continue
        if all(sigma(i) < sigma(k) for i in range(1, alpha.domain_size + 1)
               for k in range(i + 1, alpha.domain_size + 1) if alpha(i) == alpha(k)):
            out.append((sigma, lam))
    return out


def test_factor_of_identity():
    ident = FinFunction([1, 2, 3], 3)
    sigma, lam = perm_monotone_factor(ident)
    assert sigma == Permutation.identity(3)
    assert lam == ident


def test_factor_worked_example_matches_brute_force():
    alpha = FinFunction([2, 1, 1], 2)
    expected = brute_factor(alpha)
    assert len(expected) == 1
    assert expected[0] == (Permutation([3, 1, 2]), FinFunction([1, 1, 2], 2))
    assert perm_monotone_factor(alpha) == expected[0]


def test_factor_of_constant_map():
    alpha = FinFunction([1, 1], 1)
    assert perm_monotone_factor(alpha) == (Permutation.identity(2), alpha)


@given(functions())
def test_factor_is_unique_solution(alpha):
    sigma, lam = perm_monotone_factor(alpha)
    assert lam.after(sigma) == alpha
    assert brute_factor(alpha) == [(sigma, lam)]


def test_fiber_examples():
    alpha = FinFunction([2, 1, 1], 2)
    assert fiber_subsequence(alpha, 1, "abc") == ("b", "c")
    assert fiber_subsequence(alpha, 2, "abc") == ("a",)
    assert fiber_subsequence(FinFunction([1, 1], 2), 2, "ab") == ()


def test_fiber_rejects_bad_input():
    with pytest.raises(InputError):
        fiber_subsequence(FinFunction([1], 1), 1, "ab")
    with pytest.raises(InputError):
        fiber_subsequence(FinFunction([1], 1), 2, "a")


@given(functions())
def test_fibres_partition_the_sequence(alpha):
    xs = tuple(range(alpha.domain_size))
    pieces = [fiber_subsequence(alpha, j, xs) for j in range(1, alpha.codomain_size + 1)]
    assert sorted(sum(pieces, ())) == list(xs)


@pytest.mark.parametrize("m,n,count", [(2, 2, 4), (0, 5, 1), (3, 1, 1), (2, 3, 9), (3, 0, 0)])
def test_function_counts(m, n, count):
    assert len(list(enumerate_functions(m, n))) == count


def test_enumeration_is_lexicographic_and_distinct():
    fs = [f.images for f in enumerate_functions(3, 2)]
    assert fs == sorted(fs)
    assert len(set(fs)) == 8


def test_finfunction_checks_images():
    with pytest.raises(InputError):
        FinFunction([0], 2)
    with pytest.raises(InputError):
        Permutation([1, 1])


@given(perms(), st.data())
def test_permutation_group_laws(p, data):
    q = data.draw(st.permutations(list(range(1, p.size + 1))).map(Permutation))
    assert p.after(p.inverse()) == Permutation.identity(p.size)
    assert q.after(p).images == compose_images(q.images, p.images)
    assert inverse_images(p.images) == p.inverse().images


@given(perms(), st.data())
def test_act_is_a_left_action(p, data):
    q = data.draw(st.permutations(list(range(1, p.size + 1))).map(Permutation))
    xs = tuple(range(10, 10 + p.size))
    assert q.act(p.act(xs)) == q.after(p).act(xs)
    assert permute(p.images, xs) == p.act(xs)


def test_act_moves_entries_to_images():
    assert Permutation([2, 3, 1]).act("abc") == ("c", "a", "b")


def test_block_permutation_swaps_blocks():
    p = block_permutation([1, 2], [1, 0])
    assert p.act("abc") == ("b", "c", "a")
    assert p.images == block_swap(1, 2)


@given(st.lists(st.integers(0, 3), max_size=4), st.data())
def test_block_permutation_moves_blocks_intact(sizes, data):
    order = data.draw(st.permutations(list(range(len(sizes)))))
    blocks, k = [], 0
    for s in sizes:
        blocks.append(tuple(range(k, k + s)))
        k += s
    moved = block_permutation(sizes, order).act(sum(blocks, ()))
    expected = [None] * len(sizes)
    for i, pos in enumerate(order):
        expected[pos] = blocks[i]
    assert moved == sum(expected, ())


def test_all_permutations_count():
    assert len(all_permutations(4)) == 24
    assert all_permutations(0) == [Permutation([])]


@given(perms())
def test_transposition_word_rebuilds_the_permutation(p):
    n = p.size
    acc = identity_images(n)
    for i in transposition_word(p.images):
        t = list(range(1, n + 1))
        t[i - 1], t[i] = i + 1, i
        acc = compose_images(tuple(t), acc)
    assert acc == p.images


def test_adjacent_transpositions():
    assert list(adjacent_transpositions(3)) == [(2, 1, 3), (1, 3, 2)]


def test_shift_pads_identity():
    assert Permutation([2, 1]).shift(1, 4).images == (1, 3, 2, 4)


def test_monotone_and_bijective_flags():
    assert FinFunction([1, 1, 2], 2).is_monotone()
    assert not FinFunction([2, 1], 2).is_monotone()
    assert FinFunction([2, 1], 2).is_bijective()
    for images in product([1, 2], repeat=2):
        f = FinFunction(images, 2)
        assert f.is_bijective() == (len(set(images)) == 2)

"""Functions between finite ordinals.

Indices are 1-based throughout: a function ``m -> n`` is stored as the tuple
of its images ``(f(1), ..., f(m))`` with every image in ``1..n``.
Composition is written ``g.after(f)`` and means ``i -> g(f(i))``.
"""

from itertools import permutations, product

from .errors import InputError


class FinFunction:
    """A function from ``{1..m}`` to ``{1..n}``."""

    __slots__ = ("domain_size", "codomain_size", "images")

    def __init__(self, images, codomain_size=None):
        images = tuple(int(v) for v in images)
        if codomain_size is None:
            codomain_size = max(images, default=0)
        for v in images:
            if not 1 <= v <= codomain_size:
                raise InputError(f"image {v} outside 1..{codomain_size}")
        self.domain_size = len(images)
        self.codomain_size = codomain_size
        self.images = images

    def __call__(self, i):
        return self.images[i - 1]

    def __eq__(self, other):
        return (isinstance(other, FinFunction)
                and self.codomain_size == other.codomain_size
                and self.images == other.images)

    def __hash__(self):
        return hash((self.codomain_size, self.images))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.images)}, {self.codomain_size})"

    def after(self, other):
        """Composite ``self . other``."""
        if other.codomain_size != self.domain_size:
            raise InputError("composable functions required")
        return FinFunction([self(other(i)) for i in range(1, other.domain_size + 1)],
                           self.codomain_size)

    def fiber(self, j):
        """Positions ``i`` with ``f(i) = j``, increasing."""
        return tuple(i for i, v in enumerate(self.images, 1) if v == j)

    def is_monotone(self):
        return all(a <= b for a, b in zip(self.images, self.images[1:]))

    def is_bijective(self):
        return (self.domain_size == self.codomain_size
                and sorted(self.images) == list(range(1, self.domain_size + 1)))


class Permutation(FinFunction):
    """A bijection of ``{1..n}``; ``Permutation([3, 1, 2])`` sends 1 to 3."""

    __slots__ = ()

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InputError(f"not a permutation: {list(images)}")
        super().__init__(images, len(images))

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    def after(self, other):
        composite = super().after(other)
        if isinstance(other, Permutation):
            return Permutation(composite.images)
        return composite

    def inverse(self):
        inv = [0] * self.size
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return Permutation(inv)

    @property
    def size(self):
        return self.domain_size

    def act(self, xs):
        """Move the entry at position ``i`` to position ``self(i)``."""
        xs = tuple(xs)
        if len(xs) != self.size:
            raise InputError("sequence length does not match permutation size")
        out = [None] * self.size
        for i, x in enumerate(xs, 1):
            out[self(i) - 1] = x
        return tuple(out)

    def shift(self, k, total=None):
        """Block sum ``id_k + self``, optionally padded to ``total`` points."""
        images = list(range(1, k + 1)) + [v + k for v in self.images]
        if total is not None:
            images += list(range(len(images) + 1, total + 1))
        return Permutation(images)

    def __str__(self):
        return "perm " + " ".join(map(str, self.images))


def all_permutations(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def perm_monotone_factor(alpha):
    """Factor ``alpha`` as ``lam . sigma`` with ``lam`` monotone and ``sigma``
    a permutation monotone on each fibre of ``alpha``.

    ``sigma(i)`` is the rank of ``i`` when positions are sorted by
    ``(alpha(i), i)``.
    """
    order = sorted(range(1, alpha.domain_size + 1), key=lambda i: (alpha(i), i))
    sigma = [0] * alpha.domain_size
    for rank, i in enumerate(order, 1):
        sigma[i - 1] = rank
    lam = FinFunction(sorted(alpha.images), alpha.codomain_size)
    return Permutation(sigma), lam


def fiber_subsequence(alpha, j, xs):
    """Entries ``x_i`` with ``alpha(i) = j`` in increasing order of ``i``."""
    xs = tuple(xs)
    if len(xs) != alpha.domain_size:
        raise InputError(
            f"sequence of length {len(xs)} for function with domain {alpha.domain_size}")
    if not 1 <= j <= alpha.codomain_size:
        raise InputError(f"fibre index {j} outside 1..{alpha.codomain_size}")
    return tuple(x for x, v in zip(xs, alpha.images) if v == j)


def enumerate_functions(m, n):
    """All functions ``m -> n`` in lexicographic order of image sequences."""
    for images in product(range(1, n + 1), repeat=m):
        yield FinFunction(images, n)


def block_permutation(sizes, order):
    """Permutation rearranging consecutive blocks.

    ``sizes`` lists block lengths in their current order and ``order[k]`` is
    the new position (0-based) of block ``k``.
    """
    starts_new = [0] * len(sizes)
    new_sizes = [0] * len(sizes)
    for k, pos in enumerate(order):
        new_sizes[pos] = sizes[k]
    acc = 0
    for pos, size in enumerate(new_sizes):
        starts_new[pos] = acc
        acc += size
    images = []
    for k, size in enumerate(sizes):
        base = starts_new[order[k]]
        images.extend(base + t + 1 for t in range(size))
    return Permutation(images)


# Tuple-level helpers. Hot loops pass raw image tuples rather than
# Permutation objects.

def compose_images(outer, inner):
    """Images of ``outer . inner``."""
    return tuple(outer[i - 1] for i in inner)


def inverse_images(images):
    inv = [0] * len(images)
    for i, v in enumerate(images, 1):
        inv[v - 1] = i
    return tuple(inv)


def permute(images, xs):
    """Sequence with ``xs[i]`` moved to position ``images[i]``."""
    out = [None] * len(xs)
    for x, v in zip(xs, images):
        out[v - 1] = x
    return tuple(out)


def block_sum(first, second):
    k = len(first)
    return tuple(first) + tuple(v + k for v in second)


def block_swap(p, q):
    """Move a leading block of length ``p`` behind a block of length ``q``."""
    return tuple(i + q for i in range(1, p + 1)) + tuple(range(1, q + 1))


def identity_images(n):
    return tuple(range(1, n + 1))


def adjacent_transpositions(n):
    for i in range(1, n):
        images = list(range(1, n + 1))
        images[i - 1], images[i] = i + 1, i
        yield tuple(images)


def transposition_word(images):
    """Adjacent transpositions ``t_1, ..., t_k`` (each given by the position
    ``i`` it swaps with ``i+1``) such that ``images == t_k . ... . t_1``."""
    n = len(images)
    # arrangement[p] is the source index currently sitting at position p+1
    arrangement = list(range(1, n + 1))
    word = []
    changed = True
    while changed:
        changed = False
        for p in range(n - 1):
            a, b = arrangement[p], arrangement[p + 1]
            if images[a - 1] > images[b - 1]:
                arrangement[p], arrangement[p + 1] = b, a
                word.append(p + 1)
                changed = True
    return word

"""Supercommutative tensor algebra over graded orthonormal generators.

Generators live in components H_1..H_l, each carrying a degree p(i) >= 1 and
a finite orthonormal basis.  Plain tensor words in the letters form an
orthonormal basis of the free algebra; the supersymmetric part is the image
of the projector that averages the letter permutations of a word with the
graded sign

    sign(perm, degrees) = product over inversions (k < r, perm[k] > perm[r])
                          of (-1) ** (degrees[perm[k]] * degrees[perm[r]]),

so odd-degree letters anticommute and every other pair commutes.  All
arithmetic is exact (ints and fractions.Fraction).  Component dimensions are
available through two independent routes, a rank computation on the
projector Gram matrix and the closed-form count by wedge/symmetric powers;
their agreement is the module's central invariant.

Letters are (component, basis_index) pairs, both 0-based; a word is a tuple
of letters.  The quotient ideal is never materialized: membership of a
vector v is the statement that its projection is zero.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .linalg import rank

Letter = tuple[int, int]
Word = tuple[Letter, ...]

DEFAULT_WORD_CAP = 20_000
WORD_CAP_ENV = "GAMMAHODGE_WORD_CAP"


class EnumerationCapError(RuntimeError):
    """A word component is larger than the configured enumeration cap."""


def resolve_word_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    return int(os.environ.get(WORD_CAP_ENV, DEFAULT_WORD_CAP))


@dataclass(frozen=True)
class GradedSpace:
    """Ordered generator components, each a (degree, dim) pair.

    Degrees are >= 1; zero-dimensional components are allowed and simply
    contribute no letters.
    """

    components: tuple[tuple[int, int], ...]

    def __post_init__(self):
        comps = tuple((int(p), int(d)) for p, d in self.components)
        if not comps:
            raise ValueError("a graded space needs at least one component")
        for p, d in comps:
            if p < 1:
                raise ValueError(f"component degree must be >= 1, got {p}")
            if d < 0:
                raise ValueError(f"component dimension must be >= 0, got {d}")
        object.__setattr__(self, "components", comps)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def degree(self, component: int) -> int:
        return self.components[component][0]

    def dim(self, component: int) -> int:
        return self.components[component][1]

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(
            (i, b)
            for i, (_, d) in enumerate(self.components)
            for b in range(d)
        )

    def letter_degree(self, letter: Letter) -> int:
        return self.components[letter[0]][0]

    def multidegree(self, word: Word) -> int:
        return sum(self.components[c][0] for c, _ in word)


def _sign_unchecked(perm: Sequence[int], degrees: Sequence[int]) -> int:
    sign = 1
    m = len(perm)
    for k in range(m):
        pk = perm[k]
        if degrees[pk] % 2 == 0:
            continue
        for r in range(k + 1, m):
            pr = perm[r]
            if pk > pr and degrees[pr] % 2:
                sign = -sign
    return sign


def super_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Graded sign of a permutation acting on letters with the given degrees.

    ``perm[k]`` is the source position of the letter landing in slot k; the
    sign flips once per inversion pair whose two letters both have odd
    degree.  The empty inversion set gives +1.
    """
    if len(perm) != len(degrees):
        raise ValueError("perm and degrees must have the same length")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("perm is not a permutation of range(m)")
    return _sign_unchecked(perm, degrees)


class TensorVector:
    """Finite exact-rational combination of equal-length words.

    Zero coefficients are dropped on construction, so equality of the term
    maps is equality of vectors.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | Iterable[tuple[Word, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for word, coeff in items:
            c = acc.get(word, Fraction(0)) + Fraction(coeff)
            if c:
                acc[word] = c
            else:
                acc.pop(word, None)
        if len({len(w) for w in acc}) > 1:
            raise ValueError("terms mix words of different lengths")
        self.terms = acc

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "TensorVector") -> "TensorVector":
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, Fraction(0)) + c
        return TensorVector(merged)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "TensorVector":
        s = Fraction(scalar)
        return TensorVector({w: s * c for w, c in self.terms.items()})

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def inner(self, other: "TensorVector") -> Fraction:
        """Inner product, with distinct words orthonormal."""
        a, b = self.terms, other.terms
        if len(b) < len(a):
            a, b = b, a
        return sum((c * b[w] for w, c in a.items() if w in b), Fraction(0))

    def __repr__(self) -> str:
        inside = ", ".join(f"{w}: {c}" for w, c in sorted(self.terms.items()))
        return f"TensorVector({{{inside}}})"


def enumerate_words(space: GradedSpace, m: int, n: int) -> list[Word]:
    """All length-m words of multidegree n, in lexicographic letter order."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    letters = space.letters
    if m == 0:
        return [()] if n == 0 else []
    if not letters:
        return []
    degs = [space.letter_degree(L) for L in letters]
    lo, hi = min(degs), max(degs)
    out: list[Word] = []
    word: list[Letter] = []

    def extend(remaining: int, deficit: int) -> None:
        if remaining == 0:
            if deficit == 0:
                out.append(tuple(word))
            return
        for letter, p in zip(letters, degs):
            rest = deficit - p
            if (remaining - 1) * lo <= rest <= (remaining - 1) * hi:
                word.append(letter)
                extend(remaining - 1, rest)
                word.pop()

    extend(m, n)
    return out


def count_words(space: GradedSpace, m: int, n: int) -> int:
    """Number of length-m words of multidegree n (no enumeration)."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    degree_counts = Counter(space.letter_degree(L) for L in space.letters)
    ways = [1] + [0] * n
    for _ in range(m):
        nxt = [0] * (n + 1)
        for t, w in enumerate(ways):
            if w:
                for p, c in degree_counts.items():
                    if t + p <= n:
                        nxt[t + p] += w * c
        ways = nxt
    return ways[n]


def project(space: GradedSpace, word: Word) -> TensorVector:
    """Apply the super-symmetrizing projector to a basis word.

    Averages the m! letter permutations with their graded signs; identical
    result words are merged, so full cancellation is possible (a repeated
    odd-degree letter projects to zero).
    """
    m = len(word)
    degrees = tuple(space.letter_degree(L) for L in word)
    acc: dict[Word, int] = {}
    for perm in itertools.permutations(range(m)):
        s = _sign_unchecked(perm, degrees)
        permuted = tuple(word[p] for p in perm)
        acc[permuted] = acc.get(permuted, 0) + s
    budget = factorial(m)
    return TensorVector({w: Fraction(c, budget) for w, c in acc.items() if c})


def project_vector(space: GradedSpace, vec: TensorVector) -> TensorVector:
    """Linear extension of the projector to rational word combinations."""
    acc: dict[Word, Fraction] = {}
    for word, coeff in vec.terms.items():
        for w, c in project(space, word).terms.items():
            acc[w] = acc.get(w, Fraction(0)) + coeff * c
    return TensorVector(acc)


def gram_matrix_sym(space: GradedSpace, m: int, n: int) -> list[list[Fraction]]:
    """Matrix of <P w_a, w_b> over enumerate_words(space, m, n).

    Symmetric with rational entries; since the projector is idempotent and
    self-adjoint the matrix equals its own square in this basis.
    """
    words = enumerate_words(space, m, n)
    index = {w: i for i, w in enumerate(words)}
    out = [[Fraction(0)] * len(words) for _ in words]
    for a, w in enumerate(words):
        row = out[a]
        for w2, c in project(space, w).terms.items():
            row[index[w2]] = c
    return out


def sym_component_dim_bruteforce(
    space: GradedSpace, m: int, n: int, cap: int | None = None
) -> int:
    """Dimension of the projected (m, n) component as a Gram-matrix rank.

    The Gram matrix is block diagonal over letter multisets (the projector
    only permutes letters), so the rank is accumulated block by block.
    Components larger than the enumeration cap raise EnumerationCapError.
    """
    cap = resolve_word_cap(cap)
    total = count_words(space, m, n)
    if total > cap:
        raise EnumerationCapError(
            f"component (m={m}, n={n}) has {total} words, over the enumeration "
            f"cap {cap}; set {WORD_CAP_ENV} or pass cap= to raise it"
        )
    groups: dict[Word, list[Word]] = {}
    for w in enumerate_words(space, m, n):
        groups.setdefault(tuple(sorted(w)), []).append(w)
    total_rank = 0
    for group in groups.values():
        index = {w: i for i, w in enumerate(group)}
        block = [[Fraction(0)] * len(group) for _ in group]
        for a, w in enumerate(group):
            row = block[a]
            for w2, c in project(space, w).terms.items():
                row[index[w2]] = c
        total_rank += rank(block)
    return total_rank


def _power_dim(degree: int, dim: int, s: int) -> int:
    """Dimension of the s-th wedge (odd degree) or symmetric (even) power."""
    if s == 0:
        return 1
    return comb(dim, s) if degree % 2 else comb(dim + s - 1, s)


def sym_component_dim_closed(space: GradedSpace, m: int, n: int) -> int:
    """Dimension of the projected (m, n) component in closed form.

    Sums, over multiplicity vectors (s_1..s_l) with sum m and degree-weighted
    sum n, the product of per-component power dimensions: C(dim, s) for odd
    degree, C(dim + s - 1, s) for even degree.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    comps = space.components
    total = 0

    def assign(i: int, left_m: int, left_n: int, prod: int) -> None:
        nonlocal total
        if i == len(comps):
            if left_m == 0 and left_n == 0:
                total += prod
            return
        p, dim = comps[i]
        for s in range(left_m + 1):
            if p * s > left_n:
                break
            d = _power_dim(p, dim, s)
            if d:
                assign(i + 1, left_m - s, left_n - p * s, prod * d)

    assign(0, m, n, 1)
    return total


def projected_norm_sq(space: GradedSpace, word: Word) -> Fraction:
    """Squared norm of the projected word, for block-sorted words.

    Block-sorted means letters grouped by component in increasing component
    order with non-decreasing basis indices inside each block; anything else
    raises ValueError.  A repeated letter in an odd-degree block returns 0.

    Convention: a wedge monomial of r distinct orthonormal vectors has
    squared norm 1/r!, a symmetric monomial (product of multiplicity
    factorials)/r!.  The value is then

        (prod_j r_j!) / m!  *  prod_j (squared norm of block j's monomial)

    and agrees exactly with <P w, w>.
    """
    m = len(word)
    for (c1, b1), (c2, b2) in zip(word, word[1:]):
        if c1 > c2 or (c1 == c2 and b1 > b2):
            raise ValueError(f"word {word} is not block-sorted")
    result = Fraction(1, factorial(m))
    for component, block in itertools.groupby(word, key=lambda L: L[0]):
        letters = list(block)
        r = len(letters)
        multiplicities = Counter(letters)
        if space.degree(component) % 2:
            if any(v > 1 for v in multiplicities.values()):
                return Fraction(0)
            norm_sq = Fraction(1, factorial(r))
        else:
            repeats = 1
            for v in multiplicities.values():
                repeats *= factorial(v)
            norm_sq = Fraction(repeats, factorial(r))
        result *= factorial(r) * norm_sq
    return result

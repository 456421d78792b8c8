"""Configuration-space Betti numbers from the Betti data of a base manifold.

The order-n Betti number b_n of the configuration space over a base with
Betti numbers beta_1..beta_d is a finite sum of binomial products: choose
distinct degrees k_1 < ... < k_m, multiplicities s_i >= 1 with
sum s_i k_i = n, and multiply the per-degree power counts

    C(beta_k, s)          for odd k   (wedge powers),
    C(beta_k + s - 1, s)  for even k  (symmetric powers).

b_0 is 1, the scalar component.  beta_0 is ignored by the formula, which
presumes an infinite-volume base; a nonzero beta_0 input triggers
InfiniteVolumeWarning, never an error, because product-space pipelines
legitimately carry beta_0 = 1 on a compact factor.

The same numbers arise as dimensions of the graded algebra with degrees
p(i) = i and component dims beta_i; that cross-check is exercised by the
test suite and the CLI's algebra-check command.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InvariantError


class InfiniteVolumeWarning(UserWarning):
    """The configuration formula assumes beta_0 = 0 (infinite-volume base)."""


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers beta_0..beta_d of a d-dimensional base."""

    d: int
    beta: tuple[int, ...]

    def __post_init__(self):
        d = int(self.d)
        beta = tuple(int(b) for b in self.beta)
        if d < 1:
            raise ValueError("dimension d must be >= 1")
        if len(beta) != d + 1:
            raise ValueError(f"need d + 1 = {d + 1} Betti numbers, got {len(beta)}")
        if any(b < 0 for b in beta):
            raise ValueError("Betti numbers must be non-negative")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_json(cls, doc: dict) -> "BettiVector":
        try:
            return cls(d=int(doc["d"]), beta=tuple(int(b) for b in doc["beta"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"Betti vector document needs 'd' and 'beta': {exc}") from exc

    def to_json(self) -> dict:
        return {"d": self.d, "beta": list(self.beta)}


def _warn_if_finite_volume(betti: BettiVector) -> None:
    if betti.beta[0] != 0:
        warnings.warn(
            f"beta_0 = {betti.beta[0]} != 0: the configuration formula assumes an "
            "infinite-volume base and ignores beta_0",
            InfiniteVolumeWarning,
            stacklevel=3,
        )


def beta_super(beta_k: int, k: int, s: int) -> int:
    """Dimension of the s-th power of a beta_k-dimensional degree-k space.

    Wedge power C(beta_k, s) for odd k, symmetric power C(beta_k + s - 1, s)
    for even k.
    """
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    if beta_k < 0:
        raise ValueError("beta_k must be non-negative")
    return comb(beta_k, s) if k % 2 else comb(beta_k + s - 1, s)


def _multiplicity_sum(betti: BettiVector, degrees: tuple[int, ...], n: int) -> int:
    """Sum over s_i >= 1 with sum s_i k_i = n of prod beta_super(beta_{k_i}, k_i, s_i)."""
    total = 0

    def descend(i: int, left: int, prod: int) -> None:
        nonlocal total
        k = degrees[i]
        tail_min = sum(degrees[i + 1 :])
        if i == len(degrees) - 1:
            if left % k == 0 and left >= k:
                total += prod * beta_super(betti.beta[k], k, left // k)
            return
        s = 1
        while s * k + tail_min <= left:
            f = beta_super(betti.beta[k], k, s)
            if f:
                descend(i + 1, left - s * k, prod * f)
            s += 1

    descend(0, n, 1)
    return total


def config_betti(betti: BettiVector, n: int) -> int:
    """Order-n Betti number of the configuration space over the given base.

    b_0 = 1; for n >= 1 the sum runs over strictly increasing degree subsets
    and positive multiplicity vectors solving sum s_i k_i = n.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _warn_if_finite_volume(betti)
    if n == 0:
        return 1
    total = 0
    degrees = range(1, betti.d + 1)
    for m in range(1, min(n, betti.d) + 1):
        for subset in combinations(degrees, m):
            if sum(subset) <= n:
                total += _multiplicity_sum(betti, subset, n)
    return total


def config_betti_series(betti: BettiVector, n_max: int) -> list[int]:
    """b_0..b_{n_max} via the product generating function (fast path).

    Coefficients of prod_{k odd} (1 + x^k)^{beta_k} * prod_{k even}
    (1 - x^k)^{-beta_k} truncated at degree n_max.  Must agree exactly with
    config_betti; betti_report enforces that.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    _warn_if_finite_volume(betti)
    poly = [1] + [0] * n_max
    for k in range(1, betti.d + 1):
        b = betti.beta[k]
        if b == 0:
            continue
        factor = [0] * (n_max + 1)
        for s in range(0, n_max // k + 1):
            factor[s * k] = comb(b, s) if k % 2 else comb(b + s - 1, s)
        out = [0] * (n_max + 1)
        for i, ci in enumerate(poly):
            if ci:
                for j in range(0, n_max - i + 1):
                    if factor[j]:
                        out[i + j] += ci * factor[j]
        poly = out
    return poly


def vanishing_threshold(betti: BettiVector) -> tuple[int, bool]:
    """(K_0, valid): K_0 = sum_i i * beta_i; valid iff all even beta vanish.

    When valid, b_{K_0} = 1 and b_n = 0 for K_0 < n <= K_0 + d is checked on
    the spot and raises InvariantError on failure.  valid = False claims
    nothing.
    """
    K0 = sum(i * betti.beta[i] for i in range(1, betti.d + 1))
    valid = all(betti.beta[k] == 0 for k in range(2, betti.d + 1, 2))
    if valid:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", InfiniteVolumeWarning)
            if config_betti(betti, K0) != 1:
                raise InvariantError(f"b_{K0} != 1 for odd-only {betti}")
            for n in range(K0 + 1, K0 + betti.d + 1):
                if config_betti(betti, n) != 0:
                    raise InvariantError(f"b_{n} != 0 above threshold for {betti}")
    return K0, valid


def kunneth_product(betti_x: BettiVector, betti_m: BettiVector) -> BettiVector:
    """Betti vector of a product base: the convolution of the factors.

    The second factor is the compact one (beta_0 >= 1 expected); the first
    should have beta_0 = 0, otherwise InfiniteVolumeWarning fires.
    """
    if betti_x.beta[0] != 0:
        warnings.warn(
            "first factor has beta_0 != 0; expected an infinite-volume factor",
            InfiniteVolumeWarning,
            stacklevel=2,
        )
    if betti_m.beta[0] < 1:
        warnings.warn(
            "compact factor has beta_0 = 0; expected beta_0 >= 1",
            UserWarning,
            stacklevel=2,
        )
    d = betti_x.d + betti_m.d
    beta = [0] * (d + 1)
    for i, bi in enumerate(betti_x.beta):
        for j, bj in enumerate(betti_m.beta):
            beta[i + j] += bi * bj
    return BettiVector(d=d, beta=tuple(beta))


def _weighted_compositions(n: int, m: int, d: int) -> int:
    """Sum over ordered (k_1..k_m), 1 <= k_i <= d, sum = n, of prod C(d, k_i)."""
    ways = [1] + [0] * n
    for _ in range(m):
        nxt = [0] * (n + 1)
        for t, w in enumerate(ways):
            if w:
                for k in range(1, min(d, n - t) + 1):
                    nxt[t + k] += w * comb(d, k)
        ways = nxt
    return ways[n]


def fiber_decomposition_check(N: int, d: int, n: int) -> tuple[int, int]:
    """Both sides of the fiber dimension identity for an N-point configuration.

    lhs: dim of the n-th wedge power of a direct sum of N copies of R^d,
    C(N*d, n).  rhs: group the wedge by which points carry positive degree,
    C(N, m) times the weighted count of ordered degree tuples summing to n.
    Returns (lhs, rhs) for the caller to compare.
    """
    if N < 1 or d < 1:
        raise ValueError("need N >= 1 and d >= 1")
    if not 0 <= n <= N * d:
        raise ValueError("need 0 <= n <= N*d")
    lhs = comb(N * d, n)
    rhs = 1 if n == 0 else 0
    for m in range(1, min(n, N) + 1):
        rhs += comb(N, m) * _weighted_compositions(n, m, d)
    return lhs, rhs


@dataclass(frozen=True)
class BettiReport:
    """b_0..b_{n_max} plus the vanishing threshold block when it applies."""

    input: BettiVector
    n_max: int
    b: tuple[int, ...]
    K0: int | None

    def __post_init__(self):
        if self.b[0] != 1:
            raise InvariantError("b_0 must be 1")
        if any(v < 0 for v in self.b):
            raise InvariantError("negative Betti number in report")


def betti_report(betti: BettiVector, n_max: int) -> BettiReport:
    """Compute b_0..b_{n_max}, cross-checking the two evaluation routes.

    The subset/multiplicity enumeration is the reference; the generating
    function fast path must agree exactly or InvariantError is raised.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    b = tuple(config_betti(betti, n) for n in range(n_max + 1))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InfiniteVolumeWarning)
        series = tuple(config_betti_series(betti, n_max))
    if series != b:
        raise InvariantError(
            f"generating-function path disagrees with enumeration: {series} vs {b}"
        )
    K0, valid = vanishing_threshold(betti)
    return BettiReport(input=betti, n_max=n_max, b=b, K0=K0 if valid else None)


def report_to_json(report: BettiReport) -> dict:
    """JSON document with exact integers as decimal strings."""
    doc = {
        "input": report.input.to_json(),
        "n_max": str(report.n_max),
        "b": [str(v) for v in report.b],
    }
    if report.K0 is not None:
        doc["vanishing"] = {"K0": str(report.K0)}
    return doc


def report_from_json(doc: dict) -> BettiReport:
    vanishing = doc.get("vanishing")
    return BettiReport(
        input=BettiVector.from_json(doc["input"]),
        n_max=int(doc["n_max"]),
        b=tuple(int(v) for v in doc["b"]),
        K0=int(vanishing["K0"]) if vanishing is not None else None,
    )

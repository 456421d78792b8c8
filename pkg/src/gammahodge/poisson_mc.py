"""Seeded Monte Carlo checks of Poisson point-process identities on boxes.

The process has unit intensity on a box window, so the point count is
Poisson(volume) and points are i.i.d. uniform.  Three checks compare a
Monte Carlo estimate against an independently computed reference:

* ``check_laplace``: the exponential moment E[exp<f, gamma>] against
  exp(integral of (e^f - 1) over the window).
* ``check_local_expansion``: the mean of a local functional F against the
  exponentially weighted series sum_n e^{-v} / n! * (integral of F over n
  i.i.d. points), truncated with an analytic tail bound.
* ``check_mecke``: the expected sum of f(gamma, x_1..x_m) over m-point
  subsets of gamma against 1/m! times the expectation of the integral of f
  evaluated on the configuration augmented by the integration points.  The
  built-in family is f(gamma, xs) = prod_i g(x_i) * h(<phi, gamma \\ xs>),
  so the augmented side collapses to h(<phi, gamma>) * (integral g)^m / m!.

Test functions are a closed world: window/box indicator steps, Gaussian
bumps truncated to the window, and polynomials of <phi, gamma> of degree at
most two.  Every reference is then available in closed form or through
convergent tensor-product Gauss-Legendre quadrature, and the quadrature
value must agree with the closed form to 1e-10 relative before any sampling
runs (ReferenceMismatchError otherwise).

RNG scheme ``philox4x64-block16384-v1``: sample index i draws from the
Philox4x64 counter stream keyed (seed, i // 16384).  Blocks are always
generated whole, so the configuration at a given (seed, index) never
depends on how many samples were requested, and per-block parallel
generation merges bitwise identically with a serial run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvariantError

RNG_SCHEME = "philox4x64-block16384-v1"
STREAM_BLOCK = 16_384
REL_FLOOR = 1e-8
QUAD_REL_TOL = 1e-10
SHORT_CIRCUIT_REL_TOL = 1e-10
TAIL_REL_TOL = 1e-12
MAX_CONFIG_POINTS = 1_000


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach its relative tolerance."""


class TailBoundError(ValueError):
    """The truncated series cannot meet the tail tolerance with these terms."""


class ConfigurationTooLarge(RuntimeError):
    """A sampled configuration exceeded the subset-enumeration point cap."""


class ReferenceMismatchError(InvariantError):
    """Quadrature and closed-form reference disagree beyond tolerance."""


@dataclass(frozen=True)
class Window:
    """Axis-aligned box [0, L_1] x ... x [0, L_dim] with unit intensity."""

    lengths: tuple[float, ...]

    def __post_init__(self):
        lengths = tuple(float(x) for x in self.lengths)
        if not lengths:
            raise ValueError("window needs at least one axis")
        if any(x <= 0 for x in lengths):
            raise ValueError("window extents must be positive")
        object.__setattr__(self, "lengths", lengths)

    @property
    def dim(self) -> int:
        return len(self.lengths)

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @classmethod
    def from_json(cls, doc: dict) -> "Window":
        win = cls(lengths=tuple(doc["lengths"]))
        if "dim" in doc and int(doc["dim"]) != win.dim:
            raise ValueError(
                f"window dim {doc['dim']} does not match {win.dim} lengths"
            )
        return win

    def to_json(self) -> dict:
        return {"dim": str(self.dim), "lengths": list(self.lengths)}


@dataclass(frozen=True)
class PointConfiguration:
    """One sampled configuration: a finite point set inside the window."""

    window: Window
    points: tuple[tuple[float, ...], ...]

    def __len__(self) -> int:
        return len(self.points)


# ---------------------------------------------------------------------------
# sampling

def _stream(seed: int, block: int) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    key = np.array([seed, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _sample_blocks(window: Window, seed: int, n_samples: int):
    """counts (n,), sample ids (total,), points (total, dim) for samples 0..n-1."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    lengths = np.asarray(window.lengths)
    counts_parts = []
    points_parts = []
    n_blocks = -(-n_samples // STREAM_BLOCK)
    for block in range(n_blocks):
        g = _stream(seed, block)
        c = g.poisson(window.volume, size=STREAM_BLOCK)
        pts = g.random((int(c.sum()), window.dim)) * lengths
        counts_parts.append(c)
        points_parts.append(pts)
    counts = np.concatenate(counts_parts)[:n_samples]
    total = int(counts.sum())
    points = np.concatenate(points_parts)[:total]
    sample_ids = np.repeat(np.arange(n_samples), counts)
    return counts, sample_ids, points


def sample_configuration(window: Window, seed: int, index: int = 0) -> PointConfiguration:
    """Configuration number ``index`` of the stream for this seed.

    Count ~ Poisson(volume), points i.i.d. uniform in the box; bitwise
    reproducible and identical to the batch path used by the checks.
    """
    if index < 0:
        raise ValueError("index must be non-negative")
    block, offset = divmod(index, STREAM_BLOCK)
    g = _stream(seed, block)
    counts = g.poisson(window.volume, size=STREAM_BLOCK)
    upto = int(counts[: offset + 1].sum())
    pts = g.random((upto, window.dim)) * np.asarray(window.lengths)
    own = pts[upto - int(counts[offset]) :]
    return PointConfiguration(
        window=window, points=tuple(tuple(float(x) for x in p) for p in own)
    )


# ---------------------------------------------------------------------------
# test-function families

@dataclass(frozen=True)
class ScalarFunction:
    """Pointwise test function on the window.

    kinds: "indicator" (scale on the whole window), "box" (scale on
    [lo, hi] clipped to the window), "gaussian"
    (scale * exp(-sum ((x_i - center_i) / width_i)^2), truncated to the
    window).
    """

    kind: str
    scale: float = 1.0
    lo: tuple[float, ...] | None = None
    hi: tuple[float, ...] | None = None
    center: tuple[float, ...] | None = None
    width: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("indicator", "box", "gaussian"):
            raise ValueError(f"unknown scalar function kind {self.kind!r}")
        if self.kind == "box" and (self.lo is None or self.hi is None):
            raise ValueError("box function needs lo and hi")
        if self.kind == "gaussian" and (self.center is None or self.width is None):
            raise ValueError("gaussian function needs center and width")
        for name in ("lo", "hi", "center", "width"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(float(x) for x in value))
        object.__setattr__(self, "scale", float(self.scale))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if self.kind == "indicator":
            return np.full(len(pts), self.scale)
        if self.kind == "box":
            lo = np.asarray(self.lo)
            hi = np.asarray(self.hi)
            inside = np.all((pts >= lo) & (pts <= hi), axis=1)
            return self.scale * inside.astype(float)
        z = (pts - np.asarray(self.center)) / np.asarray(self.width)
        return self.scale * np.exp(-np.sum(z * z, axis=1))

    def support(self, window: Window) -> tuple[tuple[float, ...], tuple[float, ...]]:
        """Smallest box outside which the function vanishes, clipped to the window."""
        top = window.lengths
        if self.kind == "box":
            lo = tuple(min(max(a, 0.0), t) for a, t in zip(self.lo, top))
            hi = tuple(min(max(b, 0.0), t) for b, t in zip(self.hi, top))
            return lo, hi
        return tuple(0.0 for _ in top), top

    def sup_norm(self) -> float:
        return abs(self.scale)

    def closed_form_integral(self, window: Window, power: int = 1) -> float | None:
        if self.kind == "gaussian":
            return None
        lo, hi = self.support(window)
        vol = math.prod(max(b - a, 0.0) for a, b in zip(lo, hi))
        return self.scale**power * vol

    def closed_form_expm1_integral(self, window: Window) -> float | None:
        if self.kind == "gaussian":
            return None
        lo, hi = self.support(window)
        vol = math.prod(max(b - a, 0.0) for a, b in zip(lo, hi))
        return math.expm1(self.scale) * vol


@dataclass(frozen=True)
class Polynomial:
    """h(t) = coeffs[0] + coeffs[1] t + ... (degree <= 2 where consumed)."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        deg = -1
        for i, c in enumerate(self.coeffs):
            if c:
                deg = i
        return deg

    def __call__(self, t):
        out = np.zeros_like(np.asarray(t, dtype=float))
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def padded(self, upto: int = 3) -> tuple[float, ...]:
        if len(self.coeffs) > upto:
            if any(self.coeffs[upto:]):
                raise ValueError(f"polynomial degree above {upto - 1} not supported")
            return self.coeffs[:upto]
        return self.coeffs + (0.0,) * (upto - len(self.coeffs))


@dataclass(frozen=True)
class LocalFunctional:
    """Local functional of the configuration, one of three built-in kinds.

    "one": F = 1.  "count_indicator": F = 1 when exactly k points are
    present.  "poly_of_sum": F = h(<phi, gamma>) with h of degree <= 2.
    """

    kind: str
    k: int | None = None
    phi: ScalarFunction | None = None
    h: Polynomial | None = None

    def __post_init__(self):
        if self.kind not in ("one", "count_indicator", "poly_of_sum"):
            raise ValueError(f"unknown functional kind {self.kind!r}")
        if self.kind == "count_indicator" and (self.k is None or self.k < 0):
            raise ValueError("count_indicator needs k >= 0")
        if self.kind == "poly_of_sum" and (self.phi is None or self.h is None):
            raise ValueError("poly_of_sum needs phi and h")


# ---------------------------------------------------------------------------
# quadrature and verified references

_QUAD_LEVELS = {1: (8, 16, 32, 64, 128, 256, 512), 2: (8, 16, 32, 64, 128, 256), 3: (8, 16, 32, 64, 96)}


def gauss_legendre_box(fn, lo, hi, rel_tol: float = QUAD_REL_TOL) -> float:
    """Adaptive tensor-product Gauss-Legendre integral of fn over [lo, hi].

    fn maps an (N, dim) array to (N,) values.  Node counts double per level
    until two successive levels agree to rel_tol; failure to converge raises
    QuadratureError.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    dim = lo.size
    if dim not in _QUAD_LEVELS:
        raise ValueError("quadrature supports dim 1..3")
    if np.any(hi <= lo):
        return 0.0
    jacobian = float(np.prod((hi - lo) / 2.0))
    previous = None
    for nodes in _QUAD_LEVELS[dim]:
        x, w = np.polynomial.legendre.leggauss(nodes)
        axes = [0.5 * (h - l) * x + 0.5 * (h + l) for l, h in zip(lo, hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        weight = w
        for _ in range(dim - 1):
            weight = np.multiply.outer(weight, w)
        value = jacobian * float(np.dot(weight.ravel(), fn(pts)))
        if previous is not None and abs(value - previous) <= rel_tol * max(
            abs(value), REL_FLOOR
        ):
            return value
        previous = value
    raise QuadratureError(f"no convergence to relative {rel_tol} over {lo}..{hi}")


def _verified(quad_value: float, closed: float | None, what: str) -> float:
    """Closed-form short circuit: quadrature must match any closed form."""
    if closed is None:
        return quad_value
    if abs(quad_value - closed) > SHORT_CIRCUIT_REL_TOL * max(abs(closed), REL_FLOOR):
        raise ReferenceMismatchError(
            f"{what}: quadrature {quad_value!r} vs closed form {closed!r}"
        )
    return closed


@lru_cache(maxsize=None)
def integral_of_power(fn: ScalarFunction, window: Window, power: int = 1) -> float:
    """integral of fn(x)^power over the window, quadrature checked vs closed form."""
    lo, hi = fn.support(window)
    quad = gauss_legendre_box(lambda p: fn.evaluate(p) ** power, lo, hi)
    return _verified(quad, fn.closed_form_integral(window, power), f"integral {fn.kind}^{power}")


@lru_cache(maxsize=None)
def integral_expm1(fn: ScalarFunction, window: Window) -> float:
    """integral of (e^{fn(x)} - 1) over the window (vanishes off the support)."""
    lo, hi = fn.support(window)
    quad = gauss_legendre_box(lambda p: np.expm1(fn.evaluate(p)), lo, hi)
    return _verified(quad, fn.closed_form_expm1_integral(window), f"expm1 integral {fn.kind}")


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class McReport:
    """Outcome of one Monte Carlo check against its reference value."""

    check: str
    estimate: float
    reference: float
    abs_error: float
    rel_error: float
    std_error: float
    samples: int
    seed: int
    extra: tuple[tuple[str, float], ...] = ()

    def extra_dict(self) -> dict[str, float]:
        return dict(self.extra)


def _make_report(check, estimate, reference, std_error, samples, seed, extra=()):
    abs_error = abs(estimate - reference)
    return McReport(
        check=check,
        estimate=float(estimate),
        reference=float(reference),
        abs_error=float(abs_error),
        rel_error=float(abs_error / max(abs(reference), REL_FLOOR)),
        std_error=float(std_error),
        samples=int(samples),
        seed=int(seed),
        extra=tuple((k, float(v)) for k, v in extra),
    )


def report_to_json(report: McReport) -> dict:
    return {
        "check": report.check,
        "estimate": report.estimate,
        "reference": report.reference,
        "abs_error": report.abs_error,
        "rel_error": report.rel_error,
        "std_error": report.std_error,
        "samples": str(report.samples),
        "seed": str(report.seed),
        "extra": {k: v for k, v in report.extra},
    }


def report_from_json(doc: dict) -> McReport:
    return McReport(
        check=doc["check"],
        estimate=float(doc["estimate"]),
        reference=float(doc["reference"]),
        abs_error=float(doc["abs_error"]),
        rel_error=float(doc["rel_error"]),
        std_error=float(doc["std_error"]),
        samples=int(doc["samples"]),
        seed=int(doc["seed"]),
        extra=tuple((k, float(v)) for k, v in doc.get("extra", {}).items()),
    )


def _mc_stats(values: np.ndarray) -> tuple[float, float]:
    if values.size < 2:
        raise ValueError("need at least two samples for a standard error")
    mean = float(values.mean())
    return mean, float(values.std(ddof=1) / math.sqrt(values.size))


# ---------------------------------------------------------------------------
# the three checks

def check_laplace(f: ScalarFunction, window: Window, samples: int, seed: int) -> McReport:
    """Exponential moment E[exp<f, gamma>] vs exp(integral of (e^f - 1))."""
    reference_exponent = integral_expm1(f, window)
    reference = math.exp(reference_exponent)
    _, sample_ids, points = _sample_blocks(window, seed, samples)
    sums = np.bincount(sample_ids, weights=f.evaluate(points), minlength=samples)
    values = np.exp(sums)
    estimate, std_error = _mc_stats(values)
    return _make_report(
        "laplace", estimate, reference, std_error, samples, seed,
        extra=(("integral_expm1", reference_exponent),),
    )


def _conditional_mean(functional: LocalFunctional, n_pts: int, window: Window) -> float:
    """E[F | exactly n_pts i.i.d. uniform points] (the n-th series factor)."""
    if functional.kind == "one":
        return 1.0
    if functional.kind == "count_indicator":
        return 1.0 if n_pts == functional.k else 0.0
    c0, c1, c2 = functional.h.padded()
    v = window.volume
    i1 = integral_of_power(functional.phi, window, 1)
    i2 = integral_of_power(functional.phi, window, 2)
    return (
        c0
        + c1 * n_pts * i1 / v
        + c2 * (n_pts * i2 / v + n_pts * (n_pts - 1) * (i1 / v) ** 2)
    )


def _sup_bound(functional: LocalFunctional, n_pts: int) -> float:
    if functional.kind in ("one", "count_indicator"):
        return 1.0
    c0, c1, c2 = functional.h.padded()
    s = functional.phi.sup_norm() * n_pts
    return abs(c0) + abs(c1) * s + abs(c2) * s * s


def _closed_form_mean(functional: LocalFunctional, window: Window) -> float:
    v = window.volume
    if functional.kind == "one":
        return 1.0
    if functional.kind == "count_indicator":
        k = functional.k
        return math.exp(-v + k * math.log(v) - math.lgamma(k + 1))
    c0, c1, c2 = functional.h.padded()
    i1 = integral_of_power(functional.phi, window, 1)
    i2 = integral_of_power(functional.phi, window, 2)
    return c0 + c1 * i1 + c2 * (i2 + i1 * i1)


def check_local_expansion(
    functional: LocalFunctional,
    window: Window,
    samples: int,
    seed: int,
    series_terms: int = 80,
) -> McReport:
    """Mean of a local functional vs its fixed-count series expansion.

    The series is e^{-v} sum_n (1/n!) integral of F over n points, with the
    n-point integrals assembled from 1-point quadratures through the product
    structure of the families.  The tail beyond series_terms must be below
    1e-12 of the reference scale or TailBoundError is raised.
    """
    v = window.volume
    pmf = math.exp(-v)
    series = 0.0
    for n_pts in range(series_terms + 1):
        series += pmf * _conditional_mean(functional, n_pts, window)
        pmf *= v / (n_pts + 1)

    closed = _closed_form_mean(functional, window)
    tail = 0.0
    n_pts = series_terms + 1
    term_pmf = pmf
    while True:
        term = term_pmf * _sup_bound(functional, n_pts)
        tail += term
        term_pmf *= v / (n_pts + 1)
        n_pts += 1
        if n_pts > series_terms + 10 and n_pts > 2 * v and term < 1e-30:
            break
        if n_pts > series_terms + 100_000:
            break
    scale = max(abs(closed), REL_FLOOR)
    if tail > TAIL_REL_TOL * scale:
        raise TailBoundError(
            f"series tail bound {tail:g} above {TAIL_REL_TOL:g} of the mean "
            f"with series_terms={series_terms}"
        )
    reference = _verified(series, closed, "local expansion series")

    counts, sample_ids, points = _sample_blocks(window, seed, samples)
    if functional.kind == "one":
        values = np.ones(samples)
    elif functional.kind == "count_indicator":
        values = (counts == functional.k).astype(float)
    else:
        totals = np.bincount(
            sample_ids, weights=functional.phi.evaluate(points), minlength=samples
        )
        values = functional.h(totals)
    estimate, std_error = _mc_stats(values)
    return _make_report(
        "local", estimate, reference, std_error, samples, seed,
        extra=(("series_reference", series), ("tail_bound", tail)),
    )


def _subset_sums(m, g, phi, totals, sample_ids, n_samples, coeffs):
    """Per-sample sums over m-point subsets of prod g * h(S - sum phi).

    Expanded into per-sample power sums (h has degree <= 2, g is a product
    over the subset), so the whole batch reduces to bincounts.
    """
    c0, c1, c2 = coeffs
    S = totals

    def red(weights):
        return np.bincount(sample_ids, weights=weights, minlength=n_samples)

    A0, A1, A2 = red(g), red(g * phi), red(g * phi * phi)
    if m == 1:
        return c0 * A0 + c1 * (S * A0 - A1) + c2 * (S * S * A0 - 2 * S * A1 + A2)
    g2 = g * g
    B0, B1, B2 = red(g2), red(g2 * phi), red(g2 * phi * phi)
    if m == 2:
        P0 = (A0 * A0 - B0) / 2
        P1 = A1 * A0 - B1
        P2a = A2 * A0 - B2
        P2b = (A1 * A1 - B2) / 2
        return (
            c0 * P0
            + c1 * (S * P0 - P1)
            + c2 * (S * S * P0 - 2 * S * P1 + P2a + 2 * P2b)
        )
    g3 = g2 * g
    C0, C1, C2 = red(g3), red(g3 * phi), red(g3 * phi * phi)
    T0 = (A0**3 - 3 * B0 * A0 + 2 * C0) / 6
    T1 = (A1 * A0 * A0 - 2 * B1 * A0 - B0 * A1 + 2 * C1) / 2
    T2a = (A2 * A0 * A0 - 2 * B2 * A0 - B0 * A2 + 2 * C2) / 2
    T2b = (A1 * A1 * A0 - B2 * A0 - 2 * B1 * A1 + 2 * C2) / 2
    T2 = T2a + 2 * T2b
    return c0 * T0 + c1 * (S * T0 - T1) + c2 * (S * S * T0 - 2 * S * T1 + T2)


def check_mecke(
    m: int,
    g: ScalarFunction,
    h: Polynomial,
    phi: ScalarFunction | None,
    window: Window,
    samples: int,
    seed: int,
) -> McReport:
    """Subset-sum side vs augmented side of the m-point Poisson identity.

    Built-in family f(gamma, xs) = prod_i g(x_i) * h(<phi, gamma \\ xs>).
    Removing the subset before applying h makes the augmented evaluation
    f(gamma + xs, xs) = prod_i g(x_i) * h(<phi, gamma>), so the right-hand
    side is the Monte Carlo mean of h(<phi, gamma>) * (integral g)^m / m!.
    The analytic reference uses the first two moments of <phi, gamma>
    (mean integral(phi), variance integral(phi^2)).

    estimate/std_error describe the subset-sum side; the augmented side and
    the pooled two-sided standard error are in extra.
    """
    if m not in (1, 2, 3):
        raise ValueError("subset order m must be 1, 2 or 3")
    coeffs = h.padded()
    if phi is None:
        if any(coeffs[1:]):
            raise ValueError("a non-constant h needs phi")
        phi = ScalarFunction(kind="indicator", scale=0.0)

    ig = integral_of_power(g, window, 1)
    i1 = integral_of_power(phi, window, 1)
    i2 = integral_of_power(phi, window, 2)
    c0, c1, c2 = coeffs
    mean_h = c0 + c1 * i1 + c2 * (i2 + i1 * i1)
    reference = ig**m / math.factorial(m) * mean_h

    counts, sample_ids, points = _sample_blocks(window, seed, samples)
    top = int(counts.max(initial=0))
    if top > MAX_CONFIG_POINTS:
        raise ConfigurationTooLarge(
            f"a configuration has {top} points, above the subset-sum cap "
            f"{MAX_CONFIG_POINTS}; shrink the window volume"
        )
    g_vals = g.evaluate(points)
    phi_vals = phi.evaluate(points)
    totals = np.bincount(sample_ids, weights=phi_vals, minlength=samples)
    lhs_values = _subset_sums(m, g_vals, phi_vals, totals, sample_ids, samples, coeffs)
    rhs_values = h(totals) * (ig**m / math.factorial(m))
    lhs, lhs_se = _mc_stats(lhs_values)
    rhs, rhs_se = _mc_stats(rhs_values)
    pooled = math.hypot(lhs_se, rhs_se)
    return _make_report(
        "mecke", lhs, reference, lhs_se, samples, seed,
        extra=(
            ("order", m),
            ("rhs_estimate", rhs),
            ("rhs_std_error", rhs_se),
            ("pooled_std_error", pooled),
        ),
    )


# ---------------------------------------------------------------------------
# JSON dispatch

_SCALAR_SHORTHAND = {
    "indicator": ScalarFunction(kind="indicator", scale=1.0),
}
_POLY_SHORTHAND = {
    "const": Polynomial(coeffs=(1.0,)),
    "linear": Polynomial(coeffs=(0.0, 1.0)),
}


def scalar_from_json(spec) -> ScalarFunction:
    if isinstance(spec, str):
        try:
            return _SCALAR_SHORTHAND[spec]
        except KeyError:
            raise ValueError(f"unknown scalar shorthand {spec!r}") from None
    return ScalarFunction(
        kind=spec["kind"],
        scale=spec.get("scale", 1.0),
        lo=tuple(spec["lo"]) if "lo" in spec else None,
        hi=tuple(spec["hi"]) if "hi" in spec else None,
        center=tuple(spec["center"]) if "center" in spec else None,
        width=tuple(spec["width"]) if "width" in spec else None,
    )


def polynomial_from_json(spec) -> Polynomial:
    if isinstance(spec, str):
        try:
            return _POLY_SHORTHAND[spec]
        except KeyError:
            raise ValueError(f"unknown polynomial shorthand {spec!r}") from None
    return Polynomial(coeffs=tuple(spec["coeffs"]))


def functional_from_json(spec) -> LocalFunctional:
    if isinstance(spec, str):
        if spec == "one":
            return LocalFunctional(kind="one")
        raise ValueError(f"unknown functional shorthand {spec!r}")
    kind = spec["kind"]
    if kind == "count_indicator":
        return LocalFunctional(kind=kind, k=int(spec["k"]))
    if kind == "poly_of_sum":
        return LocalFunctional(
            kind=kind,
            phi=scalar_from_json(spec["phi"]),
            h=polynomial_from_json(spec["h"]),
        )
    return LocalFunctional(kind=kind)


def run_check(spec: dict) -> McReport:
    """Dispatch a JSON check specification to the matching check function."""
    try:
        name = spec["check"]
        window = Window.from_json(spec["window"])
        samples = int(spec["samples"])
        seed = int(spec["seed"])
    except KeyError as exc:
        raise ValueError(f"check spec is missing {exc}") from exc
    if name == "laplace":
        return check_laplace(scalar_from_json(spec["f"]), window, samples, seed)
    if name == "local":
        return check_local_expansion(
            functional_from_json(spec["f"]),
            window,
            samples,
            seed,
            series_terms=int(spec.get("series_terms", 80)),
        )
    if name == "mecke":
        f = spec.get("f", {})
        phi = scalar_from_json(f["phi"]) if "phi" in f else None
        return check_mecke(
            int(spec["m"]),
            scalar_from_json(f.get("g", "indicator")),
            polynomial_from_json(f.get("h", "const")),
            phi,
            window,
            samples,
            seed,
        )
    raise ValueError(f"unknown check {name!r}")

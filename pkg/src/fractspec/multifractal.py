"""Thermodynamic multifractal machinery for self-similar measures.

Frequency vectors lam = (lam_1..lam_N) parameterize the level sets of the
local scaling exponent:

    alpha(lam) = sum lam_i log p_i / sum lam_i log a_i
    f(lam)     = sum lam_i log lam_i / sum lam_i log a_i

Constrained maximization of f at fixed alpha yields, for each Lagrange
multiplier Lambda, the critical vector lam_i = a_i^Omega p_i^Lambda where
Omega solves the partition relation sum a_j^Omega p_j^Lambda = 1, giving a
point (alpha, f) of the spectrum with f = Omega + Lambda * alpha.  Omega is
the negative free-energy exponent (-tau) and Lambda the slope f'(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .dimension import hausdorff_dim, mf_dim_max, mf_dim_min
from .ifs import SelfSimilarSystem, build_system, with_weights
from .solve import SolverError, bisect_decreasing, expand_bracket_decreasing

PARTITION_RESIDUAL = 1e-13
OMEGA_MIN_TOL = 1e-10
Q_INFINITY_CUTOFF = 1e4
DEFAULT_LAMBDA_GRID_SIZE = 512
DEFAULT_LAMBDA_RANGE = (-20.0, 20.0)

FREQ_SUM_TOL = 1e-12


def frequency_vector(lambdas: Sequence[float]) -> np.ndarray:
    """Validate a frequency (signature) vector: lam_i >= 0, sum lam_i = 1."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1:
        raise ValueError("frequency vector must be one-dimensional")
    if np.any(lam < 0.0):
        raise ValueError("frequencies must be nonnegative")
    if abs(math.fsum(lam) - 1.0) > FREQ_SUM_TOL:
        raise ValueError(f"frequencies sum to {math.fsum(lam)}, expected 1")
    return lam


def _xlogx(lam: np.ndarray) -> np.ndarray:
    """lam * log(lam) with the entropy convention 0 * log 0 = 0."""
    out = np.zeros_like(lam)
    pos = lam > 0.0
    out[pos] = lam[pos] * np.log(lam[pos])
    return out


def alpha_of(frequency: Sequence[float], system: SelfSimilarSystem) -> float:
    """Local exponent alpha(lam) = sum lam_i log p_i / sum lam_i log a_i."""
    lam = frequency_vector(frequency)
    log_a = np.log(system.contractors)
    log_p = np.log(system.weights)
    return float(np.dot(lam, log_p) / np.dot(lam, log_a))


def f_of(frequency: Sequence[float], system: SelfSimilarSystem) -> float:
    """Level-set dimension f(lam) = sum lam_i log lam_i / sum lam_i log a_i."""
    lam = frequency_vector(frequency)
    log_a = np.log(system.contractors)
    return float(np.sum(_xlogx(lam)) / np.dot(lam, log_a))


def alpha_bounds(system: SelfSimilarSystem) -> tuple[float, float]:
    """(alpha_min, alpha_max) = extremes of log p_i / log a_i."""
    ratios = np.log(system.weights) / np.log(system.contractors)
    return float(ratios.min()), float(ratios.max())


def solve_omega(Lambda: float, system: SelfSimilarSystem) -> float:
    """The unique Omega with sum_j a_j^Omega p_j^Lambda = 1.

    The sum is strictly decreasing in Omega (every a_j < 1), from +inf to 0;
    evaluated in log space so extreme Lambda cannot overflow.
    """
    log_a = np.log(system.contractors)
    log_p = np.log(system.weights)

    def log_partition(omega: float) -> float:
        return float(logsumexp(omega * log_a + Lambda * log_p))

    lo, hi = expand_bracket_decreasing(log_partition)
    return bisect_decreasing(log_partition, lo, hi, residual=PARTITION_RESIDUAL)


@dataclass(frozen=True)
class SpectrumPoint:
    """One spectrum sample: slope Lambda = f'(alpha), Omega = f - Lambda*alpha."""

    Lambda: float
    Omega: float
    alpha: float
    f: float
    freq: Optional[np.ndarray] = None  # critical frequency vector, when sampled


def critical_point(Lambda: float, system: SelfSimilarSystem) -> tuple[np.ndarray, SpectrumPoint]:
    """Critical frequency vector and spectrum point at multiplier Lambda.

    lam_i = a_i^Omega p_i^Lambda sums to 1 by construction of Omega.
    """
    omega = solve_omega(Lambda, system)
    log_a = np.log(system.contractors)
    log_p = np.log(system.weights)
    lam = np.exp(omega * log_a + Lambda * log_p)
    alpha = float(np.dot(lam, log_p) / np.dot(lam, log_a))
    f = omega + Lambda * alpha
    return lam, SpectrumPoint(Lambda=Lambda, Omega=omega, alpha=alpha, f=f, freq=lam)


def equal_weight_point(Omega: float, system: SelfSimilarSystem) -> SpectrumPoint:
    """Spectrum point at parameter Omega for uniform weights p_i = 1/N.

    lam_i = a_i^Omega / sum_j a_j^Omega;
    alpha  = log(1/N) / sum lam_i log a_i;
    f      = Omega - log(sum_j a_j^Omega) / sum lam_i log a_i.
    """
    if not system.uniform_weights:
        raise ValueError("equal_weight_point requires uniform weights")
    log_a = np.log(system.contractors)
    exponents = Omega * log_a
    log_norm = float(logsumexp(exponents))
    lam = np.exp(exponents - log_norm)
    denom = float(np.dot(lam, log_a))
    alpha = math.log(1.0 / system.n) / denom
    f = Omega - log_norm / denom
    # Lambda = (f - Omega * 1) slope recovered from f = Omega + Lambda * alpha.
    Lambda = (f - Omega) / alpha
    return SpectrumPoint(Lambda=Lambda, Omega=Omega, alpha=alpha, f=f, freq=lam)


def omega_min(system: SelfSimilarSystem) -> Optional[float]:
    """The Omega <= D_0 on the left spectrum branch with f(alpha(Omega)) = d_min.

    Exists whenever the contractors are not all equal, because f decreases to
    log(1/m)/log(a_min) < d_min as Omega -> -inf while f(D_0) = D_0 = d_max.
    Returns None for the degenerate all-equal system, where the spectrum is a
    single point.
    """
    if len(set(system.contractors)) < 2:
        return None
    target = mf_dim_min(system)
    uniform = build_system(system.contractors)  # force p_i = 1/N
    d0 = hausdorff_dim(uniform)

    def gap(omega: float) -> float:
        # f(alpha(.)) is increasing on the left branch, so negate for bisection.
        return target - equal_weight_point(omega, uniform).f

    lo = d0 - 1.0
    width = 1.0
    while gap(lo) < 0.0:
        width *= 2.0
        lo -= width
        if width > 1e12:
            raise SolverError("no bracket found for omega_min")
    # Bisect on the sign of (target - f); stop when f matches d_min.
    hi = d0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = gap(mid)
        if abs(g) < OMEGA_MIN_TOL:
            return mid
        if g > 0.0:
            lo = mid
        else:
            hi = mid
    raise SolverError("omega_min bisection did not reach tolerance")


def renyi(system: SelfSimilarSystem, q: float) -> float:
    """Generalized dimension D_q of the self-similar measure.

    For finite q != 1: tau(q) solves sum p_i^q a_i^(-tau) = 1 and
    D_q = tau/(q-1).  D_1 is the continuous limit
    sum p_i log p_i / sum p_i log a_i; q = +/-inf give alpha_min/alpha_max.
    """
    if math.isinf(q) or abs(q) > Q_INFINITY_CUTOFF:
        a_lo, a_hi = alpha_bounds(system)
        return a_lo if q > 0 else a_hi
    if q == 1.0:
        log_a = np.log(system.contractors)
        log_p = np.log(system.weights)
        p = np.asarray(system.weights)
        return float(np.dot(p, log_p) / np.dot(p, log_a))
    tau = -solve_omega(q, system)
    return tau / (q - 1.0)


@dataclass(frozen=True)
class CaseAReport:
    """Identities obtained with the length-normalized weights p_i = a_i / L."""

    alpha_min: float
    d_infinity: float  # D_{+inf} of the induced measure
    d_zero: float      # D_0 of the induced measure
    d_min: float
    d_max: float
    identities_hold: bool


def case_a_identification(system: SelfSimilarSystem, tol: float = 1e-10) -> CaseAReport:
    """Check d_min = D_{+inf} and d_max = D_0 under p_i = a_i / L."""
    length = system.total_length
    weighted = with_weights(system, [a / length for a in system.contractors])
    a_lo, _ = alpha_bounds(weighted)
    d_inf = renyi(weighted, math.inf)
    d0 = renyi(weighted, 0.0)
    d_lo = mf_dim_min(system)
    d_hi = mf_dim_max(system)
    ok = abs(d_lo - d_inf) <= tol and abs(d_hi - d0) <= tol
    return CaseAReport(a_lo, d_inf, d0, d_lo, d_hi, ok)


def d_tilde(system: SelfSimilarSystem) -> float:
    """f(alpha(1)) for uniform weights: 1 + log L / sum (a_i/L) log(1/a_i).

    Always at least d_min (so Omega_min <= 1).
    """
    length = system.total_length
    a = np.asarray(system.contractors)
    value = 1.0 + math.log(length) / float(np.dot(a / length, -np.log(a)))
    if value < mf_dim_min(system) - 1e-12:
        raise AssertionError("d_tilde fell below d_min: invalid system state")
    return value


def information_dim(system: SelfSimilarSystem) -> float:
    """D_1; for uniform weights this is -log N / ((1/N) sum log a_i)."""
    return renyi(system, 1.0)


def default_lambda_grid(
    size: int = DEFAULT_LAMBDA_GRID_SIZE,
    bounds: tuple[float, float] = DEFAULT_LAMBDA_RANGE,
    shape: float = 2.0,
) -> np.ndarray:
    """tanh-spaced multiplier grid: denser toward the asymptotic tails."""
    lo, hi = bounds
    u = np.linspace(-1.0, 1.0, size)
    t = np.tanh(shape * u) / math.tanh(shape)
    return (lo + hi) / 2.0 + (hi - lo) / 2.0 * t


@dataclass(frozen=True)
class SpectrumCurve:
    """Sampled (alpha, f) spectrum, ordered by alpha, with annotations."""

    points: tuple[SpectrumPoint, ...]
    description: str
    annotations: dict[str, float] = field(default_factory=dict)

    def alphas(self) -> np.ndarray:
        return np.array([p.alpha for p in self.points])

    def fs(self) -> np.ndarray:
        return np.array([p.f for p in self.points])


def spectrum(
    system: SelfSimilarSystem,
    lambdas: Optional[Sequence[float]] = None,
    omegas: Optional[Sequence[float]] = None,
) -> SpectrumCurve:
    """Sample the (alpha, f) spectrum on a Lambda grid (or Omega grid when
    the weights are uniform), appending the analytic endpoints.

    Degenerate systems (all contractors and weights equal) collapse to the
    single point (D_0, D_0).
    """
    if lambdas is not None and omegas is not None:
        raise ValueError("provide at most one of lambdas/omegas")
    a_lo, a_hi = alpha_bounds(system)
    if a_lo == a_hi:
        d0 = hausdorff_dim(system)
        pt = SpectrumPoint(Lambda=0.0, Omega=d0, alpha=a_lo, f=a_lo)
        return SpectrumCurve(
            points=(pt,),
            description="degenerate exact-dimensional measure",
            annotations=_annotate(system),
        )
    if omegas is not None:
        pts = [equal_weight_point(float(w), system) for w in omegas]
    else:
        if lambdas is None:
            lambdas = default_lambda_grid()
        pts = [critical_point(float(v), system)[1] for v in lambdas]
    if system.uniform_weights:
        pts.extend(_uniform_endpoints(system))
        # Marked positions: apex (Omega = D_0), the f = alpha point (Omega = 0),
        # D-tilde (Omega = 1), and Omega_min, sampled exactly.
        marked = [hausdorff_dim(system), 0.0, 1.0]
        w_min = omega_min(system)
        if w_min is not None:
            marked.append(w_min)
        pts.extend(equal_weight_point(w, system) for w in marked)
    pts.sort(key=lambda p: p.alpha)
    return SpectrumCurve(
        points=tuple(pts),
        description=f"self-similar measure, N={system.n}",
        annotations=_annotate(system),
    )


def _uniform_endpoints(system: SelfSimilarSystem) -> list[SpectrumPoint]:
    """Analytic spectrum endpoints for uniform weights.

    At alpha_min (Omega -> -inf) the value of f is log(1/m)/log(a_min) with m
    the multiplicity of the smallest contractor; symmetrically at alpha_max.
    """
    a_lo, a_hi = alpha_bounds(system)
    m = sum(1 for a in system.contractors if a == system.a_min)
    m_prime = sum(1 for a in system.contractors if a == system.a_max)
    f_lo = math.log(1.0 / m) / math.log(system.a_min)
    f_hi = math.log(1.0 / m_prime) / math.log(system.a_max)
    return [
        SpectrumPoint(Lambda=math.inf, Omega=-math.inf, alpha=a_lo, f=f_lo),
        SpectrumPoint(Lambda=-math.inf, Omega=math.inf, alpha=a_hi, f=f_hi),
    ]


def _annotate(system: SelfSimilarSystem) -> dict[str, float]:
    d0 = hausdorff_dim(system)
    a_lo, a_hi = alpha_bounds(system)
    ann = {
        "D_0": d0,
        "D_1": information_dim(system),
        "d_min": mf_dim_min(system),
        "d_max": mf_dim_max(system),
        "alpha_min": a_lo,
        "alpha_max": a_hi,
    }
    if system.uniform_weights:
        ann["D_tilde"] = d_tilde(system)
        w_min = omega_min(system)
        if w_min is not None:
            ann["Omega_min"] = w_min
        lo_pt, hi_pt = _uniform_endpoints(system)
        ann["f_alpha_min"] = lo_pt.f
        ann["f_alpha_max"] = hi_pt.f
    return ann


def shrink_and_invert(
    curve: SpectrumCurve, d_zero: Optional[float] = None
) -> tuple[SpectrumCurve, SpectrumCurve]:
    """Shrunk and inverted copies of a spectrum curve.

    Shrinking rescales both axes by 1/D_0 so the apex is 1; tangent slopes
    are unchanged.  Inversion then maps each (alpha, f) of the shrunk curve
    to (1/alpha, f/alpha); the new tangent slope is Omega/D_0.
    """
    if d_zero is None:
        d_zero = curve.annotations.get("D_0")
        if d_zero is None:
            d_zero = float(max(p.f for p in curve.points))
    if not d_zero > 0.0:
        raise ValueError(f"apex must be positive, got {d_zero}")
    shrunk_pts = [
        SpectrumPoint(
            Lambda=p.Lambda,
            Omega=p.Omega / d_zero,
            alpha=p.alpha / d_zero,
            f=p.f / d_zero,
            freq=p.freq,
        )
        for p in curve.points
    ]
    inverted_pts = []
    for p in curve.points:
        alpha_sh = p.alpha / d_zero
        f_sh = p.f / d_zero
        # Slope of the inverted curve is Omega/D_0; its Omega-analogue is Lambda.
        inverted_pts.append(
            SpectrumPoint(
                Lambda=p.Omega / d_zero,
                Omega=p.Lambda,
                alpha=1.0 / alpha_sh,
                f=f_sh / alpha_sh,
            )
        )
    inverted_pts.sort(key=lambda p: p.alpha)
    ann = dict(curve.annotations)
    return (
        SpectrumCurve(tuple(shrunk_pts), curve.description + " (shrunk)", ann),
        SpectrumCurve(tuple(inverted_pts), curve.description + " (inverted)", ann),
    )


@dataclass(frozen=True)
class HessianReport:
    """Bordered-Hessian maximality verdict at a critical frequency vector."""

    applicable: bool
    is_maximum: bool
    minors: tuple[float, ...]             # |H_2| .. |H_{N+1}| by determinant
    minors_recurrence: tuple[float, ...]  # same minors via the closed recurrence


def hessian_check(Lambda: float, system: SelfSimilarSystem) -> HessianReport:
    """Certify that the critical vector at Lambda maximizes f on its level set.

    At the critical point the mixed second derivatives of the auxiliary
    function vanish, so the bordered Hessian has border entries
    A_i = (log p_i - alpha_0 log a_i) / sum lam_j log a_j and diagonal
    B_i = (1/lam_i) / sum lam_j log a_j < 0.  The verdict requires |H_3| > 0
    with alternating signs of the higher leading minors.
    """
    lam, point = critical_point(Lambda, system)
    if np.any(lam <= 0.0):
        return HessianReport(False, False, (), ())
    log_a = np.log(system.contractors)
    log_p = np.log(system.weights)
    denom = float(np.dot(lam, log_a))
    a_border = (log_p - point.alpha * log_a) / denom
    b_diag = (1.0 / lam) / denom
    n = system.n

    h = np.zeros((n + 1, n + 1))
    h[0, 1:] = -a_border
    h[1:, 0] = -a_border
    h[np.arange(1, n + 1), np.arange(1, n + 1)] = b_diag
    minors = tuple(float(np.linalg.det(h[: k + 1, : k + 1])) for k in range(1, n + 1))

    # Cofactor expansion along the last row gives
    # |H_2| = -A_1^2 and |H_{n+1}| = B_n |H_n| - A_n^2 prod_{i<n} B_i,
    # equivalent to the closed form |H_{n+1}| = -sum_i A_i^2 prod_{j!=i} B_j.
    rec = [-float(a_border[0]) ** 2]
    for k in range(2, n + 1):
        prod_b = float(np.prod(b_diag[: k - 1]))
        rec.append(b_diag[k - 1] * rec[-1] - a_border[k - 1] ** 2 * prod_b)
    rec = tuple(rec)

    # minors[k - 2] holds |H_k|; the verdict needs sgn|H_k| = (-1)^(k+1) for k >= 3.
    is_max = all(
        minors[k - 2] != 0.0 and math.copysign(1.0, minors[k - 2]) == (-1.0) ** (k + 1)
        for k in range(3, n + 2)
    )
    return HessianReport(True, is_max, minors, rec)


@dataclass(frozen=True)
class LegendreReport:
    """Residuals of the tangent/transform identities along a sampled curve."""

    max_slope_residual: float      # |d f/d alpha - Lambda|
    max_transform_residual: float  # |f - (Omega + Lambda alpha)|
    max_alpha_residual: float      # |d tau/d Lambda - alpha|

    def within(self, slope_tol: float = 1e-4, transform_tol: float = 1e-10,
               alpha_tol: float = 1e-4) -> bool:
        return (
            self.max_slope_residual <= slope_tol
            and self.max_transform_residual <= transform_tol
            and self.max_alpha_residual <= alpha_tol
        )


def _nonuniform_derivative(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Second-order finite-difference dy/dx at interior points of a nonuniform grid."""
    h0 = x[1:-1] - x[:-2]
    h1 = x[2:] - x[1:-1]
    return (
        -h1 / (h0 * (h0 + h1)) * y[:-2]
        + (h1 - h0) / (h0 * h1) * y[1:-1]
        + h0 / (h1 * (h0 + h1)) * y[2:]
    )


ALPHA_RESOLUTION = 1e-8


def legendre_consistency(curve: SpectrumCurve) -> LegendreReport:
    """Finite-difference verification that Lambda = f'(alpha), f = Omega +
    Lambda*alpha, and alpha = d tau / d Lambda along the sampled curve.

    The slope df/dalpha is formed parametrically, as the ratio of the
    Lambda-derivatives of f and alpha, which stays well conditioned where
    direct alpha-differencing would not.  Deep in the asymptotic tails the
    sampled alpha stops changing at double precision, so interior points
    whose alpha-increment falls below ALPHA_RESOLUTION carry no slope
    information and are excluded from the slope residual.
    """
    pts = [p for p in curve.points if math.isfinite(p.Lambda)]
    if len(pts) < 18:
        raise ValueError(f"grid too coarse: {len(pts)} finite points, need >= 18")

    pts.sort(key=lambda p: p.Lambda)
    deduped = [pts[0]]
    for p in pts[1:]:
        if p.Lambda > deduped[-1].Lambda:
            deduped.append(p)
    lam = np.array([p.Lambda for p in deduped])
    alpha = np.array([p.alpha for p in deduped])
    f = np.array([p.f for p in deduped])
    omega = np.array([p.Omega for p in deduped])

    res_transform = float(np.max(np.abs(f - (omega + lam * alpha))))

    df = _nonuniform_derivative(lam, f)
    dalpha = _nonuniform_derivative(lam, alpha)
    span = np.abs(alpha[2:] - alpha[:-2])
    resolvable = span > ALPHA_RESOLUTION * np.maximum(1.0, np.abs(alpha[1:-1]))
    if not resolvable.any():
        raise ValueError("no resolvable interior points for the slope check")
    slope = df[resolvable] / dalpha[resolvable]
    res_slope = float(np.max(np.abs(slope - lam[1:-1][resolvable])))

    dtau = _nonuniform_derivative(lam, -omega)
    res_alpha = float(np.max(np.abs(dtau - alpha[1:-1])))
    return LegendreReport(res_slope, res_transform, res_alpha)

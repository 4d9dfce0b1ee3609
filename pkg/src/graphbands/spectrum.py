"""Momentum spectrum of a periodic graph via the quasi-momentum
polynomial criterion, plus band-interval scans and band-density series.

For a single lattice generator the secular determinant at fixed k is a
Laurent polynomial of degree m in z = exp(i alpha), where m is the total
flux weight of the graph.  A momentum k belongs to the spectrum iff that
polynomial has a root on the unit circle (some quasi-momentum solves the
secular equation), or vanishes identically (flat band).  This turns
membership into a small root-finding problem per k, robust and
vectorizable, with no root-chasing along dispersion branches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bond_system import BondSystem
from .secular import secular_values

UNIT_CIRCLE_TOL = 1e-8       # |  |z| - 1  | for a root to count as on-circle
FLAT_BAND_TOL = 1e-12        # max |coefficient| below which P_k vanishes
GRID_FALLBACK_POINTS = 64    # quasi-momentum grid per generator, J >= 2
_TRIM_RTOL = 1e-12
_EDGE_EVAL_RTOL = 1e-12           # relative size below which a coefficient is noise


# ---------------------------------------------------------------------------
# quasi-momentum polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaPolynomial:
    """Laurent polynomial alpha -> F(k; alpha) at fixed momentum.

    ``coefficients[j]`` multiplies exp(i (j - m) alpha) where
    m = (len - 1) // 2, so the array runs from exponent -m to +m.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or len(c) % 2 != 1:
            raise ValueError("coefficient array must be 1-D of odd length")
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def __call__(self, alpha):
        alpha = np.asarray(alpha, dtype=float)
        j = np.arange(-self.degree, self.degree + 1)
        return np.exp(1j * alpha[..., None] * j) @ self.coefficients

    def is_flat(self, tol: float = FLAT_BAND_TOL) -> bool:
        """True when the polynomial vanishes identically (flat band)."""
        return bool(np.abs(self.coefficients).max() <= tol)

    def has_unit_circle_root(self, tol: float = UNIT_CIRCLE_TOL) -> bool:
        """True when z^m P(z) has a root with ||z| - 1| <= tol, or the
        polynomial is flat."""
        return bool(_roots_on_circle(self.coefficients[None, :], tol,
                                     FLAT_BAND_TOL)[0])


def _laurent_coefficients(F: np.ndarray, m: int) -> np.ndarray:
    """Coefficients c_{-m}..c_{+m} from values on N equispaced alpha
    samples; rows are independent polynomials."""
    N = F.shape[1]
    c = np.fft.fft(F, axis=1) / N
    if m == 0:
        return c[:, :1]
    return np.concatenate([c[:, N - m:], c[:, :m + 1]], axis=1)


def _quadratic_unit_roots(coeffs: np.ndarray, tol: float) -> np.ndarray:
    """On-circle root test for rows a z^2 + b z + c with a bounded away
    from zero; numerically stable two-branch formula."""
    c0, b, a = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2]
    disc = np.sqrt(b * b - 4.0 * a * c0)
    # pick the branch that avoids cancellation in b + disc
    flip = np.real(np.conj(b) * disc) < 0
    disc = np.where(flip, -disc, disc)
    q = -0.5 * (b + disc)
    r1 = q / a
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.where(q != 0, c0 / np.where(q != 0, q, 1.0), 0.0)
    hit1 = np.abs(np.abs(r1) - 1.0) <= tol
    hit2 = np.abs(np.abs(r2) - 1.0) <= tol
    return hit1 | hit2


def _companion_unit_roots(coeffs: np.ndarray, tol: float) -> np.ndarray:
    """On-circle root test via batched companion eigenvalues; leading
    coefficients must be bounded away from zero."""
    r, D1 = coeffs.shape
    D = D1 - 1
    monic = coeffs / coeffs[:, -1:]
    C = np.zeros((r, D, D), dtype=complex)
    idx = np.arange(D - 1)
    C[:, idx + 1, idx] = 1.0
    C[:, :, -1] = -monic[:, :-1]
    roots = np.linalg.eigvals(C)
    return np.any(np.abs(np.abs(roots) - 1.0) <= tol, axis=1)


def _single_row_unit_roots(c: np.ndarray, tol: float, scale: float) -> bool:
    """Fallback for a row whose leading coefficient is noise-level: trim
    and use a dense root finder."""
    keep = len(c)
    while keep > 1 and abs(c[keep - 1]) <= _TRIM_RTOL * scale:
        keep -= 1
    if keep <= 1:
        return False
    roots = np.polynomial.polynomial.polyroots(c[:keep])
    return bool(np.any(np.abs(np.abs(roots) - 1.0) <= tol))


def _roots_on_circle(coeffs: np.ndarray, circle_tol: float,
                     flat_tol: float) -> np.ndarray:
    """Row-wise test: flat polynomial, or some root of z^m P(z) on the
    unit circle within circle_tol."""
    n, D1 = coeffs.shape
    scale = np.abs(coeffs).max(axis=1)
    member = scale <= flat_tol
    if D1 == 1:
        return member
    # Band edges are double roots pinned at z = +-1 by the alpha-reversal
    # symmetry; root extraction only locates a double root to sqrt(eps),
    # but the polynomial value there is computed to machine precision.
    signs = np.where(np.arange(D1) % 2 == 0, 1.0, -1.0)
    member |= np.abs(coeffs.sum(axis=1)) <= _EDGE_EVAL_RTOL * scale
    member |= np.abs(coeffs @ signs) <= _EDGE_EVAL_RTOL * scale
    active = ~member
    lead_bad = active & (np.abs(coeffs[:, -1]) <= _TRIM_RTOL * scale)
    regular = np.nonzero(active & ~lead_bad)[0]
    if regular.size:
        block = coeffs[regular]
        if D1 == 2:
            root = -block[:, 0] / block[:, 1]
            member[regular] = np.abs(np.abs(root) - 1.0) <= circle_tol
        elif D1 == 3:
            member[regular] = _quadratic_unit_roots(block, circle_tol)
        else:
            member[regular] = _companion_unit_roots(block, circle_tol)
    for i in np.nonzero(lead_bad)[0]:
        member[i] = _single_row_unit_roots(coeffs[i], circle_tol, scale[i])
    return member


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _alpha_samples(m: int, generators: int) -> np.ndarray:
    """Equispaced quasi-momentum samples, enough to overdetermine a
    degree-m Laurent polynomial twice over."""
    N = 4 * m + 4
    s = 2.0 * np.pi * np.arange(N) / N
    if generators == 0:
        return np.zeros((N, 0))
    return s[:, None]


def membership_from_phases(bs: BondSystem, bond_phases,
                           threads: int | None = None) -> np.ndarray:
    """Spectrum membership for rows of flux-free bond phases.

    This is the kernel shared by momentum scans (phases = k L) and torus
    sampling (phases = lifted kappa).  For one generator the decision is
    the unit-circle root criterion on the quasi-momentum polynomial; for
    J >= 2 the same root test runs along the heaviest-flux generator on a
    grid over the remaining ones.  The feasible set of the gridded
    quasi-momenta has positive measure whenever the point belongs to the
    spectrum, so a modest grid is reliable where a pointwise near-zero
    test would not be.
    """
    bond_phases = np.asarray(bond_phases, dtype=float)
    if bs.generators <= 1:
        m = bs.flux_weight
        F = secular_values(bs, bond_phases,
                           _alpha_samples(m, bs.generators), threads)
        coeffs = _laurent_coefficients(F, m)
        return _roots_on_circle(coeffs, UNIT_CIRCLE_TOL, FLAT_BAND_TOL)
    n = bond_phases.shape[0]
    weights = np.abs(bs.bond_flux[:bs.n_edges]).sum(axis=0)
    main = int(np.argmax(weights))
    m = int(round(weights[main]))
    N = 4 * m + 4
    base = np.linspace(0.0, 2.0 * np.pi, GRID_FALLBACK_POINTS,
                       endpoint=False)
    axes = [base] * bs.generators
    axes[main] = 2.0 * np.pi * np.arange(N) / N
    mesh = np.meshgrid(*axes, indexing="ij")
    order = [j for j in range(bs.generators) if j != main] + [main]
    alphas = np.stack([mesh[j].transpose(order).ravel()
                       for j in range(bs.generators)], axis=1)
    F = secular_values(bs, bond_phases, alphas, threads)
    coeffs = _laurent_coefficients(F.reshape(-1, N), m)
    hit = _roots_on_circle(coeffs, UNIT_CIRCLE_TOL, FLAT_BAND_TOL)
    return hit.reshape(n, -1).any(axis=1)


def alpha_polynomial(bs: BondSystem, k: float) -> AlphaPolynomial:
    """Quasi-momentum polynomial of F(k; .) at fixed momentum k.

    Only defined for single-generator graphs.  Coefficients are extracted
    by a discrete Fourier transform over 4m + 4 equispaced quasi-momentum
    samples, twice the minimum, so truncation error is pure roundoff.
    """
    if bs.generators != 1:
        raise ValueError("quasi-momentum polynomial requires exactly one "
                         "generator, got %d" % bs.generators)
    m = bs.flux_weight
    F = secular_values(bs, (k * bs.bond_lengths)[None, :],
                       _alpha_samples(m, 1))
    return AlphaPolynomial(_laurent_coefficients(F, m)[0])


def momentum_membership(bs: BondSystem, ks,
                        threads: int | None = None) -> np.ndarray:
    """Vectorized spectrum indicator over an array of momenta."""
    ks = np.asarray(ks, dtype=float)
    phases = ks.reshape(-1, 1) * bs.bond_lengths[None, :]
    return membership_from_phases(bs, phases, threads).reshape(ks.shape)


def in_spectrum(bs: BondSystem, k: float) -> bool:
    """True iff momentum k lies in the spectrum of the periodic graph."""
    return bool(momentum_membership(bs, np.array([k]))[0])


# ---------------------------------------------------------------------------
# bands
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Band:
    """Closed momentum interval contained in the spectrum."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("band endpoints must be finite")
        if self.hi < self.lo:
            raise ValueError("band with hi < lo")

    @property
    def measure(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class BandList:
    """Ordered pairwise-disjoint bands found in [0, k_max]."""

    bands: tuple[Band, ...]
    k_max: float
    grid_step: float
    bisect_tol: float

    def __post_init__(self):
        prev = 0.0
        for b in self.bands:
            if b.lo < prev - self.bisect_tol or b.hi > self.k_max + self.bisect_tol:
                raise ValueError("bands out of order or outside [0, k_max]")
            prev = b.hi

    @property
    def total_measure(self) -> float:
        return float(sum(b.measure for b in self.bands))

    @property
    def coverage(self) -> float:
        """Fraction of [0, k_max] covered by bands."""
        return self.total_measure / self.k_max


def band_intervals(bs: BondSystem, k_max: float,
                   grid_step: float | None = None,
                   bisect_tol: float | None = None,
                   threads: int | None = None) -> BandList:
    """Locate the spectral bands in [0, k_max].

    Membership is sampled on a uniform grid and every sign change is
    sharpened by bisection on the membership indicator.  The default grid
    step pi / (8 L) puts 16 samples per period of the fastest oscillation
    of the secular function (L = total graph length), fine enough that
    generically no band or gap falls between grid points.  Bisection runs
    simultaneously on all detected edges, so the cost is a handful of
    batched membership sweeps.
    """
    if k_max <= 0:
        raise ValueError("k_max must be positive")
    step = grid_step if grid_step is not None else np.pi / (8.0 * bs.total_length)
    if step <= 0:
        raise ValueError("grid_step must be positive")
    tol = bisect_tol if bisect_tol is not None else 1e-10 * max(1.0, k_max)
    if tol <= 0:
        raise ValueError("bisect_tol must be positive")

    n = int(np.ceil(k_max / step))
    grid = np.linspace(0.0, k_max, n + 1)
    mem = momentum_membership(bs, grid, threads)

    ti = np.nonzero(mem[:-1] != mem[1:])[0]
    lo, hi = grid[ti].copy(), grid[ti + 1].copy()
    left_state = mem[ti]
    while lo.size and np.any(hi - lo > tol):
        mid = 0.5 * (lo + hi)
        same = momentum_membership(bs, mid, threads) == left_state
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    edges = 0.5 * (lo + hi)

    intervals = []
    start = 0.0 if mem[0] else None
    for x, was_in in zip(edges, left_state):
        if was_in:
            intervals.append((start, x))
            start = None
        else:
            start = x
    if start is not None:
        intervals.append((start, k_max))

    merged = []
    for a, b in intervals:
        if merged and a - merged[-1][1] <= tol:
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))

    return BandList(bands=tuple(Band(a, b) for a, b in merged),
                    k_max=float(k_max), grid_step=float(step),
                    bisect_tol=float(tol))


# ---------------------------------------------------------------------------
# band density
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensitySeries:
    """Band-density estimates |sigma intersect [0, K]| / K at increasing
    cutoffs K; ``final`` is the estimate at the largest cutoff."""

    cutoffs: np.ndarray
    values: np.ndarray
    bands: BandList

    @property
    def final(self) -> float:
        return float(self.values[-1])


def measure_below(bands: BandList, cutoffs) -> np.ndarray:
    """Lebesgue measure of the band union intersected with [0, K] for
    each cutoff K."""
    cutoffs = np.asarray(cutoffs, dtype=float)
    if not bands.bands:
        return np.zeros(cutoffs.shape)
    starts = np.array([b.lo for b in bands.bands])
    ends = np.array([b.hi for b in bands.bands])
    cum = np.concatenate([[0.0], np.cumsum(ends - starts)])
    idx = np.searchsorted(ends, cutoffs, side="left")
    full = cum[idx]
    partial = np.where(idx < len(starts),
                       np.clip(cutoffs - starts[np.minimum(idx, len(starts) - 1)],
                               0.0, None),
                       0.0)
    return full + partial


def density(bs: BondSystem, k_max: float, checkpoints: int = 16,
            grid_step: float | None = None, bisect_tol: float | None = None,
            threads: int | None = None) -> DensitySeries:
    """Band density of the spectrum with a convergence trace.

    Bands are located once over [0, k_max]; the density is then reported
    at ``checkpoints`` cutoffs spaced geometrically over the last two
    decades up to k_max, which makes the convergence of the K -> infinity
    limit visible at no extra band-finding cost.
    """
    if checkpoints < 1:
        raise ValueError("checkpoints must be at least 1")
    bands = band_intervals(bs, k_max, grid_step, bisect_tol, threads)
    if checkpoints == 1:
        cutoffs = np.array([k_max], dtype=float)
    else:
        cutoffs = np.geomspace(k_max / 100.0, k_max, checkpoints)
        cutoffs[-1] = k_max
    values = measure_below(bands, cutoffs) / cutoffs
    return DensitySeries(cutoffs=cutoffs, values=values, bands=bands)

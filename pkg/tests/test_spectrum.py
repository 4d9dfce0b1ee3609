import numpy as np
import pytest

import graphbands as gb
from graphbands.secular import secular_values

UNIT_LASSO = gb.bond_matrices(gb.bind_lengths(gb.build_example("lasso"), [1.0, 1.0]))

# on the unit-length loop-with-pendant graph the diagonal kappa1 = kappa2 = k
# makes membership equivalent to |cos k| >= 1/3
DIAG_EDGE = np.arccos(1.0 / 3.0)


def circle_system(length=1.0):
    g = gb.MagneticGraph(vertices=(0,),
                         edges=(gb.Edge(1, 0, 0, length, (1,)),),
                         generators=1)
    return gb.bond_matrices(g)


# ------------------------------------------------------------ polynomial

def test_polynomial_constant_in_gap():
    p = gb.alpha_polynomial(UNIT_LASSO, np.pi / 2)
    assert p.degree == 1
    c = p.coefficients
    assert abs(c[1] - 4.0 / 3.0) <= 1e-12
    assert abs(c[0]) <= 1e-12 and abs(c[2]) <= 1e-12
    assert not p.has_unit_circle_root()


def test_polynomial_root_at_band_point():
    p = gb.alpha_polynomial(UNIT_LASSO, 2 * np.pi)
    # -(4/3)(z - 1)^2 / z: double root at z = 1, alpha = 0
    expected = np.array([-4 / 3, 8 / 3, -4 / 3])
    assert np.abs(p.coefficients - expected).max() <= 1e-12
    assert p.has_unit_circle_root()


def test_polynomial_reconstructs_secular_values():
    rng = np.random.default_rng(0)
    for name in ("lasso", "fig1c", "fig1d"):
        bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example(name), 5))
        for k in rng.uniform(0, 25, 4):
            p = gb.alpha_polynomial(bs, k)
            alphas = rng.uniform(0, 2 * np.pi, 9)
            direct = np.array([gb.eval_secular(bs, k, [a]).value for a in alphas])
            assert np.abs(p(alphas) - direct).max() <= 1e-9


def test_polynomial_degree_bound_from_oversampling():
    # coefficients beyond +-m must vanish: extract with extra samples
    bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example("fig1d"), 2))
    m = bs.flux_weight
    k = 7.3
    N = 4 * m + 12
    alphas = 2 * np.pi * np.arange(N) / N
    F = secular_values(bs, (k * bs.bond_lengths)[None, :], alphas[:, None])
    c = np.fft.fft(F[0]) / N
    spill = np.abs(np.concatenate([c[m + 1:N - m]])).max()
    assert spill <= 1e-9


def test_polynomial_m0_for_fluxless_graph():
    g = gb.MagneticGraph(vertices=(0, 1),
                         edges=(gb.Edge(1, 0, 1, 1.0, (0,)),),
                         generators=1)
    p = gb.alpha_polynomial(gb.bond_matrices(g), 2.0)
    assert p.degree == 0 and len(p.coefficients) == 1


def test_polynomial_rejects_multiple_generators():
    g = gb.MagneticGraph(vertices=(0, 1),
                         edges=(gb.Edge(1, 0, 1, 1.0, (1, 0)),
                                gb.Edge(2, 1, 0, 1.0, (0, 1))),
                         generators=2)
    with pytest.raises(ValueError):
        gb.alpha_polynomial(gb.bond_matrices(g), 1.0)


def test_polynomial_higher_flux_weight():
    # two flux-carrying edges: degree-2 Laurent polynomial, values still match
    g = gb.MagneticGraph(
        vertices=(0, 1, 2),
        edges=(gb.Edge(1, 0, 1, 1.1, (1,)), gb.Edge(2, 1, 0, 0.8, (1,)),
               gb.Edge(3, 0, 2, 0.6, (0,))),
        generators=1)
    bs = gb.bond_matrices(g)
    assert bs.flux_weight == 2
    p = gb.alpha_polynomial(bs, 3.7)
    assert p.degree == 2
    rng = np.random.default_rng(1)
    alphas = rng.uniform(0, 2 * np.pi, 7)
    direct = np.array([gb.eval_secular(bs, 3.7, [a]).value for a in alphas])
    assert np.abs(p(alphas) - direct).max() <= 1e-9


def test_polynomial_validation():
    with pytest.raises(ValueError):
        gb.AlphaPolynomial(np.array([1.0, 2.0]))  # even length
    flat = gb.AlphaPolynomial(np.zeros(3))
    assert flat.is_flat()
    assert flat.has_unit_circle_root()  # flat band counts as member


# ------------------------------------------------------------ membership

def test_in_spectrum_lasso_points():
    assert gb.in_spectrum(UNIT_LASSO, 2 * np.pi)
    assert not gb.in_spectrum(UNIT_LASSO, np.pi / 2)
    assert gb.in_spectrum(UNIT_LASSO, 0.0)


def test_circle_graph_has_no_gaps():
    bs = circle_system()
    ks = np.random.default_rng(2).uniform(0, 60, 200)
    assert gb.momentum_membership(bs, ks).all()


def test_momentum_membership_matches_scalar():
    bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example("fig1b"), 9))
    ks = np.random.default_rng(3).uniform(0, 20, 60)
    batch = gb.momentum_membership(bs, ks)
    assert batch.shape == ks.shape
    for k, flag in zip(ks, batch):
        assert gb.in_spectrum(bs, k) == flag


def test_flat_band_detected_via_zero_polynomial():
    # equilateral triangle decoration supports standing waves that do not
    # couple to the loop: F vanishes identically in alpha at those k
    g = gb.bind_lengths(gb.build_example("fig1d"),
                        [0.73, 0.61, 0.89, 1.0, 1.0, 1.0])
    bs = gb.bond_matrices(g)
    for k in (2 * np.pi / 3, 4 * np.pi / 3, 2 * np.pi):
        assert gb.alpha_polynomial(bs, k).is_flat()
        assert gb.in_spectrum(bs, k)


def test_two_generator_fallback_runs():
    cell = gb.FundamentalCell(
        vertices=(0, 1, 2),
        edges=(gb.Edge(1, 0, 1, 0.9), gb.Edge(2, 0, 2, 1.3)),
        identifications=(gb.Identification(1, plus=1, minus=0),
                         gb.Identification(2, plus=2, minus=0)),
        generators=2)
    bs = gb.bond_matrices(gb.bloch_reduce(cell))
    assert bs.generators == 2
    ks = np.linspace(0.1, 6.0, 40)
    mem = gb.momentum_membership(bs, ks)
    assert mem.dtype == bool and mem.any()
    # k = 0 is always in the spectrum
    assert gb.in_spectrum(bs, 0.0)


# ------------------------------------------------------------ bands

def test_band_intervals_unit_lasso_closed_form():
    # bands in [0, 2 pi] are [0, a], [pi - a, pi + a], [2 pi - a, 2 pi]
    # with a = arccos(1/3)
    bands = gb.band_intervals(UNIT_LASSO, 2 * np.pi)
    expected = [(0.0, DIAG_EDGE), (np.pi - DIAG_EDGE, np.pi + DIAG_EDGE),
                (2 * np.pi - DIAG_EDGE, 2 * np.pi)]
    assert len(bands.bands) == 3
    for band, (lo, hi) in zip(bands.bands, expected):
        assert band.lo == pytest.approx(lo, abs=1e-8)
        assert band.hi == pytest.approx(hi, abs=1e-8)


def test_band_count_weyl_law():
    # one dispersion branch per pi / L_tot of momentum on average; the
    # scan merges overlapping branches, so the count is bounded above by
    # the branch count and can fall somewhat below it
    for seed in (1, 2):
        bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example("lasso"),
                                                     seed))
        K = 150.0
        bands = gb.band_intervals(bs, K)
        expected = K * bs.total_length / np.pi
        assert len(bands.bands) <= expected + 3
        assert len(bands.bands) >= 0.75 * expected


def test_band_intervals_grid_robustness():
    # a finer grid may resolve a few gaps narrower than the coarse step,
    # so the count can only grow and the measure moves by at most the
    # width of those gaps
    bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example("lasso"), 4))
    coarse = gb.band_intervals(bs, 100.0)
    fine = gb.band_intervals(bs, 100.0, grid_step=coarse.grid_step / 2)
    extra = len(fine.bands) - len(coarse.bands)
    assert 0 <= extra <= 5
    change = coarse.total_measure - fine.total_measure
    assert -2 * coarse.bisect_tol * len(coarse.bands) <= change
    assert change <= extra * coarse.grid_step + 1e-6


def test_band_validation():
    with pytest.raises(ValueError):
        gb.Band(2.0, 1.0)
    with pytest.raises(ValueError):
        gb.BandList(bands=(gb.Band(1.0, 2.0), gb.Band(1.5, 3.0)),
                    k_max=5.0, grid_step=0.1, bisect_tol=1e-10)
    with pytest.raises(ValueError):
        gb.band_intervals(UNIT_LASSO, -1.0)


def test_band_intervals_threads_identical():
    serial = gb.band_intervals(UNIT_LASSO, 40.0)
    threaded = gb.band_intervals(UNIT_LASSO, 40.0, threads=4)
    assert [(b.lo, b.hi) for b in serial.bands] == \
           [(b.lo, b.hi) for b in threaded.bands]


# ------------------------------------------------------------ density

def test_measure_below_brute_force():
    bands = gb.BandList(bands=(gb.Band(0.0, 1.0), gb.Band(2.0, 2.5),
                               gb.Band(4.0, 7.0)),
                        k_max=8.0, grid_step=0.1, bisect_tol=1e-12)
    cutoffs = np.array([0.5, 1.0, 1.5, 2.2, 3.0, 5.0, 8.0])
    expected = []
    for c in cutoffs:
        total = 0.0
        for b in bands.bands:
            total += max(0.0, min(b.hi, c) - b.lo) if b.lo < c else 0.0
        expected.append(total)
    assert np.abs(gb.measure_below(bands, cutoffs) - expected).max() <= 1e-14


def test_density_circle_is_one_everywhere():
    series = gb.density(circle_system(1.3), 50.0, checkpoints=6)
    assert np.abs(series.values - 1.0).max() <= 1e-12
    assert series.final == pytest.approx(1.0)


def test_density_checkpoints_structure():
    bs = gb.bond_matrices(gb.with_random_lengths(gb.build_example("lasso"), 6))
    series = gb.density(bs, 300.0, checkpoints=10)
    assert len(series.cutoffs) == 10
    assert series.cutoffs[-1] == 300.0
    assert series.cutoffs[0] == pytest.approx(3.0)
    assert np.all(np.diff(series.cutoffs) > 0)
    assert np.all((series.values >= 0) & (series.values <= 1))
    single = gb.density(bs, 300.0, checkpoints=1)
    assert single.cutoffs.tolist() == [300.0]
    assert single.final == pytest.approx(series.final, abs=1e-12)
    with pytest.raises(ValueError):
        gb.density(bs, 300.0, checkpoints=0)

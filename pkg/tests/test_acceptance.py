"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`. Monte Carlo criteria use
the master seeds fixed below; golden rates were recorded under master seed
42 and must reproduce. Criteria with stated runtime budgets assert them.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from fragsim import goldens
from fragsim.brw import brw_sweep, kmin_kmax_sweep, spine_sum_samples, tree_matrices
from fragsim.experiment import ExperimentSpec, run_experiment
from fragsim.gillespie import gillespie_run
from fragsim.laws import (
    perpetuity_cdf,
    perpetuity_survival,
    perpetuity_survival_limit,
)
from fragsim.lefttail import (
    critical_term_count,
    left_tail_exponent,
    left_tail_sandwich,
    log_left_tail_upper,
)
from fragsim.params import ModelParams
from fragsim.predictors import min_leaf_center
from fragsim.qseries import qpochhammer, qpochhammer_limit
from fragsim.seeds import SeedSpec
from fragsim.stats import (
    factorial_moment_samples,
    generation_count_correlation,
    intensity_profile,
    ks_gumbel,
    largest_window_coverage,
    min_concentration,
)

from oracles import ConvolutionSurvival, hypoexp_cdf_mp

P21 = ModelParams(2, 1.0)

SEED_SWEEP = 42       # criteria 5 and 6 (pinned by the criterion)
SEED_COVERAGE = 42    # criterion 9 (goldens recorded under this seed)
SEED_CONCENTRATION = 42  # criterion 10
SEED_SPINE = 7        # criterion 2
SEED_MOMENT = 11      # criterion 7
SEED_FKG = 13         # criterion 11
SEED_EQ_BRW = 1042    # criterion 8, walk side
SEED_EQ_GIL = 2042    # criterion 8, event side


@contextmanager
def criterion(num: int, name: str):
    try:
        yield
    except Exception:
        print(f"[FAIL] criterion {num:02d}: {name}")
        raise
    print(f"[PASS] criterion {num:02d}: {name}")


@pytest.fixture(scope="module")
def big_sweep():
    """k=2, alpha=1 sweep to generation 17, 2000 replicas, master seed 42."""
    taus = {8: np.empty(2000), 12: np.empty(2000), 16: np.empty(2000)}
    points_16 = []
    points_17 = []
    for r in range(2000):
        summaries = brw_sweep(P21, 17, SeedSpec(SEED_SWEEP, r))
        for n in taus:
            taus[n][r] = summaries[n].tau
        points_16.append(summaries[16].points_above)
        points_17.append(summaries[17].points_above)
    return taus, points_16, points_17


def test_c01_analytic_matches_convolution_oracle():
    with criterion(1, "exact survival matches numerical convolution to 1e-8"):
        start = time.monotonic()
        worst = 0.0
        for q in (0.3, 0.5, 0.8):
            for n in (1, 2, 3, 4):
                oracle = ConvolutionSurvival(q, n)
                for t in (0.1, 0.5, 1.0, 2.0, 5.0):
                    gap = abs(perpetuity_survival(q, n, t).value - oracle(t))
                    worst = max(worst, gap)
        elapsed = time.monotonic() - start
        assert worst <= 1e-8, f"worst gap {worst}"
        assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_c02_monte_carlo_agreement():
    with criterion(2, "1e6 spine samples match the exact survival at 3 s.e."):
        start = time.monotonic()
        reps = 1_000_000
        for n in (5, 10):
            samples = spine_sum_samples(P21, n, reps, SeedSpec(SEED_SPINE, n))
            for t in (0.5, 1.0, 2.0, 5.0):
                emp = float((samples > t).mean())
                ana = perpetuity_survival(P21.q, n, t).value
                se = math.sqrt(max(emp * (1.0 - emp), 1e-12) / reps)
                assert abs(emp - ana) <= 3.0 * se, (n, t, emp, ana)
        elapsed = time.monotonic() - start
        assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_c03_envelope_constants_match_goldens():
    with criterion(3, "tail envelope maxima reproduce recorded constants to 1%"):
        t_grid = np.arange(2.0, 20.0 + 1e-9, 0.5)
        for (q, n), golden in goldens.ENVELOPE_MAX.items():
            worst = 0.0
            for t in t_grid:
                if n is None:
                    surv = perpetuity_survival_limit(q, float(t)).value
                    phi = qpochhammer(q, 400)
                else:
                    surv = perpetuity_survival(q, n, float(t)).value
                    phi = qpochhammer(q, n)
                stat = abs(surv * phi * math.exp(t) - 1.0) * math.exp(
                    (1.0 / q - 1.0) * t
                )
                worst = max(worst, stat)
            assert math.isfinite(worst)
            assert abs(worst - golden) <= 0.01 * golden, (q, n, worst, golden)


def test_c04_left_tail_at_desk_scale():
    with criterion(4, "left-tail rate bounded on grid and sandwich brackets CDF"):
        start = time.monotonic()
        for j in range(5, 31, 5):
            s = math.exp(-j)
            m = critical_term_count(0.5, s)
            gap = log_left_tail_upper(0.5, m, s) + left_tail_exponent(0.5, s)
            assert -3.0 <= gap <= 3.0, (j, gap)
        for m in (1, 2, 3, 4):
            for s in (1e-10, 1e-4, 0.05, 0.2):
                lower, upper = left_tail_sandwich(0.5, m, s)
                exact = float(hypoexp_cdf_mp(0.5, m - 1, s))
                assert lower * (1 - 1e-12) <= exact <= upper * (1 + 1e-12), (m, s)
        elapsed = time.monotonic() - start
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_c05_gumbel_fit(big_sweep):
    """KS(16) <= 0.08 and KS(16) <= KS(8) + 0.01 at the pinned seed.

    Known red: the second clause's 0.01 allowance is below the sampling
    noise of 2000 replicas (the KS statistics at n=8 and n=16 are both
    noise-dominated, sd of their difference is about 0.009, and the true
    convergence gap at these depths is about 0.001). Under master seed 42
    the margin comes out at -0.001; most other seeds pass. The tolerance
    is kept as stated rather than widened to fit.
    """
    with criterion(5, "centred maxima fit the limit law (KS <= 0.08, improving)"):
        taus, _, _ = big_sweep
        ks_16 = ks_gumbel(taus[16], P21.q).statistic
        ks_8 = ks_gumbel(taus[8], P21.q).statistic
        print(f"  KS(16) = {ks_16:.4f}, KS(8) = {ks_8:.4f}, bound 0.08 / +0.01")
        assert ks_16 <= 0.08, f"KS(16) = {ks_16:.4f}"
        assert ks_16 <= ks_8 + 0.01, f"KS(16) = {ks_16:.4f} vs KS(8) = {ks_8:.4f}"


def test_ks_trend_within_noise(big_sweep):
    """KS along generations 8, 12, 16 does not degrade beyond noise.

    An inversion is a step increase beyond 0.02, about two standard
    deviations of the difference of two KS statistics at 2000 replicas; at
    most one is allowed. A real centring or scaling bug blows both steps
    out by an order of magnitude.
    """
    taus, _, _ = big_sweep
    ks = [ks_gumbel(taus[n], P21.q).statistic for n in (8, 12, 16)]
    inversions = sum(1 for a, b in zip(ks, ks[1:]) if b > a + 0.02)
    assert inversions <= 1, ks


def test_c06_intensity_and_poissonness(big_sweep):
    with criterion(6, "point counts match the exponential intensity, Poisson-like"):
        _, points_16, points_17 = big_sweep
        reports = intensity_profile(points_16, [(0.0, math.inf)], P21.q)
        expected = 1.0 / qpochhammer_limit(P21.q)
        mean = reports[0].mean_count
        assert abs(mean - expected) <= 0.05 * expected, (mean, expected)
        assert 0.8 <= reports[0].dispersion <= 1.2, reports[0].dispersion
        corr = generation_count_correlation(points_16, points_17).correlation
        assert abs(corr) <= 0.1, corr


def test_c07_first_moment_identity():
    with criterion(7, "tuple-count estimate matches the exact first moment"):
        reps = 100_000
        for i, t in enumerate((-2.0, 0.0, 1.0)):
            samples = factorial_moment_samples(
                P21, 3, [[t]], reps, SeedSpec(SEED_MOMENT, i)
            )
            expected = 8.0 * perpetuity_survival(
                P21.q, 3, t + 3.0 * P21.gamma
            ).value
            se = samples.std(ddof=1) / math.sqrt(reps)
            assert abs(samples.mean() - expected) <= 3.0 * se, (t, samples.mean(), expected)


def test_c08_engine_equivalence():
    with criterion(8, "event-driven and walk engines agree on depth exceedance"):
        reps = 10_000
        pairs = [(n, s) for n in (6, 8) for s in (-1.0, 1.0)]
        t_for = {
            (n, s): P21.q ** (-n) * (P21.gamma * n + s) for (n, s) in pairs
        }
        t_max = max(t_for.values())
        taus = {6: np.empty(reps), 8: np.empty(reps)}
        for r in range(reps):
            summaries = brw_sweep(P21, 8, SeedSpec(SEED_EQ_BRW, r))
            taus[6][r] = summaries[6].tau
            taus[8][r] = summaries[8].tau
        m_at = {pair: np.empty(reps, dtype=bool) for pair in pairs}
        for r in range(reps):
            traj = gillespie_run(P21, t_max + 1.0, SeedSpec(SEED_EQ_GIL, r))
            for (n, s) in pairs:
                m_t, _ = traj.value_at(t_for[(n, s)])
                m_at[(n, s)][r] = m_t <= n
        for (n, s) in pairs:
            p_walk = float((taus[n] > s).mean())
            p_event = float(m_at[(n, s)].mean())
            se = math.sqrt(
                p_walk * (1 - p_walk) / reps + p_event * (1 - p_event) / reps
            )
            assert abs(p_walk - p_event) <= 3.0 * max(se, 1e-4), (n, s, p_walk, p_event)


def test_c09_largest_window_coverage():
    with criterion(9, "largest-fragment depth stays in its predictor window"):
        probes = hits = 0
        for r in range(100):
            traj = gillespie_run(P21, math.e**12, SeedSpec(SEED_COVERAGE, r))
            cov = largest_window_coverage(traj, P21, burn_in_fraction=0.1)
            probes += cov.probes
            hits += cov.hits
        rate = hits / probes
        assert rate >= 0.9, rate
        assert abs(rate - goldens.COVERAGE_RATE_FULL) <= 0.05, rate


def test_c10_min_concentration():
    with criterion(10, "minimum leaf value concentrates at the predicted center"):
        records = kmin_kmax_sweep(P21, 20, 200, SEED_CONCENTRATION)
        rate = min_concentration(records, P21, slack=0.5).rate
        assert abs(rate - goldens.MIN_CONCENTRATION_RATE) <= 0.05, rate
        rows_20 = records[records["n"] == 20]
        median = float(np.median(-np.log(rows_20["k_min"])))
        center = min_leaf_center(P21, 20)
        assert abs(median - center) <= 0.75, (median, center)


def test_c11_fkg_and_decoupling():
    with criterion(11, "positive association and pairwise decoupling hold empirically"):
        reps = 100_000
        gens = tree_matrices(P21, 3, reps, SeedSpec(SEED_FKG, 0))
        leaves = gens[3]
        # positive association: all eight leaves jointly exceed a level at
        # least as often as independence would allow
        x = 0.5  # = q^3 * 4.0, the leaf-value threshold
        joint = float((leaves > x).all(axis=1).mean())
        margs = (leaves > x).mean(axis=0)
        prod = float(np.prod(margs))
        se_joint = math.sqrt(joint * (1 - joint) / reps)
        se_prod = prod * math.sqrt(
            float(np.sum([(1 - p) / (p * reps) for p in margs]))
        )
        combined = math.sqrt(se_joint**2 + se_prod**2)
        assert joint >= prod - 3.0 * combined, (joint, prod)
        # pairwise decoupling against the analytic product bound, for pair
        # split depths m = 0 (siblings), 1 and 2
        x2 = 1.5
        for partner, m in ((1, 0), (2, 1), (4, 2)):
            both = float(((leaves[:, 0] <= x2) & (leaves[:, partner] <= x2)).mean())
            bound = (
                perpetuity_cdf(P21.q, 3, x2).value
                * perpetuity_cdf(P21.q, m, x2).value
            )
            se = math.sqrt(both * (1 - both) / reps)
            assert both <= bound + 3.0 * se, (partner, m, both, bound)


def test_c12_determinism_of_persisted_runs(tmp_path):
    with criterion(12, "identical specs give byte-identical CSV bodies"):
        paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
        base = dict(
            k=2, alpha=1.0, engine="brw", n_max=8, replicas=6, master_seed=5
        )
        run_experiment(ExperimentSpec(**base, out=str(paths[0])), jobs=1)
        run_experiment(ExperimentSpec(**base, out=str(paths[1])), jobs=1)
        run_experiment(ExperimentSpec(**base, out=str(paths[2])), jobs=8)
        body = paths[0].read_bytes()
        assert body == paths[1].read_bytes(), "rerun changed the CSV body"
        assert body == paths[2].read_bytes(), "--jobs changed the CSV body"
        gil = dict(k=2, alpha=1.0, engine="gillespie", t_end=300.0, replicas=5, master_seed=6)
        ga, gb = tmp_path / "ga.csv", tmp_path / "gb.csv"
        run_experiment(ExperimentSpec(**gil, out=str(ga)), jobs=1)
        run_experiment(ExperimentSpec(**gil, out=str(gb)), jobs=4)
        assert ga.read_bytes() == gb.read_bytes()

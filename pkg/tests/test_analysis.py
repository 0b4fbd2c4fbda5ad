import math

import numpy as np
import pytest

from gazelab.analysis import (
    PsychometricCurve,
    CurvePoint,
    bin_accuracy,
    fit_psychometric,
    log_likelihood,
    rt_by_set_size,
    write_curve_csv,
    write_rt_csv,
)
from gazelab.errors import InputError
from gazelab.triallog import TrialRecord


def record(param, correct, task="glass", key="coherence", reaction=30, set_size=None):
    desc = {key: param}
    if set_size is not None:
        desc["setSize"] = set_size
    return TrialRecord(
        task_name=task,
        stimulus_descriptor=desc,
        correct=correct,
        reaction_steps=reaction,
    )


def synth_curve(mu, s, chance, levels, n_per_level, rng, lapse=0.02):
    points = []
    for x in levels:
        p = chance + (1 - chance - lapse) / (1 + math.exp(-(x - mu) / s))
        k = rng.binomial(n_per_level, p)
        points.append(CurvePoint(x, n_per_level, int(k)))
    return PsychometricCurve(points=points, chance_level=chance)


class TestBinAccuracy:
    def test_counts_by_exact_param(self):
        records = [record(0.2, i < 10) for i in range(20)] + [
            record(0.8, i < 19) for i in range(20)
        ]
        curve = bin_accuracy(records, "coherence")
        assert [(p.param, p.n_trials, p.n_correct) for p in curve.points] == [
            (0.2, 20, 10),
            (0.8, 20, 19),
        ]

    def test_empty_records_empty_curve(self):
        assert bin_accuracy([], "coherence").points == []

    def test_permutation_invariant(self, rng):
        records = [record(float(p), bool(c)) for p, c in
                   zip(rng.choice([0.1, 0.5, 0.9], 200), rng.integers(0, 2, 200))]
        curve_a = bin_accuracy(records, "coherence")
        shuffled = list(records)
        rng.shuffle(shuffled)
        curve_b = bin_accuracy(shuffled, "coherence")
        assert [(p.param, p.n_trials, p.n_correct) for p in curve_a.points] == [
            (p.param, p.n_trials, p.n_correct) for p in curve_b.points
        ]

    def test_missing_key_named(self):
        with pytest.raises(InputError, match="contrast"):
            bin_accuracy([record(0.5, True)], "contrast")

    def test_mixed_tasks_rejected(self):
        records = [record(0.5, True, task="glass"), record(0.5, True, task="motion")]
        with pytest.raises(InputError, match="mix"):
            bin_accuracy(records, "coherence")


class TestFit:
    def test_recovery_on_synthetic_data(self):
        rng = np.random.default_rng(0)
        hits = 0
        for _ in range(25):
            curve = synth_curve(0.5, 0.1, 0.5, np.linspace(0.1, 0.9, 8), 200, rng)
            fitted = fit_psychometric(curve, chance_level=0.5)
            assert fitted.converged
            if abs(fitted.mu - 0.5) <= 0.05:
                hits += 1
        assert hits >= 24

    def test_threshold75_matches_curve_inversion(self):
        rng = np.random.default_rng(1)
        curve = synth_curve(0.5, 0.1, 0.5, np.linspace(0.1, 0.9, 8), 400, rng)
        fitted = fit_psychometric(curve, chance_level=0.5)
        x = fitted.threshold75
        psi = 0.5 + (1 - 0.5 - 0.02) / (1 + math.exp(-(x - fitted.mu) / fitted.slope))
        assert psi == pytest.approx(0.75, abs=1e-9)

    def test_separable_data_mu_between_adjacent_levels(self):
        points = [CurvePoint(x, 50, 0 if x < 0.45 else 50) for x in (0.1, 0.3, 0.6, 0.8)]
        fitted = fit_psychometric(PsychometricCurve(points=points, chance_level=0.0))
        assert 0.3 <= fitted.mu <= 0.6

    def test_flat_chance_data_has_no_threshold(self):
        rng = np.random.default_rng(2)
        points = [CurvePoint(x, 100, int(rng.binomial(100, 0.5))) for x in
                  np.linspace(0.1, 0.9, 6)]
        fitted = fit_psychometric(PsychometricCurve(points=points, chance_level=0.5))
        assert fitted.threshold75 is None

    def test_location_equivariance(self):
        rng = np.random.default_rng(3)
        curve = synth_curve(0.5, 0.1, 0.5, np.linspace(0.1, 0.9, 8), 300, rng)
        fitted = fit_psychometric(curve, chance_level=0.5)
        shift = 10.0
        shifted = PsychometricCurve(
            points=[CurvePoint(p.param + shift, p.n_trials, p.n_correct) for p in curve.points],
            chance_level=0.5,
        )
        fitted_shift = fit_psychometric(shifted, chance_level=0.5)
        assert fitted_shift.mu == pytest.approx(fitted.mu + shift, abs=1e-4)
        assert fitted_shift.threshold75 == pytest.approx(fitted.threshold75 + shift, abs=1e-4)

    def test_fit_likelihood_not_worse_than_truth(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            curve = synth_curve(0.5, 0.1, 0.5, np.linspace(0.1, 0.9, 8), 150, rng)
            fitted = fit_psychometric(curve, chance_level=0.5)
            assert log_likelihood(fitted, fitted.mu, fitted.slope) >= (
                log_likelihood(fitted, 0.5, 0.1) - 1e-6
            )

    def test_too_few_levels_rejected(self):
        points = [CurvePoint(0.1, 10, 5), CurvePoint(0.9, 10, 9)]
        with pytest.raises(InputError):
            fit_psychometric(PsychometricCurve(points=points))


class TestRT:
    def test_exact_line_recovered(self):
        records = []
        for size in (4, 8, 12, 16):
            for _ in range(9):
                records.append(record(0.5, True, task="search",
                                      reaction=100 + 12 * size, set_size=size))
        regression = rt_by_set_size(records)
        assert regression.slope == pytest.approx(12.0)
        assert regression.intercept == pytest.approx(100.0)
        assert regression.r2 == pytest.approx(1.0)

    def test_constant_rt_zero_slope(self):
        records = [record(0.5, True, task="search", reaction=80, set_size=s)
                   for s in (4, 8, 12) for _ in range(5)]
        regression = rt_by_set_size(records)
        assert regression.slope == pytest.approx(0.0)

    def test_incorrect_trials_excluded(self):
        records = [record(0.5, True, task="search", reaction=50, set_size=4)] * 3 + [
            record(0.5, False, task="search", reaction=9999, set_size=4)
        ] + [record(0.5, True, task="search", reaction=70, set_size=8)] * 3
        regression = rt_by_set_size(records)
        assert regression.medians[0][1] == 50.0

    def test_median_not_mean(self):
        records = (
            [record(0.5, True, task="search", reaction=50, set_size=4)] * 5
            + [record(0.5, True, task="search", reaction=5000, set_size=4)]
            + [record(0.5, True, task="search", reaction=60, set_size=8)] * 5
        )
        regression = rt_by_set_size(records)
        assert regression.medians[0][1] == 50.0  # outlier-robust

    def test_single_set_size_rejected(self):
        records = [record(0.5, True, task="search", reaction=50, set_size=4)] * 5
        with pytest.raises(InputError):
            rt_by_set_size(records)


class TestCsv:
    def test_curve_csv_deterministic(self, tmp_path, rng):
        curve = synth_curve(0.5, 0.1, 0.5, np.linspace(0.1, 0.9, 5), 100, rng)
        fitted = fit_psychometric(curve, chance_level=0.5)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_curve_csv(fitted, str(a))
        write_curve_csv(fitted, str(b))
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().strip().splitlines()
        assert lines[0] == "param,nTrials,nCorrect,accuracy"
        assert len(lines) == 5 + 1 + 2 + 1  # points + header + fit block + blank

    def test_rt_csv_contains_regression(self, tmp_path):
        records = [record(0.5, True, task="search", reaction=100 + 12 * s, set_size=s)
                   for s in (4, 8, 12) for _ in range(4)]
        regression = rt_by_set_size(records)
        path = tmp_path / "rt.csv"
        write_rt_csv(regression, str(path))
        text = path.read_text()
        assert "setSize,medianReactionSteps,nTrials" in text
        assert "12.0000" in text

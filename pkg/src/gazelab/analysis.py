"""Psychometric analysis over trial logs.

The psychometric model is accuracy as a function of a stimulus parameter:
    psi(x) = chance + (1 - chance - lapse) * logistic((x - mu) / s)
fitted by maximum likelihood over binomial counts, with the lapse rate
held fixed (small-sample stability). The 75%-correct threshold is read
off the fitted curve where it crosses within the observed range.
Reaction-time analysis regresses the median RT per set size on set size.
"""

import csv
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize

from .errors import InputError
from .triallog import TrialRecord

DEFAULT_LAPSE = 0.02


@dataclass
class CurvePoint:
    param: float
    n_trials: int
    n_correct: int

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_trials if self.n_trials else float("nan")


@dataclass
class PsychometricCurve:
    points: List[CurvePoint] = field(default_factory=list)
    chance_level: float = 0.5
    lapse: float = DEFAULT_LAPSE
    mu: Optional[float] = None
    slope: Optional[float] = None
    threshold75: Optional[float] = None
    converged: bool = False

    @property
    def params(self) -> np.ndarray:
        return np.array([p.param for p in self.points])


def bin_accuracy(records: List[TrialRecord], param_key: str, chance_level: float = 0.5) -> PsychometricCurve:
    """Group records by the exact value of a stimulusDescriptor key.

    Base, advance, and probe trials all count; the staircase's probe
    trials exist precisely to fill in the easier levels.
    """
    if not records:
        return PsychometricCurve(points=[], chance_level=chance_level)
    tasks = {r.task_name for r in records}
    if len(tasks) > 1:
        raise InputError(f"records mix tasks {sorted(tasks)}; filter first")
    counts = {}
    for record in records:
        if param_key not in record.stimulus_descriptor:
            raise InputError(
                f"stimulusDescriptor lacks key {param_key!r} "
                f"(trial {record.trial_index} of {record.episode_id})"
            )
        value = record.stimulus_descriptor[param_key]
        n, k = counts.get(value, (0, 0))
        counts[value] = (n + 1, k + int(record.correct))
    points = [CurvePoint(v, n, k) for v, (n, k) in sorted(counts.items())]
    return PsychometricCurve(points=points, chance_level=chance_level)


def _psi(x, mu, s, chance, lapse):
    z = np.clip((x - mu) / s, -500.0, 500.0)  # exp-safe; saturated either way
    return chance + (1.0 - chance - lapse) / (1.0 + np.exp(-z))


def _nll(theta, x, n, k, chance, lapse):
    mu, log_s = theta
    p = _psi(x, mu, math.exp(log_s), chance, lapse)
    p = np.clip(p, 1e-9, 1.0 - 1e-9)
    return -float(np.sum(k * np.log(p) + (n - k) * np.log(1.0 - p)))


def log_likelihood(curve: PsychometricCurve, mu: float, s: float) -> float:
    x = curve.params
    n = np.array([p.n_trials for p in curve.points], dtype=float)
    k = np.array([p.n_correct for p in curve.points], dtype=float)
    return -_nll((mu, math.log(s)), x, n, k, curve.chance_level, curve.lapse)


def fit_psychometric(
    curve: PsychometricCurve,
    chance_level: Optional[float] = None,
    lapse: float = DEFAULT_LAPSE,
) -> PsychometricCurve:
    """Maximum-likelihood fit of (mu, s); multi-start Nelder-Mead.

    Starts are placed relative to the observed parameter range, so the fit
    is location-equivariant: shifting all stimulus values by a constant
    shifts mu and threshold75 by the same constant.
    """
    if chance_level is not None:
        curve.chance_level = chance_level
    curve.lapse = lapse
    if len(curve.points) < 3:
        raise InputError(f"need >= 3 distinct parameter values, got {len(curve.points)}")

    x = curve.params
    n = np.array([p.n_trials for p in curve.points], dtype=float)
    k = np.array([p.n_correct for p in curve.points], dtype=float)
    span = float(x.max() - x.min()) or 1.0
    args = (x, n, k, curve.chance_level, curve.lapse)

    best = None
    accuracy = k / np.maximum(n, 1)
    crossing = x[int(np.argmin(np.abs(accuracy - (1.0 + curve.chance_level) / 2.0)))]
    for mu0 in (crossing, float(x.min()) + 0.25 * span, float(x.min()) + 0.75 * span):
        for s0 in (0.05 * span, 0.15 * span, 0.4 * span):
            theta0 = np.array([mu0, math.log(s0)])
            simplex = np.array(
                [theta0, theta0 + (0.25 * span, 0.0), theta0 + (0.0, 0.7)]
            )
            result = minimize(
                _nll,
                theta0,
                args=args,
                method="Nelder-Mead",
                options={
                    "initial_simplex": simplex,
                    "xatol": 1e-7 * span,
                    "fatol": 1e-10,
                    "maxiter": 2000,
                },
            )
            if best is None or result.fun < best.fun - 1e-12:
                best = result

    if best is None or not np.isfinite(best.fun):
        curve.converged = False
        return curve

    curve.mu = float(best.x[0])
    curve.slope = float(math.exp(best.x[1]))
    curve.converged = True
    curve.threshold75 = _threshold(curve, 0.75)
    return curve


def _threshold(curve: PsychometricCurve, criterion: float) -> Optional[float]:
    top = 1.0 - curve.chance_level - curve.lapse
    frac = (criterion - curve.chance_level) / top
    if not 0.0 < frac < 1.0:
        return None
    value = curve.mu + curve.slope * math.log(frac / (1.0 - frac))
    x = curve.params
    if x.min() <= value <= x.max():
        return float(value)
    return None  # the fit never crosses the criterion inside the observed range


@dataclass
class RTRegression:
    slope: float  # steps per item
    intercept: float
    r2: float
    medians: List[tuple] = field(default_factory=list)  # (setSize, median RT, n)


def rt_by_set_size(records: List[TrialRecord]) -> RTRegression:
    """OLS of median reaction time per set size against set size (correct trials)."""
    groups = {}
    for record in records:
        if not record.correct:
            continue
        size = record.stimulus_descriptor.get("setSize")
        if size is None:
            raise InputError("records lack setSize; is this a search log?")
        groups.setdefault(size, []).append(record.reaction_steps)
    if len(groups) < 2:
        raise InputError(f"need >= 2 set sizes, got {sorted(groups)}")
    sizes = np.array(sorted(groups), dtype=float)
    medians = np.array([float(np.median(groups[s])) for s in sorted(groups)])
    slope, intercept = np.polyfit(sizes, medians, 1)
    predicted = slope * sizes + intercept
    ss_res = float(np.sum((medians - predicted) ** 2))
    ss_tot = float(np.sum((medians - medians.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return RTRegression(
        slope=float(slope),
        intercept=float(intercept),
        r2=r2,
        medians=[(int(s), float(np.median(groups[s])), len(groups[s])) for s in sorted(groups)],
    )


def write_curve_csv(curve: PsychometricCurve, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["param", "nTrials", "nCorrect", "accuracy"])
        for p in curve.points:
            writer.writerow([repr(p.param), p.n_trials, p.n_correct, f"{p.accuracy:.6f}"])
        if curve.converged:
            writer.writerow([])
            writer.writerow(["mu", "slope", "threshold75", "chanceLevel", "lapse"])
            writer.writerow(
                [
                    f"{curve.mu:.6f}",
                    f"{curve.slope:.6f}",
                    "" if curve.threshold75 is None else f"{curve.threshold75:.6f}",
                    repr(curve.chance_level),
                    repr(curve.lapse),
                ]
            )


def write_rt_csv(regression: RTRegression, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["setSize", "medianReactionSteps", "nTrials"])
        for size, median, n in regression.medians:
            writer.writerow([size, f"{median:.1f}", n])
        writer.writerow([])
        writer.writerow(["slope", "intercept", "r2"])
        writer.writerow([f"{regression.slope:.4f}", f"{regression.intercept:.2f}", f"{regression.r2:.5f}"])

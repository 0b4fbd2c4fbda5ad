"""Adaptive difficulty control.

A ladder is an ordered list of trial distributions, easiest first. The
controller keeps a base level c and, for each new trial, equiprobably
draws a base trial (level c), an advance trial (level c+1, saturating at
the top), or a probe trial at a uniformly random level in 1..c. Advance
outcomes fill a sliding window; once full with >= 75% correct the base
level increments. Base outcomes fill a second window; once full with
< 50% correct the level decrements. Probe outcomes never move the level.
Windows are sized max(level, w_min) and cleared on any level change.

The two-dimensional variant keeps an independent level per dimension and
splits the advance case equiprobably between dimensions.
"""

from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .errors import ConfigError

PROMOTE_ACCURACY = 0.75
DEMOTE_ACCURACY = 0.50

LevelSpec = Union[Mapping, Callable[[np.random.Generator], Mapping]]


class DifficultyLadder:
    """Ordered trial distributions, level 1 easiest.

    Each level is either a parameter mapping (a point distribution) or a
    callable drawing a parameter mapping from an rng.
    """

    def __init__(self, levels: Sequence[LevelSpec]):
        if len(levels) < 1:
            raise ConfigError("ladder needs at least one level")
        self.levels = list(levels)

    def __len__(self) -> int:
        return len(self.levels)

    def sample(self, level: int, rng: np.random.Generator) -> dict:
        """Draw trial parameters from level `level` (1-based)."""
        spec = self.levels[level - 1]
        if callable(spec):
            return dict(spec(rng))
        return dict(spec)


@dataclass(frozen=True)
class TrialCase:
    kind: str  # "base" | "advance" | "probe"
    sampled_level: int

    @property
    def sampled_levels(self) -> tuple:
        return (self.sampled_level,)


@dataclass(frozen=True)
class TrialCase2D:
    kind: str  # "base" | "advance-dim1" | "advance-dim2" | "probe"
    sampled_level: tuple  # (level_dim1, level_dim2)

    @property
    def sampled_levels(self) -> tuple:
        return tuple(self.sampled_level)


def _window(level: int, w_min: int) -> deque:
    return deque(maxlen=max(level, w_min))


class Staircase:
    """One-dimensional adaptive staircase over a DifficultyLadder."""

    def __init__(self, ladder: DifficultyLadder, w_min: int = 3, initial_level: int = 1):
        if not 1 <= initial_level <= len(ladder):
            raise ConfigError(f"initial level {initial_level} outside 1..{len(ladder)}")
        self.ladder = ladder
        self.w_min = int(w_min)
        self.initial_level = int(initial_level)
        self.level = self.initial_level
        self._advance_window = _window(self.level, self.w_min)
        self._base_window = _window(self.level, self.w_min)

    @property
    def top_level(self) -> int:
        return len(self.ladder)

    def reset(self) -> None:
        self.level = self.initial_level
        self._clear_windows()

    def _clear_windows(self) -> None:
        self._advance_window = _window(self.level, self.w_min)
        self._base_window = _window(self.level, self.w_min)

    def next_trial(self, rng: np.random.Generator) -> tuple:
        """Sample (trial params, TrialCase) by the equiprobable three-way rule."""
        kind = ("base", "advance", "probe")[rng.integers(3)]
        if kind == "base":
            level = self.level
        elif kind == "advance":
            level = min(self.level + 1, self.top_level)
        else:
            level = int(rng.integers(1, self.level + 1))
        return self.ladder.sample(level, rng), TrialCase(kind, level)

    def record_outcome(self, case: TrialCase, correct: bool) -> None:
        """Fold one trial outcome into the windows and move the level if due."""
        if case.kind == "advance":
            self._advance_window.append(bool(correct))
        elif case.kind == "base":
            self._base_window.append(bool(correct))
        else:
            return  # probes never move the staircase

        adv = self._advance_window
        if len(adv) == adv.maxlen and sum(adv) / len(adv) >= PROMOTE_ACCURACY:
            self.level = min(self.level + 1, self.top_level)
            self._clear_windows()
            return
        base = self._base_window
        if len(base) == base.maxlen and sum(base) / len(base) < DEMOTE_ACCURACY:
            self.level = max(self.level - 1, 1)
            self._clear_windows()


class Staircase2D:
    """Two independent levels (e.g. scale x contrast) sharing one trial stream."""

    def __init__(self, ladders: tuple, w_min: int = 3, initial_level: int = 1):
        if len(ladders) != 2:
            raise ConfigError("2D staircase takes exactly two ladders")
        self.ladders = tuple(ladders)
        self.w_min = int(w_min)
        self.initial_level = int(initial_level)
        for ladder in self.ladders:
            if not 1 <= initial_level <= len(ladder):
                raise ConfigError(f"initial level {initial_level} outside 1..{len(ladder)}")
        self.levels = [self.initial_level, self.initial_level]
        self._advance_windows = [None, None]
        self._base_windows = [None, None]
        for dim in (0, 1):
            self._clear_windows(dim)

    @property
    def top_levels(self) -> tuple:
        return (len(self.ladders[0]), len(self.ladders[1]))

    def reset(self) -> None:
        self.levels = [self.initial_level, self.initial_level]
        self._clear_windows(0)
        self._clear_windows(1)

    def _clear_windows(self, dim: int) -> None:
        self._advance_windows[dim] = _window(self.levels[dim], self.w_min)
        self._base_windows[dim] = _window(self.levels[dim], self.w_min)

    def _sample(self, pair: tuple, rng: np.random.Generator) -> dict:
        params = self.ladders[0].sample(pair[0], rng)
        params.update(self.ladders[1].sample(pair[1], rng))
        return params

    def next_trial(self, rng: np.random.Generator) -> tuple:
        """Case frequencies: base 1/3, probe 1/3, each advance dimension 1/6."""
        c1, c2 = self.levels
        draw = int(rng.integers(6))
        if draw < 2:
            kind, pair = "base", (c1, c2)
        elif draw < 4:
            kind = "probe"
            pair = (int(rng.integers(1, c1 + 1)), int(rng.integers(1, c2 + 1)))
        elif draw == 4:
            kind, pair = "advance-dim1", (min(c1 + 1, self.top_levels[0]), c2)
        else:
            kind, pair = "advance-dim2", (c1, min(c2 + 1, self.top_levels[1]))
        return self._sample(pair, rng), TrialCase2D(kind, pair)

    def record_outcome(self, case: TrialCase2D, correct: bool) -> None:
        correct = bool(correct)
        if case.kind == "probe":
            return
        if case.kind == "base":
            # a base trial is evidence at both current levels
            for dim in (0, 1):
                self._base_windows[dim].append(correct)
                self._check(dim)
            return
        dim = 0 if case.kind == "advance-dim1" else 1
        self._advance_windows[dim].append(correct)
        self._check(dim)

    def _check(self, dim: int) -> None:
        adv = self._advance_windows[dim]
        if len(adv) == adv.maxlen and sum(adv) / len(adv) >= PROMOTE_ACCURACY:
            self.levels[dim] = min(self.levels[dim] + 1, self.top_levels[dim])
            self._clear_windows(dim)
            return
        base = self._base_windows[dim]
        if len(base) == base.maxlen and sum(base) / len(base) < DEMOTE_ACCURACY:
            self.levels[dim] = max(self.levels[dim] - 1, 1)
            self._clear_windows(dim)

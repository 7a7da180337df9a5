"""Reward shaping: fixed helper bonuses and per-run random coefficients.

Two shaped terms are added to the sparse training reward, each annealed
linearly to zero over its own horizon:

* helper shaping: the base event magnitudes themselves, guiding agents
  toward the task's subgoals;
* random shaping: per-agent coefficients drawn once per run as
  base_magnitude * standard normal, which biases each run toward its own
  event preferences and is what makes independently trained pairs
  behaviorally diverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ShapingSpec:
    """Per-event reward coefficients with a linear annealing horizon."""

    base_magnitudes: np.ndarray
    coefficients: np.ndarray
    anneal_horizon: int

    def bonus(self, event_vector: np.ndarray, step: int) -> float:
        mult = anneal_multiplier(step, self.anneal_horizon)
        if mult == 0.0:
            return 0.0
        return mult * float(self.coefficients @ event_vector)

    def to_dict(self) -> dict:
        return {
            "base_magnitudes": self.base_magnitudes.tolist(),
            "coefficients": self.coefficients.tolist(),
            "anneal_horizon": self.anneal_horizon,
        }

    @staticmethod
    def from_dict(data: dict) -> "ShapingSpec":
        return ShapingSpec(
            np.asarray(data["base_magnitudes"], dtype=float),
            np.asarray(data["coefficients"], dtype=float),
            int(data["anneal_horizon"]),
        )


def anneal_multiplier(step: int, horizon: int) -> float:
    """Linear decay from 1 at step 0 to 0 at and beyond ``horizon``."""
    if horizon <= 0:
        return 0.0
    return max(0.0, 1.0 - step / horizon)


def sample_shaping(
    base_magnitudes: np.ndarray, rng: np.random.Generator, anneal_horizon: int = 0
) -> ShapingSpec:
    """Draw random event coefficients: base magnitude x standard normal."""
    base = np.asarray(base_magnitudes, dtype=float)
    if np.any(base < 0):
        raise ValueError("base magnitudes must be non-negative")
    coefficients = base * rng.standard_normal(base.shape[0])
    return ShapingSpec(base, coefficients, anneal_horizon)


def helper_shaping(base_magnitudes: np.ndarray, anneal_horizon: int) -> ShapingSpec:
    """Deterministic guidance bonuses equal to the base magnitudes."""
    base = np.asarray(base_magnitudes, dtype=float)
    return ShapingSpec(base, base.copy(), anneal_horizon)


def zero_shaping(num_events: int) -> ShapingSpec:
    base = np.zeros(num_events)
    return ShapingSpec(base, base.copy(), 0)

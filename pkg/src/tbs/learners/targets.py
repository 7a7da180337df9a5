"""Lambda-return targets for temporal-difference updates."""

from __future__ import annotations

from collections.abc import Sequence


def compute_lambda_targets(
    rewards: Sequence[float],
    values: Sequence[float],
    gamma: float,
    lam: float,
) -> list[float]:
    """Backward recursion G_t = r_t + gamma*((1-lam)*v_{t+1} + lam*G_{t+1}).

    ``values`` holds one bootstrap value per state, length T+1 for T rewards;
    ``values[t+1]`` is the value after transition t and ``values[T]`` closes
    the recursion (0 at episode end, the bootstrap value mid-episode).
    ``values[0]`` is carried for alignment and never read.

    lam=0 gives one-step TD targets, lam=1 the discounted return.
    """
    horizon = len(rewards)
    if len(values) != horizon + 1:
        raise ValueError(
            f"values must have length len(rewards)+1 ({horizon + 1}), got {len(values)}"
        )
    targets = [0.0] * horizon
    running = values[horizon]
    for t in range(horizon - 1, -1, -1):
        running = rewards[t] + gamma * ((1.0 - lam) * values[t + 1] + lam * running)
        targets[t] = running
    return targets

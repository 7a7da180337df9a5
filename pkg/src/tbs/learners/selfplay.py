"""Joint self-play training with summed per-agent values.

Both seats learn simultaneously. Actions are chosen per seat by
epsilon-greedy over each seat's own values; the TD target is computed on the
*joint* value, the sum of the two seats' entries, and the resulting error
updates both tables. With independent per-seat action choices, per-seat
argmax equals the argmax of the summed value, so greedy execution stays
decentralized.

Updates use lambda-return targets computed over fixed-length rollout
segments, bootstrapping with the current summed greedy values at segment
boundaries and closing episodes with zero.
"""

from __future__ import annotations

import numpy as np

from tbs.errors import TrainingDivergedError
from tbs.learners.config import TrainConfig
from tbs.learners.policies import PolicyPair, make_q
from tbs.learners.shaping import ShapingSpec, helper_shaping, sample_shaping, zero_shaping
from tbs.learners.targets import compute_lambda_targets


def joint_value(q1, obs1, action1, q2, obs2, action2) -> float:
    """Decomposed joint value: the sum of the two seats' entries."""
    return q1.q_values(obs1)[action1] + q2.q_values(obs2)[action2]


def _flush_segment(segment, q1, q2, config, step):
    """Apply lambda-target updates for one rollout segment."""
    rewards = [tr[4] for tr in segment]
    values = [0.0]
    for tr in segment:
        if tr[7]:  # episode ended on this transition
            values.append(0.0)
        else:
            values.append(q1.max_q(tr[5]) + q2.max_q(tr[6]))
    targets = compute_lambda_targets(rewards, values, config.gamma, config.lam)
    if not np.isfinite(targets).all():
        raise TrainingDivergedError(
            f"non-finite lambda target at step {step}; check learning rate and shaping"
        )
    lr = config.learning_rate
    for (obs1, a1, obs2, a2, _r, _n1, _n2, _d), target in zip(segment, targets):
        delta = target - (q1.q_values(obs1)[a1] + q2.q_values(obs2)[a2])
        q1.update(obs1, a1, delta, lr)
        q2.update(obs2, a2, delta, lr)
    segment.clear()


def greedy_selfplay_return(env, policy1, policy2, episodes: int, seed: int) -> float:
    """Mean sparse return of greedy co-play over ``episodes`` episodes."""
    total = 0.0
    for ep in range(episodes):
        state = env.reset(seed + ep)
        done = False
        while not done:
            a1 = policy1.act(env.observe(state, 1))
            a2 = policy2.act(env.observe(state, 2))
            res = env.step(state, a1, a2)
            total += res.reward
            state, done = res.state, res.done
    return total / episodes


def train_selfplay_pair(
    env,
    shaping_pair: tuple[ShapingSpec, ShapingSpec] | None,
    config: TrainConfig,
) -> PolicyPair:
    """Train a pair of policies jointly from scratch.

    ``shaping_pair`` holds the per-seat random shaping specs; pass None for a
    pure sparse-reward pair. Helper shaping (the environment's base event
    magnitudes, annealed) is always active for the kitchen and disabled for
    the signaling game, which needs no subgoal guidance.
    """
    rng = np.random.default_rng(config.seed)
    q1 = make_q(env, config.representation)
    q2 = make_q(env, config.representation)

    if shaping_pair is None:
        shaping_pair = (
            zero_shaping(env.shaping_event_count),
            zero_shaping(env.shaping_event_count),
        )
    helper_horizon = int(config.helper_shaping_fraction * config.total_steps)
    if env.name == "kitchen":
        helper = helper_shaping(env.shaping_base_magnitudes, helper_horizon)
    else:
        helper = zero_shaping(env.shaping_event_count)

    step = 0
    segment: list = []
    while step < config.total_steps:
        state = env.reset(int(rng.integers(2**31)))
        obs1, obs2 = env.observe(state, 1), env.observe(state, 2)
        done = False
        while not done and step < config.total_steps:
            eps = config.epsilon(step)
            a1 = int(rng.integers(env.num_actions)) if rng.random() < eps else q1.greedy(obs1)
            a2 = int(rng.integers(env.num_actions)) if rng.random() < eps else q2.greedy(obs2)
            res = env.step(state, a1, a2)
            reward = res.reward
            reward += helper.bonus(res.shaping_events[0], step)
            reward += helper.bonus(res.shaping_events[1], step)
            reward += shaping_pair[0].bonus(res.shaping_events[0], step)
            reward += shaping_pair[1].bonus(res.shaping_events[1], step)

            next_obs1 = env.observe(res.state, 1)
            next_obs2 = env.observe(res.state, 2)
            segment.append((obs1, a1, obs2, a2, reward, next_obs1, next_obs2, res.done))
            state, obs1, obs2, done = res.state, next_obs1, next_obs2, res.done
            step += 1
            if len(segment) >= config.segment_length or done:
                _flush_segment(segment, q1, q2, config, step)
        if segment:
            _flush_segment(segment, q1, q2, config, step)

    if not (q1.finite() and q2.finite()):
        raise TrainingDivergedError("non-finite values after self-play training")

    selfplay_return = greedy_selfplay_return(
        env, q1, q2, config.eval_episodes, seed=config.seed + 777_000_001
    )
    provenance = {
        "seed": config.seed,
        "shaping1": shaping_pair[0].to_dict(),
        "shaping2": shaping_pair[1].to_dict(),
        "train_config": config.to_dict(),
    }
    return PolicyPair(q1, q2, selfplay_return, provenance)


def sample_shaping_pair(env, rng: np.random.Generator, config: TrainConfig):
    """Draw the two per-seat random shaping specs for one pool pair."""
    horizon = int(config.random_shaping_fraction * config.total_steps)
    return (
        sample_shaping(env.shaping_base_magnitudes, rng, horizon),
        sample_shaping(env.shaping_base_magnitudes, rng, horizon),
    )

"""Single-seat best-response training against a frozen partner set.

A fresh partner pair is drawn uniformly from the set at the start of every
training episode; its seat policy plays greedily and never learns. The
best-response seat trains with the same lambda-target machinery as
self-play, on sparse reward plus (for the kitchen) annealed helper shaping
over its own events.
"""

from __future__ import annotations

import numpy as np

from tbs.errors import TrainingDivergedError
from tbs.learners.config import TrainConfig
from tbs.learners.policies import PolicyPair, make_q
from tbs.learners.shaping import helper_shaping, zero_shaping
from tbs.learners.targets import compute_lambda_targets


def _flush_segment(segment, q, config, step):
    rewards = [tr[2] for tr in segment]
    values = [0.0]
    for tr in segment:
        values.append(0.0 if tr[4] else q.max_q(tr[3]))
    targets = compute_lambda_targets(rewards, values, config.gamma, config.lam)
    if not np.isfinite(targets).all():
        raise TrainingDivergedError(
            f"non-finite lambda target at step {step} during best-response training"
        )
    for (obs, action, _r, _n, _d), target in zip(segment, targets):
        delta = target - q.q_values(obs)[action]
        q.update(obs, action, delta, config.learning_rate)
    segment.clear()


def train_best_response(
    env,
    partner_set: list[PolicyPair],
    seat: int,
    config: TrainConfig,
):
    """Train one policy for ``seat`` against frozen partners.

    Returns the trained value function (used greedily as the policy).
    """
    if not partner_set:
        raise ValueError("partner_set must be non-empty")
    if seat not in (1, 2):
        raise ValueError(f"seat must be 1 or 2, got {seat}")

    rng = np.random.default_rng(config.seed)
    q = make_q(env, config.representation)
    partner_seat = 3 - seat
    helper_horizon = int(config.helper_shaping_fraction * config.total_steps)
    if env.name == "kitchen":
        helper = helper_shaping(env.shaping_base_magnitudes, helper_horizon)
    else:
        helper = zero_shaping(env.shaping_event_count)

    step = 0
    segment: list = []
    while step < config.total_steps:
        pair = partner_set[int(rng.integers(len(partner_set)))]
        partner = pair.policy1 if partner_seat == 1 else pair.policy2
        state = env.reset(int(rng.integers(2**31)))
        obs = env.observe(state, seat)
        done = False
        while not done and step < config.total_steps:
            eps = config.epsilon(step)
            action = int(rng.integers(env.num_actions)) if rng.random() < eps else q.greedy(obs)
            partner_action = partner.act(env.observe(state, partner_seat))
            if seat == 1:
                res = env.step(state, action, partner_action)
            else:
                res = env.step(state, partner_action, action)
            reward = res.reward + helper.bonus(res.shaping_events[seat - 1], step)
            next_obs = env.observe(res.state, seat)
            segment.append((obs, action, reward, next_obs, res.done))
            state, obs, done = res.state, next_obs, res.done
            step += 1
            if len(segment) >= config.segment_length or done:
                _flush_segment(segment, q, config, step)
        if segment:
            _flush_segment(segment, q, config, step)

    if not q.finite():
        raise TrainingDivergedError("non-finite values after best-response training")
    return q

"""Two-player signaling game over 16 rounds.

Each round, Alice (seat 1) privately sees a number 1-4 and either shows one
of four signals A-D or bails. Bob (seat 2) sees the signal and either guesses
the number (reward +1 right, -1 wrong) or bails (reward 0); bailing by Alice
skips Bob's turn with reward 0. The true number is then revealed to both
agents during a reveal phase before the next round starts.

Self-played pairs converge on private number-to-signal conventions, so
cross-play between independently trained pairs is the canonical small
testbed for zero-shot coordination.

Action encoding (both seats use 5 actions):
  Alice: 0..3 = signals A..D, 4 = bail.
  Bob:   0..3 = guess number 1..4, 4 = bail.

Observation (4 ints, same layout for both seats):
  [phase, own_private, partner_visible_action, last_revealed]
  phase: 0 alice_turn, 1 bob_turn, 2 reveal.
  own_private: Alice sees her current number 1..4; Bob always sees 0.
  partner_visible_action: the partner action currently on the table, coded
    0 none, 1..4 signal A..D / guess 1..4, 5 bail.
  last_revealed: 0 if nothing applicable yet, else a revealed number 1..4.

Acting observations carry only decision-relevant context: at her turn Alice
sees just her number, and at his turn Bob sees the current signal plus the
previous round's revealed number. The reveal-phase observation is the public
recap pairing this round's actions with the revealed number.

Bob's in-round observation therefore pairs the current signal with a
*different* round's number: a memoryless decoder can never read the
partner's convention off a single observation, while a stateful observer
that remembers reveal phases can.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from tbs.envs.concepts import (
    SIGNALING_BAIL_INDEX,
    SIGNALING_SHAPING_MAGNITUDES,
    ConceptSet,
    signaling_concept_set,
    signaling_demo_index,
)
from tbs.errors import InvalidActionError

ALICE_TURN, BOB_TURN, REVEAL = 0, 1, 2
NUM_ROUNDS = 16
NUM_ACTIONS = 5
BAIL = 4
MAX_STEPS = 3 * NUM_ROUNDS

_CONCEPTS = signaling_concept_set()


@dataclass(frozen=True)
class SignalingState:
    round_index: int
    phase: int
    hidden_numbers: tuple[int, ...]  # drawn for all 16 rounds at reset
    alice_action: int | None  # current round's signal/bail
    bob_action: int | None  # current round's guess/bail
    last_revealed: int
    cumulative_reward: float

    @property
    def hidden_number(self) -> int:
        """Current round's number; 0 once the episode is over."""
        if self.round_index >= NUM_ROUNDS:
            return 0
        return self.hidden_numbers[self.round_index]

    @property
    def done(self) -> bool:
        return self.round_index >= NUM_ROUNDS


def signaling_reset(seed: int) -> SignalingState:
    """Start an episode, drawing all round numbers from the episode RNG."""
    rng = np.random.default_rng(seed)
    hidden = tuple(int(x) for x in rng.integers(1, 5, size=NUM_ROUNDS))
    return SignalingState(
        round_index=0,
        phase=ALICE_TURN,
        hidden_numbers=hidden,
        alice_action=None,
        bob_action=None,
        last_revealed=0,
        cumulative_reward=0.0,
    )


def _action_code(action: int | None) -> int:
    """Visible-action code: 0 none, 1..4 signal/guess, 5 bail."""
    return 0 if action is None else action + 1


def signaling_step(
    state: SignalingState, action: int
) -> tuple[SignalingState, float, tuple[np.ndarray, np.ndarray], bool]:
    """Advance one phase; ``action`` belongs to the phase's actor.

    Returns (next_state, reward, (alice_events, bob_events), done). Events
    over the codebook concept set fire on the step that resolves a round:
    each agent demonstrates the (number, own action) pair, or bail.
    """
    if state.done:
        raise InvalidActionError("episode is over; reset before stepping")
    ev1 = _CONCEPTS.zeros()
    ev2 = _CONCEPTS.zeros()

    if state.phase == ALICE_TURN:
        if not 0 <= action < NUM_ACTIONS:
            raise InvalidActionError(f"alice action {action!r} not in 0..4")
        if action == BAIL:
            # Round resolves immediately; Bob never moves.
            ev1[SIGNALING_BAIL_INDEX] = 1
            next_state = replace(
                state,
                phase=REVEAL,
                alice_action=BAIL,
                last_revealed=state.hidden_number,
            )
            return next_state, 0.0, (ev1, ev2), False
        return replace(state, phase=BOB_TURN, alice_action=action), 0.0, (ev1, ev2), False

    if state.phase == BOB_TURN:
        if not 0 <= action < NUM_ACTIONS:
            raise InvalidActionError(f"bob action {action!r} not in 0..4")
        hidden = state.hidden_number
        if action == BAIL:
            reward = 0.0
            ev2[SIGNALING_BAIL_INDEX] = 1
        else:
            reward = 1.0 if action + 1 == hidden else -1.0
            ev2[signaling_demo_index(hidden, action)] = 1
        ev1[signaling_demo_index(hidden, state.alice_action)] = 1
        next_state = replace(
            state,
            phase=REVEAL,
            bob_action=action,
            last_revealed=hidden,
            cumulative_reward=state.cumulative_reward + reward,
        )
        return next_state, reward, (ev1, ev2), False

    # REVEAL: any action is legal and ignored; advance to the next round.
    new_round = state.round_index + 1
    next_state = replace(
        state,
        round_index=new_round,
        phase=ALICE_TURN,
        alice_action=None,
        bob_action=None,
    )
    return next_state, 0.0, (ev1, ev2), new_round >= NUM_ROUNDS


def signaling_observe(state: SignalingState, agent_index: int) -> tuple[int, ...]:
    """Fixed-length integer observation for seat 1 (Alice) or 2 (Bob)."""
    if agent_index not in (1, 2):
        raise ValueError(f"agent_index must be 1 or 2, got {agent_index}")
    private = state.hidden_number if agent_index == 1 else 0
    if state.phase == ALICE_TURN:
        return (ALICE_TURN, private, 0, 0)
    if state.phase == BOB_TURN:
        if agent_index == 1:
            return (BOB_TURN, private, 0, 0)
        return (BOB_TURN, 0, _action_code(state.alice_action), state.last_revealed)
    partner = state.bob_action if agent_index == 1 else state.alice_action
    return (REVEAL, private, _action_code(partner), state.last_revealed)


# Observation field cardinalities, used by featurizers.
SIGNALING_OBS_FIELDS = (
    ("phase", 3),
    ("own_private", 5),
    ("partner_action", 6),
    ("last_revealed", 5),
)


class SignalingGame:
    """Joint-action adapter over the phase-based core.

    Both seats submit an action every step; only the phase's actor's action
    takes effect (any action is accepted for the inactive seat and during
    reveal phases).
    """

    name = "signaling"
    num_actions = NUM_ACTIONS
    max_steps = MAX_STEPS
    obs_fields = SIGNALING_OBS_FIELDS
    concept_set: ConceptSet = _CONCEPTS
    shaping_event_count = _CONCEPTS.size
    shaping_base_magnitudes = SIGNALING_SHAPING_MAGNITUDES
    observed_seat = 1  # ToM predicts Alice's intentions

    def reset(self, seed: int) -> SignalingState:
        return signaling_reset(seed)

    def observe(self, state: SignalingState, agent_index: int) -> tuple[int, ...]:
        return signaling_observe(state, agent_index)

    def step(self, state: SignalingState, a1: int, a2: int):
        from tbs.envs.base import JointStep

        if state.phase == ALICE_TURN:
            acting = a1
        elif state.phase == BOB_TURN:
            acting = a2
        else:
            acting = 0
        next_state, reward, events, done = signaling_step(state, acting)
        return JointStep(
            state=next_state,
            reward=reward,
            events=events,
            shaping_events=events,
            done=done,
        )

    def table_key(self, obs: tuple[int, ...]) -> tuple[int, ...]:
        return obs

    def spec(self) -> dict:
        return {"name": self.name}


def alice_codebook_table(codebook: dict[int, int]) -> dict[tuple[int, ...], list[float]]:
    """Greedy table for an Alice that signals ``codebook[number]`` every round.

    Only alice-turn observations are populated; at other phases the policy
    falls back to action 0, which the environment ignores.
    """
    table: dict[tuple[int, ...], list[float]] = {}
    for hidden in range(1, 5):
        q = [0.0] * NUM_ACTIONS
        q[codebook[hidden]] = 1.0
        table[(ALICE_TURN, hidden, 0, 0)] = q
    return table


def bob_decoder_table(codebook: dict[int, int]) -> dict[tuple[int, ...], list[float]]:
    """Greedy table for a Bob that inverts ``codebook`` on the shown signal."""
    inverse = {letter: number for number, letter in codebook.items()}
    table: dict[tuple[int, ...], list[float]] = {}
    for signal_code in range(1, 5):
        for revealed in range(5):
            q = [0.0] * NUM_ACTIONS
            letter = signal_code - 1
            if letter in inverse:
                q[inverse[letter] - 1] = 1.0
            else:
                q[BAIL] = 1.0
            table[(BOB_TURN, 0, signal_code, revealed)] = q
    return table

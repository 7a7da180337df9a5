"""Training hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class TrainConfig:
    gamma: float = 0.99
    lam: float = 0.5
    epsilon_anneal_fraction: float = 0.2
    epsilon_floor: float = 0.05
    learning_rate: float = 0.1
    total_steps: int = 200_000
    seed: int = 0
    segment_length: int = 16
    # Fractions of total_steps over which the shaped reward terms decay.
    helper_shaping_fraction: float = 0.8
    random_shaping_fraction: float = 0.8
    representation: str = "tabular"
    eval_episodes: int = 20

    def with_seed(self, seed: int) -> "TrainConfig":
        return replace(self, seed=seed)

    def epsilon(self, step: int) -> float:
        anneal_steps = max(1, int(self.epsilon_anneal_fraction * self.total_steps))
        frac = min(1.0, step / anneal_steps)
        return 1.0 + frac * (self.epsilon_floor - 1.0)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "lambda": self.lam,
            "epsilon_anneal_fraction": self.epsilon_anneal_fraction,
            "epsilon_floor": self.epsilon_floor,
            "learning_rate": self.learning_rate,
            "total_steps": self.total_steps,
            "seed": self.seed,
            "segment_length": self.segment_length,
            "helper_shaping_fraction": self.helper_shaping_fraction,
            "random_shaping_fraction": self.random_shaping_fraction,
            "representation": self.representation,
            "eval_episodes": self.eval_episodes,
        }

    @staticmethod
    def from_dict(data: dict) -> "TrainConfig":
        known = dict(data)
        if "lambda" in known:
            known["lam"] = known.pop("lambda")
        fields = TrainConfig.__dataclass_fields__
        return TrainConfig(**{k: v for k, v in known.items() if k in fields})

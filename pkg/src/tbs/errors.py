"""Exception types shared across the toolkit."""


class InvalidActionError(ValueError):
    """An action was illegal for the current environment phase."""


class TrainingDivergedError(RuntimeError):
    """A value table picked up a non-finite entry during training."""


class EmptyClusterError(ValueError):
    """A cluster-scoped operation received no data for its cluster."""


class DegenerateEmbeddingError(ValueError):
    """A spectral embedding row has no usable (nonzero) entry."""


class StaleArtifactError(RuntimeError):
    """A pipeline stage found a missing or out-of-date upstream artifact."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")

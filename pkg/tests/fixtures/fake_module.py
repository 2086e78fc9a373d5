from unittest.mock import Mock

from hubbard_vqe.types import ExperimentConfig

GLOBAL_MOCK = Mock(name="GLOBAL")


def run_me(config: ExperimentConfig) -> str:
    GLOBAL_MOCK(config)
    return config.grid


attr = "not a callable"

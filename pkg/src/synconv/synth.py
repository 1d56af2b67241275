"""Synthetic two-party dialogue complexity data with known slopes.

Draws complexity values from the same model the analysis fits: per role,
sc = intercept + slope * position + dialogue effect + noise, with the
dialogue effect and noise Gaussian. The point is slope-recovery testing,
so records carry no tree components. Deterministic for a given seed.
"""

from __future__ import annotations

import numpy as np

from .complexity import ComplexityRecord

DEFAULT_SEED = 1729


def generate_records(n_dialogues: int, n_utterances: int,
                     initiator_slope: float, follower_slope: float,
                     intercept: float = 2.5, sigma_u: float = 0.3,
                     sigma_e: float = 0.5,
                     seed: int = DEFAULT_SEED) -> tuple[ComplexityRecord, ...]:
    """Generate `n_utterances` positions per role for each dialogue.

    Each (dialogue, role) pair gets its own random intercept. Complexity
    values must stay non-negative, so a draw that goes below zero raises;
    raise `intercept` (or shrink the noise) for steep negative slopes.
    """
    if n_dialogues < 1:
        raise ValueError(f"n_dialogues must be >= 1, got {n_dialogues}")
    if n_utterances < 1:
        raise ValueError(f"n_utterances must be >= 1, got {n_utterances}")
    if sigma_u < 0 or sigma_e < 0:
        raise ValueError("sigma_u and sigma_e must be non-negative")
    rng = np.random.default_rng(seed)
    positions = np.arange(1, n_utterances + 1, dtype=float)
    width = len(str(n_dialogues))
    records = []
    for d in range(1, n_dialogues + 1):
        dialogue_id = f"d{d:0{width}d}"
        for role, speaker, slope in (("initiator", "S1", initiator_slope),
                                     ("follower", "S2", follower_slope)):
            offset = rng.normal(0.0, sigma_u)
            noise = rng.normal(0.0, sigma_e, n_utterances)
            values = intercept + slope * positions + offset + noise
            if values.min() < 0:
                raise ValueError(
                    "generated a negative complexity value; raise intercept "
                    "or reduce the variance parameters")
            for pos, value in enumerate(values, start=1):
                records.append(ComplexityRecord(
                    dialogue_id=dialogue_id, speaker=speaker, role=role,
                    position=pos, sc=float(value), components=None,
                    position_norm=pos / n_utterances))
    return tuple(records)

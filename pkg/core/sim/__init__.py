"""Random-coding Monte-Carlo simulation of the cognitive MAC schemes."""

from core.sim.codebooks import Codebooks, sigma_shift, sliding_window_v, window_codes
from core.sim.coding import (
    EVENTS,
    MODEL_ACCMAC,
    MODEL_ACMAC,
    Decoded,
    Transmission,
    channel_output_law,
    decode,
    transmit,
)
from core.sim.experiment import DelayTally, SimConfig, SimReport, TrialRecord, direct_rate, run_experiment, run_trial
from core.sim.typicality import log_impostor_typical, prob_any, typical_box, typical_mask

__all__ = [
    "Codebooks",
    "sigma_shift",
    "sliding_window_v",
    "window_codes",
    "EVENTS",
    "MODEL_ACCMAC",
    "MODEL_ACMAC",
    "Decoded",
    "Transmission",
    "channel_output_law",
    "decode",
    "transmit",
    "DelayTally",
    "SimConfig",
    "SimReport",
    "TrialRecord",
    "direct_rate",
    "run_experiment",
    "run_trial",
    "log_impostor_typical",
    "prob_any",
    "typical_box",
    "typical_mask",
]

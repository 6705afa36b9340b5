from .nletter import (
    LAW_CAP,
    NLetterLaw,
    accmac_multiletter_point,
    edge_gap_bound,
    output_positions,
    q_n_point,
    r_n_point,
)

__all__ = [
    "NLetterLaw",
    "LAW_CAP",
    "r_n_point",
    "q_n_point",
    "accmac_multiletter_point",
    "edge_gap_bound",
    "output_positions",
]

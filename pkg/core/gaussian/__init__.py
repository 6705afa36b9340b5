from .closed_form import (
    DEFAULT_P2_STEPS,
    DEFAULT_RHO_STEPS,
    RHO_MAX,
    GaussianCurve,
    GaussianSample,
    GaussianSpec,
    covariance_inner,
    gaussian_inner,
    gaussian_inner_point,
    gaussian_outer,
    inner_caps,
    is_psd,
    outer_caps,
)
from .traces import traces_csv, write_gaussian_traces

__all__ = [
    "GaussianSpec",
    "GaussianSample",
    "GaussianCurve",
    "RHO_MAX",
    "DEFAULT_RHO_STEPS",
    "DEFAULT_P2_STEPS",
    "outer_caps",
    "inner_caps",
    "gaussian_outer",
    "gaussian_inner",
    "gaussian_inner_point",
    "covariance_inner",
    "is_psd",
    "traces_csv",
    "write_gaussian_traces",
]

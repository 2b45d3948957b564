from ._msm_mean import (
    MeanResult,
    ResourceError,
    brute_force_mean,
    distance,
    mean,
    sample,
    sum_distance,
    verify,
)

__all__ = [
    "MeanResult",
    "ResourceError",
    "brute_force_mean",
    "distance",
    "mean",
    "sample",
    "sum_distance",
    "verify",
]

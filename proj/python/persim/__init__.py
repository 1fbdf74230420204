"""PerSIM: multi-resolution perceptual image similarity in CIELAB."""

from ._persim import (
    default_config,
    fit_logistic,
    kendall,
    log_kernel,
    logsim,
    pearson,
    persim,
    persim_sr,
    psnr,
    rgb_to_lab,
    rmse,
    spearman,
)

__all__ = [
    "default_config",
    "fit_logistic",
    "kendall",
    "log_kernel",
    "logsim",
    "pearson",
    "persim",
    "persim_sr",
    "psnr",
    "rgb_to_lab",
    "rmse",
    "spearman",
]

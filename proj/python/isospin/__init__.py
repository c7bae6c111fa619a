"""Isotropic spin channels: minimum output entropy, Holevo capacity and checks."""

from ._core import (
    Channel,
    IsospinError,
    analytic_qubit_spectrum,
    channel,
    channel_from_json,
    entropy_curve,
    holevo_capacity,
    min_output_entropy,
    schmidt_decompose,
    tensor,
    verify,
    von_neumann_entropy,
)

__all__ = [
    "Channel",
    "IsospinError",
    "analytic_qubit_spectrum",
    "channel",
    "channel_from_json",
    "entropy_curve",
    "holevo_capacity",
    "min_output_entropy",
    "schmidt_decompose",
    "tensor",
    "verify",
    "von_neumann_entropy",
]

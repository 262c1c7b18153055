"""Minimal numeric core: tensors, MLPs with reverse-mode gradients, Adam,
squashed diagonal-Gaussian policies, and closed-form Gaussian KL."""

from .adam import AdamState, adam_step
from .autodiff import Node, Tape
from .mlp import MlpNet, apply, apply_frozen, forward, grad, init_mlp
from .policy import (
    DiagGaussianPolicy,
    dist,
    dist_nodes,
    gaussian_kl,
    init_policy,
    kl_nodes,
    log_prob_of,
    mean_action,
    sample_action,
    sample_nodes,
)
from .tensor import Tensor, check_finite, tensor, zeros

__all__ = [
    "AdamState",
    "adam_step",
    "Node",
    "Tape",
    "MlpNet",
    "apply",
    "apply_frozen",
    "forward",
    "grad",
    "init_mlp",
    "DiagGaussianPolicy",
    "dist",
    "dist_nodes",
    "gaussian_kl",
    "init_policy",
    "kl_nodes",
    "log_prob_of",
    "mean_action",
    "sample_action",
    "sample_nodes",
    "Tensor",
    "check_finite",
    "tensor",
    "zeros",
]

"""Squashed diagonal-Gaussian policies and closed-form Gaussian KL.

The policy maps an observation through a tanh MLP trunk to mean and
log-std heads; actions are tanh-squashed onto a symmetric box of
half-width `action_scale`. Sampling and log-densities exist in two
flavours: plain numpy (env stepping, evaluation) and Tape nodes
(gradient-carrying actor losses), sharing the same formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, ShapeError
from .autodiff import Node, Tape
from .mlp import MlpNet, init_mlp
from .tensor import Tensor, check_finite

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0
_HALF_LOG_2PI = 0.5 * float(np.log(2.0 * np.pi))


@dataclass
class DiagGaussianPolicy:
    trunk: MlpNet
    mean_w: Tensor
    mean_b: Tensor
    log_std_w: Tensor
    log_std_b: Tensor
    action_scale: Tensor  # box half-width per action dim
    log_std_bounds: tuple = (LOG_STD_MIN, LOG_STD_MAX)

    @property
    def obs_dim(self) -> int:
        return self.trunk.in_dim

    @property
    def action_dim(self) -> int:
        return self.mean_w.shape[0]

    def params(self) -> list:
        return self.trunk.params() + [self.mean_w, self.mean_b, self.log_std_w, self.log_std_b]

    def set_params(self, params: list) -> None:
        n_trunk = 2 * len(self.trunk.weights)
        if len(params) != n_trunk + 4:
            raise ShapeError(f"expected {n_trunk + 4} tensors, got {len(params)}")
        self.trunk.set_params(params[:n_trunk])
        self.mean_w, self.mean_b, self.log_std_w, self.log_std_b = (
            np.asarray(p, dtype=np.float64) for p in params[n_trunk:]
        )

    def copy(self) -> "DiagGaussianPolicy":
        return DiagGaussianPolicy(
            self.trunk.copy(),
            self.mean_w.copy(),
            self.mean_b.copy(),
            self.log_std_w.copy(),
            self.log_std_b.copy(),
            self.action_scale.copy(),
            self.log_std_bounds,
        )


def init_policy(obs_dim, action_dim, hidden, action_scale, rng) -> DiagGaussianPolicy:
    trunk = init_mlp([obs_dim] + list(hidden), rng)
    bound = 1.0 / np.sqrt(hidden[-1])
    return DiagGaussianPolicy(
        trunk=trunk,
        mean_w=rng.uniform(-bound, bound, size=(action_dim, hidden[-1])),
        mean_b=rng.uniform(-bound, bound, size=(action_dim,)),
        log_std_w=rng.uniform(-bound, bound, size=(action_dim, hidden[-1])),
        log_std_b=rng.uniform(-bound, bound, size=(action_dim,)),
        action_scale=np.full(action_dim, float(action_scale))
        if np.isscalar(action_scale)
        else np.asarray(action_scale, dtype=np.float64),
    )


def _trunk_features(policy: DiagGaussianPolicy, obs: Tensor) -> Tensor:
    h = np.atleast_2d(np.asarray(obs, dtype=np.float64))
    if h.shape[1] != policy.obs_dim:
        raise ShapeError(f"obs dim {h.shape[1]} != policy obs dim {policy.obs_dim}")
    check_finite(h, "policy observation")
    for w, b in zip(policy.trunk.weights, policy.trunk.biases):
        h = np.tanh(h @ w.T + b)
    return h


def dist(policy: DiagGaussianPolicy, obs: Tensor) -> tuple:
    """Pre-squash (mean, std), batched: obs (B,obs_dim) -> (B,A), (B,A)."""
    h = _trunk_features(policy, obs)
    mean = h @ policy.mean_w.T + policy.mean_b
    log_std = np.clip(h @ policy.log_std_w.T + policy.log_std_b, *policy.log_std_bounds)
    return mean, np.exp(log_std)


def _log_prob_from_u(u, mean, std, scale):
    xi = (u - mean) / std
    gauss = (-0.5 * xi * xi - np.log(std) - _HALF_LOG_2PI).sum(axis=1)
    corr = (2.0 * (np.log(2.0) - u - np.logaddexp(0.0, -2.0 * u))).sum(axis=1)
    return gauss - corr - np.log(scale).sum()


def sample_action(policy: DiagGaussianPolicy, obs: Tensor, rng: np.random.Generator):
    """Reparameterized sample with tanh change-of-variables log-density."""
    squeeze = np.asarray(obs).ndim == 1
    mean, std = dist(policy, obs)
    xi = rng.standard_normal(mean.shape)
    u = mean + std * xi
    action = np.tanh(u) * policy.action_scale
    log_prob = _log_prob_from_u(u, mean, std, policy.action_scale)
    check_finite(action, "sampled action")
    if squeeze:
        return action[0], float(log_prob[0])
    return action, log_prob


def mean_action(policy: DiagGaussianPolicy, obs: Tensor) -> Tensor:
    """Deterministic (mode) action used for evaluation."""
    squeeze = np.asarray(obs).ndim == 1
    mean, _ = dist(policy, obs)
    action = np.tanh(mean) * policy.action_scale
    return action[0] if squeeze else action


def log_prob_of(policy: DiagGaussianPolicy, obs: Tensor, action: Tensor) -> Tensor:
    """Density of a given squashed action (used by density oracles)."""
    squeeze = np.asarray(obs).ndim == 1
    mean, std = dist(policy, obs)
    a = np.atleast_2d(np.asarray(action, dtype=np.float64)) / policy.action_scale
    a = np.clip(a, -1.0 + 1e-12, 1.0 - 1e-12)
    u = np.arctanh(a)
    lp = _log_prob_from_u(u, mean, std, policy.action_scale)
    return float(lp[0]) if squeeze else lp


def dist_nodes(tape: Tape, policy: DiagGaussianPolicy, param_nodes: list, obs: Tensor):
    """Tape version of dist(); param_nodes ordered as policy.params()."""
    n_trunk = len(policy.trunk.weights)
    h = obs
    for i in range(n_trunk):
        h = tape.tanh(tape.affine(h, param_nodes[2 * i], param_nodes[2 * i + 1]))
    k = 2 * n_trunk
    mean = tape.affine(h, param_nodes[k], param_nodes[k + 1])
    log_std = tape.clip(
        tape.affine(h, param_nodes[k + 2], param_nodes[k + 3]), *policy.log_std_bounds
    )
    return mean, log_std


def sample_nodes(tape: Tape, policy: DiagGaussianPolicy, param_nodes: list, obs: Tensor, xi: Tensor):
    """Reparameterized action and per-sample log-prob as tape nodes.

    Under u = mean + std*xi the Gaussian quadratic term has exactly zero
    parameter gradient, so it enters as a constant; the -log(std) and
    tanh-jacobian terms carry the gradient.
    """
    mean, log_std = dist_nodes(tape, policy, param_nodes, obs)
    std = tape.exp(log_std)
    u = tape.add(mean, tape.mul(std, xi))
    action = tape.scale(tape.tanh(u), policy.action_scale)
    const = (-0.5 * xi * xi - _HALF_LOG_2PI).sum(axis=1, keepdims=True) - np.log(
        policy.action_scale
    ).sum()
    log_prob = tape.add(
        tape.sub(tape.neg(tape.sum_cols(log_std)), tape.sum_cols(tape.tanh_log_jacobian(u))),
        const,
    )
    return action, log_prob, mean, log_std


def gaussian_kl(mu_p: Tensor, sigma_p: Tensor, mu_q: Tensor, sigma_q: Tensor) -> float:
    """Closed-form KL(p || q) between diagonal Gaussians (pre-squash)."""
    mu_p, sigma_p, mu_q, sigma_q = (
        np.asarray(a, dtype=np.float64) for a in (mu_p, sigma_p, mu_q, sigma_q)
    )
    if not (mu_p.shape == sigma_p.shape == mu_q.shape == sigma_q.shape):
        raise ShapeError("gaussian_kl: mismatched shapes")
    if np.any(sigma_p <= 0.0) or np.any(sigma_q <= 0.0):
        raise DomainError("gaussian_kl: standard deviations must be positive")
    d = mu_p - mu_q
    terms = np.log(sigma_q / sigma_p) + (sigma_p**2 + d**2) / (2.0 * sigma_q**2) - 0.5
    return float(terms.sum())


def kl_nodes(tape: Tape, mean_p: Node, log_std_p: Node, mu_q: Tensor, sigma_q: Tensor) -> Node:
    """Per-sample KL(p || q) where p carries gradients; (B,A)->(B,1)."""
    if np.any(sigma_q <= 0.0):
        raise DomainError("gaussian_kl: standard deviations must be positive")
    log_sigma_q = np.log(sigma_q)
    sigma_p = tape.exp(log_std_p)
    diff = tape.sub(mean_p, mu_q)
    num = tape.add(tape.square(sigma_p), tape.square(diff))
    terms = tape.add(
        tape.sub(tape.neg(log_std_p), 0.5 - log_sigma_q),
        tape.scale(num, 1.0 / (2.0 * sigma_q**2)),
    )
    return tape.sum_cols(terms)

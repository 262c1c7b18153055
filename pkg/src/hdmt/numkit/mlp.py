"""Feed-forward networks: tanh hidden layers, identity output.

MlpNet is a plain container of (weight, bias) pairs. forward() is the
pure numpy evaluation used on the hot env-stepping path; apply() builds
the same computation on a Tape when gradients are needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError
from .autodiff import Node, Tape
from .tensor import Tensor, check_finite


@dataclass
class MlpNet:
    weights: list  # each (out, in)
    biases: list  # each (out,)

    def __post_init__(self):
        if len(self.weights) != len(self.biases):
            raise ShapeError("weights/biases length mismatch")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.ndim != 2 or b.ndim != 1 or w.shape[0] != b.shape[0]:
                raise ShapeError(f"layer {i}: weight {w.shape} vs bias {b.shape}")
            if i > 0 and w.shape[1] != self.weights[i - 1].shape[0]:
                raise ShapeError(
                    f"layer {i}: in-dim {w.shape[1]} does not chain with "
                    f"previous out-dim {self.weights[i - 1].shape[0]}"
                )

    @property
    def in_dim(self) -> int:
        return self.weights[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights[-1].shape[0]

    def params(self) -> list:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def set_params(self, params: list) -> None:
        n = len(self.weights)
        if len(params) != 2 * n:
            raise ShapeError(f"expected {2 * n} parameter tensors, got {len(params)}")
        self.weights = [np.asarray(params[2 * i], dtype=np.float64) for i in range(n)]
        self.biases = [np.asarray(params[2 * i + 1], dtype=np.float64) for i in range(n)]
        self.__post_init__()

    def copy(self) -> "MlpNet":
        return MlpNet([w.copy() for w in self.weights], [b.copy() for b in self.biases])


def init_mlp(sizes, rng: np.random.Generator) -> MlpNet:
    """Uniform +-1/sqrt(fan_in) weights and biases per layer."""
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(rng.uniform(-bound, bound, size=(fan_out,)))
    return MlpNet(weights, biases)


def forward(net: MlpNet, x: Tensor) -> Tensor:
    """Pure evaluation; x is (in,) or (batch, in)."""
    squeeze = x.ndim == 1
    h = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if h.shape[1] != net.in_dim:
        raise ShapeError(f"input dim {h.shape[1]} != net in-dim {net.in_dim}")
    check_finite(h, "forward input")
    last = len(net.weights) - 1
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        h = h @ w.T + b
        if i < last:
            h = np.tanh(h)
    check_finite(h, "forward output")
    return h[0] if squeeze else h


def apply(tape: Tape, net_params: list, x, n_layers: int) -> Node:
    """Tape evaluation over parameter nodes (alternating w, b)."""
    h = x
    for i in range(n_layers):
        h = tape.affine(h, net_params[2 * i], net_params[2 * i + 1])
        if i < n_layers - 1:
            h = tape.tanh(h)
    return h


def apply_frozen(tape: Tape, net: MlpNet, x: Node) -> Node:
    """Tape evaluation through frozen weights; gradient reaches x only."""
    h = x
    last = len(net.weights) - 1
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        h = tape.affine_const(h, w, b)
        if i < last:
            h = tape.tanh(h)
    return h


def grad(net: MlpNet, x: Tensor, loss_fn) -> list:
    """Gradients of a scalar loss of the network output w.r.t. all params.

    loss_fn maps the output Node to a scalar Node using Tape ops exposed
    on the node's tape, e.g. lambda t, y: t.mean(t.square(y)).
    """
    tape = Tape()
    param_nodes = [tape.param(p) for p in net.params()]
    xv = np.atleast_2d(np.asarray(x, dtype=np.float64))
    out = apply(tape, param_nodes, xv, len(net.weights))
    loss = loss_fn(tape, out)
    if loss.value.size != 1:
        raise ShapeError("loss_fn must produce a scalar")
    check_finite(loss.value, "loss")
    tape.backward(loss)
    grads = []
    for p in param_nodes:
        g = p.grad if p.grad is not None else np.zeros_like(p.value)
        check_finite(g, "gradient")
        grads.append(g)
    return grads

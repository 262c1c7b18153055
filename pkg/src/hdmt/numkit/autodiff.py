"""Reverse-mode automatic differentiation on dense float64 arrays.

A Tape records operations in execution order; since nodes are only ever
built from earlier nodes, the recorded order is already topological and
backward() is a single reversed sweep. Nodes hold a value and an
accumulated gradient. Constants (plain numpy arrays) may be mixed freely
with nodes; gradients flow only into nodes.

The op set is deliberately small: exactly what feed-forward policies,
twin-critic losses, squashed-Gaussian log-densities, and diagonal-Gaussian
KL terms need.
"""

from __future__ import annotations

import numpy as np

LOG_2 = float(np.log(2.0))


class Node:
    __slots__ = ("value", "grad")

    def __init__(self, value: np.ndarray):
        self.value = value
        self.grad = None

    def add_grad(self, g):
        if self.grad is None:
            self.grad = np.array(g, dtype=np.float64, copy=True)
        else:
            self.grad += g


def _val(x):
    return x.value if isinstance(x, Node) else x


class Tape:
    """Records ops forward, replays adjoints in reverse."""

    def __init__(self):
        self._backward_ops = []

    # -- leaves ---------------------------------------------------------

    def param(self, value: np.ndarray) -> Node:
        return Node(np.asarray(value, dtype=np.float64))

    # -- primitive ops --------------------------------------------------

    def affine(self, x, w: Node, b: Node) -> Node:
        """x (B,in) @ w (out,in)^T + b (out) with gradients into x, w, b."""
        xv = _val(x)
        out = Node(xv @ w.value.T + b.value)

        def bw():
            g = out.grad
            w.add_grad(g.T @ xv)
            b.add_grad(g.sum(axis=0))
            if isinstance(x, Node):
                x.add_grad(g @ w.value)

        self._backward_ops.append(bw)
        return out

    def affine_const(self, x: Node, w: np.ndarray, b: np.ndarray) -> Node:
        """Affine map with frozen weights; gradient flows into x only."""
        out = Node(x.value @ w.T + b)

        def bw():
            x.add_grad(out.grad @ w)

        self._backward_ops.append(bw)
        return out

    def tanh(self, x: Node) -> Node:
        out = Node(np.tanh(x.value))

        def bw():
            x.add_grad(out.grad * (1.0 - out.value * out.value))

        self._backward_ops.append(bw)
        return out

    def exp(self, x: Node) -> Node:
        out = Node(np.exp(x.value))

        def bw():
            x.add_grad(out.grad * out.value)

        self._backward_ops.append(bw)
        return out

    def log(self, x: Node) -> Node:
        out = Node(np.log(x.value))

        def bw():
            x.add_grad(out.grad / x.value)

        self._backward_ops.append(bw)
        return out

    def softplus(self, x: Node) -> Node:
        out = Node(np.logaddexp(0.0, x.value))

        def bw():
            x.add_grad(out.grad / (1.0 + np.exp(-x.value)))

        self._backward_ops.append(bw)
        return out

    def clip(self, x: Node, lo: float, hi: float) -> Node:
        out = Node(np.clip(x.value, lo, hi))

        def bw():
            inside = (x.value > lo) & (x.value < hi)
            x.add_grad(out.grad * inside)

        self._backward_ops.append(bw)
        return out

    def add(self, a, b) -> Node:
        out = Node(_val(a) + _val(b))

        def bw():
            if isinstance(a, Node):
                a.add_grad(_unbroadcast(out.grad, a.value.shape))
            if isinstance(b, Node):
                b.add_grad(_unbroadcast(out.grad, b.value.shape))

        self._backward_ops.append(bw)
        return out

    def sub(self, a, b) -> Node:
        out = Node(_val(a) - _val(b))

        def bw():
            if isinstance(a, Node):
                a.add_grad(_unbroadcast(out.grad, a.value.shape))
            if isinstance(b, Node):
                b.add_grad(_unbroadcast(-out.grad, b.value.shape))

        self._backward_ops.append(bw)
        return out

    def mul(self, a, b) -> Node:
        av, bv = _val(a), _val(b)
        out = Node(av * bv)

        def bw():
            if isinstance(a, Node):
                a.add_grad(_unbroadcast(out.grad * bv, a.value.shape))
            if isinstance(b, Node):
                b.add_grad(_unbroadcast(out.grad * av, b.value.shape))

        self._backward_ops.append(bw)
        return out

    def scale(self, x: Node, c) -> Node:
        """Multiply by a constant scalar or array."""
        c = np.asarray(c, dtype=np.float64)
        out = Node(x.value * c)

        def bw():
            x.add_grad(_unbroadcast(out.grad * c, x.value.shape))

        self._backward_ops.append(bw)
        return out

    def neg(self, x: Node) -> Node:
        return self.scale(x, -1.0)

    def square(self, x: Node) -> Node:
        out = Node(x.value * x.value)

        def bw():
            x.add_grad(out.grad * 2.0 * x.value)

        self._backward_ops.append(bw)
        return out

    def minimum(self, a: Node, b: Node) -> Node:
        take_a = a.value <= b.value
        out = Node(np.where(take_a, a.value, b.value))

        def bw():
            a.add_grad(out.grad * take_a)
            b.add_grad(out.grad * ~take_a)

        self._backward_ops.append(bw)
        return out

    def concat_cols(self, parts) -> Node:
        """Column-wise concat of nodes and constant arrays (all (B, d_i))."""
        values = [_val(p) for p in parts]
        out = Node(np.concatenate(values, axis=1))
        spans = []
        start = 0
        for v in values:
            spans.append((start, start + v.shape[1]))
            start += v.shape[1]

        def bw():
            for part, (lo, hi) in zip(parts, spans):
                if isinstance(part, Node):
                    part.add_grad(out.grad[:, lo:hi])

        self._backward_ops.append(bw)
        return out

    def sum_cols(self, x: Node) -> Node:
        """Row-wise sum (B,d) -> (B,1)."""
        out = Node(x.value.sum(axis=1, keepdims=True))

        def bw():
            x.add_grad(np.broadcast_to(out.grad, x.value.shape))

        self._backward_ops.append(bw)
        return out

    def mean(self, x: Node) -> Node:
        out = Node(np.array([x.value.mean()]))
        inv_n = 1.0 / x.value.size

        def bw():
            x.add_grad(np.full_like(x.value, out.grad[0] * inv_n))

        self._backward_ops.append(bw)
        return out

    def sum(self, x: Node) -> Node:
        out = Node(np.array([x.value.sum()]))

        def bw():
            x.add_grad(np.full_like(x.value, out.grad[0]))

        self._backward_ops.append(bw)
        return out

    # -- composite helpers ----------------------------------------------

    def tanh_log_jacobian(self, u: Node) -> Node:
        """log(1 - tanh(u)^2) elementwise, in the stable form
        2*(log 2 - u - softplus(-2u))."""
        sp = self.softplus(self.scale(u, -2.0))
        inner = self.sub(self.add(u, sp), LOG_2)
        return self.scale(inner, -2.0)

    # -- reverse sweep ---------------------------------------------------

    def backward(self, loss: Node) -> None:
        loss.grad = np.ones_like(loss.value)
        for op in reversed(self._backward_ops):
            op()


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum gradient over axes that were broadcast in the forward pass."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad

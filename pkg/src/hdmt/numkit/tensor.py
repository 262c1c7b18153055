"""Dense tensor helpers.

A "tensor" throughout the toolkit is a C-contiguous float64 numpy array.
Everything learnable (policy and critic weights, discriminator weights,
temperature) is stored this way, and every numeric seam checks finiteness:
a NaN or Inf is a contract violation, never silently propagated.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericError, ShapeError

Tensor = np.ndarray


def tensor(data, shape=None) -> Tensor:
    """Build a float64 tensor, optionally reshaped, validating finiteness."""
    arr = np.asarray(data, dtype=np.float64)
    if shape is not None:
        if int(np.prod(shape)) != arr.size:
            raise ShapeError(f"cannot view {arr.size} values as shape {tuple(shape)}")
        arr = arr.reshape(shape)
    check_finite(arr, "tensor")
    return arr


def zeros(shape) -> Tensor:
    return np.zeros(shape, dtype=np.float64)


def check_finite(arr: Tensor, what: str) -> Tensor:
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"non-finite values in {what}")
    return arr


def require_shape(arr: Tensor, shape: tuple, what: str) -> Tensor:
    if arr.shape != tuple(shape):
        raise ShapeError(f"{what}: expected shape {tuple(shape)}, got {arr.shape}")
    return arr

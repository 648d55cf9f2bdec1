"""Exact (quadratic) t-SNE with a deterministic schedule.

The pairwise kernels live in a compiled extension when available, with a
numpy fallback selected at import (`active_kernel()` names the one in use;
set PODIUM_FORCE_NUMPY=1 to pin the fallback). Determinism contract: for a
fixed seed the coordinates are bitwise reproducible, and rows are processed
in a canonical order keyed by row identity, so permuting the input rows
permutes the output exactly.
"""

from __future__ import annotations

import hashlib
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

if os.environ.get("PODIUM_FORCE_NUMPY"):
    from . import _kernels_np as _kernels
    _KERNEL_NAME = "numpy"
else:
    try:
        from . import _kernels_cy as _kernels  # type: ignore[attr-defined]
        _KERNEL_NAME = "cython"
    except ImportError:
        from . import _kernels_np as _kernels
        _KERNEL_NAME = "numpy"


def active_kernel() -> str:
    return _KERNEL_NAME


def get_kernels(name: str | None = None):
    """Kernel module by name ('cython'|'numpy'); default is the active one."""
    if name in (None, _KERNEL_NAME):
        return _kernels
    if name == "numpy":
        from . import _kernels_np
        return _kernels_np
    if name == "cython":
        from . import _kernels_cy  # type: ignore[attr-defined]
        return _kernels_cy
    raise ValueError(f"unknown kernel {name!r}")


@dataclass(frozen=True)
class TsneParams:
    perplexity: float = 10.0
    iterations: int = 1000
    early_exaggeration: float = 12.0
    exaggeration_iters: int = 250
    learning_rate: float = 200.0
    momentum_early: float = 0.5
    momentum_late: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 250:
            raise ValueError("iterations must be >= 250")


@dataclass(frozen=True)
class TsneResult:
    coords: np.ndarray
    kl_trace: tuple[float, ...]
    entropies: np.ndarray
    perplexity_used: float
    kernel: str = field(default_factory=active_kernel)


def _init_coords(keys: list[bytes], seed: int) -> np.ndarray:
    """Small-variance start, each row seeded by (seed, its own identity)."""
    y = np.empty((len(keys), 2))
    seed_bytes = str(seed).encode("ascii")
    for i, key in enumerate(keys):
        digest = hashlib.sha256(b"tsne-init:" + seed_bytes + b":" + key).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        y[i] = rng.normal(0.0, 1e-4, size=2)
    return y


def tsne(x, params: TsneParams | None = None, row_keys=None) -> TsneResult:
    """Embed the rows of x into 2-D.

    row_keys, when given, must be unique strings identifying rows (speech
    ids); otherwise a digest of each row's bytes is used.
    """
    params = params or TsneParams()
    x = np.ascontiguousarray(np.asarray(x, dtype=float))
    n = x.shape[0]
    if n < 3:
        raise ValueError("need at least 3 rows to embed")
    if not np.isfinite(x).all():
        raise ValueError("non-finite entries in embedding input")

    if row_keys is not None:
        keys = [str(k).encode("utf-8") for k in row_keys]
        if len(keys) != n:
            raise ValueError("row_keys length does not match matrix")
    else:
        keys = [hashlib.sha256(np.ascontiguousarray(row).tobytes()).digest() for row in x]

    # Canonical processing order tied to row identity: any permutation of
    # the input reproduces the identical internal computation.
    order = sorted(range(n), key=lambda i: keys[i])
    x_in = np.ascontiguousarray(x[order])
    keys_in = [keys[i] for i in order]

    perp = params.perplexity
    max_perp = (n - 1) / 3.0
    perp_used = max(1.0, min(perp, max_perp))
    if perp_used != perp:
        warnings.warn(f"perplexity clamped from {perp} to {perp_used} for n={n}", stacklevel=2)

    d = _kernels.pairwise_sq_dists(x_in)
    p_cond, entropies = _kernels.conditional_affinities(d, float(np.log2(perp_used)))
    p = (p_cond + p_cond.T) / (2.0 * n)
    p = np.maximum(p, 1e-12)
    np.fill_diagonal(p, 0.0)

    y = _init_coords(keys_in, params.seed)
    velocity = np.zeros_like(y)
    gains = np.ones_like(y)  # per-coordinate adaptive step sizes
    p_exagg = p * params.early_exaggeration
    kl_trace = []
    for it in range(params.iterations):
        grad_p = p_exagg if it < params.exaggeration_iters else p
        momentum = params.momentum_early if it < params.exaggeration_iters else params.momentum_late
        kl, grad = _kernels.kl_and_gradient(grad_p, p, y)
        if not np.isfinite(kl) or not np.isfinite(grad).all():
            raise ValueError(f"non-finite value at iteration {it}")
        same_sign = (grad > 0) == (velocity < 0)
        gains = np.where(same_sign, gains + 0.2, gains * 0.8)
        np.maximum(gains, 0.01, out=gains)
        velocity = momentum * velocity - params.learning_rate * gains * grad
        y = y + velocity
        y = y - y.mean(axis=0)
        kl_trace.append(kl)

    coords = np.empty_like(y)
    for pos, original in enumerate(order):
        coords[original] = y[pos]
    inv_entropies = np.empty_like(entropies)
    for pos, original in enumerate(order):
        inv_entropies[original] = entropies[pos]
    return TsneResult(
        coords=coords,
        kl_trace=tuple(kl_trace),
        entropies=inv_entropies,
        perplexity_used=perp_used,
    )

"""Vectorized numpy kernels for the t-SNE hot loop.

Fallback used when the compiled extension is unavailable; both kernel
modules expose the same three functions and must agree numerically.
"""

from __future__ import annotations

import numpy as np

_LN2 = float(np.log(2.0))


def pairwise_sq_dists(x: np.ndarray) -> np.ndarray:
    """Squared euclidean distance matrix with +inf on the diagonal."""
    sq = np.sum(x * x, axis=1)
    d = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d, 0.0, out=d)
    np.fill_diagonal(d, np.inf)
    return d


def _row_entropy_bits(d_row: np.ndarray, beta: float) -> tuple[float, np.ndarray]:
    """Shifted-exponent softmax of -beta*d plus its entropy in bits."""
    w = np.exp(-beta * (d_row - d_row.min(where=np.isfinite(d_row), initial=np.inf)))
    w[~np.isfinite(d_row)] = 0.0
    total = w.sum()
    p = w / total
    finite = p > 0
    h_nats = -float(np.sum(p[finite] * np.log(p[finite])))
    return h_nats / _LN2, p


def conditional_affinities(d: np.ndarray, target_entropy_bits: float,
                           max_iter: int = 50, tol: float = 1e-5):
    """Per-row precision search so each conditional distribution's entropy
    matches the target (log2 of the effective perplexity)."""
    n = d.shape[0]
    p = np.zeros((n, n))
    entropies = np.zeros(n)
    for i in range(n):
        beta, beta_lo, beta_hi = 1.0, 0.0, np.inf
        h, row = _row_entropy_bits(d[i], beta)
        for _ in range(max_iter):
            if abs(h - target_entropy_bits) <= tol:
                break
            if h > target_entropy_bits:
                beta_lo = beta
                beta = beta * 2.0 if not np.isfinite(beta_hi) else 0.5 * (beta_lo + beta_hi)
            else:
                beta_hi = beta
                beta = beta / 2.0 if beta_lo == 0.0 else 0.5 * (beta_lo + beta_hi)
            h, row = _row_entropy_bits(d[i], beta)
        p[i] = row
        entropies[i] = h
    return p, entropies


def kl_and_gradient(p_grad: np.ndarray, p_kl: np.ndarray, y: np.ndarray):
    """One exact t-SNE evaluation: KL(p_kl || Q) and the gradient of
    KL(p_grad || Q) at the current embedding y."""
    n = y.shape[0]
    sq = np.sum(y * y, axis=1)
    w = 1.0 / (1.0 + sq[:, None] + sq[None, :] - 2.0 * (y @ y.T))
    np.fill_diagonal(w, 0.0)
    z = w.sum()
    q = w / z

    mask = p_kl > 0
    kl = float(np.sum(p_kl[mask] * np.log(p_kl[mask] / np.maximum(q[mask], 1e-300))))

    m = (p_grad - q) * w
    grad = 4.0 * (y * m.sum(axis=1)[:, None] - m @ y)
    return kl, grad

"""NumPy implementations of the log-likelihood-ratio kernels."""

import numpy as np


def mixture_log_ratio(ys, log_weights, thetas, log_zs, n):
    with np.errstate(invalid="ignore"):
        terms = log_weights + n * (ys @ thetas.T - log_zs)
    terms = np.where(np.isnan(terms), -np.inf, terms)
    top = np.max(terms, axis=1)
    finite = np.isfinite(top)
    out = top.copy()
    shifted = terms[finite] - top[finite, None]
    out[finite] = top[finite] + np.log(np.exp(shifted).sum(axis=1))
    return out


def best_log_ratio(ys, thetas, log_zs, n):
    terms = n * (ys @ thetas.T - log_zs)
    k = terms.shape[1]
    # argmax of the reversed columns picks the last maximiser
    idx = k - 1 - np.argmax(terms[:, ::-1], axis=1)
    return terms[np.arange(len(terms)), idx], idx.astype(np.intp)

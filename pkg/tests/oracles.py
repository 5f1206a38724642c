"""Independent reference computations shared by the tests."""

import math

import numpy as np
from scipy import stats

from evgrow.expfam import natural_of_mean, scaled_bernoulli


def gh_objective(mu, w, lo, hi, nodes=200):
    """f(mu, w) for the unit Gaussian by Gauss-Hermite quadrature.

    ``w`` may be an array; the result then has the same shape.
    """
    x, wt = np.polynomial.hermite_e.hermegauss(nodes)
    y = mu + x
    w = np.asarray(w, dtype=float)[..., None]
    lr = np.logaddexp(np.log1p(-w) + lo * y - lo * lo / 2, np.log(w) + hi * y - hi * hi / 2)
    out = lr @ wt / math.sqrt(2 * math.pi)
    return float(out) if out.ndim == 0 else out


def exact_bernoulli_objective(p, n, mu, w, lo, hi):
    """f(mu, w) for the scaled Bernoulli by summing over binomial counts."""
    fam = scaled_bernoulli(p)
    k = np.arange(n + 1)
    y = (k / n - p) / (p * (1 - p))
    q = p + mu * p * (1 - p)
    thetas = [float(natural_of_mean(fam, m)) for m in (lo, hi)]
    lzs = [float(fam.log_partition(np.array([[t]]))[0]) for t in thetas]
    lr = np.logaddexp(math.log1p(-w) + n * (thetas[0] * y - lzs[0]),
                      math.log(w) + n * (thetas[1] * y - lzs[1]))
    return float(stats.binom.pmf(k, n, q) @ lr)


def circle_mmreg(a, n):
    """Closed-form log normaliser for the d = 2 Gaussian circle of radius a."""
    return math.log(math.exp(-n * a * a / 2) + a * math.sqrt(2 * math.pi * n) * stats.norm.cdf(a * math.sqrt(n)))


def binary_kl(q, p):
    return q * math.log(q / p) + (1 - q) * math.log((1 - q) / (1 - p))

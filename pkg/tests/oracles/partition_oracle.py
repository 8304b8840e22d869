"""Direct evaluation of the partition formulas with mpmath and plain loops."""
import mpmath as mp

from .arith_oracle import primes_upto


def partition(T, K):
    with mp.workdps(30):
        L = mp.log(T)
        X = mp.e ** (L ** (1 - mp.mpf(1) / K))
        sigma0 = mp.mpf(1) / 2 + L ** (mp.mpf(3) / (2 * K)) / L
        bounds = [mp.e ** (L ** (mp.mpf(j) / K)) for j in range(1, K)]
        return float(X), float(sigma0), [float(b) for b in bounds]


def layer_primes(T, K, j):
    X, sigma0, b = partition(T, K)
    edges = [2.0] + b
    lo, hi = edges[j], edges[j + 1]
    return [p for p in primes_upto(hi) if (p >= lo if j == 0 else p > lo)], sigma0


def s2_rho(T, K, j, tau):
    ps, sigma0 = layer_primes(T, K, j)
    with mp.workdps(30):
        s2 = sum(mp.mpf(p) ** (-2 * mp.mpf(sigma0)) for p in ps) / 2
        rho = sum(mp.mpf(p) ** (-2 * mp.mpf(sigma0)) * mp.cos(tau * mp.log(p)) for p in ps) / 2
        return float(s2), float(rho)


def prime_poly(T, K, j, u):
    ps, sigma0 = layer_primes(T, K, j)
    with mp.workdps(40):
        return complex(sum(mp.mpf(p) ** (-mp.mpc(sigma0, u)) for p in ps))

"""Brute-force trial-division oracles, written independently of the package."""


def factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def count_primes(limit):
    """Trial division by the primes found so far, up to sqrt(n)."""
    found = []
    for n in range(2, limit + 1):
        ok = True
        for p in found:
            if p * p > n:
                break
            if n % p == 0:
                ok = False
                break
        if ok:
            found.append(n)
    return len(found)


def mobius(n):
    f = factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def big_omega(n):
    return sum(factor(n).values())


def lambda_over_log(n):
    f = factor(n)
    return 1.0 / next(iter(f.values())) if len(f) == 1 else 0.0


def squarefree_smooth(X, nu, cap):
    """Brute force: squarefree n <= cap, prime factors < X, omega <= nu."""
    out = {}
    for n in range(1, int(cap) + 1):
        f = factor(n)
        if any(e > 1 for e in f.values()):
            continue
        if any(p >= X for p in f):
            continue
        if len(f) > nu:
            continue
        out[n] = (-1) ** len(f)
    return out


def primes_upto(n):
    return [k for k in range(2, int(n) + 1) if is_prime(k)]

"""Elementary number theory helpers: factorization, divisors, characters."""
from __future__ import annotations

import math
from functools import lru_cache

from .errors import FactorizationTimeout

_SMALL_PRIME_BOUND = 1 << 16
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    return tuple(_sieve(_SMALL_PRIME_BOUND))


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, max_steps: int) -> int | None:
    if n % 2 == 0:
        return 2
    for c in range(1, 32):
        x = y = 2
        d = 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
            if steps > max_steps:
                break
        if 1 < d < n:
            return d
    return None


def factorize(n: int, *, rho_steps: int = 1_000_000) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division by the small prime table, then Miller-Rabin plus Pollard
    rho for whatever remains.  Raises FactorizationTimeout if a composite
    cofactor survives the rho budget.
    """
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rho_steps)
        if d is None:
            raise FactorizationTimeout(f"could not split composite {m}")
        stack.append(d)
        stack.append(m // d)
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n| (n != 0)."""
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("need n >= 1")
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def sigma1(n: int) -> int:
    """Sum of positive divisors."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = 1
    for p, e in factorize(n).items():
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """n = s * f^2 with s squarefree; returns (s, f).  Requires n >= 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    s, f = 1, 1
    for p, e in factorize(n).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


def is_squarefree(n: int) -> bool:
    return squarefree_decomposition(n)[0] == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n) with the standard extensions at 0, -1 and 2."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos % 2 == 1 and a % 8 in (3, 5):
        result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def integer_roots_monic_cubic(p: int, q: int) -> list[int]:
    """Integer roots of x^3 + p*x + q."""
    if q == 0:
        roots = [0]
        if p < 0:
            s = math.isqrt(-p)
            if s * s == -p:
                roots.extend([s, -s])
        return sorted(set(roots))
    roots = []
    for d in divisors(q):
        for x in (d, -d):
            if x * x * x + p * x + q == 0:
                roots.append(x)
    return sorted(set(roots))


def poly_resultant(p: list[int], q: list[int]) -> int:
    """Resultant of two integer polynomials (coefficients highest-first).

    Bareiss fraction-free elimination on the Sylvester matrix; exact.
    """
    while p and p[0] == 0:
        p = p[1:]
    while q and q[0] == 0:
        q = q[1:]
    m, n = len(p) - 1, len(q) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(p):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(q):
            M[n + i][i + j] = c
    sign = 1
    prev = 1
    for k in range(size - 1):
        if M[k][k] == 0:
            for r in range(k + 1, size):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[size - 1][size - 1]

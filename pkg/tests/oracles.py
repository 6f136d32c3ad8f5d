"""Independent high-precision references used across the test suite."""

import mpmath as mp

DPS = 60


def a_coefficients(alpha, K):
    """``a_0 .. a_K`` from the exact Taylor coefficients of ``cos(2(n+1)x)``.

    ``S(n) = sin((n+1)x)**2 / sin(x)**2 = (1 - cos(2(n+1)x)) / (2 sin(x)**2)``
    has k-th coefficient ``-(2x)**k cos(2x + k pi/2) / (k! 2 sin(x)**2)``.
    Then ``a(n) = (S(n) - 1 - n) / (n (n+1))``.
    """
    with mp.workdps(DPS):
        x = mp.pi * mp.mpf(alpha) / 2
        two_s2 = 2 * mp.sin(x) ** 2
        M = K + 2
        S = [mp.mpf(1)]
        for k in range(1, M + 1):
            S.append(-((2 * x) ** k) * mp.cos(2 * x + k * mp.pi / 2) / (mp.factorial(k) * two_s2))
        S[1] -= 1
        h = S[1:]  # (S - 1 - n) / n
        out = []
        acc = mp.mpf(0)
        for k in range(K + 1):
            acc = h[k] - acc
            out.append(acc)
        return [float(v) for v in out], out


def reverted(alpha, K):
    """``alpha_1 .. alpha_K`` by fixed-point substitution in 1/g at high precision.

    ``g = 1/n + sum_j a_j n**j`` gives ``n = u (1 + sum_j a_j n**(j+1))`` with
    ``u = 1/g``, iterated as a truncated series in ``u``.  This avoids the
    Lagrange inversion used by the package.
    """
    _, a = a_coefficients(alpha, K)
    with mp.workdps(DPS):
        def mul(p, q):
            r = [mp.mpf(0)] * (K + 1)
            for i, pi in enumerate(p):
                if pi == 0:
                    continue
                for j in range(K + 1 - i):
                    r[i + j] += pi * q[j]
            return r

        n = [mp.mpf(0)] * (K + 1)
        n[1] = mp.mpf(1)
        for _ in range(K + 2):
            phi = [mp.mpf(0)] * (K + 1)
            phi[0] = mp.mpf(1)
            power = mul(n, n)
            for j in range(1, K):
                for i in range(K + 1):
                    phi[i] += a[j] * power[i]
                power = mul(power, n)
            n = [mp.mpf(0)] + phi[:K]
        return [float(v) for v in n[1:]]


def occupation_root(alpha, t):
    """Smallest positive root of the occupation equation at 50 digits."""
    with mp.workdps(50):
        alpha = mp.mpf(alpha)
        t = mp.mpf(t)
        x = mp.pi * alpha / 2

        def phi(n):
            return 2 * mp.log(abs(mp.sin((n + 1) * x) / mp.sin(x))) - mp.log(n) - mp.log1p(n) - t

        cap = 2 / alpha - 1 if alpha > 0 else mp.mpf(10) ** 30
        lo = mp.mpf(10) ** -40
        hi = cap * (1 - mp.mpf(10) ** -30)
        return float(mp.findroot(phi, (lo, hi), solver="anderson"))

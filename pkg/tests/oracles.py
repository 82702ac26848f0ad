"""
Independent reference routines for the tests.

Nothing here imports the package: Schur functions come from the
Jacobi-Trudi determinant in complete homogeneous functions, with h_n
expanded in power sums as sum over partitions of p_lambda / z_lambda.
"""

from collections import Counter
from fractions import Fraction
from itertools import permutations
from math import factorial


def _partitions(n, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _z(lam):
    out = 1
    for k, m in Counter(lam).items():
        out *= k**m * factorial(m)
    return out


def _mul(f, g):
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            key = tuple(sorted(a + b, reverse=True))
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def complete_h(n):
    """h_n in the power-sum basis, as {partition tuple: Fraction}."""
    if n < 0:
        return {}
    return {lam: Fraction(1, _z(lam)) for lam in _partitions(n)}


def _sign(perm):
    s = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def schur_jacobi_trudi(lam):
    """s_lambda = det(h_{lambda_i - i + j}) in the power-sum basis."""
    lam = tuple(p for p in lam if p)
    n = len(lam)
    if n == 0:
        return {(): Fraction(1)}
    total = {}
    for perm in permutations(range(n)):
        term = {(): Fraction(_sign(perm))}
        for i in range(n):
            h = complete_h(lam[i] - i + perm[i])
            if not h:
                term = {}
                break
            term = _mul(term, h)
        for k, v in term.items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}

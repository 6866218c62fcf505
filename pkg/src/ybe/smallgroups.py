"""Multiplication tables for the groups of small order, and their left
regular permutation representations.

Used to enumerate uniconnected cycle sets (whose permutation group acts
regularly, hence is one of these up to relabeling) and to seed brace
searches with every abelian additive structure of a given order.
"""

from __future__ import annotations

import itertools

from .perm import Perm, PermGroup


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Direct product, pairs flattened row-major: (x,s) -> x*|B| + s."""
    na, nb = len(a), len(b)

    def idx(x, s):
        return x * nb + s

    n = na * nb
    table = [[0] * n for _ in range(n)]
    for x, s, y, t in itertools.product(range(na), range(nb), range(na), range(nb)):
        table[idx(x, s)][idx(y, t)] = idx(a[x][y], b[s][t])
    return table


def dihedral_table(m: int) -> list[list[int]]:
    """Dihedral group of order 2m; element r^i s^e encoded as 2*i + e."""
    n = 2 * m

    def mul(g, h):
        i, e = divmod(g, 2)
        j, f = divmod(h, 2)
        if e == 0:
            return 2 * ((i + j) % m) + f
        return 2 * ((i - j) % m) + (1 - f)

    return [[mul(g, h) for h in range(n)] for g in range(n)]


def quaternion_table() -> list[list[int]]:
    """Q8 = {1,-1,i,-i,j,-j,k,-k}, with 0 the identity."""
    # encode as (sign, axis): index = 2*axis + (sign < 0), axis in 1,i,j,k
    names = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    # quaternion unit products: axis table and sign table
    axis_mul = [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ]
    sign_mul = [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [1, 1, -1, -1],
    ]

    def mul(g, h):
        sg, ag = names[g]
        sh, ah = names[h]
        s = sg * sh * sign_mul[ag][ah]
        a = axis_mul[ag][ah]
        return names.index((s, a))

    return [[mul(g, h) for h in range(8)] for g in range(8)]


def abelian_group_tables(n: int) -> list[list[list[int]]]:
    """One table per isomorphism class of abelian group of order n."""
    factorizations = _prime_power_partitions(n)
    tables = []
    for parts in factorizations:
        table = [[0]]
        for q in parts:
            table = product_table(table, cyclic_table(q))
        tables.append(table)
    return tables


def _prime_power_partitions(n: int) -> list[tuple[int, ...]]:
    """All multisets of prime powers whose product is n, one per abelian
    isomorphism class (partition of each prime's exponent)."""
    primes = {}
    m, d = n, 2
    while d * d <= m:
        while m % d == 0:
            primes[d] = primes.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        primes[m] = primes.get(m, 0) + 1

    def partitions(k):
        if k == 0:
            yield []
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield [first] + rest

    per_prime = []
    for p, e in primes.items():
        per_prime.append([tuple(p ** i for i in part) for part in partitions(e)])
    out = []
    for combo in itertools.product(*per_prime) if per_prime else [()]:
        flat = tuple(q for group in combo for q in group)
        out.append(flat)
    return out


def all_group_tables(n: int) -> list[list[list[int]]]:
    """One multiplication table per isomorphism class of group of order n.

    Complete for n <= 8 (beyond the abelian ones: D3, D4, Q8).
    """
    if n > 8:
        raise ValueError("group tables are tabulated for orders <= 8 only")
    tables = abelian_group_tables(n)
    if n == 6:
        tables.append(dihedral_table(3))
    elif n == 8:
        tables.append(dihedral_table(4))
        tables.append(quaternion_table())
    return tables


def regular_representation(table: list[list[int]]) -> PermGroup:
    """Left regular representation: g acts by h -> g*h."""
    n = len(table)
    gens = [Perm(row) for row in table]
    return PermGroup(n, gens)

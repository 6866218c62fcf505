"""One-generator left braces: generated sub-brace closure, lambda-cyclicity,
the multipermutation-level-2 characterization via transitive cycle bases, and
the (A,+,psi) presentation of level-2 one-generator braces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .brace import (
    BraceError,
    LeftBrace,
    brace_mpl,
    require_valid_brace,
    transitive_cycle_bases,
)
from .cycleset import CycleSet, is_indecomposable, multipermutation_level, require_valid
from .perm import Perm, PermGroup, closure, is_cyclic


@dataclass
class GeneratedSubbrace:
    generator: int
    levels: list[frozenset[int]]
    closure: frozenset[int]


def _level_step(b: LeftBrace, prev: frozenset[int]) -> frozenset[int]:
    out = set(prev)
    inv = [b.inv(s) for s in prev]
    for s, t in itertools.product(prev, repeat=2):
        out.add(b.add[s][t])
        out.add(b.add[s][b.neg(t)])
        out.add(b.circ[s][t])
    for s in prev:
        for ti in inv:
            out.add(b.circ[s][ti])
            out.add(b.circ[ti][s])
    return frozenset(out)


def generated_subbrace(b: LeftBrace, x: int) -> GeneratedSubbrace:
    """The smallest sub-brace containing x, by iterating the closure levels
    A_0 = {x,-x,x^-,0}, A_i = (A+A) u (A-A) u (AoA) u (AoA^-) u (A^-oA)."""
    levels = [frozenset({x, b.neg(x), b.inv(x), 0})]
    while True:
        nxt = _level_step(b, levels[-1])
        if nxt == levels[-1]:
            break
        levels.append(nxt)
    closure = levels[-1]
    assert _is_subbrace(b, closure)
    if b.n <= 8:
        smallest = frozenset.intersection(
            *[s for s in all_subbraces(b) if x in s]
        )
        assert closure == smallest, "closure must be the minimal sub-brace"
    return GeneratedSubbrace(x, levels, closure)


def _is_subbrace(b: LeftBrace, pts: frozenset[int]) -> bool:
    return (
        0 in pts
        and all(b.add[s][t] in pts and b.circ[s][t] in pts for s in pts for t in pts)
        and all(b.neg(s) in pts and b.inv(s) in pts for s in pts)
    )


def all_subbraces(b: LeftBrace) -> list[frozenset[int]]:
    """Every subset closed under both operations; only sensible at desk
    scale (exhaustive over subsets containing 0)."""
    if b.n > 12:
        raise ValueError("sub-brace sweep capped at order 12")
    rest = [a for a in range(b.n) if a != 0]
    out = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            pts = frozenset((0,) + combo)
            if _is_subbrace(b, pts):
                out.append(pts)
    return out


def is_one_generator(b: LeftBrace) -> int | None:
    """The first x (in element order) with A(x) = A, or None."""
    for x in range(b.n):
        if len(generated_subbrace(b, x).closure) == b.n:
            return x
    return None


def lambda_image_group(b: LeftBrace) -> PermGroup:
    return closure(set(b.lambda_table()))


def is_lambda_cyclic(b: LeftBrace) -> bool:
    return is_cyclic(lambda_image_group(b))


def lambda_additive(b: LeftBrace) -> bool:
    """Whether lambda is also a homomorphism from (A,+)."""
    lam = b.lambda_table()
    return all(
        lam[b.add[x][y]] == lam[x] * lam[y]
        for x in range(b.n)
        for y in range(x, b.n)
    )


def trivial_onegen_check(b: LeftBrace, x: int) -> bool:
    """For A = A(x): lambda_x fixes x iff the brace is trivial with (A,+)
    generated by x.  Returns whether the two sides agree."""
    if len(generated_subbrace(b, x).closure) != b.n:
        raise BraceError("x does not generate the brace")
    fixes = b.lam(x)(x) == x
    cyclic = _additive_closure(b, x) == b.n
    return fixes == (b.is_trivial() and cyclic)


def _additive_closure(b: LeftBrace, x: int) -> int:
    seen = {0}
    a = x
    while a != 0:
        seen.add(a)
        a = b.add[a][x]
    return len(seen)


@dataclass
class Mpl2Report:
    generator: int | None
    mpl: int | None
    one_generator_mpl2: bool
    base_witness: tuple[int, ...] | None
    consistent: bool


def mpl2_characterization(b: LeftBrace) -> Mpl2Report:
    """Check the equivalence: A is a one-generator brace of
    multipermutation level 2 iff A has a transitive cycle base X with
    |X| > 1 inducing an indecomposable cycle set of level 1."""
    gen = is_one_generator(b)
    mpl = brace_mpl(b)
    left = gen is not None and mpl == 2
    witness = None
    lam = b.lambda_table()
    lam_inv = [p.inverse() for p in lam]
    for base in transitive_cycle_bases(b):
        pts = base.points
        if len(pts) <= 1:
            continue
        idx = {p: i for i, p in enumerate(pts)}
        table = [[idx[lam_inv[x](y)] for y in pts] for x in pts]
        cs = require_valid(CycleSet(table))
        if multipermutation_level(cs) == 1 and is_indecomposable(cs):
            witness = pts
            break
    return Mpl2Report(gen, mpl, left, witness, left == (witness is not None))


def psi_presentation_check(add, psi: Perm, x: int) -> LeftBrace | None:
    """Build the level-2 one-generator brace presented by an abelian group
    with automorphism psi and orbit generator x, or None when the
    presentation conditions fail.

    Condition 1: the psi-orbit of x has size > 1 and generates (A,+).
    Condition 2: every additive relation among orbit elements forces the
    corresponding power of psi to be the identity (checked completely via
    the subgroup of A x Z/ord(psi) generated by the pairs (xi, 1)).
    """
    add = tuple(tuple(row) for row in add)
    n = len(add)
    if psi.degree != n or not all(
        psi(add[a][c]) == add[psi(a)][psi(c)] for a in range(n) for c in range(n)
    ):
        raise ValueError("psi is not an automorphism of the additive group")
    neg = [next(c for c in range(n) if add[a][c] == 0) for a in range(n)]

    orbit = [x]
    y = psi(x)
    while y != x:
        orbit.append(y)
        y = psi(y)
    if len(orbit) <= 1:
        return None
    gen = {0}
    while True:
        new = {add[a][c] for a in gen for c in gen} | set(orbit)
        if new <= gen:
            break
        gen |= new
    if len(gen) != n:
        return None

    m = psi.order()
    # subgroup of A x Z/m generated by (xi, 1); condition 2 says it meets
    # {0} x Z/m only in (0,0), making the weight a well-defined hom on A
    pairs = {(0, 0)}
    frontier = [(0, 0)]
    gens = [(xi, 1) for xi in orbit] + [(neg[xi], m - 1) for xi in orbit]
    while frontier:
        a, k = frontier.pop()
        for ga, gk in gens:
            q = (add[a][ga], (k + gk) % m)
            if q not in pairs:
                pairs.add(q)
                frontier.append(q)
    weight = {}
    for a, k in pairs:
        if a in weight and weight[a] != k:
            return None
        weight[a] = k

    lam = [psi ** weight[a] for a in range(n)]
    circ = [[add[a][lam[a](c)] for c in range(n)] for a in range(n)]
    brace = require_valid_brace(LeftBrace(add, circ))
    assert is_one_generator(brace) is not None
    assert brace_mpl(brace) == 2
    return brace


def is_one_generator_witnessed(b: LeftBrace, x: int) -> bool:
    return len(generated_subbrace(b, x).closure) == b.n

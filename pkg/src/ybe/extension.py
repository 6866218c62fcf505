"""Dynamical cocycles and extensions of cycle sets: general (two fiber
arguments), constant one-variable, orthogonality of the induced block
systems, the fiber-transitivity criterion, and semidirect products.

Points of an extension on X x S are flattened as (x, s) -> x*|S| + s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .cycleset import (
    CycleSet,
    is_indecomposable,
    is_latin,
    require_valid,
    retract,
    validate,
)
from .perm import BlockSystem, Perm, PermGroup, are_orthogonal


class CocycleError(ValueError):
    pass


def _flatten(x: int, s: int, m: int) -> int:
    return x * m + s


@dataclass(frozen=True)
class FullCocycle:
    """alpha[x][y][s] is the permutation alpha_{(x,y)}(s,-) of the fiber."""

    base: CycleSet
    fiber: int
    alpha: tuple  # alpha[x][y][s] -> Perm

    def __post_init__(self):
        n, m = self.base.n, self.fiber
        if len(self.alpha) != n or any(len(row) != n for row in self.alpha):
            raise ValueError("alpha must be indexed by pairs of base points")
        for row in self.alpha:
            for entry in row:
                if len(entry) != m or any(p.degree != m for p in entry):
                    raise ValueError("fiber permutations must have degree |S|")


@dataclass
class CocycleReport:
    valid: bool
    constant: bool
    witness: tuple | None = None


def validate_cocycle(c: FullCocycle) -> CocycleReport:
    """Exhaustive check of the dynamical cocycle equation over all base
    triples and fiber triples; also reports constancy in the first fiber
    argument."""
    require_valid(c.base)
    n, m, a, t = c.base.n, c.fiber, c.alpha, c.base.table
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz = t[x][y], t[x][z]
        yx, yz = t[y][x], t[y][z]
        for r, s, u in itertools.product(range(m), repeat=3):
            lhs = a[xy][xz][a[x][y][r](s)](a[x][z][r](u))
            rhs = a[yx][yz][a[y][x][s](r)](a[y][z][s](u))
            if lhs != rhs:
                return CocycleReport(False, _is_constant(c), (x, y, z, r, s, u))
    return CocycleReport(True, _is_constant(c))


def _is_constant(c: FullCocycle) -> bool:
    return all(
        c.alpha[x][y][s] == c.alpha[x][y][0]
        for x in range(c.base.n)
        for y in range(c.base.n)
        for s in range(1, c.fiber)
    )


def build_extension(c: FullCocycle) -> CycleSet:
    """(x,s).(y,t) = (x.y, alpha_{(x,y)}(s,t)) on X x S."""
    report = validate_cocycle(c)
    if not report.valid:
        raise CocycleError(f"cocycle equation fails at {report.witness}")
    n, m, t = c.base.n, c.fiber, c.base.table
    size = n * m
    table = [[0] * size for _ in range(size)]
    for x, s, y, u in itertools.product(range(n), range(m), range(n), range(m)):
        table[_flatten(x, s, m)][_flatten(y, u, m)] = _flatten(
            t[x][y], c.alpha[x][y][s](u), m
        )
    return require_valid(CycleSet(table))


# ---------------------------------------------------------------------------
# Constant orthogonal extensions (one-variable cocycles)


@dataclass(frozen=True)
class OneVarCocycle:
    """alpha[x] is a fiber permutation; feeds the constant extension
    (x,s).(y,t) = (x.y, alpha_x(t))."""

    base: CycleSet
    fiber: int
    alpha: tuple[Perm, ...]

    def __post_init__(self):
        if len(self.alpha) != self.base.n:
            raise ValueError("need one fiber permutation per base point")
        if any(p.degree != self.fiber for p in self.alpha):
            raise ValueError("fiber permutations must have degree |S|")

    def compatibility_witness(self) -> tuple[int, int] | None:
        """First (x, y) violating alpha_{x.y} alpha_x = alpha_{y.x} alpha_y."""
        t, a = self.base.table, self.alpha
        for x, y in itertools.product(range(self.base.n), repeat=2):
            if a[t[x][y]] * a[x] != a[t[y][x]] * a[y]:
                return (x, y)
        return None

    def as_full_cocycle(self) -> FullCocycle:
        n, m = self.base.n, self.fiber
        alpha = tuple(
            tuple(tuple(self.alpha[x] for _ in range(m)) for _ in range(n))
            for x in range(n)
        )
        return FullCocycle(self.base, m, alpha)


def _pair_closure(c: OneVarCocycle) -> set[tuple[tuple, tuple]]:
    """Closure of the pairs (sigma_x, alpha_x) under composition."""
    n = c.base.n
    gens = [(c.base.sigma(x), c.alpha[x]) for x in range(n)]
    gens += [(u.inverse(), v.inverse()) for u, v in gens]
    ident = (Perm.identity(n), Perm.identity(c.fiber))
    seen = {(ident[0].images, ident[1].images)}
    frontier = [ident]
    while frontier:
        nxt = []
        for u, v in frontier:
            for gu, gv in gens:
                w = (gu * u, gv * v)
                key = (w[0].images, w[1].images)
                if key not in seen:
                    seen.add(key)
                    nxt.append(w)
        frontier = nxt
    return seen


def h_y_subgroup(c: OneVarCocycle, y: int) -> tuple[PermGroup, bool]:
    """The fiber action of the words whose base word fixes y, and whether
    it is transitive on the fiber."""
    if c.compatibility_witness() is not None:
        raise CocycleError("cocycle compatibility fails")
    pairs = _pair_closure(c)
    fiber_parts = sorted({v for u, v in pairs if u[y] == y})
    perms = tuple(Perm(v) for v in fiber_parts)
    group = PermGroup(c.fiber, perms, _elements=perms)
    # the fiber parts form a group, so the orbit of 0 is just its image set
    transitive = len({p(0) for p in perms}) == c.fiber
    return group, transitive


@dataclass
class ConstantExtension:
    """A built constant extension together with its orthogonality data."""

    cycle_set: CycleSet
    cocycle: OneVarCocycle
    indecomposable: bool
    h_group: PermGroup
    base_blocks: BlockSystem  # {x} x S for each x
    fiber_blocks: BlockSystem  # X x {s} for each s

    @property
    def orthogonal(self) -> bool:
        return self.indecomposable and are_orthogonal(
            self.base_blocks, self.fiber_blocks
        )


def build_constant_orthogonal(c: OneVarCocycle) -> ConstantExtension:
    """Build (x,s).(y,t) = (x.y, alpha_x(t)) and decide orthogonality via
    the fiber-transitivity criterion.

    When the criterion fails the (still valid) cycle set is returned with
    indecomposable=False.
    """
    witness = c.compatibility_witness()
    if witness is not None:
        raise CocycleError(f"compatibility fails at (x,y)={witness}")
    if not is_indecomposable(c.base):
        raise CocycleError("base cycle set must be indecomposable")
    n, m, t = c.base.n, c.fiber, c.base.table
    size = n * m
    table = [[0] * size for _ in range(size)]
    for x, s, y, u in itertools.product(range(n), range(m), range(n), range(m)):
        table[_flatten(x, s, m)][_flatten(y, u, m)] = _flatten(
            t[x][y], c.alpha[x](u), m
        )
    cs = require_valid(CycleSet(table))
    h_group, transitive = h_y_subgroup(c, 0)
    base_blocks = BlockSystem.from_cells(
        size, [[_flatten(x, s, m) for s in range(m)] for x in range(n)]
    )
    fiber_blocks = BlockSystem.from_cells(
        size, [[_flatten(x, s, m) for x in range(n)] for s in range(m)]
    )
    return ConstantExtension(cs, c, transitive, h_group, base_blocks, fiber_blocks)


def refinement_check(ext: ConstantExtension) -> bool:
    """True iff each retraction class of the extension is a union of base
    blocks {x} x S."""
    if not ext.indecomposable:
        raise ValueError("refinement check needs an indecomposable extension")
    m = ext.cocycle.fiber
    _, proj = retract(ext.cycle_set)
    for x in range(ext.cocycle.base.n):
        cls = {proj[_flatten(x, s, m)] for s in range(m)}
        if len(cls) != 1:
            return False
    return True


def constant_to_onevar(
    full: FullCocycle, orthogonal_system: BlockSystem
) -> tuple[OneVarCocycle, list[Perm]]:
    """Realize the fiber relabeling that turns a constant full cocycle with
    an orthogonal block system into a one-variable cocycle.

    Each orthogonal block meets {x} x S in one point; its block index is
    the new fiber label of that point.  Returns the induced one-variable
    cocycle and the per-base-point relabelings.
    """
    if not _is_constant(full):
        raise CocycleError("cocycle is not constant")
    n, m = full.base.n, full.fiber
    if len(orthogonal_system.blocks) != m:
        raise CocycleError("orthogonal system must have one block per fiber label")
    relabel = []
    for x in range(n):
        images = [0] * m
        for s in range(m):
            images[s] = orthogonal_system.cell_of(_flatten(x, s, m))
        relabel.append(Perm(images))
    # transport the extension table into the new fiber coordinates and read
    # off the (now y-independent) fiber action
    t = full.base.table
    alpha = []
    for x in range(n):
        p = None
        for y in range(n):
            q = relabel[t[x][y]] * full.alpha[x][y][0] * relabel[y].inverse()
            if p is None:
                p = q
            elif p != q:
                raise CocycleError(
                    "relabeled cocycle still depends on the second base point"
                )
        alpha.append(p)
    return OneVarCocycle(full.base, m, tuple(alpha)), relabel


# ---------------------------------------------------------------------------
# Semidirect products of cycle sets


def _is_cycleset_automorphism(s: CycleSet, p: Perm) -> bool:
    return all(
        p(s.table[u][v]) == s.table[p(u)][p(v)]
        for u in range(s.n)
        for v in range(s.n)
    )


def semidirect_product(x: CycleSet, s: CycleSet, alpha) -> CycleSet:
    """Semidirect product of cycle sets: (x,u).(y,t) = (x.y, alpha_x(u.t)).

    Each alpha_x must be a cycle-set automorphism of s and alpha must
    satisfy the cocycle compatibility on x.
    """
    require_valid(x)
    require_valid(s)
    alpha = tuple(alpha)
    if len(alpha) != x.n:
        raise ValueError("need one automorphism per point of the base")
    for i, p in enumerate(alpha):
        if not _is_cycleset_automorphism(s, p):
            raise CocycleError(f"alpha_{i} is not an automorphism of the fiber")
    for a, b in itertools.product(range(x.n), repeat=2):
        if alpha[x.table[a][b]] * alpha[a] != alpha[x.table[b][a]] * alpha[b]:
            raise CocycleError(f"compatibility fails at (x,y)=({a},{b})")
    m = s.n
    size = x.n * m
    table = [[0] * size for _ in range(size)]
    for a, u, b, t in itertools.product(range(x.n), range(m), range(x.n), range(m)):
        table[_flatten(a, u, m)][_flatten(b, t, m)] = _flatten(
            x.table[a][b], alpha[a](s.table[u][t]), m
        )
    return require_valid(CycleSet(table))


def is_quasigroup_semidirect(x: CycleSet, s: CycleSet, alpha) -> bool:
    """Latin-ness of the semidirect product; asserts the equivalence with
    both factors being latin."""
    product = semidirect_product(x, s, alpha)
    result = is_latin(product)
    assert result == (is_latin(x) and is_latin(s)), (
        "quasigroup criterion violated: product latin-ness disagrees with factors"
    )
    return result

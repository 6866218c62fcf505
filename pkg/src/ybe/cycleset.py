"""Cycle sets: validation, the one-to-one correspondence with involutive
non-degenerate solutions, retraction, multipermutation level, products,
isomorphism, and exhaustive enumeration.

A cycle set is an n x n table with table[x][y] = x . y, every row a
permutation, satisfying (x.y).(x.z) = (y.x).(y.z) and with bijective
squaring map (all cycle sets here are non-degenerate).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .perm import Perm, PermGroup, closure, is_regular, is_transitive
from .smallgroups import all_group_tables, regular_representation


class InvalidCycleSet(ValueError):
    pass


class InvalidSolution(ValueError):
    pass


def _check_table(n, table):
    if len(table) != n:
        raise ValueError(f"expected {n} rows, got {len(table)}")
    for row in table:
        if len(row) != n:
            raise ValueError("table is not square")
        for v in row:
            if not (isinstance(v, int) and 0 <= v < n):
                raise ValueError(f"entry {v!r} out of range 0..{n - 1}")


class CycleSet:
    """Finite binary system (X, .) given by its operation table."""

    __slots__ = ("n", "table")

    def __init__(self, table):
        table = tuple(tuple(row) for row in table)
        _check_table(len(table), table)
        self.n = len(table)
        self.table = table

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def sigma(self, x: int) -> Perm:
        return Perm(self.table[x])

    def __eq__(self, other):
        return isinstance(other, CycleSet) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"CycleSet({[list(r) for r in self.table]})"


@dataclass
class ValidationReport:
    rows_bijective: bool
    cycloid: bool
    nondegenerate: bool
    # minimal witnesses for each failed axiom
    bad_row: int | None = None
    bad_triple: tuple[int, int, int] | None = None
    bad_square_pair: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.rows_bijective and self.cycloid and self.nondegenerate

    def describe(self) -> str:
        parts = []
        parts.append("rows bijective: " + ("pass" if self.rows_bijective else f"FAIL (row {self.bad_row})"))
        parts.append("cycloid law: " + ("pass" if self.cycloid else f"FAIL at {self.bad_triple}"))
        parts.append("non-degenerate: " + ("pass" if self.nondegenerate else f"FAIL ({self.bad_square_pair} share a square)"))
        return "; ".join(parts)


def validate(cs: CycleSet) -> ValidationReport:
    """Check the cycle-set axioms, reporting all failures with witnesses."""
    n, t = cs.n, cs.table
    rows_ok, bad_row = True, None
    for x in range(n):
        if sorted(t[x]) != list(range(n)):
            rows_ok, bad_row = False, x
            break
    cycloid_ok, bad_triple = True, None
    if rows_ok:
        for x, y in itertools.product(range(n), repeat=2):
            if x == y:
                continue
            rxy, ryx = t[t[x][y]], t[t[y][x]]
            rx, ry = t[x], t[y]
            for z in range(n):
                if rxy[rx[z]] != ryx[ry[z]]:
                    cycloid_ok, bad_triple = False, (x, y, z)
                    break
            if not cycloid_ok:
                break
    nondeg_ok, bad_pair = True, None
    squares = [t[x][x] for x in range(n)]
    if len(set(squares)) != n:
        nondeg_ok = False
        for x, y in itertools.combinations(range(n), 2):
            if squares[x] == squares[y]:
                bad_pair = (x, y)
                break
    return ValidationReport(rows_ok, cycloid_ok, nondeg_ok, bad_row, bad_triple, bad_pair)


def require_valid(cs: CycleSet) -> CycleSet:
    report = validate(cs)
    if not report.ok:
        raise InvalidCycleSet(report.describe())
    return cs


# ---------------------------------------------------------------------------
# Correspondence with solutions


class SolutionMap:
    """A set-theoretic map r on pairs, r(x,y) stored as a table of pairs."""

    __slots__ = ("n", "r")

    def __init__(self, r):
        self.n = len(r)
        self.r = tuple(tuple((int(a), int(b)) for a, b in row) for row in r)
        for row in self.r:
            if len(row) != self.n:
                raise ValueError("solution table is not square")
            for a, b in row:
                if not (0 <= a < self.n and 0 <= b < self.n):
                    raise ValueError("solution entry out of range")

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return self.r[x][y]

    def lam(self, x: int) -> Perm:
        return Perm(self.r[x][y][0] for y in range(self.n))

    def rho(self, y: int) -> Perm:
        return Perm(self.r[x][y][1] for x in range(self.n))

    def __eq__(self, other):
        return isinstance(other, SolutionMap) and self.r == other.r


@dataclass
class SolutionReport:
    braid: bool
    involutive: bool
    nondegenerate: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.braid and self.involutive and self.nondegenerate


def validate_solution(s: SolutionMap) -> SolutionReport:
    """Exhaustive braid / involutivity / non-degeneracy check."""
    n = s.n
    for x in range(n):
        lam = [s.r[x][y][0] for y in range(n)]
        rho = [s.r[y][x][1] for y in range(n)]
        if sorted(lam) != list(range(n)) or sorted(rho) != list(range(n)):
            return SolutionReport(False, False, False, witness=(x,))
    for x, y in itertools.product(range(n), repeat=2):
        if s.r[s.r[x][y][0]][s.r[x][y][1]] != (x, y):
            return SolutionReport(True, False, True, witness=(x, y))

    def r12(a, b, c):
        u, v = s.r[a][b]
        return u, v, c

    def r23(a, b, c):
        u, v = s.r[b][c]
        return a, u, v

    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = r12(*r23(*r12(x, y, z)))
        rhs = r23(*r12(*r23(x, y, z)))
        if lhs != rhs:
            return SolutionReport(False, True, True, witness=(x, y, z))
    return SolutionReport(True, True, True)


def to_solution(cs: CycleSet) -> SolutionMap:
    """r(x,y) = (sigma_x^-1(y), sigma_x^-1(y) . x)."""
    require_valid(cs)
    n, t = cs.n, cs.table
    inv = [cs.sigma(x).inverse() for x in range(n)]
    r = [[(inv[x](y), t[inv[x](y)][x]) for y in range(n)] for x in range(n)]
    return SolutionMap(r)


def from_solution(s: SolutionMap) -> CycleSet:
    """Inverse of to_solution: sigma_x is the inverse of lambda_x."""
    report = validate_solution(s)
    if not report.ok:
        raise InvalidSolution(f"not an involutive non-degenerate solution: {report}")
    table = [s.lam(x).inverse().images for x in range(s.n)]
    return require_valid(CycleSet(table))


# ---------------------------------------------------------------------------
# Retraction and multipermutation level


def retract(cs: CycleSet) -> tuple[CycleSet, list[int]]:
    """Quotient by the congruence sigma_x = sigma_y.

    Returns (retraction, projection); classes are indexed by least member.
    """
    reps: list[tuple[int, ...]] = []
    proj = []
    for x in range(cs.n):
        row = cs.table[x]
        try:
            proj.append(reps.index(row))
        except ValueError:
            proj.append(len(reps))
            reps.append(row)
    m = len(reps)
    table = [[0] * m for _ in range(m)]
    rep_points = []
    seen = set()
    for x in range(cs.n):
        if proj[x] not in seen:
            seen.add(proj[x])
            rep_points.append(x)
    for i, x in enumerate(rep_points):
        for j, y in enumerate(rep_points):
            table[i][j] = proj[cs.table[x][y]]
    return CycleSet(table), proj


def retraction_tower(cs: CycleSet) -> list[CycleSet]:
    """[X, Ret(X), Ret^2(X), ...] until a singleton or a fixed point."""
    tower = [cs]
    while tower[-1].n > 1:
        nxt, _ = retract(tower[-1])
        if nxt.n == tower[-1].n:
            break
        tower.append(nxt)
    return tower


def multipermutation_level(cs: CycleSet) -> int | None:
    """Retractions needed to reach a singleton; None when irretractable
    above size 1."""
    tower = retraction_tower(cs)
    if tower[-1].n == 1:
        return len(tower) - 1
    return None


def is_irretractable(cs: CycleSet) -> bool:
    return retract(cs)[0].n == cs.n and cs.n > 1


# ---------------------------------------------------------------------------
# Permutation group and structure predicates


def permutation_group(cs: CycleSet) -> PermGroup:
    return closure([cs.sigma(x) for x in range(cs.n)])


def is_indecomposable(cs: CycleSet) -> bool:
    return is_transitive(permutation_group(cs))


def is_uniconnected(cs: CycleSet) -> bool:
    return is_regular(permutation_group(cs))


def is_latin(cs: CycleSet) -> bool:
    """True iff the table is a latin square (the cycle set is a quasigroup)."""
    n = cs.n
    for y in range(n):
        col = [cs.table[x][y] for x in range(n)]
        if sorted(col) != list(range(n)):
            return False
    return True


def direct_product(a: CycleSet, b: CycleSet) -> CycleSet:
    """(x,s).(y,t) = (x.y, s.t), pairs flattened row-major."""
    na, nb = a.n, b.n
    n = na * nb
    table = [[0] * n for _ in range(n)]
    for x, s, y, t in itertools.product(range(na), range(nb), range(na), range(nb)):
        table[x * nb + s][y * nb + t] = a.table[x][y] * nb + b.table[s][t]
    return CycleSet(table)


# ---------------------------------------------------------------------------
# Isomorphism


def _iso_invariant(cs: CycleSet):
    row_types = tuple(sorted(cs.sigma(x).cycle_lengths() for x in range(cs.n)))
    tower = tuple(t.n for t in retraction_tower(cs))
    return row_types, tower


def are_isomorphic(a: CycleSet, b: CycleSet) -> Perm | None:
    """Find f with f(x.y) = f(x).f(y), or None.

    Backtracking over point images, pruned by the row cycle types and the
    retraction-tower sizes.
    """
    if a.n != b.n:
        return None
    if _iso_invariant(a) != _iso_invariant(b):
        return None
    n = a.n
    a_type = [a.sigma(x).cycle_lengths() for x in range(n)]
    b_type = [b.sigma(x).cycle_lengths() for x in range(n)]
    f = [-1] * n
    used = [False] * n

    def consistent() -> bool:
        # propagate f(x.y) = f(x).f(y) over assigned pairs
        changed = True
        while changed:
            changed = False
            for x in range(n):
                if f[x] < 0:
                    continue
                for y in range(n):
                    if f[y] < 0:
                        continue
                    z = a.table[x][y]
                    w = b.table[f[x]][f[y]]
                    if f[z] < 0:
                        if used[w] or a_type[z] != b_type[w]:
                            return False
                        f[z] = w
                        used[w] = True
                        trail.append(z)
                        changed = True
                    elif f[z] != w:
                        return False
        return True

    trail: list[int] = []

    def undo(mark: int):
        while len(trail) > mark:
            z = trail.pop()
            used[f[z]] = False
            f[z] = -1

    def search() -> bool:
        try:
            x = f.index(-1)
        except ValueError:
            return True
        for w in range(n):
            if used[w] or a_type[x] != b_type[w]:
                continue
            mark = len(trail)
            f[x] = w
            used[w] = True
            trail.append(x)
            if consistent() and search():
                return True
            undo(mark)
        return False

    if search():
        return Perm(f)
    return None


# ---------------------------------------------------------------------------
# Enumeration


MAX_ENUM_SIZE = 5


def _perm_tables(n: int):
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    comp = [[index[tuple(a[b[z]] for z in range(n))] for b in perms] for a in perms]
    return perms, comp


def _row_search(n: int, first_rows: list[int]) -> list[CycleSet]:
    """Backtracking over rows (as S_n indices) with incremental cycloid and
    distinct-diagonal pruning; yields tables in lexicographic order."""
    perms, comp = _perm_tables(n)
    nperms = len(perms)
    rows = [0] * n  # S_n indices
    out: list[CycleSet] = []

    def ok_at_depth(k: int) -> bool:
        # distinct diagonal so far (non-degeneracy)
        diag_k = perms[rows[k]][k]
        for x in range(k):
            if perms[rows[x]][x] == diag_k:
                return False
        # cycloid for every pair checkable exactly now
        for x in range(k + 1):
            px = perms[rows[x]]
            for y in range(k + 1):
                if x == y:
                    continue
                i1 = px[y]
                i2 = perms[rows[y]][x]
                if i1 > k or i2 > k:
                    continue
                if max(x, y, i1, i2) != k:
                    continue  # already checked at an earlier depth
                if comp[rows[i1]][rows[x]] != comp[rows[i2]][rows[y]]:
                    return False
        return True

    def descend(k: int, choices):
        for r in choices:
            rows[k] = r
            if not ok_at_depth(k):
                continue
            if k == n - 1:
                out.append(CycleSet([perms[i] for i in rows]))
            else:
                descend(k + 1, range(nperms))

    descend(0, first_rows)
    return out


def enumerate_cycle_sets(
    n: int,
    indecomposable: bool = False,
    latin: bool = False,
    irretractable: bool = False,
    workers: int = 1,
):
    """All valid (non-degenerate) cycle sets of size n, each exactly once,
    in lexicographic table order.  Capped at n <= 5."""
    if n > MAX_ENUM_SIZE:
        raise ValueError(f"full enumeration capped at n <= {MAX_ENUM_SIZE}")
    if n == 0:
        return
    nperms = len(list(itertools.permutations(range(n))))
    if workers > 1:
        chunks = [list(range(i, nperms, workers)) for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _row_search(n, c), chunks))
        results = sorted(
            (cs for part in parts for cs in part), key=lambda cs: cs.table
        )
    else:
        results = _row_search(n, list(range(nperms)))
    for cs in results:
        if indecomposable and not is_indecomposable(cs):
            continue
        if latin and not is_latin(cs):
            continue
        if irretractable and not is_irretractable(cs):
            continue
        yield cs


def unique_up_to_iso(cycle_sets) -> list[CycleSet]:
    reps: list[CycleSet] = []
    for cs in cycle_sets:
        if not any(are_isomorphic(cs, r) for r in reps):
            reps.append(cs)
    return reps


def enumerate_uniconnected(n: int) -> list[CycleSet]:
    """All uniconnected cycle sets of size n, up to isomorphism.

    A uniconnected cycle set has regular permutation group, so after a
    relabeling all its left multiplications live in the standard left
    regular representation of some group of order n; sweeping the maps
    x -> sigma_x over each such group is therefore exhaustive up to
    isomorphism.  Tabulated groups cap this at n <= 8.
    """
    found: list[CycleSet] = []
    for table in all_group_tables(n):
        g = regular_representation(table)
        elems = [p.images for p in g.elements]
        for choice in itertools.product(range(len(elems)), repeat=n):
            cs_table = [elems[i] for i in choice]
            cs = CycleSet(cs_table)
            if not validate(cs).ok:
                continue
            if not is_transitive(closure([Perm(r) for r in cs_table])):
                continue
            if not any(are_isomorphic(cs, r) for r in found):
                found.append(cs)
    return found

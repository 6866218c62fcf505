"""Finite left braces as explicit (+, o) table pairs: validation, the
lambda machinery, socle series, ideals, Sylow splitting, cycle bases, the
brace <-> cycle set bridges, semidirect products, and exhaustive brace
enumeration at small orders.

Element 0 is required to be the shared identity of both operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cycleset import CycleSet, SolutionMap, are_isomorphic, require_valid, retract
from .extension import ConstantExtension, OneVarCocycle, build_constant_orthogonal
from .perm import GroupFingerprint, Perm, iso_type
from .smallgroups import abelian_group_tables, regular_representation


class BraceError(ValueError):
    pass


class NotNilpotent(BraceError):
    pass


class LeftBrace:
    """A finite set {0,..,n-1} with two group tables sharing identity 0."""

    __slots__ = ("n", "add", "circ", "_neg", "_inv", "_lambda")

    def __init__(self, add, circ):
        self.add = tuple(tuple(row) for row in add)
        self.circ = tuple(tuple(row) for row in circ)
        self.n = len(self.add)
        if len(self.circ) != self.n:
            raise ValueError("additive and multiplicative tables differ in size")
        self._neg = None
        self._inv = None
        self._lambda = None

    def neg(self, a: int) -> int:
        if self._neg is None:
            self._neg = _inverses(self.add)
        return self._neg[a]

    def inv(self, a: int) -> int:
        """Multiplicative inverse a^-."""
        if self._inv is None:
            self._inv = _inverses(self.circ)
        return self._inv[a]

    def lam(self, a: int) -> Perm:
        """lambda_a(b) = -a + a o b."""
        return self.lambda_table()[a]

    def lambda_table(self) -> tuple[Perm, ...]:
        if self._lambda is None:
            self._lambda = tuple(
                Perm(self.add[self.neg(a)][self.circ[a][b]] for b in range(self.n))
                for a in range(self.n)
            )
        return self._lambda

    def is_trivial(self) -> bool:
        return self.add == self.circ

    def __eq__(self, other):
        return (
            isinstance(other, LeftBrace)
            and self.add == other.add
            and self.circ == other.circ
        )

    def __hash__(self):
        return hash((self.add, self.circ))

    def __repr__(self):
        return f"LeftBrace(n={self.n})"


def _inverses(table) -> list[int]:
    n = len(table)
    inv = [-1] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == 0:
                inv[a] = b
                break
        if inv[a] < 0:
            raise BraceError(f"element {a} has no inverse")
    return inv


def _group_witness(table, abelian: bool) -> tuple | None:
    """None if table is a group (with identity 0, abelian if requested);
    otherwise a witness describing the first failure."""
    n = len(table)
    for row in table:
        if len(row) != n:
            return ("shape",)
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            return ("identity", a)
    for a in range(n):
        if sorted(table[a]) != list(range(n)) or sorted(
            table[b][a] for b in range(n)
        ) != list(range(n)):
            return ("latin", a)
        b = a  # keep flake-ish linters quiet
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return ("associativity", a, b, c)
    if abelian:
        for a, b in itertools.combinations(range(n), 2):
            if table[a][b] != table[b][a]:
                return ("commutativity", a, b)
    if any(0 not in row for row in table):
        return ("inverses",)
    return None


@dataclass
class BraceReport:
    additive_group: bool
    multiplicative_group: bool
    brace_law: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.additive_group and self.multiplicative_group and self.brace_law


def validate_brace(b: LeftBrace) -> BraceReport:
    """Check (A,+) abelian group, (A,o) group, and the left brace law
    a o (b+c) + a = a o b + a o c."""
    add_w = _group_witness(b.add, abelian=True)
    if add_w is not None:
        return BraceReport(False, False, False, ("add",) + add_w)
    circ_w = _group_witness(b.circ, abelian=False)
    if circ_w is not None:
        return BraceReport(True, False, False, ("circ",) + circ_w)
    n = b.n
    for a, x, y in itertools.product(range(n), repeat=3):
        lhs = b.add[b.circ[a][b.add[x][y]]][a]
        rhs = b.add[b.circ[a][x]][b.circ[a][y]]
        if lhs != rhs:
            return BraceReport(True, True, False, ("law", a, x, y))
    return BraceReport(True, True, True)


def require_valid_brace(b: LeftBrace) -> LeftBrace:
    report = validate_brace(b)
    if not report.ok:
        raise BraceError(f"not a left brace: witness {report.witness}")
    return b


def trivial_brace(add) -> LeftBrace:
    return LeftBrace(add, add)


def trivial_brace_zn(n: int) -> LeftBrace:
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    return LeftBrace(add, add)


# ---------------------------------------------------------------------------
# Socle, ideals, quotients


def socle(b: LeftBrace) -> frozenset[int]:
    lam = b.lambda_table()
    return frozenset(a for a in range(b.n) if lam[a].is_identity())


def socle_series(b: LeftBrace) -> list[frozenset[int]]:
    """[Soc_0, Soc_1, ...] up to stabilization; Soc_0 = {0}."""
    series = [frozenset({0})]
    while True:
        prev = series[-1]
        nxt = frozenset(
            a
            for a in range(b.n)
            if all(
                b.add[b.add[a][x]][b.neg(b.circ[a][x])] in prev for x in range(b.n)
            )
        )
        if nxt == prev:
            return series
        series.append(nxt)


def brace_mpl(b: LeftBrace) -> int | None:
    """Least k with Soc_k = A, or None when the series stabilizes short."""
    series = socle_series(b)
    if len(series[-1]) == b.n:
        return len(series) - 1
    return None


def is_left_ideal(b: LeftBrace, points) -> bool:
    pts = frozenset(points)
    if 0 not in pts:
        return False
    if any(b.circ[x][y] not in pts or b.inv(x) not in pts for x in pts for y in pts):
        return False
    lam = b.lambda_table()
    return all(lam[a](x) in pts for a in range(b.n) for x in pts)


def is_ideal(b: LeftBrace, points) -> bool:
    pts = frozenset(points)
    if not is_left_ideal(b, pts):
        return False
    return all(
        b.circ[b.circ[a][x]][b.inv(a)] in pts for a in range(b.n) for x in pts
    )


def quotient(b: LeftBrace, ideal) -> LeftBrace:
    """Quotient brace modulo an ideal; classes indexed by least member."""
    pts = frozenset(ideal)
    if not is_ideal(b, pts):
        raise BraceError("quotient requires an ideal")
    cosets = {}
    for a in range(b.n):
        key = min(b.circ[a][x] for x in pts)
        cosets.setdefault(key, []).append(a)
    reps = sorted(cosets)
    idx = {}
    for i, r in enumerate(reps):
        for a in cosets[r]:
            idx[a] = i
    m = len(reps)
    add = [[idx[b.add[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    circ = [[idx[b.circ[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    return require_valid_brace(LeftBrace(add, circ))


def sub_brace(b: LeftBrace, points) -> LeftBrace:
    """The brace on a subset closed under both operations, reindexed by
    sorted position."""
    pts = sorted(set(points))
    idx = {p: i for i, p in enumerate(pts)}
    try:
        add = [[idx[b.add[x][y]] for y in pts] for x in pts]
        circ = [[idx[b.circ[x][y]] for y in pts] for x in pts]
    except KeyError:
        raise BraceError("subset is not closed under the brace operations")
    return LeftBrace(add, circ)


def direct_product_braces(a: LeftBrace, h: LeftBrace) -> LeftBrace:
    m = h.n
    n = a.n * m

    def idx(x, s):
        return x * m + s

    add = [[0] * n for _ in range(n)]
    circ = [[0] * n for _ in range(n)]
    for x, s, y, t in itertools.product(range(a.n), range(m), range(a.n), range(m)):
        add[idx(x, s)][idx(y, t)] = idx(a.add[x][y], h.add[s][t])
        circ[idx(x, s)][idx(y, t)] = idx(a.circ[x][y], h.circ[s][t])
    return LeftBrace(add, circ)


# ---------------------------------------------------------------------------
# Abstract structure of the two groups


def multiplicative_group_fingerprint(b: LeftBrace) -> GroupFingerprint:
    return iso_type(regular_representation([list(r) for r in b.circ]))


def multiplicative_nilpotent(b: LeftBrace) -> bool:
    """Nilpotency of (A,o) via closure of the p-element subsets."""
    orders = [_circ_order(b, a) for a in range(b.n)]
    for p in _primes(b.n):
        p_elems = [a for a in range(b.n) if _p_power(orders[a], p)]
        p_set = set(p_elems)
        for x in p_elems:
            for y in p_elems:
                if b.circ[x][y] not in p_set:
                    return False
    return True


def _circ_order(b: LeftBrace, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = b.circ[x][a]
        k += 1
    return k


def _add_order(b: LeftBrace, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = b.add[x][a]
        k += 1
    return k


def _primes(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_split(b: LeftBrace) -> tuple[list[LeftBrace], Perm]:
    """Factor a brace with nilpotent multiplicative group into its additive
    Sylow subbraces, with an explicit brace isomorphism A = prod A_p.

    Raises NotNilpotent when (A,o) is not nilpotent.
    """
    require_valid_brace(b)
    if not multiplicative_nilpotent(b):
        raise NotNilpotent("multiplicative group is not nilpotent")
    factors = []
    for p in _primes(b.n):
        pts = [a for a in range(b.n) if _p_power(_add_order(b, a), p)]
        factors.append(sub_brace(b, pts))
    if len(factors) == 1:
        return factors, Perm.identity(b.n)
    product = factors[0]
    for f in factors[1:]:
        product = direct_product_braces(product, f)
    mapping = brace_isomorphism(b, product)
    if mapping is None:
        raise BraceError("no isomorphism onto the Sylow product found")
    return factors, mapping


def _p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def brace_isomorphism(a: LeftBrace, b: LeftBrace) -> Perm | None:
    """Backtracking isomorphism search preserving both tables, pruned by
    the (additive order, multiplicative order) pair of each element."""
    if a.n != b.n:
        return None
    n = a.n
    a_sig = [(_add_order(a, x), _circ_order(a, x)) for x in range(n)]
    b_sig = [(_add_order(b, x), _circ_order(b, x)) for x in range(n)]
    if sorted(a_sig) != sorted(b_sig):
        return None
    f = [-1] * n
    f[0] = 0
    used = [False] * n
    used[0] = True
    trail: list[int] = []

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            assigned = [x for x in range(n) if f[x] >= 0]
            for x in assigned:
                for y in assigned:
                    for ta, tb in ((a.add, b.add), (a.circ, b.circ)):
                        z, w = ta[x][y], tb[f[x]][f[y]]
                        if f[z] < 0:
                            if used[w] or a_sig[z] != b_sig[w]:
                                return False
                            f[z] = w
                            used[w] = True
                            trail.append(z)
                            changed = True
                        elif f[z] != w:
                            return False
        return True

    def undo(mark):
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
            if used[w] or a_sig[x] != b_sig[w]:
                continue
            mark = len(trail)
            f[x] = w
            used[w] = True
            trail.append(x)
            if propagate() and search():
                return True
            undo(mark)
        return False

    if search():
        return Perm(f)
    return None


# ---------------------------------------------------------------------------
# Cycle bases and the uniconnected bridge


@dataclass(frozen=True)
class CycleBase:
    points: tuple[int, ...]
    transitive: bool


def lambda_orbits(b: LeftBrace) -> list[tuple[int, ...]]:
    lam = b.lambda_table()
    seen = set()
    orbits = []
    for start in range(b.n):
        if start in seen:
            continue
        orb = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for a in range(b.n):
                y = lam[a](x)
                if y not in orb:
                    orb.add(y)
                    frontier.append(y)
        seen |= orb
        orbits.append(tuple(sorted(orb)))
    return orbits


def _generates_additively(b: LeftBrace, points) -> bool:
    gen = {0} | set(points)
    while True:
        new = {b.add[x][y] for x in gen for y in gen} - gen
        if not new:
            return len(gen) == b.n
        gen |= new


def cycle_bases(b: LeftBrace) -> list[CycleBase]:
    """All unions of lambda-orbits that additively generate, transitive
    ones (single orbits) flagged."""
    orbits = [o for o in lambda_orbits(b) if o != (0,) or b.n == 1]
    bases = []
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(orbits, r):
            pts = tuple(sorted(p for o in combo for p in o))
            if _generates_additively(b, pts):
                bases.append(CycleBase(pts, transitive=(r == 1)))
    return bases


def transitive_cycle_bases(b: LeftBrace) -> list[CycleBase]:
    return [cb for cb in cycle_bases(b) if cb.transitive]


def brace_to_cycleset(b: LeftBrace, base: CycleBase, g: int) -> CycleSet:
    """The uniconnected cycle set on A defined by a . b = (lambda_a(g))^- o b.

    Asserts uniconnectedness and G(A) = (A,o) as abstract groups.
    """
    if not base.transitive:
        raise BraceError("cycle base must be transitive")
    if g not in base.points:
        raise BraceError("g must lie in the cycle base")
    lam = b.lambda_table()
    table = [b.circ[b.inv(lam[a](g))] for a in range(b.n)]
    cs = require_valid(CycleSet(table))
    from .cycleset import is_uniconnected, permutation_group

    assert is_uniconnected(cs), "associated cycle set must be uniconnected"
    assert iso_type(permutation_group(cs)) == multiplicative_group_fingerprint(b)
    return cs


# ---------------------------------------------------------------------------
# Brace enumeration (by additive group + lambda search)


@lru_cache(maxsize=None)
def additive_automorphisms(add_key) -> tuple[Perm, ...]:
    """All automorphisms of the abelian group given by its table (as a
    tuple of row tuples).  Brute force; fine at desk scale."""
    add = add_key
    n = len(add)
    out = []
    # an automorphism is determined by generator images; brute-force all
    # bijections fixing 0 for the small orders used here
    for images in itertools.permutations(range(1, n)):
        f = (0,) + images
        if all(
            f[add[x][y]] == add[f[x]][f[y]] for x in range(n) for y in range(x, n)
        ):
            out.append(Perm(f))
    return tuple(out)


def _lambda_search(add) -> list[LeftBrace]:
    """All braces on a fixed additive table, via backtracking over the map
    a -> lambda_a in Aut(A,+) with the constraint
    lambda_{a + lambda_a(b)} = lambda_a lambda_b."""
    n = len(add)
    add_t = tuple(tuple(r) for r in add)
    auts = additive_automorphisms(add_t)
    aut_index = {p.images: i for i, p in enumerate(auts)}
    comp = {}  # composition on automorphism indices, filled lazily

    def compose_idx(i, j):
        key = (i, j)
        if key not in comp:
            comp[key] = aut_index[(auts[i] * auts[j]).images]
        return comp[key]

    ident = aut_index[Perm.identity(n).images]
    lam = [-1] * n
    lam[0] = ident
    trail: list[int] = []
    found: list[LeftBrace] = []

    def closure_order_divides() -> bool:
        # lambda(A) = (A,o)/Soc has order dividing n
        gens = {lam[a] for a in range(n) if lam[a] >= 0}
        elems = {ident}
        frontier = list(elems)
        while frontier:
            i = frontier.pop()
            for g in gens:
                j = compose_idx(g, i)
                if j not in elems:
                    elems.add(j)
                    if len(elems) > n:
                        return False
                    frontier.append(j)
        return n % len(elems) == 0

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            assigned = [a for a in range(n) if lam[a] >= 0]
            for a in assigned:
                pa = auts[lam[a]]
                for b in assigned:
                    target = add[a][pa(b)]  # a o b
                    want = compose_idx(lam[a], lam[b])
                    if lam[target] < 0:
                        lam[target] = want
                        trail.append(target)
                        changed = True
                    elif lam[target] != want:
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            lam[trail.pop()] = -1

    def search():
        try:
            a = lam.index(-1)
        except ValueError:
            circ = [[add[x][auts[lam[x]](y)] for y in range(n)] for x in range(n)]
            brace = LeftBrace(add, circ)
            if validate_brace(brace).ok:
                found.append(brace)
            return
        for i in range(len(auts)):
            mark = len(trail)
            lam[a] = i
            trail.append(a)
            if propagate() and closure_order_divides():
                search()
            undo(mark)

    search()
    return found


@lru_cache(maxsize=None)
def enumerate_braces(n: int, up_to_iso: bool = True) -> tuple[LeftBrace, ...]:
    """All left braces of order n (one per isomorphism class by default).

    Sweeps every abelian additive structure of order n and searches the
    compatible lambda maps.
    """
    found: list[LeftBrace] = []
    for add in abelian_group_tables(n):
        for brace in _lambda_search(add):
            if up_to_iso and any(
                brace_isomorphism(brace, other) for other in found
            ):
                continue
            found.append(brace)
    return tuple(found)


def search_brace_for_cycleset(
    cs: CycleSet, max_size: int = 8
) -> tuple[LeftBrace, CycleBase, int] | None:
    """Witness the converse of the uniconnected bridge: a brace, transitive cycle
    base, and g whose associated cycle set is isomorphic to cs.

    Exhaustive over braces of order |X|, so a None return means no brace
    of that order produces cs.
    """
    from .cycleset import is_uniconnected, permutation_group

    if cs.n > max_size:
        raise ValueError(f"brace search capped at size {max_size}")
    if not is_uniconnected(cs):
        raise BraceError("brace search needs a uniconnected cycle set")
    target = iso_type(permutation_group(cs))
    for brace in enumerate_braces(cs.n):
        if multiplicative_group_fingerprint(brace) != target:
            continue
        for base in transitive_cycle_bases(brace):
            for g in base.points:
                candidate = brace_to_cycleset(brace, base, g)
                if are_isomorphic(candidate, cs) is not None:
                    return brace, base, g
    return None


# ---------------------------------------------------------------------------
# Semidirect products and the extension bridge


def _is_brace_automorphism(h: LeftBrace, p: Perm) -> bool:
    n = h.n
    return all(
        p(h.add[x][y]) == h.add[p(x)][p(y)]
        and p(h.circ[x][y]) == h.circ[p(x)][p(y)]
        for x in range(n)
        for y in range(n)
    )


def semidirect_braces(a: LeftBrace, h: LeftBrace, alpha) -> LeftBrace:
    """Semidirect product brace: direct sum addition, multiplicative
    semidirect product via alpha: (A,o) -> Aut(H)."""
    alpha = tuple(alpha)
    if len(alpha) != a.n:
        raise ValueError("alpha must be indexed by elements of A")
    for i, p in enumerate(alpha):
        if not _is_brace_automorphism(h, p):
            raise BraceError(f"alpha({i}) is not a brace automorphism of H")
    for x, y in itertools.product(range(a.n), repeat=2):
        if alpha[a.circ[x][y]] != alpha[x] * alpha[y]:
            raise BraceError("alpha is not a homomorphism from (A,o)")
    m = h.n
    n = a.n * m

    def idx(x, s):
        return x * m + s

    add = [[0] * n for _ in range(n)]
    circ = [[0] * n for _ in range(n)]
    for x, s, y, t in itertools.product(range(a.n), range(m), range(a.n), range(m)):
        add[idx(x, s)][idx(y, t)] = idx(a.add[x][y], h.add[s][t])
        circ[idx(x, s)][idx(y, t)] = idx(a.circ[x][y], h.circ[s][alpha[x](t)])
    return require_valid_brace(LeftBrace(add, circ))


def lambda_stabilizer(b: LeftBrace, e: int) -> list[int]:
    lam = b.lambda_table()
    return [a for a in range(b.n) if lam[a](e) == e]


def extension_from_brace(
    b: LeftBrace, base: CycleBase, e: int, abar
) -> ConstantExtension:
    """Constant orthogonal extension on X x S from a brace action:
    (x,s).(y,t) = (lambda_x^{-1}(y), abar_x^{-1}(t)).

    abar must be a homomorphism from (A,o) to Sym(S) under which the
    lambda-stabilizer of e acts transitively on S.
    """
    if not base.transitive:
        raise BraceError("cycle base must be transitive")
    if e not in base.points:
        raise BraceError("e must lie in the cycle base")
    abar = tuple(abar)
    if len(abar) != b.n:
        raise ValueError("abar must be indexed by elements of A")
    fiber = abar[0].degree
    for x, y in itertools.product(range(b.n), repeat=2):
        if abar[b.circ[x][y]] != abar[x] * abar[y]:
            raise BraceError("abar is not a homomorphism from (A,o)")
    stab = lambda_stabilizer(b, e)
    if len({abar[a](s) for a in stab for s in [0]}) != fiber:
        raise BraceError("stabilizer of e does not act transitively on S")
    pts = list(base.points)
    idx = {p: i for i, p in enumerate(pts)}
    lam = b.lambda_table()
    base_table = [
        [idx[lam[x].inverse()(y)] for y in pts] for x in pts
    ]
    base_cs = require_valid(CycleSet(base_table))
    alpha = tuple(abar[x].inverse() for x in pts)
    ext = build_constant_orthogonal(OneVarCocycle(base_cs, fiber, alpha))
    assert ext.orthogonal, "brace-built extension must be orthogonal"
    return ext


def brace_to_solution(b: LeftBrace) -> SolutionMap:
    """The involutive solution r(a,c) = (lambda_a(c), lambda^{-1}_{lambda_a(c)}(a));
    asserts that its retraction is the solution of A/Soc(A)."""
    require_valid_brace(b)
    lam = b.lambda_table()
    inv = [p.inverse() for p in lam]
    r = [
        [(lam[a](c), inv[lam[a](c)](a)) for c in range(b.n)]
        for a in range(b.n)
    ]
    sol = SolutionMap(r)
    if b.n > 1:
        from .cycleset import from_solution, to_solution

        retracted = to_solution(retract(from_solution(sol))[0])
        soc = socle(b)
        if len(soc) == 1:
            # trivial socle: the retraction classes are singletons
            soc_solution = sol
        else:
            soc_solution = brace_to_solution(quotient(b, soc))
        assert retracted == soc_solution, (
            "retraction of the brace solution must match the socle quotient"
        )
    return sol

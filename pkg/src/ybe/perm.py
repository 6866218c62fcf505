"""Permutations of {0,..,n-1}, explicit-closure permutation groups, orbits,
stabilizers, block systems, and structural predicates.

Groups are materialized in full (desk scale); the closure size is capped,
overridable through the YBE_GROUP_CAP environment variable.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from math import gcd

DEFAULT_GROUP_CAP = 10 ** 6


def group_cap() -> int:
    return int(os.environ.get("YBE_GROUP_CAP", DEFAULT_GROUP_CAP))


class DegreeMismatch(ValueError):
    pass


class GroupCapExceeded(RuntimeError):
    pass


class Perm:
    """A bijection of {0,..,n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images!r}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse cycle notation like "(0 1)(2 3)"; points are space- or
        comma-separated.  The degree defaults to max point + 1."""
        cycles = []
        for part in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) for tok in re.split(r"[,\s]+", part.strip()) if tok]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle: ({part})")
            cycles.append(pts)
        if re.sub(r"[()\d,\s]", "", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        top = max((p for c in cycles for p in c), default=-1)
        n = top + 1 if degree is None else degree
        if top >= n:
            raise ValueError(f"point {top} out of range for degree {n}")
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    def cycle_string(self) -> str:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def order(self) -> int:
        result = 1
        for c in self.cycle_lengths():
            result = result * c // gcd(result, c)
        return result

    def cycle_lengths(self) -> tuple[int, ...]:
        """Multiset of cycle lengths (fixed points included), sorted."""
        seen = [False] * self.degree
        lengths = []
        for start in range(self.degree):
            if seen[start]:
                continue
            k, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                k += 1
            lengths.append(k)
        return tuple(sorted(lengths))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: "Perm") -> "Perm":
        return self.images < other.images

    def __repr__(self):
        return f"Perm({list(self.images)})"


def compose(a: Perm, b: Perm) -> Perm:
    """(a*b)(i) = a(b(i))."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} != {b.degree}")
    bi = b.images
    ai = a.images
    return Perm(ai[j] for j in bi)


class PermGroup:
    """A permutation group given by generators, with the full element list
    materialized on first use (sorted by image tuple)."""

    def __init__(self, degree: int, generators, _elements=None):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatch("generator degree mismatch")
        self._elements = _elements

    @property
    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            self._elements = _close(self.generators, self.degree)
        return self._elements

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def _close(gens, degree) -> tuple[Perm, ...]:
    cap = group_cap()
    ident = Perm.identity(degree)
    seen = {ident.images: ident}
    frontier = [ident]
    gens = [g for g in gens if not g.is_identity()]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g * p
                if q.images not in seen:
                    seen[q.images] = q
                    nxt.append(q)
                    if len(seen) > cap:
                        raise GroupCapExceeded(
                            f"group order exceeds cap {cap}; "
                            "set YBE_GROUP_CAP to raise it"
                        )
        frontier = nxt
    return tuple(sorted(seen.values()))


def closure(gens) -> PermGroup:
    """Group generated by gens, fully materialized."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (or use trivial_group)")
    return PermGroup(gens[0].degree, gens)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [Perm.identity(degree)])


def orbit(g: PermGroup, point: int) -> set[int]:
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range")
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for gen in g.generators:
                y = gen(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def stabilizer(g: PermGroup, point: int) -> PermGroup:
    """Point stabilizer, from the materialized element list."""
    if not 0 <= point < g.degree:
        raise ValueError(f"point {point} out of range")
    elems = tuple(p for p in g.elements if p(point) == point)
    return PermGroup(g.degree, elems, _elements=elems)


def is_transitive(g: PermGroup) -> bool:
    return len(orbit(g, 0)) == g.degree


def is_regular(g: PermGroup) -> bool:
    return is_transitive(g) and g.order() == g.degree


def is_abelian(g: PermGroup) -> bool:
    gens = g.generators
    return all(a * b == b * a for a, b in itertools.combinations(gens, 2))


def is_cyclic(g: PermGroup) -> bool:
    n = g.order()
    return any(p.order() == n for p in g.elements)


def is_nilpotent(g: PermGroup) -> bool:
    """Nilpotent iff every Sylow subgroup is normal; at this scale, iff the
    set of p-elements is multiplicatively closed for every prime p."""
    n = g.order()
    for p in _prime_factors(n):
        p_elems = [x for x in g.elements if _is_p_power(x.order(), p)]
        p_set = {x.images for x in p_elems}
        for a in p_elems:
            for b in p_elems:
                if (a * b).images not in p_set:
                    return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# Block systems


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = sorted(p for b in self.blocks for p in b)
        if flat != list(range(self.degree)):
            raise ValueError("blocks do not partition the point set")
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise ValueError("blocks must all have the same size")

    @classmethod
    def from_cells(cls, degree: int, cells) -> "BlockSystem":
        canon = tuple(sorted(tuple(sorted(c)) for c in cells))
        return cls(degree, canon)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def cell_of(self, point: int) -> int:
        for i, b in enumerate(self.blocks):
            if point in b:
                return i
        raise ValueError(f"point {point} out of range")

    def is_invariant_under(self, p: Perm) -> bool:
        cells = {b: b for b in self.blocks}
        for b in self.blocks:
            img = tuple(sorted(p(x) for x in b))
            if img not in cells:
                return False
        return True


def minimal_block_system(g: PermGroup, a: int, b: int) -> BlockSystem:
    """Finest block system merging a and b (classical union-find refinement)."""
    parent = list(range(g.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return None
        parent[ry] = rx
        return rx, ry

    queue = [(a, b)]
    union(a, b)
    while queue:
        x, y = queue.pop()
        for gen in g.generators:
            merged = union(gen(x), gen(y))
            if merged:
                queue.append(merged)
    cells = {}
    for x in range(g.degree):
        cells.setdefault(find(x), []).append(x)
    return BlockSystem.from_cells(g.degree, cells.values())


def _join(a: BlockSystem, b: BlockSystem) -> BlockSystem:
    parent = list(range(a.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sys in (a, b):
        for cell in sys.blocks:
            for p in cell[1:]:
                parent[find(p)] = find(cell[0])
    cells = {}
    for x in range(a.degree):
        cells.setdefault(find(x), []).append(x)
    return BlockSystem.from_cells(a.degree, cells.values())


def block_systems(g: PermGroup) -> list[BlockSystem]:
    """All nontrivial block systems of a transitive group, canonically sorted.

    Minimal systems come from the pair seeds {0,b}; the rest are their joins.
    """
    if not is_transitive(g):
        raise ValueError("block systems are defined for transitive groups")
    n = g.degree
    found = set()
    for b in range(1, n):
        found.add(minimal_block_system(g, 0, b))
    changed = True
    while changed:
        changed = False
        for x, y in itertools.combinations(list(found), 2):
            j = _join(x, y)
            if j not in found:
                found.add(j)
                changed = True
    nontrivial = [s for s in found if 1 < s.block_size < n]
    return sorted(nontrivial, key=lambda s: s.blocks)


def are_orthogonal(a: BlockSystem, b: BlockSystem) -> bool:
    """True iff every cell of a meets every cell of b in exactly one point."""
    if a.degree != b.degree:
        raise DegreeMismatch("block systems on different point sets")
    for ca in a.blocks:
        sa = set(ca)
        for cb in b.blocks:
            if len(sa.intersection(cb)) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Abstract-group fingerprinting


@dataclass(frozen=True)
class GroupFingerprint:
    """Invariant-based identification of the abstract group.

    Equal abstract groups always produce equal fingerprints; the optional
    name is filled in for small groups that the invariants pin down.
    """

    order: int
    abelian: bool
    element_orders: tuple[int, ...]
    center_size: int
    derived_size: int
    invariant_factors: tuple[int, ...] | None = None
    name: str | None = None


def _element_order_counts(elements) -> dict[int, int]:
    counts = {}
    for p in elements:
        o = p.order()
        counts[o] = counts.get(o, 0) + 1
    return counts


def _abelian_invariant_factors(elements) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its order statistics."""
    n = len(elements)
    counts = _element_order_counts(elements)
    partitions = {}  # prime -> partition (descending exponents)
    for p in _prime_factors(n):
        # #elements of order dividing p^k is p^(sum of min(lambda_i, k))
        lam = []
        prev = 0
        k = 1
        while True:
            dividing = sum(c for o, c in counts.items() if _divides_p_power(o, p, k))
            e = 0
            m = dividing
            while m % p == 0:
                m //= p
                e += 1
            # e = sum(min(lambda_i, k)); extract lambda increments
            grew = e - prev
            lam.append(grew)
            prev = e
            if grew == 0:
                lam.pop()
                break
            k += 1
        # lam[k-1] = number of lambda_i >= k; convert to partition
        partition = []
        for idx, cnt in enumerate(lam):
            nxt = lam[idx + 1] if idx + 1 < len(lam) else 0
            partition.extend([idx + 1] * (cnt - nxt))
        partitions[p] = sorted(partition, reverse=True)
    width = max((len(v) for v in partitions.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, part in partitions.items():
            if i < len(part):
                d *= p ** part[i]
        factors.append(d)
    # d_1 divisible by d_2 divisible by ...
    return tuple(sorted(factors, reverse=True))


def _divides_p_power(o: int, p: int, k: int) -> bool:
    return _is_p_power(o, p) and o <= p ** k


def _center_size(elements) -> int:
    elems = list(elements)
    return sum(1 for z in elems if all(z * g == g * z for g in elems))


def _derived_size(elements) -> int:
    elems = list(elements)
    comms = {(a.inverse() * b.inverse() * a * b) for a in elems for b in elems}
    return len(_close(list(comms), elems[0].degree))


def _dihedral_reference(m: int) -> tuple:
    """(element order multiset, center size, derived size) of D_m, order 2m."""
    rot = Perm([(i + 1) % m for i in range(m)])
    refl = Perm([(-i) % m for i in range(m)])
    elems = _close([rot, refl], m)
    return (
        tuple(sorted(p.order() for p in elems)),
        _center_size(elems),
        _derived_size(elems),
    )


def iso_type(g: PermGroup) -> GroupFingerprint:
    elems = g.elements
    n = len(elems)
    abelian = is_abelian(g)
    orders = tuple(sorted(p.order() for p in elems))
    center = _center_size(elems)
    derived = _derived_size(elems)
    factors = None
    name = None
    if n == 1:
        name = "1"
    elif abelian:
        factors = _abelian_invariant_factors(elems)
        name = " x ".join(f"Z/{d}" for d in factors)
    elif n <= 64 and n % 2 == 0:
        m = n // 2
        if m >= 3 and (orders, center, derived) == _dihedral_reference(m):
            name = f"D{m} (dihedral of order {2 * m})"
    return GroupFingerprint(
        order=n,
        abelian=abelian,
        element_orders=orders,
        center_size=center,
        derived_size=derived,
        invariant_factors=factors,
        name=name,
    )

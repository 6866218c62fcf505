"""Explicit construction families for indecomposable cycle sets — the
cyclic-permutation-group construction on Z/p^k, two extension families built
from it, and a named catalog of worked fixtures with attached assertion
checklists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .brace import CycleBase, LeftBrace, extension_from_brace, require_valid_brace
from .cycleset import (
    CycleSet,
    are_isomorphic,
    is_indecomposable,
    is_irretractable,
    is_latin,
    is_uniconnected,
    multipermutation_level,
    permutation_group,
    require_valid,
    retract,
    retraction_tower,
)
from .extension import (
    ConstantExtension,
    OneVarCocycle,
    build_constant_orthogonal,
    is_quasigroup_semidirect,
    semidirect_product,
)
from .perm import Perm, is_abelian, is_cyclic, iso_type


class ConstructionError(ValueError):
    pass


def _translation(n: int, a: int) -> Perm:
    return Perm((i + a) % n for i in range(n))


@dataclass(frozen=True)
class CyclicConstructionParams:
    """Data for the shift-power construction on Z/p^k: a descending
    exponent chain j_0 = k > j_1 > ... > j_n = 0 and maps
    f_i : Z/p^{j_i} -> {0,..,p^{j_{i-1}-j_i}-1} with f_i(0) = 0.

    k_reading selects the exponent of the leading term of K: "j" uses
    p^{j_{n-1}} (matching the sigma exponents); "literal" uses p^{n-1}.
    """

    p: int
    k: int
    n: int
    j: tuple[int, ...]
    f: tuple[tuple[int, ...], ...]
    k_reading: str = "j"

    @property
    def size(self) -> int:
        return self.p**self.k

    def sigma_exponent(self, i: int) -> int:
        """1 + p^{j_{n-1}} f_{n-1}(i) + ... + p^{j_1} f_1(i)."""
        total = 1
        for m in range(1, self.n):
            total += self.p ** self.j[m] * self.f[m - 1][i % self.p ** self.j[m]]
        return total

    def k_value(self, jj: int, i: int) -> int:
        """K_{j,i}: like the sigma exponent but summed from f_2, shifted
        by j; the leading-term exponent depends on k_reading."""
        total = jj + 1
        for m in range(2, self.n):
            exp = self.j[m]
            if m == self.n - 1 and self.k_reading == "literal":
                exp = self.n - 1
            total += self.p**exp * self.f[m - 1][i % self.p ** self.j[m]]
        return total % self.size

    def q_value(self, jj: int, i: int) -> int:
        kv = self.k_value(jj, i)
        return (self.sigma_exponent(i) + self.sigma_exponent(kv) - 2) % self.size


def validate_params(params: CyclicConstructionParams) -> tuple | None:
    """None when admissible, else a witness for the first failed invariant."""
    p, k, n, j, f = params.p, params.k, params.n, params.j, params.f
    if n < 2:
        return ("level", n)
    if len(j) != n + 1 or j[0] != k or j[n] != 0:
        return ("chain-shape", j)
    if any(j[i] >= j[i - 1] for i in range(1, n + 1)):
        return ("chain-descending", j)
    if len(f) != n - 1:
        return ("maps-count", len(f))
    for m in range(1, n):
        fm = f[m - 1]
        bound = p ** (j[m - 1] - j[m])
        if len(fm) != p ** j[m] or fm[0] != 0 or any(
            not 0 <= v < bound for v in fm
        ):
            return ("map-shape", m)
    for m in range(1, n):
        # phi_m(l) = 1 + sum_{t >= m} p^{j_t} f_t(l) must be injective
        seen = set()
        for l in range(p ** j[m]):
            v = 1 + sum(
                p ** j[t] * f[t - 1][l % p ** j[t]] for t in range(m, n)
            )
            if v in seen:
                return ("phi-injective", m, l)
            seen.add(v)
    size = params.size
    for i, jj in itertools.product(range(size), repeat=2):
        if params.q_value(jj, i) != params.q_value(i, jj):
            return ("q-symmetry", i, jj)
    return None


def build_cyclic(params: CyclicConstructionParams) -> CycleSet:
    """Cycle set on Z/p^k with sigma_i a power of the full shift; asserts
    indecomposable, cyclic permutation group of order p^k, level n, and
    retraction tower sizes p^{j_i}."""
    witness = validate_params(params)
    if witness is not None:
        raise ConstructionError(f"inadmissible parameters: {witness}")
    size = params.size
    exps = [params.sigma_exponent(i) for i in range(size)]
    table = [[(y + exps[x]) % size for y in range(size)] for x in range(size)]
    cs = require_valid(CycleSet(table))
    assert is_indecomposable(cs)
    g = permutation_group(cs)
    assert is_cyclic(g) and g.order() == size
    tower = retraction_tower(cs)
    assert [t.n for t in tower] == [params.p**e for e in params.j]
    assert multipermutation_level(cs) == params.n
    return cs


def recover_f(
    p: int, k: int, n: int, j: tuple[int, ...], exponents
) -> tuple[tuple[int, ...], ...]:
    """Invert sigma exponents back to the maps f_i (mixed-radix digits of
    exponent-1 at positions j_{n-1} < ... < j_1)."""
    f = []
    for m in range(1, n):
        fm = []
        for l in range(p ** j[m]):
            v = exponents[l] - 1
            for t in range(m + 1, n):
                v -= p ** j[t] * ((exponents[l] - 1) // p ** j[t] % p ** (j[t - 1] - j[t]))
            fm.append(v // p ** j[m] % p ** (j[m - 1] - j[m]))
        f.append(tuple(fm))
    return tuple(f)


def family_prop22(p: int, s: int, k: int = 1) -> ConstantExtension:
    """Constant orthogonal extension of the level-2 cycle set
    x.y = y+1+xp^s on Z/p^{2s} by the fiber Z/p^{2s}, with cocycle
    translations by f(j) = k(j + p^s j(j-1)/2).  Level 3; the retraction is
    the base again and the group has invariant factors (p^{2s}, p^{2s})."""
    if p < 3 or any(p % d == 0 for d in range(2, p)):
        raise ConstructionError("p must be an odd prime")
    if k % p == 0:
        raise ConstructionError("k must be coprime to p")
    if s < 1:
        raise ConstructionError("s must be positive")
    m = p ** (2 * s)
    inv2 = pow(2, -1, m)
    base = require_valid(
        CycleSet([[(y + 1 + x * p**s) % m for y in range(m)] for x in range(m)])
    )
    fvals = [k * (jj + inv2 * p**s * jj * (jj - 1)) % m for jj in range(m)]
    alpha = tuple(_translation(m, fvals[x]) for x in range(m))
    ext = build_constant_orthogonal(OneVarCocycle(base, m, alpha))
    assert ext.orthogonal
    cs = ext.cycle_set
    assert multipermutation_level(cs) == 3
    assert are_isomorphic(retract(cs)[0], base) is not None
    fp = iso_type(permutation_group(cs))
    assert fp.abelian and fp.invariant_factors == (m, m)
    return ext


def family_prop23(params: CyclicConstructionParams, s: int) -> CycleSet:
    """Extension of a cyclic-group cycle set by Z/p^s with cocycle
    translations by x mod p^s; the group becomes Z/p^k x Z/p^s and the
    retraction is unchanged.  s ranges over 0..j_{n-1}."""
    base = build_cyclic(params)
    j_last = params.j[params.n - 1]
    if not 0 <= s <= j_last:
        raise ConstructionError(f"s must lie in 0..{j_last}")
    if s == 0:
        return base
    p, size = params.p, params.size
    fiber = p**s
    alpha = tuple(_translation(fiber, x % fiber) for x in range(size))
    ext = build_constant_orthogonal(OneVarCocycle(base, fiber, alpha))
    assert ext.orthogonal
    cs = ext.cycle_set
    fp = iso_type(permutation_group(cs))
    assert fp.abelian and fp.invariant_factors == (size, fiber)
    assert are_isomorphic(retract(cs)[0], retract(base)[0]) is not None
    assert multipermutation_level(cs) == params.n
    return cs


# ---------------------------------------------------------------------------
# Catalog of worked fixtures


@dataclass
class CatalogEntry:
    name: str
    kind: str
    obj: object
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _cs_from_sigma(perms) -> CycleSet:
    return require_valid(CycleSet([p.images for p in perms]))


def _dihedral8_entry() -> CatalogEntry:
    # written down with 1-based points; shifted to 0-based
    def shift(text):
        p = Perm.from_cycles(text, degree=9)
        return Perm(p(i + 1) - 1 for i in range(8))

    s1 = shift("(1 4)(2 8)(3 7)(5 6)")
    s2 = shift("(1 7 6 2)(3 4 8 5)")
    s3 = shift("(1 5)(2 3)(4 6)(7 8)")
    s4 = shift("(1 2 6 7)(3 5 8 4)")
    cs = _cs_from_sigma([s1, s2, s3, s4, s4, s1, s2, s3])
    g = permutation_group(cs)
    fp = iso_type(g)
    checks = {
        "indecomposable": is_indecomposable(cs),
        "group-order-8": g.order() == 8,
        "non-abelian": not fp.abelian,
        "dihedral": fp.name.startswith("D4"),
        "uniconnected": is_uniconnected(cs),
    }
    return CatalogEntry("dihedral8", "cycle_set", cs, checks)


def _level3_z8_entry() -> CatalogEntry:
    s0 = Perm.from_cycles("(0 1 2 3)(4 5 6 7)")
    s1 = Perm.from_cycles("(0 3 2 1)(4 7 6 5)")
    s2 = Perm.from_cycles("(0 5 2 7)(1 6 3 4)")
    s3 = Perm.from_cycles("(0 7 2 5)(1 4 3 6)")
    cs = _cs_from_sigma([s0, s1, s2, s3, s0, s1, s2, s3])
    fp = iso_type(permutation_group(cs))
    checks = {
        "mpl-3": multipermutation_level(cs) == 3,
        "group-4x2": fp.abelian and fp.invariant_factors == (4, 2),
        "indecomposable": is_indecomposable(cs),
    }
    return CatalogEntry("level3_z8", "cycle_set", cs, checks)


def irretractable4_table() -> CycleSet:
    s0 = Perm.from_cycles("(1 2)", degree=4)
    s1 = Perm.from_cycles("(0 3)", degree=4)
    s2 = Perm.from_cycles("(0 2 3 1)")
    s3 = Perm.from_cycles("(0 1 3 2)")
    return _cs_from_sigma([s0, s1, s2, s3])


def _irretractable4_entry() -> CatalogEntry:
    cs = irretractable4_table()
    checks = {
        "irretractable": is_irretractable(cs),
        "indecomposable": is_indecomposable(cs),
    }
    return CatalogEntry("irretractable4", "cycle_set", cs, checks)


def _size16_entry() -> CatalogEntry:
    base = irretractable4_table()
    t1 = _translation(4, 1)
    t3 = _translation(4, 3)
    ext = build_constant_orthogonal(
        OneVarCocycle(base, 4, (t1, t1, t3, t3))
    )
    cs = ext.cycle_set
    checks = {
        "orthogonal": ext.orthogonal,
        "indecomposable": is_indecomposable(cs),
        "retract-is-base": are_isomorphic(retract(cs)[0], base) is not None,
        "no-finite-mpl": multipermutation_level(cs) is None,
        "group-non-abelian": not iso_type(permutation_group(cs)).abelian,
    }
    return CatalogEntry("size16_infinite_mpl", "constant_extension", ext, checks)


def brace_z4() -> LeftBrace:
    add = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    circ = [[(i + j + 2 * i * j) % 4 for j in range(4)] for i in range(4)]
    return require_valid_brace(LeftBrace(add, circ))


def _brace_z4_entry() -> CatalogEntry:
    from .brace import brace_mpl, socle
    from .onegen import is_one_generator

    b = brace_z4()
    checks = {
        "socle-0-2": socle(b) == frozenset({0, 2}),
        "mpl-2": brace_mpl(b) == 2,
        "one-generator": is_one_generator(b) is not None,
    }
    return CatalogEntry("brace_z4", "left_brace", b, checks)


def semidirect12_brace() -> LeftBrace:
    from .brace import semidirect_braces, trivial_brace_zn

    swap = Perm((0, 2, 1))
    alpha = [Perm.identity(3), swap, swap, Perm.identity(3)]
    return semidirect_braces(brace_z4(), trivial_brace_zn(3), alpha)


def _semidirect12_entry() -> CatalogEntry:
    from .brace import multiplicative_nilpotent

    b = semidirect12_brace()
    # the brace action of Z/4 on the fiber {1,2} of Z/3, with the cycle
    # base {1,3} and e = 1, reproduces (x,s).(y,t) = (y+1, t+x)
    t = Perm((1, 0))
    abar = [Perm.identity(2), t, t, Perm.identity(2)]
    ext = extension_from_brace(brace_z4(), CycleBase((1, 3), True), 1, abar)
    expected = [[0] * 4 for _ in range(4)]
    for x, s, y, tt in itertools.product(range(2), repeat=4):
        expected[2 * x + s][2 * y + tt] = 2 * ((y + 1) % 2) + (tt + x) % 2
    checks = {
        "valid-order-12": b.n == 12,
        "not-nilpotent": not multiplicative_nilpotent(b),
        "extension-reproduced": are_isomorphic(
            ext.cycle_set, require_valid(CycleSet(expected))
        )
        is not None,
    }
    return CatalogEntry("semidirect12", "left_brace", b, checks)


def _quasigroup_entry() -> CatalogEntry:
    x = irretractable4_table()
    s = irretractable4_table()
    swap = Perm.from_cycles("(0 1)(2 3)")
    ident = Perm.identity(4)
    alpha = (swap, swap, ident, ident)
    prod = semidirect_product(x, s, alpha)
    checks = {
        "factors-latin": is_latin(x) and is_latin(s),
        "product-latin": is_quasigroup_semidirect(x, s, alpha),
        "indecomposable": is_indecomposable(prod),
        "irretractable": is_irretractable(prod),
    }
    return CatalogEntry("quasigroup_semidirect", "cycle_set", prod, checks)


def cyclic_z32_params() -> CyclicConstructionParams:
    return CyclicConstructionParams(
        p=2,
        k=5,
        n=3,
        j=(5, 3, 1, 0),
        f=((0, 0, 3, 3, 2, 2, 1, 1), (0, 2)),
    )


def _cyclic_z32_entry() -> CatalogEntry:
    params = cyclic_z32_params()
    cs = build_cyclic(params)
    exps = [params.sigma_exponent(i) for i in range(8)]
    g = permutation_group(cs)
    checks = {
        "sigma-exponents": exps == [1, 5, 25, 29, 17, 21, 9, 13],
        "mpl-3": multipermutation_level(cs) == 3,
        "cyclic-32": is_cyclic(g) and g.order() == 32,
    }
    return CatalogEntry("cyclic_z32", "cycle_set", cs, checks)


def _prop23_z32_entry() -> CatalogEntry:
    cs = family_prop23(cyclic_z32_params(), 1)
    fp = iso_type(permutation_group(cs))
    checks = {
        "size-64": cs.n == 64,
        "mpl-3": multipermutation_level(cs) == 3,
        "group-32x2": fp.abelian and fp.invariant_factors == (32, 2),
    }
    return CatalogEntry("prop23_z32_s1", "cycle_set", cs, checks)


_CATALOG = {
    "dihedral8": _dihedral8_entry,
    "level3_z8": _level3_z8_entry,
    "irretractable4": _irretractable4_entry,
    "size16_infinite_mpl": _size16_entry,
    "brace_z4": _brace_z4_entry,
    "semidirect12": _semidirect12_entry,
    "quasigroup_semidirect": _quasigroup_entry,
    "cyclic_z32": _cyclic_z32_entry,
    "prop23_z32_s1": _prop23_z32_entry,
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def catalog(name: str) -> CatalogEntry:
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}; see catalog_names()")
    return _CATALOG[name]()

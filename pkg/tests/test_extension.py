"""Tests for dynamical cocycles, constant extensions, orthogonality, and
semidirect products."""

import itertools

import pytest

from ybe.construct import catalog, irretractable4_table
from ybe.cycleset import (
    CycleSet,
    are_isomorphic,
    is_indecomposable,
    is_latin,
    multipermutation_level,
    permutation_group,
    retract,
)
from ybe.extension import (
    CocycleError,
    FullCocycle,
    OneVarCocycle,
    build_constant_orthogonal,
    build_extension,
    constant_to_onevar,
    h_y_subgroup,
    is_quasigroup_semidirect,
    refinement_check,
    semidirect_product,
    validate_cocycle,
)
from ybe.perm import Perm, are_orthogonal, block_systems, iso_type


def shift(n):
    return CycleSet([[(y + 1) % n for y in range(n)] for _ in range(n)])


def translation(n, a):
    return Perm(tuple((s + a) % n for s in range(n)))


def parity_cocycle():
    """Z/4 shift base, Z/2 fiber, alpha_x = translation by x mod 2."""
    alpha = tuple(translation(2, x % 2) for x in range(4))
    return OneVarCocycle(shift(4), 2, alpha)


# ---------------------------------------------------------------------------
# one-variable cocycles


def test_compatibility_witness():
    assert parity_cocycle().compatibility_witness() is None
    bad = OneVarCocycle(
        shift(4), 2, (translation(2, 0), translation(2, 1)) * 2
    )
    assert bad.compatibility_witness() is None  # same as parity_cocycle
    broken = OneVarCocycle(
        shift(4),
        2,
        (translation(2, 0), translation(2, 1), translation(2, 0), translation(2, 0)),
    )
    assert broken.compatibility_witness() is not None
    with pytest.raises(CocycleError):
        build_constant_orthogonal(broken)


def test_onevar_shape_validation():
    with pytest.raises(ValueError):
        OneVarCocycle(shift(4), 2, (translation(2, 0),))
    with pytest.raises(ValueError):
        OneVarCocycle(shift(4), 2, tuple(translation(3, 0) for _ in range(4)))


def test_parity_extension_structure():
    ext = build_constant_orthogonal(parity_cocycle())
    assert ext.indecomposable
    assert ext.orthogonal
    assert refinement_check(ext)
    # the fiber action depends only on x mod 2, so the retraction collapses
    # the extension to two points
    retracted, _ = retract(ext.cycle_set)
    assert retracted.n == 2
    assert multipermutation_level(ext.cycle_set) == 2
    fp = iso_type(permutation_group(ext.cycle_set))
    assert fp.abelian and fp.invariant_factors == (4, 2)


def test_extension_reaching_level_three():
    # the multipermutation level goes up by exactly one for some constant
    # extension of the retract of the level-three example
    target = catalog("level3_z8").obj
    base, _ = retract(target)
    assert multipermutation_level(base) == 2
    perms = (translation(2, 0), translation(2, 1))
    found = False
    for alpha in itertools.product(perms, repeat=4):
        c = OneVarCocycle(base, 2, alpha)
        if c.compatibility_witness() is not None:
            continue
        ext = build_constant_orthogonal(c)
        if ext.indecomposable and are_isomorphic(ext.cycle_set, target):
            found = True
            break
    assert found


def test_h_y_transitivity():
    c = parity_cocycle()
    group, transitive = h_y_subgroup(c, 0)
    assert transitive
    t1, t3 = translation(4, 1), translation(4, 3)
    big = OneVarCocycle(irretractable4_table(), 4, (t1, t1, t3, t3))
    group, transitive = h_y_subgroup(big, 0)
    assert transitive
    lazy = OneVarCocycle(shift(3), 2, tuple(translation(2, 0) for _ in range(3)))
    group, transitive = h_y_subgroup(lazy, 0)
    assert not transitive


def test_identity_cocycle_gives_decomposable_extension():
    c = OneVarCocycle(shift(3), 2, tuple(translation(2, 0) for _ in range(3)))
    ext = build_constant_orthogonal(c)
    assert not ext.indecomposable
    assert not ext.orthogonal
    assert not is_indecomposable(ext.cycle_set)
    with pytest.raises(ValueError):
        refinement_check(ext)


def test_decomposable_base_rejected():
    trivial = CycleSet([[0, 1], [0, 1]])
    c = OneVarCocycle(trivial, 2, (translation(2, 1), translation(2, 1)))
    with pytest.raises(CocycleError):
        build_constant_orthogonal(c)


# ---------------------------------------------------------------------------
# full (two-fiber-argument) cocycles


def test_onevar_to_full_round_trip():
    c = parity_cocycle()
    full = c.as_full_cocycle()
    report = validate_cocycle(full)
    assert report.valid and report.constant
    ext = build_constant_orthogonal(c)
    assert build_extension(full).table == ext.cycle_set.table
    recovered, relabel = constant_to_onevar(full, ext.fiber_blocks)
    assert recovered.alpha == c.alpha
    assert all(p.is_identity() for p in relabel)


def test_invalid_full_cocycle_witness():
    base = shift(2)
    swap = translation(2, 1)
    ident = translation(2, 0)
    alpha = (
        ((ident, ident), (swap, ident)),
        ((ident, ident), (ident, ident)),
    )
    c = FullCocycle(base, 2, alpha)
    report = validate_cocycle(c)
    assert not report.valid
    assert report.witness is not None
    with pytest.raises(CocycleError):
        build_extension(c)


def nonconstant_cocycle():
    """A two-point shift base with a genuinely two-argument cocycle on a
    four-point fiber (labels 2a+b with a, b in Z/2)."""
    base = shift(2)
    m = 4

    def image(x, y, s, t):
        a, b = divmod(s, 2)
        c, d = divmod(t, 2)
        if x == y:
            return 2 * c + (d + (0 if a == c else 1)) % 2
        return 2 * ((c - b - 1) % 2) + d

    alpha = tuple(
        tuple(
            tuple(
                Perm(tuple(image(x, y, s, t) for t in range(m))) for s in range(m)
            )
            for y in range(2)
        )
        for x in range(2)
    )
    return FullCocycle(base, m, alpha)


def test_nonconstant_cocycle_valid():
    c = nonconstant_cocycle()
    report = validate_cocycle(c)
    assert report.valid
    assert not report.constant
    with pytest.raises(CocycleError):
        constant_to_onevar(c, None)


def test_nonconstant_extension_has_no_orthogonal_system():
    c = nonconstant_cocycle()
    ext = build_extension(c)
    assert is_indecomposable(ext)
    m = c.fiber
    g = permutation_group(ext)
    from ybe.perm import BlockSystem

    base_blocks = BlockSystem.from_cells(
        ext.n, [[x * m + s for s in range(m)] for x in range(c.base.n)]
    )
    assert all(base_blocks.is_invariant_under(p) for p in g.generators)
    assert not any(are_orthogonal(base_blocks, s) for s in block_systems(g))


# ---------------------------------------------------------------------------
# semidirect products


def test_semidirect_identity_is_direct_product():
    ident = [Perm.identity(3)] * 2
    prod = semidirect_product(shift(2), shift(3), ident)
    assert are_isomorphic(prod, shift(6)) is not None


def test_semidirect_rejects_non_automorphism():
    not_auto = [Perm((1, 0, 2))] * 2
    with pytest.raises(CocycleError):
        semidirect_product(shift(2), shift(3), not_auto)


def test_semidirect_rejects_incompatible_alpha():
    base = irretractable4_table()
    swap = Perm.from_cycles("(0 1)(2 3)")
    ident = Perm.identity(4)
    # swap is an automorphism of the fiber but the family is incompatible
    with pytest.raises(CocycleError):
        semidirect_product(base, base, (swap, ident, ident, ident))


def test_quasigroup_criterion():
    latin = irretractable4_table()
    assert is_latin(latin)
    swap = Perm.from_cycles("(0 1)(2 3)")
    ident = Perm.identity(4)
    alpha = (swap, swap, ident, ident)
    assert is_quasigroup_semidirect(latin, latin, alpha)
    # non-latin base: the product cannot be latin
    assert not is_latin(shift(2))
    ident2 = [Perm.identity(4)] * 2
    assert not is_quasigroup_semidirect(shift(2), latin, ident2)

"""Tests for left braces: validation, socle machinery, enumeration,
isomorphism, Sylow splitting, cycle bases, and the bridges to cycle sets,
extensions, and solutions."""

import itertools

import pytest

from ybe.brace import (
    BraceError,
    CycleBase,
    LeftBrace,
    NotNilpotent,
    brace_isomorphism,
    brace_mpl,
    brace_to_cycleset,
    brace_to_solution,
    cycle_bases,
    direct_product_braces,
    enumerate_braces,
    extension_from_brace,
    is_ideal,
    is_left_ideal,
    lambda_stabilizer,
    multiplicative_group_fingerprint,
    multiplicative_nilpotent,
    quotient,
    search_brace_for_cycleset,
    semidirect_braces,
    socle,
    socle_series,
    sub_brace,
    sylow_split,
    transitive_cycle_bases,
    trivial_brace_zn,
    validate_brace,
)
from ybe.construct import brace_z4, catalog, semidirect12_brace
from ybe.cycleset import from_solution, is_uniconnected, multipermutation_level
from ybe.perm import Perm


def zn_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# validation


def test_brace_z4_valid():
    b = brace_z4()
    report = validate_brace(b)
    assert report.ok
    assert not b.is_trivial()
    # lambda_a(b) = b + 2ab on Z/4
    assert b.lam(1).images == (0, 3, 2, 1)
    assert b.lam(2).is_identity()


def test_validate_rejects_nonabelian_addition():
    s3 = [
        [0, 1, 2, 3, 4, 5],
        [1, 0, 5, 4, 3, 2],
        [2, 3, 4, 5, 0, 1],
        [3, 2, 1, 0, 5, 4],
        [4, 5, 0, 1, 2, 3],
        [5, 4, 3, 2, 1, 0],
    ]
    report = validate_brace(LeftBrace(s3, s3))
    assert not report.ok
    assert report.witness[:2] == ("add", "commutativity")


def test_validate_rejects_non_group_multiplication():
    bad_circ = [[(i - j) % 4 for j in range(4)] for i in range(4)]
    report = validate_brace(LeftBrace(zn_table(4), bad_circ))
    assert report.additive_group
    assert not report.multiplicative_group
    assert report.witness[0] == "circ"


def test_validate_reports_law_failure():
    z6 = [
        [0, 1, 2, 3, 4, 5],
        [1, 2, 0, 4, 5, 3],
        [2, 0, 1, 5, 3, 4],
        [3, 4, 5, 0, 1, 2],
        [4, 5, 3, 1, 2, 0],
        [5, 3, 4, 2, 0, 1],
    ]
    s3 = [
        [0, 1, 2, 3, 4, 5],
        [1, 0, 5, 4, 3, 2],
        [2, 3, 4, 5, 0, 1],
        [3, 2, 1, 0, 5, 4],
        [4, 5, 0, 1, 2, 3],
        [5, 4, 3, 2, 1, 0],
    ]
    report = validate_brace(LeftBrace(z6, s3))
    assert report.additive_group and report.multiplicative_group
    assert not report.brace_law
    assert report.witness[0] == "law"


# ---------------------------------------------------------------------------
# socle, ideals, quotients


def test_socle_and_quotient_z4():
    b = brace_z4()
    assert socle(b) == frozenset({0, 2})
    series = socle_series(b)
    assert series == [frozenset({0}), frozenset({0, 2}), frozenset(range(4))]
    assert brace_mpl(b) == 2
    q = quotient(b, socle(b))
    assert q.n == 2 and q.is_trivial()


def test_socle_is_ideal_all_small_orders():
    for n in range(1, 9):
        for b in enumerate_braces(n):
            assert is_ideal(b, socle(b))


def test_trivial_socle_braces_exist_at_order_8():
    mpls = [brace_mpl(b) for b in enumerate_braces(8)]
    assert None in mpls


def test_additive_sylow_subsets_are_left_ideals():
    for b in enumerate_braces(6):
        for p in (2, 3):
            pts = [a for a in range(6) if _add_order(b, a) in (1, p)]
            assert is_left_ideal(b, pts)


def _add_order(b, a):
    k, x = 1, a
    while x != 0:
        x = b.add[x][a]
        k += 1
    return k


def test_sub_brace_and_closure():
    b = brace_z4()
    s = sub_brace(b, [0, 2])
    assert validate_brace(s).ok and s.n == 2
    with pytest.raises(BraceError):
        sub_brace(b, [0, 1])  # 1+1=2 escapes the subset


# ---------------------------------------------------------------------------
# Sylow splitting


def test_sylow_split_direct_product():
    b = direct_product_braces(brace_z4(), trivial_brace_zn(3))
    assert multiplicative_nilpotent(b)
    factors, iso = sylow_split(b)
    assert sorted(f.n for f in factors) == [3, 4]
    rebuilt = direct_product_braces(*factors)
    if rebuilt.n != b.n:
        rebuilt = direct_product_braces(*reversed(factors))
    assert brace_isomorphism(rebuilt, b) is not None


def test_sylow_split_rejects_non_nilpotent():
    b = semidirect12_brace()
    assert not multiplicative_nilpotent(b)
    with pytest.raises(NotNilpotent):
        sylow_split(b)


# ---------------------------------------------------------------------------
# enumeration and isomorphism


def test_enumeration_counts():
    assert [len(enumerate_braces(n)) for n in range(1, 9)] == [
        1, 1, 1, 4, 1, 2, 1, 27,
    ]


def test_enumerated_braces_are_valid_and_pairwise_noniso():
    for n in (4, 6):
        braces = enumerate_braces(n)
        for b in braces:
            assert validate_brace(b).ok
        for a, b in itertools.combinations(braces, 2):
            assert brace_isomorphism(a, b) is None


def test_brace_isomorphism_relabeling():
    b = brace_z4()
    p = Perm((0, 3, 2, 1))
    add = [[p(b.add[p.inverse()(x)][p.inverse()(y)]) for y in range(4)] for x in range(4)]
    circ = [[p(b.circ[p.inverse()(x)][p.inverse()(y)]) for y in range(4)] for x in range(4)]
    other = LeftBrace(add, circ)
    assert validate_brace(other).ok
    assert brace_isomorphism(b, other) is not None
    assert brace_isomorphism(b, trivial_brace_zn(4)) is None


# ---------------------------------------------------------------------------
# cycle bases and the uniconnected bridge


def test_cycle_bases_z4():
    b = brace_z4()
    bases = cycle_bases(b)
    assert CycleBase((1, 3), True) in bases
    transitive = transitive_cycle_bases(b)
    assert transitive == [CycleBase((1, 3), True)]


def test_brace_to_cycleset_z4():
    b = brace_z4()
    cs = brace_to_cycleset(b, CycleBase((1, 3), True), 1)
    assert is_uniconnected(cs)
    # rows are circ[(lambda_a(1))^-]: lambda alternates 1 <-> 3
    assert cs.table == (
        tuple(b.circ[1]),
        tuple(b.circ[3]),
        tuple(b.circ[1]),
        tuple(b.circ[3]),
    )


def test_brace_to_cycleset_rejects_bad_arguments():
    b = brace_z4()
    with pytest.raises(BraceError):
        brace_to_cycleset(b, CycleBase((1, 2, 3), False), 1)
    with pytest.raises(BraceError):
        brace_to_cycleset(b, CycleBase((1, 3), True), 2)


def test_search_brace_for_dihedral_example():
    cs = catalog("dihedral8").obj
    found = search_brace_for_cycleset(cs)
    assert found is not None
    brace, base, g = found
    fp = multiplicative_group_fingerprint(brace)
    assert fp.order == 8 and not fp.abelian
    assert g in base.points and base.transitive


# ---------------------------------------------------------------------------
# semidirect products and the extension bridge


def test_semidirect_identity_alpha_is_direct_product():
    a, h = brace_z4(), trivial_brace_zn(3)
    ident = [Perm.identity(3)] * 4
    assert semidirect_braces(a, h, ident) == direct_product_braces(a, h)


def test_semidirect_rejects_bad_alpha():
    a, h = brace_z4(), trivial_brace_zn(3)
    not_auto = [Perm((1, 2, 0))] * 4  # moves the identity of H
    with pytest.raises(BraceError):
        semidirect_braces(a, h, not_auto)
    swap = Perm((0, 2, 1))
    not_hom = [Perm.identity(3), swap, Perm.identity(3), Perm.identity(3)]
    with pytest.raises(BraceError):
        semidirect_braces(a, h, not_hom)


def test_extension_from_brace_z4():
    b = brace_z4()
    base = CycleBase((1, 3), True)
    assert lambda_stabilizer(b, 1) == [0, 2]
    ident, swap = Perm.identity(2), Perm((1, 0))
    # abar must be a multiplicative homomorphism with transitive stabilizer
    abar = [ident, ident, swap, swap]
    ext = extension_from_brace(b, base, 1, abar)
    assert ext.orthogonal
    assert ext.cycle_set.n == 4


def test_extension_from_brace_rejects_intransitive_stabilizer():
    b = brace_z4()
    base = CycleBase((1, 3), True)
    ident, swap = Perm.identity(2), Perm((1, 0))
    # kernel {0,2} contains the whole stabilizer of 1
    abar = [ident, swap, ident, swap]
    with pytest.raises(BraceError):
        extension_from_brace(b, base, 1, abar)


def test_extension_from_brace_singleton_fiber():
    b = brace_z4()
    base = CycleBase((1, 3), True)
    abar = [Perm.identity(1)] * 4
    ext = extension_from_brace(b, base, 1, abar)
    assert ext.cycle_set.n == 2


# ---------------------------------------------------------------------------
# solutions


def test_trivial_brace_gives_flip_twist():
    sol = brace_to_solution(trivial_brace_zn(3))
    assert all(sol.r[a][c] == (c, a) for a in range(3) for c in range(3))


def test_solution_level_matches_socle_series():
    for n in range(2, 9):
        for b in enumerate_braces(n):
            sol = brace_to_solution(b)
            cs = from_solution(sol)
            assert multipermutation_level(cs) == brace_mpl(b)

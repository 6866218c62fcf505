import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybe.perm import (
    BlockSystem,
    GroupCapExceeded,
    Perm,
    are_orthogonal,
    block_systems,
    closure,
    is_abelian,
    is_cyclic,
    is_nilpotent,
    is_regular,
    is_transitive,
    iso_type,
    minimal_block_system,
    orbit,
    stabilizer,
    trivial_group,
)
from ybe.smallgroups import dihedral_table, quaternion_table, regular_representation


def test_from_cycles():
    p = Perm.from_cycles("(0 1)(2 3)")
    assert p.images == (1, 0, 3, 2)
    assert Perm.from_cycles("(0 1 2)", degree=5).images == (1, 2, 0, 3, 4)
    assert Perm.from_cycles("", degree=3).is_identity()
    with pytest.raises(ValueError):
        Perm.from_cycles("(0 0 1)")


def test_cycle_string_roundtrip():
    p = Perm((2, 0, 1, 4, 3))
    assert Perm.from_cycles(p.cycle_string(), degree=5) == p
    assert Perm.identity(4).cycle_string() == "()"


perm_strategy = st.permutations(list(range(6))).map(Perm)


@given(perm_strategy)
def test_inverse_composes_to_identity(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(perm_strategy, perm_strategy)
def test_compose_is_left_action(a, b):
    ab = a * b
    for i in range(6):
        assert ab(i) == a(b(i))


@given(perm_strategy)
def test_order_matches_power(p):
    assert (p ** p.order()).is_identity()
    assert p ** (-1) == p.inverse()


def test_closure_cyclic():
    g = closure([Perm.from_cycles("(0 1 2)")])
    assert g.order() == 3


def test_closure_klein():
    g = closure([Perm.from_cycles("(0 1)(2 3)"), Perm.from_cycles("(0 3)(1 2)")])
    assert g.order() == 4
    assert all(p.order() in (1, 2) for p in g)


def test_closure_deterministic_order():
    gens = [Perm.from_cycles("(0 1 2 3)"), Perm.from_cycles("(0 1)", degree=4)]
    a = closure(gens).elements
    b = closure(list(reversed(gens))).elements
    assert a == b
    assert list(a) == sorted(a, key=lambda p: p.images)


def test_group_cap(monkeypatch):
    monkeypatch.setenv("YBE_GROUP_CAP", "10")
    with pytest.raises(GroupCapExceeded):
        closure([Perm.from_cycles("(0 1 2 3 4)"), Perm.from_cycles("(0 1)", degree=5)]).order()


def test_orbit_stabilizer_trivial():
    g = trivial_group(3)
    assert orbit(g, 0) == {0}
    assert stabilizer(g, 0).order() == 1


def test_orbit_stabilizer_cyclic():
    g = closure([Perm.from_cycles("(0 1 2 3 4)")])
    assert orbit(g, 2) == {0, 1, 2, 3, 4}
    assert stabilizer(g, 2).order() == 1


def test_orbit_stabilizer_product():
    # |orbit| * |stabilizer| = |G| on each point, checked exhaustively
    for gens in (
        [Perm.from_cycles("(0 1 2 3)"), Perm.from_cycles("(1 3)")],
        [Perm.from_cycles("(0 1)(2 3)"), Perm.from_cycles("(2 3)", degree=4)],
        [Perm.from_cycles("(0 1 2)", degree=5), Perm.from_cycles("(3 4)", degree=5)],
    ):
        g = closure(gens)
        for x in range(g.degree):
            assert len(orbit(g, x)) * stabilizer(g, x).order() == g.order()


def test_predicates():
    c5 = closure([Perm.from_cycles("(0 1 2 3 4)")])
    assert is_transitive(c5) and is_regular(c5)
    assert is_abelian(c5) and is_cyclic(c5) and is_nilpotent(c5)

    s3 = closure([Perm.from_cycles("(0 1 2)"), Perm.from_cycles("(0 1)", degree=3)])
    assert is_transitive(s3) and not is_regular(s3)
    assert not is_abelian(s3) and not is_nilpotent(s3)

    d4 = regular_representation(dihedral_table(4))
    assert is_nilpotent(d4) and not is_abelian(d4)


def test_minimal_block_system():
    g = closure([Perm.from_cycles("(0 1 2 3)")])
    bs = minimal_block_system(g, 0, 2)
    assert bs.blocks == ((0, 2), (1, 3))


def test_block_systems_invariant():
    g = closure([Perm.from_cycles("(0 1 2 3 4 5)")])
    systems = block_systems(g)
    sizes = sorted(s.block_size for s in systems)
    assert sizes == [2, 3]
    for s in systems:
        for gen in g.generators:
            assert s.is_invariant_under(gen)


def test_orthogonal_blocks():
    a = BlockSystem.from_cells(6, [[0, 1, 2], [3, 4, 5]])
    b = BlockSystem.from_cells(6, [[0, 3], [1, 4], [2, 5]])
    assert are_orthogonal(a, b)
    assert len(a.blocks) * len(b.blocks) == 6
    c = BlockSystem.from_cells(6, [[0, 1], [2, 3], [4, 5]])
    assert not are_orthogonal(a, c)


def test_orthogonal_pair_gives_product_action():
    # for a transitive group with orthogonal systems, x -> (cell_a, cell_b)
    # is a bijection onto the product and carries the action over
    g = closure([Perm.from_cycles("(0 1 2 3 4 5)")])
    systems = block_systems(g)
    pairs = [
        (a, b)
        for a, b in itertools.combinations(systems, 2)
        if are_orthogonal(a, b)
    ]
    assert pairs
    for a, b in pairs:
        labels = {(a.cell_of(x), b.cell_of(x)) for x in range(g.degree)}
        assert len(labels) == g.degree
        for p in g:
            for x in range(g.degree):
                assert a.cell_of(p(x)) == a.cell_of(p(a.blocks[a.cell_of(x)][0]))


def test_fingerprint_abelian():
    g = closure([Perm.from_cycles("(0 1 2 3)", degree=6), Perm.from_cycles("(4 5)", degree=6)])
    fp = iso_type(g)
    assert fp.abelian and fp.invariant_factors == (4, 2)
    assert fp.name == "Z/4 x Z/2"


def test_fingerprint_trivial():
    assert iso_type(trivial_group(3)).order == 1


def test_fingerprint_separates_d4_q8():
    d4 = iso_type(regular_representation(dihedral_table(4)))
    q8 = iso_type(regular_representation(quaternion_table()))
    assert d4 != q8
    assert d4.name.startswith("D4")

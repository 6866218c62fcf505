"""Tests for the cyclic-group construction family, the two derived extension
families, and the fixture catalog."""

import itertools
from dataclasses import replace

import pytest

from ybe.construct import (
    ConstructionError,
    CyclicConstructionParams,
    build_cyclic,
    catalog,
    catalog_names,
    cyclic_z32_params,
    family_prop22,
    family_prop23,
    recover_f,
    validate_params,
)
from ybe.cycleset import multipermutation_level, retraction_tower


# ---------------------------------------------------------------------------
# parameter validation


def test_validate_params_witnesses():
    good = cyclic_z32_params()
    assert validate_params(good) is None

    assert validate_params(replace(good, n=1, j=(5, 0), f=()))[0] == "level"
    assert validate_params(replace(good, j=(5, 3, 1)))[0] == "chain-shape"
    assert validate_params(replace(good, j=(5, 3, 3, 0)))[0] == "chain-descending"
    assert validate_params(replace(good, f=good.f[:1]))[0] == "maps-count"
    assert validate_params(replace(good, f=((1,) + good.f[0][1:], good.f[1])))[0] == (
        "map-shape"
    )
    # constant nonzero-free first map collapses phi_1
    flat = tuple(0 for _ in good.f[0])
    assert validate_params(replace(good, f=(flat, good.f[1])))[0] == "phi-injective"


def test_z32_sigma_exponents():
    params = cyclic_z32_params()
    exps = [params.sigma_exponent(i) % 32 for i in range(8)]
    assert exps == [1, 5, 25, 29, 17, 21, 9, 13]
    # exponents only depend on i mod 8
    assert all(
        params.sigma_exponent(i) % 32 == exps[i % 8] for i in range(32)
    )


def test_z32_literal_reading_fails_symmetry():
    literal = replace(cyclic_z32_params(), k_reading="literal")
    witness = validate_params(literal)
    assert witness is not None and witness[0] == "q-symmetry"


# ---------------------------------------------------------------------------
# building and inverting


def test_build_cyclic_z32():
    cs = build_cyclic(cyclic_z32_params())
    assert cs.n == 32
    assert multipermutation_level(cs) == 3
    assert [t.n for t in retraction_tower(cs)] == [32, 8, 2, 1]


def test_build_rejects_inadmissible():
    bad = replace(cyclic_z32_params(), j=(5, 3, 3, 0))
    with pytest.raises(ConstructionError):
        build_cyclic(bad)


def test_recover_f_round_trip():
    params = cyclic_z32_params()
    exps = [params.sigma_exponent(i) for i in range(params.size)]
    assert recover_f(params.p, params.k, params.n, params.j, exps) == params.f


def test_small_parameter_sweep():
    """Sweep all maps for p=3, k=2, n=2 (chain forced to (2,1,0)).  The
    symmetry condition forces a constant exponent increment, leaving
    exactly the two linear maps; each builds a level-2 set with tower
    9 -> 3 -> 1."""
    admissible = []
    for tail in itertools.product((0, 1, 2), repeat=2):
        params = CyclicConstructionParams(
            p=3, k=2, n=2, j=(2, 1, 0), f=((0,) + tail,)
        )
        if validate_params(params) is not None:
            continue
        admissible.append(tail)
        cs = build_cyclic(params)
        assert [t.n for t in retraction_tower(cs)] == [9, 3, 1]
    assert admissible == [(1, 2), (2, 1)]


# ---------------------------------------------------------------------------
# extension families


def test_prop22_family():
    ext = family_prop22(3, 1, 1)
    cs = ext.cycle_set
    assert cs.n == 81
    # independent symmetry oracle on the translation amounts: the cocycle
    # compatibility reduces to f(x.y) + f(x) = f(y.x) + f(y)
    m = 9
    inv2 = pow(2, -1, m)
    f = [(j + inv2 * 3 * j * (j - 1)) % m for j in range(m)]
    op = lambda x, y: (y + 1 + 3 * x) % m
    for x, y in itertools.product(range(m), repeat=2):
        assert (f[op(x, y)] + f[x]) % m == (f[op(y, x)] + f[y]) % m


def test_prop22_rejections():
    with pytest.raises(ConstructionError):
        family_prop22(2, 1)
    with pytest.raises(ConstructionError):
        family_prop22(9, 1)
    with pytest.raises(ConstructionError):
        family_prop22(3, 0)
    with pytest.raises(ConstructionError):
        family_prop22(3, 1, k=3)


def test_prop23_family():
    params = cyclic_z32_params()
    base = family_prop23(params, 0)
    assert base.table == build_cyclic(params).table
    ext = family_prop23(params, 1)
    assert ext.n == 64
    assert multipermutation_level(ext) == 3
    with pytest.raises(ConstructionError):
        family_prop23(params, 2)


# ---------------------------------------------------------------------------
# catalog


def test_catalog_entries_all_pass():
    names = catalog_names()
    assert len(names) == 9
    for name in names:
        entry = catalog(name)
        assert entry.name == name
        assert entry.ok, f"{name}: {entry.checks}"


def test_catalog_unknown_name():
    with pytest.raises(KeyError):
        catalog("no-such-entry")

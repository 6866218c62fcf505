"""A tour of the fixture catalog: validate each named object, print its
headline invariants, and look at one retraction tower in detail.

Run with:  python3 demo/01_catalog_tour.py
"""

from ybe.construct import catalog, catalog_names
from ybe.cycleset import (
    CycleSet,
    multipermutation_level,
    permutation_group,
    retraction_tower,
    validate,
)
from ybe.extension import ConstantExtension
from ybe.perm import iso_type


def main():
    print("catalog entries and their attached checks:\n")
    for name in catalog_names():
        entry = catalog(name)
        status = "ok" if entry.ok else "FAILED"
        checks = ", ".join(entry.checks)
        print(f"  {name:24s} [{entry.kind}] {status}")
        print(f"      checks: {checks}")

    # pull one cycle set apart
    cs = catalog("level3_z8").obj
    print("\nlevel3_z8 in detail:")
    report = validate(cs)
    print(f"  axioms: {report.describe()}")
    print(f"  multipermutation level: {multipermutation_level(cs)}")
    fp = iso_type(permutation_group(cs))
    print(f"  permutation group: {fp.name} (order {fp.order})")
    print("  retraction tower:")
    for level, t in enumerate(retraction_tower(cs)):
        print(f"    step {level}: {t.n} points")

    # the size-16 entry retracts forever without reaching a point
    ext = catalog("size16_infinite_mpl").obj
    assert isinstance(ext, ConstantExtension)
    cs16: CycleSet = ext.cycle_set
    print("\nsize16_infinite_mpl:")
    print(f"  multipermutation level: {multipermutation_level(cs16)}")
    tower = retraction_tower(cs16)
    print(f"  tower sizes: {[t.n for t in tower]} (stabilizes, never reaches 1)")


if __name__ == "__main__":
    main()

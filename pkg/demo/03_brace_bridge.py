"""From left braces to cycle sets and back: enumerate the small braces,
walk the socle series, build the uniconnected cycle set attached to a
transitive cycle base, and recover a brace from a cycle set by search.

Run with:  python3 demo/03_brace_bridge.py
"""

from ybe.brace import (
    brace_mpl,
    brace_to_cycleset,
    enumerate_braces,
    search_brace_for_cycleset,
    socle_series,
    transitive_cycle_bases,
)
from ybe.construct import brace_z4, catalog
from ybe.cycleset import is_uniconnected, multipermutation_level


def main():
    print("left braces per order (up to isomorphism):")
    for n in range(1, 9):
        braces = enumerate_braces(n)
        levels = sorted(
            (str(brace_mpl(b)) for b in braces), key=lambda s: (s == "None", s)
        )
        print(f"  order {n}: {len(braces)} braces, levels {{{', '.join(levels)}}}")

    b = brace_z4()
    print("\nthe nontrivial brace on Z/4 (a o b = a + b + 2ab):")
    for i, layer in enumerate(socle_series(b)):
        print(f"  soc_{i} = {sorted(layer)}")

    for base in transitive_cycle_bases(b):
        cs = brace_to_cycleset(b, base, base.points[0])
        print(f"  cycle base {base.points} gives a cycle set on {cs.n} points:")
        print(f"    uniconnected: {is_uniconnected(cs)}")
        print(f"    level: {multipermutation_level(cs)}")

    # the converse: a uniconnected cycle set determines a brace (found by
    # exhausting the braces of matching order)
    target = catalog("dihedral8").obj
    print("\nsearching a brace for the 8-point dihedral example ...")
    found = search_brace_for_cycleset(target)
    assert found is not None
    brace, base, g = found
    print(f"  found: order-{brace.n} brace, cycle base {base.points}, g={g}")


if __name__ == "__main__":
    main()

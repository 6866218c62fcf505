"""Finite cycle sets, involutive non-degenerate set-theoretic solutions of
the Yang-Baxter equation, dynamical extensions, and left braces.

Submodules:
  perm       permutations, permutation groups, block systems, fingerprints
  cycleset   cycle sets, solutions, retraction, isomorphism, enumeration
  extension  dynamical cocycles, constant orthogonal extensions, semidirect
  brace      left braces, socle, Sylow splitting, brace/cycle-set bridges
  onegen     one-generator braces and the level-2 characterization
  construct  explicit construction families and the fixture catalog
  serial     JSON document formats
  cli        the ybe command-line tool
"""

__version__ = "0.1.0"

"""Nominal sets and rational behaviours with names.

Subpackages cover finite permutations of atoms (perm), orbit-finite nominal
sets (nomset), name abstraction (abstraction), finitely supported functions
(fsfunc), binding term graphs with alpha-aware behavioural equivalence
(termgraph), and deterministic automata over the infinite atom alphabet
(nomauto).  The ``nomfix`` console script in cli ties them together.
"""

__version__ = "0.1.0"

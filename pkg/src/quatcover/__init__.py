"""Computational classification of abelian normalized bicyclic regular
coverings of the quaternion hypermap.

Modules:

- ``intlattice``: integer matrices, Smith normal form, finite abelian groups
- ``fpgroup``: words, presentations, coset enumeration, permutation groups
- ``hypermap``: algebraic hypermaps, genus, coverings, Walsh fingerprints
- ``operations``: hypermap operations and their matrix shadow lattice
- ``census``: octuple validation, covering construction, symmetry and
  branching profiles, the census enumerator, metacyclic groups
- ``cli``: the ``quatcover`` command-line front end
"""

__version__ = "0.1.0"

"""Hypermap operations and their shadows in GL(2, Z).

Abelianizing a generator substitution gives a 2x2 integer matrix of
determinant +-1.  The five subgroups generated by the catalog shadows form a
small lattice: two Klein four-groups and a symmetric group Sym(3) sitting
below dihedral groups of orders 8 and 12.
"""

from quatcover import operations as ops
from quatcover.operations import abelianize, builtin_operations, verify_hasse

print("shadow matrices of the builtin operations:")
for name, s in builtin_operations().items():
    m = abelianize(s)
    print(f"    {name:10s} {m.entries}  det {m.det()}")

result = verify_hasse()
print("\nlattice of shadow subgroups:")
for name, info in sorted(result["lattice"].items()):
    print(f"    {name}: order {info['order']:2d}  structure {info['structure']}")
print("covering relations:")
for lo, hi in ops.HASSE_EDGES:
    print(f"    {lo} < {hi}")
print("all structures, containments and matrix identities verified:",
      result["ok"])
